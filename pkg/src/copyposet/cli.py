"""Command-line front end: constructions, closures, checks, certificates.

Exit codes: 0 pass/success, 1 fail/counterexample, 2 unknown or budget
exhausted, 3 unsupported or impossible construction.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import battery, certify, closures, engine, typesets
from .errors import (
    CopyPosetError,
    ImpossibleConstructionError,
    PreconditionError,
    SearchBudgetError,
    UnknownStructureError,
    UnsupportedConstructionError,
)
from .structures import BUILTIN_IDS, get_structure

EXIT_PASS, EXIT_FAIL, EXIT_UNKNOWN, EXIT_UNSUPPORTED = 0, 1, 2, 3


def split_points(text):
    """Split a comma-separated point list, respecting {} and () nesting."""
    if text is None or text.strip() == "":
        return []
    items, buf, depth = [], [], 0
    for ch in text:
        if ch in "{(":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == "," and depth == 0:
            items.append("".join(buf).strip())
            buf = []
        else:
            buf.append(ch)
    items.append("".join(buf).strip())
    return [s for s in items if s]


def parse_points(st, text):
    return [st.decode(tok) for tok in split_points(text)]


class _Out:
    def __init__(self, args):
        self.fmt = args.format
        self.path = args.out
        self.lines = []
        self.certs = []

    def human(self, text):
        if self.fmt == "human":
            print(text)

    def record(self, obj):
        line = json.dumps(obj, sort_keys=True, separators=(",", ":"))
        self.lines.append(line)
        if self.fmt == "jsonl":
            print(line)

    def cert(self, c):
        self.certs.append(c)
        self.record(c.to_record())

    def flush(self):
        if self.path:
            with open(self.path, "w", encoding="utf-8") as fh:
                for line in self.lines:
                    fh.write(line + "\n")


def _verdict_exit(verdict):
    return {"pass": EXIT_PASS, "fail": EXIT_FAIL,
            "unknown": EXIT_UNKNOWN}.get(verdict, EXIT_UNKNOWN)


def cmd_structures(args, out):
    for sid in BUILTIN_IDS:
        st = get_structure(sid)
        caps = {
            "finiteness-exact": st.finiteness_exact,
            "unranked-witness": st.unranked_certifier,
            "algebraically-finite": st.algebraically_finite,
            "disjoint-amalgamation": st.stabilizer_orbits_all_infinite,
            "single-copy": st.single_copy,
            "oligomorphic": st.oligomorphic,
        }
        flags = " ".join("%s:%s" % (k, "yes" if v else "no")
                         for k, v in caps.items())
        out.human("%-8s %s" % (sid, st.description))
        out.human("         %s" % flags)
        out.record({"structure": sid, "description": st.description,
                    "capabilities": caps})
    return EXIT_PASS


def cmd_typeset(args, out):
    st = get_structure(args.structure)
    sockel = frozenset(parse_points(st, args.sockel))
    rep = st.decode(args.rep)
    t = typesets.make_type(st, sockel, rep)
    members = typesets.typeset_members(st, t, args.count)
    fin = st.typeset_finite(sockel, rep)
    out.human("typeset <%s |> %s>: %s (%s)" % (
        ",".join(st.encode(p) for p in t.sockel), st.encode(rep),
        " ".join(st.encode(m) for m in members), fin.kind))
    out.record({"op": "typeset", "structure": args.structure,
                "sockel": [st.encode(p) for p in t.sockel],
                "rep": st.encode(rep), "finiteness": fin.kind,
                "members": [st.encode(m) for m in members]})
    return EXIT_PASS


def cmd_closure(args, out):
    st = get_structure(args.structure)
    base = frozenset(parse_points(st, args.base))
    if args.kind == "ac":
        res = closures.algebraic_closure(st, base, args.depth)
    elif args.kind == "rc":
        res = closures.ranked_closure(st, base, args.maxrank, args.depth)
    else:
        members = closures.intersection_closure_upper(
            st, base, samples=args.samples, depth=args.depth, seed=args.seed)
        res = closures.ClosureResult(
            st.structure_id, "ic",
            tuple(st.sort_points(base)), tuple(st.sort_points(members)),
            False)
    enc = [st.encode(p) for p in res.members]
    out.human("{%s}%s" % (", ".join(enc),
                          " (exact)" if res.exact else ""))
    out.record({"op": "closure", "kind": args.kind,
                "structure": args.structure,
                "base": [st.encode(p) for p in res.base],
                "members": enc, "exact": res.exact})
    return EXIT_PASS


def _build_copy(args, st):
    fix = frozenset(parse_points(st, args.fix))
    avoid = frozenset(parse_points(st, args.avoid))
    if args.kind == "identity":
        return engine.copy_identity(st)
    if args.kind == "through":
        c = engine.copy_through(st, fix, engine.copy_identity(st),
                                proper=args.proper, seed=args.seed)
    elif args.kind == "avoiding":
        c = engine.copy_avoiding(st, fix, avoid, seed=args.seed)
    else:
        raise PreconditionError("unknown copy kind %r" % args.kind)
    c.advance(args.stages)
    return c


def cmd_copy(args, out):
    st = get_structure(args.structure)
    c = _build_copy(args, st)
    table = {}
    for x in st.prefix(args.depth):
        m = c.membership(x)
        table[st.encode(x)] = m.kind
    out.human("copy %s" % c.describe())
    for k, v in table.items():
        out.human("  %-12s %s" % (k, v))
    out.record({"op": "copy", "structure": args.structure,
                "copy": c.describe(), "membership": table})
    if args.certify:
        cert = certify.check_copy(c, min(args.depth, 8), args.sockel_cap,
                                  args.budget)
        out.cert(cert)
        return _verdict_exit(cert.verdict)
    return EXIT_PASS


def cmd_chain(args, out):
    st = get_structure(args.structure)
    fix = frozenset(parse_points(st, args.fix))
    chain = engine.descending_chain(
        st, fix, engine.copy_identity(st), args.k, seed=args.seed,
        depth=args.depth)
    inter = engine.chain_intersection(st, chain, args.depth)
    worst = EXIT_PASS
    for lower, upper in zip(chain[1:], chain):
        cert = certify.check_inclusion(lower, upper, min(args.depth, 8))
        out.cert(cert)
        worst = max(worst, _verdict_exit(cert.verdict))
    out.human("chain of %d copies; window intersection {%s}" % (
        len(chain), ", ".join(st.encode(p) for p in inter)))
    out.record({"op": "chain", "structure": args.structure, "k": args.k,
                "intersection": [st.encode(p) for p in inter]})
    return worst


def cmd_disjoint(args, out):
    st = get_structure(args.structure)
    fix = frozenset(parse_points(st, args.fix))
    left, right = engine.disjoint_pair(st, fix, seed=args.seed)
    core = st.ac_members_exact(fix) | fix
    cert = certify.check_disjointness(left, right, args.depth, core)
    out.cert(cert)
    out.human("disjoint pair: %s" % cert.verdict)
    return _verdict_exit(cert.verdict)


def cmd_embed_powerset(args, out):
    st = get_structure(args.structure)
    members = tuple(int(tok) for tok in split_points(args.set))
    if args.cofinite:
        handle = engine.powerset_embedding_dlo(
            st, cofinite_complement=members)
    else:
        handle = engine.powerset_embedding_dlo(st, members=members)
    table = {st.encode(x): handle.membership(x).kind
             for x in st.prefix(args.depth)}
    out.human("copy %s" % handle.describe())
    out.record({"op": "embed-powerset", "structure": args.structure,
                "set": sorted(members), "cofinite": bool(args.cofinite),
                "membership": table})
    if args.certify:
        cert = certify.check_copy(handle, min(args.depth, 8),
                                  args.sockel_cap, args.budget)
        out.cert(cert)
        return _verdict_exit(cert.verdict)
    return EXIT_PASS


def cmd_bernstein(args, out):
    st = get_structure(args.structure)
    res = engine.bernstein_base(st, args.depth, sockel_cap=args.sockel_cap)
    out.human("A = {%s}" % ", ".join(st.encode(p) for p in res.side_a))
    out.human("B = {%s}" % ", ".join(st.encode(p) for p in res.side_b))
    out.human("typesets served: %d, unserved: %d"
              % (len(res.served), len(res.unserved)))
    out.record({"op": "bernstein", "structure": args.structure,
                "a": [st.encode(p) for p in res.side_a],
                "b": [st.encode(p) for p in res.side_b],
                "served": len(res.served), "unserved": len(res.unserved)})
    return EXIT_PASS if not res.unserved else EXIT_UNKNOWN


def cmd_certify(args, out):
    st = get_structure(args.structure)
    if args.what == "copy":
        c = _build_copy(args, st)
        cert = certify.check_copy(c, min(args.depth, 8), args.sockel_cap,
                                  args.budget)
    elif args.what == "inclusion":
        lower = engine.powerset_embedding_dlo(
            st, members=tuple(int(t) for t in split_points(args.set)))
        upper = engine.powerset_embedding_dlo(
            st, members=tuple(int(t) for t in split_points(args.set2)))
        cert = certify.check_inclusion(lower, upper, args.depth)
    elif args.what == "meet":
        avoid = parse_points(st, args.avoid)
        c = engine.max_avoiding_copy(st, avoid, args.depth, seed=args.seed)
        cert = certify.check_meet_irreducible_candidate(
            c, avoid[0], min(args.depth, 8), seed=args.seed)
    else:
        raise PreconditionError("unknown certify target %r" % args.what)
    out.cert(cert)
    out.human("%s: %s" % (cert.kind, cert.verdict))
    return _verdict_exit(cert.verdict)


def cmd_verify(args, out):
    st = get_structure(args.structure)
    rows, certs = battery.run_battery(
        st, depth=args.depth, budget=args.budget,
        sockel_cap=args.sockel_cap, seed=args.seed)
    worst = EXIT_PASS
    for name, verdict, note in rows:
        out.human("%-28s %-8s %s" % (name, verdict, note))
        out.record({"op": "verify-row", "structure": args.structure,
                    "row": name, "verdict": verdict, "note": note})
        if verdict == battery.FAIL:
            worst = EXIT_FAIL
        elif verdict == battery.UNKNOWN and worst == EXIT_PASS:
            worst = EXIT_UNKNOWN
    for cert in certs:
        out.cert(cert)
    return worst


def build_parser():
    ap = argparse.ArgumentParser(
        prog="copyposet",
        description="constructions and certificates for copies of countable "
                    "group actions")
    sub = ap.add_subparsers(dest="command", required=True)

    def env(name, fallback, conv=int):
        # environment overrides mirror the flags; explicit flags still win
        raw = os.environ.get("COPYPOSET_" + name)
        return fallback if raw is None else conv(raw)

    def common(p, structure=True):
        if structure:
            p.add_argument("--structure", required=True, choices=BUILTIN_IDS)
        p.add_argument("--depth", type=int, default=env("DEPTH", 10))
        p.add_argument("--budget", type=int, default=env("BUDGET", 200))
        p.add_argument("--sockel-cap", dest="sockel_cap", type=int,
                       default=env("SOCKEL_CAP", 2))
        p.add_argument("--seed", type=int, default=env("SEED", 0))
        p.add_argument("--format", choices=("human", "jsonl"),
                       default=env("FORMAT", "human", str))
        p.add_argument("--out", default=env("OUT", None, str))

    p = sub.add_parser("structures", help="list built-in structures")
    common(p, structure=False)
    p.set_defaults(fn=cmd_structures)

    p = sub.add_parser("typeset", help="members of a typeset")
    common(p)
    p.add_argument("--sockel", default="")
    p.add_argument("--rep", required=True)
    p.add_argument("-n", "--count", type=int, default=6)
    p.set_defaults(fn=cmd_typeset)

    p = sub.add_parser("closure", help="closure operators")
    p.add_argument("kind", choices=("ac", "rc", "ic"))
    common(p)
    p.add_argument("--base", default="")
    p.add_argument("--maxrank", type=int, default=closures.DEFAULT_MAXRANK)
    p.add_argument("--samples", type=int, default=6)
    p.set_defaults(fn=cmd_closure)

    p = sub.add_parser("copy", help="construct a copy")
    common(p)
    p.add_argument("--kind", choices=("identity", "through", "avoiding"),
                   default="through")
    p.add_argument("--fix", default="")
    p.add_argument("--avoid", default="")
    p.add_argument("--proper", action="store_true")
    p.add_argument("--stages", type=int, default=24)
    p.add_argument("--certify", action="store_true")
    p.set_defaults(fn=cmd_copy)

    p = sub.add_parser("chain", help="strictly descending chain of copies")
    common(p)
    p.add_argument("--fix", default="")
    p.add_argument("--k", type=int, default=3)
    p.set_defaults(fn=cmd_chain)

    p = sub.add_parser("disjoint", help="disjoint pair of copies")
    common(p)
    p.add_argument("--fix", default="")
    p.set_defaults(fn=cmd_disjoint)

    p = sub.add_parser("embed-powerset",
                       help="interval copy for a set of naturals (dlo)")
    common(p)
    p.add_argument("--set", default="")
    p.add_argument("--cofinite", action="store_true")
    p.add_argument("--certify", action="store_true")
    p.set_defaults(fn=cmd_embed_powerset)

    p = sub.add_parser("bernstein", help="two-colouring meeting all typesets")
    common(p)
    p.set_defaults(fn=cmd_bernstein)

    p = sub.add_parser("certify", help="run one certificate check")
    p.add_argument("what", choices=("copy", "inclusion", "meet"))
    common(p)
    p.add_argument("--kind", choices=("identity", "through", "avoiding"),
                   default="through")
    p.add_argument("--fix", default="")
    p.add_argument("--avoid", default="")
    p.add_argument("--proper", action="store_true")
    p.add_argument("--stages", type=int, default=24)
    p.add_argument("--set", default="")
    p.add_argument("--set2", default="")
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("verify", help="run the verification battery")
    common(p)
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "depth", 1) < 1 or \
            getattr(args, "budget", 10 ** 9) < getattr(args, "depth", 1):
        print("error: need depth >= 1 and budget >= depth", file=sys.stderr)
        return EXIT_FAIL
    out = _Out(args)
    try:
        code = args.fn(args, out)
    except (UnsupportedConstructionError, ImpossibleConstructionError) as e:
        print("unsupported: %s" % e, file=sys.stderr)
        out.record({"error": "unsupported", "message": str(e)})
        code = EXIT_UNSUPPORTED
    except SearchBudgetError as e:
        print("budget exhausted: %s" % e, file=sys.stderr)
        out.record({"error": "budget", "message": str(e)})
        code = EXIT_UNKNOWN
    except (PreconditionError, UnknownStructureError, ValueError) as e:
        print("error: %s" % e, file=sys.stderr)
        code = EXIT_UNSUPPORTED if isinstance(e, UnknownStructureError) \
            else EXIT_FAIL
        out.record({"error": "precondition", "message": str(e)})
    except CopyPosetError as e:
        print("error: %s" % e, file=sys.stderr)
        out.record({"error": "library", "message": str(e)})
        code = EXIT_FAIL
    out.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
