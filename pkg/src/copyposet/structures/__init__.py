"""Built-in structure registry."""

from ..errors import UnknownStructureError
from .base import Structure
from .dlo import DLO
from .equiv import EquivInf
from .pairs import PairsAction
from .pureset import PureSet
from .rado import RadoGraph
from .treetz import TreeTZ
from .zeta2 import Zeta2
from .zetaeta import ZetaEta
from .zorder import ZOrder

_CLASSES = (
    PureSet, ZOrder, DLO, RadoGraph, EquivInf,
    Zeta2, ZetaEta, TreeTZ, PairsAction,
)

BUILTIN_IDS = tuple(cls.structure_id for cls in _CLASSES)

_instances = {}


def get_structure(structure_id):
    """Shared instance of a built-in structure (instances are stateless apart
    from append-only enumeration caches)."""
    try:
        cls = next(c for c in _CLASSES if c.structure_id == structure_id)
    except StopIteration:
        raise UnknownStructureError(
            "unknown structure id %r (known: %s)"
            % (structure_id, ", ".join(BUILTIN_IDS))) from None
    if structure_id not in _instances:
        _instances[structure_id] = cls()
    return _instances[structure_id]


def all_structures():
    return [get_structure(sid) for sid in BUILTIN_IDS]


__all__ = [
    "Structure", "BUILTIN_IDS", "get_structure", "all_structures",
    "PureSet", "ZOrder", "DLO", "RadoGraph", "EquivInf",
    "Zeta2", "ZetaEta", "TreeTZ", "PairsAction",
]
