"""Matrix elements and characters of the discrete-series representations of Sp(4, R)."""
from .cquat import CQuat
from .errors import Sp4RepError
from .fockbasis import RepLabel, ScalarIndex, SpinIndex, Truncation
from .sp4 import EigenQuadruple, Sp4Element

__all__ = [
    "CQuat",
    "EigenQuadruple",
    "RepLabel",
    "ScalarIndex",
    "Sp4Element",
    "Sp4RepError",
    "SpinIndex",
    "Truncation",
]
