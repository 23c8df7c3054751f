"""Twisted conjugacy and Reidemeister classes for polycyclic groups."""

from .abelian import AbElement, AbHom, FgAbelianGroup
from .const import INFINITY, VERSION
from .exceptions import (
    InconsistentPresentationError,
    InfiniteCoincidenceGroupError,
    MorphismError,
    PresentationError,
    ReidemeisterError,
    WitnessVerificationError,
)
from .pcp import PcpElement, PcpPresentation, consistency_check
from .pcp_morphisms import GroupMorphism
from .pcp_subgroups import Igs, derived_subgroup, subgroup_igs
from .problem_file import ProblemFile, load_example, parse, serialize
from .twisted import (
    INFINITE,
    NOT_CONJUGATE,
    EndoPair,
    Finite,
    SolverConfig,
    Witness,
    reidemeister_number,
    rep_twist_conj,
    reps_reid_classes,
)

__version__ = VERSION

__all__ = [
    "INFINITE",
    "INFINITY",
    "NOT_CONJUGATE",
    "AbElement",
    "AbHom",
    "EndoPair",
    "FgAbelianGroup",
    "Finite",
    "GroupMorphism",
    "Igs",
    "InconsistentPresentationError",
    "InfiniteCoincidenceGroupError",
    "MorphismError",
    "PcpElement",
    "PcpPresentation",
    "PresentationError",
    "ProblemFile",
    "ReidemeisterError",
    "SolverConfig",
    "Witness",
    "WitnessVerificationError",
    "consistency_check",
    "derived_subgroup",
    "load_example",
    "parse",
    "reidemeister_number",
    "rep_twist_conj",
    "reps_reid_classes",
    "serialize",
    "subgroup_igs",
]
