"""
Twisted conjugacy and Reidemeister classes of endomorphism pairs.

Two elements g1, g2 of G are (phi, psi)-twisted conjugate when
g1 = psi(h) * g2 * phi(h)^-1 for some h. The algorithms reduce along the
derived series: a question about G is answered in the abelian quotient
G/G' and lifted through the coincidence group of the induced maps, then
recursively settled inside G'.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .abelian import (
    AbElement,
    AbHom,
    coincidence_group,
    reidemeister_number_ab,
    rep_twist_conj_to_id_ab,
    reps_reid_classes_ab,
)
from .const import DEFAULT_MAX_ENUM, DEFAULT_THREADS
from .exceptions import (
    InfiniteCoincidenceGroupError,
    MorphismError,
    WitnessVerificationError,
)
from .pcp import PcpElement, PcpPresentation
from .pcp_morphisms import (
    GroupMorphism,
    compose_with_inner,
    induce_on_quotient,
    inner_endomorphism,
    restrict_morphism,
)
from .pcp_subgroups import (
    AbelianQuotient,
    Igs,
    abelian_quotient,
    derived_subgroup,
    induced_presentation,
    trivial_igs,
)
from .results import (
    INFINITE,
    NOT_CONJUGATE,
    Finite,
    Infinite,
    NotConjugate,
    ReidemeisterResult,
    TwistedResult,
    Witness,
)

__all__ = [
    "INFINITE",
    "NOT_CONJUGATE",
    "EndoPair",
    "Finite",
    "Infinite",
    "NotConjugate",
    "ReidemeisterResult",
    "SolverConfig",
    "TwistedResult",
    "Witness",
    "class_index",
    "coincidence_quotient_enum",
    "inner_endomorphism",
    "is_twisted_conjugate",
    "reidemeister_number",
    "rep_twist_conj",
    "rep_twist_conj_to_id",
    "rep_twist_conj_to_id_by_normal",
    "reps_reid_classes",
    "reps_reid_classes_by_normal",
    "translate_classes",
    "verify_witness",
]

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class SolverConfig:
    """Limits and switches for the solvers."""

    max_enum: int = DEFAULT_MAX_ENUM
    threads: int = DEFAULT_THREADS
    check_morphisms: bool = True


@dataclass(frozen=True)
class EndoPair:
    """A pair of endomorphisms (phi, psi) of one group."""

    phi: GroupMorphism
    psi: GroupMorphism

    def __post_init__(self) -> None:
        """Check that both maps are endomorphisms of the same group."""
        group = self.phi.domain
        for morphism in (self.phi, self.psi):
            if morphism.domain is not group or morphism.codomain is not group:
                raise MorphismError("Pair maps are not endomorphisms of one group")

    @property
    def group(self) -> PcpPresentation:
        """Return the group both maps act on."""
        return self.phi.domain

    def checked(self) -> EndoPair:
        """Return the pair with both maps verified."""
        return EndoPair(self.phi.checked(), self.psi.checked())

    def twisted(self, g: PcpElement) -> EndoPair:
        """Return (iota_g phi, psi)."""
        return EndoPair(compose_with_inner(self.phi, g), self.psi)


def _prepare(
    pair: EndoPair, config: SolverConfig | None
) -> tuple[EndoPair, SolverConfig]:
    config = config or SolverConfig()
    if config.check_morphisms:
        pair = pair.checked()
    return pair, config


def verify_witness(
    pair: EndoPair, g1: PcpElement, g2: PcpElement, h: PcpElement
) -> bool:
    """Return True if g1 = psi(h) * g2 * phi(h)^-1."""
    return g1 == pair.psi(h) * g2 * pair.phi(h).inverse()


def _checked_witness(
    pair: EndoPair, g1: PcpElement, g2: PcpElement, result: TwistedResult
) -> TwistedResult:
    if isinstance(result, Witness) and not verify_witness(pair, g1, g2, result.element):
        raise WitnessVerificationError(
            f"internal error: witness {result.element} does not conjugate {g2} to {g1}"
        )
    return result


@dataclass(frozen=True)
class _Level:
    """Quotient data for one step of the recursion."""

    quotient: AbelianQuotient
    phi: AbHom
    psi: AbHom


def _quotient_level(pair: EndoPair, subgroup: Igs) -> _Level:
    quotient = abelian_quotient(pair.group, subgroup)
    return _Level(
        quotient,
        induce_on_quotient(pair.phi, quotient),
        induce_on_quotient(pair.psi, quotient),
    )


def _coincidence_lifts(
    pair: EndoPair, level: _Level, config: SolverConfig, depth: int
) -> list[PcpElement]:
    group, embedding = coincidence_group(level.phi, level.psi)
    if not group.is_finite():
        raise InfiniteCoincidenceGroupError(depth, level.quotient.subgroup)
    lifts = [
        level.quotient.section(embedding(element))
        for element in group.enumerate(config.max_enum)
    ]
    _LOGGER.debug("Level %s: coincidence group of order %s", depth, len(lifts))
    return lifts


def coincidence_quotient_enum(
    pair: EndoPair, subgroup: Igs, config: SolverConfig | None = None
) -> list[PcpElement]:
    """Return one lift in G for each element of Coin on G/N."""
    pair, config = _prepare(pair, config)
    return _coincidence_lifts(pair, _quotient_level(pair, subgroup), config, 0)


def _is_abelian(presentation: PcpPresentation) -> bool:
    return derived_subgroup(presentation).is_trivial()


def _to_id(
    pair: EndoPair, g: PcpElement, config: SolverConfig, depth: int
) -> TwistedResult:
    if g.is_identity():
        return Witness(pair.group.identity)
    presentation = pair.group
    if _is_abelian(presentation):
        level = _quotient_level(pair, trivial_igs(presentation))
        h = rep_twist_conj_to_id_ab(level.phi, level.psi, level.quotient.project(g))
        if h is None:
            return NOT_CONJUGATE
        return Witness(level.quotient.section(h))
    return _to_id_by_normal(pair, g, derived_subgroup(presentation), config, depth)


def _to_id_by_normal(
    pair: EndoPair, g: PcpElement, subgroup: Igs, config: SolverConfig, depth: int
) -> TwistedResult:
    level = _quotient_level(pair, subgroup)
    quotient = level.quotient
    k_bar = rep_twist_conj_to_id_ab(level.phi, level.psi, quotient.project(g))
    if k_bar is None:
        _LOGGER.debug("Level %s: not conjugate in the quotient", depth)
        return NOT_CONJUGATE
    k = quotient.section(k_bar)
    n = pair.psi(k).inverse() * g * pair.phi(k)
    lifts = _coincidence_lifts(pair, level, config, depth)
    induced = induced_presentation(subgroup)
    restricted = EndoPair(
        restrict_morphism(pair.phi, induced), restrict_morphism(pair.psi, induced)
    )
    for h in lifts:
        m = pair.psi(h).inverse() * n * pair.phi(h)
        result = _to_id(restricted, induced.express(m), config, depth + 1)
        if isinstance(result, Witness):
            return Witness(k * h * induced.embed(result.element))
    return NOT_CONJUGATE


def rep_twist_conj_to_id(
    pair: EndoPair, g: PcpElement, config: SolverConfig | None = None
) -> TwistedResult:
    """Return h with g = psi(h) * phi(h)^-1, or NOT_CONJUGATE."""
    pair, config = _prepare(pair, config)
    identity = pair.group.identity
    return _checked_witness(pair, g, identity, _to_id(pair, g, config, 0))


def rep_twist_conj_to_id_by_normal(
    pair: EndoPair,
    g: PcpElement,
    subgroup: Igs,
    config: SolverConfig | None = None,
) -> TwistedResult:
    """Decide g ~ 1 through G/N for an invariant N containing G'."""
    pair, config = _prepare(pair, config)
    result = _to_id_by_normal(pair, g, subgroup, config, 0)
    return _checked_witness(pair, g, pair.group.identity, result)


def _conj(
    pair: EndoPair, g1: PcpElement, g2: PcpElement, config: SolverConfig, depth: int
) -> TwistedResult:
    return _to_id(pair.twisted(g2), g1 * g2.inverse(), config, depth)


def rep_twist_conj(
    pair: EndoPair,
    g1: PcpElement,
    g2: PcpElement,
    config: SolverConfig | None = None,
) -> TwistedResult:
    """Return h with g1 = psi(h) * g2 * phi(h)^-1, or NOT_CONJUGATE."""
    pair, config = _prepare(pair, config)
    return _checked_witness(pair, g1, g2, _conj(pair, g1, g2, config, 0))


def is_twisted_conjugate(
    pair: EndoPair,
    g1: PcpElement,
    g2: PcpElement,
    config: SolverConfig | None = None,
) -> bool:
    """Return True if g1 and g2 are twisted conjugate."""
    return isinstance(rep_twist_conj(pair, g1, g2, config), Witness)


def translate_classes(
    representatives: Sequence[PcpElement], g: PcpElement
) -> list[PcpElement]:
    """Map representatives for (iota_g phi, psi) to ones for (phi, psi)."""
    return [x * g for x in representatives]


def _classes(pair: EndoPair, config: SolverConfig, depth: int) -> ReidemeisterResult:
    presentation = pair.group
    if _is_abelian(presentation):
        level = _quotient_level(pair, trivial_igs(presentation))
        result = reps_reid_classes_ab(level.phi, level.psi, config.max_enum)
        if isinstance(result, Infinite):
            return INFINITE
        return Finite(
            tuple(level.quotient.section(a) for a in result.representatives)
        )
    return _classes_by_normal(
        pair, derived_subgroup(presentation), config, depth
    )


def _classes_by_normal(
    pair: EndoPair, subgroup: Igs, config: SolverConfig, depth: int
) -> ReidemeisterResult:
    level = _quotient_level(pair, subgroup)
    top = reps_reid_classes_ab(level.phi, level.psi, config.max_enum)
    if isinstance(top, Infinite):
        _LOGGER.debug("Level %s: infinitely many classes in the quotient", depth)
        return INFINITE
    _LOGGER.debug("Level %s: %s classes in the quotient", depth, top.number)
    induced = induced_presentation(subgroup)
    psi_n = restrict_morphism(pair.psi, induced)

    def branch(g_bar: AbElement) -> list[PcpElement] | None:
        g = level.quotient.section(g_bar)
        twisted = pair.twisted(g)
        restricted = EndoPair(restrict_morphism(twisted.phi, induced), psi_n)
        inner = _classes(restricted, config, depth + 1)
        if isinstance(inner, Infinite):
            return None
        kept: list[PcpElement] = []
        for candidate in (induced.embed(x) for x in inner.representatives):
            if not any(
                isinstance(_conj(twisted, candidate, y, config, depth + 1), Witness)
                for y in kept
            ):
                kept.append(candidate)
        return translate_classes(kept, g)

    quotient_reps = list(top.representatives)
    if depth == 0 and config.threads > 1 and len(quotient_reps) > 1:
        with ThreadPoolExecutor(max_workers=config.threads) as executor:
            branches = list(executor.map(branch, quotient_reps))
    else:
        branches = []
        for g_bar in quotient_reps:
            branches.append(branch(g_bar))
            if branches[-1] is None:
                break
    if any(part is None for part in branches):
        return INFINITE
    return Finite(tuple(x for part in branches for x in part or ()))


def reps_reid_classes(
    pair: EndoPair, config: SolverConfig | None = None
) -> ReidemeisterResult:
    """Return representatives of the Reidemeister classes, or INFINITE."""
    pair, config = _prepare(pair, config)
    result = _classes(pair, config, 0)
    _LOGGER.debug("Reidemeister number %s", result.number)
    return result


def reps_reid_classes_by_normal(
    pair: EndoPair, subgroup: Igs, config: SolverConfig | None = None
) -> ReidemeisterResult:
    """Return class representatives through G/N for an invariant N containing G'."""
    pair, config = _prepare(pair, config)
    return _classes_by_normal(pair, subgroup, config, 0)


def reidemeister_number(
    pair: EndoPair, config: SolverConfig | None = None
) -> int | float:
    """Return R(phi, psi), or INFINITY.

    Abelian groups skip the enumeration and read off the cokernel order.
    """
    prepared, _ = _prepare(pair, config)
    if _is_abelian(prepared.group):
        level = _quotient_level(prepared, trivial_igs(prepared.group))
        return reidemeister_number_ab(level.phi, level.psi)
    return reps_reid_classes(pair, config).number


def class_index(
    pair: EndoPair,
    representatives: Sequence[PcpElement],
    g: PcpElement,
    config: SolverConfig | None = None,
) -> int | None:
    """Return the position of the representative twisted conjugate to ``g``."""
    for index, representative in enumerate(representatives):
        if is_twisted_conjugate(pair, g, representative, config):
            return index
    return None
