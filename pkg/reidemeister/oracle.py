"""
Brute-force ground truth on finite polycyclic groups.

Twisted conjugacy classes are computed directly as orbits of the action
h . g = psi(h) * g * phi(h)^-1, merged with a union-find over the action of
the generators, and compared against the recursive algorithms.
"""

from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from typing import Any

from .const import DEFAULT_MAX_ENUM
from .exceptions import (
    EnumerationLimitError,
    InconsistentPresentationError,
    InfiniteGroupError,
    PresentationError,
)
from .pcp import PcpElement, PcpPresentation, Word
from .pcp_morphisms import GroupMorphism, inner_endomorphism, verify_morphism
from .pcp_subgroups import subgroup_igs
from .results import Infinite, Witness
from .twisted import EndoPair, SolverConfig, rep_twist_conj, reps_reid_classes

_LOGGER = logging.getLogger(__name__)


class UnionFind:
    """Disjoint sets over hashable items."""

    def __init__(self, items: Any) -> None:
        """Start with singletons."""
        self.parent = {x: x for x in items}
        self.rank = dict.fromkeys(self.parent, 0)

    def find(self, x: Any) -> Any:
        """Return the root of ``x``."""
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: Any, y: Any) -> None:
        """Merge the sets of ``x`` and ``y``."""
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x


@dataclass(frozen=True)
class FiniteGroupTable:
    """All elements of a finite presentation, in enumeration order."""

    presentation: PcpPresentation
    elements: tuple[PcpElement, ...]

    def __len__(self) -> int:
        """Return the group order."""
        return len(self.elements)


def enumerate_group(
    presentation: PcpPresentation, limit: int = DEFAULT_MAX_ENUM
) -> FiniteGroupTable:
    """Return every normal form of a finite presentation."""
    if not presentation.is_finite():
        raise InfiniteGroupError("cannot enumerate infinite group")
    order = presentation.order()
    if order > limit:
        raise EnumerationLimitError(order, limit)
    elements = tuple(
        presentation.element(exponents)
        for exponents in itertools.product(
            *(range(r) for r in presentation.relative_orders)
        )
    )
    return FiniteGroupTable(presentation, elements)


def brute_classes(
    pair: EndoPair, config: SolverConfig | None = None
) -> list[list[PcpElement]]:
    """Return the twisted conjugacy classes as a partition of the group."""
    config = config or SolverConfig()
    table = enumerate_group(pair.group, config.max_enum)
    union_find = UnionFind(table.elements)
    for generator in pair.group.generators():
        left = pair.psi(generator)
        right = pair.phi(generator).inverse()
        for g in table.elements:
            union_find.union(g, left * g * right)
    classes: dict[PcpElement, list[PcpElement]] = {}
    for g in table.elements:
        classes.setdefault(union_find.find(g), []).append(g)
    return list(classes.values())


def brute_witness(
    pair: EndoPair,
    g1: PcpElement,
    g2: PcpElement,
    config: SolverConfig | None = None,
) -> PcpElement | None:
    """Return the first h with g1 = psi(h) * g2 * phi(h)^-1, or None."""
    config = config or SolverConfig()
    for h in enumerate_group(pair.group, config.max_enum).elements:
        if g1 == pair.psi(h) * g2 * pair.phi(h).inverse():
            return h
    return None


@dataclass
class ComparisonReport:
    """Outcome of comparing the algorithms with brute force on one pair."""

    brute_count: int
    algorithm_count: int | float
    mismatches: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        """Return True if nothing disagreed."""
        return not self.mismatches


def compare(
    pair: EndoPair,
    samples: int = 20,
    rng: random.Random | None = None,
    config: SolverConfig | None = None,
) -> ComparisonReport:
    """Check class counts, representatives and sampled conjugacy queries."""
    config = config or SolverConfig()
    rng = rng or random.Random(0)
    label = f"phi={pair.phi}, psi={pair.psi}"
    classes = brute_classes(pair, config)
    orbit = {g: index for index, members in enumerate(classes) for g in members}
    result = reps_reid_classes(pair, config)
    report = ComparisonReport(len(classes), result.number)

    if isinstance(result, Infinite):
        report.mismatches.append(
            {
                "check": "count",
                "pair": label,
                "brute": len(classes),
                "algorithm": "infinite",
            }
        )
        return report
    if result.number != len(classes):
        report.mismatches.append(
            {
                "check": "count",
                "pair": label,
                "brute": len(classes),
                "algorithm": result.number,
            }
        )
    seen: dict[int, PcpElement] = {}
    for representative in result.representatives:
        index = orbit[representative]
        if index in seen:
            report.mismatches.append(
                {
                    "check": "distinct",
                    "pair": label,
                    "elements": [str(seen[index]), str(representative)],
                }
            )
        seen[index] = representative

    elements = list(orbit)
    for _ in range(samples):
        g1, g2 = rng.choice(elements), rng.choice(elements)
        answer = rep_twist_conj(pair, g1, g2, config)
        expected = orbit[g1] == orbit[g2]
        if isinstance(answer, Witness) != expected:
            report.mismatches.append(
                {
                    "check": "conjugacy",
                    "pair": label,
                    "elements": [str(g1), str(g2)],
                    "brute": expected,
                }
            )
        elif isinstance(answer, Witness) and not (
            g1 == pair.psi(answer.element) * g2 * pair.phi(answer.element).inverse()
        ):
            report.mismatches.append(
                {
                    "check": "witness",
                    "pair": label,
                    "elements": [str(g1), str(g2), str(answer.element)],
                }
            )
    if report.mismatches:
        _LOGGER.warning("%s mismatches for %s", len(report.mismatches), label)
    return report


# ----------------------------------------------------------------------
# Presentations and endomorphisms for the corpus
# ----------------------------------------------------------------------

_NAMED: dict[str, tuple[list[int], dict[int, Word], dict[tuple[int, int], Word]]] = {
    "trivial": ([], {}, {}),
    "C2xC2": ([2, 2], {}, {}),
    "S3": ([2, 3], {}, {(1, 0): ((1, 2),)}),
    "D8": ([2, 2, 2], {1: ((2, 1),)}, {(1, 0): ((1, 1), (2, 1))}),
    "Q8": ([2, 2, 2], {0: ((2, 1),), 1: ((2, 1),)}, {(1, 0): ((1, 1), (2, 1))}),
    "A4": ([3, 2, 2], {}, {(1, 0): ((2, 1),), (2, 0): ((1, 1), (2, 1))}),
    "S4": (
        [2, 3, 2, 2],
        {},
        {
            (1, 0): ((1, 2),),
            (2, 0): ((3, 1),),
            (3, 0): ((2, 1),),
            (2, 1): ((3, 1),),
            (3, 1): ((2, 1), (3, 1)),
        },
    ),
}


def named_presentation(name: str) -> PcpPresentation:
    """Return a presentation from the catalogue.

    ``C<m>`` gives a cyclic group of order m and ``Z^<n>`` a free abelian
    group of rank n.
    """
    if name in _NAMED:
        orders, powers, conjugates = _NAMED[name]
        return PcpPresentation(orders, powers, conjugates)
    if name.startswith("C") and name[1:].isdigit() and int(name[1:]) >= 2:
        return PcpPresentation([int(name[1:])])
    if name == "Z":
        return PcpPresentation([0])
    if name.startswith("Z^") and name[2:].isdigit():
        return PcpPresentation([0] * int(name[2:]))
    raise PresentationError(f"Unknown presentation {name!r}")


def _shift(word: Word, offset: int = 1) -> Word:
    return tuple((generator + offset, exponent) for generator, exponent in word)


def _automorphisms(
    presentation: PcpPresentation,
    elements: tuple[PcpElement, ...],
    rng: random.Random,
    attempts: int,
) -> list[GroupMorphism]:
    found = [GroupMorphism.identity(presentation)]
    found.extend(
        inner_endomorphism(presentation, rng.choice(elements)) for _ in range(2)
    )
    order = len(elements)
    for _ in range(attempts):
        candidate = GroupMorphism.from_images(
            presentation, [rng.choice(elements) for _ in range(presentation.count)]
        )
        if verify_morphism(candidate) and (
            subgroup_igs(presentation, candidate.images).order() == order
        ):
            found.append(candidate)
    return found


def _extend(
    base: PcpPresentation,
    alpha: GroupMorphism,
    order: int,
    z: PcpElement,
) -> PcpPresentation:
    powers = {0: _shift(z.to_word())}
    powers.update({i + 1: _shift(word) for i, word in base.powers.items()})
    conjugates = {
        (j + 1, 0): _shift(image.to_word()) for j, image in enumerate(alpha.images)
    }
    conjugates.update(
        {(j + 1, i + 1): _shift(word) for (j, i), word in base.conjugates.items()}
    )
    return PcpPresentation([order, *base.relative_orders], powers, conjugates)


def random_finite_presentation(
    rng: random.Random, max_order: int = 200
) -> PcpPresentation:
    """Return a random consistent finite presentation built by cyclic extensions.

    Each step picks an automorphism alpha of the current group H, an order r
    and z in H fixed by alpha with alpha^r equal to conjugation by z, and adds
    a new top generator t with t^r = z and h^t = alpha(h).
    """
    presentation = PcpPresentation([])
    steps = rng.randint(1, 4)
    for _ in range(steps):
        size = presentation.order()
        if size * 2 > max_order:
            break
        elements = enumerate_group(presentation).elements
        alphas = list(
            {
                alpha.images: alpha
                for alpha in _automorphisms(presentation, elements, rng, attempts=20)
            }.values()
        )
        rng.shuffle(alphas)
        orders = list(range(2, min(max_order // size, 8) + 1))
        rng.shuffle(orders)
        extended = None
        for alpha in alphas:
            fixed = [z for z in elements if alpha(z) == z]
            for order in orders:
                powered = _power_images(alpha, order)
                candidates = [
                    z
                    for z in fixed
                    if all(
                        image == generator.conjugate(z)
                        for image, generator in zip(
                            powered, presentation.generators(), strict=True
                        )
                    )
                ]
                if not candidates:
                    continue
                try:
                    extended = _extend(
                        presentation, alpha, order, rng.choice(candidates)
                    )
                except InconsistentPresentationError as err:
                    _LOGGER.warning("Discarding inconsistent candidate: %s", err)
                    continue
                break
            if extended is not None:
                break
        if extended is None:
            break
        presentation = extended
    if not presentation.count:
        presentation = PcpPresentation([rng.randint(2, max(2, min(max_order, 12)))])
    _LOGGER.debug(
        "Random presentation %s of order %s", presentation, presentation.order()
    )
    return presentation


def _power_images(alpha: GroupMorphism, order: int) -> list[PcpElement]:
    """Return alpha^order applied to each generator."""
    images = alpha.domain.generators()
    for _ in range(order):
        images = [alpha(image) for image in images]
    return images


def random_endomorphisms(
    presentation: PcpPresentation,
    rng: random.Random,
    count: int = 4,
    attempts: int = 200,
) -> list[GroupMorphism]:
    """Return verified endomorphisms including identity, trivial and inner maps."""
    elements = enumerate_group(presentation).elements
    found = [
        GroupMorphism.identity(presentation),
        GroupMorphism.trivial(presentation),
        inner_endomorphism(presentation, rng.choice(elements)),
    ]
    random_maps: list[GroupMorphism] = []
    for _ in range(attempts):
        if len(random_maps) >= count:
            break
        candidate = GroupMorphism.from_images(
            presentation, [rng.choice(elements) for _ in range(presentation.count)]
        )
        if verify_morphism(candidate):
            random_maps.append(candidate.checked())
    for morphism in random_maps:
        found.append(morphism)
        inner = inner_endomorphism(presentation, rng.choice(elements))
        found.append(inner.compose(morphism))
    return found


def generate_corpus(
    seed: int,
    groups: int = 20,
    pairs_per_group: int = 5,
    max_order: int = 200,
) -> list[tuple[str, EndoPair]]:
    """Return a deterministic list of named (group, pair) cases."""
    rng = random.Random(seed)
    named = ["S3", "D8", "Q8", "A4", "C2xC2", "C6", "S4"]
    cases: list[tuple[str, EndoPair]] = []
    for index in range(groups):
        if index < len(named):
            name = named[index]
            presentation = named_presentation(name)
        else:
            presentation = random_finite_presentation(rng, max_order)
            name = f"random{index}-order{presentation.order()}"
        endomorphisms = random_endomorphisms(presentation, rng)
        for number in range(pairs_per_group):
            pair = EndoPair(rng.choice(endomorphisms), rng.choice(endomorphisms))
            cases.append((f"{name}-pair{number}", pair))
    return cases
