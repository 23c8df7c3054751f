"""Subgroups of polycyclic presentations."""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from math import gcd, prod

from sympy.core.intfunc import igcdex

from .abelian import AbElement, FgAbelianGroup
from .const import INFINITE_ORDER, INFINITY
from .exceptions import (
    InfiniteGroupError,
    NotInSubgroupError,
    QuotientNotAbelianError,
)
from .intlinalg import IntMatrix
from .pcp import PcpElement, PcpPresentation, Vector

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Igs:
    """An induced generating sequence in canonical form.

    Members have strictly increasing depth and positive leading exponents,
    each minimal among the subgroup's elements of that depth. Exponents of
    a member at the depths of later members are reduced below their
    leading exponents, so two Igs of one subgroup compare equal.
    """

    presentation: PcpPresentation
    elements: tuple[PcpElement, ...]

    def __len__(self) -> int:
        """Return the number of members."""
        return len(self.elements)

    def __iter__(self) -> Iterator[PcpElement]:
        """Iterate over the members."""
        return iter(self.elements)

    @property
    def depths(self) -> tuple[int, ...]:
        """Return the depth of each member."""
        return tuple(element.depth for element in self.elements)

    @property
    def relative_orders(self) -> tuple[int, ...]:
        """Return the relative orders of the induced presentation."""
        orders = self.presentation.relative_orders
        return tuple(
            orders[s.depth] // s.leading_exponent
            if orders[s.depth]
            else INFINITE_ORDER
            for s in self.elements
        )

    def is_trivial(self) -> bool:
        """Return True for the trivial subgroup."""
        return not self.elements

    def sift(self, x: PcpElement) -> PcpElement:
        """Return the residue of ``x`` after sifting through the members."""
        return self._sift(x)[1]

    def contains(self, x: PcpElement) -> bool:
        """Return True if ``x`` lies in the subgroup."""
        return self._sift(x)[1].is_identity()

    def __contains__(self, x: object) -> bool:
        """Return True if ``x`` lies in the subgroup."""
        return isinstance(x, PcpElement) and self.contains(x)

    def express(self, x: PcpElement) -> Vector:
        """Return ``v`` with ``x == s_0^v_0 * s_1^v_1 * ...``."""
        coefficients, residue = self._sift(x)
        if not residue.is_identity():
            raise NotInSubgroupError(f"{x} is not in the subgroup")
        return coefficients

    def embed(self, coefficients: Sequence[int]) -> PcpElement:
        """Return the product of the members raised to ``coefficients``."""
        if len(coefficients) != len(self.elements):
            raise ValueError(
                f"{len(coefficients)} coefficients for {len(self.elements)} members"
            )
        result = self.presentation.identity
        for member, exponent in zip(self.elements, coefficients, strict=True):
            if exponent:
                result = result * member**exponent
        return result

    def _sift(self, x: PcpElement) -> tuple[Vector, PcpElement]:
        if x.presentation is not self.presentation:
            raise NotInSubgroupError("Element belongs to another presentation")
        coefficients = [0] * len(self.elements)
        for index, member in enumerate(self.elements):
            depth = member.depth
            current = x.depth
            if current < depth:
                break
            if current > depth:
                continue
            quotient, remainder = divmod(x.exponents[depth], member.leading_exponent)
            if remainder:
                break
            coefficients[index] = quotient
            x = member ** (-quotient) * x
        return tuple(coefficients), x

    def order(self) -> int:
        """Return the order of a finite subgroup."""
        orders = self.relative_orders
        if INFINITE_ORDER in orders:
            raise InfiniteGroupError("subgroup is infinite")
        return prod(orders)

    def hirsch_length(self) -> int:
        """Return the number of infinite relative orders."""
        return self.relative_orders.count(INFINITE_ORDER)

    def index(self) -> int | float:
        """Return the index in the whole group, or INFINITY."""
        orders = self.presentation.relative_orders
        leads = {s.depth: s.leading_exponent for s in self.elements}
        result = 1
        for depth, order in enumerate(orders):
            if depth in leads:
                result *= leads[depth]
            elif order:
                result *= order
            else:
                return INFINITY
        return result

    def __str__(self) -> str:
        """Return the members."""
        return "[" + ", ".join(str(s) for s in self.elements) + "]"


def trivial_igs(presentation: PcpPresentation) -> Igs:
    """Return the Igs of the trivial subgroup."""
    return Igs(presentation, ())


def full_igs(presentation: PcpPresentation) -> Igs:
    """Return the Igs of the whole group."""
    return Igs(presentation, tuple(presentation.generators()))


def sift(igs: Igs, x: PcpElement) -> PcpElement:
    """Return the sifting residue of ``x``."""
    return igs.sift(x)


class _IgsBuilder:
    """Closure of a set of elements into an Igs."""

    def __init__(self, presentation: PcpPresentation, normal: bool) -> None:
        self.presentation = presentation
        self.normal = normal
        self.members: dict[int, PcpElement] = {}
        self.todo: deque[PcpElement] = deque()
        self._conjugators: list[PcpElement] = []
        if normal:
            for g in presentation.generators():
                self._conjugators.extend((g, g.inverse()))

    def push(self, elements: Iterable[PcpElement]) -> None:
        self.todo.extend(x for x in elements if not x.is_identity())

    def run(self) -> Igs:
        while True:
            while self.todo:
                self._add(self.todo.popleft())
            self.push(self._unclosed())
            if not self.todo:
                break
        return self._canonical()

    def _reduce(self, x: PcpElement) -> PcpElement:
        while not x.is_identity():
            depth = x.depth
            member = self.members.get(depth)
            if member is None:
                return x
            quotient, remainder = divmod(x.exponents[depth], member.leading_exponent)
            if remainder:
                return x
            x = member ** (-quotient) * x
        return x

    def _add(self, x: PcpElement) -> None:
        x = self._reduce(x)
        if x.is_identity():
            return
        depth = x.depth
        order = self.presentation.relative_orders[depth]
        member = self.members.get(depth)
        if member is not None:
            s, t, _ = igcdex(member.leading_exponent, x.exponents[depth])
            self.todo.extend((member, x))
            x = member ** int(s) * x ** int(t)
        elif order:
            lead = x.exponents[depth]
            common = gcd(lead, order)
            if common != lead:
                s, _, _ = igcdex(lead, order)
                self.todo.append(x)
                x = x ** int(s)
        elif x.exponents[depth] < 0:
            x = x.inverse()
        self.members[depth] = x
        if order:
            self.push([x ** (order // x.leading_exponent)])
        self.push(x.commutator(other) for other in self.members.values() if other != x)
        if self.normal:
            self.push(x.conjugate(g) for g in self._conjugators)

    def _unclosed(self) -> list[PcpElement]:
        residues = []
        members = list(self.members.values())
        for x in members:
            order = self.presentation.relative_orders[x.depth]
            candidates = []
            if order:
                candidates.append(x ** (order // x.leading_exponent))
            for y in members:
                if y.depth < x.depth:
                    candidates.extend((x.conjugate(y), x.conjugate(y.inverse())))
            if self.normal:
                candidates.extend(x.conjugate(g) for g in self._conjugators)
            for candidate in candidates:
                residue = self._reduce(candidate)
                if not residue.is_identity():
                    residues.append(residue)
        return residues

    def _canonical(self) -> Igs:
        members = [self.members[depth] for depth in sorted(self.members)]
        for i in range(len(members)):
            x = members[i]
            for later in members[i + 1 :]:
                depth = later.depth
                quotient = x.exponents[depth] // later.leading_exponent
                if quotient:
                    x = x * later ** (-quotient)
            members[i] = x
        return Igs(self.presentation, tuple(members))


def subgroup_igs(
    presentation: PcpPresentation, generators: Iterable[PcpElement]
) -> Igs:
    """Return the Igs of the subgroup generated by ``generators``."""
    builder = _IgsBuilder(presentation, normal=False)
    builder.push(generators)
    return builder.run()


def normal_closure(
    presentation: PcpPresentation, generators: Iterable[PcpElement]
) -> Igs:
    """Return the Igs of the normal closure of ``generators``."""
    builder = _IgsBuilder(presentation, normal=True)
    builder.push(generators)
    return builder.run()


def _commutators(elements: Sequence[PcpElement]) -> list[PcpElement]:
    return [
        elements[i].commutator(elements[j])
        for i in range(len(elements))
        for j in range(i + 1, len(elements))
    ]


def derived_subgroup(presentation: PcpPresentation) -> Igs:
    """Return the Igs of the commutator subgroup."""
    return presentation.memoize(
        "derived_subgroup",
        lambda: normal_closure(
            presentation, _commutators(presentation.generators())
        ),
    )


def derived_series(presentation: PcpPresentation) -> list[Igs]:
    """Return G, G', G'', ... ending with the trivial subgroup."""

    def compute() -> list[Igs]:
        series = [full_igs(presentation)]
        current = derived_subgroup(presentation)
        while len(series[-1]):
            series.append(current)
            # Terms are characteristic, so the closure in G is the closure in G'
            current = normal_closure(presentation, _commutators(current.elements))
        _LOGGER.debug("Derived series lengths: %s", [len(term) for term in series])
        return series

    return presentation.memoize("derived_series", compute)


def derived_length(presentation: PcpPresentation) -> int:
    """Return the derived length."""
    return len(derived_series(presentation)) - 1


@dataclass(frozen=True)
class InducedPresentation:
    """A subgroup presented on its own Igs."""

    igs: Igs
    presentation: PcpPresentation

    def embed(self, x: PcpElement) -> PcpElement:
        """Map an element of the induced presentation into the ambient group."""
        return self.igs.embed(x.exponents)

    def express(self, x: PcpElement) -> PcpElement:
        """Map an ambient subgroup element into the induced presentation."""
        return PcpElement(self.presentation, self.igs.express(x))


def induced_presentation(igs: Igs) -> InducedPresentation:
    """Return a consistent presentation of the subgroup on its Igs."""
    return igs.presentation.memoize(
        ("induced_presentation", igs.elements), lambda: _induced_presentation(igs)
    )


def _induced_presentation(igs: Igs) -> InducedPresentation:
    members = igs.elements
    orders = igs.relative_orders
    powers: dict[int, tuple[tuple[int, int], ...]] = {}
    conjugates: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}
    inverse_conjugates: dict[tuple[int, int], tuple[tuple[int, int], ...]] = {}

    def word(x: PcpElement) -> tuple[tuple[int, int], ...]:
        return tuple((i, e) for i, e in enumerate(igs.express(x)) if e)

    for i, s in enumerate(members):
        if orders[i]:
            powers[i] = word(s ** orders[i])
        inverse = s.inverse()
        for j in range(i + 1, len(members)):
            conjugates[(j, i)] = word(members[j].conjugate(s))
            if not orders[i]:
                inverse_conjugates[(j, i)] = word(members[j].conjugate(inverse))
    presentation = PcpPresentation(
        orders, powers, conjugates, inverse_conjugates, check=False
    )
    _LOGGER.debug("Induced presentation with relative orders %s", list(orders))
    return InducedPresentation(igs, presentation)


@dataclass(frozen=True)
class AbelianQuotient:
    """G/N for a subgroup N containing G', as an abelian group on n generators."""

    presentation: PcpPresentation
    subgroup: Igs
    group: FgAbelianGroup

    def project(self, x: PcpElement) -> AbElement:
        """Return the image of ``x`` in G/N."""
        return self.group.canonical(x.exponents)

    def section(self, a: AbElement) -> PcpElement:
        """Return a preimage of ``a`` in G."""
        coordinates = self.group.to_generators(a)
        return self.presentation.collect(
            (index, value) for index, value in enumerate(coordinates) if value
        )


def abelian_quotient(presentation: PcpPresentation, subgroup: Igs) -> AbelianQuotient:
    """Return G/N; N must contain the commutator subgroup."""
    if subgroup.presentation is not presentation:
        raise QuotientNotAbelianError("subgroup belongs to another presentation")
    return presentation.memoize(
        ("abelian_quotient", subgroup.elements),
        lambda: _abelian_quotient(presentation, subgroup),
    )


def _abelian_quotient(presentation: PcpPresentation, subgroup: Igs) -> AbelianQuotient:
    generators = presentation.generators()
    n = presentation.count
    for i in range(n):
        for j in range(i + 1, n):
            if not subgroup.contains(generators[i].commutator(generators[j])):
                raise QuotientNotAbelianError
    for s in subgroup.elements:
        for g in generators:
            conjugates = (s.conjugate(g), s.conjugate(g.inverse()))
            if not all(subgroup.contains(x) for x in conjugates):
                raise QuotientNotAbelianError("subgroup is not normal")

    columns: list[Vector] = []
    for i, order in enumerate(presentation.relative_orders):
        unit = presentation.generator(i).exponents
        if order:
            power = presentation.power_relation(i).exponents
            columns.append(
                tuple(order * u - p for u, p in zip(unit, power, strict=True))
            )
        for j in range(i + 1, n):
            target = presentation.generator(j).exponents
            relations = [presentation.conjugation_relation(j, i)]
            if not order:
                relations.append(presentation.conjugation_relation(j, i, inverse=True))
            for relation in relations:
                column = tuple(
                    c - u for c, u in zip(relation.exponents, target, strict=True)
                )
                if any(column):
                    columns.append(column)
    columns.extend(s.exponents for s in subgroup.elements)
    group = FgAbelianGroup(n, IntMatrix.from_columns(columns, rows=n))
    _LOGGER.debug("Abelian quotient with invariants %s", group.invariants)
    return AbelianQuotient(presentation, subgroup, group)
