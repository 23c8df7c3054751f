"""
Finitely generated abelian groups as integer relation lattices.

A group is given by m generators and an m x k relation matrix whose columns
are relations. Elements are kept in canonical coordinates: with the Smith
form U @ L @ V = S of the relation matrix, an element with generator
coordinates x has canonical coordinates U @ x reduced modulo the invariant
factors.
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from math import prod

from .const import INFINITY
from .exceptions import EnumerationLimitError, InfiniteGroupError, MorphismError
from .intlinalg import (
    IntMatrix,
    Vector,
    hnf,
    kernel_basis,
    lattice_member,
    snf,
    unimodular_inverse,
)
from .results import INFINITE, Finite, ReidemeisterResult

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class AbElement:
    """An element of an FgAbelianGroup in canonical coordinates."""

    coordinates: Vector


class FgAbelianGroup:
    """A finitely generated abelian group Z^m / L."""

    def __init__(self, generators: int, relations: IntMatrix | None = None) -> None:
        """Compute the Smith form of the relation matrix."""
        if relations is None:
            relations = IntMatrix.zeros(generators, 0)
        if relations.rows != generators:
            raise ValueError(
                f"Relation matrix has {relations.rows} rows for {generators} generators"
            )
        self.generators = generators
        self.relations = relations
        self.smith = snf(relations)
        size = min(relations.rows, relations.cols)
        self.factors: tuple[int, ...] = tuple(
            self.smith.d[i] if i < size else 0 for i in range(generators)
        )
        self._from_canonical = unimodular_inverse(self.smith.U)

    @classmethod
    def free(cls, rank: int) -> FgAbelianGroup:
        """Return Z^rank."""
        return cls(rank)

    @classmethod
    def cyclic(cls, order: int) -> FgAbelianGroup:
        """Return Z/order (Z for order 0)."""
        return cls.from_invariants([order])

    @classmethod
    def from_invariants(cls, invariants: Sequence[int]) -> FgAbelianGroup:
        """Return the direct sum of the cyclic groups Z/d."""
        return cls(len(invariants), IntMatrix.diagonal(invariants))

    def __eq__(self, other: object) -> bool:
        """Compare presentations."""
        if not isinstance(other, FgAbelianGroup):
            return NotImplemented
        return (self.generators, self.relations) == (other.generators, other.relations)

    def __hash__(self) -> int:
        """Hash the presentation."""
        return hash((self.generators, self.relations))

    def __repr__(self) -> str:
        """Return the invariants."""
        return f"FgAbelianGroup(invariants={list(self.invariants)})"

    @property
    def invariants(self) -> tuple[int, ...]:
        """Return the non-unit invariant factors, zeros last."""
        return tuple(d for d in self.factors if d != 1)

    def is_finite(self) -> bool:
        """Return True if there are no free factors."""
        return 0 not in self.factors

    def order(self) -> int:
        """Return the group order."""
        if not self.is_finite():
            raise InfiniteGroupError("group is infinite")
        return prod(self.factors)

    def hirsch_length(self) -> int:
        """Return the free rank."""
        return self.factors.count(0)

    @property
    def zero(self) -> AbElement:
        """Return the identity."""
        return AbElement((0,) * self.generators)

    def _reduce(self, coordinates: Sequence[int]) -> AbElement:
        return AbElement(
            tuple(
                c % d if d else c
                for c, d in zip(coordinates, self.factors, strict=True)
            )
        )

    def canonical(self, vector: Sequence[int]) -> AbElement:
        """Return the element with generator coordinates ``vector``."""
        if len(vector) != self.generators:
            raise ValueError(
                f"Vector of length {len(vector)} for {self.generators} generators"
            )
        return self._reduce(self.smith.U.apply(vector))

    def to_generators(self, a: AbElement) -> Vector:
        """Return generator coordinates of ``a``."""
        return self._from_canonical.apply(a.coordinates)

    def add(self, a: AbElement, b: AbElement) -> AbElement:
        """Return a + b."""
        return self._reduce(
            [x + y for x, y in zip(a.coordinates, b.coordinates, strict=True)]
        )

    def neg(self, a: AbElement) -> AbElement:
        """Return -a."""
        return self._reduce([-x for x in a.coordinates])

    def sub(self, a: AbElement, b: AbElement) -> AbElement:
        """Return a - b."""
        return self.add(a, self.neg(b))

    def is_zero_vector(self, vector: Sequence[int]) -> bool:
        """Return True if generator coordinates lie in the relation lattice."""
        return not any(self.canonical(vector).coordinates)

    def enumerate(self, limit: int | None = None) -> Iterator[AbElement]:
        """Yield every element once, in canonical coordinates."""
        if not self.is_finite():
            raise InfiniteGroupError("cannot enumerate infinite group")
        if limit is not None and self.order() > limit:
            raise EnumerationLimitError(self.order(), limit)
        for coordinates in itertools.product(*(range(d) for d in self.factors)):
            yield AbElement(tuple(coordinates))


@dataclass(frozen=True)
class AbHom:
    """A homomorphism given by its matrix on generator coordinates."""

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        """Check the shape and that relations map to relations."""
        if (self.matrix.rows, self.matrix.cols) != (
            self.target.generators,
            self.source.generators,
        ):
            raise MorphismError(
                f"Matrix of shape {self.matrix.rows}x{self.matrix.cols} for a map "
                f"from {self.source.generators} to {self.target.generators} generators"
            )
        for column in self.source.relations.columns():
            if lattice_member(self.target.relations, self.matrix.apply(column)) is None:
                raise MorphismError("homomorphism is not well defined")

    @classmethod
    def identity(cls, group: FgAbelianGroup) -> AbHom:
        """Return the identity map."""
        return cls(group, group, IntMatrix.identity(group.generators))

    @classmethod
    def scalar(cls, group: FgAbelianGroup, factor: int) -> AbHom:
        """Return multiplication by ``factor``."""
        return cls(group, group, IntMatrix.diagonal([factor] * group.generators))

    def __call__(self, a: AbElement) -> AbElement:
        """Return the image of ``a``."""
        return self.target.canonical(self.matrix.apply(self.source.to_generators(a)))

    def compose(self, other: AbHom) -> AbHom:
        """Return ``self`` after ``other``."""
        if other.target != self.source:
            raise MorphismError("Cannot compose maps between different groups")
        return AbHom(other.source, self.target, self.matrix @ other.matrix)


def hom_difference(phi: AbHom, psi: AbHom) -> AbHom:
    """Return psi - phi."""
    if phi.source != psi.source or phi.target != psi.target:
        raise MorphismError("Maps have different domains or codomains")
    return AbHom(phi.source, phi.target, psi.matrix - phi.matrix)


def kernel(f: AbHom) -> tuple[FgAbelianGroup, AbHom]:
    """Return the kernel of ``f`` and its embedding into the source."""
    source, target = f.source, f.target
    m = source.generators
    # x with f(x) in the target relation lattice, as the x-part of a kernel
    solutions = kernel_basis(f.matrix.hstack(-target.relations))
    preimage = IntMatrix.from_rows(solutions.entries[:m], cols=solutions.cols)
    hermite = hnf(preimage.T)
    basis = IntMatrix.from_columns(
        [hermite.H.row(r) for r in range(hermite.rank)], rows=m
    )
    relation_columns = []
    for column in source.relations.columns():
        coefficients = lattice_member(basis, column)
        if coefficients is None:
            raise MorphismError("homomorphism is not well defined")
        relation_columns.append(coefficients)
    group = FgAbelianGroup(
        basis.cols, IntMatrix.from_columns(relation_columns, rows=basis.cols)
    )
    _LOGGER.debug("Kernel with invariants %s", group.invariants)
    return group, AbHom(group, source, basis)


def cokernel(f: AbHom) -> tuple[FgAbelianGroup, AbHom]:
    """Return the cokernel of ``f`` and the projection from the target."""
    target = f.target
    group = FgAbelianGroup(target.generators, target.relations.hstack(f.matrix))
    return group, AbHom(target, group, IntMatrix.identity(target.generators))


def coincidence_group(phi: AbHom, psi: AbHom) -> tuple[FgAbelianGroup, AbHom]:
    """Return the subgroup where ``phi`` and ``psi`` agree."""
    return kernel(hom_difference(phi, psi))


def rep_twist_conj_to_id_ab(phi: AbHom, psi: AbHom, g: AbElement) -> AbElement | None:
    """Return h with g = psi(h) - phi(h), or None if there is none."""
    difference = hom_difference(phi, psi)
    group = difference.source
    lattice = difference.matrix.hstack(difference.target.relations)
    solution = lattice_member(lattice, difference.target.to_generators(g))
    if solution is None:
        return None
    return group.canonical(solution[: group.generators])


def reps_reid_classes_ab(
    phi: AbHom, psi: AbHom, limit: int | None = None
) -> ReidemeisterResult:
    """Return one element per Reidemeister class, or INFINITE."""
    difference = hom_difference(phi, psi)
    quotient, _ = cokernel(difference)
    if not quotient.is_finite():
        return INFINITE
    domain = difference.source
    return Finite(
        tuple(
            domain.canonical(quotient.to_generators(c))
            for c in quotient.enumerate(limit)
        )
    )


def reidemeister_number_ab(phi: AbHom, psi: AbHom) -> int | float:
    """Return the order of coker(psi - phi), or INFINITY."""
    quotient, _ = cokernel(hom_difference(phi, psi))
    return quotient.order() if quotient.is_finite() else INFINITY
