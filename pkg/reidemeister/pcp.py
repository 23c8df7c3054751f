"""
Consistent polycyclic presentations and their elements.

A presentation on generators g_0, ..., g_{n-1} has relative orders r_i
(``0`` encodes an infinite order), power relations g_i^{r_i} = P_i for
finite r_i and conjugation relations g_j^{g_i} = C_{j,i} (plus
g_j^{g_i^-1} = D_{j,i} for infinite r_i) for i < j. Every right-hand side
is a word over generators with index greater than i. Missing relations
are trivial.

Elements are exponent vectors in normal form. Multiplication uses
collection from the left: conjugation by g_k acts on the tail subgroup
G_{k+1} = <g_{k+1}, ..., g_{n-1}> as an automorphism given by the images
of its generators, so collecting only ever recurses towards higher
indices.
"""

from __future__ import annotations

import logging
import threading
from collections.abc import Callable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from math import gcd, prod
from typing import Any

from .const import INFINITE_ORDER
from .exceptions import (
    InconsistentPresentationError,
    InfiniteGroupError,
    PresentationError,
)

_LOGGER = logging.getLogger(__name__)

Vector = tuple[int, ...]
Letter = tuple[int, int]
Word = tuple[Letter, ...]


def normalize_word(word: Iterable[Sequence[int]], count: int) -> Word:
    """Return a word as a tuple of (generator, exponent) pairs.

    Generators are 0-based and must lie in ``range(count)``.
    """
    letters: list[Letter] = []
    for letter in word:
        if len(letter) != 2:
            raise PresentationError(f"Malformed letter {letter!r}")
        generator, exponent = letter
        if isinstance(generator, bool) or not isinstance(generator, int):
            raise PresentationError(f"Generator index {generator!r} is not an integer")
        if isinstance(exponent, bool) or not isinstance(exponent, int):
            raise PresentationError(f"Exponent {exponent!r} is not an integer")
        if not 0 <= generator < count:
            raise PresentationError(
                f"Generator index {generator} out of range for {count} generators"
            )
        if exponent:
            letters.append((generator, exponent))
    return tuple(letters)


def _check_tail_word(word: Word, above: int, relation: str) -> None:
    for generator, _ in word:
        if generator <= above:
            raise PresentationError(
                f"Relation {relation} uses g{generator + 1}, expected generators "
                f"above g{above + 1}"
            )


class PcpPresentation:
    """A polycyclic presentation with collection-based arithmetic.

    Instances are immutable once constructed. Derived data such as
    collected relation vectors and automorphism powers is cached lazily.
    """

    def __init__(
        self,
        relative_orders: Sequence[int],
        powers: Mapping[int, Iterable[Sequence[int]]] | None = None,
        conjugates: Mapping[tuple[int, int], Iterable[Sequence[int]]] | None = None,
        inverse_conjugates: Mapping[tuple[int, int], Iterable[Sequence[int]]]
        | None = None,
        *,
        check: bool = True,
    ) -> None:
        """Validate the relations and optionally run the consistency check.

        ``conjugates[(j, i)]`` is the word for g_j^{g_i}; ``inverse_conjugates``
        holds g_j^{g_i^-1} and is only allowed when r_i is infinite.
        """
        orders: list[int] = []
        for index, order in enumerate(relative_orders):
            if isinstance(order, bool) or not isinstance(order, int):
                raise PresentationError(
                    f"Relative order of g{index + 1} is not an integer"
                )
            if order != INFINITE_ORDER and order < 2:
                raise PresentationError(
                    f"Relative order of g{index + 1} must be 0 or at least 2, "
                    f"got {order}"
                )
            orders.append(order)
        self.relative_orders: tuple[int, ...] = tuple(orders)
        self.count = len(orders)
        count = self.count

        self.powers: dict[int, Word] = {}
        for i, word in (powers or {}).items():
            self._check_index(i)
            if orders[i] == INFINITE_ORDER:
                raise PresentationError(
                    f"Power relation given for g{i + 1} of infinite order"
                )
            normalized = normalize_word(word, count)
            _check_tail_word(normalized, i, f"g{i + 1}^{orders[i]}")
            if normalized:
                self.powers[i] = normalized

        self.conjugates: dict[tuple[int, int], Word] = {}
        self.inverse_conjugates: dict[tuple[int, int], Word] = {}
        for table, source, inverse in (
            (self.conjugates, conjugates, False),
            (self.inverse_conjugates, inverse_conjugates, True),
        ):
            for key, word in (source or {}).items():
                j, i = key
                self._check_index(i)
                self._check_index(j)
                name = f"g{j + 1}^(g{i + 1}^-1)" if inverse else f"g{j + 1}^g{i + 1}"
                if i >= j:
                    raise PresentationError(
                        f"Relation {name} must conjugate by a lower generator"
                    )
                if inverse and orders[i] != INFINITE_ORDER:
                    raise PresentationError(
                        f"Relation {name} given for g{i + 1} of finite order"
                    )
                normalized = normalize_word(word, count)
                _check_tail_word(normalized, i, name)
                if normalized != ((j, 1),):
                    table[(j, i)] = normalized

        self._identity: Vector = (0,) * count
        self._power_vectors: dict[int, Vector] = {}
        self._images: dict[tuple[int, int], list[Vector]] = {}
        self._auto_powers: dict[tuple[int, int], list[list[Vector]]] = {}
        self._memo: dict[Any, Any] = {}
        self._lock = threading.RLock()

        if check:
            violations = consistency_check(self)
            if violations:
                raise InconsistentPresentationError(violations)

    @classmethod
    def build(
        cls,
        relative_orders: Sequence[int],
        powers: Mapping[int, Iterable[Sequence[int]]]
        | Sequence[Iterable[Sequence[int]] | None]
        | None = None,
        conjugates: Mapping[tuple[int, int], Iterable[Sequence[int]]] | None = None,
        inverse_conjugates: Mapping[tuple[int, int], Iterable[Sequence[int]]]
        | None = None,
        check: bool = True,
    ) -> PcpPresentation:
        """Build a presentation from 0-based words.

        ``powers`` may also be a list with one entry (or None) per generator.
        """
        if powers is not None and not isinstance(powers, Mapping):
            powers = {i: word for i, word in enumerate(powers) if word}
        return cls(
            relative_orders,
            powers,
            conjugates,
            inverse_conjugates,
            check=check,
        )

    def _check_index(self, index: int) -> None:
        if isinstance(index, bool) or not isinstance(index, int):
            raise PresentationError(f"Generator index {index!r} is not an integer")
        if not 0 <= index < self.count:
            raise PresentationError(
                f"Generator index {index} out of range for {self.count} generators"
            )

    def __repr__(self) -> str:
        """Return a short description."""
        return f"PcpPresentation(relative_orders={list(self.relative_orders)})"

    # ------------------------------------------------------------------
    # Group level data
    # ------------------------------------------------------------------

    def is_finite(self) -> bool:
        """Return True if every relative order is finite."""
        return INFINITE_ORDER not in self.relative_orders

    def order(self) -> int:
        """Return the group order of a finite presentation."""
        if not self.is_finite():
            raise InfiniteGroupError("group is infinite")
        return prod(self.relative_orders)

    def hirsch_length(self) -> int:
        """Return the number of infinite relative orders."""
        return self.relative_orders.count(INFINITE_ORDER)

    def memoize(self, key: Any, factory: Callable[[], Any]) -> Any:
        """Return a cached value derived from this presentation."""
        try:
            return self._memo[key]
        except KeyError:
            pass
        value = factory()
        with self._lock:
            return self._memo.setdefault(key, value)

    # ------------------------------------------------------------------
    # Elements
    # ------------------------------------------------------------------

    @property
    def identity(self) -> PcpElement:
        """Return the identity element."""
        return PcpElement(self, self._identity)

    def generator(self, index: int) -> PcpElement:
        """Return generator ``index`` (0-based)."""
        self._check_index(index)
        return PcpElement(self, self._unit(index))

    def generators(self) -> list[PcpElement]:
        """Return all generators."""
        return [self.generator(i) for i in range(self.count)]

    def element(self, exponents: Sequence[int]) -> PcpElement:
        """Return the element with the given normal-form exponents."""
        vector = tuple(int(e) for e in exponents)
        if len(vector) != self.count:
            raise PresentationError(
                f"Exponent vector of length {len(vector)} for {self.count} generators"
            )
        for index, (exponent, order) in enumerate(
            zip(vector, self.relative_orders, strict=True)
        ):
            if order and not 0 <= exponent < order:
                raise PresentationError(
                    f"Exponent {exponent} of g{index + 1} outside [0, {order})"
                )
        return PcpElement(self, vector)

    def collect(self, word: Iterable[Sequence[int]]) -> PcpElement:
        """Return the normal form of a word of (generator, exponent) pairs."""
        return PcpElement(
            self, self._collect_word(normalize_word(word, self.count))
        )

    def power_relation(self, index: int) -> PcpElement:
        """Return g_index^{r_index} in normal form (identity for infinite orders)."""
        self._check_index(index)
        if not self.relative_orders[index]:
            return self.identity
        return PcpElement(self, self._power_vector(index))

    def conjugation_relation(self, j: int, i: int, inverse: bool = False) -> PcpElement:
        """Return g_j^{g_i} (or g_j^{g_i^-1}) in normal form, i < j."""
        self._check_index(j)
        self._check_index(i)
        if i >= j:
            raise PresentationError("Conjugation relations need i < j")
        if inverse and self.relative_orders[i]:
            return self.generator(j).conjugate(self.generator(i).inverse())
        return PcpElement(self, self._conjugation_images(i, -1 if inverse else 1)[j])

    def _unit(self, index: int) -> Vector:
        return self._identity[:index] + (1,) + self._identity[index + 1 :]

    def _collect_word(self, word: Word) -> Vector:
        vector = self._identity
        for generator, exponent in word:
            vector = self._mul_gen_power(vector, generator, exponent)
        return vector

    # ------------------------------------------------------------------
    # Collection on exponent vectors
    # ------------------------------------------------------------------

    def _power_vector(self, k: int) -> Vector:
        """Return the normal form of g_k^{r_k}."""
        vector = self._power_vectors.get(k)
        if vector is None:
            vector = self._collect_word(self.powers.get(k, ()))
            with self._lock:
                vector = self._power_vectors.setdefault(k, vector)
        return vector

    def _conjugation_images(self, k: int, sign: int) -> list[Vector]:
        """Return images of g_j under y -> g_k^-sign y g_k^sign, j > k."""
        images = self._images.get((k, sign))
        if images is None:
            table = self.conjugates if sign > 0 else self.inverse_conjugates
            images = [
                self._collect_word(table.get((j, k), ((j, 1),))) if j > k else ()
                for j in range(self.count)
            ]
            with self._lock:
                images = self._images.setdefault((k, sign), images)
        return images

    def _apply_images(self, images: list[Vector], y: Vector, k: int) -> Vector:
        """Apply the endomorphism of G_{k+1} given by generator images."""
        result = self._identity
        for j in range(k + 1, self.count):
            if y[j]:
                result = self._multiply(result, self._power(images[j], y[j]))
        return result

    def _auto_power_images(self, k: int, sign: int, level: int) -> list[Vector]:
        """Return images of the 2^level-th power of conjugation by g_k^sign."""
        powers = self._auto_powers.get((k, sign))
        if powers is not None and len(powers) > level:
            return powers[level]
        first = self._conjugation_images(k, sign)
        with self._lock:
            powers = self._auto_powers.setdefault((k, sign), [first])
            while len(powers) <= level:
                last = powers[-1]
                powers.append(
                    [
                        self._apply_images(last, image, k) if j > k else ()
                        for j, image in enumerate(last)
                    ]
                )
            return powers[level]

    def _apply_auto_power(self, y: Vector, k: int, sign: int, exponent: int) -> Vector:
        level = 0
        while exponent:
            if exponent & 1:
                y = self._apply_images(self._auto_power_images(k, sign, level), y, k)
            exponent >>= 1
            level += 1
        return y

    def _conj_by_power(self, y: Vector, k: int, exponent: int) -> Vector:
        """Return g_k^-e y g_k^e for y in G_{k+1}."""
        if not exponent or not any(y):
            return y
        order = self.relative_orders[k]
        if order:
            quotient, exponent = divmod(exponent, order)
            y = self._apply_auto_power(y, k, 1, exponent)
            if quotient:
                power = self._power(self._power_vector(k), quotient)
                y = self._multiply(self._invert(power), self._multiply(y, power))
            return y
        if exponent > 0:
            return self._apply_auto_power(y, k, 1, exponent)
        return self._apply_auto_power(y, k, -1, -exponent)

    def _mul_gen_power(self, x: Vector, k: int, exponent: int) -> Vector:
        """Return the normal form of x * g_k^exponent."""
        if not exponent:
            return x
        tail = self._identity[: k + 1] + x[k + 1 :]
        if any(tail):
            tail = self._conj_by_power(tail, k, exponent)
        total = x[k] + exponent
        order = self.relative_orders[k]
        if order:
            quotient, total = divmod(total, order)
            if quotient:
                tail = self._multiply(
                    self._power(self._power_vector(k), quotient), tail
                )
        return x[:k] + (total,) + tail[k + 1 :]

    def _multiply(self, x: Vector, y: Vector) -> Vector:
        depth = _depth(y)
        if depth == self.count:
            return x
        if not any(x[depth:]):
            return x[:depth] + y[depth:]
        for k in range(depth, self.count):
            if y[k]:
                x = self._mul_gen_power(x, k, y[k])
        return x

    def _invert(self, x: Vector) -> Vector:
        result = self._identity
        for k in range(self.count - 1, -1, -1):
            if x[k]:
                result = self._mul_gen_power(result, k, -x[k])
        return result

    def _power(self, x: Vector, exponent: int) -> Vector:
        if exponent < 0:
            x, exponent = self._invert(x), -exponent
        if exponent == 1:
            return x
        result = self._identity
        while exponent:
            if exponent & 1:
                result = self._multiply(result, x)
            exponent >>= 1
            if exponent:
                x = self._multiply(x, x)
        return result


def _depth(vector: Vector) -> int:
    for index, exponent in enumerate(vector):
        if exponent:
            return index
    return len(vector)


@dataclass(frozen=True, eq=False)
class PcpElement:
    """An element of a polycyclic presentation in normal form."""

    presentation: PcpPresentation
    exponents: Vector

    def __eq__(self, other: object) -> bool:
        """Compare normal forms within one presentation."""
        if not isinstance(other, PcpElement):
            return NotImplemented
        return (
            self.presentation is other.presentation
            and self.exponents == other.exponents
        )

    def __hash__(self) -> int:
        """Hash the normal form."""
        return hash(self.exponents)

    def _check_same(self, other: PcpElement) -> None:
        if other.presentation is not self.presentation:
            raise PresentationError("Elements belong to different presentations")

    def __mul__(self, other: PcpElement) -> PcpElement:
        """Return the product."""
        self._check_same(other)
        return PcpElement(
            self.presentation,
            self.presentation._multiply(self.exponents, other.exponents),
        )

    def __pow__(self, exponent: int) -> PcpElement:
        """Return an integer power."""
        return PcpElement(
            self.presentation, self.presentation._power(self.exponents, exponent)
        )

    def inverse(self) -> PcpElement:
        """Return the inverse."""
        return PcpElement(self.presentation, self.presentation._invert(self.exponents))

    def conjugate(self, by: PcpElement) -> PcpElement:
        """Return ``by^-1 * self * by``."""
        return by.inverse() * self * by

    def commutator(self, other: PcpElement) -> PcpElement:
        """Return ``[self, other] = self^-1 other^-1 self other``."""
        return (other * self).inverse() * (self * other)

    @property
    def depth(self) -> int:
        """Return the index of the first nonzero exponent (n for the identity)."""
        return _depth(self.exponents)

    @property
    def leading_exponent(self) -> int:
        """Return the first nonzero exponent (0 for the identity)."""
        depth = self.depth
        return self.exponents[depth] if depth < len(self.exponents) else 0

    def is_identity(self) -> bool:
        """Return True for the identity."""
        return not any(self.exponents)

    def to_word(self) -> Word:
        """Return the normal form as a word."""
        return tuple(
            (index, exponent)
            for index, exponent in enumerate(self.exponents)
            if exponent
        )

    def __str__(self) -> str:
        """Return the normal form in ``g1*g4^-1`` style."""
        if self.is_identity():
            return "id"
        return "*".join(
            f"g{index + 1}" if exponent == 1 else f"g{index + 1}^{exponent}"
            for index, exponent in self.to_word()
        )

    def __repr__(self) -> str:
        """Return a debug representation."""
        return f"PcpElement({self})"


def collect(presentation: PcpPresentation, word: Iterable[Sequence[int]]) -> PcpElement:
    """Return the normal form of ``word``."""
    return presentation.collect(word)


def multiply(x: PcpElement, y: PcpElement) -> PcpElement:
    """Return ``x * y``."""
    return x * y


def invert(x: PcpElement) -> PcpElement:
    """Return ``x^-1``."""
    return x.inverse()


def conjugate(x: PcpElement, by: PcpElement) -> PcpElement:
    """Return ``by^-1 * x * by``."""
    return x.conjugate(by)


def commutator(x: PcpElement, y: PcpElement) -> PcpElement:
    """Return ``x^-1 y^-1 x y``."""
    return x.commutator(y)


def element_order(x: PcpElement) -> int:
    """Return the order of ``x``, or 0 if it has infinite order."""
    presentation = x.presentation
    vector = x.exponents
    result = 1
    while any(vector):
        depth = _depth(vector)
        order = presentation.relative_orders[depth]
        if not order:
            return 0
        step = order // gcd(vector[depth], order)
        result *= step
        vector = presentation._power(vector, step)
    return result


def consistency_check(presentation: PcpPresentation) -> list[str]:
    """Return the violations of the consistency conditions.

    For every k, conjugation by g_k must define an automorphism of
    G_{k+1}: it has to respect the power and conjugation relations among
    the higher generators, be inverted by the g_k^-1 relations when r_k is
    infinite, and for finite r_k its r_k-th power must be conjugation by
    P_k while fixing P_k. An empty list means the presentation is
    consistent.
    """
    p = presentation
    n = p.count
    violations: list[str] = []

    def name(index: int) -> str:
        return f"g{index + 1}"

    for k in range(n - 1, -1, -1):
        images = p._conjugation_images(k, 1)
        maps = [(1, images)]
        if not p.relative_orders[k]:
            maps.append((-1, p._conjugation_images(k, -1)))

        for sign, table in maps:
            by = name(k) if sign > 0 else f"{name(k)}^-1"

            def image(vector: Vector, table: list[Vector] = table) -> Vector:
                return p._apply_images(table, vector, k)

            for i in range(k + 1, n):
                order = p.relative_orders[i]
                if order:
                    left = image(p._power_vector(i))
                    right = p._power(table[i], order)
                    if left != right:
                        violations.append(
                            f"conjugation by {by} breaks {name(i)}^{order}"
                        )
                for j in range(i + 1, n):
                    word = p.conjugates.get((j, i), ((j, 1),))
                    relations = [(p._collect_word(word), 1)]
                    if not order:
                        relations.append(
                            (
                                p._collect_word(
                                    p.inverse_conjugates.get((j, i), ((j, 1),))
                                ),
                                -1,
                            )
                        )
                    for relation, direction in relations:
                        left = image(relation)
                        if direction > 0:
                            right = p._multiply(
                                p._invert(table[i]), p._multiply(table[j], table[i])
                            )
                        else:
                            right = p._multiply(
                                table[i], p._multiply(table[j], p._invert(table[i]))
                            )
                        if left != right:
                            exponent = "" if direction > 0 else "^-1"
                            violations.append(
                                f"conjugation by {by} breaks "
                                f"{name(j)}^({name(i)}{exponent})"
                            )

        order = p.relative_orders[k]
        if order:
            power = p._power_vector(k)
            for j in range(k + 1, n):
                unit = p._unit(j)
                left = unit
                for _ in range(order):
                    left = p._apply_images(images, left, k)
                right = p._multiply(p._invert(power), p._multiply(unit, power))
                if left != right:
                    violations.append(
                        f"{name(j)}^({name(k)}^{order}) differs from conjugation "
                        f"by the power relation"
                    )
            if p._apply_images(images, power, k) != power:
                violations.append(f"{name(k)} does not commute with {name(k)}^{order}")
        else:
            inverse = p._conjugation_images(k, -1)
            for j in range(k + 1, n):
                unit = p._unit(j)
                if p._apply_images(inverse, images[j], k) != unit or p._apply_images(
                    images, inverse[j], k
                ) != unit:
                    violations.append(
                        f"relations for {name(j)}^{name(k)} and "
                        f"{name(j)}^({name(k)}^-1) are not inverse"
                    )

    if violations:
        _LOGGER.debug("Presentation %s has %s violations", p, len(violations))
    return violations
