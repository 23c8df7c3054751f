"""Test finitely generated abelian groups."""

import random

import pytest

from reidemeister.abelian import (
    AbElement,
    AbHom,
    FgAbelianGroup,
    cokernel,
    coincidence_group,
    hom_difference,
    kernel,
    reidemeister_number_ab,
    rep_twist_conj_to_id_ab,
    reps_reid_classes_ab,
)
from reidemeister.const import INFINITY
from reidemeister.exceptions import (
    EnumerationLimitError,
    InfiniteGroupError,
    MorphismError,
)
from reidemeister.intlinalg import IntMatrix, lattice_member
from reidemeister.results import Infinite


def _scalar_on_integers(factor):
    return AbHom.scalar(FgAbelianGroup.free(1), factor)


def test_group_invariants():
    """Test invariants, order and Hirsch length."""
    group = FgAbelianGroup.from_invariants([2, 3])
    assert group.invariants == (6,)
    assert group.is_finite()
    assert group.order() == 6
    assert group.hirsch_length() == 0

    integers = FgAbelianGroup.free(1)
    assert not integers.is_finite()
    assert integers.hirsch_length() == 1
    with pytest.raises(InfiniteGroupError):
        integers.order()

    mixed = FgAbelianGroup(3, IntMatrix.from_columns([[4, 0, 0], [0, 6, 0]], rows=3))
    assert mixed.invariants == (2, 12, 0)
    assert mixed.hirsch_length() == 1
    assert FgAbelianGroup.cyclic(0).invariants == (0,)


def test_group_equality():
    """Test equality by presentation."""
    assert FgAbelianGroup.cyclic(4) == FgAbelianGroup.cyclic(4)
    assert FgAbelianGroup.cyclic(4) != FgAbelianGroup.cyclic(2)
    assert len({FgAbelianGroup.cyclic(4), FgAbelianGroup.cyclic(4)}) == 1
    with pytest.raises(ValueError):
        FgAbelianGroup(2, IntMatrix.identity(3))


def test_element_arithmetic():
    """Test canonical coordinates and arithmetic."""
    group = FgAbelianGroup.from_invariants([4])
    three = group.canonical([3])
    assert group.add(three, three) == group.canonical([2])
    assert group.neg(three) == group.canonical([1])
    assert group.sub(three, three) == group.zero
    assert group.is_zero_vector([8])
    assert not group.is_zero_vector([2])
    assert group.canonical(group.to_generators(three)) == three
    with pytest.raises(ValueError):
        group.canonical([1, 2])


def test_enumerate():
    """Test enumeration of finite groups."""
    assert list(FgAbelianGroup.free(0).enumerate()) == [AbElement(())]
    group = FgAbelianGroup.from_invariants([2, 3])
    elements = list(group.enumerate())
    assert len(elements) == len(set(elements)) == 6
    with pytest.raises(InfiniteGroupError, match="cannot enumerate infinite group"):
        list(FgAbelianGroup.free(1).enumerate())
    with pytest.raises(EnumerationLimitError):
        list(group.enumerate(limit=5))


def test_hom_checks():
    """Test homomorphism construction."""
    z2 = FgAbelianGroup.cyclic(2)
    integers = FgAbelianGroup.free(1)
    with pytest.raises(MorphismError, match="not well defined"):
        AbHom(z2, integers, IntMatrix.identity(1))
    with pytest.raises(MorphismError):
        AbHom(integers, integers, IntMatrix.identity(2))
    assert AbHom(integers, z2, IntMatrix.identity(1))(AbElement((3,))) == AbElement(
        (1,)
    )
    double = _scalar_on_integers(2)
    triple = _scalar_on_integers(3)
    assert double.compose(triple).matrix == IntMatrix.diagonal([6])
    assert hom_difference(double, triple).matrix == IntMatrix.diagonal([1])


def test_kernel_examples():
    """Test kernels on cyclic groups."""
    group, _ = kernel(_scalar_on_integers(0))
    assert not group.is_finite()
    group, _ = kernel(_scalar_on_integers(-2))
    assert group.order() == 1

    z4 = FgAbelianGroup.cyclic(4)
    group, embedding = kernel(AbHom.scalar(z4, 2))
    assert group.order() == 2
    images = {embedding(element) for element in group.enumerate()}
    assert images == {z4.canonical([0]), z4.canonical([2])}


def test_cokernel_examples():
    """Test cokernels."""
    group, projection = cokernel(_scalar_on_integers(-2))
    assert group.order() == 2
    assert projection(AbElement((3,))) == group.canonical([1])
    group, _ = cokernel(AbHom.identity(FgAbelianGroup.free(2)))
    assert group.order() == 1
    z2 = FgAbelianGroup.free(2)
    group, _ = cokernel(AbHom(z2, z2, IntMatrix.diagonal([2, 3])))
    assert group.order() == 6


def test_coincidence_group():
    """Test the coincidence group of two maps."""
    z4 = FgAbelianGroup.cyclic(4)
    group, _ = coincidence_group(AbHom.identity(z4), AbHom.scalar(z4, 3))
    assert group.order() == 2
    group, _ = coincidence_group(AbHom.identity(z4), AbHom.scalar(z4, 2))
    assert group.order() == 1


def test_twisted_conjugacy_to_identity():
    """Test solving g = psi(h) - phi(h)."""
    triple = _scalar_on_integers(3)
    identity = _scalar_on_integers(1)
    assert rep_twist_conj_to_id_ab(triple, identity, AbElement((4,))) == AbElement(
        (-2,)
    )
    assert rep_twist_conj_to_id_ab(triple, identity, AbElement((3,))) is None
    assert rep_twist_conj_to_id_ab(identity, identity, AbElement((0,))) == AbElement(
        (0,)
    )


def test_reidemeister_classes():
    """Test class representatives on abelian groups."""
    result = reps_reid_classes_ab(_scalar_on_integers(3), _scalar_on_integers(1))
    assert result.number == 2
    assert len(set(result.representatives)) == 2
    identity = _scalar_on_integers(1)
    assert isinstance(reps_reid_classes_ab(identity, identity), Infinite)
    z2 = FgAbelianGroup.free(2)
    zero = AbHom.scalar(z2, 0)
    result = reps_reid_classes_ab(zero, AbHom(z2, z2, IntMatrix.diagonal([2, 3])))
    assert result.number == 6
    assert reidemeister_number_ab(zero, AbHom.identity(z2)) == 1
    assert reidemeister_number_ab(identity, identity) == INFINITY


def _random_group(rng):
    generators = rng.randint(1, 3)
    relations = rng.randint(0, 3)
    return FgAbelianGroup(
        generators,
        IntMatrix.from_columns(
            [[rng.randint(-6, 6) for _ in range(generators)] for _ in range(relations)],
            rows=generators,
        ),
    )


def _random_endomorphism(group, rng):
    # random matrices must map the relation lattice into itself
    for _ in range(50):
        matrix = IntMatrix.from_rows(
            [
                [rng.randint(-3, 3) for _ in range(group.generators)]
                for _ in range(group.generators)
            ]
        )
        try:
            return AbHom(group, group, matrix)
        except MorphismError:
            continue
    return AbHom.scalar(group, rng.randint(-3, 3))


@pytest.mark.parametrize("seed", range(40))
def test_random_abelian_laws(seed):
    """Test kernel/cokernel laws and class membership on random instances."""
    rng = random.Random(seed)
    group = _random_group(rng)
    phi, psi = _random_endomorphism(group, rng), _random_endomorphism(group, rng)
    difference = hom_difference(phi, psi)
    kernel_group, embedding = kernel(difference)
    cokernel_group, _ = cokernel(difference)
    assert kernel_group.hirsch_length() == cokernel_group.hirsch_length()
    assert kernel_group.is_finite() == cokernel_group.is_finite()
    if kernel_group.is_finite():
        for element in kernel_group.enumerate():
            assert difference(embedding(element)) == group.zero

    lattice = difference.matrix.hstack(group.relations)
    for _ in range(10):
        g = group.canonical([rng.randint(-5, 5) for _ in range(group.generators)])
        h = rep_twist_conj_to_id_ab(phi, psi, g)
        member = lattice_member(lattice, group.to_generators(g))
        assert (h is None) == (member is None)
        if h is not None:
            assert group.sub(psi(h), phi(h)) == g

    result = reps_reid_classes_ab(phi, psi)
    if cokernel_group.is_finite():
        representatives = result.representatives
        assert len(representatives) == cokernel_group.order()
        for i, x in enumerate(representatives):
            for y in representatives[i + 1 :]:
                assert rep_twist_conj_to_id_ab(phi, psi, group.sub(x, y)) is None
    else:
        assert isinstance(result, Infinite)
