"""Test twisted conjugacy and Reidemeister classes."""

import pytest

from reidemeister.const import INFINITY
from reidemeister.exceptions import (
    EnumerationLimitError,
    InfiniteCoincidenceGroupError,
    MorphismError,
)
from reidemeister.oracle import brute_classes, named_presentation
from reidemeister.pcp_morphisms import GroupMorphism
from reidemeister.pcp_subgroups import derived_subgroup, trivial_igs
from reidemeister.twisted import (
    INFINITE,
    NOT_CONJUGATE,
    EndoPair,
    Finite,
    SolverConfig,
    Witness,
    class_index,
    coincidence_quotient_enum,
    is_twisted_conjugate,
    reidemeister_number,
    rep_twist_conj,
    rep_twist_conj_to_id,
    rep_twist_conj_to_id_by_normal,
    reps_reid_classes,
    reps_reid_classes_by_normal,
    verify_witness,
)

from .common import load_problem
from .const import (
    EXAMPLE_NUMBER,
    EXAMPLE_REPRESENTATIVES,
    EXAMPLE_WITNESS,
    INTEGERS_COUNTS,
    S3_COUNTS,
    Z4_COUNTS,
)


def test_example_not_conjugate(example, example_pair):
    """Test that g1 and g1^2 are not twisted conjugate."""
    g1 = example.element("g1")
    assert rep_twist_conj(example_pair, g1, example.element("g1^2")) is NOT_CONJUGATE


def test_example_witness(example, example_pair):
    """Test that g1 and g1^3 are twisted conjugate."""
    g1, g1_cubed = example.element("g1"), example.element("g1^3")
    result = rep_twist_conj(example_pair, g1, g1_cubed)
    assert isinstance(result, Witness)
    assert result.found
    assert verify_witness(example_pair, g1, g1_cubed, result.element)
    known = example.presentation.collect(EXAMPLE_WITNESS)
    assert verify_witness(example_pair, g1, g1_cubed, known)


def test_example_classes(example, example_pair):
    """Test the eight Reidemeister classes of the worked example."""
    result = reps_reid_classes(example_pair)
    assert isinstance(result, Finite)
    assert result.number == EXAMPLE_NUMBER
    assert reidemeister_number(example_pair) == EXAMPLE_NUMBER
    representatives = result.representatives
    expected = [example.presentation.collect(word) for word in EXAMPLE_REPRESENTATIVES]
    positions = [class_index(example_pair, representatives, g) for g in expected]
    assert None not in positions
    assert sorted(positions) == list(range(EXAMPLE_NUMBER))


def test_example_classes_by_normal(example, example_pair):
    """Test the classes through the derived subgroup directly."""
    derived = derived_subgroup(example.presentation)
    result = reps_reid_classes_by_normal(example_pair, derived)
    assert result.number == EXAMPLE_NUMBER
    assert result == reps_reid_classes(example_pair)


def test_example_identity_twist_is_infinite(example):
    """Test that (id, psi) has infinitely many classes."""
    pair = example.pair("id", "psi")
    assert reps_reid_classes(pair) is INFINITE
    assert reidemeister_number(pair) == INFINITY


def test_example_threads(example_pair):
    """Test that parallel branches give the same answer."""
    serial = reps_reid_classes(example_pair, SolverConfig(threads=1))
    parallel = reps_reid_classes(example_pair, SolverConfig(threads=4))
    assert serial == parallel


def test_example_to_identity(example, example_pair):
    """Test the conjugacy-to-identity entry points."""
    g1 = example.element("g1")
    identity = example.presentation.identity
    for result in (
        rep_twist_conj_to_id(example_pair, identity),
        rep_twist_conj_to_id(example_pair, g1 * g1.inverse()),
    ):
        assert isinstance(result, Witness)
    derived = derived_subgroup(example.presentation)
    for g in (g1, g1**2, g1**3):
        direct = rep_twist_conj_to_id(example_pair, g)
        by_normal = rep_twist_conj_to_id_by_normal(example_pair, g, derived)
        assert direct.found == by_normal.found
        if direct.found:
            assert verify_witness(example_pair, g, identity, direct.element)


@pytest.mark.parametrize(("names", "count"), sorted(S3_COUNTS.items()))
def test_s3_counts(s3, names, count):
    """Test class counts on S3."""
    pair = s3.pair(*names)
    result = reps_reid_classes(pair)
    assert result.number == count
    assert result.number == len(brute_classes(pair))


@pytest.mark.parametrize(("names", "count"), sorted(Z4_COUNTS.items()))
def test_z4_counts(z4, names, count):
    """Test class counts on a cyclic group of order 4."""
    pair = z4.pair(*names)
    assert reidemeister_number(pair) == count
    assert reps_reid_classes(pair).number == count


@pytest.mark.parametrize(("names", "count"), sorted(INTEGERS_COUNTS.items()))
def test_integer_counts(integers, names, count):
    """Test class counts on the integers."""
    pair = integers.pair(*names)
    assert reidemeister_number(pair) == count
    assert reps_reid_classes(pair).number == count


def test_integers_identity_is_infinite(integers):
    """Test the identity pair on Z."""
    pair = integers.pair("id", "id")
    assert reps_reid_classes(pair) is INFINITE
    assert reidemeister_number(pair) == INFINITY
    one, two = integers.element("one"), integers.element("two")
    assert rep_twist_conj(pair, one, two) is NOT_CONJUGATE
    assert rep_twist_conj(pair, one, one) == Witness(integers.presentation.identity)


def test_integers_witness(integers):
    """Test solving on Z with psi - phi = 3."""
    pair = integers.pair("neg", "double")
    one, two = integers.element("one"), integers.element("two")
    assert not is_twisted_conjugate(pair, one, two)
    four = two * two
    result = rep_twist_conj(pair, four, one)
    assert verify_witness(pair, four, one, result.element)


def test_identical_elements(s3):
    """Test that every element is conjugate to itself."""
    pair = s3.pair("id", "id")
    for name in ("a", "b", "ab"):
        g = s3.element(name)
        assert rep_twist_conj(pair, g, g) == Witness(s3.presentation.identity)


def test_s3_conjugacy(s3):
    """Test ordinary conjugacy in S3."""
    pair = s3.pair("id", "id")
    a, b, ab = s3.element("a"), s3.element("b"), s3.element("ab")
    assert is_twisted_conjugate(pair, a, ab)
    assert not is_twisted_conjugate(pair, a, b)
    assert is_twisted_conjugate(pair, b, b.inverse())


def test_trivial_group():
    """Test the trivial group."""
    trivial = named_presentation("trivial")
    identity = GroupMorphism.identity(trivial)
    pair = EndoPair(identity, identity)
    result = reps_reid_classes(pair)
    assert result.representatives == (trivial.identity,)


def test_infinite_coincidence_group(heisenberg):
    """Test the precondition failure on the Heisenberg group."""
    pair = heisenberg.pair("id", "id")
    z = heisenberg.element("z")
    with pytest.raises(InfiniteCoincidenceGroupError) as err:
        rep_twist_conj(pair, z, heisenberg.presentation.identity)
    assert err.value.level == 0
    assert str(err.value) == "infinite coincidence group at level 0"
    assert rep_twist_conj(pair, heisenberg.element("x"), z) is NOT_CONJUGATE
    assert reps_reid_classes(pair) is INFINITE


def test_coincidence_quotient_enum(s3, z4):
    """Test lifts of the coincidence group."""
    pair = s3.pair("id", "id")
    lifts = coincidence_quotient_enum(pair, derived_subgroup(s3.presentation))
    assert len(lifts) == 2
    pair = z4.pair("id", "double")
    assert coincidence_quotient_enum(pair, trivial_igs(z4.presentation)) == [
        z4.presentation.identity
    ]


def test_coincidence_quotient_enum_infinite(integers):
    """Test coincidence groups that are infinite."""
    pair = integers.pair("id", "id")
    with pytest.raises(InfiniteCoincidenceGroupError):
        coincidence_quotient_enum(pair, trivial_igs(integers.presentation))


def test_enumeration_cap(z4):
    """Test the finite enumeration cap."""
    pair = z4.pair("id", "id")
    with pytest.raises(EnumerationLimitError):
        reps_reid_classes(pair, SolverConfig(max_enum=3))
    assert reps_reid_classes(pair, SolverConfig(max_enum=4)).number == 4


def test_unverified_maps_are_rejected():
    """Test that maps are verified before solving."""
    problem = load_problem("bad_morphism.json", check_morphisms=False)
    bad = problem.endomorphism("bad")
    pair = EndoPair(bad, bad)
    with pytest.raises(MorphismError):
        reps_reid_classes(pair)


def test_pair_checks(s3, z4):
    """Test that both maps act on one group."""
    with pytest.raises(MorphismError):
        EndoPair(s3.endomorphism("id"), z4.endomorphism("id"))
