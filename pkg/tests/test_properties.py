"""Property tests over random instances."""

import random

import pytest
from sympy import Matrix

from reidemeister.const import INFINITY
from reidemeister.oracle import (
    brute_classes,
    compare,
    enumerate_group,
    generate_corpus,
    named_presentation,
)
from reidemeister.pcp import consistency_check
from reidemeister.pcp_morphisms import GroupMorphism
from reidemeister.pcp_subgroups import (
    abelian_quotient,
    derived_series,
    derived_subgroup,
    induced_presentation,
)
from reidemeister.problem_file import load_example
from reidemeister.twisted import (
    EndoPair,
    Finite,
    SolverConfig,
    Witness,
    reidemeister_number,
    rep_twist_conj,
    rep_twist_conj_to_id,
    reps_reid_classes,
    translate_classes,
)

CORPUS_SEED = 2024
CORPUS_SIZE = 100
CORPUS_GROUPS = 20
PAIRS_PER_GROUP = 5


@pytest.fixture(name="corpus", scope="module")
def corpus_fixture():
    """Return the seeded corpus of finite groups and endomorphism pairs."""
    return generate_corpus(
        CORPUS_SEED,
        groups=CORPUS_GROUPS,
        pairs_per_group=PAIRS_PER_GROUP,
        max_order=200,
    )


@pytest.mark.parametrize("index", range(CORPUS_SIZE))
def test_corpus_matches_brute_force(corpus, index):
    """Test counts, representatives and conjugacy answers against brute force."""
    name, pair = corpus[index]
    report = compare(pair, samples=10, rng=random.Random(index))
    assert report.ok, (name, report.mismatches)


def test_corpus_groups_consistent(corpus):
    """Test every corpus group and its derived subgroups are consistent."""
    seen = set()
    for _, pair in corpus:
        group = pair.group
        if id(group) in seen:
            continue
        seen.add(id(group))
        assert not consistency_check(group)
        for term in derived_series(group)[1:]:
            assert not consistency_check(induced_presentation(term).presentation)


def _free_abelian_pair(rng, rank):
    presentation = named_presentation(f"Z^{rank}")
    matrices = [
        [[rng.randint(-5, 5) for _ in range(rank)] for _ in range(rank)]
        for _ in range(2)
    ]
    maps = [
        GroupMorphism.from_images(
            presentation,
            [
                presentation.element([matrix[i][j] for i in range(rank)])
                for j in range(rank)
            ],
        )
        for matrix in matrices
    ]
    return EndoPair(*maps), Matrix(matrices[1]) - Matrix(matrices[0])


@pytest.mark.parametrize("seed", range(200))
def test_free_abelian_determinant(seed):
    """Test R(phi, psi) on Z^n is |det(psi - phi)|, or infinite when it vanishes."""
    rng = random.Random(seed)
    pair, difference = _free_abelian_pair(rng, rng.randint(1, 4))
    determinant = abs(int(difference.det(method="bareiss")))
    expected = determinant if determinant else INFINITY
    assert reidemeister_number(pair) == expected


@pytest.mark.parametrize("seed", range(20))
def test_free_abelian_representatives(seed):
    """Test the enumerated classes on Z^2 have the determinant count."""
    rng = random.Random(1000 + seed)
    pair, difference = _free_abelian_pair(rng, 2)
    determinant = abs(int(difference.det()))
    result = reps_reid_classes(pair)
    if not determinant:
        assert not result.is_finite()
        return
    assert result.number == determinant
    if determinant > 30:
        return
    representatives = result.representatives
    for i, first in enumerate(representatives):
        for second in representatives[i + 1 :]:
            assert not isinstance(rep_twist_conj(pair, first, second), Witness)


def _finite_cases(corpus):
    return [pair for _, pair in corpus[::7]]


def test_conjugacy_reduces_to_identity(corpus):
    """Test g1 ~ g2 for (phi, psi) exactly when g1 g2^-1 ~ 1 for (iota_g2 phi, psi)."""
    rng = random.Random(7)
    for pair in _finite_cases(corpus):
        elements = enumerate_group(pair.group).elements
        for _ in range(5):
            g1, g2 = rng.choice(elements), rng.choice(elements)
            direct = rep_twist_conj(pair, g1, g2)
            reduced = rep_twist_conj_to_id(pair.twisted(g2), g1 * g2.inverse())
            assert isinstance(direct, Witness) == isinstance(reduced, Witness)
            if isinstance(reduced, Witness):
                h = reduced.element
                assert g1 == pair.psi(h) * g2 * pair.phi(h).inverse()


def test_inner_twist_invariance(corpus):
    """Test translated representatives of (iota_g phi, psi) represent (phi, psi)."""
    rng = random.Random(11)
    for pair in _finite_cases(corpus):
        g = rng.choice(enumerate_group(pair.group).elements)
        twisted = reps_reid_classes(pair.twisted(g))
        assert isinstance(twisted, Finite)
        classes = brute_classes(pair)
        orbit = {x: index for index, members in enumerate(classes) for x in members}
        translated = translate_classes(twisted.representatives, g)
        assert sorted(orbit[x] for x in translated) == list(range(len(classes)))


def test_classes_partition_group(corpus):
    """Test the representatives meet every brute-force class exactly once."""
    for pair in _finite_cases(corpus):
        result = reps_reid_classes(pair)
        classes = brute_classes(pair)
        orbit = {x: index for index, members in enumerate(classes) for x in members}
        assert sorted(orbit[x] for x in result.representatives) == list(
            range(len(classes))
        )


@pytest.mark.parametrize("name", ["example", "heisenberg", "Z^3", "S4", "Q8"])
def test_hirsch_length_additive(name, example, heisenberg):
    """Test h(G) = h(G') + h(G/G')."""
    presentations = {
        "example": example.presentation,
        "heisenberg": heisenberg.presentation,
    }
    group = presentations[name] if name in presentations else named_presentation(name)
    derived = derived_subgroup(group)
    quotient = abelian_quotient(group, derived)
    assert (
        derived.hirsch_length() + quotient.group.hirsch_length()
        == group.hirsch_length()
    )


@pytest.mark.parametrize("group_index", range(CORPUS_GROUPS))
def test_corpus_associativity(corpus, group_index):
    """Test associativity on random triples of every corpus group."""
    _, pair = corpus[group_index * PAIRS_PER_GROUP]
    elements = enumerate_group(pair.group).elements
    rng = random.Random(group_index)
    for _ in range(1000):
        x, y, z = (rng.choice(elements) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_abelian_projection_is_homomorphism(corpus, example, heisenberg):
    """Test projection onto G/G' turns products into sums."""
    rng = random.Random(13)
    groups = [example.presentation, heisenberg.presentation]
    groups += [pair.group for _, pair in corpus[::PAIRS_PER_GROUP]]
    for group in groups:
        quotient = abelian_quotient(group, derived_subgroup(group))
        for _ in range(50):
            x, y = (
                group.collect(
                    (rng.randrange(group.count), rng.randint(-4, 4))
                    for _ in range(rng.randint(0, 6))
                )
                for _ in range(2)
            )
            assert quotient.group.add(
                quotient.project(x), quotient.project(y)
            ) == quotient.project(x * y)


def test_derived_subgroup_invariant(corpus, example_pair):
    """Test every endomorphism maps G' into G'."""
    pairs = [pair for _, pair in corpus] + [example_pair]
    for pair in pairs:
        derived = derived_subgroup(pair.group)
        for morphism in (pair.phi, pair.psi):
            for member in derived.elements:
                assert derived.contains(morphism(member))


def test_threaded_classes_match_sequential():
    """Test a thread pool on cold caches yields the sequential representatives."""
    cases = generate_corpus(CORPUS_SEED + 1, groups=10, pairs_per_group=2)
    cases.append(("example", load_example().pair("phi", "psi")))
    threaded = [reps_reid_classes(pair, SolverConfig(threads=4)) for _, pair in cases]
    for (name, pair), result in zip(cases, threaded, strict=True):
        assert reps_reid_classes(pair, SolverConfig(threads=1)) == result, name
