"""Test homomorphisms between presentations."""

import pytest

from reidemeister.exceptions import MorphismError, SubgroupNotInvariantError
from reidemeister.oracle import enumerate_group, named_presentation
from reidemeister.pcp_morphisms import (
    GroupMorphism,
    compose_with_inner,
    induce_on_quotient,
    inner_endomorphism,
    relation_violations,
    restrict_morphism,
    verify_morphism,
)
from reidemeister.pcp_subgroups import (
    abelian_quotient,
    derived_subgroup,
    induced_presentation,
    subgroup_igs,
)


def test_identity_and_trivial():
    """Test the identity and trivial endomorphisms."""
    s3 = named_presentation("S3")
    a, b = s3.generators()
    identity = GroupMorphism.identity(s3)
    trivial = GroupMorphism.trivial(s3)
    assert verify_morphism(identity)
    assert verify_morphism(trivial)
    assert identity(a * b) == a * b
    assert trivial(a * b) == s3.identity
    assert str(identity) == "[g1, g2]"


def test_relation_violations(s3):
    """Test that a non-homomorphism is caught."""
    presentation = s3.presentation
    _, b = presentation.generators()
    bad = GroupMorphism.from_images(presentation, [b, b])
    assert not verify_morphism(bad)
    assert "g1^2" in relation_violations(bad)
    with pytest.raises(MorphismError):
        bad.checked()


def test_image_list_checks():
    """Test image count and codomain checks."""
    s3 = named_presentation("S3")
    other = named_presentation("S3")
    with pytest.raises(MorphismError):
        GroupMorphism.from_images(s3, [s3.identity])
    with pytest.raises(MorphismError):
        GroupMorphism.from_images(s3, other.generators())
    with pytest.raises(MorphismError):
        GroupMorphism.identity(s3)(other.generator(0))


def test_example_morphisms_verify(example):
    """Test the worked example endomorphisms."""
    for name in ("phi", "psi", "id"):
        assert verify_morphism(example.endomorphism(name))
    phi = example.endomorphism("phi")
    g1, g2, g3, g4 = example.presentation.generators()
    assert phi(g1**2) == phi(g4)
    assert phi(g3.conjugate(g2)) == phi(g3).conjugate(phi(g2))


def test_inner_endomorphism():
    """Test conjugation maps."""
    s4 = named_presentation("S4")
    g = s4.generator(0) * s4.generator(1)
    inner = inner_endomorphism(s4, g)
    assert verify_morphism(inner)
    for x in enumerate_group(s4).elements[:10]:
        assert inner(x) == g * x * g.inverse()
    identity = GroupMorphism.identity(s4)
    assert compose_with_inner(identity, g).images == inner.images
    assert compose_with_inner(identity, s4.identity) is identity


def test_compose(s3):
    """Test composition of endomorphisms."""
    presentation = s3.presentation
    inner = s3.endomorphism("inner")
    proj = s3.endomorphism("proj")
    composed = inner.compose(proj)
    for x in enumerate_group(presentation).elements:
        assert composed(x) == inner(proj(x))
    assert verify_morphism(composed)
    with pytest.raises(MorphismError):
        inner.compose(GroupMorphism.identity(named_presentation("S3")))


def test_restrict_morphism(example):
    """Test restriction to the derived subgroup."""
    group = example.presentation
    derived = derived_subgroup(group)
    induced = induced_presentation(derived)
    phi = example.endomorphism("phi")
    restricted = restrict_morphism(phi, derived)
    assert restricted.domain is induced.presentation
    assert verify_morphism(restricted)
    for member in induced.presentation.generators():
        assert induced.embed(restricted(member)) == phi(induced.embed(member))


def test_restrict_not_invariant():
    """Test restriction to a subgroup that is not invariant."""
    s3 = named_presentation("S3")
    a, b = s3.generators()
    reflections = subgroup_igs(s3, [a])
    with pytest.raises(SubgroupNotInvariantError):
        restrict_morphism(inner_endomorphism(s3, b), reflections)


def test_induce_on_quotient(example):
    """Test induced maps on G/G'."""
    group = example.presentation
    quotient = abelian_quotient(group, derived_subgroup(group))
    psi = example.endomorphism("psi")
    induced = induce_on_quotient(psi, quotient)
    for element in group.generators():
        assert induced(quotient.project(element)) == quotient.project(psi(element))
    assert induce_on_quotient(psi, derived_subgroup(group)).matrix == induced.matrix


def test_induce_not_invariant():
    """Test quotients by subgroups that are not invariant."""
    z2 = named_presentation("Z^2")
    x, y = z2.generators()
    swap = GroupMorphism.from_images(z2, [y, x])
    with pytest.raises(SubgroupNotInvariantError):
        induce_on_quotient(swap, subgroup_igs(z2, [x]))
