"""Homomorphisms between polycyclic presentations."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, replace

from .abelian import AbHom
from .exceptions import MorphismError, SubgroupNotInvariantError
from .intlinalg import IntMatrix
from .pcp import PcpElement, PcpPresentation, Word
from .pcp_subgroups import (
    AbelianQuotient,
    Igs,
    InducedPresentation,
    abelian_quotient,
    induced_presentation,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupMorphism:
    """A map given by the images of the domain generators."""

    domain: PcpPresentation
    codomain: PcpPresentation
    images: tuple[PcpElement, ...]
    verified: bool = False

    def __post_init__(self) -> None:
        """Check the image list."""
        if len(self.images) != self.domain.count:
            raise MorphismError(
                f"{len(self.images)} images for {self.domain.count} generators"
            )
        for image in self.images:
            if image.presentation is not self.codomain:
                raise MorphismError("Image does not belong to the codomain")

    @classmethod
    def from_images(
        cls,
        domain: PcpPresentation,
        images: Sequence[PcpElement],
        codomain: PcpPresentation | None = None,
    ) -> GroupMorphism:
        """Build a morphism, by default an endomorphism of ``domain``."""
        return cls(domain, codomain or domain, tuple(images))

    @classmethod
    def identity(cls, presentation: PcpPresentation) -> GroupMorphism:
        """Return the identity endomorphism."""
        return cls(
            presentation, presentation, tuple(presentation.generators()), verified=True
        )

    @classmethod
    def trivial(cls, presentation: PcpPresentation) -> GroupMorphism:
        """Return the endomorphism sending everything to the identity."""
        return cls(
            presentation,
            presentation,
            (presentation.identity,) * presentation.count,
            verified=True,
        )

    def __call__(self, x: PcpElement) -> PcpElement:
        """Return the image of ``x``."""
        if x.presentation is not self.domain:
            raise MorphismError("Element does not belong to the domain")
        result = self.codomain.identity
        for image, exponent in zip(self.images, x.exponents, strict=True):
            if exponent:
                result = result * image**exponent
        return result

    def image_of_word(self, word: Word) -> PcpElement:
        """Return the image of a word over the domain generators."""
        result = self.codomain.identity
        for generator, exponent in word:
            result = result * self.images[generator] ** exponent
        return result

    def checked(self) -> GroupMorphism:
        """Return a verified copy, or raise MorphismError."""
        if self.verified:
            return self
        broken = relation_violations(self)
        if broken:
            raise MorphismError(f"map does not preserve relation {broken[0]}")
        return replace(self, verified=True)

    def compose(self, other: GroupMorphism) -> GroupMorphism:
        """Return ``self`` after ``other``."""
        if other.codomain is not self.domain:
            raise MorphismError("Cannot compose morphisms between different groups")
        return GroupMorphism(
            other.domain,
            self.codomain,
            tuple(self(image) for image in other.images),
            verified=self.verified and other.verified,
        )

    def __str__(self) -> str:
        """Return the generator images."""
        return "[" + ", ".join(str(image) for image in self.images) + "]"


def relation_violations(morphism: GroupMorphism) -> list[str]:
    """Return the domain relations not preserved by ``morphism``."""
    domain = morphism.domain
    images = morphism.images
    broken: list[str] = []
    for i, order in enumerate(domain.relative_orders):
        if order and images[i] ** order != morphism.image_of_word(
            domain.powers.get(i, ())
        ):
            broken.append(f"g{i + 1}^{order}")
        for j in range(i + 1, domain.count):
            default = ((j, 1),)
            if images[j].conjugate(images[i]) != morphism.image_of_word(
                domain.conjugates.get((j, i), default)
            ):
                broken.append(f"g{j + 1}^g{i + 1}")
            if not order and images[j].conjugate(
                images[i].inverse()
            ) != morphism.image_of_word(domain.inverse_conjugates.get((j, i), default)):
                broken.append(f"g{j + 1}^(g{i + 1}^-1)")
    return broken


def verify_morphism(morphism: GroupMorphism) -> bool:
    """Return True if every domain relation is preserved."""
    return not relation_violations(morphism)


def inner_endomorphism(presentation: PcpPresentation, g: PcpElement) -> GroupMorphism:
    """Return x -> g x g^-1."""
    inverse = g.inverse()
    return GroupMorphism(
        presentation,
        presentation,
        tuple(g * x * inverse for x in presentation.generators()),
        verified=True,
    )


def compose_with_inner(morphism: GroupMorphism, g: PcpElement) -> GroupMorphism:
    """Return x -> g morphism(x) g^-1."""
    if g.is_identity():
        return morphism
    inverse = g.inverse()
    return replace(morphism, images=tuple(g * x * inverse for x in morphism.images))


def restrict_morphism(
    morphism: GroupMorphism, subgroup: Igs | InducedPresentation
) -> GroupMorphism:
    """Return the restriction to an invariant subgroup, on its induced presentation."""
    induced = (
        subgroup
        if isinstance(subgroup, InducedPresentation)
        else induced_presentation(subgroup)
    )
    images = []
    for member in induced.igs.elements:
        image = morphism(member)
        if not induced.igs.contains(image):
            raise SubgroupNotInvariantError
        images.append(induced.express(image))
    return GroupMorphism(
        induced.presentation,
        induced.presentation,
        tuple(images),
        verified=morphism.verified,
    )


def induce_on_quotient(
    morphism: GroupMorphism, quotient: Igs | AbelianQuotient
) -> AbHom:
    """Return the map induced on G/N by an endomorphism with N invariant."""
    if isinstance(quotient, Igs):
        quotient = abelian_quotient(morphism.domain, quotient)
    for member in quotient.subgroup.elements:
        if not quotient.subgroup.contains(morphism(member)):
            raise SubgroupNotInvariantError
    matrix = IntMatrix.from_columns(
        [image.exponents for image in morphism.images],
        rows=morphism.codomain.count,
    )
    return AbHom(quotient.group, quotient.group, matrix)
