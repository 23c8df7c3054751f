"""Read and write problem files: a presentation, named endomorphisms and elements."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any

import voluptuous as vol

from .const import (
    CONF_BY,
    CONF_CONJUGATES,
    CONF_ELEMENTS,
    CONF_ENDOMORPHISMS,
    CONF_GENERATOR,
    CONF_POWERS,
    CONF_PRESENTATION,
    CONF_RELATIVE_ORDERS,
    CONF_WORD,
    EXAMPLE_FILE,
)
from .exceptions import MorphismError, PresentationError, ProblemFileError
from .pcp import PcpElement, PcpPresentation, Word
from .pcp_morphisms import GroupMorphism
from .twisted import EndoPair

_LOGGER = logging.getLogger(__name__)

KIND_IO = "io"
KIND_SYNTAX = "syntax"
KIND_SEMANTIC = "semantic"

WORD_SCHEMA = vol.Schema(
    [vol.ExactSequence([vol.All(int, vol.Range(min=1)), vol.All(int, vol.NotIn([0]))])]
)

PRESENTATION_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_RELATIVE_ORDERS): [vol.All(int, vol.Range(min=0))],
        vol.Optional(CONF_POWERS, default=list): [
            {
                vol.Required(CONF_GENERATOR): vol.All(int, vol.Range(min=1)),
                vol.Required(CONF_WORD): WORD_SCHEMA,
            }
        ],
        vol.Optional(CONF_CONJUGATES, default=list): [
            {
                vol.Required(CONF_GENERATOR): vol.All(int, vol.Range(min=1)),
                vol.Required(CONF_BY): vol.All(int, vol.NotIn([0])),
                vol.Required(CONF_WORD): WORD_SCHEMA,
            }
        ],
    }
)

PROBLEM_SCHEMA = vol.Schema(
    {
        vol.Required(CONF_PRESENTATION): PRESENTATION_SCHEMA,
        vol.Optional(CONF_ENDOMORPHISMS, default=dict): {str: [WORD_SCHEMA]},
        vol.Optional(CONF_ELEMENTS, default=dict): {str: WORD_SCHEMA},
    }
)


def _json_path(path: list[Any]) -> str:
    text = ""
    for part in path:
        if isinstance(part, int):
            text += f"[{part}]"
        else:
            text += f".{part}" if text else str(part)
    return text or "$"


def _semantic(message: str, anchor: str) -> ProblemFileError:
    return ProblemFileError(message, KIND_SEMANTIC, anchor)


def _to_library_word(word: list[list[int]], count: int, anchor: str) -> Word:
    """Convert a 1-based file word to a 0-based library word."""
    converted = []
    for index, (generator, exponent) in enumerate(word):
        if generator > count:
            raise _semantic(
                f"generator {generator} out of range 1..{count}", f"{anchor}[{index}]"
            )
        converted.append((generator - 1, exponent))
    return tuple(converted)


def _to_file_word(word: Word) -> list[list[int]]:
    return [[generator + 1, exponent] for generator, exponent in word]


@dataclass
class ProblemFile:
    """A validated problem: a consistent presentation with named maps and elements."""

    presentation: PcpPresentation
    endomorphisms: dict[str, GroupMorphism] = field(default_factory=dict)
    elements: dict[str, PcpElement] = field(default_factory=dict)

    def endomorphism(self, name: str) -> GroupMorphism:
        """Return the endomorphism called ``name``."""
        try:
            return self.endomorphisms[name]
        except KeyError:
            raise _semantic(
                f"unknown endomorphism {name!r}", f"{CONF_ENDOMORPHISMS}.{name}"
            ) from None

    def pair(self, phi: str, psi: str) -> EndoPair:
        """Return the pair (phi, psi) named in the file."""
        return EndoPair(self.endomorphism(phi), self.endomorphism(psi))

    def element(self, text: str) -> PcpElement:
        """Return a named element, or parse an inline JSON word like [[1,1],[4,-1]]."""
        if text in self.elements:
            return self.elements[text]
        try:
            word = WORD_SCHEMA(json.loads(text))
        except json.JSONDecodeError:
            raise _semantic(
                "not an element name or a JSON word", f"{CONF_ELEMENTS}.{text}"
            ) from None
        except vol.Invalid as err:
            raise _semantic(err.msg, text) from None
        converted = _to_library_word(word, self.presentation.count, text)
        return self.presentation.collect(converted)

    def as_dict(self) -> dict[str, Any]:
        """Return the JSON structure of the problem, with 1-based generators."""
        presentation = self.presentation
        conjugates = [
            {CONF_GENERATOR: j + 1, CONF_BY: i + 1, CONF_WORD: _to_file_word(word)}
            for (j, i), word in sorted(presentation.conjugates.items())
        ]
        conjugates.extend(
            {CONF_GENERATOR: j + 1, CONF_BY: -(i + 1), CONF_WORD: _to_file_word(word)}
            for (j, i), word in sorted(presentation.inverse_conjugates.items())
        )
        return {
            CONF_PRESENTATION: {
                CONF_RELATIVE_ORDERS: list(presentation.relative_orders),
                CONF_POWERS: [
                    {CONF_GENERATOR: i + 1, CONF_WORD: _to_file_word(word)}
                    for i, word in sorted(presentation.powers.items())
                ],
                CONF_CONJUGATES: conjugates,
            },
            CONF_ENDOMORPHISMS: {
                name: [_to_file_word(image.to_word()) for image in morphism.images]
                for name, morphism in self.endomorphisms.items()
            },
            CONF_ELEMENTS: {
                name: _to_file_word(element.to_word())
                for name, element in self.elements.items()
            },
        }


def _build_presentation(data: dict[str, Any]) -> PcpPresentation:
    orders = data[CONF_RELATIVE_ORDERS]
    count = len(orders)
    powers: dict[int, Word] = {}
    conjugates: dict[tuple[int, int], Word] = {}
    inverse_conjugates: dict[tuple[int, int], Word] = {}

    for index, entry in enumerate(data[CONF_POWERS]):
        anchor = f"{CONF_PRESENTATION}.{CONF_POWERS}[{index}]"
        generator = entry[CONF_GENERATOR]
        if generator > count:
            raise _semantic(f"generator {generator} out of range 1..{count}", anchor)
        if generator - 1 in powers:
            raise _semantic(f"duplicate power relation for g{generator}", anchor)
        powers[generator - 1] = _to_library_word(
            entry[CONF_WORD], count, f"{anchor}.{CONF_WORD}"
        )

    for index, entry in enumerate(data[CONF_CONJUGATES]):
        anchor = f"{CONF_PRESENTATION}.{CONF_CONJUGATES}[{index}]"
        generator, by = entry[CONF_GENERATOR], entry[CONF_BY]
        if generator > count or abs(by) > count:
            raise _semantic(f"generator out of range 1..{count}", anchor)
        table = conjugates if by > 0 else inverse_conjugates
        key = (generator - 1, abs(by) - 1)
        if key in table:
            raise _semantic(f"duplicate conjugation relation for g{generator}", anchor)
        table[key] = _to_library_word(entry[CONF_WORD], count, f"{anchor}.{CONF_WORD}")

    try:
        return PcpPresentation(orders, powers, conjugates, inverse_conjugates)
    except PresentationError as err:
        raise _semantic(str(err), CONF_PRESENTATION) from err


def load_problem(data: Any, check_morphisms: bool = True) -> ProblemFile:
    """Validate a decoded problem structure."""
    try:
        data = PROBLEM_SCHEMA(data)
    except vol.Invalid as err:
        raise _semantic(err.msg, _json_path(err.path)) from err

    presentation = _build_presentation(data[CONF_PRESENTATION])
    count = presentation.count
    problem = ProblemFile(presentation)

    for name, images in data[CONF_ENDOMORPHISMS].items():
        anchor = f"{CONF_ENDOMORPHISMS}.{name}"
        if len(images) != count:
            raise _semantic(f"{len(images)} images for {count} generators", anchor)
        morphism = GroupMorphism.from_images(
            presentation,
            [
                presentation.collect(
                    _to_library_word(word, count, f"{anchor}[{index}]")
                )
                for index, word in enumerate(images)
            ],
        )
        if check_morphisms:
            try:
                morphism = morphism.checked()
            except MorphismError as err:
                raise _semantic(str(err), anchor) from err
        problem.endomorphisms[name] = morphism

    for name, word in data[CONF_ELEMENTS].items():
        problem.elements[name] = presentation.collect(
            _to_library_word(word, count, f"{CONF_ELEMENTS}.{name}")
        )

    _LOGGER.debug(
        "Loaded problem with %s generators, %s endomorphisms and %s elements",
        count,
        len(problem.endomorphisms),
        len(problem.elements),
    )
    return problem


def parse_text(text: str, check_morphisms: bool = True) -> ProblemFile:
    """Parse a problem from JSON text."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        anchor = f"{err.lineno}:{err.colno}"
        raise ProblemFileError(err.msg, KIND_SYNTAX, anchor) from err
    return load_problem(data, check_morphisms)


def parse(path: str | Path, check_morphisms: bool = True) -> ProblemFile:
    """Parse and validate a problem file."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise ProblemFileError(err.strerror or str(err), KIND_IO, str(path)) from err
    return parse_text(text, check_morphisms)


def serialize(problem: ProblemFile) -> str:
    """Return the problem as JSON text."""
    return json.dumps(problem.as_dict(), indent=2) + "\n"


def example_text() -> str:
    """Return the shipped worked example file."""
    return (resources.files("reidemeister") / "data" / EXAMPLE_FILE).read_text(
        encoding="utf-8"
    )


def load_example(check_morphisms: bool = True) -> ProblemFile:
    """Return the shipped worked example, parsed."""
    return parse_text(example_text(), check_morphisms)
