"""Provide common test helpers."""

import os

from reidemeister.problem_file import parse, parse_text


def fixture_path(filename):
    """Return the path of a fixture."""
    return os.path.join(os.path.dirname(__file__), "fixtures", filename)


def load_fixture(filename):
    """Load a fixture."""
    with open(fixture_path(filename), encoding="utf-8") as fptr:
        return fptr.read()


def load_problem(filename, check_morphisms=True):
    """Load a fixture as a validated problem."""
    return parse(fixture_path(filename), check_morphisms=check_morphisms)


def load_problem_text(text, check_morphisms=True):
    """Parse problem text."""
    return parse_text(text, check_morphisms=check_morphisms)
