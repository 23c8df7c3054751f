"""Provide common pytest fixtures."""

import pytest

from reidemeister.oracle import named_presentation
from reidemeister.problem_file import load_example

from .common import load_problem


@pytest.fixture(name="example")
def example_fixture():
    """Return the shipped worked example problem."""
    return load_example()


@pytest.fixture(name="example_pair")
def example_pair_fixture(example):
    """Return the worked example pair (phi, psi)."""
    return example.pair("phi", "psi")


@pytest.fixture(name="s3")
def s3_fixture():
    """Return the S3 problem."""
    return load_problem("s3.json")


@pytest.fixture(name="z4")
def z4_fixture():
    """Return the cyclic group of order 4."""
    return load_problem("z4.json")


@pytest.fixture(name="integers")
def integers_fixture():
    """Return the infinite cyclic group."""
    return load_problem("integers.json")


@pytest.fixture(name="heisenberg")
def heisenberg_fixture():
    """Return the integral Heisenberg group."""
    return load_problem("heisenberg.json")


@pytest.fixture(name="s4")
def s4_fixture():
    """Return S4 from the catalogue."""
    return named_presentation("S4")
