"""Constants for reidemeister."""

from __future__ import annotations

import math
from typing import Final

VERSION = "1.0.0"

# Reidemeister numbers and relative orders
INFINITY: Final = math.inf
INFINITE_ORDER: Final = 0

# Solver defaults
DEFAULT_MAX_ENUM: Final = 100_000
DEFAULT_THREADS: Final = 1

# Exit codes
EXIT_OK: Final = 0
EXIT_MISMATCH: Final = 1
EXIT_INVALID_INPUT: Final = 2
EXIT_PRECONDITION: Final = 3
EXIT_IO_ERROR: Final = 4
EXIT_SYNTAX_ERROR: Final = 5
EXIT_INTERNAL_ERROR: Final = 6

# Problem file keys
CONF_PRESENTATION = "presentation"
CONF_RELATIVE_ORDERS = "relative_orders"
CONF_POWERS = "powers"
CONF_CONJUGATES = "conjugates"
CONF_GENERATOR = "generator"
CONF_BY = "by"
CONF_WORD = "word"
CONF_ENDOMORPHISMS = "endomorphisms"
CONF_ELEMENTS = "elements"

# Machine-readable output keys
ATTR_STATUS = "status"
ATTR_WITNESS = "witness"
ATTR_WITNESS_TEXT = "witness_text"
ATTR_REPRESENTATIVES = "representatives"
ATTR_NUMBER = "number"
ATTR_ERROR = "error"
ATTR_LEVEL = "level"
ATTR_CASES = "cases"
ATTR_MISMATCHES = "mismatches"

STATUS_CONJUGATE = "conjugate"
STATUS_NOT_CONJUGATE = "not-conjugate"
STATUS_FINITE = "finite"
STATUS_INFINITE = "infinite"
STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_ERROR = "error"

# Shipped example
EXAMPLE_FILE = "pcp_example_5.json"
EXAMPLE_PHI = "phi"
EXAMPLE_PSI = "psi"
EXAMPLE_IDENTITY = "id"
