"""Cycle map on products of elliptic curves over p-adic fields.

Every report is a plain dict mirroring the CLI's JSON output.
"""

from ._core import (
    Error,
    brute_hilbert_2adic,
    cycle_image,
    grade_units,
    hilbert_2adic,
    hilbert_orders,
    isogeny_grades,
    jumps,
    kummer_image,
    milnor,
    minimal_supersingular_e,
    parse_descriptor,
    symbol_order,
    verify,
    worked_example,
)

__all__ = [
    "Error",
    "brute_hilbert_2adic",
    "cycle_image",
    "grade_units",
    "hilbert_2adic",
    "hilbert_orders",
    "isogeny_grades",
    "jumps",
    "kummer_image",
    "milnor",
    "minimal_supersingular_e",
    "parse_descriptor",
    "symbol_order",
    "verify",
    "worked_example",
]
