"""Exact chaos-expansion algebra with Cameron-Martin / Girsanov verifiers.

Thin re-export of the compiled extension. Verifier functions return plain
dicts (the same report JSON the CLI emits); rationals cross the boundary as
strings like "3/2" to stay exact.
"""

from wcl._wcl import (
    AnticipatingFieldError,
    ChaosElement,
    ParseError,
    check_nilpotent,
    derive,
    evaluate,
    exp_derive,
    expectation,
    format_element,
    gen_instance,
    inner_product,
    mc_verify_cm,
    mc_verify_mg,
    parse_expression,
    skorokhod,
    verify_adjoint,
    verify_cm,
    verify_density,
    verify_ln,
    verify_mg,
)

__all__ = [
    "AnticipatingFieldError",
    "ChaosElement",
    "ParseError",
    "check_nilpotent",
    "derive",
    "evaluate",
    "exp_derive",
    "expectation",
    "format_element",
    "gen_instance",
    "inner_product",
    "mc_verify_cm",
    "mc_verify_mg",
    "parse_expression",
    "skorokhod",
    "verify_adjoint",
    "verify_cm",
    "verify_density",
    "verify_ln",
    "verify_mg",
]
