"""Python access to the linefol C++ core. Polynomials and scalars are passed
as strings in the same grammar the command line uses."""

import json as _json

from ._linefol import (
    LinefolError,
    build_solution,
    classify,
    decompose,
    eikonal_csq,
    gordan_noether,
    hessian_det,
    line_field_mu,
    parse,
    riccati_residual,
    run_cli,
)

__all__ = [
    "LinefolError",
    "build_solution",
    "classify",
    "cli",
    "decompose",
    "eikonal_csq",
    "gordan_noether",
    "hessian_det",
    "line_field_mu",
    "parse",
    "riccati_residual",
    "run_cli",
]


def cli(*args):
    """Runs a subcommand and returns (exit code, parsed report or None)."""
    code, out, _err = run_cli([str(a) for a in args])
    return code, (_json.loads(out) if out else None)
