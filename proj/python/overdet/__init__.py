"""Exact algebra for overdetermined constant-coefficient systems, plus weight-function numerics."""

import json as _json

from ._overdet import (
    InputError,
    RangeError,
    ResourceError,
    Weight,
    __version__,
    factor,
    ideal_basis,
    ideal_member,
    puiseux,
    solve,
    supporting_function,
)
from ._overdet import run as _run


def run(subcommand, document, **options):
    """Run a CLI subcommand on a document (dict or JSON text); returns (report, exit_code)."""
    text = document if isinstance(document, str) else _json.dumps(document)
    report, code = _run(subcommand, text, **options)
    return _json.loads(report), code


__all__ = [
    "InputError",
    "RangeError",
    "ResourceError",
    "Weight",
    "__version__",
    "factor",
    "ideal_basis",
    "ideal_member",
    "puiseux",
    "run",
    "solve",
    "supporting_function",
]
