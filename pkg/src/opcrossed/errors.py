"""Exception types shared across the package.

InputError maps to CLI exit code 2, StructureError to exit code 1.
"""


class InputError(Exception):
    """Bad user-supplied data: dimensions, references, parse problems."""


class StructureError(Exception):
    """An internal invariant failed (d*d != 0, ideal check, sign fault, ...)."""
