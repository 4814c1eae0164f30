"""Exceptions shared across the package.

The CLI maps these onto exit codes: input problems exit 2, infeasible
counting strategies (cost/volume caps, no applicable strategy) exit 3.
"""


class EhrstarError(Exception):
    """Base class for all package errors."""


class InputError(EhrstarError):
    """Malformed or inconsistent user input (files, vectors, parameters)."""


class DegenerateSimplexError(EhrstarError):
    """Vertex set does not span the expected dimension."""


class NotFullDimensionalError(EhrstarError):
    """Ehrhart operations require affine dimension == ambient dimension."""


class CostGuardExceeded(EhrstarError):
    """Estimated enumeration work is above the configured cap."""


class VolumeCapExceeded(EhrstarError):
    """Normalized volume exceeds the cap for parallelepiped enumeration."""


class NoCountingStrategy(EhrstarError):
    """No exact counting strategy applies to this polytope representation."""
