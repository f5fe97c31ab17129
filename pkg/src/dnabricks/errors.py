"""Exception types raised across the toolkit.

Every error the library raises deliberately derives from DnaBricksError so
front ends (CLI, HTTP service) can map "user input was bad" separately from
genuine I/O or programming failures.
"""


class DnaBricksError(Exception):
    """Base class for all toolkit errors."""


class DimensionError(DnaBricksError, ValueError):
    """Canvas dimensions violate a construction rule."""


class CoordinateError(DnaBricksError, ValueError):
    """A voxel coordinate is negative or outside the canvas grid."""


class BoxError(DnaBricksError, ValueError):
    """A box selection has inverted corners."""


class SpecMismatchError(DnaBricksError, ValueError):
    """Two objects built against different canvas specs were combined."""


class UnknownBrickError(DnaBricksError, ValueError):
    """A brick was passed that does not belong to the given layout."""


class SequenceError(DnaBricksError, ValueError):
    """A sequence has the wrong length or characters outside {A,C,G,T}."""


class InfeasibleConfigError(DnaBricksError, ValueError):
    """Constraint configuration admits no valid 8-mer at all."""


class MissingDomainError(DnaBricksError, ValueError):
    """A strand plan references a domain absent from the assignment."""


class CostError(DnaBricksError, ValueError):
    """Cost estimation received a negative rate or nucleotide count."""


class ProjectFormatError(DnaBricksError, ValueError):
    """A project document is malformed or structurally invalid."""


class UnsupportedVersionError(ProjectFormatError):
    """A project document declares a version this build cannot read."""


class ChecksumError(ProjectFormatError):
    """A cached sequence block does not match its integrity checksum."""
