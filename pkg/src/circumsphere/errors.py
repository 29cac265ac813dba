"""Exception types raised by the circumsphere routines."""


class GeometryError(ValueError):
    """Base class for geometric failures on otherwise well-formed input."""


class DegenerateSimplex(GeometryError):
    """The vertices do not span the required flat (coplanar, collinear...).

    ``measure`` carries the quantity that failed the threshold test, usually
    the scale-free Gram ratio of the edge vectors.
    """

    def __init__(self, measure, message=None):
        self.measure = float(measure)
        super().__init__(message or f"degenerate simplex (measure={self.measure:.3e})")


class DegenerateTriangle(DegenerateSimplex):
    """Collinear or near-collinear triangle; ``measure`` is |a x b|^2 / (|a|^2 |b|^2)."""

    def __init__(self, measure, message=None):
        super().__init__(measure, message or f"degenerate triangle (|a x b|^2 ratio={float(measure):.3e})")


class SingularSystem(GeometryError):
    """Pivot fell below the singularity threshold during elimination."""

    def __init__(self, pivot, threshold=None):
        self.pivot = float(pivot)
        self.threshold = threshold
        msg = f"singular system (pivot={self.pivot:.3e}"
        if threshold is not None:
            msg += f", threshold={threshold:.3e}"
        super().__init__(msg + ")")


class DimensionError(ValueError):
    """Inputs have the wrong shape or dimension for the requested operation."""
