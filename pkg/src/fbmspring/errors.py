"""Exception types shared across the package."""


class FbmSpringError(Exception):
    """Base class for all package-specific errors."""


class NotPositiveDefinite(FbmSpringError):
    """A Cholesky pivot fell at or below the positive-definiteness tolerance.

    ``pivot_index`` is the 0-based row at which factorization broke down.
    """

    def __init__(self, pivot_index: int, pivot_value: float):
        self.pivot_index = pivot_index
        self.pivot_value = pivot_value
        super().__init__(
            f"matrix is not positive definite: pivot {pivot_index} = {pivot_value:.6e}"
        )


class NoConvergence(FbmSpringError):
    """The symmetric eigensolver exhausted its iteration budget."""

    def __init__(self, sweeps: int):
        self.sweeps = sweeps
        super().__init__(f"eigensolver failed to converge within {sweeps} sweeps")


class NotSymmetricCirculant(FbmSpringError):
    """First row violates c[k] == c[N-k]; real eigenvalues are not guaranteed."""


class NoSignChange(FbmSpringError):
    """Bisection bracket endpoints do not have strictly opposite signs."""


class MaxIterations(FbmSpringError):
    """Bisection could not reach the requested tolerance within the budget."""

    def __init__(self, iterations: int, width: float):
        self.iterations = iterations
        self.width = width
        super().__init__(
            f"bracket width {width:.3e} after {iterations} iterations exceeds tolerance"
        )


class IndefiniteCovariance(FbmSpringError):
    """Requested sampling from a matrix with an eigenvalue below -tol_pd."""

    def __init__(self, min_eigenvalue: float):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(
            f"covariance is indefinite: smallest eigenvalue {min_eigenvalue:.6e}"
        )


class QuadratureFailure(FbmSpringError):
    """Adaptive quadrature did not reach the requested absolute tolerance."""

    def __init__(self, estimate: float, error: float, tol: float):
        self.estimate = estimate
        self.error = error
        self.tol = tol
        super().__init__(
            f"quadrature error estimate {error:.3e} exceeds tolerance {tol:.3e}"
        )


class DivergentSeries(FbmSpringError):
    """Zeta-type series evaluated at an exponent where it diverges (s <= 1)."""


class NonpositiveG1(FbmSpringError):
    """Stability bounds are stated relative to a positive nearest-neighbor coupling."""


class InvalidExponent(FbmSpringError):
    """Power-law decay too slow for the size-independent admissibility guarantee."""
