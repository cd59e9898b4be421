"""Exception hierarchy.

Validation errors (bad user data) subclass :class:`ValueError`; numerical
failures subclass :class:`ArithmeticError`. The CLI maps the two families to
distinct exit codes.
"""


class GreentraceError(Exception):
    """Base class for every error raised by the package."""

    def details(self):
        return {}


class ValidationError(GreentraceError, ValueError):
    pass


class NumericalError(GreentraceError, ArithmeticError):
    pass


class GridTooCoarse(ValidationError):
    def __init__(self, n, minimum=8):
        self.n = n
        self.minimum = minimum
        super().__init__(f"grid has {n} samples, need a power of two >= {minimum}")

    def details(self):
        return {"n": self.n, "minimum": self.minimum}


class NonPositiveSample(ValidationError):
    def __init__(self, index, value):
        self.index = int(index)
        self.value = float(value)
        super().__init__(f"flux sample {self.index} is not positive ({self.value!r})")

    def details(self):
        return {"index": self.index, "value": self.value}


class NormalizationViolation(ValidationError):
    def __init__(self, integral, tol):
        self.integral = float(integral)
        self.tol = float(tol)
        super().__init__(
            f"integral of flux over the boundary is {self.integral!r}, expected 1 "
            f"(tolerance {self.tol:g}); pass renormalize=True to rescale"
        )

    def details(self):
        return {"integral": self.integral, "tol": self.tol}


class NonPositiveModulus(ValidationError):
    def __init__(self, index, value):
        self.index = int(index)
        self.value = float(value)
        super().__init__(f"boundary modulus sample {self.index} is not positive ({self.value!r})")

    def details(self):
        return {"index": self.index, "value": self.value}


class DegenerateDerivative(ValidationError):
    def __init__(self, theta, modulus, threshold=1e-12):
        self.theta = float(theta)
        self.modulus = float(modulus)
        self.threshold = threshold
        super().__init__(
            f"|f'(e^(i*theta))| = {self.modulus:.3e} < {threshold:g} at theta = {self.theta:.6f}"
        )

    def details(self):
        return {"theta": self.theta, "modulus": self.modulus, "threshold": self.threshold}


class SelfIntersectingBoundary(ValidationError):
    def __init__(self, reason="sampled boundary polygon is not simple"):
        super().__init__(reason)


class EvaluationTooCloseToBoundary(ValidationError):
    def __init__(self, radius, cap):
        self.radius = float(radius)
        self.cap = float(cap)
        super().__init__(
            f"|z| = {self.radius!r} exceeds {self.cap!r}; use the boundary evaluation path"
        )

    def details(self):
        return {"radius": self.radius, "cap": self.cap}


class UnwrapAmbiguity(NumericalError):
    def __init__(self, index, jump):
        self.index = int(index)
        self.jump = float(jump)
        super().__init__(
            f"tangent angle jumps by {self.jump:.3f} rad near sample {self.index}; increase N"
        )

    def details(self):
        return {"index": self.index, "jump": self.jump}


class ConvergenceFailure(NumericalError):
    def __init__(self, iterations, worst_residual):
        self.iterations = iterations
        self.worst_residual = float(worst_residual)
        super().__init__(
            f"root finding did not converge in {iterations} iterations "
            f"(worst residual {self.worst_residual:.3e})"
        )

    def details(self):
        return {"iterations": self.iterations, "worst_residual": self.worst_residual}


class SeriesNotConverged(NumericalError):
    def __init__(self, tail_bound, threshold):
        self.tail_bound = float(tail_bound)
        self.threshold = float(threshold)
        super().__init__(
            f"power series tail bound {self.tail_bound:.3e} exceeds {self.threshold:.3e} on |z| = 1"
        )

    def details(self):
        return {"tail_bound": self.tail_bound, "threshold": self.threshold}


class InconsistentAnchors(GreentraceError, ValueError):
    """The flux is not in the range of the forward operator for these anchors."""

    def __init__(self, residual, tol):
        self.residual = float(residual)
        self.tol = float(tol)
        super().__init__(
            f"consistency residual {self.residual:.6g} exceeds {self.tol:g}: "
            "|zeta_b - zeta_c| does not match the length implied by the flux"
        )

    def details(self):
        return {"consistency_residual": self.residual, "tol": self.tol}
