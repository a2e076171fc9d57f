from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from kepler_stieltjes.quadrature import QuadratureResult


class KeplerStieltjesError(Exception):
    """Base error. The CLI turns it into a process exit code.

    Example usage:

    except KeplerStieltjesError as e:
        sys.exit(e.to_exit_code())

    """

    exit_code = 1

    def __init__(self, message="Kepler-Stieltjes error occurred"):
        self.message = message
        super().__init__(self.message)

    def to_exit_code(self) -> int:
        return self.exit_code


class DomainError(KeplerStieltjesError, ValueError):
    exit_code = 2

    def __init__(self, name: str, value, expected: str):
        self.name = name
        self.value = value
        super().__init__(f"{name}={value!r} is outside the domain: expected {expected}")


class CutError(DomainError):
    def __init__(self, z: complex, cut_start: float):
        self.z = z
        self.cut_start = cut_start
        super().__init__("z", z, f"z off the real ray [{cut_start:.17g}, +inf)")


class ConvergenceError(KeplerStieltjesError):
    exit_code = 3

    def __init__(self, message: str, last_residual: float, iterations: int):
        self.last_residual = last_residual
        self.iterations = iterations
        super().__init__(f"{message} (iterations={iterations}, last residual={last_residual:.3e})")


class AccuracyError(KeplerStieltjesError):
    exit_code = 3

    def __init__(self, message: str, estimate: complex, abs_error: float):
        self.estimate = estimate
        self.abs_error = abs_error
        super().__init__(f"{message}: estimate={estimate} abs_error={abs_error:.3e}")

    @classmethod
    def from_quadrature(cls, result: "QuadratureResult", what: str = "quadrature"):
        return cls(
            f"{what} did not reach tolerance with {result.panels_used} panels",
            estimate=result.value,
            abs_error=result.abs_error_estimate,
        )


class RangeError(KeplerStieltjesError):
    exit_code = 2

    def __init__(self, m: int, log_magnitude: float):
        self.m = m
        self.log_magnitude = log_magnitude
        super().__init__(f"term m={m} overflows double precision (log|a_m| = {log_magnitude:.1f})")


class InsufficientDataError(KeplerStieltjesError):
    exit_code = 1


class OutputError(KeplerStieltjesError):
    exit_code = 4

    def __init__(self, path, reason):
        self.path = path
        super().__init__(f"cannot write {path}: {reason}")


class InternalError(KeplerStieltjesError):
    exit_code = 1


class IllConditionedWarning(UserWarning):
    """Raised through warnings.warn near the (eps, M) = (1, 0) corner."""
