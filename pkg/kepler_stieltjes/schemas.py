import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

TWO_PI = 2.0 * math.pi


#
# Custom BaseModel
#
class KsBaseModel(BaseModel):
    model_config = ConfigDict(
        frozen=True,
        protected_namespaces=(),
        extra="forbid",  # Do not allow unknow field
        populate_by_name=True,
    )


#
# Enum
#


class Method(str, Enum):
    oracle = "oracle"
    series = "series"
    integral = "integral"
    weniger = "weniger"
    wynn = "wynn"


class TransformKind(str, Enum):
    wynn = "wynn-epsilon"
    weniger = "weniger-delta"


#
# Kepler core
#


class OrbitParams(KsBaseModel):
    eps: float = Field(description="Eccentricity, 0 <= eps <= 1")
    chi: float = Field(description="Aspect ratio sqrt(1 - eps^2)")
    lam: float = Field(alias="lambda", description="Decay exponent, <= 0; -inf for the circular orbit")

    @model_validator(mode="after")
    def check_geometry(self):
        if not 0.0 <= self.eps <= 1.0:
            raise ValueError(f"eps={self.eps} is outside [0, 1]")
        chi = math.sqrt((1.0 - self.eps) * (1.0 + self.eps))
        if not math.isclose(self.chi, chi, rel_tol=1e-12, abs_tol=1e-15):
            raise ValueError(f"chi={self.chi} differs from sqrt(1 - eps^2) = {chi}")
        return self

    @property
    def degenerate(self) -> bool:
        """The circular orbit: lambda = -inf and every Kapteyn term vanishes."""
        return self.eps == 0.0

    @property
    def parabolic(self) -> bool:
        return self.eps == 1.0

    @property
    def radius(self) -> float:
        """Convergence radius exp(-lambda) of the Kapteyn power series."""
        return math.exp(-self.lam) if not self.degenerate else math.inf


class MeanAnomaly(KsBaseModel):
    M: float = Field(description="Mean anomaly in radians, reduced to [0, 2pi)")

    @field_validator("M", mode="before")
    @classmethod
    def reduce(cls, v):
        v = math.fmod(float(v), TWO_PI)
        if v < 0.0:
            v += TWO_PI
        # fmod of a value just below a multiple of 2pi can round up to 2pi
        return 0.0 if v >= TWO_PI else v

    @property
    def folded(self) -> tuple[float, float]:
        """(M', sign) with M' in [0, pi] and S(eps; M) = sign * S(eps; M')."""
        if self.M > math.pi:
            return TWO_PI - self.M, -1.0
        return self.M, 1.0


class EccentricAnomaly(KsBaseModel):
    psi: float = Field(description="Eccentric anomaly in radians")


#
# Watson / integral representation
#


class PhasePoint(KsBaseModel):
    theta: float = Field(ge=0.0, le=math.pi)
    value: float


class ContinuationValue(KsBaseModel):
    z: complex
    value: complex
    quadrature_error: float = Field(ge=0.0)


class IntegralRepResult(KsBaseModel):
    value: float
    abs_error: float = Field(ge=0.0)
    panels_used: int
    ill_conditioned: bool = False


#
# CLI records
#


class SweepRecord(KsBaseModel):
    eps: float
    M: float
    method: Method
    order_or_tol: float
    value_re: float = Field(description="Estimate of the eccentric anomaly psi")
    value_im: float = Field(0.0, description="Real part of the complex S estimate (series-type methods)")
    ref_value: float
    rel_error: float = Field(ge=0.0)

    @classmethod
    def build(cls, eps, M, method, order_or_tol, value: complex, ref_value: float, companion: float = 0.0):
        value_re = float(value.real) if isinstance(value, complex) else float(value)
        rel_error = abs(value_re - ref_value) / max(abs(ref_value), 1e-300)
        return cls(
            eps=eps,
            M=M,
            method=method,
            order_or_tol=order_or_tol,
            value_re=value_re,
            value_im=companion,
            ref_value=ref_value,
            rel_error=rel_error,
        )
