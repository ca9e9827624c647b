from pydantic import BaseModel, Field
from typing import Dict, List, Optional

from remez_lab.data.poly_io import PolyDocument


class ComplexValue(BaseModel):
    re: float
    im: float = 0.0


class NormRequest(BaseModel):
    poly: PolyDocument
    grid: Optional[int] = Field(None, ge=1, description="Grid order M, defaults to K")
    torus: bool = False
    restarts: int = Field(8, ge=0, le=64)
    samples_per_axis: int = Field(512, ge=1, le=8192)
    seed: int = Field(0, ge=0)


class NormResponse(BaseModel):
    grid_order: int
    grid_norm: float
    coeff_l1: float
    torus_lower: Optional[float] = None
    torus_upper: Optional[float] = None


class ProjectRequest(BaseModel):
    poly: PolyDocument
    S: Optional[List[List[int]]] = None
    iterate: int = Field(1, ge=1, le=32)


class ProjectResponse(BaseModel):
    operation: str
    part: PolyDocument
    norm_f: float
    norm_part: float
    class_bound: Optional[float] = None


class CycIntPayload(BaseModel):
    order: int
    coeffs: List[int]


class ClassPayload(BaseModel):
    support_size: int
    tau: CycIntPayload
    tau_value: ComplexValue
    zeta: ComplexValue
    members: List[List[int]]
    sigma_hat: Dict[int, int]
    part: PolyDocument


class DecomposeResponse(BaseModel):
    classes: List[ClassPayload]


class ReduceResponse(BaseModel):
    m: int
    S: List[int]
    maximizer_exponents: List[int]
    w_exponents: List[int]
    y_star: List[ComplexValue]
    norm_2k: float
    g_at_sqrt_omega: float
    g: PolyDocument
    instance_bound: Optional[float] = None


class LiftResponse(BaseModel):
    K: int
    z: ComplexValue
    eps_star: float
    probs: List[float]
    mass_residual: float
    moment_residual: float
