from fastapi import APIRouter, Query

from api.schemas.analysis import (
    DecomposeResponse,
    LiftResponse,
    NormRequest,
    NormResponse,
    ProjectRequest,
    ProjectResponse,
    ReduceResponse,
)
from remez_lab.data.poly_io import PolyDocument, from_document, to_document
from remez_lab.measures.moment_lift import build_moment_system, lift_measure
from remez_lab.multipliers.certificate import certified_constant, instance_bound, projection_bound
from remez_lab.multipliers.inseparable import bounded_projection, inseparable_decompose
from remez_lab.multipliers.pseudoprojection import pseudoproject_iter
from remez_lab.multipliers.reduction import reduce_at_maximizer
from remez_lab.norms.norm_oracle import coeff_l1, grid_sup_norm, torus_sup_lower

router = APIRouter()


def _complex(z: complex) -> dict:
    return {"re": z.real, "im": z.imag}


@router.post("/norm", response_model=NormResponse)
async def norm(request: NormRequest):
    f = from_document(request.poly, source="request.poly")
    M = request.grid or f.K
    response = {"grid_order": M, "grid_norm": grid_sup_norm(f, M), "coeff_l1": coeff_l1(f)}
    if request.torus:
        report = torus_sup_lower(
            f, restarts=request.restarts, samples_per_axis=request.samples_per_axis, seed=request.seed
        )
        response.update(torus_lower=report.torus_lower, torus_upper=report.torus_upper)
    return response


@router.post("/decompose", response_model=DecomposeResponse)
async def decompose(poly: PolyDocument):
    f = from_document(poly, source="body")
    return {
        "classes": [
            {
                "support_size": cls.support_size,
                "tau": cls.tau.to_dict(),
                "tau_value": _complex(cls.tau_value),
                "zeta": _complex(cls.zeta),
                "members": [list(alpha) for alpha in cls.members],
                "sigma_hat": cls.sigma_hat,
                "part": to_document(cls.part),
            }
            for cls in inseparable_decompose(f)
        ]
    }


@router.post("/project", response_model=ProjectResponse)
async def project(request: ProjectRequest):
    f = from_document(request.poly, source="request.poly")
    bound = None
    if request.S is not None:
        part = bounded_projection(f, request.S)
        operation = "bounded_projection"
        if f.K >= 3 and not part.is_zero:
            bound = projection_bound(f, request.S)
    else:
        part = pseudoproject_iter(f, request.iterate)
        operation = "pseudoproject"
    return {
        "operation": operation,
        "part": to_document(part),
        "norm_f": grid_sup_norm(f, f.K),
        "norm_part": grid_sup_norm(part, f.K),
        "class_bound": bound,
    }


@router.post("/reduce", response_model=ReduceResponse)
async def reduce(poly: PolyDocument):
    f = from_document(poly, source="body")
    reduction = reduce_at_maximizer(f)
    response = reduction.to_dict()
    response["g"] = to_document(reduction.g)
    if f.K >= 3:
        response["instance_bound"] = instance_bound(f)
    return response


@router.get("/certify")
async def certify(d: int = Query(..., ge=0, le=6), K: int = Query(..., ge=3, le=7)):
    return certified_constant(d, K).to_dict()


@router.get("/lift", response_model=LiftResponse)
async def lift(K: int = Query(..., ge=3, le=12), z_re: float = 0.0, z_im: float = 0.0):
    system = build_moment_system(K)
    measure = lift_measure(system, complex(z_re, z_im))
    return {
        "K": K,
        "z": _complex(measure.z),
        "eps_star": system.eps_star,
        "probs": measure.probs.tolist(),
        "mass_residual": measure.total_mass_residual(),
        "moment_residual": measure.moment_residual(),
    }
