"""FastAPI service exposing the verification campaigns.

Every endpoint wraps one campaign runner and returns a uniform
:class:`ReportResponse`.  Outcomes: "ok", "violation" (some inequality row
failed), "cap" (an enumeration cap was exceeded).  Malformed inputs are
HTTP 400/422.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import campaigns
from ..errors import CapExceeded, ParseError
from .models import (
    BallRequest,
    ChiRequest,
    CombingRequest,
    DehnRequest,
    DomfunRequest,
    KernelEstRequest,
    NeumannRequest,
    OpnormRequest,
    PowerRequest,
    ReportResponse,
    RoeRequest,
    UfNormRequest,
    VankampenRequest,
    YoungRequest,
)

app = FastAPI(title="qlab", version="0.1.0")


def _run(builder, *args, **kwargs) -> ReportResponse:
    try:
        result = builder(*args, **kwargs)
    except CapExceeded as exc:
        return ReportResponse(
            outcome="cap", violations=0,
            meta={"error": str(exc)}, columns=[], key_columns=[], rows=[],
        )
    except ParseError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    except ValueError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc
    return ReportResponse(
        outcome=result.outcome,
        violations=result.violations,
        meta=result.meta,
        columns=result.columns,
        key_columns=result.key_columns,
        rows=result.rows,
    )


@app.get("/v1/health")
def health():
    return {"status": "ok"}


@app.post("/v1/ball", response_model=ReportResponse)
def ball(req: BallRequest):
    return _run(campaigns.ball_report, req.group, req.radius)


@app.post("/v1/opnorm", response_model=ReportResponse)
def opnorm(req: OpnormRequest):
    return _run(campaigns.opnorm_report, req.kernel.to_data(), req.p,
                req.window_radius)


@app.post("/v1/domfun", response_model=ReportResponse)
def domfun(req: DomfunRequest):
    window = req.window_radius
    if window is None:
        # smallest window honouring the profile precondition
        import math

        from ..kernels import kernel_from_dict

        kernel = kernel_from_dict(req.kernel.to_data())
        window = math.ceil(max(req.radii)) + kernel.propagation
    return _run(campaigns.domfun_report, req.kernel.to_data(), req.p,
                req.radii, window, req.seed, req.vectors)


@app.post("/v1/verify-roe", response_model=ReportResponse)
def verify_roe(req: RoeRequest):
    return _run(campaigns.roe_campaign, req.group, req.trials, req.prop_max,
                req.p_list, req.radii, req.seed)


@app.post("/v1/verify-power", response_model=ReportResponse)
def verify_power(req: PowerRequest):
    return _run(campaigns.power_campaign, req.group, req.trials, req.prop_max,
                req.n_list, req.radii, req.seed, req.p)


@app.post("/v1/neumann", response_model=ReportResponse)
def neumann(req: NeumannRequest):
    kernel_data = req.kernel.to_data() if req.kernel is not None else None
    return _run(campaigns.neumann_report, req.group, req.t, req.terms, req.l,
                req.radii, kernel_data)


@app.post("/v1/kernel-est", response_model=ReportResponse)
def kernel_est(req: KernelEstRequest):
    return _run(campaigns.kernel_estimates_campaign, req.group, req.trials,
                req.prop_max, req.p_list, req.n_list, req.seed)


@app.post("/v1/chi", response_model=ReportResponse)
def chi(req: ChiRequest):
    return _run(campaigns.chi_campaign, req.group, req.trials, req.degrees,
                req.seed, req.prop_max)


@app.post("/v1/young", response_model=ReportResponse)
def young(req: YoungRequest):
    return _run(campaigns.young_campaign, req.group, req.trials, req.n_list,
                req.k_list, req.seed, req.prop_max)


@app.post("/v1/uf-norm", response_model=ReportResponse)
def uf_norm(req: UfNormRequest):
    return _run(campaigns.ufnorm_report, req.chain.to_data(), req.n_list)


@app.post("/v1/dehn", response_model=ReportResponse)
def dehn(req: DehnRequest):
    return _run(campaigns.dehn_report, req.order, req.k_max, req.grid,
                req.maximal_simplices, req.coeff_bound)


@app.post("/v1/vankampen", response_model=ReportResponse)
def vankampen(req: VankampenRequest):
    return _run(campaigns.vankampen_report, req.presentation, req.word,
                req.max_area)


@app.post("/v1/combing", response_model=ReportResponse)
def combing(req: CombingRequest):
    return _run(campaigns.combing_report, req.group, req.scheme, req.radius)
