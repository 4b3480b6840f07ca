"""FastAPI service exposing the library operations.

The service keeps a process-wide cache of sieve tables so repeated sum
queries over the same range resieve nothing.  Domain errors map to HTTP
status codes: validation problems to 422, capacity limits to 413.
"""

from __future__ import annotations

import threading

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import bounds as bounds_mod
from . import counting, expsum, runlength
from .digits import PhaseParam, TruncationProfile
from .errors import CapacityError, SearchExhaustedError, ValidationError
from .growth import GrowthFunction
from .schemas import (AdmissibleRequest, AdmissibleResponse, AutomatonRequest,
                      AutomatonResponse, BoundsRequest, BoundsResponse,
                      CarryRequest, CountResponse, DoubleTruncRequest,
                      DoubleTruncResponse, FourierLemmaRequest,
                      FourierLemmaResponse, FourierRequest, FourierResponse,
                      MismatchRequest, PerturbRequest, RunlengthRequest,
                      RunlengthResponse, SumRequest, SumResponse,
                      TypeIIRequest, TypeIIResponse, TypeIRequest,
                      TypeIResponse)
from .sieve import ArithTables, build_tables

__all__ = ["app", "create_app"]

_tables_lock = threading.Lock()
_tables: ArithTables | None = None


def _get_tables(x: int) -> ArithTables:
    global _tables
    with _tables_lock:
        if _tables is None or _tables.limit < x:
            _tables = build_tables(x)
        return _tables


def _parse(alpha: str, p_spec: str, q: int) -> tuple[PhaseParam, GrowthFunction]:
    return PhaseParam.parse(alpha), GrowthFunction.parse(p_spec, q)


def create_app() -> FastAPI:
    app = FastAPI(title="gelfond", version="0.1.0",
                  description="Digit-block-counting exponential sums, "
                              "counting oracles and run-length statistics")

    @app.exception_handler(ValidationError)
    async def _validation(request: Request, exc: ValidationError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(CapacityError)
    async def _capacity(request: Request, exc: CapacityError):
        return JSONResponse(status_code=413, content={"detail": str(exc)})

    @app.exception_handler(SearchExhaustedError)
    async def _exhausted(request: Request, exc: SearchExhaustedError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/sum", response_model=SumResponse)
    def sum_endpoint(req: SumRequest) -> SumResponse:
        alpha, P = _parse(req.alpha, req.P, req.q)
        query = expsum.SumQuery(weight=req.weight, x=req.x, alpha=alpha,
                                P=P, q=req.q, theta=req.theta,
                                accumulation=req.accumulation)
        tables = _get_tables(req.x) if req.weight != "unit" else None
        report = expsum.weighted_sum(query, tables, threads=req.threads)
        try:
            rhs = bounds_mod.theorem_rhs(req.x, req.q, alpha, P).rhs_over_x
        except ValidationError:
            rhs = None
        return SumResponse(re=report.value.real, im=report.value.imag,
                           modulus=report.modulus,
                           normalized=report.normalized,
                           term_count=report.term_count,
                           seconds=report.elapsed, rhs_over_x=rhs,
                           weight=req.weight, x=req.x, theta=req.theta,
                           alpha=alpha.spec(), P=P.spec(), q=req.q)

    @app.post("/type1", response_model=TypeIResponse)
    def type1(req: TypeIRequest) -> TypeIResponse:
        alpha, P = _parse(req.alpha, req.P, req.q)
        out = expsum.type_I_sum(req.M, req.N, (req.lo, req.hi), req.theta,
                                alpha, P, req.q)
        return TypeIResponse(**out)

    @app.post("/type2", response_model=TypeIIResponse)
    def type2(req: TypeIIRequest) -> TypeIIResponse:
        alpha, P = _parse(req.alpha, req.P, req.q)
        if req.a is not None and req.b is not None:
            a, b = req.a, req.b
        else:
            rng = np.random.default_rng(req.coeff_seed)
            a = rng.choice([-1.0, 1.0],
                           size=req.M - req.M // req.q).tolist()
            b = rng.choice([-1.0, 1.0],
                           size=req.N - req.N // req.q).tolist()
        out = expsum.type_II_sum(req.M, req.N, a, b, req.theta, alpha, P,
                                 req.q)
        value = out["value"]
        return TypeIIResponse(re=value.real, im=value.imag,
                              modulus=abs(value), M=req.M, N=req.N,
                              balanced=out["balanced"])

    @app.post("/fourier", response_model=FourierResponse)
    def fourier(req: FourierRequest) -> FourierResponse:
        alpha, P = _parse(req.alpha, req.P, req.q)
        table = expsum.fourier_table(req.kappa, req.lam, req.k, alpha, P,
                                     req.q)
        masses = [{"t": t, "mass": table.parseval_mass(t)}
                  for t in req.offsets]
        return FourierResponse(kappa=req.kappa, lam=req.lam, k=req.k,
                               q=req.q, masses=masses,
                               max_abs_entry=float(
                                   np.max(np.abs(table.entries))))

    @app.post("/fourier/lemma", response_model=FourierLemmaResponse)
    def fourier_lemma(req: FourierLemmaRequest) -> FourierLemmaResponse:
        alpha, P = _parse(req.alpha, req.P, req.q)
        grid = [j / 2**req.grid_bits for j in range(2**req.grid_bits)]
        if req.random_offsets:
            rng = np.random.default_rng(req.seed)
            grid += rng.random(req.random_offsets).tolist()
        out = expsum.fourier_lemma_check(req.l, req.kappa, grid, alpha, P,
                                         req.q)
        return FourierLemmaResponse(**out)

    @app.post("/fourier/doubletrunc", response_model=DoubleTruncResponse)
    def fourier_doubletrunc(req: DoubleTruncRequest) -> DoubleTruncResponse:
        alpha, P = _parse(req.alpha, req.P, req.q)
        profile = TruncationProfile(mu0=req.mu0, mu1=req.mu1, mu2=req.mu2)
        out = expsum.double_trunc_fourier_mass(profile, req.lam, req.k,
                                               alpha, P, req.q, req.t)
        return DoubleTruncResponse(**out)

    def _count_response(report: counting.CountReport,
                        agreement: bool | None = None) -> CountResponse:
        return CountResponse(parameters=report.parameters,
                             count=report.count,
                             bound_shape=report.bound_shape,
                             ratio=report.ratio, extra=report.extra,
                             agreement=agreement)

    @app.post("/carry", response_model=CountResponse)
    def carry(req: CarryRequest) -> CountResponse:
        P = GrowthFunction.parse(req.P, req.q)
        report = counting.carry_bad_count(req.lam, req.kappa, req.rho, P,
                                          req.q, req.enforce_hypotheses)
        agreement = None
        if req.both_impls:
            other = counting.carry_bad_count_direct(
                req.lam, req.kappa, req.rho, P, req.q,
                req.enforce_hypotheses)
            agreement = other.count == report.count
        return _count_response(report, agreement)

    @app.post("/perturb", response_model=CountResponse)
    def perturb(req: PerturbRequest) -> CountResponse:
        report = counting.size_perturbation_count(req.mu, req.nu, req.rho,
                                                  req.q,
                                                  req.enforce_hypotheses)
        agreement = None
        if req.both_impls:
            other = counting.size_perturbation_count_direct(
                req.mu, req.nu, req.rho, req.q, req.enforce_hypotheses)
            agreement = other.count == report.count
        return _count_response(report, agreement)

    @app.post("/mismatch", response_model=CountResponse)
    def mismatch(req: MismatchRequest) -> CountResponse:
        alpha, P = _parse(req.alpha, req.P, req.q)
        report = counting.truncation_mismatch_count(
            req.mu, req.nu, req.rho, alpha, P, req.q,
            sample_budget=req.sample_budget, seed=req.seed,
            enforce_hypotheses=req.enforce_hypotheses)
        return _count_response(report)

    @app.post("/automaton", response_model=AutomatonResponse)
    def automaton(req: AutomatonRequest) -> AutomatonResponse:
        P = GrowthFunction.parse(req.P, req.q)
        out = counting.distinguishing_pair(req.k_states, P, req.max_m)
        return AutomatonResponse(**out)

    @app.post("/runlength", response_model=RunlengthResponse)
    def runlength_endpoint(req: RunlengthRequest) -> RunlengthResponse:
        if req.mode == "exact":
            if req.k is None:
                raise ValidationError("exact mode needs k")
            pc = runlength.exact_parity_counts(req.N, req.k)
            result = {"E": pc.even_count, "I": pc.odd_count,
                      "E_fraction": pc.even_count / (1 << req.N)}
        elif req.mode == "proposition":
            if req.A is None:
                raise ValidationError("proposition mode needs A")
            result = runlength.proposition_check(req.N, req.A, req.slack)
        elif req.mode == "word":
            profile = runlength.random_word(req.N, req.seed)
            result = {"runs": [list(r) for r in profile.runs],
                      "run_count": profile.run_count,
                      "max_run": profile.max_run,
                      "word": profile.word()}
        elif req.mode == "maxrun":
            if req.A is None:
                raise ValidationError("maxrun mode needs A")
            result = runlength.maxrun_tail(req.N, req.A, req.samples,
                                           req.seed, threads=req.threads)
        else:  # weighted
            if req.k is None or req.weight is None:
                raise ValidationError("weighted mode needs k and weight")
            if req.N > 26:
                raise CapacityError("weighted mode limited to N <= 26")
            n_top = 1 << req.N
            if req.weight == "unit":
                f = np.ones(n_top)
            else:
                tables = _get_tables(n_top)
                if req.weight == "moebius":
                    f = tables.moebius[:n_top].astype(np.float64)
                else:
                    f = tables.mangoldt_values(np.arange(n_top))
                f[0] = 0.0
            result = runlength.weighted_parity_sum(f, req.N, req.k, req.A)
        return RunlengthResponse(mode=req.mode, N=req.N, result=result)

    @app.post("/admissible", response_model=AdmissibleResponse)
    def admissible(req: AdmissibleRequest) -> AdmissibleResponse:
        alpha, P = _parse(req.alpha, req.P, req.q)
        report = bounds_mod.admissible(P, req.q, alpha, req.x_max,
                                       req.growth_c)
        return AdmissibleResponse(**report.__dict__)

    @app.post("/bounds", response_model=BoundsResponse)
    def bounds_endpoint(req: BoundsRequest) -> BoundsResponse:
        alpha, P = _parse(req.alpha, req.P, req.q)
        report = bounds_mod.theorem_rhs(req.x, req.q, alpha, P)
        return BoundsResponse(x=report.x, q=report.q, alpha=report.alpha,
                              gamma_value=report.gamma_value,
                              rhs=report.rhs,
                              rhs_over_x=report.rhs_over_x,
                              c1=bounds_mod.c1(req.q),
                              norm=bounds_mod.norm_to_int(alpha))

    return app


app = create_app()
