"""HTTP service exposing the library; the CLI is a thin client of this.

All handlers are stateless wrappers: parse, call the library, shape the
response.  Domain errors surface as 422 with the message intact.
"""

from __future__ import annotations

from contextlib import contextmanager

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..certificates import (
    admissible_size_range,
    energy_size_lower_bounds,
    evaluate_certificate,
    feasible_size_pairs,
    ratio_size_bounds,
    unique_rep_lower_bound,
)
from ..charsums import (
    char_sum,
    ck_scan,
    horizontal_sweep,
    semicircle_discrepancy,
    shifted_samples,
    vertical_histogram,
)
from ..errors import QrsumsError
from ..field import FpSet
from ..panels import check_random_pairs, check_residue_instances
from ..search import RangeRow, SearchConfig, search, verify_conjecture_range
from ..sumsets import (
    build_profile,
    check_doubling_bound,
    check_energy_bound,
    check_holder,
    check_moment_bound,
    moment,
    profile_dict,
)
from . import schemas


@contextmanager
def _domain_errors():
    try:
        yield
    except (QrsumsError, ValueError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


def _verdict(report) -> str:
    if not report.exhaustive:
        return "inconclusive"
    return "FOUND" if report.decompositions_found else "no-decomposition"


def create_app() -> FastAPI:
    app = FastAPI(title="qrsums", version=__version__)

    @app.get("/healthz", response_model=schemas.HealthResponse)
    def healthz():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/charsum", response_model=schemas.CharSumResponse)
    def charsum(req: schemas.CharSumRequest):
        with _domain_errors():
            rec = char_sum(req.tuple_, req.p)
        return schemas.CharSumResponse(
            p=req.p,
            tuple=list(rec.tuple.coords),
            value=rec.value,
            normalized=rec.normalized,
            shifted_normalized=rec.shifted_normalized,
            weil_ok=rec.weil_ok,
            wan_ok=rec.wan_ok,
        )

    @app.post("/ck", response_model=schemas.CkResponse)
    def ck(req: schemas.CkRequest):
        with _domain_errors():
            res = ck_scan(
                req.k, req.p, req.mode, n=req.n or 0, seed=req.seed, workers=req.workers
            )
        return schemas.CkResponse(
            k=res.k,
            p=res.p,
            mode=res.mode,
            c_k=res.ck,
            max_value=res.max_value,
            argmax_tuple=list(res.argmax),
            tuples_scanned=res.tuples_scanned,
        )

    @app.post("/histogram", response_model=schemas.HistogramResponse)
    def histogram(req: schemas.HistogramRequest):
        with _domain_errors():
            hist = vertical_histogram(
                req.k,
                req.p,
                req.bins,
                mode=req.mode,
                n=req.n or 0,
                seed=req.seed,
                workers=req.workers,
            )
            disc = None
            if req.k == 4:
                vals = shifted_samples(
                    req.k,
                    req.p,
                    mode=req.mode,
                    n=req.n or 0,
                    seed=req.seed,
                    workers=req.workers,
                )
                disc = semicircle_discrepancy(vals)
        return schemas.HistogramResponse(
            k=req.k,
            p=req.p,
            mode=req.mode,
            bin_edges=list(hist.bin_edges),
            counts=list(hist.counts),
            total=hist.total,
            statistic_mean=hist.statistic_mean,
            statistic_variance=hist.statistic_variance,
            reference_density=(
                list(hist.reference_density) if hist.reference_density else None
            ),
            discrepancy=disc,
        )

    @app.post("/sweep", response_model=schemas.SweepResponse)
    def sweep(req: schemas.SweepRequest):
        with _domain_errors():
            res = horizontal_sweep(req.tuple_, req.p_min, req.p_max, bins=req.bins)
        hist = res.histogram
        return schemas.SweepResponse(
            tuple=list(req.tuple_),
            p_min=req.p_min,
            p_max=req.p_max,
            bin_edges=list(hist.bin_edges),
            counts=list(hist.counts),
            total=hist.total,
            statistic_mean=hist.statistic_mean,
            statistic_variance=hist.statistic_variance,
            reference_density=(
                list(hist.reference_density) if hist.reference_density else None
            ),
            discrepancy=semicircle_discrepancy([v for _, v in res.points]),
            skipped_primes=list(res.skipped),
        )

    @app.post("/sumset", response_model=schemas.SumsetResponse)
    def sumset(req: schemas.SumsetRequest):
        with _domain_errors():
            a = FpSet(req.a, req.p)
            b = FpSet(req.b, req.p)
            profile = build_profile(a, b)
            checks: dict[str, bool] = {}
            for theta in req.theta_values:
                checks[f"holder-theta-{theta:g}"] = check_holder(profile, theta)
                checks[f"moment-bound-theta-{theta:g}"] = check_moment_bound(
                    profile, theta
                )
            checks["energy-bound"] = check_energy_bound(profile)
            checks["doubling-bound"] = check_doubling_bound(profile)
            moments = {f"{t:g}": moment(profile, t) for t in req.theta_values}
        return schemas.SumsetResponse(
            profile=profile_dict(profile), checks=checks, moments=moments
        )

    @app.post("/bounds", response_model=schemas.BoundsResponse)
    def bounds(req: schemas.BoundsRequest):
        with _domain_errors():
            sr = admissible_size_range(req.p)
            pairs = feasible_size_pairs(
                req.p,
                (sr.lower_A, sr.upper_A),
                (sr.lower_A, sr.upper_A),
                sr.product_min,
                sr.product_max,
            )
            energy_lb, size_lb = energy_size_lower_bounds(0.0, req.p)
            ratios = ratio_size_bounds(1.0, req.p)
        return schemas.BoundsResponse(
            p=req.p,
            size_range=schemas.SizeRangeModel(
                lower_A=sr.lower_A,
                upper_A=sr.upper_A,
                product_min=sr.product_min,
                product_max=sr.product_max,
                feasible=sr.feasible,
            ),
            feasible_pairs=[[sa, sb] for sa, sb in pairs],
            unique_rep_lower_bound=unique_rep_lower_bound(req.p),
            energy_lower_bound_eta0=energy_lb,
            size_lower_bound_eta0=size_lb,
            ratio_lower_bound_delta1=ratios[0],
            ratio_upper_bound_delta1=ratios[1],
        )

    @app.post("/search", response_model=schemas.SearchResponse)
    def run_search(req: schemas.SearchRequest):
        with _domain_errors():
            cfg = SearchConfig(
                p=req.p,
                min_size_a=req.min_size_a,
                min_size_b=req.min_size_b,
                use_size_window_pruning=req.use_size_window_pruning,
                use_min_five_pruning=req.use_min_five_pruning,
                symmetric_only=req.symmetric_only,
                node_limit=req.node_limit,
                worker_count=req.workers,
                max_size_a=req.max_size_a,
                max_size_b=req.max_size_b,
            )
            report = search(cfg)
        return schemas.SearchResponse(report=report.to_dict(), verdict=_verdict(report))

    @app.post("/verify-range", response_model=schemas.VerifyRangeResponse)
    def verify_range(req: schemas.VerifyRangeRequest):
        with _domain_errors():
            template = SearchConfig(
                p=3,
                min_size_a=req.min_size_a,
                min_size_b=req.min_size_b,
                use_size_window_pruning=req.use_size_window_pruning,
                use_min_five_pruning=req.use_min_five_pruning,
                node_limit=req.node_limit,
                worker_count=req.workers,
            )
            rows = verify_conjecture_range(req.p_min, req.p_max, template)
        return schemas.VerifyRangeResponse(
            rows=[_row_model(r) for r in rows],
            all_clear=all(r.verdict == "no-decomposition" for r in rows),
        )

    @app.post("/verify-lemmas", response_model=schemas.VerifyLemmasResponse)
    def verify_lemmas(req: schemas.VerifyLemmasRequest):
        with _domain_errors():
            failures = []
            pairs_total = 0
            for p in req.primes:
                n, fails = check_random_pairs(
                    p,
                    req.pairs_per_prime,
                    seed=req.seed + p,
                    energy_check_max_size=req.energy_check_max_size,
                )
                pairs_total += n
                failures.extend(fails)
            inst_total = 0
            for p in req.conditional_primes:
                n, fails = check_residue_instances(
                    p, req.instances_per_prime, seed=req.seed + p
                )
                inst_total += n
                failures.extend(fails)
        return schemas.VerifyLemmasResponse(
            pairs_checked=pairs_total,
            instances_checked=inst_total,
            failures=[
                schemas.LemmaFailure(p=f.p, check=f.check, detail=f.detail)
                for f in failures
            ],
            passed=not failures,
        )

    return app


def _row_model(row: RangeRow) -> schemas.RangeRowModel:
    return schemas.RangeRowModel(
        p=row.p,
        verdict=row.verdict,
        nodes=row.nodes,
        seconds=row.seconds,
        witnesses=[{"A": list(a), "B": list(b)} for a, b in row.witnesses],
    )
