"""HTTP service exposing the ideal, basis, relation, and census tools.

The service keeps one in-process basis per group, guarded by a lock, so
concurrent requests never trigger duplicate basis computations.  All
heavy lifting lives in the library modules; routes translate between
models and library calls.
"""

from __future__ import annotations

import threading
import time
from typing import Optional

from fastapi import FastAPI, HTTPException

from . import __version__
from .census import BadReductionError, CurveQ, census_pair
from .groebner import (
    DEGREVLEX,
    BudgetExceededError,
    CacheFormatError,
    GroebnerBasis,
    buchberger,
    cache_path,
    generators_hash,
    group_basis,
    load_cache,
)
from .mpoly import parse as parse_poly
from .relations import (
    build_relations,
    nonmembership_evidence,
    verify_identities,
)
from .schemas import (
    CensusRequest,
    CensusResponse,
    EvidenceModel,
    GroebnerRequest,
    GroebnerResponse,
    IdealGenRequest,
    IdealGenResponse,
    IdentityCheckModel,
    ReduceRequest,
    ReduceResponse,
    VerifyRequest,
    VerifyResponse,
)
from .symplectic import GROUP_G, GROUP_NAMES, sp_generators


class BasisStore:
    """Thread-safe per-group cache of reduced bases for one service process."""

    def __init__(self, cache_dir: Optional[str] = None) -> None:
        self._cache_dir = cache_dir
        self._lock = threading.Lock()
        self._bases: dict[str, GroebnerBasis] = {}

    def get(
        self,
        group: str,
        *,
        use_cache: bool = True,
        no_compute: bool = False,
        budget_seconds: Optional[float] = None,
    ) -> tuple[Optional[GroebnerBasis], str, bool, float]:
        """Return (basis, status, from_disk_cache, elapsed_seconds).

        status is "ok", "missing-cache" (no_compute set and no usable cache)
        or "budget-exceeded".
        """
        with self._lock:
            if use_cache and group in self._bases:
                return self._bases[group], "ok", True, 0.0
            g = GROUP_G[group]
            gens = sp_generators(g)
            start = time.monotonic()
            if no_compute:
                gh = generators_hash(gens, DEGREVLEX)
                path = cache_path(group, DEGREVLEX, gh, self._cache_dir)
                try:
                    basis = load_cache(path, DEGREVLEX, gh)
                except (FileNotFoundError, CacheFormatError):
                    return None, "missing-cache", False, time.monotonic() - start
                self._bases[group] = basis
                return basis, "ok", True, time.monotonic() - start
            try:
                basis = group_basis(
                    group,
                    cache_dir=self._cache_dir,
                    use_cache=use_cache,
                    write_cache=use_cache,
                    budget_seconds=budget_seconds,
                )
            except BudgetExceededError:
                return None, "budget-exceeded", False, time.monotonic() - start
            self._bases[group] = basis
            return basis, "ok", bool(basis.meta.get("from_cache")), time.monotonic() - start

    def load_file(self, path: str, group: str) -> GroebnerBasis:
        """Load a basis from an explicit cache file, validating its header."""
        gens = sp_generators(GROUP_G[group])
        return load_cache(path, DEGREVLEX, generators_hash(gens, DEGREVLEX))


def create_app(cache_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="sp6kit", version=__version__)
    store = BasisStore(cache_dir)
    app.state.basis_store = store

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/ideal/gen", response_model=IdealGenResponse)
    def ideal_gen(req: IdealGenRequest) -> IdealGenResponse:
        gens = sp_generators(req.g)
        return IdealGenResponse(
            group=GROUP_NAMES[req.g],
            count=len(gens),
            generators=[p.to_str(DEGREVLEX) for p in gens],
        )

    @app.post("/groebner", response_model=GroebnerResponse)
    def groebner(req: GroebnerRequest) -> GroebnerResponse:
        basis, status, from_cache, elapsed = store.get(
            req.group,
            use_cache=req.use_cache,
            no_compute=req.no_compute,
            budget_seconds=req.budget_seconds,
        )
        if basis is None:
            detail = (
                "no usable cache file and computation disabled"
                if status == "missing-cache"
                else "basis computation exceeded the time budget"
            )
            return GroebnerResponse(
                status=status,
                group=req.group,
                order=DEGREVLEX.tag,
                elapsed_seconds=elapsed,
                detail=detail,
            )
        gens = sp_generators(GROUP_G[req.group])
        path = cache_path(req.group, DEGREVLEX, generators_hash(gens, DEGREVLEX), cache_dir)
        resp = GroebnerResponse(
            status="ok",
            group=req.group,
            order=DEGREVLEX.tag,
            size=len(basis),
            from_cache=from_cache,
            elapsed_seconds=elapsed,
            elements=[e.to_str(DEGREVLEX) for e in basis.elements] if req.include_elements else [],
            cache_file=str(path),
        )
        if req.spair_sample is not None:
            report = basis.spair_closure(sample=req.spair_sample, seed=req.seed)
            resp.spair_checked = report.checked
            resp.spair_failures = len(report.failures)
            if not report.ok:
                resp.status = "ok"
                resp.detail = "s-polynomial sample had nonzero remainders"
        return resp

    @app.post("/reduce", response_model=ReduceResponse)
    def reduce(req: ReduceRequest) -> ReduceResponse:
        try:
            poly = parse_poly(req.polynomial)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=f"bad polynomial: {exc}")
        basis, status, _, _ = store.get(
            req.group, use_cache=req.use_cache, budget_seconds=req.budget_seconds
        )
        if basis is None:
            return ReduceResponse(
                status="budget-exceeded",
                group=req.group,
                detail="basis computation exceeded the time budget",
            )
        trace = basis.normal_form(poly)
        rem = trace.remainder
        return ReduceResponse(
            status="ok",
            group=req.group,
            remainder=rem.to_str(DEGREVLEX),
            is_member=not rem,
            input_terms=len(poly),
            remainder_terms=len(rem),
        )

    @app.post("/verify-props", response_model=VerifyResponse)
    def verify_props(req: VerifyRequest) -> VerifyResponse:
        start = time.monotonic()
        cat = build_relations()
        basis: Optional[GroebnerBasis] = None
        status = "ok"
        if req.cache_file is not None:
            try:
                basis = store.load_file(req.cache_file, "sp6")
            except (FileNotFoundError, CacheFormatError) as exc:
                return VerifyResponse(
                    status="missing-cache",
                    mode="identity",
                    elapsed_seconds=time.monotonic() - start,
                    detail=f"cache file rejected: {exc}",
                )
        else:
            basis, status, _, _ = store.get(
                "sp6", use_cache=req.use_cache, budget_seconds=req.budget_seconds
            )
        if basis is None:
            evidence = nonmembership_evidence(
                cat,
                trials=req.evidence_trials,
                seed=req.seed,
                control_samples=req.control_samples,
            )
            return VerifyResponse(
                status="budget-exceeded",
                mode="evidence",
                evidence=EvidenceModel(
                    trials=evidence.trials,
                    seed=evidence.seed,
                    nonzero_counts=dict(evidence.nonzero_counts),
                    control_samples=evidence.control_samples,
                    control_nonzero=evidence.control_nonzero,
                    all_relations_nonzero=evidence.all_relations_nonzero,
                    control_clean=evidence.control_clean,
                ),
                elapsed_seconds=time.monotonic() - start,
                detail="basis computation exceeded the time budget; evaluation evidence reported",
            )
        report = verify_identities(cat, basis)
        want = {"arch": "arch", "ssing": "ssing", "ord": "ord1"}.get(req.prop)
        checks = [
            IdentityCheckModel(
                label=c.label,
                prop=c.prop,
                monomial=c.monomial,
                expected=c.expected,
                actual=c.actual,
                scalar=None if c.scalar is None else str(c.scalar),
                passed=c.passed,
                strict=c.strict,
                constraints=list(c.constraints),
            )
            for c in report.checks
            if req.prop == "all" or c.prop == want
        ]
        remainder_terms = {name: len(rem) for name, rem in report.remainders.items()}
        g_trace = basis.normal_form(cat.g_poly - cat.g_poly.const(1))
        s1_trace = basis.normal_form(cat.s1)
        structure = {
            "arch_homogeneous": cat.arch.is_homogeneous(),
            "g_minus_one_member": not g_trace.remainder,
            "s1_normal_form_fixed": s1_trace.remainder == cat.s1,
            "arch_remainder_nonzero": bool(report.remainders["arch"]),
            "ssing_remainder_nonzero": bool(report.remainders["ssing"]),
            "ord_remainder_nonzero": bool(report.remainders["ord1"]),
        }
        if any(not c.passed for c in checks) or not all(structure.values()):
            status = "mismatch"
        return VerifyResponse(
            status=status,
            mode="identity",
            checks=checks,
            remainder_terms=remainder_terms,
            structure=structure,
            elapsed_seconds=time.monotonic() - start,
        )

    @app.post("/lt-census", response_model=CensusResponse)
    def lt_census(req: CensusRequest) -> CensusResponse:
        start = time.monotonic()
        try:
            c1 = CurveQ(*req.curve1)
            c2 = CurveQ(*req.curve2)
        except (ValueError, BadReductionError) as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        summary = census_pair(c1, c2, req.x_max, checkpoints=req.checkpoints)
        summary.validate()
        return CensusResponse(
            status="ok",
            curve1=req.curve1,
            curve2=req.curve2,
            x_max=summary.x_max,
            checkpoints=list(summary.checkpoints),
            single_counts=(list(summary.single_counts[0]), list(summary.single_counts[1])),
            pair_counts=list(summary.pair_counts),
            loglog_ratio=[float(r) for r in summary.loglog_ratio],
            pair_primes_head=list(summary.pair_primes[:20]),
            pair_count_total=len(summary.pair_primes),
            exclusions=summary.exclusions,
            csv=summary.csv_text(),
            elapsed_seconds=time.monotonic() - start,
        )

    return app
