"""HTTP service exposing the series engine and the congruence laboratory.

The expensive objects (Pochhammer expansions, the signed series) are cached
at module level inside the core package, so a long-running service answers
repeated checks without recomputing them.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from .. import lab, oracle
from ..dissection import dissect
from ..etaexpr import EtaParseError
from ..lab import REPORT_SCHEMA, CheckReport, CongruenceClaim, FamilyClaim
from ..series import EXACT
from . import models


def _bad_request(exc: Exception) -> HTTPException:
    detail = {"message": str(exc)}
    if isinstance(exc, EtaParseError):
        detail["position"] = exc.position
    return HTTPException(status_code=400, detail=detail)


def _report(r: CheckReport) -> models.ReportModel:
    return models.ReportModel.model_validate(r.to_dict())


def create_app() -> FastAPI:
    app = FastAPI(title="cubiclab", version="0.1.0")

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.get("/report-schema")
    def report_schema() -> dict:
        return REPORT_SCHEMA

    @app.post("/expand", response_model=models.ExpandResponse)
    def expand(req: models.ExpandRequest) -> models.ExpandResponse:
        try:
            series = lab.resolve_series(req.expr, req.ring.to_ring(), req.order)
        except (EtaParseError, ValueError) as exc:
            raise _bad_request(exc)
        return models.ExpandResponse(
            expr=req.expr, order=series.order, ring=req.ring,
            coefficients=list(series.coeffs),
        )

    @app.post("/dissect", response_model=models.DissectResponse)
    def dissect_endpoint(req: models.DissectRequest) -> models.DissectResponse:
        try:
            series = lab.resolve_series(req.expr, req.ring.to_ring(), req.order)
            residues = range(req.k) if req.r is None else [req.r]
            components = [
                models.ComponentModel(r=r, coefficients=list(dissect(series, req.k, r).coeffs))
                for r in residues
            ]
        except (EtaParseError, ValueError) as exc:
            raise _bad_request(exc)
        return models.DissectResponse(expr=req.expr, k=req.k, ring=req.ring, components=components)

    @app.post("/oracle", response_model=models.OracleRow)
    def oracle_endpoint(req: models.OracleRequest) -> models.OracleRow:
        try:
            count = oracle.enumerate_cubic(req.n)
        except ValueError as exc:
            raise _bad_request(exc)
        series = lab.resolve_series("A", EXACT, req.n + 1)
        return models.OracleRow(
            n=count.n,
            even_parts_count=count.even_parts_count,
            odd_parts_count=count.odd_parts_count,
            a_value=count.a_value,
            agrees_with_series=count.a_value == series.coeffs[req.n],
        )

    @app.post("/oracle/table", response_model=models.OracleTableResponse)
    def oracle_table_endpoint(req: models.OracleTableRequest) -> models.OracleTableResponse:
        try:
            rows = oracle.oracle_table(req.upto + 1)
        except ValueError as exc:
            raise _bad_request(exc)
        series = lab.resolve_series("A", EXACT, req.upto + 1)
        return models.OracleTableResponse(rows=[
            models.OracleRow(
                n=row.n,
                even_parts_count=row.even_parts_count,
                odd_parts_count=row.odd_parts_count,
                a_value=row.a_value,
                agrees_with_series=row.a_value == series.coeffs[row.n],
            )
            for row in rows
        ])

    @app.post("/check/claim", response_model=models.ReportModel, response_model_exclude_none=True)
    def check_claim_endpoint(req: models.ClaimRequest) -> models.ReportModel:
        try:
            claim = CongruenceClaim(req.a, req.b, req.modulus)
            report = lab.check_claim(claim, req.order or lab.DEFAULT_ORDER_MOD)
        except ValueError as exc:
            raise _bad_request(exc)
        return _report(report)

    @app.post("/check/internal", response_model=models.ReportModel, response_model_exclude_none=True)
    def check_internal_endpoint(req: models.InternalRequest) -> models.ReportModel:
        return _report(lab.check_internal(req.order or lab.DEFAULT_ORDER_MOD))

    @app.post("/check/family", response_model=models.ReportModel, response_model_exclude_none=True)
    def check_family_endpoint(req: models.FamilyRequest) -> models.ReportModel:
        try:
            report = lab.check_family(FamilyClaim(req.family, req.j), req.order or lab.DEFAULT_ORDER_MOD)
        except ValueError as exc:
            raise _bad_request(exc)
        return _report(report)

    @app.post("/check/identity", response_model=models.ReportModel, response_model_exclude_none=True)
    def check_identity_endpoint(req: models.IdentityRequest) -> models.ReportModel:
        order = req.order or lab.DEFAULT_ORDER_EXACT
        try:
            report = lab.verify_identity(req.lhs, req.rhs, order, modulus=req.modulus)
        except (EtaParseError, ValueError) as exc:
            raise _bad_request(exc)
        return _report(report)

    @app.post("/check/suite", response_model=models.SuiteResponse, response_model_exclude_none=True)
    def check_suite_endpoint(req: models.SuiteRequest) -> models.SuiteResponse:
        order_exact = req.order_exact or lab.DEFAULT_ORDER_EXACT
        order_mod = req.order_mod or lab.DEFAULT_ORDER_MOD
        reports = lab.standard_suite(order_exact=order_exact, order_mod=order_mod)
        return models.SuiteResponse(
            order_exact=order_exact, order_mod=order_mod,
            reports=[_report(r) for r in reports],
        )

    return app


app = create_app()
