"""FastAPI service exposing the partition calculus over HTTP.

Every endpoint is a pure computation: requests carry the full configuration
(including seeds), responses echo it, and identical requests produce
identical responses.  Run with ``signedkron serve`` or point uvicorn at
``signedkron.service:app``.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, HTTPException

from . import groups, homspace, schemas, suite
from .category import closure, compare_with_class
from .intertwiners import build_T, composition_report, delta
from .partitions import (PartitionError, Partition, enumerate_partitions,
                         identity_pairing, involution, named_partition,
                         tensor)
from .superspace import InvalidSignature, super_identity

app = FastAPI(
    title="signedkron",
    description="Exact signed partition calculus over super-spaces",
    version=schemas.VERSION,
)


def _bad_request(exc: Exception) -> HTTPException:
    return HTTPException(status_code=422, detail=f"{type(exc).__name__}: {exc}")


@app.get("/health", response_model=schemas.HealthResponse)
def health() -> schemas.HealthResponse:
    return schemas.HealthResponse(status="ok", version=schemas.VERSION)


@app.post("/space", response_model=schemas.SpaceInfoResponse,
          response_model_exclude_none=True)
def space_endpoint(req: schemas.SpaceInfoRequest) -> schemas.SpaceInfoResponse:
    try:
        space = req.space.to_space()
    except InvalidSignature as exc:
        raise _bad_request(exc)
    return schemas.SpaceInfoResponse(
        space=req.space, n=space.n,
        bar=[space.bar(i) for i in space.indices()],
        eps_of=[space.eps_of(i) for i in space.indices()],
        j=super_identity(space).tolist() if req.include_j else None)


@app.post("/enumerate", response_model=schemas.EnumerateResponse,
          response_model_exclude_none=True)
def enumerate_endpoint(req: schemas.EnumerateRequest) -> schemas.EnumerateResponse:
    try:
        parts = enumerate_partitions(req.k, req.l, req.cls)
    except PartitionError as exc:
        raise _bad_request(exc)
    models = None
    if not req.count_only:
        models = [schemas.PartitionModel.from_partition(p) for p in parts]
    return schemas.EnumerateResponse(k=req.k, l=req.l, cls=req.cls,
                                     count=len(parts), partitions=models)


@app.post("/delta", response_model=schemas.DeltaResponse)
def delta_endpoint(req: schemas.DeltaRequest) -> schemas.DeltaResponse:
    try:
        part = req.partition.to_partition()
        space = req.space.to_space()
        value = delta(part, space, req.upper, req.lower)
    except (PartitionError, InvalidSignature) as exc:
        raise _bad_request(exc)
    return schemas.DeltaResponse(value=value)


@app.post("/build-t", response_model=schemas.BuildMapResponse,
          response_model_exclude_none=True)
def build_t_endpoint(req: schemas.BuildMapRequest) -> schemas.BuildMapResponse:
    try:
        part = req.partition.to_partition()
        space = req.space.to_space()
    except (PartitionError, InvalidSignature) as exc:
        raise _bad_request(exc)
    mapping = build_T(part, space)
    entries = None
    if not req.count_only:
        entries = [schemas.MapEntryModel(**rec) for rec in mapping.to_records()]
    return schemas.BuildMapResponse(k=mapping.k, l=mapping.l, n=mapping.n,
                                    nnz=mapping.nnz, entries=entries)


@app.post("/laws", response_model=schemas.LawsResponse,
          response_model_exclude_none=True)
def laws_endpoint(req: schemas.LawsRequest) -> schemas.LawsResponse:
    try:
        space = req.space.to_space()
    except InvalidSignature as exc:
        raise _bad_request(exc)
    half = req.max_points // 2

    identity_ok = np.array_equal(
        build_T(identity_pairing(), space).dense(),
        np.eye(space.n, dtype=np.int64))

    small = []
    for k in range(req.max_points + 1):
        for l in range(req.max_points + 1):
            if (k + l) % 2 == 0 and k + l <= req.max_points:
                small.extend(enumerate_partitions(k, l))
    tensor_checked = adjoint_checked = 0
    tensor_ok = adjoint_ok = True
    for a in small:
        adjoint_checked += 1
        if build_T(a, space).adjoint() != build_T(involution(a), space):
            adjoint_ok = False
        for b in small:
            if a.points + b.points > req.max_points:
                continue
            tensor_checked += 1
            if build_T(a, space).tensor(build_T(b, space)) != \
                    build_T(tensor(a, b), space):
                tensor_ok = False

    counts = {"scalar": 0, "zero": 0, "not_proportional": 0}
    rows: list[schemas.CompositionRowModel] = []
    for l in range(half + 1):
        for k in range(half + 1):
            if (k + l) % 2:
                continue
            for L in range(half + 1):
                if (l + L) % 2:
                    continue
                for sigma in enumerate_partitions(k, l):
                    for pi in enumerate_partitions(l, L):
                        rep = composition_report(sigma, pi, space)
                        counts[rep.verdict] += 1
                        if req.include_rows:
                            rows.append(schemas.CompositionRowModel(
                                sigma=schemas.PartitionModel.from_partition(sigma),
                                pi=schemas.PartitionModel.from_partition(pi),
                                verdict=rep.verdict,
                                scalar=rep.scalar,
                                exponent=rep.exponent))
    return schemas.LawsResponse(
        space=req.space, max_points=req.max_points, identity_ok=identity_ok,
        tensor_checked=tensor_checked, tensor_ok=tensor_ok,
        adjoint_checked=adjoint_checked, adjoint_ok=adjoint_ok,
        composition_counts=counts, rows=rows if req.include_rows else None)


@app.post("/closure", response_model=schemas.ClosureResponse,
          response_model_exclude_none=True)
def closure_endpoint(req: schemas.ClosureRequest) -> schemas.ClosureResponse:
    try:
        gens: list[Partition] = [p.to_partition() for p in req.generators]
        gens += [named_partition(name) for name in req.named_generators]
        cat = closure(gens, point_bound=req.bound)
    except (PartitionError, ValueError) as exc:
        raise _bad_request(exc)
    cells = [schemas.CellCountModel(k=k, l=l, count=len(parts))
             for (k, l), parts in cat.cells().items()]
    verdict = missing = extra = None
    if req.compare is not None:
        comparison = compare_with_class(cat, req.compare)
        verdict = comparison.verdict
        missing = len(comparison.missing)
        extra = len(comparison.extra)
    return schemas.ClosureResponse(bound=req.bound, total=len(cat),
                                   cells=cells, compare=req.compare,
                                   verdict=verdict, missing=missing,
                                   extra=extra)


@app.post("/sample", response_model=schemas.SampleResponse,
          response_model_exclude_none=True)
def sample_endpoint(req: schemas.SampleRequest) -> schemas.SampleResponse:
    try:
        space = req.space.to_space()
        elements = groups.sample_elements(req.family, space, req.count,
                                          req.seed)
    except (groups.GroupModelError, InvalidSignature) as exc:
        raise _bad_request(exc)
    models = []
    worst = 0.0
    for el in elements:
        rep = groups.membership_residual(el.matrix, req.family, space)
        conj = groups.conjugate_entry_residual(el.matrix, space)
        worst = max(worst, rep.max_residual, conj)
        if req.include_matrices:
            models.append(schemas.SampledElementModel(
                matrix_re=[[float(x) for x in row] for row in el.matrix.real],
                matrix_im=[[float(x) for x in row] for row in el.matrix.imag],
                max_membership_residual=rep.max_residual,
                conjugate_entry_residual=conj))
    return schemas.SampleResponse(
        family=req.family, space=req.space, seed=req.seed, count=req.count,
        elements=models if req.include_matrices else None, max_residual=worst)


@app.post("/liedim", response_model=schemas.LieDimResponse)
def liedim_endpoint(req: schemas.LieDimRequest) -> schemas.LieDimResponse:
    try:
        space = req.space.to_space()
        dim = groups.lie_algebra_dimension(req.family, space)
    except (groups.GroupModelError, InvalidSignature) as exc:
        raise _bad_request(exc)
    return schemas.LieDimResponse(family=req.family, space=req.space,
                                  dimension=dim)


@app.post("/enum-sbar", response_model=schemas.EnumSbarResponse,
          response_model_exclude_none=True)
def enum_sbar_endpoint(req: schemas.EnumSbarRequest) -> schemas.EnumSbarResponse:
    try:
        space = req.space.to_space()
        mats = groups.enumerate_super_symmetric(space)
    except (PartitionError, groups.GroupModelError, InvalidSignature) as exc:
        raise _bad_request(exc)
    payload = None
    if req.include_matrices:
        payload = [[[int(x) for x in row] for row in m] for m in mats]
    return schemas.EnumSbarResponse(
        space=req.space, count=len(mats),
        expected=groups.sbar_expected_count(space), matrices=payload)


@app.post("/gamma", response_model=schemas.GammaResponse)
def gamma_endpoint(req: schemas.GammaRequest) -> schemas.GammaResponse:
    try:
        space = req.space.to_space()
        gc = groups.gamma_conjugator(space)
    except (groups.GroupModelError, InvalidSignature) as exc:
        raise _bad_request(exc)
    K = np.array([[0.0, 1.0], [1.0, 0.0]])
    J = super_identity(space).astype(float)
    return schemas.GammaResponse(
        space=req.space,
        gamma_re=gc.gamma.real.tolist(), gamma_im=gc.gamma.imag.tolist(),
        c_re=gc.C.real.tolist(), c_im=gc.C.imag.tolist(),
        residual_gamma_unitary=float(np.max(np.abs(
            gc.gamma @ gc.gamma.conj().T - np.eye(2)))),
        residual_gamma_k_gamma_t=float(np.max(np.abs(
            gc.gamma @ K @ gc.gamma.T - np.eye(2)))),
        residual_c_j_c_t=float(np.max(np.abs(
            gc.C @ J @ gc.C.T - np.eye(space.n)))))


@app.post("/homreport", response_model=schemas.HomReportResponse)
def homreport_endpoint(req: schemas.HomReportRequest) -> schemas.HomReportResponse:
    try:
        space = req.space.to_space()
        report = homspace.hom_report(req.family, req.cls, req.k, req.l,
                                     space, req.samples, req.seed, req.tol)
    except (PartitionError, groups.GroupModelError, InvalidSignature,
            homspace.StabilityFailure) as exc:
        raise _bad_request(exc)
    return schemas.HomReportResponse(
        family=report.family, cls=report.cls, k=report.k, l=report.l,
        space=req.space, samples=req.samples, seed=req.seed, tol=req.tol,
        partition_count=report.partition_count, span_rank=report.span_rank,
        commutant_dim=report.commutant_dim,
        containment_max_residual=report.containment_max_residual,
        verdict=report.verdict)


@app.post("/suite", response_model=schemas.SuiteResponse)
def suite_endpoint(req: schemas.SuiteRequest) -> schemas.SuiteResponse:
    report = suite.run_suite(suite.SuiteConfig(
        seed=req.seed, quick=req.quick,
        membership_tol=req.membership_tol, rank_tol=req.rank_tol,
        max_n=req.max_n, max_points=req.max_points))
    return schemas.SuiteResponse(**report)
