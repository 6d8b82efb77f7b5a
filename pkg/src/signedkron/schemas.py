"""Pydantic request/response models for the HTTP service and the CLI client."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator

from . import partitions as parts
from .groups import normalize_family
from .partitions import normalize_class
from .superspace import SuperSpace, make_superspace

VERSION = "0.1.0"


class SpaceModel(BaseModel):
    p: int = Field(ge=0)
    q: int = Field(ge=0)
    eps: Literal[1, -1]

    def to_space(self) -> SuperSpace:
        return make_superspace(self.p, self.q, self.eps)

    @classmethod
    def from_space(cls, space: SuperSpace) -> "SpaceModel":
        return cls(p=space.p, q=space.q, eps=space.epsilon)


class PartitionModel(BaseModel):
    k: int = Field(ge=0)
    l: int = Field(ge=0)
    blocks: list[list[str]]

    def to_partition(self) -> parts.Partition:
        return parts.make_partition(self.k, self.l, self.blocks)

    @classmethod
    def from_partition(cls, part: parts.Partition) -> "PartitionModel":
        data = parts.partition_to_dict(part)
        return cls(**data)


class SpaceInfoRequest(BaseModel):
    space: SpaceModel
    include_j: bool = False


class SpaceInfoResponse(BaseModel):
    space: SpaceModel
    n: int
    bar: list[int]
    eps_of: list[int]
    j: Optional[list[list[int]]] = None


def _norm_class(v: str) -> str:
    return normalize_class(v)


def _norm_family(v: str) -> str:
    return normalize_family(v)


class EnumerateRequest(BaseModel):
    k: int = Field(ge=0)
    l: int = Field(ge=0)
    cls: str = "peven"
    count_only: bool = False

    _canon = field_validator("cls")(_norm_class)


class EnumerateResponse(BaseModel):
    k: int
    l: int
    cls: str
    count: int
    partitions: Optional[list[PartitionModel]] = None


class DeltaRequest(BaseModel):
    partition: PartitionModel
    space: SpaceModel
    upper: list[int]
    lower: list[int]


class DeltaResponse(BaseModel):
    value: int


class MapEntryModel(BaseModel):
    out: list[int]
    in_: list[int] = Field(alias="in")
    val: int

    model_config = {"populate_by_name": True}


class BuildMapRequest(BaseModel):
    partition: PartitionModel
    space: SpaceModel
    count_only: bool = False


class BuildMapResponse(BaseModel):
    k: int
    l: int
    n: int
    nnz: int
    entries: Optional[list[MapEntryModel]] = None


class LawsRequest(BaseModel):
    space: SpaceModel
    max_points: int = Field(default=6, ge=0, le=10)
    include_rows: bool = True


class CompositionRowModel(BaseModel):
    sigma: PartitionModel
    pi: PartitionModel
    verdict: str
    scalar: Optional[int] = None
    exponent: Optional[int] = None


class LawsResponse(BaseModel):
    space: SpaceModel
    max_points: int
    identity_ok: bool
    tensor_checked: int
    tensor_ok: bool
    adjoint_checked: int
    adjoint_ok: bool
    composition_counts: dict[str, int]
    rows: Optional[list[CompositionRowModel]] = None


class ClosureRequest(BaseModel):
    generators: list[PartitionModel] = []
    named_generators: list[str] = []
    bound: int = Field(default=6, ge=0, le=12)
    compare: Optional[str] = None

    @field_validator("compare")
    @classmethod
    def _canon_compare(cls, v):
        return None if v is None else normalize_class(v)


class CellCountModel(BaseModel):
    k: int
    l: int
    count: int


class ClosureResponse(BaseModel):
    bound: int
    total: int
    cells: list[CellCountModel]
    compare: Optional[str] = None
    verdict: Optional[str] = None
    missing: Optional[int] = None
    extra: Optional[int] = None


class SampleRequest(BaseModel):
    family: str
    space: SpaceModel
    seed: int = 0
    count: int = Field(default=1, ge=1, le=1000)
    include_matrices: bool = True

    _fam = field_validator("family")(_norm_family)


class SampledElementModel(BaseModel):
    matrix_re: list[list[float]]
    matrix_im: list[list[float]]
    max_membership_residual: float
    conjugate_entry_residual: float


class SampleResponse(BaseModel):
    family: str
    space: SpaceModel
    seed: int
    count: int
    elements: Optional[list[SampledElementModel]] = None
    max_residual: float


class LieDimRequest(BaseModel):
    family: str
    space: SpaceModel

    _fam = field_validator("family")(_norm_family)


class LieDimResponse(BaseModel):
    family: str
    space: SpaceModel
    dimension: int


class EnumSbarRequest(BaseModel):
    space: SpaceModel
    include_matrices: bool = False


class EnumSbarResponse(BaseModel):
    space: SpaceModel
    count: int
    expected: int
    matrices: Optional[list[list[list[int]]]] = None


class GammaRequest(BaseModel):
    space: SpaceModel


class GammaResponse(BaseModel):
    space: SpaceModel
    gamma_re: list[list[float]]
    gamma_im: list[list[float]]
    c_re: list[list[float]]
    c_im: list[list[float]]
    residual_gamma_unitary: float
    residual_gamma_k_gamma_t: float
    residual_c_j_c_t: float


class HomReportRequest(BaseModel):
    family: str
    cls: str
    k: int = Field(ge=0)
    l: int = Field(ge=0)
    space: SpaceModel
    samples: int = Field(default=16, ge=8, le=256)
    seed: int = 0
    tol: float = 1e-8

    _fam = field_validator("family")(_norm_family)
    _cls = field_validator("cls")(_norm_class)


class HomReportResponse(BaseModel):
    family: str
    cls: str
    k: int
    l: int
    space: SpaceModel
    samples: int
    seed: int
    tol: float
    partition_count: int
    span_rank: int
    commutant_dim: int
    containment_max_residual: float
    verdict: str


class SuiteRequest(BaseModel):
    seed: int = 0
    quick: bool = False
    membership_tol: float = 1e-10
    rank_tol: float = 1e-8
    max_n: Optional[int] = Field(default=None, ge=1, le=8)
    max_points: Optional[int] = Field(default=None, ge=0, le=8)


class CheckModel(BaseModel):
    name: str
    passed: bool
    summary: str
    data: dict


class SuiteResponse(BaseModel):
    version: str
    config: dict
    checks: list[CheckModel]
    passed: bool


class HealthResponse(BaseModel):
    status: str
    version: str
