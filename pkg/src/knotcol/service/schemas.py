"""Pydantic request/response models for the coloring service.

The CLI builds the same models and calls the same handlers in-process, so
JSON output is identical whichever front end is used.
"""

from __future__ import annotations

from typing import List, Optional

from pydantic import BaseModel, model_validator

SCHEMA_VERSION = "1"


class KnotSpec(BaseModel):
    """Exactly one of the input formats must be set."""

    gauss: Optional[str] = None
    braid: Optional[str] = None
    torus: Optional[str] = None  # "p,q"
    dt: Optional[str] = None
    name: Optional[str] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        set_fields = [f for f in ("gauss", "braid", "torus", "dt")
                      if getattr(self, f) is not None]
        if len(set_fields) != 1:
            raise ValueError(f"exactly one knot input required, got {set_fields}")
        return self


class LibrarySpec(BaseModel):
    """A library file path or a generation recipe, not both."""

    path: Optional[str] = None
    dihedral_prime_max: int = 0
    affine_max: int = 0
    groups: List[str] = []  # builtin group names, e.g. "s3", "s4"

    @model_validator(mode="after")
    def _path_xor_gen(self):
        has_gen = bool(self.dihedral_prime_max or self.affine_max or self.groups)
        if self.path and has_gen:
            raise ValueError("give either a library path or a generation recipe")
        if not self.path and not has_gen:
            raise ValueError("empty library specification")
        return self


class BudgetSpec(BaseModel):
    max_assignments: Optional[int] = 10 ** 8
    max_nodes: Optional[int] = None
    max_seconds: Optional[float] = None


class ColorRequest(BaseModel):
    knot: KnotSpec
    quandle: str  # e.g. "dihedral:3", "affine:5,2", "conj:s3,2"
    engine: str = "sat"  # brute | backtrack | braid | sat | external:<path>
    count: bool = False
    check: bool = False  # cross-check against the brute-force oracle
    budget: BudgetSpec = BudgetSpec()


class ColorResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    knot: str
    quandle: str
    engine: str
    colorable: Optional[bool] = None
    count: Optional[int] = None
    millis: float
    status: str = "ok"  # ok | budget-exceeded


class EncodeRequest(BaseModel):
    knot: KnotSpec
    quandle: str
    symmetry_break: bool = True
    nontrivial: bool = True


class EncodeResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    num_vars: int
    num_clauses: int
    dimacs: str


class CertifyRequest(BaseModel):
    knot: KnotSpec
    library: LibrarySpec
    prefilter: bool = False
    budget: BudgetSpec = BudgetSpec()


class CertifyResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    verdict: str  # certificate | exhausted
    detail: dict
    millis: float


class DistinguishRequest(BaseModel):
    knot1: KnotSpec
    knot2: KnotSpec
    library: LibrarySpec
    count: bool = False
    budget: BudgetSpec = BudgetSpec()


class DistinguishResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    verdict: str  # witness | indistinguishable
    detail: dict
    millis: float


class BenchRequest(BaseModel):
    knots: List[KnotSpec]
    library: LibrarySpec
    engine: str = "sat"
    budget: BudgetSpec = BudgetSpec()
    jobs: int = 1


class BenchRow(BaseModel):
    knot: str
    quandle: str
    size: int
    engine: str
    verdict: str
    millis: float
    status: str


class BenchResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    rows: List[BenchRow]
