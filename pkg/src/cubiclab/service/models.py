"""Request and response models for the HTTP service."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field, model_validator

from ..series import Ring


class RingSpec(BaseModel):
    kind: Literal["exact", "mod"] = "exact"
    modulus: int | None = Field(default=None, ge=2)

    @model_validator(mode="after")
    def _check(self):
        if self.kind == "mod" and self.modulus is None:
            raise ValueError("ring kind 'mod' requires a modulus")
        if self.kind == "exact" and self.modulus is not None:
            raise ValueError("ring kind 'exact' takes no modulus")
        return self

    def to_ring(self) -> Ring:
        return Ring.exact() if self.kind == "exact" else Ring.mod(self.modulus)


class ExpandRequest(BaseModel):
    expr: str
    order: int = Field(default=32, ge=1)
    ring: RingSpec = RingSpec()


class ExpandResponse(BaseModel):
    expr: str
    order: int
    ring: RingSpec
    coefficients: list[int]


class DissectRequest(BaseModel):
    expr: str
    k: int = Field(ge=2)
    r: int | None = Field(default=None, ge=0)
    order: int = Field(default=32, ge=1)
    ring: RingSpec = RingSpec()


class ComponentModel(BaseModel):
    r: int
    coefficients: list[int]


class DissectResponse(BaseModel):
    expr: str
    k: int
    ring: RingSpec
    components: list[ComponentModel]


class OracleRequest(BaseModel):
    n: int = Field(ge=0)


class OracleRow(BaseModel):
    n: int
    even_parts_count: int
    odd_parts_count: int
    a_value: int
    agrees_with_series: bool


class OracleTableRequest(BaseModel):
    upto: int = Field(ge=0)


class OracleTableResponse(BaseModel):
    rows: list[OracleRow]


class WitnessModel(BaseModel):
    index: int
    residue: int
    n: int | None = None
    lhs: int | None = None
    rhs: int | None = None


class ReportModel(BaseModel):
    id: str
    claim: str
    order: int
    checked: int
    verdict: Literal["Holds", "Counterexample", "Vacuous"]
    witness: WitnessModel | None = None


class ClaimRequest(BaseModel):
    a: int = Field(ge=1)
    b: int = Field(ge=0)
    modulus: int = Field(ge=2)
    order: int | None = Field(default=None, ge=1)


class InternalRequest(BaseModel):
    order: int | None = Field(default=None, ge=1)


class FamilyRequest(BaseModel):
    family: Literal[1, 2]
    j: int = Field(ge=0)
    order: int | None = Field(default=None, ge=1)


class IdentityRequest(BaseModel):
    lhs: str
    rhs: str
    modulus: int | None = Field(default=None, ge=2)
    order: int | None = Field(default=None, ge=1)


class SuiteRequest(BaseModel):
    order_exact: int | None = Field(default=None, ge=1)
    order_mod: int | None = Field(default=None, ge=1)


class SuiteResponse(BaseModel):
    order_exact: int
    order_mod: int
    reports: list[ReportModel]
