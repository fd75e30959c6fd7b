"""Pydantic request/response models for the qlab service."""

from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, Field


class KernelEntry(BaseModel):
    word: str = ""
    re: Union[float, str] = 0.0
    im: Union[float, str] = 0.0


class KernelPayload(BaseModel):
    group: str
    entries: list[KernelEntry]

    def to_data(self) -> dict:
        return {
            "group": self.group,
            "entries": [e.model_dump() for e in self.entries],
        }


class ChainTerm(BaseModel):
    tuple_: list[str] = Field(alias="tuple")
    re: Union[float, str] = 0.0
    im: Union[float, str] = 0.0

    model_config = {"populate_by_name": True}


class ChainPayload(BaseModel):
    group: str
    degree: int
    terms: list[ChainTerm]

    def to_data(self) -> dict:
        return {
            "group": self.group,
            "degree": self.degree,
            "terms": [
                {"tuple": t.tuple_, "re": t.re, "im": t.im} for t in self.terms
            ],
        }


class BallRequest(BaseModel):
    group: str
    radius: int = Field(ge=0)


class OpnormRequest(BaseModel):
    kernel: KernelPayload
    p: float = 2.0
    window_radius: int = 20


class DomfunRequest(BaseModel):
    kernel: KernelPayload
    p: float = 2.0
    radii: list[float] = Field(default_factory=lambda: [2, 4, 8])
    window_radius: Optional[int] = None
    seed: int = 0
    vectors: int = 2


class RoeRequest(BaseModel):
    group: str
    trials: int = 1000
    prop_max: int = 4
    p_list: list[float] = Field(default_factory=lambda: [1.0, 1.5, 2.0])
    radii: list[int] = Field(default_factory=lambda: list(range(2, 17)))
    seed: int = 0


class PowerRequest(BaseModel):
    group: str
    trials: int = 200
    prop_max: int = 3
    n_list: list[int] = Field(default_factory=lambda: [1, 2, 3, 4])
    radii: list[int] = Field(default_factory=lambda: [4, 8, 16])
    seed: int = 0
    p: float = 2.0


class NeumannRequest(BaseModel):
    group: str = "Z^1"
    t: float = 0.04
    terms: int = 40
    l: int = 1
    radii: list[int] = Field(default_factory=lambda: list(range(2, 21)))
    kernel: Optional[KernelPayload] = None


class KernelEstRequest(BaseModel):
    group: str
    trials: int = 500
    prop_max: int = 4
    p_list: list[float] = Field(default_factory=lambda: [1.0, 1.5, 2.0])
    n_list: list[int] = Field(default_factory=lambda: [1, 2, 3])
    seed: int = 0


class ChiRequest(BaseModel):
    group: str
    trials: int = 200
    degrees: list[int] = Field(default_factory=lambda: [1, 2, 3])
    seed: int = 0
    prop_max: int = 1


class YoungRequest(BaseModel):
    group: str
    trials: int = 300
    n_list: list[int] = Field(default_factory=lambda: [1, 2])
    k_list: list[int] = Field(default_factory=lambda: [1, 2, 3])
    seed: int = 0
    prop_max: int = 2


class UfNormRequest(BaseModel):
    chain: ChainPayload
    n_list: list[int] = Field(default_factory=lambda: [0, 1, 2])


class DehnRequest(BaseModel):
    order: int = 1
    k_max: int = 8
    grid: int = 6
    maximal_simplices: Optional[list[list[int]]] = None
    coeff_bound: Optional[int] = None


class VankampenRequest(BaseModel):
    presentation: str
    word: str
    max_area: int = 25


class CombingRequest(BaseModel):
    group: str
    scheme: str
    radius: int = 8


class ReportResponse(BaseModel):
    outcome: str
    violations: int
    meta: dict
    columns: list[str]
    key_columns: list[str]
    rows: list[dict]
