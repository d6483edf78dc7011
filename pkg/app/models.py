from typing import Annotated, Any, Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import AfterValidator, BaseModel, ConfigDict, Field, PlainSerializer, model_validator

from app.services.partitions import Partition
from config.settings import SCHEMA_VERSION

# Partitions travel as JSON arrays of integers and come back as Partition values.
PartitionField = Annotated[
    Tuple[int, ...],
    AfterValidator(Partition),
    PlainSerializer(list, return_type=List[int]),
]


class CharacterTable(BaseModel):
    n: int
    irreducibles: List[PartitionField]
    classes: List[PartitionField]
    class_sizes: List[int]
    values: List[List[int]]

    def value(self, irreducible: Partition, cycle_type: Partition) -> int:
        return self.values[self.irreducibles.index(irreducible)][self.classes.index(cycle_type)]

    def as_array(self) -> np.ndarray:
        """Exact values as a numpy object array (Python ints, no overflow)."""
        return np.array(self.values, dtype=object)


class KroneckerResult(BaseModel):
    value: int = Field(ge=0)
    method: Literal["oracle", "two_row_closed_form", "four_row_closed_form"]
    cross_checked: bool = False


class BranchingEntry(BaseModel):
    rho: PartitionField
    delta: Optional[PartitionField] = None
    multiplicity: int = Field(ge=1)


class BranchingResult(BaseModel):
    source: PartitionField
    kind: Literal["gl_branch", "gl_restrict", "levi"]
    entries: List[BranchingEntry]

    def as_dict(self) -> Dict[Any, int]:
        if self.kind == "levi":
            return {(entry.rho, entry.delta): entry.multiplicity for entry in self.entries}
        return {entry.rho: entry.multiplicity for entry in self.entries}


class SchurTerm(BaseModel):
    shape: PartitionField
    coefficient: int = Field(ge=1)


class SchurExpansion(BaseModel):
    degree: int
    terms: List[SchurTerm]

    def as_dict(self) -> Dict[Partition, int]:
        return {term.shape: term.coefficient for term in self.terms}

    def coefficient(self, shape: Partition) -> int:
        return self.as_dict().get(Partition(shape), 0)


class ObstructionCandidate(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lambda_: PartitionField = Field(alias="lambda")
    d: int
    m: int
    n: int
    passes_ambient: bool
    passes_height: bool
    det_coefficient: int = Field(ge=0)
    is_candidate: bool

    @model_validator(mode="after")
    def _check_flags(self):
        expected = self.passes_ambient and self.passes_height and self.det_coefficient == 0
        if self.is_candidate != expected:
            raise ValueError("is_candidate must equal passes_ambient and passes_height and det_coefficient == 0")
        if Partition(self.lambda_).size != self.m * self.d:
            raise ValueError("candidate size must be m*d")
        return self


class SeparabilityCertificate(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    lambda_: PartitionField = Field(alias="lambda")
    mu: PartitionField
    n: int
    m_used: int
    rho: PartitionField
    coeff_target: int = Field(ge=1)
    coeff_rect: int = Field(ge=0, le=0)
    case_tag: Literal["case1", "case2", "case3", "nonzero_mod_n"]


class CheckResult(BaseModel):
    name: str
    passed: bool
    checked: int
    failures: List[str] = []


class SuiteReport(BaseModel):
    suite: str
    passed: bool
    checks: List[CheckResult]


class OutputRecord(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: str = Field(default=SCHEMA_VERSION, alias="schema")
    command: str
    inputs: Dict[str, Any]
    result: Any
    method: str
    cache_hits: int = 0
    elapsed_ms: float = 0.0
