from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field


class OutputRecord(BaseModel):
    """One command result; the CLI and the HTTP surface both render from this model."""

    command: str = Field(..., description="Command name, e.g. 'gst' or 'torus-slopes'")
    input: Dict[str, Any] = Field(default_factory=dict, description="Echo of the validated arguments")
    result: Any = Field(None, description="Primary result of the command")
    trace: Optional[Dict[str, Any]] = Field(None, description="Intermediate values behind the result")

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "command": "gst",
                "input": {"sstring": "0011100011100"},
                "result": 4,
                "trace": {
                    "configurations": ["L1", "R2", "R1"],
                    "matrices": [[[1, 0], [1, 1]], [[1, 1], [0, 0]], [[1, 1], [0, 1]]],
                    "product": [[1, 2], [1, 2]],
                    "final_configuration": "L2",
                    "final_vector": [0, 1],
                },
            }
        }
    )

    def to_json_line(self) -> str:
        return self.model_dump_json()


class InvariantReport(BaseModel):
    """Outcome of one invariant over a scan."""

    name: str
    cases: int = 0
    violations: int = 0
    first_counterexample: Optional[str] = None

    def record(self, ok: bool, case: str) -> None:
        self.cases += 1
        if not ok:
            self.violations += 1
            if self.first_counterexample is None:
                self.first_counterexample = case


class VerificationReport(BaseModel):
    """Result of the differential verification harness."""

    max_len: int
    max_pq: int
    strings_checked: int = 0
    mismatches: int = 0
    pairs_checked: int = 0
    violations: int = 0
    check_violations: int = Field(0, description="Violations of the string and bound invariants besides the oracle")
    invariants: List[InvariantReport] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return self.mismatches == 0 and all(inv.violations == 0 for inv in self.invariants)

    def failures(self) -> List[InvariantReport]:
        return [inv for inv in self.invariants if inv.violations > 0]

    def summary(self) -> str:
        line = (
            f"{self.mismatches} mismatches over {self.strings_checked} strings; "
            f"{self.violations} violations over all coprime pairs"
        )
        if self.check_violations:
            line += f"; {self.check_violations} violations of the string and bound checks"
        return line
