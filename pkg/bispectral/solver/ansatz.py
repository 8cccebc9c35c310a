# bispectral/solver/ansatz.py
from __future__ import annotations
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from bispectral.errors import AnsatzError


class BAnsatz(BaseModel):
    """
    Finite search space for a right operator B = sum_{i<=max_order} d_z^i b_i(z)
    whose coefficient entries are Laurent polynomials with exponents in
    [laurent_low, laurent_high], a window that always contains 0.
    """

    max_order: int = Field(ge=0)
    laurent_low: int
    laurent_high: int
    size: int = Field(ge=1)

    model_config = ConfigDict(extra="forbid", frozen=True)

    @model_validator(mode="before")
    @classmethod
    def check_bounds(cls, data: Any) -> Any:
        if isinstance(data, dict):
            low, high = data.get("laurent_low"), data.get("laurent_high")
            if low is not None and high is not None and low > high:
                raise AnsatzError(f"empty Laurent window [{low}, {high}]")
            if low is not None and low > 0:
                raise AnsatzError(f"Laurent window must reach z^0, got laurent_low={low}")
            if high is not None and high < 0:
                raise AnsatzError(f"Laurent window must reach z^0, got laurent_high={high}")
            if data.get("max_order", 0) < 0:
                raise AnsatzError("max_order must be nonnegative")
        return data

    @property
    def unknowns(self) -> int:
        return (self.max_order + 1) * (self.laurent_high - self.laurent_low + 1) * self.size * self.size

    def doubled(self) -> "BAnsatz":
        return BAnsatz(
            max_order=max(2 * self.max_order, 1),
            laurent_low=min(2 * self.laurent_low, -1),
            laurent_high=2 * self.laurent_high if self.laurent_high > 0 else self.laurent_high,
            size=self.size,
        )

    def to_summary(self) -> Dict[str, int]:
        return {
            "max_order": self.max_order,
            "laurent_low": self.laurent_low,
            "laurent_high": self.laurent_high,
        }


class LAnsatz(BaseModel):
    """
    Search space for a left operator L = sum_{k<=max_order} (N_k(x) / d(x)) d_x^k
    with polynomial numerators of degree <= num_degree over a fixed
    denominator d(x). The denominator is given by its coefficients,
    constant term first.
    """

    max_order: int = Field(ge=0)
    num_degree: int = Field(ge=0)
    denominator: tuple
    size: int = Field(ge=1)

    model_config = ConfigDict(extra="forbid", frozen=True)

    @model_validator(mode="after")
    def check_denominator(self):
        if not self.denominator or not any(self.denominator):
            raise AnsatzError("left-operator denominator must be a nonzero polynomial")
        return self

    @property
    def unknowns(self) -> int:
        return (self.max_order + 1) * (self.num_degree + 1) * self.size * self.size

    def doubled(self) -> "LAnsatz":
        return LAnsatz(
            max_order=max(2 * self.max_order, 1),
            num_degree=max(2 * self.num_degree, 1),
            denominator=self.denominator,
            size=self.size,
        )

    def to_summary(self) -> Dict[str, int]:
        return {"max_order": self.max_order, "num_degree": self.num_degree}


def b_ansatz(max_order: int, laurent_low: int, laurent_high: int, size: int) -> BAnsatz:
    try:
        return BAnsatz(max_order=max_order, laurent_low=laurent_low, laurent_high=laurent_high, size=size)
    except ValueError as exc:
        raise AnsatzError(str(exc)) from exc


def l_ansatz(max_order: int, num_degree: int, denominator: Optional[tuple], size: int) -> LAnsatz:
    try:
        return LAnsatz(max_order=max_order, num_degree=num_degree, denominator=tuple(denominator or (1,)), size=size)
    except ValueError as exc:
        raise AnsatzError(str(exc)) from exc
