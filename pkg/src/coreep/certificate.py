"""Residual certificates attached to every computed inverse.

A certificate carries the computed matrix, the residual of each defining
equation (Frobenius norm of lhs - rhs, or a rank difference for range
conditions), and the existence verdict.  ``exists=True`` requires every
equation residual to sit within the equality tolerance and every rank
residual to be exactly zero.  The certificate kind fixes which labels
appear.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

KIND_LABELS: dict[str, frozenset[str]] = {
    "moore_penrose": frozenset({"AXA=A", "XAX=X", "(AX)*=AX", "(XA)*=XA"}),
    "group": frozenset({"AXA=A", "XAX=X", "AX=XA"}),
    "drazin": frozenset({"AX=XA", "XAX=X", "A-AXA nilpotent"}),
    "core": frozenset({"AX^2=X", "(AX)*=AX", "XA^2=A"}),
    "core_ep": frozenset(
        {
            "XAX=X",
            "rank[X|A^k]=rank(A^k)",
            "rank(X)=rank(A^k)",
            "rank[X*|A^k]=rank(A^k)",
        }
    ),
    "one_three": frozenset({"AXA=A", "(AX)*=AX"}),
    "one_three_w": frozenset({"AWXWA=A", "(WAWX)*=WAWX"}),
    "weighted_core": frozenset(
        {
            "A(WX)^2=X",
            "(WAWX)*=WAWX",
            "XW(AW)^2=AW",
            "(WAW)X(WAW)=WAW",
            "X(WAW)X=X",
        }
    ),
    "weighted_gdrazin": frozenset(
        {
            "AWX=XWA",
            "XWAWX=X",
            "(A-AWXWA)W nilpotent",
            "A[(WA)^D]^2=[(AW)^D]^2A",
        }
    ),
    "weighted_core_ep": frozenset(
        {
            "A(WX)^2=X",
            "(WAWX)*=WAWX",
            "(AW)^k=XW(AW)^(k+1)",
            "WAWX=(WA)^k[(WA)^k]+",
            "rank[X|(AW)^k]=rank((AW)^k)",
        }
    ),
    "bc": frozenset({"XAB=B", "CAX=C", "X=BUX solvable", "X=XVC solvable"}),
}

# Optional labels a kind may carry in addition to its defining set.
EXTRA_LABELS: dict[str, frozenset[str]] = {
    "weighted_core_ep": frozenset({"X=M^(od,W2) formula"}),
}


@dataclass(frozen=True)
class InverseCertificate:
    """A computed inverse with the residuals of its defining equations."""

    kind: str
    value: np.ndarray
    residuals: dict[str, float] = field(default_factory=dict)
    exists: bool = True

    def __post_init__(self) -> None:
        if self.kind not in KIND_LABELS:
            raise ValueError(f"unknown certificate kind {self.kind!r}")
        required = KIND_LABELS[self.kind]
        allowed = required | EXTRA_LABELS.get(self.kind, frozenset())
        got = set(self.residuals)
        if not required.issubset(got) or not got.issubset(allowed):
            raise ValueError(
                f"certificate kind {self.kind!r} requires labels {sorted(required)}, got {sorted(got)}"
            )
        for label, val in self.residuals.items():
            if not (val >= 0.0) or not np.isfinite(val):
                raise ValueError(f"residual {label!r} must be a nonnegative real, got {val!r}")

    @property
    def worst_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)
