"""Simple (abscissa, value) curve container shared by the analytic and
Monte Carlo layers."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np


@dataclass(frozen=True)
class CorrelationCurve:
    x: np.ndarray
    y: np.ndarray
    yerr: Optional[np.ndarray] = None

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))
        object.__setattr__(self, "y", np.asarray(self.y, dtype=float))
        if self.yerr is not None:
            object.__setattr__(self, "yerr", np.asarray(self.yerr, dtype=float))
        if self.x.shape != self.y.shape:
            raise ValueError("x and y must have the same shape")
        if self.yerr is not None and self.yerr.shape != self.y.shape:
            raise ValueError("yerr must match y")
