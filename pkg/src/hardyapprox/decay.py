"""
Log-domain least-squares fits of decay laws.

Three laws are supported::

    geometric   log a_n = n log r + c
    stretched   log a_n = -b sqrt(n) + d log n + c      (d free or fixed)
    cusp        log a_n = -b n / log n + c
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .bounds import BoundReport
from .errors import DomainError
from .oracle import SingularValueTable

#: Singular values below this are treated as SVD noise.
NOISE_FLOOR = 1e-13

KINDS = ("geometric", "stretched", "cusp")


class FitError(DomainError):
    """Input unsuitable for a fit (nonpositive values, too few points, range mismatch)."""


@dataclass(frozen=True)
class DecayModel:
    kind: str
    fitted: Dict[str, float]
    r_squared: float
    n_range: Tuple[int, int]
    n_params: int
    residuals: np.ndarray = field(repr=False, compare=False, default=None)

    def log_predict(self, n) -> np.ndarray:
        n = np.asarray(n, dtype=float)
        f = self.fitted
        if self.kind == "geometric":
            return n * math.log(f["r"]) + f["c"]
        if self.kind == "stretched":
            return -f["b"] * np.sqrt(n) + f["d"] * np.log(n) + f["c"]
        return -f["b"] * n / np.log(n) + f["c"]

    def predict(self, n) -> np.ndarray:
        return np.exp(self.log_predict(n))

    @property
    def rate(self) -> float:
        """Decay parameter: ``r`` (geometric) or ``b``."""
        return self.fitted["r"] if self.kind == "geometric" else self.fitted["b"]

    def to_dict(self) -> Dict[str, object]:
        return {"kind": self.kind, "parameters": dict(self.fitted), "r_squared": self.r_squared,
                "n_range": list(self.n_range)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def _extract(values, n_range) -> Tuple[np.ndarray, np.ndarray]:
    if isinstance(values, SingularValueTable):
        v = np.asarray(values.values, dtype=float)
        n = np.arange(1, v.size + 1)
        keep = v >= NOISE_FLOOR
        n, logv = n[keep], np.log(np.where(keep, v, 1.0)[keep])
    elif isinstance(values, BoundReport):
        n, logv = values.n_values, values.log_values
    else:
        v = np.asarray(values, dtype=float)
        if v.ndim == 2 and v.shape[0] == 2:
            n, v = v[0].astype(int), v[1]
        else:
            n = np.arange(1, v.size + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            logv = np.where(v > 0, np.log(np.abs(v)), np.nan)
    if n_range is not None:
        sel = (n >= n_range[0]) & (n <= n_range[1])
        n, logv = n[sel], logv[sel]
    if not np.all(np.isfinite(logv)):
        raise FitError("values must be positive on the fit range")
    return np.asarray(n, dtype=float), np.asarray(logv, dtype=float)


def fit(values: Union[SingularValueTable, BoundReport, Sequence[float]], kind: str,
        n_range: Optional[Tuple[int, int]] = None, d: Optional[float] = None) -> DecayModel:
    """
    Fit one decay law by least squares on ``log a_n``.

    Parameters
    ----------
    values : SingularValueTable, BoundReport or sequence
        A plain sequence is read as ``a_1, a_2, ...``; a ``(2, m)`` array as
        rows ``(n, a_n)``.  Singular values below ``1e-13`` are dropped;
        bound reports are fitted on their log values.
    kind : {"geometric", "stretched", "cusp"}
    n_range : (int, int), optional
        Inclusive index window.
    d : float, optional
        Fixes the ``log n`` coefficient of the stretched law.
    """
    if kind not in KINDS:
        raise FitError(f"unknown decay law {kind!r}; expected one of {KINDS}")
    n, y = _extract(values, n_range)
    if n.size < 4:
        raise FitError(f"need at least 4 points in the fit range, got {n.size}")
    if kind == "geometric":
        cols, names = [n, np.ones_like(n)], ["log_r", "c"]
    elif kind == "stretched":
        if d is None:
            cols, names = [-np.sqrt(n), np.log(n), np.ones_like(n)], ["b", "d", "c"]
        else:
            y = y - d * np.log(n)
            cols, names = [-np.sqrt(n), np.ones_like(n)], ["b", "c"]
    else:
        if np.any(n < 2):
            raise FitError("the cusp law needs n >= 2")
        cols, names = [-n / np.log(n), np.ones_like(n)], ["b", "c"]
    A = np.column_stack(cols)
    coef, *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = y - A @ coef
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot if ss_tot > 0 else 1.0
    r2 = min(max(r2, 0.0), 1.0)
    params = dict(zip(names, map(float, coef)))
    if kind == "geometric":
        params = {"r": math.exp(params["log_r"]), "c": params["c"]}
    elif kind == "stretched" and d is not None:
        params["d"] = float(d)
    return DecayModel(kind, params, r2, (int(n.min()), int(n.max())), len(names), resid)


def compare(models: Sequence[DecayModel]) -> List[DecayModel]:
    """Rank models by ``r_squared`` (descending), fewer parameters first on ties."""
    models = list(models)
    if not models:
        return []
    ranges = {m.n_range for m in models}
    if len(ranges) > 1:
        raise FitError(f"models were fitted on different ranges: {sorted(ranges)}")
    return sorted(models, key=lambda m: (-round(m.r_squared, 12), m.n_params))


def fit_all(values, n_range=None) -> List[DecayModel]:
    """Fit all three laws and return them ranked."""
    return compare([fit(values, k, n_range) for k in KINDS])
