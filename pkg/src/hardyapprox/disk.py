"""
Pseudo-hyperbolic geometry of the unit disk.

Distances, Möbius automorphisms, uniform separation and interpolation
constants of finite sequences, norms of point evaluations on H^p and the
Carleson embedding constant of the discrete measure sum (1 - |z_j|^2) delta_{z_j}.

Points close to the unit circle lose their distance to the boundary in
floating point (``1 - 2**-60 == 1.0``).  A :class:`PointSequence` may
therefore carry an exact *boundary gap* representation
``z_j = anchor_j * (1 - gap_j)`` with ``|anchor_j| = 1``, and every quantity
below is then evaluated from the gaps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence, Union

import numpy as np

from .errors import DegenerateSequenceError, DomainError

#: Two points are considered coincident below this pseudo-hyperbolic distance.
COINCIDENCE_TOL = 1e-14

#: Default constant Lambda in kappa <= (Lambda / delta) (1 + log 1/delta).
DEFAULT_LAMBDA = 12.0

ComplexLike = Union[complex, float, np.ndarray]


def check_disk(z: ComplexLike, name: str = "z") -> np.ndarray:
    """Return ``z`` as a complex array, raising if any entry has modulus >= 1."""
    arr = np.asarray(z, dtype=complex)
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be finite")
    if np.any(np.abs(arr) >= 1.0):
        raise DomainError(f"{name} must lie in the open unit disk, got max |{name}| = {np.max(np.abs(arr))!r}")
    return arr


def _scalar(x):
    return x.item() if isinstance(x, np.ndarray) and x.ndim == 0 else x


def pseudo_hyperbolic_distance(z: ComplexLike, w: ComplexLike):
    """
    Pseudo-hyperbolic distance ``|z - w| / |1 - conj(w) z|``.

    Broadcasts over array arguments.  Symmetric, zero exactly on the
    diagonal and strictly below one inside the disk.
    """
    z = check_disk(z, "z")
    w = check_disk(w, "w")
    rho = np.abs(z - w) / np.abs(1.0 - np.conj(w) * z)
    # rounding can push the quotient to 1.0 for points very close to the circle
    rho = np.minimum(rho, np.nextafter(1.0, 0.0))
    return _scalar(rho)


def mobius_automorphism(a: ComplexLike, z: ComplexLike):
    """The involutive automorphism ``Phi_a(z) = (a - z) / (1 - conj(a) z)``."""
    a = check_disk(a, "a")
    z = check_disk(z, "z")
    return _scalar((a - z) / (1.0 - np.conj(a) * z))


def mobius_derivative(a: ComplexLike, z: ComplexLike):
    """Derivative of :func:`mobius_automorphism` in ``z``."""
    a = np.asarray(a, dtype=complex)
    z = np.asarray(z, dtype=complex)
    return _scalar((np.abs(a) ** 2 - 1.0) / (1.0 - np.conj(a) * z) ** 2)


def evaluation_norm(a: ComplexLike, p: float):
    """
    Norm of the point evaluation ``f -> f(a)`` on H^p.

    Equals ``(1 / (1 - |a|^2)) ** (1/p)``.
    """
    if not (p >= 1.0) or not math.isfinite(p):
        raise DomainError(f"p must satisfy 1 <= p < inf, got {p!r}")
    a = check_disk(a, "a")
    return _scalar((1.0 / (1.0 - np.abs(a) ** 2)) ** (1.0 / p))


@dataclass(frozen=True)
class PointSequence:
    """
    Ordered finite sequence of distinct points of the unit disk.

    Parameters
    ----------
    points : array of complex
        The points ``z_1, ..., z_n``.
    anchors, gaps : arrays of complex, optional
        Exact boundary representation ``z_j = anchors[j] * (1 - gaps[j])``
        with unimodular anchors.  When present, all separation data are
        computed from the gaps, which keeps full relative precision for
        points at distance ``1e-300`` from the circle.
    """

    points: np.ndarray
    anchors: Optional[np.ndarray] = None
    gaps: Optional[np.ndarray] = None
    _log_rho: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=complex))
        if pts.ndim != 1 or pts.size == 0:
            raise DomainError("a point sequence needs at least one point")
        if (self.anchors is None) != (self.gaps is None):
            raise DomainError("anchors and gaps must be given together")
        if self.gaps is None:
            check_disk(pts, "points")
        else:
            anchors = np.broadcast_to(np.asarray(self.anchors, dtype=complex), pts.shape).copy()
            gaps = np.asarray(self.gaps, dtype=complex).reshape(pts.shape)
            if not np.allclose(np.abs(anchors), 1.0, atol=1e-14):
                raise DomainError("anchors must be unimodular")
            if np.any(2.0 * gaps.real - np.abs(gaps) ** 2 <= 0.0):
                raise DomainError("gaps must describe points inside the disk")
            object.__setattr__(self, "anchors", anchors)
            object.__setattr__(self, "gaps", gaps)
        object.__setattr__(self, "points", pts)
        log_rho = _pairwise_log_rho(self)
        off = ~np.eye(pts.size, dtype=bool)
        if pts.size > 1 and np.any(log_rho[off] < math.log(COINCIDENCE_TOL)):
            i, j = np.argwhere((log_rho < math.log(COINCIDENCE_TOL)) & off)[0]
            raise DegenerateSequenceError(f"points {i} and {j} coincide (rho < {COINCIDENCE_TOL:g})")
        object.__setattr__(self, "_log_rho", log_rho)

    @classmethod
    def from_gaps(cls, gaps, anchor=1.0) -> "PointSequence":
        """Build ``anchor * (1 - gaps)`` keeping the exact gaps."""
        gaps = np.atleast_1d(np.asarray(gaps, dtype=complex))
        anchors = np.broadcast_to(np.asarray(anchor, dtype=complex), gaps.shape)
        return cls(anchors * (1.0 - gaps), anchors, gaps)

    def __len__(self) -> int:
        return self.points.size

    @property
    def n(self) -> int:
        return self.points.size

    def one_minus_abs2(self) -> np.ndarray:
        """``1 - |z_j|^2`` for every point."""
        if self.gaps is None:
            return 1.0 - np.abs(self.points) ** 2
        t = self.gaps
        return 2.0 * t.real - np.abs(t) ** 2

    def log_rho_matrix(self) -> np.ndarray:
        """Matrix of ``log rho(z_j, z_k)``; the diagonal is zero."""
        return self._log_rho.copy()

    def append(self, z: complex) -> "PointSequence":
        """Return a new sequence with ``z`` appended (gap data is dropped)."""
        return PointSequence(np.append(self.points, complex(z)))


def _pairwise_log_rho(seq: PointSequence) -> np.ndarray:
    z = seq.points
    n = z.size
    with np.errstate(divide="ignore"):
        num = np.abs(z[:, None] - z[None, :])
        den = np.abs(1.0 - np.conj(z)[None, :] * z[:, None])
        if seq.gaps is not None:
            t = seq.gaps
            same = np.isclose(seq.anchors[:, None], seq.anchors[None, :], rtol=0.0, atol=1e-15)
            num_g = np.abs(t[None, :] - t[:, None])
            den_g = np.abs(np.conj(t)[None, :] + t[:, None] - np.conj(t)[None, :] * t[:, None])
            num = np.where(same, num_g, num)
            den = np.where(same, den_g, den)
        log_rho = np.log(num) - np.log(den)
    log_rho = np.minimum(log_rho, 0.0)
    log_rho[np.arange(n), np.arange(n)] = 0.0
    return log_rho


def log_uniform_separation(seq: PointSequence) -> float:
    """Natural logarithm of the uniform separation constant (never underflows)."""
    return float(np.min(np.sum(seq.log_rho_matrix(), axis=1)))


def uniform_separation_constant(seq: PointSequence) -> float:
    """
    Uniform separation constant ``inf_j prod_{k != j} rho(z_j, z_k)``.

    The products are accumulated as sums of logarithms; the returned value
    may underflow to ``0.0`` for long sequences, in which case
    :func:`log_uniform_separation` still carries the information.
    """
    return math.exp(log_uniform_separation(seq))


@dataclass(frozen=True)
class SeparationData:
    """Separation constant and the two-sided bounds on the interpolation constant.

    All fields are also kept as logarithms since ``1/delta`` overflows for
    the sequences of interest.
    """

    delta: float
    log_delta: float
    kappa_lower: float
    kappa_upper: float
    log_kappa_lower: float
    log_kappa_upper: float
    lambda_constant: float = DEFAULT_LAMBDA
    form: str = "vgh"


def log_kappa_upper(log_delta: float, form: str = "vgh", lambda_constant: float = DEFAULT_LAMBDA) -> float:
    """
    Logarithm of the upper bound on the interpolation constant.

    ``form="vgh"`` gives ``(2e / delta) (1 + 2 log 1/delta)``;
    ``form="lambda"`` gives ``(Lambda / delta) (1 + log 1/delta)``.
    """
    L = -log_delta
    if L < 0:
        raise DomainError("delta must not exceed 1")
    if form == "vgh":
        return math.log(2.0 * math.e) + L + math.log1p(2.0 * L)
    if form == "lambda":
        return math.log(lambda_constant) + L + math.log1p(L)
    raise DomainError(f"unknown interpolation bound form {form!r}")


def separation_from_log_delta(log_delta: float, form: str = "vgh",
                              lambda_constant: float = DEFAULT_LAMBDA) -> SeparationData:
    log_delta = min(float(log_delta), 0.0)
    lku = log_kappa_upper(log_delta, form, lambda_constant)
    return SeparationData(
        delta=math.exp(log_delta),
        log_delta=log_delta,
        kappa_lower=_safe_exp(-log_delta),
        kappa_upper=_safe_exp(lku),
        log_kappa_lower=-log_delta,
        log_kappa_upper=lku,
        lambda_constant=lambda_constant,
        form=form,
    )


def interpolation_constant_bounds(seq: PointSequence, form: str = "vgh",
                                  lambda_constant: float = DEFAULT_LAMBDA) -> SeparationData:
    """Separation constant of ``seq`` with ``1/delta <= kappa <= kappa_upper``."""
    return separation_from_log_delta(log_uniform_separation(seq), form, lambda_constant)


def carleson_gamma_bound(seq: PointSequence) -> float:
    """Bound ``1 + 2 log(1/delta)`` on the kernel-test constant of the discrete measure."""
    return 1.0 - 2.0 * log_uniform_separation(seq)


def carleson_embedding_constant(seq: PointSequence) -> float:
    """
    Constant ``12 (1 + log 1/delta)`` of the embedding

        sum_j (1 - |z_j|^2) |f(z_j)|^p <= C ||f||_p^p,   f in H^p.
    """
    return 12.0 * (1.0 - log_uniform_separation(seq))


def geometric_test_sequence(sigma: float, n: int) -> PointSequence:
    """Real points ``u_j = 1 - sigma**j``, ``j = 1..n``, with exact gaps."""
    if not (0.0 < sigma < 1.0):
        raise DomainError(f"sigma must lie in (0, 1), got {sigma!r}")
    if n < 1:
        raise DomainError("n must be positive")
    gaps = sigma ** np.arange(1, n + 1, dtype=float)
    if np.any(gaps == 0.0):
        raise DomainError("sigma**n underflows; use fewer points")
    return PointSequence.from_gaps(gaps, 1.0)


def blaschke_product(zeros: Sequence[complex], z: ComplexLike) -> np.ndarray:
    """Finite Blaschke product ``prod_j (z_j - z)/(1 - conj(z_j) z)`` (unimodular factors dropped)."""
    z = np.asarray(z, dtype=complex)
    out = np.ones_like(z)
    for a in np.atleast_1d(np.asarray(zeros, dtype=complex)):
        out = out * (a - z) / (1.0 - np.conj(a) * z)
    return out


def hardy_norm(f: Union[Callable, Sequence[complex]], p: float, n_points: int = 4096,
               rtol: float = 1e-10, max_points: int = 1 << 20) -> float:
    """
    ``||f||_p`` on the unit circle by the trapezoidal rule.

    ``f`` is either a callable evaluated on boundary points or a coefficient
    array ``c_0, c_1, ...`` of a polynomial.  The rule is doubled until two
    successive values agree to ``rtol``.
    """
    if not (p >= 1.0):
        raise DomainError(f"p must be >= 1, got {p!r}")
    if callable(f):
        func = f
    else:
        coeffs = np.asarray(f, dtype=complex)
        func = lambda z: np.polynomial.polynomial.polyval(z, coeffs)  # noqa: E731
    prev = None
    m = n_points
    while True:
        t = 2.0 * np.pi * np.arange(m) / m
        val = float(np.mean(np.abs(func(np.exp(1j * t))) ** p)) ** (1.0 / p)
        if prev is not None and abs(val - prev) <= rtol * abs(val):
            return val
        if m >= max_points:
            return val
        prev = val
        m *= 2


def carleson_sum(seq: PointSequence, f: Callable, p: float) -> float:
    """``sum_j (1 - |z_j|^2) |f(z_j)|^p``."""
    return float(np.sum(seq.one_minus_abs2() * np.abs(f(seq.points)) ** p))


def _safe_exp(x: float) -> float:
    return math.exp(x) if x < 709.0 else math.inf
