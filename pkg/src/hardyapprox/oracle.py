"""
Singular-value oracle for composition operators on H^2.

Two independent routes produce *lower* bounds for the approximation numbers
``a_n(C_phi)``:

* the compression of ``C_phi`` to polynomials of degree ``< N`` (entry
  ``(m, k)`` is the ``m``-th Taylor coefficient of ``phi**k``), whose
  singular values increase with ``N``;
* the adjoint restricted to a span of reproducing kernels, using
  ``C_phi^* k_u = k_{phi(u)}``; its singular values come from a generalized
  eigenproblem of two kernel Gram matrices solved in extended precision.

Both are restrictions of the operator, so each singular value is dominated by
the true ``a_n``.  :func:`oracle_table` takes the larger of the two.
"""

from __future__ import annotations

import csv
import io
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
import scipy.linalg

from .disk import check_disk
from .errors import AccuracyError, DomainError
from .symbols import (RESIDUAL_TOL, SymbolSpec, normalize_at, power_coefficient_block,
                      pseudo_hyperbolic_derivative, sampling_radius)

log = logging.getLogger(__name__)

#: Largest truncation used when checking convergence by doubling.
MAX_TRUNCATION = 2048
CONVERGENCE_RTOL = 1e-6


@dataclass(frozen=True)
class TruncatedMatrix:
    """``N x N`` matrix of ``C_phi`` on the monomial basis.

    Column ``k`` holds the first ``N`` Taylor coefficients of ``phi**k``.
    """

    entries: np.ndarray
    truncation: int
    symbol_name: str
    residual: float = 0.0
    symbol: Optional[SymbolSpec] = field(default=None, compare=False, repr=False)

    def norm_bound(self) -> float:
        """Littlewood bound ``sqrt((1 + |phi(0)|) / (1 - |phi(0)|))`` on ``||C_phi||``."""
        c = abs(self.entries[0, 1]) if self.truncation > 1 else 0.0
        return math.sqrt((1.0 + c) / (1.0 - c))


@dataclass(frozen=True)
class SingularValueTable:
    """Descending singular values with truncation metadata.

    ``converged_upto`` is the largest ``n`` such that every ``s_1..s_n`` was
    stable to ``1e-6`` relative under doubling of the truncation; ``0`` when
    no check was run.
    """

    values: np.ndarray
    truncation: int
    converged_upto: int = 0
    nonconverged: bool = False
    source: str = "monomial"

    def __len__(self) -> int:
        return self.values.size

    def converged(self, n: int) -> bool:
        return n <= self.converged_upto

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "sigma", "truncation", "converged"])
        for i, s in enumerate(self.values, start=1):
            w.writerow([i, repr(float(s)), self.truncation, str(self.converged(i)).lower()])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "SingularValueTable":
        rows = list(csv.DictReader(io.StringIO(text)))
        values = np.array([float(r["sigma"]) for r in rows])
        flags = [r["converged"] == "true" for r in rows]
        upto = 0
        for f in flags:
            if not f:
                break
            upto += 1
        return cls(values, int(rows[0]["truncation"]) if rows else 0, upto)


# ---------------------------------------------------------------------------
# Monomial truncation
# ---------------------------------------------------------------------------

def build_matrix(phi: SymbolSpec, N: int, oversample: int = 8, batch: int = 128) -> TruncatedMatrix:
    """
    Matrix of ``C_phi`` compressed to polynomials of degree ``< N``.

    Columns are built in batches from one set of boundary-circle samples.
    Real symbols give a real matrix.
    """
    if N < 2 or N & (N - 1):
        raise DomainError(f"truncation must be a power of two >= 2, got {N}")
    r = sampling_radius(N)
    phi0 = phi.fixed_value_at_zero
    for attempt in range(2):
        out = np.empty((N, N), dtype=complex)
        residual = 0.0
        for k0 in range(0, N, batch):
            ks = np.arange(k0, min(N, k0 + batch))
            block, res = power_coefficient_block(phi, N, ks, r, oversample)
            out[:, ks] = block
            residual = max(residual, res)
        if residual <= RESIDUAL_TOL:
            break
        r = math.sqrt(r)
    else:
        raise AccuracyError(f"matrix columns fail the reconstruction check (residual {residual:.3g})")
    if phi0 == 0:
        # phi**k vanishes to order k at the origin
        out = np.tril(out)
    out[:, 0] = 0.0
    out[0, 0] = 1.0
    if phi.real:
        out = out.real.copy()
    return TruncatedMatrix(out, N, phi.label, residual, phi)


def _svdvals(a: np.ndarray) -> np.ndarray:
    return scipy.linalg.svdvals(a, check_finite=False)


def approximation_numbers(M: TruncatedMatrix, max_n: Optional[int] = None, check_convergence: bool = True,
                          max_doublings: int = 2, rtol: float = CONVERGENCE_RTOL) -> SingularValueTable:
    """
    Singular values ``s_1 >= ... >= s_max_n`` of a truncated matrix.

    With ``check_convergence`` the truncation is doubled (up to
    :data:`MAX_TRUNCATION`) and ``converged_upto`` records how many leading
    values moved by less than ``rtol``.  ``nonconverged`` is set when
    ``s_max_n`` is still moving after the allowed doublings.
    """
    N = M.truncation
    max_n = N if max_n is None else int(max_n)
    if not 1 <= max_n <= N:
        raise DomainError(f"max_n must lie in [1, {N}]")
    s = _svdvals(M.entries)[:max_n]
    if not check_convergence or M.symbol is None:
        return SingularValueTable(s, N, 0, False)

    prev = s
    converged_upto = 0
    nonconverged = True
    size = N
    for _ in range(max_doublings):
        if 2 * size > MAX_TRUNCATION:
            break
        size *= 2
        nxt = _svdvals(build_matrix(M.symbol, size).entries)[:max_n]
        rel = np.abs(nxt - prev) / np.maximum(np.abs(nxt), np.finfo(float).tiny)
        ok = rel < rtol
        upto = int(np.argmin(ok)) if not np.all(ok) else max_n
        if size == 2 * N:
            converged_upto = upto
        if ok[-1]:
            nonconverged = False
            break
        prev = nxt
    if nonconverged:
        log.info("s_%d of %s not stable under doubling", max_n, M.symbol_name)
    return SingularValueTable(s, N, converged_upto, nonconverged)


# ---------------------------------------------------------------------------
# Reproducing kernels
# ---------------------------------------------------------------------------

def kernel_vector(a: complex, N: int) -> np.ndarray:
    """Monomial coefficients ``(1, conj(a), conj(a)^2, ...)`` of the kernel at ``a``."""
    a = complex(check_disk(a, "a"))
    return np.conj(a) ** np.arange(N)


def kernel_gram(points: Sequence[complex]) -> np.ndarray:
    """``G[i, j] = <k_{z_j}, k_{z_i}> = 1 / (1 - conj(z_j) z_i)``."""
    z = check_disk(points, "points")
    return 1.0 / (1.0 - np.conj(z)[None, :] * z[:, None])


def functional_norm(points: Sequence[complex], coeffs: Sequence[complex]) -> float:
    """H^2 dual norm of ``sum_j c_j e_{z_j}`` computed from the kernel Gram matrix."""
    c = np.asarray(coeffs, dtype=complex)
    G = kernel_gram(points)
    # the functional is represented by sum_j conj(c_j) k_{z_j}
    v = np.conj(c)
    return float(math.sqrt(max(np.real(np.conj(v) @ G @ v), 0.0)))


def adjoint_kernel_check(phi: SymbolSpec, a: complex, N: int,
                         M: Optional[TruncatedMatrix] = None) -> float:
    """
    Relative residual of ``C_phi^* k_a = k_{phi(a)}`` on the first ``N``
    monomial coordinates.
    """
    if M is None:
        M = build_matrix(phi, N)
    ka = kernel_vector(a, M.truncation)
    b = complex(phi.evaluate(np.array(a, dtype=complex)))
    kb = kernel_vector(b, M.truncation)
    lhs = np.conj(M.entries).T @ ka
    return float(np.linalg.norm(lhs - kb) / np.linalg.norm(kb))


def default_kernel_points(max_n: int, sigma: float = 0.7) -> Tuple[np.ndarray, np.ndarray]:
    """Anchors and gaps of ``0`` and ``+-(1 - sigma**j)``."""
    J = max(20, max_n + 10)
    g = sigma ** np.arange(1, J + 1, dtype=float)
    anchors = np.concatenate([[1.0], np.ones(J), -np.ones(J)]).astype(complex)
    gaps = np.concatenate([[1.0], g, g]).astype(complex)
    return anchors, gaps


def kernel_approximation_numbers(phi: SymbolSpec, max_n: int, anchors=None, gaps=None,
                                 dps: int = 60) -> SingularValueTable:
    """
    Singular values of ``C_phi^*`` restricted to the span of the kernels at
    ``anchor * (1 - gap)``.

    Computed as square roots of the generalized eigenvalues of the kernel
    Gram matrices of the images and of the points, in ``dps`` decimal digits.
    Each value is a lower bound for the corresponding ``a_n(C_phi)``.
    """
    if phi.radial_only:
        raise DomainError(f"{phi.name} is only known on a radius")
    if anchors is None:
        anchors, gaps = default_kernel_points(max_n)
    anchors = np.asarray(anchors, dtype=complex)
    gaps = np.asarray(gaps, dtype=complex)
    m = anchors.size
    if max_n > m:
        raise DomainError(f"need at least {max_n} kernels, got {m}")

    if phi.boundary_map is not None and phi.real and np.all(anchors.imag == 0):
        img_anchors, img_gaps = phi.boundary_map(anchors, gaps)
        img_anchors = np.asarray(img_anchors, dtype=complex)
        img_gaps = np.asarray(img_gaps, dtype=complex)
    else:
        img = np.asarray(phi.evaluate(anchors * (1.0 - gaps)), dtype=complex)
        img_anchors, img_gaps = np.ones(m, dtype=complex), 1.0 - img

    with mpmath.workdps(dps):
        u = [mpmath.mpc(a) * (1 - mpmath.mpc(t)) for a, t in zip(anchors, gaps)]
        v = [mpmath.mpc(a) * (1 - mpmath.mpc(t)) for a, t in zip(img_anchors, img_gaps)]
        B = mpmath.matrix(m, m)
        A = mpmath.matrix(m, m)
        for i in range(m):
            for j in range(m):
                B[i, j] = 1 / (1 - mpmath.conj(u[j]) * u[i])
                A[i, j] = 1 / (1 - mpmath.conj(v[j]) * v[i])
        L = mpmath.cholesky(B)
        Li = mpmath.inverse(L)
        S = Li * A * Li.transpose_conj()
        S = (S + S.transpose_conj()) / 2
        real = all(mpmath.im(x) == 0 for x in S)
        if real:
            S = S.apply(mpmath.re)
            ev = mpmath.eigsy(S, eigvals_only=True)
        else:
            ev = mpmath.eighe(S, eigvals_only=True)
        vals = sorted((math.sqrt(max(float(mpmath.re(e)), 0.0)) for e in ev), reverse=True)
    return SingularValueTable(np.array(vals[:max_n]), m, 0, False, source="kernel")


def oracle_table(phi: SymbolSpec, max_n: int, truncation: int = 1024, kernels: bool = True,
                 check_convergence: bool = True, dps: int = 60) -> SingularValueTable:
    """Entrywise maximum of the monomial and kernel lower bounds."""
    M = build_matrix(phi, truncation)
    table = approximation_numbers(M, max_n, check_convergence=check_convergence)
    if not kernels or phi.radial_only:
        return table
    kt = kernel_approximation_numbers(phi, max_n, dps=dps)
    return SingularValueTable(np.maximum(table.values, kt.values), table.truncation,
                              table.converged_upto, table.nonconverged, source="monomial+kernel")


# ---------------------------------------------------------------------------
# Eigenvalues of normalised symbols
# ---------------------------------------------------------------------------

def eigenvalues_normalized(phi: SymbolSpec, a: complex, count: int, N: int = 512) -> np.ndarray:
    """
    The ``count`` largest eigenvalues of the truncated ``C_{psi_a}``, with
    ``psi_a = Phi_{phi(a)} o phi o Phi_a``, sorted by decreasing modulus.
    """
    sharp = pseudo_hyperbolic_derivative(phi, a)
    if sharp <= 0:
        raise DomainError("phi# vanishes at a; the eigenvalues are degenerate")
    if sharp ** count < 1e-12:
        warnings.warn(f"|psi_a'(0)|^{count} = {sharp ** count:.2e} is below 1e-12; "
                      "trailing eigenvalues are ill-conditioned", RuntimeWarning, stacklevel=2)
    psi = normalize_at(phi, a)
    M = build_matrix(psi, N)
    # the matrix is lower triangular; its transpose lets LAPACK deflate at once
    ev = scipy.linalg.eigvals(M.entries.T, check_finite=False)
    order = np.argsort(-np.abs(ev), kind="stable")
    return ev[order][:count]


# ---------------------------------------------------------------------------
# s-numbers of small matrices by randomized search
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SNumbers:
    a_n: float
    b_n: float
    c_n: float
    rounding: float = 0.0

    @property
    def gap(self) -> float:
        """Search gap ``|c_n - b_n|`` plus the floating-point allowance."""
        return abs(self.c_n - self.b_n) + self.rounding


def _random_frames(rng, d, k, count):
    G = rng.standard_normal((count, d, k)) + 1j * rng.standard_normal((count, d, k))
    Q, _ = np.linalg.qr(G)
    return Q


def _search(M, k, objective, draws, rng, maximize):
    """(1 + lambda) search over k-frames in C^d; ``objective`` maps a stack of frames to scores."""
    d = M.shape[1]
    pop = max(1, min(100, draws // 10))
    rounds = max(1, draws // pop)
    frames = _random_frames(rng, d, k, pop)
    scores = objective(frames)
    sign = 1.0 if maximize else -1.0
    best_i = int(np.argmax(sign * scores))
    best, best_score = frames[best_i], scores[best_i]
    step = 0.5
    for _ in range(rounds - 1):
        noise = rng.standard_normal((pop, d, k)) + 1j * rng.standard_normal((pop, d, k))
        cand, _ = np.linalg.qr(best[None] + step * noise)
        sc = objective(cand)
        i = int(np.argmax(sign * sc))
        if sign * sc[i] > sign * best_score:
            best, best_score = cand[i], sc[i]
            step = min(step * 1.5, 2.0)
        else:
            step = max(step * 0.6, 1e-8)
    return float(best_score)


def snumber_cross_check(M: np.ndarray, n: int, draws: int = 10_000, seed: int = 0) -> SNumbers:
    """
    Approximation, Bernstein and Gelfand numbers of a small matrix.

    ``a_n`` is exact (``n``-th singular value).  ``b_n`` is the best value of
    ``min_{x in S_E} |Mx|`` found over ``n``-dimensional subspaces ``E`` and
    ``c_n`` the best ``||M|_L||`` over subspaces of codimension ``n - 1``,
    each from ``draws`` randomized subspace evaluations, so that
    ``b_n <= a_n <= c_n`` up to rounding.  The reported ``gap`` adds
    ``8 eps ||M||`` to ``|c_n - b_n|`` to cover that rounding.
    """
    M = np.asarray(M, dtype=complex)
    d = M.shape[1]
    if max(M.shape) > 8:
        raise DomainError("brute-force s-numbers are limited to dimension 8")
    if not 1 <= n <= d:
        raise DomainError(f"n must lie in [1, {d}]")
    rng = np.random.default_rng(seed)
    sv = _svdvals(M)
    a_n = float(sv[n - 1]) if n <= min(M.shape) else 0.0
    rounding = 8.0 * np.finfo(float).eps * float(sv[0]) if sv.size else 0.0

    def smallest(frames):
        return np.linalg.svd(M[None] @ frames, compute_uv=False)[:, -1]

    def largest(frames):
        return np.linalg.svd(M[None] @ frames, compute_uv=False)[:, 0]

    b_n = _search(M, n, smallest, draws, rng, maximize=True)
    c_n = _search(M, d - n + 1, largest, draws, rng, maximize=False)
    return SNumbers(a_n, b_n, c_n, rounding)
