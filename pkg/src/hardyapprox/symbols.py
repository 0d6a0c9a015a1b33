"""
Analytic self-maps of the unit disk used as composition symbols.

Every symbol is a :class:`SymbolSpec`: a named, immutable bundle of an
evaluator, its derivative and, for real symbols, an exact *boundary map*
sending a point ``anchor * (1 - t)`` near the circle to the boundary-gap
representation of its image.  Radial symbols additionally carry a
:class:`Modulus` ``omega`` with ``1 - phi(r) <= omega(1 - r)``.

Symbols can be built from a short text form, ``name:key=value,...``::

    >>> parse_symbol("lens:theta=0.5").name
    'lens'
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

import numpy as np
from scipy.optimize import brentq

from .disk import check_disk, mobius_automorphism, mobius_derivative
from .errors import AccuracyError, ConstructionError, DomainError


@dataclass(frozen=True)
class Modulus:
    """A modulus of continuity ``omega`` together with its inverse.

    ``log_inverse(h)`` returns ``log omega^{-1}(h)`` and must stay finite
    where ``omega^{-1}`` itself underflows.
    """

    name: str
    omega: Callable[[float], float]
    inverse: Callable[[float], float]
    log_inverse: Callable[[float], float]
    rigorous: bool = True
    params: Dict[str, float] = field(default_factory=dict)


BoundaryMap = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class SymbolSpec:
    """
    An analytic self-map ``phi`` of the unit disk.

    Attributes
    ----------
    name : str
        Symbol family name, as used in the text grammar.
    parameters : dict
        Family parameters (``theta``, ``eps``, ``a``, ...).
    evaluate, derivative : callables
        Vectorised ``phi`` and ``phi'``.
    modulus : Modulus, optional
        Radial modulus for real symbols.
    boundary_map : callable, optional
        ``(anchors, gaps) -> (anchors', gaps')`` for real anchors ``+-1``,
        exact images of points ``anchor * (1 - gap)``.
    real : bool
        ``phi`` takes real values on ``(-1, 1)``.
    radial_only : bool
        Only the restriction to ``[0, 1)`` is available.
    """

    name: str
    parameters: Dict[str, complex]
    evaluate: Callable
    derivative: Optional[Callable] = None
    modulus: Optional[Modulus] = None
    boundary_map: Optional[BoundaryMap] = None
    real: bool = False
    radial_only: bool = False

    def __call__(self, z):
        return self.evaluate(z)

    @property
    def fixed_value_at_zero(self) -> complex:
        return complex(self.evaluate(np.array(0.0)))

    @property
    def label(self) -> str:
        if not self.parameters:
            return self.name
        args = ",".join(f"{k}={_fmt(v)}" for k, v in self.parameters.items())
        return f"{self.name}:{args}"


def _fmt(v) -> str:
    if isinstance(v, complex) and v.imag == 0:
        v = v.real
    return repr(v) if not isinstance(v, float) else f"{v:g}"


def _real_out(z_in, out):
    # keep real dtype for real input so radial code stays real
    if np.isrealobj(z_in):
        return np.real(out)
    return out


# ---------------------------------------------------------------------------
# Elementary symbols
# ---------------------------------------------------------------------------

def identity() -> SymbolSpec:
    return SymbolSpec(
        name="identity",
        parameters={},
        evaluate=lambda z: np.asarray(z) + 0.0,
        derivative=lambda z: np.ones_like(np.asarray(z, dtype=complex)),
        boundary_map=lambda anchors, gaps: (anchors, gaps),
        real=True,
    )


def constant(c: complex) -> SymbolSpec:
    c = complex(c)
    if abs(c) >= 1:
        raise DomainError("a constant symbol must lie in the open disk")
    return SymbolSpec(
        name="constant",
        parameters={"c": c.real if c.imag == 0 else c},
        evaluate=lambda z: np.full(np.shape(z), c),
        derivative=lambda z: np.zeros(np.shape(z), dtype=complex),
        real=c.imag == 0,
    )


def dilation(c: complex) -> SymbolSpec:
    """The map ``z -> c z`` with ``0 < |c| <= 1``."""
    c = complex(c)
    if not (0 < abs(c) <= 1):
        raise DomainError("dilation factor must satisfy 0 < |c| <= 1")
    rot, mod = c / abs(c), abs(c)

    def bmap(anchors, gaps):
        return anchors * rot, (1.0 - mod) + mod * np.asarray(gaps)

    return SymbolSpec(
        name="dilation",
        parameters={"c": c.real if c.imag == 0 else c},
        evaluate=lambda z: _real_out(z, c * np.asarray(z)) if c.imag == 0 else c * np.asarray(z),
        derivative=lambda z: np.full(np.shape(z), c),
        boundary_map=bmap,
        real=c.imag == 0,
    )


def automorphism(a: complex) -> SymbolSpec:
    """The involution ``Phi_a``; real ``a`` gives a real symbol with a boundary map."""
    a = complex(a)
    check_disk(a, "a")
    bmap = None
    if a.imag == 0:
        ar = a.real

        def bmap(anchors, gaps):
            anchors = np.asarray(anchors, dtype=complex)
            t = np.asarray(gaps)
            plus = np.real(anchors) > 0
            # Phi_a(1 - t) = -1 + t(1+a)/(1-a+at);  Phi_a(-1 + t) = 1 - t(1-a)/(1+a-at)
            g_plus = t * (1 + ar) / (1 - ar + ar * t)
            g_minus = t * (1 - ar) / (1 + ar - ar * t)
            return np.where(plus, -1.0 + 0j, 1.0 + 0j), np.where(plus, g_plus, g_minus)

    return SymbolSpec(
        name="automorphism",
        parameters={"a": a.real if a.imag == 0 else a},
        evaluate=lambda z: _real_out(z, (a - np.asarray(z)) / (1 - np.conj(a) * np.asarray(z)))
        if a.imag == 0 else (a - np.asarray(z)) / (1 - np.conj(a) * np.asarray(z)),
        derivative=lambda z: mobius_derivative(a, z),
        boundary_map=bmap,
        real=a.imag == 0,
    )


# ---------------------------------------------------------------------------
# Lens maps
# ---------------------------------------------------------------------------

def lens_map(theta: float, z):
    """
    Lens map ``((1+z)^t - (1-z)^t) / ((1+z)^t + (1-z)^t)`` with principal powers.

    Real input gives real output; ``theta = 1`` is the identity.  Boundary
    points are accepted (the map extends continuously to the closed disk).
    """
    if not (0.0 < theta <= 1.0):
        raise DomainError(f"lens parameter must lie in (0, 1], got {theta!r}")
    arr = np.asarray(z)
    if np.any(np.abs(arr) > 1.0 + 1e-14):
        raise DomainError("the lens map is evaluated on the closed disk only")
    with np.errstate(divide="ignore"):
        if np.isrealobj(arr):
            A = (1.0 + arr) ** theta
            B = (1.0 - arr) ** theta
        else:
            A = np.exp(theta * np.log(1.0 + arr))
            B = np.exp(theta * np.log(1.0 - arr))
    return (A - B) / (A + B)


def lens_derivative(theta: float, z):
    arr = np.asarray(z, dtype=complex)
    A = np.exp(theta * np.log(1.0 + arr))
    B = np.exp(theta * np.log(1.0 - arr))
    return 4.0 * theta * (A / (1.0 + arr)) * (B / (1.0 - arr)) / (A + B) ** 2


def lens_gap(theta: float, t):
    """Exact ``1 - lens(1 - t)`` for real ``0 < t <= 1``."""
    t = np.asarray(t, dtype=float)
    return 2.0 * t ** theta / ((2.0 - t) ** theta + t ** theta)


def lens_modulus(theta: float) -> Modulus:
    """
    Power modulus ``omega(h) = C h**theta`` for the lens map, ``C = 2**(1 - theta)``.

    ``1 - lens(1 - t) = 2 t^theta / ((2 - t)^theta + t^theta)`` and the
    denominator increases on ``[0, 1]``, so the supremum of
    ``(1 - lens(1 - t)) / t**theta`` is its limit ``2**(1 - theta)`` at ``t = 0``.
    """
    C = 2.0 ** (1.0 - theta)
    logC = math.log(C)
    return Modulus(
        name="power",
        omega=lambda h: C * np.asarray(h, dtype=float) ** theta,
        inverse=lambda h: (np.asarray(h, dtype=float) / C) ** (1.0 / theta),
        log_inverse=lambda h: (np.log(h) - logC) / theta,
        rigorous=True,
        params={"C": C, "theta": theta},
    )


def lens(theta: float) -> SymbolSpec:
    if not (0.0 < theta <= 1.0):
        raise DomainError(f"lens parameter must lie in (0, 1], got {theta!r}")

    def bmap(anchors, gaps):
        # odd symbol: the gap is the same at both ends
        return np.asarray(anchors, dtype=complex), lens_gap(theta, np.real(gaps))

    return SymbolSpec(
        name="lens",
        parameters={"theta": float(theta)},
        evaluate=lambda z: lens_map(theta, z),
        derivative=lambda z: lens_derivative(theta, z),
        modulus=lens_modulus(theta) if theta < 1 else None,
        boundary_map=bmap,
        real=True,
    )


# ---------------------------------------------------------------------------
# Cusp map (radial profile only)
# ---------------------------------------------------------------------------

def _cusp_gap_from_t(t):
    t = np.asarray(t, dtype=float)
    x = t / (2.0 - t)
    return 1.0 / (1.0 + (2.0 / np.pi) * np.log(1.0 / (2.0 * np.arctan(x))))


def cusp_radial(r):
    """
    Radial profile ``chi(r)`` of the cusp map on ``[0, 1)``:

        1 - chi(r) = 1 / (1 + (2/pi) log[1 / (2 arctan((1 - r)/(1 + r)))])
    """
    arr = np.asarray(r)
    if np.iscomplexobj(arr):
        if np.any(arr.imag != 0):
            raise DomainError("the cusp map is only available on [0, 1)")
        arr = arr.real
    arr = arr.astype(float)
    if np.any((arr < 0.0) | (arr >= 1.0)):
        raise DomainError("cusp_radial needs 0 <= r < 1")
    out = 1.0 - _cusp_gap_from_t(1.0 - arr)
    return out.item() if out.ndim == 0 else out


def _cusp_derivative(r):
    r = np.asarray(r, dtype=float)
    x = (1.0 - r) / (1.0 + r)
    A = np.arctan(x)
    L = np.log(1.0 / (2.0 * A))
    dL = 2.0 / ((1.0 + r) ** 2 * (1.0 + x ** 2) * A)
    return (2.0 / np.pi) * dL / (1.0 + (2.0 / np.pi) * L) ** 2


def cusp_modulus() -> Modulus:
    """``omega(x) = 2 / log(1/x)`` and ``omega^{-1}(h) = exp(-2/h)``."""
    return Modulus(
        name="log",
        omega=lambda x: 2.0 / np.log(1.0 / np.asarray(x, dtype=float)),
        inverse=lambda h: np.exp(-2.0 / np.asarray(h, dtype=float)),
        log_inverse=lambda h: -2.0 / np.asarray(h, dtype=float),
        rigorous=True,
    )


def cusp() -> SymbolSpec:
    def bmap(anchors, gaps):
        if np.any(np.real(anchors) < 0):
            raise DomainError("the cusp profile is only known on [0, 1)")
        return np.asarray(anchors, dtype=complex), _cusp_gap_from_t(np.real(gaps))

    return SymbolSpec(
        name="cusp",
        parameters={},
        evaluate=cusp_radial,
        derivative=_cusp_derivative,
        modulus=cusp_modulus(),
        boundary_map=bmap,
        real=True,
        radial_only=True,
    )


# ---------------------------------------------------------------------------
# Shapiro-Taylor maps
# ---------------------------------------------------------------------------

def half_disk_map(z):
    """Conformal map of the disk onto ``{Re w > 0, |w| < 1}`` sending 1 to 0 and -1 to 1."""
    z = np.asarray(z, dtype=complex)
    w = (z - 1j) / (1j * z - 1.0)
    s = np.sqrt(w)
    return (s - 1j) / (-1j * s + 1.0)


def _half_disk_derivative(z):
    z = np.asarray(z, dtype=complex)
    w = (z - 1j) / (1j * z - 1.0)
    s = np.sqrt(w)
    return (2.0 / (1.0 - 1j * s) ** 2) * (1.0 / (2.0 * s)) * (-2.0 / (1j * z - 1.0) ** 2)


def _half_disk_real_from_gap(t):
    # half_disk_map(1 - t) = tan(arctan(t(2-t) / (2(1-t))) / 4), exact near t = 0
    t = np.asarray(t, dtype=float)
    return np.tan(np.arctan2(t * (2.0 - t), 2.0 * (1.0 - t)) / 4.0)


def _f_theta(theta, z):
    z = np.asarray(z, dtype=complex)
    return z * np.exp(theta * np.log(-np.log(z)))


def _f_theta_derivative(theta, z):
    z = np.asarray(z, dtype=complex)
    L = -np.log(z)
    return np.exp(theta * np.log(L)) - theta * np.exp((theta - 1.0) * np.log(L))


def shapiro_taylor_map(theta: float, eps: float, z):
    """``exp(-f(eps * half_disk_map(z)))`` with ``f(w) = w (-log w)^theta``."""
    z = check_disk(z, "z")
    return np.exp(-_f_theta(theta, eps * half_disk_map(z)))


def _positivity_grid(n_r: int = 60, n_t: int = 128):
    r = 1.0 - np.logspace(0.0, -6.0, n_r)
    t = 2.0 * np.pi * np.arange(n_t) / n_t
    return (r[:, None] * np.exp(1j * t[None, :])).ravel()


def shapiro_taylor_modulus(theta: float, K: float = 1.0) -> Modulus:
    """``omega^{-1}(h) = K h (log 1/h)^(-theta)``; ``omega`` by root finding (non-rigorous)."""

    def inverse(h):
        h = np.asarray(h, dtype=float)
        return K * h * np.log(1.0 / h) ** (-theta)

    def log_inverse(h):
        h = np.asarray(h, dtype=float)
        return math.log(K) + np.log(h) - theta * np.log(np.log(1.0 / h))

    def omega(x):
        x = float(x)
        if x <= 0:
            return 0.0
        return brentq(lambda lh: log_inverse(math.exp(lh)) - math.log(x), -745.0, -1e-12)

    def omega_vec(x):
        arr = np.asarray(x, dtype=float)
        out = np.vectorize(lambda v: math.exp(omega(v)) if v > 0 else 0.0)(arr)
        return out.item() if out.ndim == 0 else out

    return Modulus(name="shapiro-taylor", omega=omega_vec, inverse=inverse,
                   log_inverse=log_inverse, rigorous=False, params={"K": K, "theta": theta})


SHAPIRO_TAYLOR_EPS = (0.5, 0.25, 0.1, 0.05, 0.025, 0.01, 0.005, 0.001)


def shapiro_taylor(theta: float, eps: Optional[float] = None, K: float = 1.0) -> SymbolSpec:
    """
    Shapiro-Taylor symbol.

    Without ``eps`` the largest value of :data:`SHAPIRO_TAYLOR_EPS` for which
    ``Re f(eps * half_disk_map(z)) > 0`` on a test grid is used.
    """
    if theta <= 0:
        raise DomainError("theta must be positive")
    grid = _positivity_grid()
    candidates = SHAPIRO_TAYLOR_EPS if eps is None else (float(eps),)
    chosen = None
    for e in candidates:
        if not (0.0 < e < 1.0):
            raise ConstructionError("eps must lie in (0, 1)")
        vals = _f_theta(theta, e * half_disk_map(grid))
        if np.all(np.isfinite(vals)) and np.all(vals.real > 0):
            chosen = e
            break
    if chosen is None:
        raise ConstructionError(f"Re(f o g) > 0 fails on the test grid for eps={candidates}")
    e = chosen

    def evaluate(z):
        arr = np.asarray(z)
        out = np.exp(-_f_theta(theta, e * half_disk_map(arr)))
        return _real_out(arr, out)

    def derivative(z):
        arr = np.asarray(z, dtype=complex)
        g = e * half_disk_map(arr)
        return -np.exp(-_f_theta(theta, g)) * _f_theta_derivative(theta, g) * e * _half_disk_derivative(arr)

    def bmap(anchors, gaps):
        if np.any(np.real(anchors) < 0):
            raise DomainError("boundary map only available near z = 1")
        g = e * _half_disk_real_from_gap(np.real(gaps))
        f = g * (-np.log(g)) ** theta
        return np.asarray(anchors, dtype=complex), -np.expm1(-f)

    return SymbolSpec(
        name="shapiro-taylor",
        parameters={"theta": float(theta), "eps": e, "K": float(K)},
        evaluate=evaluate,
        derivative=derivative,
        modulus=shapiro_taylor_modulus(theta, K),
        boundary_map=bmap,
        real=True,
    )


# ---------------------------------------------------------------------------
# Normalisation and pseudo-hyperbolic derivative
# ---------------------------------------------------------------------------

def normalize_at(phi: SymbolSpec, a: complex) -> SymbolSpec:
    """
    ``psi_a = Phi_{phi(a)} o phi o Phi_a``, a symbol fixing the origin with
    ``|psi_a'(0)|`` equal to the pseudo-hyperbolic derivative of ``phi`` at ``a``.
    """
    if phi.radial_only:
        raise DomainError(f"{phi.name} is only known on a radius")
    a = complex(check_disk(a, "a"))
    b = complex(phi.evaluate(np.array(a, dtype=complex)))

    def evaluate(z):
        z = np.asarray(z, dtype=complex)
        return mobius_automorphism(b, phi.evaluate(mobius_automorphism(a, z)))

    def derivative(z):
        z = np.asarray(z, dtype=complex)
        w = mobius_automorphism(a, z)
        return mobius_derivative(b, phi.evaluate(w)) * phi.derivative(w) * mobius_derivative(a, z)

    params = dict(phi.parameters)
    params["at"] = a
    return SymbolSpec(name=f"{phi.name}@normalized", parameters=params,
                      evaluate=evaluate, derivative=derivative,
                      real=phi.real and a.imag == 0 and b.imag == 0)


def pseudo_hyperbolic_derivative(phi: SymbolSpec, z):
    """``|phi'(z)| (1 - |z|^2) / (1 - |phi(z)|^2)``, at most one by Schwarz-Pick."""
    z = check_disk(z, "z")
    w = np.asarray(phi.evaluate(z), dtype=complex)
    out = np.abs(phi.derivative(z)) * (1.0 - np.abs(z) ** 2) / (1.0 - np.abs(w) ** 2)
    return out.item() if out.ndim == 0 else out


def disk_grid(size: int, min_gap: float = 1e-6) -> np.ndarray:
    """
    Polar grid of about ``size`` points whose radii approach the circle
    log-uniformly down to ``1 - min_gap``; angles include 0 and pi.
    """
    n_r = max(2, int(round(math.sqrt(size))))
    n_t = max(2, size // n_r)
    if n_t % 2:
        n_t += 1
    radii = np.concatenate([[0.0], 1.0 - np.logspace(0.0, math.log10(min_gap), n_r)[1:]])
    angles = 2.0 * np.pi * np.arange(n_t) / n_t
    return (radii[:, None] * np.exp(1j * angles[None, :])).ravel()


def pseudo_hyperbolic_sup(phi: SymbolSpec, grid_size: int = 10_000) -> float:
    """Grid estimate of ``sup_z phi#(z)``."""
    if phi.radial_only:
        z = np.real(disk_grid(grid_size))
        z = np.unique(np.abs(z))
        w = phi.evaluate(z)
        vals = np.abs(phi.derivative(z)) * (1.0 - z ** 2) / (1.0 - w ** 2)
        return float(np.max(vals))
    return float(np.max(pseudo_hyperbolic_derivative(phi, disk_grid(grid_size))))


# ---------------------------------------------------------------------------
# Taylor coefficients
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TaylorCoefficients:
    """First ``N`` Taylor coefficients of ``phi**power``.

    ``residual`` is the largest deviation between the truncated series and
    direct evaluation on the check circle of radius ``radius_used**10``.
    """

    coefficients: np.ndarray
    radius_used: float
    residual: float
    power: int = 1

    def __len__(self) -> int:
        return self.coefficients.size


RESIDUAL_TOL = 1e-9


def power_coefficient_block(phi: SymbolSpec, count: int, powers: np.ndarray,
                            radius: float, oversample: int = 8) -> Tuple[np.ndarray, float]:
    """
    Coefficients ``0..count-1`` of ``phi**k`` for each ``k`` in ``powers``.

    Returns the ``count x len(powers)`` block and the reconstruction
    residual on the check circle.
    """
    if phi.radial_only:
        raise DomainError(f"{phi.name} has no Taylor expansion available")
    powers = np.asarray(powers, dtype=int)
    M = oversample * count
    t = 2.0 * np.pi * np.arange(M) / M
    w = np.asarray(phi.evaluate(radius * np.exp(1j * t)), dtype=complex)
    P = _powers(w, powers)
    block = np.fft.fft(P, axis=1)[:, :count].T / M
    block *= (radius ** -np.arange(count, dtype=float))[:, None]

    rho = radius ** 10
    Mc = 2 * count
    tc = 2.0 * np.pi * np.arange(Mc) / Mc
    wc = np.asarray(phi.evaluate(rho * np.exp(1j * tc)), dtype=complex)
    direct = _powers(wc, powers)
    padded = np.zeros((powers.size, Mc), dtype=complex)
    padded[:, :count] = (block * (rho ** np.arange(count, dtype=float))[:, None]).T
    recon = np.fft.ifft(padded, axis=1) * Mc
    residual = float(np.max(np.abs(recon - direct))) if powers.size else 0.0
    return block, residual


def _powers(w: np.ndarray, powers: np.ndarray) -> np.ndarray:
    out = np.empty((powers.size, w.size), dtype=complex)
    if powers.size == 0:
        return out
    order = np.argsort(powers)
    cur = w ** int(powers[order[0]])
    prev = int(powers[order[0]])
    out[order[0]] = cur
    for idx in order[1:]:
        k = int(powers[idx])
        cur = cur * w ** (k - prev) if k - prev != 1 else cur * w
        prev = k
        out[idx] = cur
    return out


def sampling_radius(count: int) -> float:
    return math.exp(-4.0 / count)


def taylor_coefficients(phi: SymbolSpec, count: int, power: int = 1,
                        oversample: int = 8, tol: float = RESIDUAL_TOL) -> TaylorCoefficients:
    """
    Taylor coefficients of ``phi**power`` from samples on a circle.

    Samples ``oversample * count`` values of ``phi(r e^{it})**power`` at
    ``r = exp(-4/count)``, takes a discrete Fourier transform and rescales
    coefficient ``m`` by ``r**-m``.  If the reconstruction residual exceeds
    ``tol`` the radius is moved to ``sqrt(r)`` once before giving up.
    """
    if count < 2:
        raise DomainError("need at least two coefficients")
    if power < 0:
        raise DomainError("power must be non-negative")
    r = sampling_radius(count)
    for attempt in range(2):
        block, residual = power_coefficient_block(phi, count, np.array([power]), r, oversample)
        if residual <= tol:
            return TaylorCoefficients(block[:, 0], r, residual, power)
        r = math.sqrt(r)
    raise AccuracyError(f"Taylor reconstruction residual {residual:.3g} exceeds {tol:g}; raise count")


# ---------------------------------------------------------------------------
# Text grammar
# ---------------------------------------------------------------------------

_FACTORIES = {
    "identity": (identity, ()),
    "constant": (constant, ("c",)),
    "dilation": (dilation, ("c",)),
    "scale": (dilation, ("c",)),
    "automorphism": (automorphism, ("a",)),
    "mobius": (automorphism, ("a",)),
    "lens": (lens, ("theta",)),
    "cusp": (cusp, ()),
    "shapiro-taylor": (shapiro_taylor, ("theta", "eps", "K")),
    "shapiro_taylor": (shapiro_taylor, ("theta", "eps", "K")),
}


def _parse_number(text: str):
    text = text.strip()
    if "j" in text:
        return complex(text)
    return float(text)


def parse_symbol(text: str) -> SymbolSpec:
    """Build a symbol from ``name`` or ``name:key=value,key=value``."""
    name, _, rest = text.strip().partition(":")
    name = name.strip().lower()
    if name not in _FACTORIES:
        raise DomainError(f"unknown symbol {name!r}; known: {sorted(_FACTORIES)}")
    factory, allowed = _FACTORIES[name]
    kwargs = {}
    if rest.strip():
        for item in rest.split(","):
            key, eq, value = item.partition("=")
            key = key.strip()
            if not eq or key not in allowed:
                raise DomainError(f"bad parameter {item!r} for symbol {name!r}")
            kwargs[key] = _parse_number(value)
    try:
        return factory(**kwargs)
    except TypeError as exc:
        raise DomainError(f"missing parameters for {name!r}: {exc}") from None
