"""
Explicit lower and upper bounds on approximation numbers of ``C_phi`` on H^p.

All bounds are computed in the log domain; the reported ``values`` may
underflow to zero where ``log_values`` stays finite.  Every report carries a
``rigorous`` flag: constants that are not quantified (type constants for
``p != 2``, the window constant, the global-regularity constants) are
configuration fields and make the report non-rigorous.
"""

from __future__ import annotations

import json
import logging
import math
import warnings
from dataclasses import asdict, dataclass, field, fields, replace
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .disk import (DEFAULT_LAMBDA, PointSequence, blaschke_product, geometric_test_sequence,
                   log_kappa_upper, log_uniform_separation)
from .errors import DegenerateSequenceError, DomainError, RangeError
from .symbols import Modulus, SymbolSpec, pseudo_hyperbolic_sup

log = logging.getLogger(__name__)

ALPHA = math.pi ** 2 / 2.0
LOG16 = math.log(16.0)


def beta_theta(theta: float) -> float:
    """Separation exponent ``pi^2 / (2^theta theta)`` of the lens images."""
    if not (0.0 < theta < 1.0):
        raise DomainError("theta must lie in (0, 1)")
    return math.pi ** 2 / (2.0 ** theta * theta)


def beta_p_theta(theta: float, p: float) -> float:
    """Exponent ``sqrt(2 beta (1 - theta) / p)`` of the lens lower bound."""
    return math.sqrt(2.0 * beta_theta(theta) * (1.0 - theta) / p)


@dataclass(frozen=True)
class BoundConstants:
    """
    Constants ledger for a given ``p``.

    Free constants default to the values below.  ``tau_p`` is the type
    constant of ``L^p`` (exactly 1 at ``p = 2``); ``C_window``, ``K_upper``,
    ``kappa``, ``chi`` and ``l`` are the unquantified upper-bound constants.
    """

    p: float = 2.0
    tau_p: float = 1.0
    lambda_constant: float = DEFAULT_LAMBDA
    kappa_form: str = "vgh"
    theta: Optional[float] = None
    C_window: float = math.sqrt(2.0)
    K_upper: float = 1.0
    kappa: float = 1.0
    chi: float = 0.5
    l: int = 1
    radial_exponent: str = "displayed"

    def __post_init__(self):
        if not (self.p >= 1.0) or not math.isfinite(self.p):
            raise DomainError(f"p must be a finite number >= 1, got {self.p!r}")
        if self.tau_p <= 0:
            raise DomainError("tau_p must be positive")
        if not (0.0 < self.chi < 1.0):
            raise DomainError("chi must lie in (0, 1)")
        if self.kappa_form not in ("vgh", "lambda"):
            raise DomainError("kappa_form must be 'vgh' or 'lambda'")
        if self.radial_exponent not in ("displayed", "derived"):
            raise DomainError("radial_exponent must be 'displayed' or 'derived'")

    @property
    def p_tilde(self) -> float:
        return min(self.p, 2.0)

    @property
    def p_star(self) -> float:
        return math.inf if self.p == 1.0 else self.p / (self.p - 1.0)

    @property
    def alpha(self) -> float:
        return ALPHA

    @property
    def beta_theta(self) -> Optional[float]:
        return None if self.theta is None else beta_theta(self.theta)

    @property
    def c_p(self) -> float:
        if self.p == 1.0:
            return 1.0 / 12.0
        if self.p <= 2.0:
            return 12.0 ** (-1.0 / self.p) / self.tau_p
        return 12.0 ** -0.5 / self.tau_p

    @property
    def c_p_rigorous(self) -> bool:
        # tau_2 = 1 exactly; the p = 1 case involves no type constant
        return self.p in (1.0, 2.0) and (self.p == 1.0 or self.tau_p == 1.0)

    @property
    def radial_sigma_exponent(self) -> float:
        """Exponent of ``1 - sigma`` in the radial bound."""
        if self.radial_exponent == "derived":
            return 1.0 + 1.0 / self.p_tilde
        return 1.0 / max(self.p_star, 2.0)

    @property
    def c_prime_p(self) -> float:
        """``c_p 2^{-1/p} 6^{-1/p~} / 60``, assembled from the radial proof."""
        return self.c_p * 2.0 ** (-1.0 / self.p) * 6.0 ** (-1.0 / self.p_tilde) / 60.0

    def with_overrides(self, overrides: Union[Dict[str, object], Iterable[str], None]) -> "BoundConstants":
        """Copy with fields replaced; accepts a dict or ``key=value`` strings."""
        if overrides is None:
            return self
        if not isinstance(overrides, dict):
            parsed = {}
            for item in overrides:
                if "=" not in item:
                    raise DomainError(f"override {item!r} is not of the form key=value")
                k, v = item.split("=", 1)
                parsed[k.strip()] = v.strip()
            overrides = parsed
        known = {f.name: f for f in fields(self)}
        kw = {}
        for k, v in overrides.items():
            if k not in known:
                raise DomainError(f"unknown constant {k!r}; expected one of {sorted(known)}")
            if k in ("kappa_form", "radial_exponent"):
                kw[k] = str(v)
            elif k == "l":
                kw[k] = int(v)
            elif k == "theta":
                kw[k] = None if v in (None, "none", "None") else float(v)
            else:
                kw[k] = float(v)
        return replace(self, **kw)

    def ledger(self) -> Dict[str, object]:
        """Snapshot of all fields and derived constants."""
        out = asdict(self)
        out.update(p_tilde=self.p_tilde, p_star=self.p_star, c_p=self.c_p, alpha=self.alpha,
                   beta_theta=self.beta_theta, c_prime_p=self.c_prime_p,
                   c_p_rigorous=self.c_p_rigorous)
        if self.theta is not None and 0 < self.theta < 1:
            out["beta_p_theta"] = beta_p_theta(self.theta, self.p)
        return out


@dataclass(frozen=True)
class BoundReport:
    """Values of one bound on a list of indices."""

    bound_name: str
    n_values: np.ndarray
    log_values: np.ndarray
    constants: BoundConstants
    rigorous: bool
    parameters: Dict[str, object] = field(default_factory=dict)

    def __post_init__(self):
        n = np.atleast_1d(np.asarray(self.n_values, dtype=int))
        lv = np.atleast_1d(np.asarray(self.log_values, dtype=float))
        if n.shape != lv.shape:
            raise DomainError("n_values and values differ in length")
        object.__setattr__(self, "n_values", n)
        object.__setattr__(self, "log_values", lv)

    @property
    def values(self) -> np.ndarray:
        with np.errstate(under="ignore"):
            return np.exp(self.log_values)

    def value(self) -> float:
        """The single value of a one-index report."""
        if self.n_values.size != 1:
            raise DomainError("report holds several indices")
        return float(self.values[0])

    def to_csv_rows(self) -> List[List[str]]:
        params = json.dumps(_jsonable(self.parameters), sort_keys=True, separators=(",", ":"))
        return [[self.bound_name, str(int(n)), repr(float(v)), str(self.rigorous).lower(), params]
                for n, v in zip(self.n_values, self.values)]

    def to_dict(self) -> Dict[str, object]:
        return {
            "bound": self.bound_name,
            "n": self.n_values.tolist(),
            "value": self.values.tolist(),
            "log_value": self.log_values.tolist(),
            "rigorous": self.rigorous,
            "parameters": _jsonable(self.parameters),
            "constants": _jsonable(self.constants.ledger()),
        }


CSV_HEADER = ["bound", "n", "value", "rigorous", "params"]


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else str(x)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    return obj


def _constants(constants: Optional[BoundConstants], p: float, **kw) -> BoundConstants:
    if constants is None:
        return BoundConstants(p=p, **kw)
    if constants.p != p:
        constants = replace(constants, p=p)
    if kw:
        constants = replace(constants, **{k: v for k, v in kw.items() if getattr(constants, k) is None})
    return constants


def _theta_of(phi: SymbolSpec) -> Optional[float]:
    if phi.name == "lens":
        th = phi.parameters["theta"]
        return th if 0 < th < 1 else None
    return None


# ---------------------------------------------------------------------------
# Lower bound from a point sequence
# ---------------------------------------------------------------------------

def image_sequence(phi: SymbolSpec, u: PointSequence) -> PointSequence:
    """``v_j = phi(u_j)``, keeping exact gaps when ``phi`` has a boundary map."""
    if u.gaps is not None and phi.boundary_map is not None:
        try:
            anchors, gaps = phi.boundary_map(u.anchors, u.gaps)
        except DomainError:
            pass
        else:
            anchors = np.asarray(anchors, dtype=complex)
            gaps = np.asarray(gaps, dtype=complex)
            if np.all(np.abs(gaps) > 0):
                return PointSequence(anchors * (1.0 - gaps), anchors, gaps)
    return PointSequence(np.asarray(phi.evaluate(u.points), dtype=complex))


def _lobo_log(phi: SymbolSpec, u: PointSequence, c: BoundConstants) -> Tuple[float, Dict[str, float]]:
    v = image_sequence(phi, u)
    log_delta_u = log_uniform_separation(u)
    log_delta_v = log_uniform_separation(v)
    lku = log_kappa_upper(min(log_delta_v, 0.0), c.kappa_form, c.lambda_constant)
    log_mu = float(np.min(np.log(u.one_minus_abs2()) - np.log(v.one_minus_abs2()))) / c.p
    value = math.log(c.c_p) - lku - math.log1p(-min(log_delta_u, 0.0)) / c.p_tilde + log_mu
    return value, {"log_delta_u": log_delta_u, "log_delta_v": log_delta_v,
                   "log_kappa_upper_v": lku, "log_mu": log_mu}


def lobo_lower_bound(phi: SymbolSpec, u: PointSequence, p: float = 2.0,
                     constants: Optional[BoundConstants] = None) -> BoundReport:
    """
    Lower bound on ``a_n(C_phi)``, ``n = len(u)``, from the points ``u``:

        c_p kappa_v^{-1} (1 + log 1/delta_u)^{-1/p~} inf_j ((1-|u_j|^2)/(1-|v_j|^2))^{1/p}

    with ``v = phi(u)`` and ``kappa_v`` replaced by its upper bound in terms
    of ``delta_v``, so the reported number is itself a lower bound.

    Raises
    ------
    DegenerateSequenceError
        If two of the images coincide.
    """
    c = _constants(constants, p)
    value, params = _lobo_log(phi, u, c)
    return BoundReport("lobo", [u.n], [value], c, c.c_p_rigorous, params)


def _epsilon_grid(n: int, size: int = 80) -> np.ndarray:
    # sigma = exp(-eps); eps * n stays below the underflow threshold of sigma**n
    hi = min(6.0, 650.0 / n)
    return np.logspace(math.log10(hi), -4.0, size)


def optimize_lobo_sequence(phi: SymbolSpec, n: int, p: float = 2.0,
                           constants: Optional[BoundConstants] = None,
                           sigma_grid: Optional[Sequence[float]] = None) -> Tuple[PointSequence, BoundReport]:
    """
    Best :func:`lobo_lower_bound` over radial sequences ``u_j = 1 - sigma**j``.

    The grid is ``sigma = exp(-eps)`` with ``eps`` log-spaced; for a lens map
    the closed-form optimum ``eps* = sqrt(3 beta p / (1 - theta)) / sqrt(n)``
    is added.  For ``n = 1`` the single point ``u = (0,)`` is used.
    """
    if n < 1:
        raise DomainError("n must be positive")
    theta = _theta_of(phi)
    c = _constants(constants, p, theta=theta)
    if n == 1:
        u = PointSequence(np.array([0.0 + 0j]))
        value, params = _lobo_log(phi, u, c)
        params["sigma"] = None
        return u, BoundReport("lobo-optimized", [1], [value], c, c.c_p_rigorous, params)

    if sigma_grid is None:
        sigmas = list(np.exp(-_epsilon_grid(n)))
        if theta is not None:
            eps_star = math.sqrt(3.0 * beta_theta(theta) * p / (1.0 - theta)) / math.sqrt(n)
            sigmas.append(math.exp(-eps_star))
    else:
        sigmas = [float(s) for s in sigma_grid]
    best = None
    for s in sigmas:
        if not (0.0 < s < 1.0) or s ** n == 0.0:
            continue
        try:
            u = geometric_test_sequence(s, n)
            value, params = _lobo_log(phi, u, c)
        except (DegenerateSequenceError, DomainError):
            continue
        if math.isfinite(value) and (best is None or value > best[1]):
            params["sigma"] = s
            best = (u, value, params)
    if best is None:
        raise DegenerateSequenceError(f"no admissible sigma for n={n}")
    u, value, params = best
    return u, BoundReport("lobo-optimized", [n], [value], c, c.c_p_rigorous, params)


# ---------------------------------------------------------------------------
# Lens maps: closed forms
# ---------------------------------------------------------------------------

def _lens_alpha(theta: float, c: BoundConstants) -> float:
    beta = beta_theta(theta)
    return c.c_p / (c.lambda_constant * (beta + 1.0) * (ALPHA + 1.0) ** (1.0 / c.p_tilde)
                    * 2.0 ** ((1.0 - theta) / c.p))


def lens_epsilon_lower_bound(theta: float, p: float, n: int, eps: float,
                             constants: Optional[BoundConstants] = None) -> float:
    """
    Log of ``alpha_{p,theta} e^{-2 beta / eps} (eps/2)^{1/p~} e^{-eps n (1 - theta)/p}``,
    valid for ``0 < eps < 1`` (the lens bound before optimizing ``eps``).
    """
    if not (0.0 < eps < 1.0):
        raise RangeError("eps must lie in (0, 1)")
    c = _constants(constants, p)
    beta = beta_theta(theta)
    return (math.log(_lens_alpha(theta, c)) - 2.0 * beta / eps + math.log(eps / 2.0) / c.p_tilde
            - eps * n * (1.0 - theta) / p)


def lens_epsilon_star(theta: float, p: float, n: int) -> float:
    return math.sqrt(3.0 * beta_theta(theta) * p / (1.0 - theta)) / math.sqrt(n)


def lens_asymptotic_log_bound(theta: float, p: float, n, constants: Optional[BoundConstants] = None):
    """Log of ``alpha'_{p,theta} n^{-1/(2 p~)} e^{-beta_{p,theta} sqrt(n)}``."""
    c = _constants(constants, p)
    n_arr = np.asarray(n, dtype=float)
    eps = math.sqrt(3.0 * beta_theta(theta) * p / (1.0 - theta)) / np.sqrt(n_arr)
    if np.any(eps >= 1.0):
        raise RangeError(f"eps* = {float(np.max(eps)):.3g} >= 1; n is too small for the asymptotic form")
    beta = beta_theta(theta)
    log_alpha_prime = (math.log(_lens_alpha(theta, c))
                       + math.log(beta * p / (2.0 * (1.0 - theta))) / (2.0 * c.p_tilde))
    out = log_alpha_prime - np.log(n_arr) / (2.0 * c.p_tilde) - beta_p_theta(theta, p) * np.sqrt(n_arr)
    return float(out) if out.ndim == 0 else out


def lens_asymptotic_lower_bound(theta: float, p: float, n: int,
                                constants: Optional[BoundConstants] = None) -> float:
    """
    Closed-form lens bound ``alpha'_{p,theta} n^{-1/(2 p~)} e^{-beta_{p,theta} sqrt(n)}``.

    Raises
    ------
    RangeError
        When ``eps* = sqrt(3 beta p / (1 - theta)) / sqrt(n) >= 1``.
    """
    if not (0.0 < theta < 1.0):
        raise DomainError("theta must lie in (0, 1)")
    if p < 1:
        raise DomainError("p must be >= 1")
    return math.exp(lens_asymptotic_log_bound(theta, p, n, constants))


# ---------------------------------------------------------------------------
# Radial lower bound
# ---------------------------------------------------------------------------

def default_sigma_grid(size: int = 200) -> np.ndarray:
    """``sigma`` in (0.01, 0.999), log-spaced in ``1 - sigma``."""
    return 1.0 - np.logspace(math.log10(0.99), -3.0, size)


def radial_candidates(phi: SymbolSpec, p: float, n: int) -> List[float]:
    """Closed-form ``sigma`` choices for the known example symbols."""
    out = []
    mod = phi.modulus
    if phi.name == "lens" and _theta_of(phi) is not None:
        th = phi.parameters["theta"]
        K = math.sqrt((1.0 - th) / th) / (10.0 * math.sqrt(p))
        out.append(1.0 - 1.0 / (K * math.sqrt(n)))
    if mod is not None and mod.name == "log" and n >= 2:
        out.append(1.0 - math.log(n) / (4.0 * n))
    if phi.name == "shapiro-taylor":
        a = 1.0 - float(np.real(phi.fixed_value_at_zero))
        out.append(1.0 / (math.e * a ** (1.0 / n)))
    return [s for s in out if 0.0 < s < 1.0]


def _radial_log_objective(mod: Modulus, a: float, n: int, sigma: np.ndarray, c: BoundConstants):
    sigma = np.asarray(sigma, dtype=float)
    log_h = math.log(a) + n * np.log(sigma)
    with np.errstate(all="ignore"):
        log_inv = np.asarray(mod.log_inverse(np.exp(log_h)), dtype=float)
    one_m = 1.0 - sigma
    val = ((log_inv - log_h) / c.p + c.radial_sigma_exponent * np.log(one_m) - 5.0 / one_m)
    return np.where(np.isfinite(val), val, -np.inf)


def radial_lower_bound(phi: SymbolSpec, p: float, n, sigma_grid: Optional[Sequence[float]] = None,
                       constants: Optional[BoundConstants] = None) -> BoundReport:
    """
    Lower bound for an ``omega``-radial symbol:

        c'_p sup_sigma (omega^{-1}(a sigma^n) / (a sigma^n))^{1/p} (1 - sigma)^e exp(-5/(1 - sigma))

    with ``a = 1 - phi(0)`` and ``e = 1/max(p*, 2)``.  ``n`` may be an array.
    The supremum runs over ``sigma_grid`` (default :func:`default_sigma_grid`)
    plus :func:`radial_candidates`.
    """
    if phi.modulus is None:
        raise DomainError(f"symbol {phi.label} has no modulus of continuity")
    c = _constants(constants, p)
    phi0 = complex(phi.fixed_value_at_zero)
    if abs(phi0.imag) > 0 or phi0.real >= 1.0:
        raise DomainError("the radial bound needs a real phi(0) < 1")
    a = 1.0 - phi0.real
    ns = np.atleast_1d(np.asarray(n, dtype=int))
    base = default_sigma_grid() if sigma_grid is None else np.asarray(sigma_grid, dtype=float)
    logs, best_sigma = [], []
    for k in ns:
        grid = np.concatenate([base, radial_candidates(phi, p, int(k))])
        obj = _radial_log_objective(phi.modulus, a, int(k), grid, c)
        i = int(np.argmax(obj))
        logs.append(math.log(c.c_prime_p) + float(obj[i]))
        best_sigma.append(float(grid[i]))
    rigorous = (c.c_p_rigorous and phi.modulus.rigorous and c.radial_exponent == "derived")
    return BoundReport("radial", ns, logs, c, rigorous,
                       {"a": a, "sigma": best_sigma, "modulus": phi.modulus.name})


# ---------------------------------------------------------------------------
# Geometric floor and eigenvalue bound
# ---------------------------------------------------------------------------

def geometric_decay_floor(phi: SymbolSpec, grid_size: int = 10_000) -> float:
    """Grid value of ``[phi]^2 = (sup phi#)^2``, the geometric decay floor."""
    if phi.name == "constant":
        raise DomainError("the symbol is constant")
    r = pseudo_hyperbolic_sup(phi, grid_size) ** 2
    if r < 1e-12:
        warnings.warn(f"[phi]^2 = {r:.2e} is numerically zero", RuntimeWarning, stacklevel=2)
    return float(min(r, 1.0))


def carl_triebel_log_bound(lambda_moduli: Sequence[float], norm: float, n: int, m: int) -> float:
    """Log of ``(prod_{j<=n} |lambda_j| / (16^n ||T||^m))^{1/(n-m)}``."""
    lam = np.abs(np.asarray(lambda_moduli, dtype=float))
    if not (0 <= m <= n - 1):
        raise DomainError(f"need 0 <= m <= n-1, got m={m}, n={n}")
    if lam.size < n:
        raise DomainError(f"need at least n={n} eigenvalue moduli")
    lam = lam[:n]
    if np.any(np.diff(lam) > 1e-12 * max(lam[0], 1.0)):
        raise DomainError("eigenvalue moduli must be descending")
    if norm < lam[0] * (1 - 1e-12):
        raise DomainError("norm must dominate the largest eigenvalue modulus")
    if np.any(lam == 0):
        return -math.inf
    return float((np.sum(np.log(lam)) - n * LOG16 - m * math.log(norm)) / (n - m))


def carl_triebel_lower_bound(lambda_moduli: Sequence[float], norm: float, n: int, m: int) -> float:
    """Lower bound on ``a_{m+1}(T)`` from the first ``n`` eigenvalues of ``T``."""
    return math.exp(carl_triebel_log_bound(lambda_moduli, norm, n, m))


def carl_triebel_specialized_log(s: float, norm: float, n: int) -> float:
    """
    Log of the bound ``a_n >= s^{2n-1} / (256 ||T||)`` obtained from
    ``2n`` eigenvalues ``s^{j-1}`` and ``m = n - 1`` (after bounding
    ``a_n <= ||T||`` once).
    """
    if not (0.0 < s <= 1.0):
        raise DomainError("s must lie in (0, 1]")
    return (2 * n - 1) * math.log(s) - 2.0 * LOG16 - math.log(norm)


def carl_triebel_root(s: float, norm: float, n: int) -> float:
    """``n``-th root of the specialized bound; tends to ``s**2``."""
    return math.exp(carl_triebel_specialized_log(s, norm, n) / n)


# ---------------------------------------------------------------------------
# Upper bounds
# ---------------------------------------------------------------------------

def carleson_window_upper_bound(phi: SymbolSpec, blaschke_zeros, p: float = 2.0, n: Optional[int] = None,
                                h_grid: Optional[Sequence[float]] = None, xi_grid: Optional[Sequence[complex]] = None,
                                samples: int = 1 << 16, seed: int = 0,
                                constants: Optional[BoundConstants] = None) -> BoundReport:
    """
    Upper bound ``C sqrt(n) (sup_{h, xi} h^{-1} int_{S(xi, h)} |B|^p dm_phi)^{1/p}``.

    The pull-back integral is a Monte-Carlo average over ``samples`` uniform
    boundary points ``e^{it}``.  ``n`` defaults to one more than the number
    of zeros of ``B``.  The default ``h`` grid is log-spaced from
    ``max(1e-3, 100 / samples)`` to 1.  Non-rigorous: ``C`` (default ``sqrt 2``)
    absorbs an unquantified constant.
    """
    if isinstance(blaschke_zeros, PointSequence):
        zeros = blaschke_zeros.points
    else:
        zeros = np.atleast_1d(np.asarray(blaschke_zeros if blaschke_zeros is not None else [], dtype=complex))
    if phi.radial_only:
        raise DomainError(f"{phi.name} has no boundary values available")
    c = _constants(constants, p)
    n = zeros.size + 1 if n is None else int(n)
    if zeros.size >= n:
        raise DomainError("B must have fewer than n zeros")
    rng = np.random.default_rng(seed)
    t = rng.uniform(0.0, 2.0 * np.pi, samples)
    try:
        w = np.asarray(phi.evaluate(np.exp(1j * t)), dtype=complex)
    except DomainError:
        # radial limits, approximated just inside the circle
        w = np.asarray(phi.evaluate((1.0 - 1e-12) * np.exp(1j * t)), dtype=complex)
    weight = np.abs(blaschke_product(zeros, w)) ** p if zeros.size else np.ones(samples)
    weight = np.minimum(weight, 1.0)
    if h_grid is None:
        # windows much smaller than 100 / samples hold too few samples to resolve
        hs = np.logspace(math.log10(min(0.5, max(1e-3, 100.0 / samples))), 0.0, 31)
    else:
        hs = np.asarray(h_grid, dtype=float)
    if xi_grid is None:
        top = w[np.argsort(-np.abs(w))[:16]]
        xis = np.concatenate([np.exp(2j * np.pi * np.arange(64) / 64), top / np.abs(top)])
    else:
        xis = np.asarray(xi_grid, dtype=complex)

    best, best_count, best_at = 0.0, samples, (None, None)
    for xi in xis:
        d = np.abs(w - xi)
        order = np.argsort(d)
        ds = d[order]
        cum = np.concatenate([[0.0], np.cumsum(weight[order])])
        idx = np.searchsorted(ds, hs, side="right")
        ratios = cum[idx] / samples / hs
        j = int(np.argmax(ratios))
        if ratios[j] > best:
            best, best_count, best_at = float(ratios[j]), int(idx[j]), (complex(xi), float(hs[j]))
    if best_count < 100:
        warnings.warn(f"only {best_count} samples in the extremal window; increase samples",
                      RuntimeWarning, stacklevel=2)
    log_value = (math.log(c.C_window) + 0.5 * math.log(n) + math.log(best) / p) if best > 0 else -math.inf
    return BoundReport("carleson-window", [n], [log_value], c, False,
                       {"window_sup": best, "xi": best_at[0], "h": best_at[1], "samples": samples,
                        "seed": seed, "zeros": int(zeros.size), "window_count": best_count})


def _log_inverse_fn(omega_inverse) -> Callable[[float], float]:
    if isinstance(omega_inverse, Modulus):
        return lambda x: float(omega_inverse.log_inverse(x))
    return lambda x: math.log(float(omega_inverse(x)))


def _d_N(log_ratio: float, chi: float, p: float) -> int:
    return int(math.floor(log_ratio / (-p * math.log(chi)))) + 1


def global_regular_log_bound(omega_inverse, k, kappa: float = 1.0, l: int = 1, chi: float = 0.5,
                             p: float = 2.0, K: float = 1.0, max_N: int = 1000):
    """
    Log of ``K [omega^{-1}(kappa 2^{-N_k}) / (kappa 2^{-N_k})]^{1/p}`` where
    ``N_k`` is the largest integer with ``l N d_N < k`` and
    ``d_N = floor(log(x_N / omega^{-1}(x_N)) / log(chi^{-p})) + 1``,
    ``x_N = kappa 2^{-N}``.  ``k`` may be an array.

    Raises
    ------
    DomainError
        If ``omega^{-1}(x) > x`` at a probed ``x`` (no decay).
    """
    if not (0.0 < chi < 1.0):
        raise DomainError("chi must lie in (0, 1)")
    if kappa <= 0 or K <= 0 or l < 1:
        raise DomainError("kappa, K and l must be positive")
    log_inv = _log_inverse_fn(omega_inverse)
    ks = np.atleast_1d(np.asarray(k, dtype=float))
    if np.any(ks < 1):
        raise DomainError("k must be >= 1")
    kmax = float(np.max(ks))

    # table of l N d_N, increasing in N, until it exceeds max k
    log_ratios, thresholds = [], []
    for N in range(max_N + 1):
        log_x = math.log(kappa) - N * math.log(2.0)
        with np.errstate(all="ignore"):
            lr = log_x - log_inv(math.exp(log_x)) if log_x > -740 else math.nan
        if not math.isfinite(lr):
            break
        if lr < -1e-12:
            raise DomainError(f"omega^{{-1}}(x) > x at x = {math.exp(log_x):.3g}")
        lr = max(lr, 0.0)
        log_ratios.append(lr)
        thresholds.append(l * N * _d_N(lr, chi, p))
        if thresholds[-1] >= kmax:
            break
    thresholds = np.asarray(thresholds, dtype=float)
    # N_k: largest N with threshold < k (threshold nondecreasing in N)
    N_k = np.searchsorted(thresholds, ks, side="left") - 1
    N_k = np.clip(N_k, 0, len(log_ratios) - 1)
    out = math.log(K) - np.asarray(log_ratios)[N_k] / p
    return float(out[0]) if np.ndim(k) == 0 else out


def global_regular_upper_bound(omega_inverse, kappa: float = 1.0, l: int = 1, chi_const: float = 0.5,
                               p: float = 2.0, k: int = 1, K: float = 1.0) -> float:
    """Value of the global-regularity upper bound at index ``k`` (non-rigorous constants)."""
    return math.exp(global_regular_log_bound(omega_inverse, k, kappa, l, chi_const, p, K))


def global_regular_report(modulus: Modulus, ks, p: float = 2.0,
                          constants: Optional[BoundConstants] = None) -> BoundReport:
    c = _constants(constants, p)
    ks = np.atleast_1d(np.asarray(ks, dtype=int))
    logs = global_regular_log_bound(modulus, ks, c.kappa, c.l, c.chi, p, c.K_upper)
    return BoundReport("global-regular", ks, np.atleast_1d(logs), c, False, {"modulus": modulus.name})
