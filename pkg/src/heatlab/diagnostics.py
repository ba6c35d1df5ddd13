"""Executable proof instruments: energy, eigenpair, Kaplan functional,
weighted norms, zero number, iterate-map bounds and the ramp-time oracle.

These are the quantities the qualitative theory reasons with; here each one
is a pure function over profiles or source terms so that every inequality
can be checked at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.linalg import solve_banded

from .nonlin import Nonlinearity, golden_max
from .solver import RadialGrid, RadialProfile

__all__ = [
    "EnergyValue",
    "Eigenpair",
    "ZeroNumber",
    "KaplanReport",
    "IterateMapReport",
    "IterateGrowthReport",
    "RampOracle",
    "energy",
    "eigenpair",
    "kaplan_series",
    "weighted_l1",
    "zero_number",
    "iterate_map",
    "iterate_growth_check",
    "ramp_transit_oracle",
]


@dataclass(frozen=True)
class EnergyValue:
    kinetic: float       # (1/2) int |grad u|^2
    potential: float     # int F(u)
    total: float         # kinetic - potential


def energy(profile: RadialProfile, f: Nonlinearity) -> EnergyValue:
    """E(u) = (1/2) int |u_r|^2 dx - int F(u) dx with radial weights."""
    grid = profile.grid
    if np.any(profile.u < 0):
        raise ValueError("energy expects a nonnegative profile")
    grad = np.gradient(profile.u, grid.r)
    kinetic = 0.5 * grid.integrate(grad * grad)
    with np.errstate(over="ignore"):
        potential = grid.integrate(np.asarray(f._F(profile.u)))
    return EnergyValue(kinetic=float(kinetic), potential=float(potential),
                       total=float(kinetic - potential))


@dataclass(frozen=True)
class Eigenpair:
    lambda1: float
    phi: RadialProfile       # positive, normalized to int phi dx = 1
    residual: float


def eigenpair(grid: RadialGrid, max_iter: int = 400, tol: float = 1e-12) -> Eigenpair:
    """Principal Dirichlet eigenpair of -Laplacian by inverse power iteration."""
    domain = grid.domain
    if not domain.is_ball:
        raise ValueError("eigenpair is defined on ball domains")
    st = grid.stencil()
    J = grid.J
    ab = st.implicit_system(1.0)      # I - L; shifted inverse iteration target
    phi = np.ones(J + 1)
    phi[-1] = 0.0
    lam = 0.0
    rnorm = math.inf
    for _ in range(max_iter):
        rhs = phi.copy()
        rhs[-1] = 0.0
        psi = solve_banded((1, 1), ab, rhs)
        psi /= np.max(np.abs(psi))
        Lpsi = st.apply(psi)
        num = -float(np.dot(grid.weights[:-1], (Lpsi * psi)[:-1]))
        den = float(np.dot(grid.weights[:-1], (psi * psi)[:-1]))
        lam = num / den
        resid = Lpsi + lam * psi
        resid[-1] = 0.0
        rnorm = float(np.sqrt(np.dot(resid, resid) / resid.size))
        phi = psi
        # stop on the residual: the Rayleigh quotient settles long before
        # the eigenvector does
        if rnorm <= tol:
            break
    phi = np.abs(phi)
    phi[-1] = 0.0
    norm = grid.integrate(phi)
    phi = phi / norm
    if rnorm > 1e-8:
        raise RuntimeError(f"eigenpair residual {rnorm:g} did not converge")
    return Eigenpair(lambda1=float(lam), phi=RadialProfile(grid, phi), residual=rnorm)


@dataclass(frozen=True)
class KaplanReport:
    t: np.ndarray
    y: np.ndarray                  # int u phi_1
    jensen_gap: np.ndarray         # int f(u) phi_1 - f(y), >= 0 for convex f
    diffineq_residual: np.ndarray  # y' - (f(y)/2 - C1), discrete
    C1: float
    sup_y: float


def kaplan_series(profiles: list[np.ndarray], times, f: Nonlinearity,
                  eig: Eigenpair) -> KaplanReport:
    """Eigenfunction moment y(t) = int u phi_1 and its differential inequality.

    C1 is fitted as sup_s (lambda1 s - f(s)/2), so that y' >= f(y)/2 - C1
    holds along exact trajectories for superlinear f; the discrete residual
    uses forward differences of the recorded series.
    """
    grid = eig.phi.grid
    w = grid.weights * eig.phi.u
    t = np.asarray(times, dtype=float)
    y = np.array([float(np.dot(w, u)) for u in profiles])
    with np.errstate(over="ignore"):
        fy = np.array([float(f(val)) for val in y])
        jensen = np.array([float(np.dot(w, np.asarray(f._f(u)))) for u in profiles]) - fy

    lam = eig.lambda1
    # C1 = sup_s (lambda1 s - f(s)/2); finite for superlinear growth
    s_hi = 1.0
    while float(f(s_hi)) / 2.0 < lam * s_hi and s_hi < 1e12:
        s_hi *= 2.0
    _, C1 = golden_max(lambda s: lam * s - float(f(s)) / 2.0, 0.0, s_hi)
    C1 = max(C1, 0.0)

    if t.size >= 2:
        dy = np.diff(y) / np.diff(t)
        rhs = fy[:-1] / 2.0 - C1
        resid = np.concatenate([dy - rhs, [np.nan]])
    else:
        resid = np.full_like(y, np.nan)
    return KaplanReport(t=t, y=y, jensen_gap=jensen, diffineq_residual=resid,
                        C1=float(C1), sup_y=float(np.max(y)) if y.size else 0.0)


def weighted_l1(profile: RadialProfile) -> float:
    """Distance-weighted L1 norm on balls; sliding-window L1 on truncations."""
    grid = profile.grid
    domain = grid.domain
    if domain.is_ball:
        return float(np.dot(grid.weights * (domain.R - grid.r), profile.u))
    contrib = grid.weights * profile.u
    csum = np.concatenate([[0.0], np.cumsum(contrib)])
    best = 0.0
    for c in np.linspace(0.0, domain.R, 129):
        i0 = int(np.searchsorted(grid.r, max(0.0, c - 1.0)))
        i1 = int(np.searchsorted(grid.r, min(domain.R, c + 1.0), side="right"))
        best = max(best, float(csum[i1] - csum[i0]))
    return best


@dataclass(frozen=True)
class ZeroNumber:
    count: int
    crossings: tuple[float, ...]


def zero_number(a, b, deadband: float = 1e-9, r: np.ndarray | None = None) -> ZeroNumber:
    """Sign changes of a - b on the radial grid, ignoring sub-deadband wiggle.

    Accepts two profiles on a shared grid, or two arrays plus radii.
    Crossing radii come from linear interpolation between the significant
    nodes bracketing each sign change.
    """
    if isinstance(a, RadialProfile):
        if a.grid is not b.grid and not np.array_equal(a.grid.r, b.grid.r):
            raise ValueError("profiles must share a grid")
        r = a.grid.r
        d = a.u - b.u
    else:
        d = np.asarray(a, dtype=float) - np.asarray(b, dtype=float)
        if r is None:
            raise ValueError("arrays need explicit radii")
        r = np.asarray(r, dtype=float)
    sig = np.abs(d) >= deadband
    idx = np.nonzero(sig)[0]
    crossings = []
    for k in range(idx.size - 1):
        i, j = idx[k], idx[k + 1]
        if d[i] * d[j] < 0.0:
            rc = r[i] - d[i] * (r[j] - r[i]) / (d[j] - d[i])
            crossings.append(float(rc))
    return ZeroNumber(count=len(crossings), crossings=tuple(crossings))


# ---------------------------------------------------------------------------
# Iterate-map machinery


@dataclass(frozen=True)
class IterateMapReport:
    s: np.ndarray
    iterates: list[np.ndarray]       # phi^(1)(s) .. phi^(k)(s)
    eta: float
    L: float
    upper_margins: list[np.ndarray]  # s + (2i-1) eta f(s) - phi^(i)(s), on s <= M0


def iterate_map(f: Nonlinearity, eps: float, M0: float, k: int, s) -> IterateMapReport:
    """Iterates of phi = Id + eta f with eta = min(eps, 1/L)/(2k-1).

    L is the maximum of f' over [0, 2 M0] (golden section plus endpoints).
    The report carries the margins of the linear-in-i upper bound
    phi^(i)(s) <= s + (2i-1) eta f(s), valid on [0, M0].
    """
    if k < 1:
        raise ValueError("need at least one iterate")
    if eps <= 0 or M0 <= 0:
        raise ValueError("eps and M0 must be positive")
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s_arr < 0):
        raise ValueError("s must be nonnegative")
    _, L = golden_max(lambda x: float(f.deriv(x)), 0.0, 2.0 * M0)
    L = max(L, 0.0)
    eta = (min(eps, 1.0 / L) if L > 0 else eps) / (2.0 * k - 1.0)

    iterates = []
    cur = s_arr.copy()
    for _ in range(k):
        with np.errstate(over="ignore"):
            cur = cur + eta * np.asarray(f._f(cur))
        iterates.append(cur.copy())
    mask = s_arr <= M0
    margins = []
    with np.errstate(over="ignore"):
        fs = np.asarray(f._f(s_arr))
    for i, vals in enumerate(iterates, start=1):
        margins.append((s_arr + (2 * i - 1) * eta * fs - vals)[mask])
    return IterateMapReport(s=s_arr, iterates=iterates, eta=float(eta), L=float(L),
                            upper_margins=margins)


@dataclass(frozen=True)
class IterateGrowthReport:
    C: list[float]                    # C_1 .. C_kmax with C_1 = 1/eta, C_{k+1} = 2 C_k/eta
    eta: float
    max_violation: list[float]        # per k, over s >= 1 (<= 0 means the bound holds)
    small_s_margin: list[float]       # reported, not asserted, on s in (0,1)


def iterate_growth_check(f: Nonlinearity, eps: float, M0: float, k_max: int,
                         s_grid) -> IterateGrowthReport:
    """Check f(s)^k / s^{k-1} <= C_k (1 + phi^(k)(s)) with the recursion constants."""
    s_arr = np.asarray(s_grid, dtype=float)
    if np.any(s_arr <= 0):
        raise ValueError("s grid must be positive")
    rep = iterate_map(f, eps, M0, k_max, s_arr)
    eta = rep.eta
    C = [1.0 / eta]
    for _ in range(1, k_max):
        C.append(2.0 * C[-1] / eta)
    with np.errstate(over="ignore"):
        fs = np.asarray(f._f(s_arr))
    hi = s_arr >= 1.0
    lo = ~hi
    violations = []
    small_margins = []
    for k in range(1, k_max + 1):
        with np.errstate(over="ignore"):
            lhs = fs ** k / s_arr ** (k - 1)
            rhs = C[k - 1] * (1.0 + rep.iterates[k - 1])
            rel = (lhs - rhs) / np.maximum(1.0, np.abs(rhs))
        violations.append(float(np.max(rel[hi])) if np.any(hi) else -math.inf)
        small_margins.append(float(np.max(rel[lo])) if np.any(lo) else -math.inf)
    return IterateGrowthReport(C=C, eta=eta, max_violation=violations,
                               small_s_margin=small_margins)


@dataclass(frozen=True)
class RampOracle:
    t_transit: float      # int_{M/2}^{M} ds/f(s)
    bound: float          # M / (2 f(M))
    holds: bool


def ramp_transit_oracle(f: Nonlinearity, M: float) -> RampOracle:
    """Minimal time for y' <= f(y) to climb from M/2 to M, versus M/(2 f(M))."""
    if M <= 0:
        raise ValueError("level must be positive")
    vals = np.asarray(f(np.linspace(M / 2.0, M, 32)))
    if np.any(vals <= 0):
        raise ValueError("f must be positive on [M/2, M]")
    with np.errstate(over="ignore"):
        t_transit, _ = integrate.quad(lambda s: 1.0 / max(float(f(s)), 1e-300),
                                      M / 2.0, M, limit=200, epsabs=1e-14, epsrel=1e-12)
    fM = float(f(M))
    bound = M / (2.0 * fM) if math.isfinite(fM) and fM > 0 else 0.0
    return RampOracle(t_transit=float(t_transit), bound=float(bound),
                      holds=bool(t_transit >= bound * (1.0 - 1e-12)))
