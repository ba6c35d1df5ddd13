"""Radial method-of-lines integrator for u_t = u_rr + ((n-1)/r) u_r + f(u).

Diffusion is treated implicitly (Crank-Nicolson, tridiagonal solves) and the
reaction explicitly with a trapezoidal corrector; steps are accepted by
step-doubling error control with a reaction CFL cap.  Blow-up is declared
from amplitude plus the remaining-time integral of 1/f, from an energy
certificate on balls, or from time-step underflow with amplitude growth.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from scipy import integrate
from scipy.linalg import solve_banded

from .nonlin import Nonlinearity
from .stationary import surface_area

__all__ = [
    "RadialDomain",
    "RadialGrid",
    "RadialProfile",
    "RunPolicy",
    "SolveOutcome",
    "OrderingReport",
    "make_grid",
    "discretize_laplacian",
    "step",
    "run",
    "run_pair_ordered",
    "osgood_remaining",
    "outcome_to_csv",
]

BLOWUP = "BLOWUP"
GLOBAL_BOUNDED = "GLOBAL_BOUNDED"
DECAYED = "DECAYED"
UNDECIDED = "UNDECIDED"


@dataclass(frozen=True)
class RadialDomain:
    """Ball of radius R with a Dirichlet wall, or a truncated whole space.

    The truncation models R^n on [0, R]; with the default dirichlet_zero far
    field the computed solution is a subsolution of the whole-space problem,
    so BLOWUP classifications transfer while global ones are truncation
    relative.  decay_matched installs a Robin row matching |x|^{2-n} tails.
    """

    n: int
    geometry: str                  # "ball" | "truncated_whole_space"
    R: float
    far_field: str = "dirichlet_zero"

    def __post_init__(self):
        if self.n < 1 or int(self.n) != self.n:
            raise ValueError("dimension must be a positive integer")
        if self.R <= 0:
            raise ValueError("domain radius must be positive")
        if self.geometry not in ("ball", "truncated_whole_space"):
            raise ValueError(f"unknown geometry {self.geometry!r}")
        if self.far_field not in ("dirichlet_zero", "decay_matched"):
            raise ValueError(f"unknown far-field policy {self.far_field!r}")
        if self.geometry == "ball" and self.far_field != "dirichlet_zero":
            raise ValueError("balls carry a Dirichlet wall")

    @staticmethod
    def ball(n: int, R: float) -> "RadialDomain":
        return RadialDomain(n=n, geometry="ball", R=R)

    @staticmethod
    def truncated_whole_space(n: int, R_max: float,
                              far_field: str = "dirichlet_zero") -> "RadialDomain":
        return RadialDomain(n=n, geometry="truncated_whole_space", R=R_max,
                            far_field=far_field)

    @property
    def is_ball(self) -> bool:
        return self.geometry == "ball"


class RadialGrid:
    """Nonuniform mesh 0 = r_0 < ... < r_J = R with cached quadrature weights."""

    def __init__(self, domain: RadialDomain, r: np.ndarray, policy: str):
        r = np.asarray(r, dtype=float)
        if r[0] != 0.0 or abs(r[-1] - domain.R) > 1e-12 * domain.R:
            raise ValueError("grid must run from 0 to the wall radius")
        if np.any(np.diff(r) <= 0):
            raise ValueError("grid nodes must be strictly increasing")
        self.domain = domain
        self.r = r
        self.policy = policy
        n = domain.n
        dr = np.diff(r)
        trap = np.empty_like(r)
        trap[0] = dr[0] / 2.0
        trap[-1] = dr[-1] / 2.0
        trap[1:-1] = (r[2:] - r[:-2]) / 2.0
        # weights for int_B g dx = omega_{n-1} int g(r) r^{n-1} dr
        self.weights = surface_area(n) * trap * r ** (n - 1)
        self._stencil = None

    @property
    def J(self) -> int:
        return self.r.size - 1

    def integrate(self, values: np.ndarray) -> float:
        return float(np.dot(self.weights, values))

    def stencil(self) -> "LaplacianStencil":
        if self._stencil is None:
            self._stencil = discretize_laplacian(self.domain, self)
        return self._stencil


def make_grid(domain: RadialDomain, J: int, policy: str = "uniform") -> RadialGrid:
    """Build a grid with J intervals under one of the spacing policies."""
    if J < 8:
        raise ValueError("need at least 8 intervals")
    x = np.linspace(0.0, 1.0, J + 1)
    if policy == "uniform":
        r = domain.R * x
    elif policy == "boundary-refined":
        r = domain.R * np.sin(0.5 * math.pi * x)
    elif policy == "origin-and-wall-refined":
        r = domain.R * (x - np.sin(2.0 * math.pi * x) / (2.0 * math.pi))
    else:
        raise ValueError(f"unknown grid policy {policy!r}")
    r[0], r[-1] = 0.0, domain.R
    return RadialGrid(domain, r, policy)


@dataclass(frozen=True)
class RadialProfile:
    grid: RadialGrid
    u: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float)
        if u.shape != self.grid.r.shape:
            raise ValueError("profile length must match the grid")
        if not np.all(np.isfinite(u)):
            raise ValueError("profile values must be finite")
        object.__setattr__(self, "u", u)

    @property
    def sup(self) -> float:
        return float(np.max(self.u))


class LaplacianStencil:
    """Three-point radial Laplacian rows plus the wall boundary row."""

    def __init__(self, domain: RadialDomain, grid: RadialGrid):
        r = grid.r
        n = domain.n
        J = grid.J
        lower = np.zeros(J + 1)
        diag = np.zeros(J + 1)
        upper = np.zeros(J + 1)
        h1 = r[1] - r[0]
        # symmetry at the origin: Delta u(0) = n u_rr(0)
        diag[0] = -2.0 * n / h1 ** 2
        upper[0] = 2.0 * n / h1 ** 2
        hm = r[1:-1] - r[:-2]
        hp = r[2:] - r[1:-1]
        denom = hm * hp * (hm + hp)
        # second-order nonuniform u_rr and u_r
        c_mm = 2.0 * hp / denom
        c_pp = 2.0 * hm / denom
        c_m0 = -(c_mm + c_pp)
        d_mm = -hp * hp / denom
        d_pp = hm * hm / denom
        d_m0 = -(d_mm + d_pp)
        coef = (n - 1.0) / r[1:-1]
        lower[0:J - 1] = c_mm + coef * d_mm     # sub-diagonal entries for rows 1..J-1
        diag[1:J] = c_m0 + coef * d_m0
        upper[1:J] = c_pp + coef * d_pp
        self.lower_full = np.zeros(J + 1)
        self.lower_full[1:J] = lower[0:J - 1]
        self.diag = diag
        self.upper = upper
        self.domain = domain
        self.grid = grid
        # wall row
        if domain.far_field == "decay_matched" and not domain.is_ball:
            hw = r[-1] - r[-2]
            self.bc_row = (-1.0 / hw, 1.0 / hw + (n - 2.0) / r[-1])
        else:
            self.bc_row = (0.0, 1.0)

    def apply(self, u: np.ndarray) -> np.ndarray:
        """L u on rows 0..J-1; the wall row is reported as 0."""
        J = self.grid.J
        out = np.empty_like(u)
        out[0] = self.diag[0] * u[0] + self.upper[0] * u[1]
        out[1:J] = (self.lower_full[1:J] * u[0:J - 1]
                    + self.diag[1:J] * u[1:J]
                    + self.upper[1:J] * u[2:J + 1])
        out[J] = 0.0
        return out

    def implicit_system(self, theta_dt: float) -> np.ndarray:
        """Banded form of (I - theta_dt * L) with the wall row appended."""
        J = self.grid.J
        ab = np.zeros((3, J + 1))
        ab[0, 1:] = -theta_dt * self.upper[:-1]       # superdiagonal
        ab[1, :] = 1.0 - theta_dt * self.diag
        ab[2, :-1] = -theta_dt * self.lower_full[1:]  # subdiagonal
        # wall row replaces the last equation
        ab[1, J] = self.bc_row[1]
        ab[2, J - 1] = self.bc_row[0]
        ab[0, J] = 0.0
        return ab


def discretize_laplacian(domain: RadialDomain, grid: RadialGrid) -> LaplacianStencil:
    return LaplacianStencil(domain, grid)


# ---------------------------------------------------------------------------
# Policies and outcomes


@dataclass(frozen=True)
class RunPolicy:
    T_max: float = 40.0
    M_blow: float = 1e8
    decay_tol: float = 1e-5
    bound_cap: float = 1e3
    bound_window: float = 5.0
    error_target: float = 1e-6
    dt_init: float = 1e-6
    dt_min: float = 1e-13
    dt_max: float = 0.05
    cfl_fraction: float = 0.2
    clip_tol: float = 1e-12
    blow_growth: float = 50.0
    order_tol: float = 1e-6
    energy_certificate: bool = True
    store_profiles: bool = False

    def __post_init__(self):
        if self.M_blow <= self.decay_tol:
            raise ValueError("inconsistent policy: M_blow <= decay_tol")
        if self.T_max <= 0 or self.dt_min <= 0 or self.error_target <= 0:
            raise ValueError("policy scales must be positive")


@dataclass
class TrajectorySeries:
    t: np.ndarray
    sup_norm: np.ndarray
    energy: np.ndarray
    kaplan_y: np.ndarray
    l1_delta: np.ndarray
    dt: np.ndarray


@dataclass
class SolveOutcome:
    classification: str
    T_est: float | None
    value: float                       # sup bound / final norm, per classification
    reason: str
    flags: tuple[str, ...]
    series: TrajectorySeries
    steps_accepted: int
    steps_rejected: int
    clip_events: int
    max_clip: float
    profiles: list[np.ndarray] | None = None
    profile_times: list[float] | None = None

    @property
    def is_blowup(self) -> bool:
        return self.classification == BLOWUP

    @property
    def is_global_side(self) -> bool:
        return self.classification in (DECAYED, GLOBAL_BOUNDED)


@dataclass
class OrderingReport:
    min_gap: float                     # min over space-time of (u - v)
    min_margin: float | None           # min of (u - v - eps f(v)) when requested
    t_of_min: float
    violation: bool


def osgood_remaining(f: Nonlinearity, M: float) -> float:
    """Remaining blow-up time of the extremal ODE y' = f(y) from level M."""
    if M <= 0:
        raise ValueError("level must be positive")
    fv = float(f(M))
    if fv <= 0:
        return math.inf
    val, _ = integrate.quad(lambda s: 1.0 / max(float(f(s)), 1e-300), M, np.inf, limit=200)
    return float(val)


# ---------------------------------------------------------------------------
# Stepping


class _DtUnderflow(Exception):
    pass


class _StepFailure(Exception):
    pass


def _imex_substep(u: np.ndarray, dt: float, st: LaplacianStencil, f: Nonlinearity):
    """CN diffusion + trapezoidal reaction via one predictor-corrector pass."""
    Lu = st.apply(u)
    with np.errstate(over="ignore", invalid="ignore"):
        fu = np.asarray(f._f(u))
    ab = st.implicit_system(0.5 * dt)
    rhs = u + 0.5 * dt * Lu + dt * fu
    rhs[-1] = 0.0
    ustar = solve_banded((1, 1), ab, rhs)
    with np.errstate(over="ignore", invalid="ignore"):
        fstar = np.asarray(f._f(np.clip(ustar, 0.0, None)))
    rhs2 = u + 0.5 * dt * Lu + 0.5 * dt * (fu + fstar)
    rhs2[-1] = 0.0
    return solve_banded((1, 1), ab, rhs2)


def _reaction_cfl(f: Nonlinearity, sup: float, policy: RunPolicy) -> float:
    if sup <= 0:
        return math.inf
    with np.errstate(over="ignore"):
        slopes = [float(f.deriv(sup * c)) for c in (1.0, 0.5, 0.25)]
    L = max(s for s in slopes if math.isfinite(s)) if any(map(math.isfinite, slopes)) else math.inf
    if not math.isfinite(L) or L <= 0:
        return policy.dt_max if math.isfinite(L) else policy.dt_min
    return policy.cfl_fraction / L


class _Clips:
    def __init__(self):
        self.events = 0
        self.max = 0.0


def _postprocess(u: np.ndarray, policy: RunPolicy, clips: _Clips) -> np.ndarray:
    neg = float(np.min(u))
    if neg < 0.0:
        sup = float(np.max(u))
        if -neg > policy.clip_tol * (1.0 + max(sup, 0.0)):
            raise _StepFailure(f"negative overshoot {neg:g}")
        clips.events += 1
        clips.max = max(clips.max, -neg)
        u = np.clip(u, 0.0, None)
    return u


def _advance(u: np.ndarray, t: float, dt_try: float, st: LaplacianStencil,
             f: Nonlinearity, policy: RunPolicy, clips: _Clips,
             t_stop: float) -> tuple[np.ndarray, float, float, int]:
    """One accepted step; returns (u_new, dt_used, dt_next, rejects)."""
    rejects = 0
    dt = dt_try
    while True:
        dt = min(dt, policy.dt_max, t_stop - t)
        dt = min(dt, _reaction_cfl(f, float(np.max(u)), policy))
        if dt < policy.dt_min:
            raise _DtUnderflow()
        big = _imex_substep(u, dt, st, f)
        half = _imex_substep(u, 0.5 * dt, st, f)
        half = _imex_substep(half, 0.5 * dt, st, f)
        if not (np.all(np.isfinite(big)) and np.all(np.isfinite(half))):
            rejects += 1
            dt *= 0.25
            continue
        scale = max(1.0, float(np.max(np.abs(half))))
        err = float(np.max(np.abs(big - half))) / (3.0 * scale)
        if err <= policy.error_target:
            try:
                half = _postprocess(half, policy, clips)
            except _StepFailure:
                rejects += 1
                dt *= 0.5
                continue
            grow = 0.9 * (policy.error_target / max(err, 1e-16)) ** (1.0 / 3.0)
            dt_next = dt * min(4.0, max(0.3, grow))
            return half, dt, dt_next, rejects
        rejects += 1
        dt *= max(0.1, min(0.5, 0.9 * (policy.error_target / err) ** (1.0 / 3.0)))


def step(state: RadialProfile, f: Nonlinearity, dt: float,
         policy: RunPolicy | None = None) -> RadialProfile:
    """Advance a profile by exactly dt, subdividing under error control."""
    if dt <= 0:
        raise ValueError("time step must be positive")
    policy = policy or RunPolicy()
    st = state.grid.stencil()
    clips = _Clips()
    u = state.u.copy()
    t = 0.0
    dt_try = min(dt, policy.dt_max)
    while t < dt * (1.0 - 1e-14):
        u, used, dt_try, _ = _advance(u, t, dt_try, st, f, policy, clips, t_stop=dt)
        t += used
    return RadialProfile(grid=state.grid, u=u, t=state.t + dt)


# ---------------------------------------------------------------------------
# Full runs with classification


def _kaplan_weights(grid: RadialGrid):
    """phi_1 sampled on the grid (ball) or on the unit-ball window (truncated)."""
    from .diagnostics import eigenpair

    domain = grid.domain
    if domain.is_ball:
        eig = eigenpair(grid)
        return grid.weights * eig.phi.u
    # whole-space surrogate: first eigenfunction of the ball of radius 2
    R_ref = min(2.0, domain.R)
    sub = make_grid(RadialDomain.ball(domain.n, R_ref), 64, "uniform")
    eig = eigenpair(sub)
    phi_on_grid = np.interp(grid.r, sub.r, eig.phi.u, right=0.0)
    return grid.weights * phi_on_grid


def _l1_delta(grid: RadialGrid, u: np.ndarray) -> float:
    domain = grid.domain
    if domain.is_ball:
        return float(np.dot(grid.weights * (domain.R - grid.r), u))
    # uniformly-local surrogate: max over radial windows of width 2
    contrib = grid.weights * u
    csum = np.concatenate([[0.0], np.cumsum(contrib)])
    r = grid.r
    best = 0.0
    for c in np.linspace(0.0, domain.R, 65):
        i0 = int(np.searchsorted(r, max(0.0, c - 1.0)))
        i1 = int(np.searchsorted(r, min(domain.R, c + 1.0), side="right"))
        best = max(best, float(csum[i1] - csum[i0]))
    return best


def run(domain: RadialDomain, grid: RadialGrid, f: Nonlinearity,
        u0: RadialProfile, policy: RunPolicy | None = None) -> SolveOutcome:
    """Integrate from u0 and classify the trajectory.

    BLOWUP: amplitude above M_blow with the remaining-time integral below
    dt_min, an energy certificate on balls, or dt underflow after genuine
    amplitude growth.  DECAYED: sup-norm below decay_tol.  GLOBAL_BOUNDED:
    horizon reached below bound_cap with a nonincreasing trailing window.
    Everything else is UNDECIDED with a reason.
    """
    from .diagnostics import energy

    policy = policy or RunPolicy()
    if grid.domain is not domain and (grid.domain.geometry != domain.geometry
                                      or grid.domain.n != domain.n
                                      or grid.domain.R != domain.R):
        raise ValueError("grid was built for a different domain")
    if np.any(u0.u < 0):
        raise ValueError("initial data must be nonnegative")

    st = grid.stencil()
    kap_w = _kaplan_weights(grid)
    clips = _Clips()
    use_energy_cert = (policy.energy_certificate and domain.is_ball
                       and f.eta_AR is not None and (f.C_eta or 0.0) == 0.0
                       and f.eta_AR > 0)

    ts, sups, energies, kaplans, l1s, dts = [], [], [], [], [], []
    profiles = [] if policy.store_profiles else None
    ptimes = [] if policy.store_profiles else None

    u = u0.u.copy()
    t = 0.0
    sup0 = float(np.max(u))

    def record(dt_used: float):
        ts.append(t)
        sups.append(float(np.max(u)))
        energies.append(energy(RadialProfile(grid, u, t), f).total)
        kaplans.append(float(np.dot(kap_w, u)))
        l1s.append(_l1_delta(grid, u))
        dts.append(dt_used)
        if profiles is not None:
            profiles.append(u.copy())
            ptimes.append(t)

    def finish(cls, T_est, value, reason, flags=()):
        flags = tuple(flags)
        if not domain.is_ball and cls in (DECAYED, GLOBAL_BOUNDED):
            flags = flags + ("truncation_relative",)
        series = TrajectorySeries(
            t=np.asarray(ts), sup_norm=np.asarray(sups), energy=np.asarray(energies),
            kaplan_y=np.asarray(kaplans), l1_delta=np.asarray(l1s), dt=np.asarray(dts))
        return SolveOutcome(
            classification=cls, T_est=T_est, value=value, reason=reason, flags=flags,
            series=series, steps_accepted=max(0, len(ts) - 1), steps_rejected=rejects_total,
            clip_events=clips.events, max_clip=clips.max,
            profiles=profiles, profile_times=ptimes)

    rejects_total = 0
    record(0.0)
    sup = sups[-1]
    if sup < policy.decay_tol:
        return finish(DECAYED, None, sup, "initial data below decay tolerance")
    if use_energy_cert and energies[-1] < 0.0:
        return finish(BLOWUP, osgood_remaining(f, max(sup, 1e-10)), sup,
                      "negative energy at t=0", ("energy_certificate",))

    dt_try = policy.dt_init
    while True:
        try:
            u, used, dt_try, rej = _advance(u, t, dt_try, st, f, policy, clips,
                                            t_stop=policy.T_max)
        except _DtUnderflow:
            sup = float(np.max(u))
            if sup >= policy.blow_growth * max(1.0, sup0):
                return finish(BLOWUP, t + osgood_remaining(f, sup), sup,
                              "time step underflow during amplitude growth",
                              ("dt_underflow",))
            return finish(UNDECIDED, None, sup, "time step underflow without growth")
        rejects_total += rej
        t += used
        record(used)
        sup = sups[-1]

        if use_energy_cert and energies[-1] < 0.0:
            return finish(BLOWUP, t + osgood_remaining(f, max(sup, 1e-10)), sup,
                          f"negative energy at t={t:.6g}", ("energy_certificate",))
        if sup > policy.M_blow:
            tail = osgood_remaining(f, sup)
            if tail < policy.dt_min:
                return finish(BLOWUP, t + tail, sup, "amplitude above M_blow")
        if sup < policy.decay_tol:
            return finish(DECAYED, None, sup, f"sup-norm below {policy.decay_tol:g}")
        if t >= policy.T_max * (1.0 - 1e-12):
            arr_t = np.asarray(ts)
            arr_s = np.asarray(sups)
            window = arr_t >= policy.T_max - policy.bound_window
            tail_sups = arr_s[window]
            nonincreasing = bool(np.all(np.diff(tail_sups)
                                        <= 1e-8 * (1.0 + np.max(tail_sups))))
            if sup <= policy.bound_cap and nonincreasing:
                return finish(GLOBAL_BOUNDED, None, float(np.max(arr_s)),
                              "horizon reached, trailing window nonincreasing")
            return finish(UNDECIDED, None, sup,
                          "horizon reached without decisive trend")


def run_pair_ordered(domain: RadialDomain, grid: RadialGrid, f: Nonlinearity,
                     u0: RadialProfile, v0: RadialProfile,
                     policy: RunPolicy | None = None,
                     margin_eps: float | None = None):
    """Co-integrate ordered data u0 >= v0 on a shared time grid.

    Returns (outcome_u, outcome_v, OrderingReport).  The ordering report
    tracks the worst nodewise gap u - v (and u - v - eps f(v) when
    margin_eps is given) over the shared window, which ends when either
    solution hits a blow-up criterion or the horizon.  The two outcomes come
    from independent full runs under the same policy.
    """
    policy = policy or RunPolicy()
    gap0 = u0.u - v0.u
    if float(np.min(gap0)) < -1e-12 * (1.0 + float(np.max(np.abs(u0.u)))):
        raise ValueError("initial ordering u0 >= v0 violated")

    st = grid.stencil()
    clips = _Clips()
    u, v = u0.u.copy(), v0.u.copy()
    t = 0.0
    min_gap, min_margin, t_min = math.inf, math.inf, 0.0
    dt_try = policy.dt_init

    def track():
        nonlocal min_gap, min_margin, t_min
        g = float(np.min(u - v))
        if g < min_gap:
            min_gap, t_min = g, t
        if margin_eps is not None:
            with np.errstate(over="ignore"):
                m = float(np.min(u - v - margin_eps * np.asarray(f._f(v))))
            min_margin = min(min_margin, m)

    track()
    while True:
        dt = min(dt_try, policy.dt_max, policy.T_max - t)
        dt = min(dt, _reaction_cfl(f, max(float(np.max(u)), float(np.max(v))), policy))
        if dt < policy.dt_min:
            break  # one of the pair is racing to blow-up; shared window ends
        ub = _imex_substep(u, dt, st, f)
        uh = _imex_substep(_imex_substep(u, 0.5 * dt, st, f), 0.5 * dt, st, f)
        vb = _imex_substep(v, dt, st, f)
        vh = _imex_substep(_imex_substep(v, 0.5 * dt, st, f), 0.5 * dt, st, f)
        ok = np.all(np.isfinite(uh)) and np.all(np.isfinite(vh)) \
            and np.all(np.isfinite(ub)) and np.all(np.isfinite(vb))
        err = math.inf
        if ok:
            scale = max(1.0, float(np.max(np.abs(uh))), float(np.max(np.abs(vh))))
            err = max(float(np.max(np.abs(ub - uh))), float(np.max(np.abs(vb - vh)))) / (3.0 * scale)
        if not ok or err > policy.error_target:
            dt_try = dt * 0.4
            if dt_try < policy.dt_min:
                break
            continue
        try:
            u = _postprocess(uh, policy, clips)
            v = _postprocess(vh, policy, clips)
        except _StepFailure:
            dt_try = dt * 0.4
            continue
        t += dt
        dt_try = dt * min(4.0, max(0.3, 0.9 * (policy.error_target / max(err, 1e-16)) ** (1.0 / 3.0)))
        track()
        sup_u = float(np.max(u))
        if sup_u > policy.M_blow and osgood_remaining(f, sup_u) < policy.dt_min:
            break
        if t >= policy.T_max * (1.0 - 1e-12):
            break

    out_u = run(domain, grid, f, u0, policy)
    out_v = run(domain, grid, f, v0, policy)
    report = OrderingReport(
        min_gap=min_gap,
        min_margin=None if margin_eps is None else min_margin,
        t_of_min=t_min,
        violation=min_gap < -policy.order_tol)
    return out_u, out_v, report


def outcome_to_csv(outcome: SolveOutcome, path) -> None:
    """Write the trajectory series; one row per accepted step, stable format."""
    s = outcome.series
    with open(path, "w") as fh:
        fh.write("t,sup_norm,energy,kaplan_y,l1_delta,dt\n")
        for k in range(s.t.size):
            fh.write(f"{s.t[k]:.17g},{s.sup_norm[k]:.17g},{s.energy[k]:.17g},"
                     f"{s.kaplan_y[k]:.17g},{s.l1_delta[k]:.17g},{s.dt[k]:.17g}\n")
