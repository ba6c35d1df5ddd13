"""Threshold location on rays lambda * u0 and threshold-type classification.

The dichotomy between global existence and blow-up is probed by bisection
over solver outcomes; the bracket endpoints must classify decisively.  The
three threshold notions are tested through ordered surrogate data built from
the bracket: multiplicative margins, f-shaped margins, and a compact bump.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from .nonlin import Nonlinearity
from .solver import (BLOWUP, DECAYED, GLOBAL_BOUNDED, UNDECIDED, RadialDomain,
                     RadialGrid, RadialProfile, RunPolicy, SolveOutcome, run)
from .stationary import singular_state

__all__ = [
    "InitialFamily",
    "scaled_profile_family",
    "eigenmode_family",
    "bubble_tail_family",
    "compact_cap_family",
    "singular_minus_family",
    "ThresholdPolicy",
    "ProbeRow",
    "ThresholdReport",
    "TypeVerdict",
    "bisect_threshold",
    "classify_threshold_type",
    "subthreshold_probe",
    "report_to_csv",
]


@dataclass(frozen=True)
class InitialFamily:
    """A ray of initial data lambda |-> lambda * base(r)."""

    kind: str
    base: np.ndarray
    grid: RadialGrid
    meta: dict = field(default_factory=dict)

    def profile(self, lam: float) -> RadialProfile:
        if lam < 0:
            raise ValueError("ray parameter must be nonnegative")
        return RadialProfile(self.grid, lam * self.base)


def scaled_profile_family(base: RadialProfile) -> InitialFamily:
    if np.any(base.u < 0):
        raise ValueError("base profile must be nonnegative")
    return InitialFamily(kind="scaled_profile", base=base.u.copy(), grid=base.grid)


def eigenmode_family(grid: RadialGrid) -> InitialFamily:
    """Ray through the principal Dirichlet eigenfunction (balls only)."""
    from .diagnostics import eigenpair

    eig = eigenpair(grid)
    return InitialFamily(kind="scaled_profile", base=eig.phi.u.copy(), grid=grid,
                         meta={"base": "eigenmode", "lambda1": eig.lambda1})


def bubble_tail_family(grid: RadialGrid, A: float, gamma: float, C0: float) -> InitialFamily:
    """Radially nonincreasing data with r^gamma u0 -> C0; needs gamma > n-2.

    Base profile C0 / (rho^gamma + r^gamma) with rho fixed by u0(0) = A.
    """
    n = grid.domain.n
    if gamma <= n - 2:
        raise ValueError("tail exponent must exceed n-2")
    if A <= 0 or C0 <= 0:
        raise ValueError("amplitude and tail constant must be positive")
    rho = (C0 / A) ** (1.0 / gamma)
    base = C0 / (rho ** gamma + grid.r ** gamma)
    edge = grid.domain.R
    tail_ratio = edge ** gamma * base[-1] / C0
    if abs(tail_ratio - 1.0) > 0.05:
        raise ValueError(
            f"grid edge resolves only {tail_ratio:.3f} of the tail limit; enlarge the domain")
    return InitialFamily(kind="bubble_tail", base=base, grid=grid,
                         meta={"A": A, "gamma": gamma, "C0": C0})


def compact_cap_family(grid: RadialGrid, R0: float, eta: float) -> InitialFamily:
    """Flat cap of height 1 with a linear skirt on [R0 - eta, R0], zero beyond."""
    if not 0 < eta < R0 < grid.domain.R:
        raise ValueError("need 0 < eta < R0 < domain radius")
    r = grid.r
    base = np.clip((R0 - r) / eta, 0.0, 1.0)
    return InitialFamily(kind="compact_cap", base=base, grid=grid,
                         meta={"R0": R0, "eta": eta})


def singular_minus_family(grid: RadialGrid, p: float, alpha: float,
                          eps: float) -> InitialFamily:
    """max(0, U_*(r) - eps r^{-alpha}): singular steady state minus a power tail."""
    n = grid.domain.n
    state = singular_state(n, p)
    if alpha <= state.m:
        raise ValueError("tail exponent must exceed the singular decay exponent")
    if eps <= 0:
        raise ValueError("eps must be positive")
    r = grid.r
    base = np.zeros_like(r)
    pos = r > 0
    base[pos] = np.clip(state(r[pos]) - eps * r[pos] ** (-alpha), 0.0, None)
    return InitialFamily(kind="singular_minus", base=base, grid=grid,
                         meta={"p": p, "alpha": alpha, "eps": eps, "m": state.m,
                               "c_p": state.c_p})


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ThresholdPolicy:
    width: float = 1e-3          # relative bracket width target
    lambda_init: float = 1.0
    lambda_cap: float = 1e6
    lambda_floor: float = 1e-8
    max_probes: int = 200


@dataclass
class ProbeRow:
    lam: float
    classification: str
    sup_norm: float
    T_est: float | None
    energy_min: float
    flags: tuple[str, ...]


@dataclass
class TypeVerdict:
    name: str                      # eps_threshold | epsf_threshold | strict_surrogate
    status: str                    # consistent | refuted | undecided
    witness: str = ""


@dataclass
class ThresholdReport:
    lam_lo: float
    lam_hi: float
    rows: list[ProbeRow]
    type_verdicts: list[TypeVerdict] = field(default_factory=list)

    @property
    def rel_width(self) -> float:
        return (self.lam_hi - self.lam_lo) / self.lam_hi

    def check_monotone(self) -> None:
        """No blow-up may sit below a global-side classification."""
        blow = [r.lam for r in self.rows if r.classification == BLOWUP]
        glob = [r.lam for r in self.rows if r.classification in (DECAYED, GLOBAL_BOUNDED)]
        if blow and glob and min(blow) < max(glob):
            raise AssertionError(
                f"classification inversion: blow-up at {min(blow):g} below global {max(glob):g}")


def _probe_row(lam: float, out: SolveOutcome) -> ProbeRow:
    return ProbeRow(lam=lam, classification=out.classification,
                    sup_norm=float(np.max(out.series.sup_norm)),
                    T_est=out.T_est,
                    energy_min=float(np.min(out.series.energy)),
                    flags=out.flags)


class _Prober:
    def __init__(self, family, domain, grid, f, policy, tpolicy):
        self.family = family
        self.domain = domain
        self.grid = grid
        self.f = f
        self.policy = policy
        self.tpolicy = tpolicy
        self.rows: list[ProbeRow] = []
        self.cache: dict[float, SolveOutcome] = {}

    def classify(self, lam: float) -> SolveOutcome:
        if lam in self.cache:
            return self.cache[lam]
        if len(self.rows) >= self.tpolicy.max_probes:
            raise RuntimeError("probe budget exhausted")
        out = run(self.domain, self.grid, self.f, self.family.profile(lam), self.policy)
        if out.classification == UNDECIDED:
            # keep the undecided row for the record, then retry once, tightened
            self.rows.append(_probe_row(lam, out))
            tight = replace(self.policy, T_max=2.0 * self.policy.T_max,
                            error_target=0.1 * self.policy.error_target)
            out = run(self.domain, self.grid, self.f, self.family.profile(lam), tight)
        self.cache[lam] = out
        self.rows.append(_probe_row(lam, out))
        return out


def bisect_threshold(family: InitialFamily, domain: RadialDomain, grid: RadialGrid,
                     f: Nonlinearity, policy: RunPolicy | None = None,
                     tpolicy: ThresholdPolicy | None = None) -> ThresholdReport:
    """Bracket lambda* = sup{lambda : the ray solution is global} by bisection.

    Exponential search finds an initial bracket; bisection then shrinks it to
    the requested relative width.  Undecided probes are retried once with a
    tightened policy; if the retry is still undecided the bracket moves to an
    off-midpoint probe so the endpoints always stay decisively classified.
    """
    policy = policy or RunPolicy()
    tpolicy = tpolicy or ThresholdPolicy()

    # the ray must be nodewise monotone in lambda
    lams = [0.5 * tpolicy.lambda_init, tpolicy.lambda_init, 2.0 * tpolicy.lambda_init]
    for l1, l2 in zip(lams[:-1], lams[1:]):
        d = family.profile(l2).u - family.profile(l1).u
        if float(np.min(d)) < -1e-12:
            raise ValueError("family is not monotone in lambda")

    prober = _Prober(family, domain, grid, f, policy, tpolicy)

    lam = tpolicy.lambda_init
    out = prober.classify(lam)
    if out.is_blowup:
        lam_hi = lam
        while True:
            lam /= 2.0
            if lam < tpolicy.lambda_floor:
                raise RuntimeError("no global-side classification down to lambda_floor")
            out = prober.classify(lam)
            if out.is_global_side:
                lam_lo = lam
                break
            if out.is_blowup:
                lam_hi = lam
    else:
        if not out.is_global_side:
            raise RuntimeError(f"undecided at lambda_init: {out.reason}")
        lam_lo = lam
        while True:
            lam *= 2.0
            if lam > tpolicy.lambda_cap:
                raise RuntimeError(
                    "no blow-up found up to lambda_cap: family may be globally global")
            out = prober.classify(lam)
            if out.is_blowup:
                lam_hi = lam
                break
            if out.is_global_side:
                lam_lo = lam

    while (lam_hi - lam_lo) / lam_hi > tpolicy.width:
        moved = False
        # midpoint first, then off-midpoint fallbacks that keep shrinkage
        for frac in (0.5, 0.375, 0.625, 0.25, 0.75):
            cand = lam_lo + frac * (lam_hi - lam_lo)
            out = prober.classify(cand)
            if out.is_blowup:
                lam_hi = cand
                moved = True
                break
            if out.is_global_side:
                lam_lo = cand
                moved = True
                break
        if not moved:
            raise RuntimeError(
                f"bisection stalled on undecided probes in [{lam_lo:g}, {lam_hi:g}]")

    report = ThresholdReport(lam_lo=lam_lo, lam_hi=lam_hi, rows=prober.rows)
    report.check_monotone()
    return report


def _expect(out: SolveOutcome, want_blowup: bool, label: str) -> tuple[str, str]:
    if out.classification == UNDECIDED:
        return "undecided", label + ": undecided"
    if out.is_blowup == want_blowup:
        return "consistent", ""
    return "refuted", f"{label}: got {out.classification}"


def classify_threshold_type(report: ThresholdReport, family: InitialFamily,
                            domain: RadialDomain, grid: RadialGrid, f: Nonlinearity,
                            eps_list, policy: RunPolicy | None = None,
                            bump_rel: float = 1e-3) -> list[TypeVerdict]:
    """Test the three threshold notions around the bracketed lambda*.

    Multiplicative: (1+eps) above the upper endpoint must blow up, the lower
    endpoint shrunk by (1+eps) must be global.  f-shaped: u +/- eps f(u) at
    the endpoints.  Strict: a fixed compact bump of relative height bump_rel;
    this is only a surrogate for the order-theoretic notion, which quantifies
    over all ordered perturbations.
    """
    policy = policy or RunPolicy()
    eps_list = list(eps_list)
    if any(e <= 0 for e in eps_list):
        raise ValueError("eps values must be positive")
    verdicts: list[TypeVerdict] = []

    def run_profile(u: np.ndarray) -> SolveOutcome:
        return run(domain, grid, f, RadialProfile(grid, np.clip(u, 0.0, None)), policy)

    u_hi = family.profile(report.lam_hi).u
    u_lo = family.profile(report.lam_lo).u

    for name in ("eps_threshold", "epsf_threshold", "strict_surrogate"):
        status = "consistent"
        witness = ""
        for eps in eps_list:
            if name == "eps_threshold":
                pairs = [((1.0 + eps) * u_hi, True, f"(1+{eps:g})*upper"),
                         (u_lo / (1.0 + eps), False, f"lower/(1+{eps:g})")]
            elif name == "epsf_threshold":
                with np.errstate(over="ignore"):
                    pairs = [(u_hi + eps * np.asarray(f._f(u_hi)), True,
                              f"upper+{eps:g} f(upper)"),
                             (u_lo - eps * np.asarray(f._f(u_lo)), False,
                              f"lower-{eps:g} f(lower)")]
            else:
                bump = _bump(grid, bump_rel * float(np.max(u_hi)))
                pairs = [(u_hi + bump, True, "upper+bump"),
                         (u_lo - bump, False, "lower-bump")]
            for u, want, label in pairs:
                res = _expect(run_profile(u), want, label)
                if res[0] == "refuted":
                    status, witness = res
                    break
                if res[0] == "undecided" and status == "consistent":
                    status, witness = res
            if status == "refuted":
                break
            if name == "strict_surrogate":
                break  # one bump family, independent of eps
        verdicts.append(TypeVerdict(name=name, status=status, witness=witness))
    report.type_verdicts.extend(verdicts)
    return verdicts


def _bump(grid: RadialGrid, height: float) -> np.ndarray:
    """Compact C^1 bump of the given height supported on [0, R/4]."""
    r = grid.r
    R = grid.domain.R
    x = np.clip(4.0 * r / R, 0.0, 1.0)
    return height * (1.0 - x * x) ** 2


@dataclass
class SubthresholdTable:
    margins: list[float]
    rows: list[tuple[str, float, str, float]]   # (kind, margin, classification, sup)
    apriori_bound: float                        # max recorded sup over all probes

    def all_decayed(self) -> bool:
        return all(r[2] == DECAYED for r in self.rows)


def subthreshold_probe(report: ThresholdReport, family: InitialFamily,
                       domain: RadialDomain, grid: RadialGrid, f: Nonlinearity,
                       margins, policy: RunPolicy | None = None) -> SubthresholdTable:
    """Run data strictly below the bracket in both orderings and record bounds.

    For each margin m: u_lo - m f(u_lo) (f-shaped ordering) and u_lo/(1+m)
    (multiplicative).  The maximal recorded sup-norm is reported as the
    empirical a-priori bound.
    """
    policy = policy or RunPolicy()
    margins = list(margins)
    if any(m <= 0 for m in margins):
        raise ValueError("margins must be positive")
    u_lo = family.profile(report.lam_lo).u
    rows = []
    bound = 0.0
    for m in margins:
        with np.errstate(over="ignore"):
            epsf = np.clip(u_lo - m * np.asarray(f._f(u_lo)), 0.0, None)
        for kind, u in (("epsf", epsf), ("eps", u_lo / (1.0 + m))):
            out = run(domain, grid, f, RadialProfile(grid, u), policy)
            sup = float(np.max(out.series.sup_norm))
            rows.append((kind, m, out.classification, sup))
            bound = max(bound, sup)
    return SubthresholdTable(margins=margins, rows=rows, apriori_bound=bound)


def report_to_csv(report: ThresholdReport, path) -> None:
    """One row per probe plus a summary line, in a rerun-stable format."""
    with open(path, "w") as fh:
        fh.write("lambda,classification,sup_norm,T_est,energy_min,flags\n")
        for row in sorted(report.rows, key=lambda r: r.lam):
            t_est = "" if row.T_est is None else f"{row.T_est:.17g}"
            fh.write(f"{row.lam:.17g},{row.classification},{row.sup_norm:.17g},"
                     f"{t_est},{row.energy_min:.17g},{'|'.join(row.flags)}\n")
        fh.write(f"# bracket,{report.lam_lo:.17g},{report.lam_hi:.17g},"
                 f"rel_width,{report.rel_width:.17g}\n")
