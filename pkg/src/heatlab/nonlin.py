"""Catalog of superlinear source terms f(u) and structural checkers.

Every nonlinearity bundles the triplet (f, f', F) with F the antiderivative
of f vanishing at 0, plus the growth/convexity constants that the solver and
threshold machinery consume.  All evaluators are vectorized over numpy
arrays and defined on s >= 0 only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate
from scipy.optimize import brentq

__all__ = [
    "Nonlinearity",
    "Verdict",
    "HypothesisReport",
    "power",
    "log_power",
    "exp_minus_linear",
    "sum_of_powers",
    "linear_power_spline",
    "zero",
    "catalog",
    "check_osgood",
    "check_f1_f4",
    "log_constants",
    "g_log",
    "h_a",
    "golden_max",
]

_GL_X, _GL_W = leggauss(64)


def _as_nonneg(s) -> np.ndarray:
    arr = np.asarray(s, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("source-term argument must be finite")
    if np.any(arr < 0):
        raise ValueError("source-term argument must be nonnegative")
    return arr


def _match_shape(out: np.ndarray, template) -> np.ndarray | float:
    if np.ndim(template) == 0:
        return float(np.asarray(out).reshape(-1)[0])
    return np.asarray(out)


def golden_max(fun: Callable[[float], float], lo: float, hi: float,
               tol: float = 1e-12) -> tuple[float, float]:
    """Maximize a scalar function on [lo, hi]; golden section + endpoint checks.

    Returns (argmax, max).  The endpoints are always candidates, so monotone
    functions resolve to the correct end.
    """
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    while (b - a) > tol * (1.0 + abs(a) + abs(b)):
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    mid = 0.5 * (a + b)
    cands = [(lo, fun(lo)), (hi, fun(hi)), (mid, fun(mid))]
    return max(cands, key=lambda t: t[1])


@dataclass(frozen=True)
class Nonlinearity:
    """A source term f with evaluators for f, f' and F(s) = int_0^s f.

    p is the polynomial growth exponent at infinity (math.inf for the
    exponential kind, nan for the zero term).  The remaining scalars are the
    structural constants, kept None when no closed form is known; the
    checkers then fit them over a sample grid and record the fit.
    """

    kind: str
    params: tuple[float, ...]
    p: float
    C_f: float | None = None
    C_tilde_f: float | None = None
    eta_AR: float | None = None
    C_eta: float | None = None
    _f: Callable = field(repr=False, default=None)
    _df: Callable = field(repr=False, default=None)
    _F: Callable = field(repr=False, default=None)

    def __call__(self, s):
        arr = _as_nonneg(s)
        return _match_shape(self._f(arr), s)

    def deriv(self, s):
        arr = _as_nonneg(s)
        return _match_shape(self._df(arr), s)

    def antideriv(self, s):
        arr = _as_nonneg(s)
        return _match_shape(self._F(arr), s)

    @property
    def label(self) -> str:
        if not self.params:
            return self.kind
        return self.kind + ":" + ":".join(f"{v:g}" for v in self.params)


def _gl_antideriv(f: Callable) -> Callable:
    """64-point Gauss-Legendre antiderivative on [0, s], vectorized in s."""

    def F(s: np.ndarray) -> np.ndarray:
        flat = np.atleast_1d(s).astype(float)
        half = 0.5 * flat[:, None]
        nodes = half * (_GL_X[None, :] + 1.0)
        vals = f(nodes)
        out = np.sum(vals * _GL_W[None, :], axis=1) * half[:, 0]
        return out.reshape(np.shape(s)) if np.ndim(s) else out

    return F


def power(p: float) -> Nonlinearity:
    """f(s) = s**p.  p >= 1 (p = 1 is the divergent negative control)."""
    if p < 1:
        raise ValueError("power exponent must be >= 1")

    def f(s):
        return s ** p

    def df(s):
        if p == 1:
            return np.ones_like(s)
        return p * s ** (p - 1.0)

    def F(s):
        return s ** (p + 1.0) / (p + 1.0)

    return Nonlinearity(
        kind="power", params=(p,), p=float(p),
        C_f=1.0, C_tilde_f=0.0,
        eta_AR=(p - 1.0) if p > 1 else None,
        C_eta=0.0 if p > 1 else None,
        _f=f, _df=df, _F=F)


def log_power(p: float, a: float) -> Nonlinearity:
    """f(s) = s**p * log(2 + s^2)**a.  p = 1 is allowed as a negative control."""
    if p < 1:
        raise ValueError("log-power growth exponent must be >= 1")
    c_ell = _c_ell()
    a_ell = -(p - 1.0) * c_ell
    # f'(s)s/f(s) = p + a/g(s) with inf g = c_ell and sup g = inf
    eta = p - 1.0 + min(a, 0.0) / c_ell
    df0 = math.log(2.0) ** a if p == 1 else 0.0

    def f(s):
        with np.errstate(over="ignore"):
            return s ** p * np.log(2.0 + s * s) ** a

    def df(s):
        L = np.log(2.0 + s * s)
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            out = s ** (p - 1.0) * L ** (a - 1.0) * (p * L + 2.0 * a * s * s / (2.0 + s * s))
        return np.where(s == 0.0, df0, out)

    return Nonlinearity(
        kind="logpower", params=(p, a), p=float(p),
        C_f=math.log(2.0) ** a if a <= 0 else None,
        C_tilde_f=0.0 if a <= 0 else None,
        eta_AR=eta if (a > a_ell and eta > 0) else None,
        C_eta=0.0 if (a > a_ell and eta > 0) else None,
        _f=f, _df=df, _F=_gl_antideriv(f))


def exp_minus_linear() -> Nonlinearity:
    """f(s) = e^s - s - 1; exponentially growing, convex, f(0) = f'(0) = 0."""

    def f(s):
        with np.errstate(over="ignore"):
            return np.expm1(s) - s

    def df(s):
        with np.errstate(over="ignore"):
            return np.expm1(s)

    def F(s):
        with np.errstate(over="ignore"):
            return np.expm1(s) - s - 0.5 * s * s

    return Nonlinearity(kind="expminuslinear", params=(), p=math.inf,
                        eta_AR=1.0, C_eta=0.0, _f=f, _df=df, _F=F)


def sum_of_powers(p_lead: float, p: float, eta: float) -> Nonlinearity:
    """f(s) = s**p_lead + eta * s**p.

    The leading exponent is an explicit parameter because the catalog entry
    is dimension-agnostic; callers pass the critical exponent of whatever
    dimension they simulate in.
    """
    if p_lead <= 1 or p <= 1:
        raise ValueError("sum-of-powers exponents must be > 1")
    if eta < 0:
        raise ValueError("sum-of-powers coefficient must be >= 0")
    growth = max(p_lead, p) if eta > 0 else p_lead

    def f(s):
        return s ** p_lead + eta * s ** p

    def df(s):
        return p_lead * s ** (p_lead - 1.0) + eta * p * s ** (p - 1.0)

    def F(s):
        return s ** (p_lead + 1.0) / (p_lead + 1.0) + eta * s ** (p + 1.0) / (p + 1.0)

    return Nonlinearity(kind="sumofpowers", params=(p_lead, p, eta), p=float(growth),
                        C_f=1.0 + eta, C_tilde_f=1.0 + eta,
                        eta_AR=min(p_lead, p) - 1.0, C_eta=0.0,
                        _f=f, _df=df, _F=F)


def zero() -> Nonlinearity:
    """The trivial source term f = 0 (pure heat equation)."""

    def zf(s):
        return np.zeros_like(s)

    return Nonlinearity(kind="zero", params=(), p=math.nan,
                        C_f=0.0, C_tilde_f=0.0, _f=zf, _df=zf, _F=zf)


# ---------------------------------------------------------------------------
# Convex spline kind: linear head, C^2 piecewise-cubic bridge, exact power tail


def _lin_integral(a: float, b: float, ya: float, yb: float) -> float:
    return 0.5 * (b - a) * (ya + yb)


def _lin_moment(a: float, b: float, ya: float, yb: float, s1: float) -> float:
    # int_a^b (s1 - s) * (ya + (yb - ya)(s - a)/(b - a)) ds, exact
    h = b - a
    c0 = s1 - a
    val = c0 * ya + 0.5 * (c0 * (yb - ya) - h * ya) - h * (yb - ya) / 3.0
    return h * val


def _bridge_heights(xs: np.ndarray, curv1: float, D1: float, D2: float):
    """Solve for interior nodes of a nonnegative piecewise-linear f''.

    f'' runs through (x0, 0), (x1, h1), (x2, h2), (x3, curv1); h1, h2 are
    chosen so that int f'' = D1 and int (x3 - s) f'' = D2.  Returns None when
    the solution would be negative.
    """
    s1 = xs[3]
    tot = np.zeros(4)
    mom = np.zeros(4)
    for i in range(4):
        for k in range(3):
            ya = 1.0 if k == i else 0.0
            yb = 1.0 if k + 1 == i else 0.0
            if ya == 0.0 and yb == 0.0:
                continue
            tot[i] += _lin_integral(xs[k], xs[k + 1], ya, yb)
            mom[i] += _lin_moment(xs[k], xs[k + 1], ya, yb, s1)
    A = np.array([[tot[1], tot[2]], [mom[1], mom[2]]])
    b = np.array([D1 - curv1 * tot[3], D2 - curv1 * mom[3]])
    try:
        h = np.linalg.solve(A, b)
    except np.linalg.LinAlgError:
        return None
    if not np.all(h >= -1e-12):
        return None
    return np.clip(h, 0.0, None)


def linear_power_spline(lam: float, s_lin: float, p: float) -> Nonlinearity:
    """Convex C^1 spline: f = lam*s on [0, s_lin], f = s**p beyond a bridge.

    The bridge is a C^2 piecewise cubic obtained by integrating a nonnegative
    piecewise-linear second derivative twice; the handover point to the power
    tail is found by scanning until the nonnegativity constraints admit a
    solution, which also makes f'' continuous at the tail.
    """
    if lam <= 0 or s_lin <= 0 or p <= 1:
        raise ValueError("spline needs lam > 0, s_lin > 0, p > 1")

    m0, v0 = lam, lam * s_lin
    found = None
    for s1 in np.geomspace(s_lin * 1.05, s_lin * 1e4, 600):
        m1 = p * s1 ** (p - 1.0)
        v1 = s1 ** p
        if v1 <= v0 or m1 <= m0:
            continue
        xs = np.linspace(s_lin, s1, 4)
        curv1 = p * (p - 1.0) * s1 ** (p - 2.0)
        h = _bridge_heights(xs, curv1, m1 - m0, v1 - v0 - m0 * (s1 - s_lin))
        if h is not None:
            found = (s1, xs, np.array([0.0, h[0], h[1], curv1]))
            break
    if found is None:
        raise ValueError("no convex bridge between linear head and power tail")
    s1, xs, hs = found

    # cumulative slope/value at the f'' breakpoints (exact per linear piece)
    bridge_m = [m0]
    bridge_v = [v0]
    for k in range(3):
        hk = xs[k + 1] - xs[k]
        ya, yb = hs[k], hs[k + 1]
        bridge_v.append(bridge_v[-1] + bridge_m[-1] * hk + ya * hk * hk / 2.0
                        + (yb - ya) * hk * hk / 6.0)
        bridge_m.append(bridge_m[-1] + 0.5 * hk * (ya + yb))
    bridge_m = np.array(bridge_m)
    bridge_v = np.array(bridge_v)

    def _bridge_piece(s):
        idx = np.clip(np.searchsorted(xs, s, side="right") - 1, 0, 2)
        a = xs[idx]
        ya, yb = hs[idx], hs[idx + 1]
        hk = xs[idx + 1] - a
        d = s - a
        val = bridge_v[idx] + bridge_m[idx] * d + ya * d * d / 2.0 + (yb - ya) * d ** 3 / (6.0 * hk)
        slope = bridge_m[idx] + ya * d + (yb - ya) * d * d / (2.0 * hk)
        return val, slope

    F_head_end = 0.5 * lam * s_lin ** 2
    # antiderivative of the bridge at its breakpoints via per-piece Gauss rule
    F_bridge_nodes = [F_head_end]
    for k in range(3):
        half = 0.5 * (xs[k + 1] - xs[k])
        mid = 0.5 * (xs[k + 1] + xs[k])
        pts = mid + half * _GL_X
        F_bridge_nodes.append(F_bridge_nodes[-1] + half * np.sum(_GL_W * _bridge_piece(pts)[0]))
    F_bridge_nodes = np.array(F_bridge_nodes)
    F_tail_start = float(F_bridge_nodes[-1])

    def _select(s, head, bridge, tail):
        out = np.empty_like(s)
        mh = s <= s_lin
        mt = s >= s1
        mb = ~(mh | mt)
        out[mh] = head(s[mh])
        out[mt] = tail(s[mt])
        if np.any(mb):
            out[mb] = bridge(s[mb])
        return out

    def f(s):
        return _select(s, lambda x: lam * x, lambda x: _bridge_piece(x)[0],
                       lambda x: x ** p)

    def df(s):
        return _select(s, lambda x: np.full_like(x, lam), lambda x: _bridge_piece(x)[1],
                       lambda x: p * x ** (p - 1.0))

    def F_bridge(s):
        idx = np.clip(np.searchsorted(xs, s, side="right") - 1, 0, 2)
        out = np.empty_like(s)
        for k in range(3):
            m = idx == k
            if not np.any(m):
                continue
            sv = s[m]
            half = 0.5 * (sv - xs[k])
            mid = 0.5 * (sv + xs[k])
            pts = mid[:, None] + half[:, None] * _GL_X[None, :]
            vals = _bridge_piece(pts.ravel())[0].reshape(pts.shape)
            out[m] = F_bridge_nodes[k] + half * np.sum(vals * _GL_W[None, :], axis=1)
        return out

    def F(s):
        return _select(s, lambda x: 0.5 * lam * x * x, F_bridge,
                       lambda x: F_tail_start + (x ** (p + 1.0) - s1 ** (p + 1.0)) / (p + 1.0))

    return Nonlinearity(kind="convexspline", params=(lam, s_lin, p), p=float(p),
                        _f=f, _df=df, _F=F)


def catalog() -> list[Nonlinearity]:
    """The standard test battery of source terms."""
    return [
        power(2), power(3), power(5),
        log_power(5, -1.0), log_power(3, 1.0),
        exp_minus_linear(),
        sum_of_powers(5.0, 2.0, 0.5),
    ]


# ---------------------------------------------------------------------------
# Structural hypothesis checkers


@dataclass(frozen=True)
class Verdict:
    status: str                      # "holds" | "fails" | "inconclusive"
    witness: float | None = None     # s or lambda at which the call was decided
    margin: float | None = None
    value: float | None = None       # e.g. the computed integral for Osgood
    note: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"


@dataclass(frozen=True)
class HypothesisReport:
    """Per-condition verdicts over a declared sample range."""

    f10_convex: Verdict
    f10_osgood: Verdict
    f1_monotone: Verdict
    f2_scaling_limit: Verdict
    f3_AR: Verdict
    f4_growth: Verdict
    fMM_lower: Verdict
    sample_range: tuple[float, float]
    constants: dict = field(default_factory=dict)

    def all_hold(self) -> bool:
        return all(v.holds for v in (
            self.f10_convex, self.f10_osgood, self.f1_monotone,
            self.f2_scaling_limit, self.f3_AR, self.f4_growth, self.fMM_lower))


def check_osgood(f: Nonlinearity, s0: float) -> Verdict:
    """Decide convergence of int_{s0}^infty ds/f(s).

    Adaptive quadrature on the integrand plus a tail policy built from local
    growth exponents fitted on a dyadic probe at large S.  When the fitted
    exponents straddle 1 the verdict is inconclusive; it is range-limited by
    construction.
    """
    if s0 <= 0:
        raise ValueError("osgood start point must be positive")
    probe = np.geomspace(s0, max(1e6, 10 * s0), 200)
    fv = np.asarray(f(probe))
    if np.any(fv <= 0.0):
        return Verdict("inconclusive", witness=float(probe[int(np.argmax(fv <= 0.0))]),
                       note="f vanishes on the tail")
    if math.isinf(f.p):
        val, _ = integrate.quad(lambda s: 1.0 / max(float(f(s)), 1e-300), s0, np.inf, limit=200)
        return Verdict("holds", value=float(val), note="superpolynomial growth")

    S = max(1e6, 10.0 * s0)
    svals = np.array([2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0])
    with np.errstate(over="ignore"):
        ratios = np.log(np.asarray(f(S * svals)) / float(f(S))) / np.log(svals)
    if not np.all(np.isfinite(ratios)):
        return Verdict("inconclusive", note="overflow while fitting tail exponent")
    q_low, q_hi = float(np.min(ratios)), float(np.max(ratios))
    if q_low > 1.001:
        import warnings

        with warnings.catch_warnings():
            # slowly decaying tails converge but trip the subdivision cap
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            val, _ = integrate.quad(lambda s: 1.0 / float(f(s)), s0, np.inf, limit=400)
        return Verdict("holds", value=float(val), margin=q_low - 1.0,
                       note=f"tail exponent >= {q_low:.4g} at S={S:g}")
    if q_hi <= 1.0 + 1e-6:
        return Verdict("fails", witness=S, margin=q_hi - 1.0,
                       note=f"tail exponent <= {q_hi:.4g}: divergent")
    return Verdict("inconclusive", witness=S,
                   note=f"tail exponents straddle 1: [{q_low:.4g}, {q_hi:.4g}]")


def _check_f1(f, sample):
    g = np.asarray(f(sample)) / sample
    diffs = np.diff(g)
    bad = diffs < -1e-10 * (1.0 + np.abs(g[:-1]))
    if np.any(bad):
        i = int(np.argmax(bad))
        return Verdict("fails", witness=float(sample[i + 1]), margin=float(diffs[i]))
    return Verdict("holds", margin=float(np.min(diffs)) if diffs.size else 0.0)


def _check_f2(f, lambda_max):
    if not math.isfinite(f.p):
        return Verdict("inconclusive", note="no finite growth exponent")
    svals = np.geomspace(0.5, 2.0, 9)
    lams = [10.0, 1e2, 1e3, lambda_max]
    devs = []
    for lam in lams:
        with np.errstate(over="ignore"):
            ratio = np.asarray(f(lam * svals)) / float(f(lam))
        dev = np.abs(ratio - svals ** f.p) / np.maximum(1.0, svals ** f.p)
        devs.append(float(np.max(dev)))
    monotone = all(devs[i + 1] <= devs[i] * (1 + 1e-9) + 1e-12 for i in range(len(devs) - 1))
    witness = None
    for lam, d in zip(lams, devs):
        if d >= 1e-2:
            witness = lam
    note = "deviation by lambda: " + ", ".join(f"{l:g}:{d:.3g}" for l, d in zip(lams, devs))
    if devs[-1] < 1e-2 and monotone:
        return Verdict("holds", witness=witness, margin=devs[-1], note=note)
    return Verdict("fails", witness=witness if witness is not None else lams[-1],
                   margin=devs[-1], note=note)


def _check_f3(f, sample, constants):
    declared = f.eta_AR is not None
    if declared:
        eta = f.eta_AR
        C = f.C_eta if f.C_eta is not None else 0.0
    else:
        eta = (f.p - 1.0) / 2.0 if (math.isfinite(f.p) and f.p > 1) else 0.5
        C = None
    Fv = np.asarray(f.antideriv(sample))
    lhs = np.asarray(f(sample)) * sample
    deficit = (2.0 + eta) * Fv - lhs
    if not declared:
        C = float(max(0.0, np.max(deficit)))
        if C > 0 and int(np.argmax(deficit)) == deficit.size - 1:
            constants.update(eta_AR=eta, C_eta=None)
            return Verdict("fails", witness=float(sample[-1]), margin=float(deficit[-1]),
                           note="deficit still growing at sample edge")
    constants.update(eta_AR=eta, C_eta=C)
    slack = lhs + C - (2.0 + eta) * Fv
    margin = float(np.min(slack))
    scale = 1.0 + float(np.max(np.abs(lhs)))
    if margin >= -1e-8 * scale:
        return Verdict("holds", margin=margin, note="declared" if declared else "fitted")
    return Verdict("fails", witness=float(sample[int(np.argmin(slack))]), margin=margin)


def _check_f4(f, sample, constants):
    if not math.isfinite(f.p):
        return Verdict("inconclusive", note="no finite growth exponent")
    declared = f.C_f is not None
    if declared:
        Cf = f.C_f
        Ct = f.C_tilde_f if f.C_tilde_f is not None else 0.0
    else:
        hi = sample[sample >= 1.0]
        lo = sample[sample < 1.0]
        ratio = np.asarray(f(hi)) / hi ** f.p if hi.size else np.array([1.0])
        # growth beyond s^p shows up as the ratio still climbing at the edge
        if hi.size >= 3 and ratio[-1] > ratio[-2] > 1e-9 + ratio[0]:
            constants.update(C_f=None, C_tilde_f=None)
            return Verdict("fails", witness=float(hi[-1]),
                           margin=float(ratio[-1] / max(ratio[0], 1e-300) - 1.0),
                           note="f/s^p increasing at sample edge")
        Cf = float(np.max(ratio)) * (1 + 1e-12)
        Ct = float(max(0.0, np.max(np.asarray(f(lo)) - Cf * lo ** f.p))) if lo.size else 0.0
    constants.update(C_f=Cf, C_tilde_f=Ct)
    slack = Cf * sample ** f.p + Ct - np.asarray(f(sample))
    margin = float(np.min(slack))
    scale = 1.0 + float(np.max(np.asarray(f(sample))))
    if margin >= -1e-8 * scale:
        return Verdict("holds", margin=margin, note="declared" if declared else "fitted")
    return Verdict("fails", witness=float(sample[int(np.argmin(slack))]), margin=margin)


def _check_fmm(f, constants):
    if not math.isfinite(f.p):
        return Verdict("inconclusive", note="no finite growth exponent")
    q = 0.5 * (f.p + 1.0)
    lams = np.geomspace(1.0, 1e4, 13)
    svals = np.geomspace(1.0, 100.0, 25)
    best = math.inf
    worst_at = None
    for lam in lams:
        with np.errstate(over="ignore"):
            ratio = np.asarray(f(lam * svals)) / (float(f(lam)) * svals ** q)
        m = float(np.min(ratio))
        if m < best:
            best, worst_at = m, float(lam)
    constants["c_f_MM"] = best
    if best >= 1e-6:
        return Verdict("holds", margin=best, note=f"c_f={best:.4g}")
    return Verdict("fails", witness=worst_at, margin=best)


def _check_f10(f, sample):
    f0 = float(f(0.0))
    if f0 != 0.0:
        return Verdict("fails", witness=0.0, margin=f0, note="f(0) != 0")
    vals = np.asarray(f(sample))
    if np.any(vals < 0.0):
        i = int(np.argmax(vals < 0.0))
        return Verdict("fails", witness=float(sample[i]), note="f < 0")
    d = np.asarray(f.deriv(sample))
    diffs = np.diff(d)
    bad = diffs < -1e-9 * (1.0 + np.abs(d[:-1]))
    if np.any(bad):
        i = int(np.argmax(bad))
        return Verdict("fails", witness=float(sample[i + 1]), margin=float(diffs[i]),
                       note="f' decreasing: not convex")
    return Verdict("holds")


def check_f1_f4(f: Nonlinearity, sample, lambda_max: float = 1e30) -> HypothesisReport:
    """Run all structural checks on a sample grid; failures become verdicts.

    The scaling-limit check uses s in [1/2, 2] and a relative deviation
    normalized by max(1, s^p): logarithmic corrections reach the power limit
    only at astronomically large lambda, hence the large default.
    """
    sample = np.asarray(sample, dtype=float)
    if sample.ndim != 1 or sample.size < 3 or np.any(np.diff(sample) <= 0) or np.any(sample <= 0):
        raise ValueError("sample must be a strictly increasing positive grid")
    if lambda_max < 10:
        raise ValueError("lambda_max must be >= 10")
    constants: dict = {}
    return HypothesisReport(
        f10_convex=_check_f10(f, sample),
        f10_osgood=check_osgood(f, s0=1.0),
        f1_monotone=_check_f1(f, sample),
        f2_scaling_limit=_check_f2(f, lambda_max),
        f3_AR=_check_f3(f, sample, constants),
        f4_growth=_check_f4(f, sample, constants),
        fMM_lower=_check_fmm(f, constants),
        sample_range=(float(sample[0]), float(sample[-1])),
        constants=constants,
    )


# ---------------------------------------------------------------------------
# Constants of the logarithmic catalog entry


def g_log(u):
    """g(u) = log(2+u^2) (2+u^2) / (2 u^2); its infimum controls convexity."""
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr <= 0):
        raise ValueError("g is defined for u > 0")
    out = np.log(2.0 + u_arr * u_arr) * (2.0 + u_arr * u_arr) / (2.0 * u_arr * u_arr)
    return _match_shape(out, u)


def _log_root() -> tuple[float, float]:
    def eqn(u):
        return 2.0 * math.log(2.0 + u * u) - u * u

    u_ell = brentq(eqn, 1.0, 3.0, xtol=1e-15, rtol=8.9e-16)
    return u_ell, abs(eqn(u_ell))


def _c_ell() -> float:
    u_ell, _ = _log_root()
    return 0.25 * (2.0 + u_ell * u_ell)


def log_constants(p: float) -> dict:
    """Solve 2 log(2+u^2) = u^2; return u_ell, c_ell = (2+u_ell^2)/4, a_ell."""
    if p <= 1:
        raise ValueError("growth exponent must be > 1")
    u_ell, resid = _log_root()
    if resid > 1e-12:
        raise RuntimeError(f"log-constant root residual {resid:g} too large")
    c_ell = 0.25 * (2.0 + u_ell * u_ell)
    return {"u_ell": float(u_ell), "c_ell": float(c_ell),
            "a_ell": float(-(p - 1.0) * c_ell), "residual": float(resid)}


def h_a(p: float, a: float, u):
    """Convexity indicator of the log-power term: sign(h_a) = sign(f'') for u > 0."""
    u_arr = np.asarray(u, dtype=float)
    if np.any(u_arr <= 0):
        raise ValueError("h_a is defined for u > 0")
    g = np.asarray(g_log(u_arr))
    r = a / (p - 1.0)
    out = (p * g * g
           + r * g * (4.0 * p + 2.0 + (2.0 * p - 1.0) * u_arr ** 2) / (2.0 + u_arr ** 2)
           + r * (a - 1.0))
    return _match_shape(out, u)
