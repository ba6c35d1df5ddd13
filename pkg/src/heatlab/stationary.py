"""Closed-form steady-state geometry for the critical and supercritical regimes.

Contains the critical exponent table, the explicit radial entire solutions of
Delta U + U^p = 0 at the critical power (the "bubble" family), the singular
power-law steady state, their intersection radii, and the quadrature constant
c0 built from the bubble profile.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss

__all__ = [
    "Exponents",
    "Bubble",
    "SingularState",
    "exponents",
    "sobolev_exponent",
    "joseph_lundgren_exponent",
    "bubble_eval",
    "bubble_deriv",
    "intersection_radii",
    "find_intersection",
    "c0_constant",
    "singular_state",
    "surface_area",
]

_GL_X, _GL_W = leggauss(20)


def surface_area(n: int) -> float:
    """Area of the unit sphere S^{n-1} in R^n (2 for n = 1)."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


def sobolev_exponent(n: int) -> float:
    return math.inf if n <= 2 else 1.0 + 4.0 / (n - 2.0)


def joseph_lundgren_exponent(n: int) -> float:
    if n <= 10:
        return math.inf
    return 1.0 + 4.0 * (n - 4.0 + 2.0 * math.sqrt(n - 1.0)) / ((n - 2.0) * (n - 10.0))


@dataclass(frozen=True)
class Exponents:
    n: int
    p: float
    p_S: float
    p_JL: float
    m: float              # 2/(p-1)
    ell: float | None     # slow-decay exponent, real branch only


def exponents(n: int, p: float) -> Exponents:
    """Critical exponents and the decay exponent ell for dimension n, power p."""
    if n < 1 or int(n) != n:
        raise ValueError("dimension must be a positive integer")
    if p <= 1:
        raise ValueError("growth exponent must be > 1")
    p_S = sobolev_exponent(n)
    p_JL = joseph_lundgren_exponent(n)
    m = 2.0 / (p - 1.0)
    disc = (n - 2.0 - 2.0 * m) ** 2 - 8.0 * (n - 2.0 - m)
    ell = None
    if math.isfinite(p_JL) and p >= p_JL and disc >= 0.0:
        ell = 0.5 * (n - 2.0 - math.sqrt(disc))
    return Exponents(n=int(n), p=float(p), p_S=p_S, p_JL=p_JL, m=m, ell=ell)


# ---------------------------------------------------------------------------
# Bubble family U_A at the critical power


def bubble_eval(n: int, A: float, r):
    """U_A(r) = A (1 + r^2 A^{4/(n-2)} / (n(n-2)))^{-(n-2)/2}; U_A(0) = A."""
    if n < 3:
        raise ValueError("bubble profiles need n >= 3")
    if A <= 0:
        raise ValueError("bubble amplitude must be positive")
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0):
        raise ValueError("radius must be nonnegative")
    kappa = A ** (4.0 / (n - 2.0)) / (n * (n - 2.0))
    out = A * (1.0 + kappa * r_arr * r_arr) ** (-(n - 2.0) / 2.0)
    return out if out.shape != () else float(out)


def bubble_deriv(n: int, A: float, r):
    """d/dr of U_A(r)."""
    if n < 3:
        raise ValueError("bubble profiles need n >= 3")
    r_arr = np.asarray(r, dtype=float)
    kappa = A ** (4.0 / (n - 2.0)) / (n * (n - 2.0))
    out = -A * (n - 2.0) * kappa * r_arr * (1.0 + kappa * r_arr * r_arr) ** (-n / 2.0)
    return out if out.shape != () else float(out)


@dataclass(frozen=True)
class Bubble:
    n: int
    A: float

    def __call__(self, r):
        return bubble_eval(self.n, self.A, r)

    def deriv(self, r):
        return bubble_deriv(self.n, self.A, r)


def intersection_radii(n: int, A: float | None = None, c: float | None = None) -> dict:
    """Closed-form radii of the bubble geometry.

    A1: the unique radius with U_1 = U_A (A != 1); Rc: the level radius with
    U_1 = c (0 < c < 1); Rstar: the hypothesis radius bounding the
    intersection construction.  Returns whichever are requested plus Rstar.
    """
    if n < 3:
        raise ValueError("bubble geometry needs n >= 3")
    nn = n * (n - 2.0)
    out = {"Rstar": 2.0 ** ((n - 1.0) / (n - 2.0)) * math.sqrt(nn)}
    if A is not None:
        if A <= 0 or A == 1.0:
            raise ValueError("A1 requires A > 0, A != 1")
        A1 = A ** (-1.0 / (n - 2.0)) * math.sqrt(nn)
        if abs(bubble_eval(n, 1.0, A1) - bubble_eval(n, A, A1)) > 1e-12:
            raise AssertionError("closed-form intersection radius failed self-check")
        out["A1"] = A1
    if c is not None:
        if not 0.0 < c < 1.0:
            raise ValueError("level radius requires 0 < c < 1")
        Rc = math.sqrt(nn * (c ** (-2.0 / (n - 2.0)) - 1.0))
        if abs(bubble_eval(n, 1.0, Rc) - c) > 1e-12:
            raise AssertionError("closed-form level radius failed self-check")
        out["Rc"] = Rc
    return out


def find_intersection(n: int, A: float, y0_norm: float, R: float) -> dict:
    """Locate y with U_1(y) = U_A(y - y0) and |y| < R/2, radially encoded.

    Follows the constructive bracketing on phi(t) = U_1(t y0) - U_A((t-1) y0):
    phi(0) > 0 always; if phi(1) <= 0 the root lies in (0, 1], otherwise in
    (1, A1/|y0|).  Bisection to interval width 1e-14 plus a secant polish.
    Preconditions: A in [1/2, 1), R > Rstar, |y0| < R/2.
    """
    if not (0.5 <= A < 1.0):
        raise ValueError("amplitude must lie in [1/2, 1)")
    radii = intersection_radii(n, A=A)
    Rstar, A1 = radii["Rstar"], radii["A1"]
    if R <= Rstar:
        raise ValueError("domain radius must exceed Rstar")
    if not 0.0 <= y0_norm < R / 2.0:
        raise ValueError("|y0| must be < R/2")

    if y0_norm == 0.0:
        return {"t0": None, "y_norm": A1, "phi_at_root": 0.0}

    def phi(t):
        return bubble_eval(n, 1.0, abs(t) * y0_norm) - bubble_eval(n, A, abs(t - 1.0) * y0_norm)

    if phi(1.0) <= 0.0:
        lo, hi = 0.0, 1.0
    else:
        lo, hi = 1.0, A1 / y0_norm
    flo, fhi = phi(lo), phi(hi)
    if not (flo > 0.0 >= fhi):
        raise RuntimeError("sign bracket violated despite hypotheses")
    while hi - lo > 1e-14:
        mid = 0.5 * (lo + hi)
        if phi(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    t0 = 0.5 * (lo + hi)
    # one secant polish using the closed-form slope
    dphi = (bubble_deriv(n, 1.0, t0 * y0_norm) * y0_norm
            - bubble_deriv(n, A, abs(t0 - 1.0) * y0_norm) * y0_norm * math.copysign(1.0, t0 - 1.0))
    if dphi != 0.0:
        t_new = t0 - phi(t0) / dphi
        if lo - 1e-13 <= t_new <= hi + 1e-13 and abs(phi(t_new)) < abs(phi(t0)):
            t0 = t_new
    y_norm = t0 * y0_norm
    if not y_norm < R / 2.0:
        raise RuntimeError("intersection escaped the half-radius ball")
    return {"t0": float(t0), "y_norm": float(y_norm), "phi_at_root": float(phi(t0))}


def c0_constant(n: int, Cf: float, panels: int = 8) -> float:
    """The positive constant (2 Cf^{(n-2)/2})^{-1} * int_{U_1 > 1/2} (U_1^{p+1} - 2^{-(p+1)}).

    Composite 20-point Gauss-Legendre in the radial variable; `panels`
    controls refinement (the value is stable to well below 1e-8 at the
    default).
    """
    if n < 3:
        raise ValueError("c0 needs n >= 3")
    if Cf <= 0:
        raise ValueError("growth constant must be positive")
    R_half = intersection_radii(n, c=0.5)["Rc"]
    p = sobolev_exponent(n)
    edges = np.linspace(0.0, R_half, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        r = mid + half * _GL_X
        vals = (bubble_eval(n, 1.0, r) ** (p + 1.0) - 0.5 ** (p + 1.0)) * r ** (n - 1.0)
        total += half * float(np.sum(vals * _GL_W))
    c0 = surface_area(n) * total / (2.0 * Cf ** ((n - 2.0) / 2.0))
    if c0 <= 0:
        raise AssertionError("c0 must be positive")
    return c0


# ---------------------------------------------------------------------------
# Singular steady state


@dataclass(frozen=True)
class SingularState:
    n: int
    p: float
    m: float
    c_p: float

    def __call__(self, r):
        r_arr = np.asarray(r, dtype=float)
        if np.any(r_arr <= 0):
            raise ValueError("singular state is defined for r > 0")
        out = self.c_p * r_arr ** (-self.m)
        return out if out.shape != () else float(out)


def singular_state(n: int, p: float) -> SingularState:
    """U_*(r) = c_p r^{-m} with m = 2/(p-1), c_p = (m(n-2-m))^{1/(p-1)}.

    The constant comes from inserting the power ansatz into Delta U + U^p = 0;
    a finite-difference residual check at construction guards against a wrong
    constant.
    """
    if n < 3:
        raise ValueError("singular state needs n >= 3")
    m = 2.0 / (p - 1.0)
    if p <= n / (n - 2.0):
        raise ValueError("need p > n/(n-2) for a positive constant")
    c_p = (m * (n - 2.0 - m)) ** (1.0 / (p - 1.0))
    state = SingularState(n=n, p=float(p), m=m, c_p=c_p)

    # residual guard: finite differences in extended precision, so that a
    # wrong constant cannot hide behind double-precision cancellation
    import mpmath as mp

    with mp.workdps(40):
        cp = mp.mpf(c_p)
        mm = mp.mpf(m)

        def u_of(r):
            return cp * r ** (-mm)

        for rv in (mp.mpf("0.1"), mp.mpf(1), mp.mpf(10)):
            h = rv * mp.mpf("1e-8")
            vals = [u_of(rv + k * h) for k in (-2, -1, 0, 1, 2)]
            d2 = (-vals[0] + 16 * vals[1] - 30 * vals[2] + 16 * vals[3] - vals[4]) / (12 * h * h)
            d1 = (vals[0] - 8 * vals[1] + 8 * vals[3] - vals[4]) / (12 * h)
            resid = abs(d2 + (n - 1) / rv * d1 + vals[2] ** p) / abs(vals[2] ** p)
            if resid > 1e-9:
                raise AssertionError(f"singular-state residual {float(resid):g} at r={float(rv)}")
    return state
