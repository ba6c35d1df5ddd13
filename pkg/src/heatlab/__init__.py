"""Numerical laboratory for superlinear heat equations u_t - Delta u = f(u).

Radial method-of-lines solver with blow-up detection, steady-state geometry,
comparison/energy/zero-number diagnostics and a threshold bisection driver.
"""

__version__ = "0.1.0"
