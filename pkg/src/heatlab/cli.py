"""Configuration-driven command line entry point.

Subcommands: exponents, constants, solve, threshold, verify, scenario.
Experiments are described by flat dotted-key config files (section.key =
value); artifacts (CSV series, plots, manifest) land in --out-dir.  Exit
codes: 0 ok, 2 config/domain error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__, diagnostics, nonlin, stationary, threshold
from .solver import (RadialDomain, RadialProfile, RunPolicy, make_grid,
                     outcome_to_csv, run, run_pair_ordered)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


class ConfigError(Exception):
    pass


# ---------------------------------------------------------------------------
# Config files: flat "section.key = value" lines, '#' comments


_KNOWN_KEYS = {
    "domain.kind", "domain.n", "domain.radius", "domain.far_field",
    "grid.intervals", "grid.policy",
    "nonlin.kind", "nonlin.p", "nonlin.a", "nonlin.eta", "nonlin.p_lead",
    "nonlin.lam", "nonlin.s_lin",
    "policy.t_max", "policy.m_blow", "policy.decay_tol", "policy.bound_cap",
    "policy.bound_window", "policy.error_target", "policy.dt_init",
    "policy.dt_min", "policy.dt_max", "policy.cfl_fraction",
    "policy.energy_certificate", "policy.store_profiles",
    "family.kind", "family.A", "family.gamma", "family.C0", "family.R0",
    "family.eta", "family.alpha", "family.eps", "family.p",
    "solve.lam",
    "threshold.width", "threshold.lambda_init", "threshold.lambda_cap",
    "threshold.eps_list", "threshold.margins",
}


def parse_config_text(text: str) -> dict:
    cfg: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'section.key = value'")
        key, val = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        cfg[key] = _coerce(val)
    return cfg


def _coerce(val: str):
    low = val.lower()
    if low in ("true", "false"):
        return low == "true"
    if "," in val:
        return [float(v) for v in val.split(",") if v.strip()]
    for cast in (int, float):
        try:
            return cast(val)
        except ValueError:
            continue
    return val


def load_config(path: str | Path) -> tuple[dict, str]:
    text = Path(path).read_text()
    return parse_config_text(text), text


def make_nonlinearity(spec) -> nonlin.Nonlinearity:
    """Build a source term from 'kind:arg:arg' strings or a config dict."""
    if isinstance(spec, str):
        parts = spec.split(":")
        kind, args = parts[0], [float(v) for v in parts[1:]]
        table = {
            "power": lambda: nonlin.power(*args),
            "logpower": lambda: nonlin.log_power(*args),
            "expminuslinear": lambda: nonlin.exp_minus_linear(),
            "sumofpowers": lambda: nonlin.sum_of_powers(*args),
            "spline": lambda: nonlin.linear_power_spline(*args),
            "zero": lambda: nonlin.zero(),
        }
        if kind not in table:
            raise ConfigError(f"unknown nonlinearity kind {kind!r}")
        try:
            return table[kind]()
        except TypeError as exc:
            raise ConfigError(f"bad arguments for {kind!r}: {exc}") from exc
    kind = spec.get("nonlin.kind", "power")
    if kind == "power":
        return nonlin.power(spec.get("nonlin.p", 3.0))
    if kind == "logpower":
        return nonlin.log_power(spec.get("nonlin.p", 5.0), spec.get("nonlin.a", -1.0))
    if kind == "expminuslinear":
        return nonlin.exp_minus_linear()
    if kind == "sumofpowers":
        return nonlin.sum_of_powers(spec.get("nonlin.p_lead", 5.0),
                                    spec.get("nonlin.p", 2.0),
                                    spec.get("nonlin.eta", 0.0))
    if kind == "spline":
        return nonlin.linear_power_spline(spec.get("nonlin.lam", 1.0),
                                          spec.get("nonlin.s_lin", 1.0),
                                          spec.get("nonlin.p", 5.0))
    if kind == "zero":
        return nonlin.zero()
    raise ConfigError(f"unknown nonlinearity kind {kind!r}")


def make_domain(cfg: dict) -> RadialDomain:
    kind = cfg.get("domain.kind", "ball")
    n = int(cfg.get("domain.n", 3))
    R = float(cfg.get("domain.radius", 1.0))
    if kind == "ball":
        return RadialDomain.ball(n, R)
    if kind == "truncated_whole_space":
        return RadialDomain.truncated_whole_space(
            n, R, cfg.get("domain.far_field", "dirichlet_zero"))
    raise ConfigError(f"unknown domain kind {kind!r}")


def make_policy(cfg: dict) -> RunPolicy:
    kw = {}
    table = {
        "policy.t_max": "T_max", "policy.m_blow": "M_blow",
        "policy.decay_tol": "decay_tol", "policy.bound_cap": "bound_cap",
        "policy.bound_window": "bound_window", "policy.error_target": "error_target",
        "policy.dt_init": "dt_init", "policy.dt_min": "dt_min",
        "policy.dt_max": "dt_max", "policy.cfl_fraction": "cfl_fraction",
        "policy.energy_certificate": "energy_certificate",
        "policy.store_profiles": "store_profiles",
    }
    for key, attr in table.items():
        if key in cfg:
            kw[attr] = cfg[key]
    return RunPolicy(**kw)


def make_family(cfg: dict, grid) -> threshold.InitialFamily:
    kind = cfg.get("family.kind", "eigenmode")
    if kind == "eigenmode":
        return threshold.eigenmode_family(grid)
    if kind == "bubble_tail":
        return threshold.bubble_tail_family(grid, cfg.get("family.A", 1.0),
                                            cfg.get("family.gamma", 2.0),
                                            cfg.get("family.C0", 1.0))
    if kind == "compact_cap":
        return threshold.compact_cap_family(grid, cfg.get("family.R0", 1.0),
                                            cfg.get("family.eta", 0.5))
    if kind == "singular_minus":
        return threshold.singular_minus_family(grid, cfg.get("family.p", 7.0),
                                               cfg.get("family.alpha", 5.0),
                                               cfg.get("family.eps", 0.5))
    raise ConfigError(f"unknown family kind {kind!r}")


def _build(cfg: dict):
    domain = make_domain(cfg)
    grid = make_grid(domain, int(cfg.get("grid.intervals", 128)),
                     cfg.get("grid.policy", "uniform"))
    f = make_nonlinearity(cfg)
    policy = make_policy(cfg)
    return domain, grid, f, policy


def write_manifest(out_dir: Path, config_text: str, artifacts: list[str],
                   extra: dict | None = None) -> None:
    manifest = {
        "heatlab_version": __version__,
        "numpy_version": np.__version__,
        "config_sha256": hashlib.sha256(config_text.encode()).hexdigest(),
        "artifacts": sorted(artifacts),
    }
    if extra:
        manifest.update(extra)
    (out_dir / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# Subcommands


def cmd_exponents(args) -> int:
    tab = stationary.exponents(args.n, args.p if args.p is not None else 2.0)
    print(f"n = {tab.n}")
    print(f"p_S  = {tab.p_S:g}")
    print(f"p_JL = {tab.p_JL:g}")
    if args.p is not None:
        print(f"p    = {tab.p:g}")
        print(f"m    = {tab.m:.12g}")
        print(f"ell  = {tab.ell:.12g}" if tab.ell is not None else "ell  = (not real)")
    return EXIT_OK


def cmd_constants(args) -> int:
    if args.log:
        lc = nonlin.log_constants(args.p if args.p is not None else 5.0)
        print(f"u_ell = {lc['u_ell']:.6f}")
        print(f"c_ell = {lc['c_ell']:.6f}")
        print(f"a_ell = {lc['a_ell']:.6f}")
        return EXIT_OK
    n = args.n
    radii = stationary.intersection_radii(n, c=0.5)
    print(f"R_half = {radii['Rc']:.12g}")
    print(f"Rstar  = {radii['Rstar']:.12g}")
    print(f"c0     = {stationary.c0_constant(n, args.Cf):.12g}   (Cf = {args.Cf:g})")
    if args.p is not None and args.p > n / (n - 2.0):
        state = stationary.singular_state(n, args.p)
        print(f"c_p    = {state.c_p:.12g}   m = {state.m:.12g}")
    return EXIT_OK


def cmd_solve(args, out_dir: Path) -> int:
    cfg, text = load_config(args.config)
    domain, grid, f, policy = _build(cfg)
    fam = make_family(cfg, grid)
    lam = float(cfg.get("solve.lam", 1.0))
    outcome = run(domain, grid, f, fam.profile(lam), policy)
    csv_path = out_dir / "trajectory.csv"
    outcome_to_csv(outcome, csv_path)
    write_manifest(out_dir, text, ["trajectory.csv"], {
        "classification": outcome.classification,
        "T_est": outcome.T_est,
        "steps_accepted": outcome.steps_accepted,
        "flags": list(outcome.flags),
    })
    print(f"{outcome.classification}  value={outcome.value:g}  reason: {outcome.reason}")
    if outcome.T_est is not None:
        print(f"T_est = {outcome.T_est:.6g}")
    print(f"series: {outcome.series.t.size} rows -> {csv_path}")
    return EXIT_OK


def cmd_threshold(args, out_dir: Path) -> int:
    cfg, text = load_config(args.config)
    domain, grid, f, policy = _build(cfg)
    fam = make_family(cfg, grid)
    tpol = threshold.ThresholdPolicy(
        width=float(cfg.get("threshold.width", 1e-3)),
        lambda_init=float(cfg.get("threshold.lambda_init", 1.0)),
        lambda_cap=float(cfg.get("threshold.lambda_cap", 1e6)))
    rep = threshold.bisect_threshold(fam, domain, grid, f, policy, tpol)
    eps_list = cfg.get("threshold.eps_list", [0.05, 0.1])
    margins = cfg.get("threshold.margins", [0.05, 0.1])
    if isinstance(eps_list, float):
        eps_list = [eps_list]
    if isinstance(margins, float):
        margins = [margins]
    verdicts = threshold.classify_threshold_type(rep, fam, domain, grid, f, eps_list, policy)
    table = threshold.subthreshold_probe(rep, fam, domain, grid, f, margins, policy)
    csv_path = out_dir / "threshold.csv"
    threshold.report_to_csv(rep, csv_path)
    write_manifest(out_dir, text, ["threshold.csv"], {
        "bracket": [rep.lam_lo, rep.lam_hi],
        "rel_width": rep.rel_width,
        "type_verdicts": {v.name: v.status for v in verdicts},
        "apriori_bound": table.apriori_bound,
    })
    print(f"bracket [{rep.lam_lo:.8g}, {rep.lam_hi:.8g}]  rel width {rep.rel_width:.3g}")
    for v in verdicts:
        print(f"{v.name}: {v.status}" + (f"  ({v.witness})" if v.witness else ""))
    print(f"subthreshold probes: {'all DECAYED' if table.all_decayed() else 'mixed'}; "
          f"a-priori bound {table.apriori_bound:g}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify: named desk-scale checks


def _verify_subsol(args, cfg):
    f = make_nonlinearity(args.f or "power:3")
    domain = RadialDomain.ball(3, 1.0)
    grid = make_grid(domain, 96)
    eig = diagnostics.eigenpair(grid)
    eps = args.eps
    v0 = RadialProfile(grid, eig.phi.u.copy())
    u0 = RadialProfile(grid, v0.u + eps * np.asarray(f._f(v0.u)))
    pol = RunPolicy(T_max=2.0, error_target=1e-8)
    _, _, rep = run_pair_ordered(domain, grid, f, u0, v0, pol, margin_eps=eps)
    ok = rep.min_margin >= -1e-6
    return ok, f"min margin {rep.min_margin:.3g} (tolerance -1e-6)"


def _verify_ub(args, cfg):
    f = make_nonlinearity(args.f or "power:3")
    domain = RadialDomain.ball(3, 1.0)
    grid = make_grid(domain, 96)
    eig = diagnostics.eigenpair(grid)
    pol = RunPolicy(T_max=6.0, store_profiles=True)
    out = run(domain, grid, f, RadialProfile(grid, 2.0 * eig.phi.u), pol)
    rep = diagnostics.kaplan_series(out.profiles, out.profile_times, f, eig)
    ok = out.is_global_side and math.isfinite(rep.sup_y)
    return ok, f"{out.classification}, sup y = {rep.sup_y:.4g}"


def _verify_compuv1(args, cfg):
    f = make_nonlinearity(args.f or "power:3")
    s = np.linspace(0.0, 1.0, 201)
    rep = diagnostics.iterate_map(f, eps=1.0, M0=1.0, k=args.k, s=s)
    worst = min(float(np.min(m)) for m in rep.upper_margins)
    return worst >= -1e-12, f"min upper-bound margin {worst:.3g}, eta={rep.eta:.4g}"


def _verify_itergi(args, cfg):
    f = make_nonlinearity(args.f or "power:3")
    s = np.geomspace(1.0, 1e3, 200)
    rep = diagnostics.iterate_growth_check(f, eps=1.0, M0=1.0, k_max=args.k, s_grid=s)
    worst = max(rep.max_violation)
    return worst <= 0.0, f"max violation {worst:.3g} over k<={args.k}"


def _verify_lemm2(args, cfg):
    f = make_nonlinearity(args.f or "power:3")
    results = [diagnostics.ramp_transit_oracle(f, M) for M in (1e2, 1e4, 1e6)]
    ok = all(r.holds for r in results)
    detail = "; ".join(f"M={M:g}: transit {r.t_transit:.3g} >= bound {r.bound:.3g}"
                       for M, r in zip((1e2, 1e4, 1e6), results))
    return ok, detail


def _verify_intersect(args, cfg):
    rng = np.random.default_rng(args.seed)
    from .stationary import find_intersection, intersection_radii
    worst = 0.0
    for _ in range(200):
        n = int(rng.integers(3, 9))
        A = float(rng.uniform(0.5, 0.999))
        Rstar = intersection_radii(n)["Rstar"]
        R = float(Rstar * rng.uniform(1.01, 3.0))
        y0 = float(rng.uniform(1e-6, R / 2 * 0.999))
        res = find_intersection(n, A, y0, R)
        worst = max(worst, abs(res["phi_at_root"]))
        if not res["y_norm"] < R / 2:
            return False, f"escaped half ball at n={n}, A={A}"
    return worst < 1e-12, f"200 random triples, worst |phi(t0)| = {worst:.2e}"


def _verify_energy_mono(args, cfg):
    f = make_nonlinearity(args.f or "power:3")
    domain = RadialDomain.ball(3, 1.0)
    grid = make_grid(domain, 96)
    eig = diagnostics.eigenpair(grid)
    pol = RunPolicy(T_max=2.0)
    out = run(domain, grid, f, RadialProfile(grid, 3.0 * eig.phi.u), pol)
    E = out.series.energy
    tol = 1e-6 * (1.0 + abs(E[0]))
    worst = float(np.max(np.diff(E))) if E.size > 1 else 0.0
    return worst <= tol, f"max energy increment {worst:.3g} (tol {tol:.3g})"


def _verify_zero_sturm(args, cfg):
    f = make_nonlinearity(args.f or "power:3")
    domain = RadialDomain.ball(3, 1.0)
    grid = make_grid(domain, 96)
    eig = diagnostics.eigenpair(grid)
    # two ordered-free profiles crossing once
    a0 = RadialProfile(grid, 2.0 * eig.phi.u)
    b0 = np.clip(1.2 * np.cos(0.5 * math.pi * grid.r / grid.domain.R), 0.0, None)
    b0[-1] = 0.0
    pol = RunPolicy(T_max=0.5, store_profiles=True)
    out_a = run(domain, grid, f, a0, pol)
    out_b = run(domain, grid, f, RadialProfile(grid, b0), pol)
    counts = []
    k = min(len(out_a.profiles), len(out_b.profiles))
    for i in range(k):
        counts.append(diagnostics.zero_number(out_a.profiles[i], out_b.profiles[i],
                                              deadband=1e-9, r=grid.r).count)
    ok = all(counts[i + 1] <= counts[i] for i in range(len(counts) - 1))
    return ok, f"zero-number sequence {counts[:5]}...{counts[-3:]}"


_VERIFY = {
    "lem-subsol": _verify_subsol,
    "lem-UB": _verify_ub,
    "compuv1": _verify_compuv1,
    "itergi": _verify_itergi,
    "lemM2": _verify_lemm2,
    "intersect": _verify_intersect,
    "energy-mono": _verify_energy_mono,
    "zero-sturm": _verify_zero_sturm,
}


def cmd_verify(args) -> int:
    if args.check not in _VERIFY:
        print(f"unknown check {args.check!r}; choose from {sorted(_VERIFY)}", file=sys.stderr)
        return EXIT_CONFIG
    cfg = {}
    if args.config:
        cfg, _ = load_config(args.config)
    ok, detail = _VERIFY[args.check](args, cfg)
    print(f"{args.check}: {'PASS' if ok else 'FAIL'} — {detail}")
    return EXIT_OK if ok else EXIT_NUMERICAL


# ---------------------------------------------------------------------------
# Scenarios


def _zero_number_helper(grid, a, b):
    return diagnostics.zero_number(a, b, deadband=1e-9, r=grid.r)


def _plot_outcomes(out_dir: Path, tagged_outcomes, name: str) -> str:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for tag, out in tagged_outcomes:
        axes[0].plot(out.series.t, out.series.sup_norm, label=tag)
        axes[1].plot(out.series.t, out.series.energy, label=tag)
    axes[0].set_xlabel("t")
    axes[0].set_ylabel("sup norm")
    axes[0].set_yscale("log")
    axes[1].set_xlabel("t")
    axes[1].set_ylabel("energy")
    axes[0].legend(fontsize=7)
    fig.tight_layout()
    path = out_dir / f"{name}.png"
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path.name


def _plot_lambda_strip(out_dir: Path, rep, name: str) -> str:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    colors = {"BLOWUP": "tab:red", "DECAYED": "tab:blue",
              "GLOBAL_BOUNDED": "tab:green", "UNDECIDED": "tab:gray"}
    fig, ax = plt.subplots(figsize=(8, 1.8))
    for row in rep.rows:
        ax.scatter([row.lam], [0.0], c=colors.get(row.classification, "k"), s=40)
    ax.axvspan(rep.lam_lo, rep.lam_hi, color="gold", alpha=0.4)
    ax.set_yticks([])
    ax.set_xlabel("lambda")
    fig.tight_layout()
    path = out_dir / f"{name}_strip.png"
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path.name


def _fanout(jobs, tasks):
    """Run lambda-keyed tasks on a small pool; results keyed, not ordered."""
    if jobs <= 1:
        return {key: fn() for key, fn in tasks}
    results = {}
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        futs = {key: pool.submit(fn) for key, fn in tasks}
        for key, fut in futs.items():
            results[key] = fut.result()
    return results


def _scn_log_constants(args, cfg, out_dir: Path):
    p = float(cfg.get("nonlin.p", 5.0))
    lc = nonlin.log_constants(p)
    us = np.linspace(0.05, 4.0, 400)
    hs = nonlin.h_a(p, lc["a_ell"], us)
    neg = us[np.asarray(hs) < 0.0]
    lines = ["quantity,value",
             f"u_ell,{lc['u_ell']:.17g}",
             f"c_ell,{lc['c_ell']:.17g}",
             f"a_ell,{lc['a_ell']:.17g}",
             f"h_at_u_ell,{nonlin.h_a(p, lc['a_ell'], lc['u_ell']):.17g}",
             f"h_negative_witness,{(neg[0] if neg.size else float('nan')):.17g}"]
    (out_dir / "log_constants.csv").write_text("\n".join(lines) + "\n")
    print(f"u_ell = {lc['u_ell']:.4f}, c_ell = {lc['c_ell']:.4f}, a_ell = {lc['a_ell']:.4f}")
    return ["log_constants.csv"]


def _scn_subcritical_decay(args, cfg, out_dir: Path):
    cfg = {**{"domain.kind": "ball", "domain.n": 3, "domain.radius": 1.0,
              "grid.intervals": 96, "nonlin.kind": "power", "nonlin.p": 3,
              "policy.t_max": 20.0, "threshold.width": 2e-2}, **cfg}
    domain, grid, f, policy = _build(cfg)
    fam = make_family(cfg, grid)
    tpol = threshold.ThresholdPolicy(width=float(cfg["threshold.width"]))
    rep = threshold.bisect_threshold(fam, domain, grid, f, policy, tpol)
    margins = cfg.get("threshold.margins", [0.05, 0.1])
    table = threshold.subthreshold_probe(rep, fam, domain, grid, f, margins, policy)
    threshold.report_to_csv(rep, out_dir / "threshold.csv")
    tasks = [(f"sub_{m:g}", (lambda mm=m: run(domain, grid, f,
              RadialProfile(grid, fam.profile(rep.lam_lo).u / (1.0 + mm)), policy)))
             for m in margins]
    outs = _fanout(args.jobs, tasks)
    arts = ["threshold.csv",
            _plot_outcomes(out_dir, sorted(outs.items()), "subcritical_decay"),
            _plot_lambda_strip(out_dir, rep, "subcritical_decay")]
    for tag, out in sorted(outs.items()):
        outcome_to_csv(out, out_dir / f"{tag}.csv")
        arts.append(f"{tag}.csv")
    all_dec = table.all_decayed() and all(o.classification == "DECAYED" for o in outs.values())
    print(f"bracket [{rep.lam_lo:.4g}, {rep.lam_hi:.4g}]; "
          f"subthreshold probes {'all DECAYED' if all_dec else 'MIXED'}")
    return arts


def _scn_critical_ball(args, cfg, out_dir: Path):
    cfg = {**{"domain.kind": "ball", "domain.n": 3, "domain.radius": 1.0,
              "grid.intervals": 96, "nonlin.kind": "power", "nonlin.p": 5,
              "policy.t_max": 20.0, "threshold.width": 2e-2,
              "family.kind": "compact_cap", "family.R0": 0.6, "family.eta": 0.3}, **cfg}
    domain, grid, f, policy = _build(cfg)
    fam = make_family(cfg, grid)
    tpol = threshold.ThresholdPolicy(width=float(cfg["threshold.width"]))
    rep = threshold.bisect_threshold(fam, domain, grid, f, policy, tpol)
    hi = run(domain, grid, f, fam.profile(rep.lam_hi * 1.05), policy)
    lo = run(domain, grid, f, fam.profile(rep.lam_lo / 1.05), policy)
    threshold.report_to_csv(rep, out_dir / "threshold.csv")
    arts = ["threshold.csv",
            _plot_outcomes(out_dir, [("above", hi), ("below", lo)], "critical_ball"),
            _plot_lambda_strip(out_dir, rep, "critical_ball")]
    print(f"bracket [{rep.lam_lo:.4g}, {rep.lam_hi:.4g}]; above: {hi.classification}, "
          f"below: {lo.classification}")
    return arts


def _scn_supercritical_tail(args, cfg, out_dir: Path):
    cfg = {**{"domain.kind": "truncated_whole_space", "domain.n": 11,
              "domain.radius": 40.0, "grid.intervals": 160,
              "nonlin.kind": "power", "nonlin.p": 7, "policy.t_max": 5.0,
              "family.kind": "singular_minus", "family.p": 7.0,
              "family.eps": 0.5}, **cfg}
    domain, grid, f, policy = _build(cfg)
    tab = stationary.exponents(domain.n, float(cfg["nonlin.p"]))
    ell = tab.ell
    outs = []
    for tag, alpha in (("alpha_above_ell", ell + 1.0), ("alpha_below_ell",
                                                        0.5 * (tab.m + ell))):
        fam = threshold.singular_minus_family(grid, float(cfg["family.p"]), alpha,
                                              float(cfg["family.eps"]))
        out = run(domain, grid, f, fam.profile(1.0), policy)
        outcome_to_csv(out, out_dir / f"{tag}.csv")
        outs.append((tag, out))
        print(f"{tag} (alpha={alpha:.4g}): {out.classification} {out.flags}")
    arts = [f"{tag}.csv" for tag, _ in outs]
    arts.append(_plot_outcomes(out_dir, outs, "supercritical_tail"))
    print(f"ell({domain.n},{cfg['nonlin.p']:g}) = {ell:.6g}; global-side labels are "
          "truncation relative")
    return arts


def _scn_sum_of_powers(args, cfg, out_dir: Path):
    cfg = {**{"domain.kind": "truncated_whole_space", "domain.n": 3,
              "domain.radius": 12.0, "grid.intervals": 120,
              "policy.t_max": 8.0, "threshold.width": 2e-2,
              "family.kind": "compact_cap", "family.R0": 1.0, "family.eta": 0.5,
              "nonlin.eta": 0.0, "nonlin.p": 2.5}, **cfg}
    n = int(cfg["domain.n"])
    p_S = stationary.sobolev_exponent(n)
    eta = float(cfg["nonlin.eta"])
    f = nonlin.sum_of_powers(p_S, float(cfg["nonlin.p"]), eta) if eta > 0 \
        else nonlin.power(p_S)
    domain = make_domain(cfg)
    grid = make_grid(domain, int(cfg["grid.intervals"]), cfg.get("grid.policy", "uniform"))
    policy = make_policy(cfg)
    fam = make_family(cfg, grid)
    tpol = threshold.ThresholdPolicy(width=float(cfg["threshold.width"]))
    rep = threshold.bisect_threshold(fam, domain, grid, f, policy, tpol)
    threshold.report_to_csv(rep, out_dir / "threshold.csv")
    arts = ["threshold.csv", _plot_lambda_strip(out_dir, rep, "sum_of_powers")]
    print(f"f = {f.label} at p_S({n}) = {p_S:g}; bracket "
          f"[{rep.lam_lo:.4g}, {rep.lam_hi:.4g}] (global side truncation relative)")
    return arts


_SCENARIOS = {
    "log-constants": _scn_log_constants,
    "subcritical-decay": _scn_subcritical_decay,
    "critical-ball": _scn_critical_ball,
    "supercritical-tail": _scn_supercritical_tail,
    "sum-of-powers": _scn_sum_of_powers,
    "exam-sum": _scn_sum_of_powers,
}


def cmd_scenario(args, out_dir: Path) -> int:
    if args.name not in _SCENARIOS:
        print(f"unknown scenario {args.name!r}; choose from {sorted(_SCENARIOS)}",
              file=sys.stderr)
        return EXIT_CONFIG
    cfg, text = ({}, "")
    if args.config:
        cfg, text = load_config(args.config)
    overrides = {}
    if args.n is not None:
        overrides["domain.n"] = args.n
    if args.eta is not None:
        overrides["nonlin.eta"] = args.eta
    if args.p is not None:
        overrides["nonlin.p"] = args.p
    cfg = {**cfg, **overrides}
    artifacts = _SCENARIOS[args.name](args, cfg, out_dir)
    write_manifest(out_dir, text + json.dumps(overrides, sort_keys=True), artifacts,
                   {"scenario": args.name, "seed": args.seed})
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="heatlab",
                                 description="superlinear heat equation laboratory")
    ap.add_argument("--out-dir", default="heatlab_out", help="artifact directory")
    ap.add_argument("--jobs", type=int, default=1, help="worker pool for scenario fan-out")
    ap.add_argument("--seed", type=int, default=12345, help="seed for randomized checks")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exponents", help="critical exponent table")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, default=None)

    p = sub.add_parser("constants", help="geometry constants; --log for the log family")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--Cf", type=float, default=1.0)
    p.add_argument("--log", action="store_true")

    p = sub.add_parser("solve", help="single run from a config file")
    p.add_argument("--config", required=True)

    p = sub.add_parser("threshold", help="bisection report from a config file")
    p.add_argument("--config", required=True)

    p = sub.add_parser("verify", help="named desk-scale inequality checks")
    p.add_argument("check", choices=sorted(_VERIFY))
    p.add_argument("--f", default=None, help="nonlinearity, e.g. power:3 or logpower:5:-1")
    p.add_argument("--eps", type=float, default=0.1)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--config", default=None)

    p = sub.add_parser("scenario", help="preset experiment bundles")
    p.add_argument("name")
    p.add_argument("--config", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--eta", type=float, default=None)
    p.add_argument("--p", type=float, default=None)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "exponents":
            return cmd_exponents(args)
        if args.command == "constants":
            return cmd_constants(args)
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        if args.command == "solve":
            return cmd_solve(args, out_dir)
        if args.command == "threshold":
            return cmd_threshold(args, out_dir)
        if args.command == "verify":
            return cmd_verify(args)
        if args.command == "scenario":
            return cmd_scenario(args, out_dir)
        return EXIT_CONFIG
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RuntimeError, AssertionError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
