"""Acceptance criteria, each at its stated tolerance.

Every criterion records one PASS/FAIL line (plus indented sub-check lines);
conftest prints them all in the terminal summary.
"""
import json
import warnings

import numpy as np
import pytest
from click.testing import CliRunner
from oracles import GAMMA0, GAMMA0_QUOTED, GAMMA1, H0, H1, SQRT2

from matchlet import (
    DataSequence,
    DecayCertificate,
    MeyerTargetSequence,
    build_meyer,
    check_admissibility,
    design_matched,
    eval_cardinal_scaling,
    eval_cardinal_wavelet,
    eval_h,
    eval_lattice,
    eval_psi_time,
    frame_function,
    gram_eigen_check,
    gram_matrix,
    project_feasible,
    solve_h_coefficients,
    verify_interpolation,
)
from matchlet.cli import main
from matchlet.formats import load_artifact
from matchlet.meyer import PHI_BREAKPOINTS, Gam3Warning
from matchlet.verification import periodization

RESULTS = []


class Criterion:
    def __init__(self, label):
        self.label = label
        self.rows = []

    def le(self, name, measured, tol):
        self.rows.append((name, float(measured), tol, bool(measured < tol)))

    def near(self, name, measured, target, tol):
        self.rows.append((name, float(abs(measured - target)), tol,
                          bool(abs(measured - target) < tol)))

    def flag(self, name, ok):
        self.rows.append((name, float("nan"), None, bool(ok)))

    @property
    def passed(self):
        return all(r[3] for r in self.rows)

    def lines(self):
        out = [f"{self.label}: {'PASS' if self.passed else 'FAIL'}"]
        for name, m, tol, ok in self.rows:
            bound = "" if tol is None else f" {m:.3e} < {tol:.0e}"
            out.append(f"    [{'pass' if ok else 'FAIL'}] {name}{bound}")
        return out

    def finish(self):
        RESULTS.append(self.lines())
        print("\n".join(self.lines()))
        failed = [r[0] for r in self.rows if not r[3]]
        assert not failed, f"{self.label} failed: {', '.join(failed)}"


def cli(*args):
    return CliRunner().invoke(main, [str(a) for a in args], catch_exceptions=False)


def test_criterion_1_cardinal_identities():
    c = Criterion("criterion 1 cardinal identities")
    n = np.arange(-50, 51)
    c.le("wavelet psi^I(n+1/2) = delta", np.max(np.abs(eval_cardinal_wavelet(n + 0.5) - (n == 0))),
         1e-12)
    c.le("scaling phi^I(k) = delta", np.max(np.abs(eval_cardinal_scaling(n) - (n == 0))), 1e-12)
    c.finish()


def test_criterion_2_two_point_riesz():
    c = Criterion("criterion 2 matched wavelet for gamma=(1, 1/2)")
    psi = design_matched(DataSequence.finite(np.array([1.0, 0.5])))
    c.near("A = 1/4", psi.bounds.A, 0.25, 1e-9)
    c.near("B = 9/4", psi.bounds.B, 2.25, 1e-9)
    c.le("interpolation |n| <= 20", verify_interpolation(psi, 20).residual, 1e-8)
    xi = np.linspace(0, 2 * np.pi, 4096, endpoint=False)
    ff = frame_function(psi, xi)
    c.le("frame function vs 5/4 + cos xi", np.max(np.abs(ff - (1.25 + np.cos(xi)))), 1e-10)
    e = gram_eigen_check(psi, 32)
    c.flag("65x65 Gram spectrum inside [A-1e-6, B+1e-6]",
           e.eigenvalues.size == 65 and e.lower >= 0.25 - 1e-6 and e.upper <= 2.25 + 1e-6)
    c.finish()


def test_criterion_3_perturbation_path(tmp_path):
    c = Criterion("criterion 3 reject (1,1), perturb, accept")
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"schema": "matchlet/1", "lattice": "half-integer",
                                "gamma": [1, 1]}))
    r = cli("design", "--spec", spec, "--out", tmp_path / "a.json",
            "--report", tmp_path / "r.json")
    rep = json.loads((tmp_path / "r.json").read_text())
    roots = rep["diagnostics"].get("on_circle_roots", [])
    c.flag("rejected with exit 1", r.exit_code == 1)
    c.flag("report names root -1",
           any(abs(re + 1) < 1e-9 and abs(im) < 1e-9 for re, im in roots))
    r = cli("perturb", "--spec", spec, "--delta", 0.05, "--out", tmp_path / "p.json")
    c.flag("perturb exit 0", r.exit_code == 0)
    r = cli("design", "--spec", tmp_path / "p.json", "--out", tmp_path / "a.json",
            "--report", tmp_path / "r2.json")
    c.flag("perturbed design accepted", r.exit_code == 0)
    A = load_artifact(tmp_path / "a.json").bounds["A"]
    c.near("A = (1 - 1/1.05)^2", A, (1 - 1 / 1.05) ** 2, 1e-9)
    c.finish()


def meyer_battery(c, gamma):
    g = MeyerTargetSequence(gamma)
    coeffs = solve_h_coefficients(g)
    c.near("h^(0) = (2+sqrt2)/4", coeffs[0], H0, 1e-12)
    c.near("h^(1) = (2-sqrt2)/4", coeffs[1], H1, 1e-12)
    c.le("h^(n>=2) = 0", max((abs(coeffs[n]) for n in range(2, coeffs.n_max + 1)), default=0.0),
         1e-12)
    adm = check_admissibility(g)
    c.near("lhs1 = 1", adm.lhs1, 1.0, 1e-12)
    c.near("lhs2 = sqrt2/2", adm.lhs2, SQRT2 / 2, 1e-12)
    c.near("lhs3 = 1", adm.lhs3, 1.0, 1e-12)
    c.near("h(0) = 1", eval_h(coeffs, 0.0), 1.0, 1e-12)
    c.near("h(pi/3) = sqrt2/2", eval_h(coeffs, np.pi / 3), SQRT2 / 2, 1e-12)
    model = build_meyer(coeffs, strict=False)
    xi = np.linspace(-np.pi, np.pi, 4096, endpoint=False)
    pou = periodization(model.phi_hat, xi, breakpoints=PHI_BREAKPOINTS)
    c.le("partition of unity", np.max(np.abs(pou - 1)), 1e-10)
    m0, m1 = model.mask(xi), model.mask(xi + np.pi)
    c.le("mask complementarity", np.max(np.abs(np.abs(m0) ** 2 + np.abs(m1) ** 2 - 1)), 1e-10)
    k = np.arange(9)
    target = np.array([gamma[i] if i < len(gamma) else 0.0 for i in k])
    psi_t = eval_psi_time(model, 0.5 + 3 * k)
    c.le("lattice interpolation 0 <= k <= 8", np.max(np.abs(psi_t - target)), 1e-8)
    c.le("eval_lattice vs eval_psi_time",
         np.max(np.abs(eval_lattice(model, k, check_tol=np.inf) - psi_t)), 1e-10)
    G = gram_matrix(model, 8).value
    c.le("Gram orthonormality |k| <= 8", np.max(np.abs(G - np.eye(17))), 1e-7)
    c.le("cross-scale 0 vs 1", np.max(np.abs(gram_matrix(model, 8, (0, 1)).value)), 1e-7)


def test_criterion_4_meyer_two_point_as_stated():
    # gamma_0 exactly as quoted; see the decisions ledger for why this cannot pass
    c = Criterion("criterion 4 Meyer two-point, gamma_0=(1+sqrt2)/4 as stated")
    meyer_battery(c, [GAMMA0_QUOTED, GAMMA1])
    c.finish()


def test_criterion_4_supplementary_consistent_sequence():
    c = Criterion("criterion 4 (supplementary) same battery, gamma_0=(1+sqrt2)/2")
    meyer_battery(c, [GAMMA0, GAMMA1])
    c.finish()


def test_criterion_5_recurrence_sweep_and_fixed_point():
    c = Criterion("criterion 5 recurrence sweep and feasible fixed point")
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(100):
        L = int(rng.integers(2, 64))
        C, eps = float(rng.uniform(0.1, 2.0)), float(rng.uniform(0.1, 1.0))
        k = np.arange(L)
        vals = rng.uniform(-1, 1, L) * C * np.maximum(k, 1.0) ** (-2 - eps)
        seq = MeyerTargetSequence(vals, DecayCertificate(C, eps))
        worst = max(worst, float(np.max(np.abs(solve_h_coefficients(seq).recurrence_residuals()))))
    c.le("recurrence residual over 100 random sequences", worst, 1e-12)
    drift = 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", Gam3Warning)
        for _ in range(50):
            tail = rng.uniform(-0.01, 0.01, int(rng.integers(1, 10)))
            adm = project_feasible(MeyerTargetSequence(np.concatenate([[0, 0], tail])), (0, 1))
            again = project_feasible(adm, (0, 1))
            drift = max(drift, float(np.max(np.abs(again.values - adm.values))))
    c.le("project_feasible fixed point", drift, 1e-12)
    c.finish()


@pytest.mark.parametrize("lattice, gamma", [("half-integer", [1, 0.5, -0.2]),
                                            ("meyer3", [GAMMA0, GAMMA1])])
def test_criterion_6_verify_determinism(tmp_path, lattice, gamma):
    c = Criterion(f"criterion 6 verify determinism ({lattice})")
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"schema": "matchlet/1", "lattice": lattice, "gamma": gamma}))
    cli("design", "--spec", spec, "--out", tmp_path / "a.json", "--report", tmp_path / "d.json")
    r1 = cli("verify", "--artifact", tmp_path / "a.json", "--report", tmp_path / "v1.json")
    r2 = cli("verify", "--artifact", tmp_path / "a.json", "--report", tmp_path / "v2.json")
    c.flag("verify exit 0 twice", r1.exit_code == 0 and r2.exit_code == 0)
    b1, b2 = (tmp_path / "v1.json").read_bytes(), (tmp_path / "v2.json").read_bytes()
    c.flag("reruns bit-identical", b1 == b2)
    c.flag("matches design-time report", b1 == (tmp_path / "d.json").read_bytes())
    art = load_artifact(tmp_path / "a.json")
    c.flag("artifact round-trips", type(art).from_json(art.to_json()) == art)
    c.finish()
