"""Acceptance gate: the fourteen primary criteria, one printed PASS/FAIL line each.

Run with pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``.
"""

import math
import sys
import time

import numpy as np

from lagtori.cli import main as cli_main
from lagtori.energy_germs import germ_consistency, germ_L, germ_T_diag, germs_linearly_equivalent
from lagtori.probes import free_action_check, p2_vertical_probe
from lagtori.verify import (
    GERM_D1,
    GERM_D2,
    GERM_QS,
    TEN_POINTS,
    appendix_grid,
    area_identity_error,
    boundary_continuity_error,
    circle_inclusion_error,
    circle_moduli_error,
    germ_grid,
    h_level_error,
    intermediate_integral_errors,
    interior_grid,
    lagrangian_error,
    norm_formula_error,
    path_independence_error,
    probe_a_values,
    probe_involution_error,
    psi_equivariance_error,
    psi_jacobian_ratio_error,
    radius_identity_error,
    random_r_p,
    semiconjugacy_error,
    tangency_error,
    xy_coherence_error,
)

RESULTS: list[str] = []


def record(n: int, title: str, ok: bool, detail: str) -> None:
    line = f"AC{n:<2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def rng(n: int) -> np.random.Generator:
    return np.random.default_rng([2024, n])


def test_ac01_appendix_area():
    start = time.perf_counter()
    err = area_identity_error(appendix_grid(), n=4096)
    elapsed = time.perf_counter() - start
    record(1, "area identity", err <= 1e-8 and elapsed <= 5.0,
           f"max_error={err:.2e} (tol 1e-08), runtime={elapsed:.2f}s (limit 5s)")


def test_ac02_intermediate_integrals():
    e_sqrt, e_abs = intermediate_integral_errors(appendix_grid(), n=4096)
    record(2, "intermediate area integrals", e_sqrt <= 1e-7 and e_abs <= 1e-8,
           f"sqrt-term={e_sqrt:.2e} (tol 1e-07), |p|-term={e_abs:.2e} (tol 1e-08)")


def test_ac03_norm_formula():
    err = norm_formula_error(TEN_POINTS, n=256)
    record(3, "norm formula", err <= 1e-12, f"max_error={err:.2e} (tol 1e-12), 10 points x 256 samples")


def test_ac04_tangency():
    err = max(tangency_error(pq, n=256) for pq in TEN_POINTS)
    record(4, "integral-curve tangency", err <= 1e-8, f"max_error={err:.2e} (tol 1e-08), analytic derivative")


def test_ac05_lagrangian():
    err = max(lagrangian_error(pq, m=32) for pq in TEN_POINTS)
    record(5, "Lagrangian check", err <= 1e-10, f"max|omega|={err:.2e} (tol 1e-10), 32x32 x 10 points")


def test_ac06_psi():
    g = rng(6)
    z = 0.95 * np.sqrt(g.uniform(0, 1, 100)) * np.exp(2j * np.pi * g.uniform(0, 1, 100))
    ratio = psi_jacobian_ratio_error(z)
    equiv = psi_equivariance_error(z, np.linspace(0, 2 * np.pi, 17))
    record(6, "psi symplectomorphism + equivariance", ratio <= 1e-6 and equiv <= 1e-12,
           f"jacobian ratio={ratio:.2e} (tol 1e-06), equivariance={equiv:.2e} (tol 1e-12)")


def test_ac07_h_level():
    err = max(h_level_error(pq, n=128) for pq in TEN_POINTS)
    record(7, "H-level identity", err <= 1e-12, f"max_error={err:.2e} (tol 1e-12), 128 samples x 10 points")


def test_ac08_semiconjugacy():
    err = semiconjugacy_error(rng(8), n=100)
    record(8, "semiconjugacy", err <= 1e-8, f"max_error={err:.2e} (tol 1e-08), 7 fields x 100 points")


def test_ac09_circle_fiber():
    g = rng(9)
    pairs = random_r_p(g, 100)
    mod = circle_moduli_error(pairs)
    inc = circle_inclusion_error(pairs, g)
    record(9, "circle-fiber identities", mod <= 1e-12 and inc <= 1e-10,
           f"moduli={mod:.2e} (tol 1e-12), two-way inclusion={inc:.2e} (tol 1e-10)")


def test_ac10_radius_identity():
    err = radius_identity_error(50)
    record(10, "radius identity", err <= 1e-12, f"max_error={err:.2e} (tol 1e-12), 50x50 grid")


def test_ac11_classification_coherence():
    grid = interior_grid(50)
    path = path_independence_error(grid)
    xy = xy_coherence_error(grid)
    qs = [0.05 + 0.9 * (j + 0.5) / 40 for j in range(40)]
    cont = boundary_continuity_error(qs)
    ok = path <= 1e-12 and xy <= 1e-12 and cont <= 1e-12
    record(11, "classification coherence", ok,
           f"reduction route={path:.2e}, xy={xy:.2e}, continuity at p^2=q^4={cont:.2e} (tol 1e-12 each)")


def test_ac12_probes():
    sym = all(p2_vertical_probe(a).symmetric for a in probe_a_values(20))
    exact, float_err = probe_involution_error(rng(12))
    free = all(free_action_check(a, 1000, seed=k) for k, a in enumerate((0.3, -0.3, 0.7, -0.7, 0.99, -0.99)))
    record(12, "probe suite", sym and exact and free,
           f"20 vertical probes symmetric={sym}, involution exact={exact} (float err {float_err:.1e}), free action={free}")


def test_ac13_germs():
    cons = max(germ_consistency(q, a, b) for q in GERM_QS for a in GERM_D1 for b in GERM_D2)
    qs, xis = germ_grid(20)
    equiv = sum(germs_linearly_equivalent(germ_L(q), germ_T_diag(x)) for q in qs for x in xis)
    record(13, "germ suite", cons <= 1e-12 and equiv == 0,
           f"consistency={cons:.2e} (tol 1e-12), equivalent pairs={equiv}/400")


def test_ac14_full_suite(tmp_path):
    start = time.perf_counter()
    code = cli_main(["verify", "--suite", "all", "--grid", "4", "--out", str(tmp_path / "report.json")])
    elapsed = time.perf_counter() - start
    record(14, "full suite run_suite(all, 4)", code == 0 and elapsed <= 60.0,
           f"exit code={code}, runtime={elapsed:.1f}s (limit 60s)")


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    failed = 0
    for name, fn in sorted((k, v) for k, v in globals().items() if k.startswith("test_ac")):
        try:
            if fn.__code__.co_argcount:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            failed += 1
    print(f"{14 - failed}/14 criteria pass")
    sys.exit(1 if failed else 0)
