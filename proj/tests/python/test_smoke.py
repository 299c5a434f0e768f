"""Smoke tests for the _scramblab extension module."""

import math

import _scramblab as sl


def approx(a, b, tol=1e-9):
    assert abs(a - b) <= tol, f"{a} != {b} (tol {tol})"


def main():
    approx(sl.pure_bound(12, 6), 1.0)
    approx(sl.maximally_mixed_mi(8, 8), 2.0)
    approx(sl.renyi2_mi_bound_mixed(12, 12, 12), 2.0)
    approx(sl.avg_purity_exact(2, 2, 2, 2), 0.4, 1e-12)
    approx(sl.avg_purity_approx(2, 2, 2, 2), 0.375, 1e-12)
    approx(sl.chaotic_criterion_value(2, 8), 0.26171875, 1e-12)

    t = sl.theoretical_ramp_params(12, 0, 3)
    assert (t["b"], t["g"], t["gap"]) == (3.0, 9.0, 6.0)

    u = sl.sample_haar(8, seed=5)
    uu = (u.conj().T @ u)
    assert abs(uu - [[1 if i == j else 0 for j in range(8)] for i in range(8)]).max() < 1e-10

    rho = [[0.75, 0], [0, 0.25]]
    approx(sl.von_neumann_entropy(rho), 0.811278124459, 1e-9)
    approx(sl.renyi_entropy([[0.5, 0], [0, 0.5]], 2.0), 1.0)

    rows = sl.mi_curve(4, s=0, kind="haar", samples=10, seed=3)
    assert [r["l"] for r in rows] == [0, 1, 2, 3, 4]
    approx(rows[0]["mean_I"], 0.0, 1e-9)
    approx(rows[4]["mean_I"], 2.0, 1e-9)

    step = [
        {"l": 0, "mean_I": 0.0},
        {"l": 1, "mean_I": 0.0},
        {"l": 2, "mean_I": 0.0},
        {"l": 3, "mean_I": 2.0},
        {"l": 4, "mean_I": 2.0},
    ]
    params = sl.classify(step, gamma=0.05, delta=0.05)
    assert (params["b"], params["g"]) == (2, 3)

    amps = sl.encode233(1.0, 0.0, 0.0)
    approx(abs(amps[0]), 1 / math.sqrt(3.0), 1e-12)
    for pair in [(1, 2), (2, 3), (1, 3)]:
        assert sl.reconstruct233_fidelity(0.6, 0.8j, 0.0, *pair) > 1 - 1e-10

    est, se = sl.frame_potential("haar", 2, t=1, samples=400, seed=9)
    assert abs(est - 1.0) <= 3 * se + 1e-9

    mean, _, bound = sl.page_deviation_mc(2, 32, samples=120, seed=4)
    assert mean <= bound

    print("python smoke ok")


if __name__ == "__main__":
    main()
