#!/usr/bin/env python3
"""Independent reference values for the test suites.

Computed with numpy/scipy/cvxpy only, never with the C++ library. Run once and
commit the output; the C++ tests compare against the frozen file.

    python3 tools/oracle.py > tests/data/oracle_values.json
"""
import json

import cvxpy as cp
import numpy as np
from scipy.linalg import sqrtm


def ci_nats(d):
    d = np.asarray(d, float)
    return float(0.5 * np.sum(np.log((1 + d) / (1 - d))))


def waterfill(var, delta):
    var = np.asarray([v for v in var if v > 0], float)
    if var.size == 0 or delta >= var.sum():
        return 0.0
    lo, hi = 0.0, var.max()
    for _ in range(200):
        lam = 0.5 * (lo + hi)
        if np.minimum(lam, var).sum() > delta:
            hi = lam
        else:
            lo = lam
    alloc = np.minimum(0.5 * (lo + hi), var)
    return float(0.5 * np.sum(np.log(var / alloc)))


def joint_cvx(d, d1, d2):
    d = np.asarray(d, float)
    n = d.size
    a = cp.Variable(n)
    b = cp.Variable(n)
    cons = [cp.sum(a) <= d1, cp.sum(b) <= d2, a <= 1, b <= 1,
            cp.log(1 - a) + cp.log(1 - b) >= 2 * np.log(d)]
    obj = cp.Minimize(-0.5 * cp.sum(cp.log(a)) - 0.5 * cp.sum(cp.log(b)))
    prob = cp.Problem(obj, cons)
    prob.solve(solver=cp.CLARABEL, tol_gap_abs=1e-12, tol_gap_rel=1e-12, tol_feas=1e-12)
    return float(prob.value + 0.5 * np.sum(np.log(1 - d ** 2)))


def canonical_correlations(q, p1):
    q11, q12, q22 = q[:p1, :p1], q[:p1, p1:], q[p1:, p1:]
    a = np.linalg.inv(np.real(sqrtm(q11)))
    b = np.linalg.inv(np.real(sqrtm(q22)))
    return np.linalg.svd(a @ q12 @ b, compute_uv=False)


def scalar_region_scan(d, d1, d2, a1, a2):
    qs = np.arange(d, 1 / d + 1e-12, 1e-4)[1:-1]
    best = np.inf
    for q in qs:
        mi = 0.5 * np.log((1 - d * d) / ((1 - d / q) * (1 - d * q)))
        t = mi + a1 * waterfill([1 - d / q], d1) + a2 * waterfill([1 - d * q], d2)
        best = min(best, t)
    return float(best)


def main():
    out = {}
    d41 = [0.8, 0.5, 0.1]
    out["example41_nats"] = ci_nats(d41)
    out["example41_paper_bits"] = 2 * ci_nats(d41) / np.log(2)

    q12 = np.zeros((6, 5))
    for i, v in enumerate([0.999998, 0.999992, 0.8, 0.3, 0.000004]):
        q12[i, i] = v
    q = np.block([[np.eye(6), q12], [q12.T, np.eye(5)]])
    out["example42_singular_values"] = canonical_correlations(q, 6).tolist()
    out["example42_correlated_paper_bits"] = 2 * ci_nats([0.8, 0.3]) / np.log(2)

    # family realization, n = 1, d = 0.5, q = 1.2
    d, qw = 0.5, 1.2
    out["family_scalar"] = {"C1": np.sqrt(d) / qw, "C2": np.sqrt(d),
                            "QZ1": 1 - d / qw, "QZ2": 1 - d * qw}
    out["optimal_scalar"] = {"L1": np.sqrt(d) / (1 + d),
                             "L3": np.sqrt((1 - d) / (1 + d))}

    # Pangloss triples at QW = I
    tri = []
    for dd, dl in [([0.8, 0.5, 0.1], 0.3), ([0.5], 0.25), ([0.5], 0.5)]:
        r1 = waterfill([1 - x for x in dd], dl)
        tri.append({"d": dd, "delta": dl, "R0": ci_nats(dd), "R1": r1, "R2": r1,
                    "joint": joint_cvx(dd, dl, dl)})
    out["pangloss"] = tri

    dd = np.array(d41)
    out["gray_bound_example"] = {
        "d": d41, "delta1": 0.3, "delta2": 0.3,
        "value": waterfill([1, 1, 1], 0.3) + waterfill(1 - dd ** 2, 0.3)}

    rng = np.random.default_rng(20240611)
    joint = []
    for _ in range(12):
        n = int(rng.integers(1, 4))
        dv = np.sort(rng.uniform(0.05, 0.95, n))[::-1]
        d1 = float(rng.uniform(0.05, 1.2 * n))
        d2 = float(rng.uniform(0.05, 1.2 * n))
        joint.append({"d": dv.tolist(), "delta1": d1, "delta2": d2,
                      "rate": joint_cvx(dv, d1, d2)})
    out["joint_rdf_cvx"] = joint

    out["region_scalar_scan"] = {"d": 0.5, "delta1": 0.25, "delta2": 0.25,
                                 "alpha1": 1.0, "alpha2": 0.5,
                                 "T": scalar_region_scan(0.5, 0.25, 0.25, 1.0, 0.5)}
    out["mi_scalar_rho05"] = float(-0.5 * np.log(1 - 0.25))
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
