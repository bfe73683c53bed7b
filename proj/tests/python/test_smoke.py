#!/usr/bin/env python3
"""Smoke tests for the python bindings: every exposed operation runs and the
headline values match the C++ test suite's frozen references."""

import math
import sys

import minkl


def check(name, condition, detail=""):
    if not condition:
        print(f"FAIL {name} {detail}")
        sys.exit(1)
    print(f"ok   {name}")


check("version", isinstance(minkl.__version__, str))

# core divergences
check("kl2", math.isclose(minkl.kl2(0.6, 0.7), 0.022582421084357388, rel_tol=1e-13))
check("kl2 inf", math.isinf(minkl.kl2(0.5, 0.0)))
check("tv", math.isclose(minkl.total_variation([0.6, 0.4], [0.7, 0.3]), 0.2, rel_tol=1e-12))
check("kl", math.isclose(minkl.kl_divergence([0.6, 0.4], [0.7, 0.3]),
                         0.022582421084357388, rel_tol=1e-13))
check("kl inf", math.isinf(minkl.kl_divergence([0.5, 0.5], [1.0, 0.0])))

d = minkl.DiscreteDistribution([2.0, 2.0], renormalize=True)
check("distribution", len(d) == 2 and d[0] == 0.5 and d.mass([0]) == 0.5)
try:
    minkl.DiscreteDistribution([0.5, -0.5])
    check("negative rejected", False)
except ValueError:
    check("negative rejected", True)

# balance
report = minkl.balance_exact([0.7, 0.2, 0.1])
check("beta", math.isclose(report.beta, 0.7, rel_tol=1e-12))
check("subset", report.achieving_subset == [0])
check("phi", math.isclose(report.phi, 2.118244650968009, rel_tol=1e-12))
check("greedy", minkl.balance_greedy([0.4, 0.35, 0.25]).beta == 0.6)
check("phi coefficient", minkl.phi_coefficient(0.5) == 2.0)
try:
    minkl.balance_exact([0.2] * 5, k_max=4)
    check("capacity raises", False)
except RuntimeError:
    check("capacity raises", True)

# dstar
r = minkl.dstar([0.7, 0.3], 0.2)
check("dstar value", math.isclose(r.value, 0.022582421084357388, rel_tol=1e-13))
check("dstar method", r.method == "closed_form_thm1b")
check("dstar extremal", all(math.isclose(a, b, rel_tol=1e-12)
                            for a, b in zip(r.extremal, [0.6, 0.4])))
e = minkl.dstar_enumerate([0.7, 0.3], 0.2)
check("enumerate agrees", math.isclose(e.value, r.value, rel_tol=1e-12))
check("enumerate subset", e.achieving_subset == [1])
check("full range", math.isclose(minkl.dstar([0.7, 0.3], 0.2, full_range=True).value,
                                 0.020044683157952950, rel_tol=1e-9))
check("point mass", math.isinf(minkl.dstar([1.0], 0.5).value))
check("tilt", all(math.isclose(a, b, rel_tol=1e-12) for a, b in
                  zip(minkl.extremal_tilt([0.7, 0.3], [1], 0.2), [0.6, 0.4])))
check("pinsker", math.isclose(minkl.pinsker_lower(0.2), 0.02, rel_tol=1e-15))
check("ow", math.isclose(minkl.ow_lower([0.7, 0.3], 0.2), 0.02118244650968009, rel_tol=1e-12))
check("expansion", math.isclose(minkl.expansion_thm1(0.7, 0.2, 3),
                                0.022297808012093726, rel_tol=1e-12))
check("coarsen", minkl.binary_coarsen([0.1, 0.2, 0.3, 0.4], [0, 3]) == 0.5)

# vajda
p = minkl.vajda_parametric(1.0)
check("parametric", math.isclose(p.v, 0.90200891003235214, rel_tol=1e-13)
      and math.isclose(p.L, 0.42753426296182520, rel_tol=1e-13))
check("vajda_L", math.isclose(minkl.vajda_L(0.2), 0.020044683157952950, abs_tol=1e-10))
check("vajda min", math.isclose(minkl.vajda_by_minimization(0.2), minkl.vajda_L(0.2),
                                abs_tol=1e-8))

# sanov
est = minkl.monte_carlo([0.5, 0.5], n=100, epsilon=0.2, trials=5000, seed=11, threads=2)
est2 = minkl.monte_carlo([0.5, 0.5], n=100, epsilon=0.2, trials=5000, seed=11, threads=1)
check("mc deterministic", est.e_jn_hat == est2.e_jn_hat
      and est.p_hat_ge_eps == est2.p_hat_ge_eps)
check("mc mean sane", 0.0 < est.e_jn_hat < 0.2)
check("sample_jn", minkl.sample_jn([0.5, 0.5], 1, seed=3) == 1.0)
check("binary tail", math.isclose(minkl.binary_tail_exact(0.7, 100, 0.2),
                                  0.03745142924579415, rel_tol=1e-10))
check("mcdiarmid", math.isclose(minkl.mcdiarmid_bound(200, 0.2),
                                0.03663127777746836, rel_tol=1e-12))
lb = minkl.lambda_n([0.5, 0.5], 100)
check("lambda", math.isclose(lb.lambda_n, 0.1414213562373095, rel_tol=1e-13)
      and math.isclose(lb.lower, 0.010355339059327376, rel_tol=1e-12))

print("all smoke tests passed")
