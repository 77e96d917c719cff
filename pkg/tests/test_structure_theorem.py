import itertools
import random

import numpy as np
import pytest

import wittgroup.structure_theorem as st
from wittgroup.errors import HypothesisViolated
from wittgroup.finite_field import ff_create
from wittgroup.galois_ring import dual_create, gr_create, surjection
from wittgroup.matgroup import RingMatrix, sl_generators
from wittgroup.structure_theorem import (
    TheoremInstance,
    certify_conjugation,
    counterexample_f5,
    dual_number_instance,
    formula1_check,
    formula1_suite,
    involution_lift_obstruction,
    perturbed_lift_instance,
    verify_main_theorem,
)


def _pi(p, m, d):
    return surjection(gr_create(p, m + 1, d), ff_create(p, d) if m == 1 else gr_create(p, m, d))


@pytest.mark.parametrize("p,d,n", [(2, 1, 2), (3, 1, 2), (5, 1, 2), (2, 2, 3)])
def test_gate_rejects_excluded_cases(p, d, n):
    inst = TheoremInstance(n, _pi(p, 1, d), [])
    with pytest.raises(HypothesisViolated):
        inst.gate()
    inst.counterexample = True
    assert inst.gate()


def test_gate_accepts_f4_and_f7():
    assert TheoremInstance(2, _pi(2, 1, 2), []).gate() == []
    assert TheoremInstance(2, _pi(7, 1, 1), []).gate() == []


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_perturbed_gr_instances_conjugate(seed):
    pi = _pi(2, 1, 2)
    inst = perturbed_lift_instance(pi, 2, seed=seed)
    cert = verify_main_theorem(inst)
    assert cert.ok and cert.h_order == 3840
    found, _ = certify_conjugation(_group(inst), cert.u)
    assert found


def _group(inst):
    from wittgroup.matgroup import matrix_group

    return matrix_group([g.entries for g in inst.H_generators], ring=inst.A, n=inst.n)


def test_dual_perturbation_is_not_trivially_conjugate():
    assert verify_main_theorem(perturbed_lift_instance(surjection(dual_create(2, 2), ff_create(2, 2)), 2)).ok
    inst = dual_number_instance(ff_create(2, 2))[0]
    found, _ = certify_conjugation(_group(inst), RingMatrix.identity(inst.A, 2))
    assert not found


def test_level_two_instance():
    inst = perturbed_lift_instance(_pi(2, 2, 2), 2, seed=4)
    inst.cap = 300_000
    cert = verify_main_theorem(inst)
    assert cert.ok


def test_dual_number_instance_needs_non_trace_zero_conjugator():
    inst, G, mods, xi = dual_number_instance(ff_create(2, 2))
    cert = verify_main_theorem(inst, mods=mods, base=G)
    assert cert.ok
    A = inst.A
    t = A.add(cert.u.entries[0], cert.u.entries[3])
    assert t != 0  # u = I + eps X with tr X != 0


def test_counterexample_f5():
    rep = counterexample_f5(brute_force=True)
    assert rep["pass"] and rep["obstruction"] is not None
    assert rep["h1_m0_dim"] == 1


def test_involutive_lift_counts_by_enumeration():
    counts = involution_lift_obstruction(2)
    assert counts and all(c == 0 for c in counts.values())
    # independent: every g in SL_2(Z/4) with g^2 = I reduces to I mod 2
    for a, b, c, d in itertools.product(range(4), repeat=4):
        if (a * d - b * c) % 4 != 1:
            continue
        sq = ((a * a + b * c) % 4, (a * b + b * d) % 4, (c * a + d * c) % 4, (c * b + d * d) % 4)
        if sq == (1, 0, 0, 1):
            assert (b % 2, c % 2) == (0, 0)


def test_formula1_holds():
    assert all(r["pass"] for r in formula1_suite(trials=20, seed=3))


def test_formula1_is_sensitive_to_coefficients(monkeypatch):
    k = ff_create(3, 1)
    real = st._power_coefficients
    monkeypatch.setattr(st, "_power_coefficients", lambda q: (real(q)[0], real(q)[1] + 1))
    rng = random.Random(0)
    results = [formula1_check(2, k, 1, st.random_trace_zero(k, 2, rng), rng.randrange(1, 3))["equal"]
               for _ in range(20)]
    assert not all(results)


def test_sl_generators_of_dual_numbers_are_constants():
    A = dual_create(2, 2)
    for g in sl_generators(2, A):
        assert all(A.is_teichmuller(c) if hasattr(A, "is_teichmuller") else c < 4 for c in g.entries)
    assert np.isclose(len(sl_generators(2, A)), len(sl_generators(2, ff_create(2, 2))))
