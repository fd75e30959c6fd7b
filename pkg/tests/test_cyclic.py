import json

import pytest

from qlab.cyclic import (
    TensorChain,
    check_chain_map,
    check_cyclic_descent,
    check_rd_bound,
    check_young_bound,
    chi,
    cyclic_lambda,
    cyclic_projector,
    hochschild_boundary,
    tensor_from_dict,
    tensor_to_dict,
)
from qlab.errors import CapExceeded
from qlab.groups import make_group
from qlab.kernels import Kernel, QQi
from qlab.randomgen import random_exact_kernel, random_tensor, trial_rng
from qlab.ufchains import boundary

Z = make_group("Z^1")
Z2 = make_group("Z^2")
F2 = make_group("F2")


def elementary(group, *kernels, scalar=None):
    scalar = scalar if scalar is not None else QQi.of(1)
    return TensorChain(group, len(kernels) - 1, [(scalar, tuple(kernels))])


def exact_delta(group, word):
    return Kernel.delta(group, group.parse_word(word), regime="exact")


def test_b_with_identity_factor_vanishes():
    a = random_exact_kernel(Z, trial_rng(1, 0), 2)
    w = elementary(Z, a, Kernel.identity(Z, "exact"))
    assert hochschild_boundary(w).is_zero()


def test_b_of_delta_pair_on_z():
    w = elementary(Z, exact_delta(Z, "e1"), exact_delta(Z, "e1^-1"))
    assert hochschild_boundary(w).is_zero()


def test_b_squared_vanishes():
    for grp in (Z, F2):
        for trial in range(50):
            rng = trial_rng(3, trial)
            for degree in (2, 3, 4):
                w = random_tensor(grp, rng, degree)
                assert hochschild_boundary(hochschild_boundary(w)).is_zero()


def test_lambda_has_order_degree_plus_one():
    for trial in range(30):
        rng = trial_rng(5, trial)
        for degree in (1, 2, 3, 4):
            w = random_tensor(Z, rng, degree)
            rotated = w
            for _ in range(degree + 1):
                rotated = cyclic_lambda(rotated)
            assert rotated.equals(w)


def test_lambda_is_identity_in_degree_zero():
    w = random_tensor(Z, trial_rng(5, 99), 0)
    assert cyclic_lambda(w).equals(w)


def test_projector_is_lambda_invariant():
    w = random_tensor(Z, trial_rng(7, 0), 2)
    proj = cyclic_projector(w)
    assert cyclic_lambda(proj).equals(proj)


def test_chi_degree_zero():
    a = Kernel(Z, {(0,): QQi.of(3, 1), (2,): QQi.of(1)}, "exact")
    c = chi(elementary(Z, a))
    assert c.coefficients == {(Z.identity(),): QQi.of(3, 1)}


def test_chi_vanishes_on_zero_factor():
    w = TensorChain(Z, 1, [(QQi.of(2), (exact_delta(Z, "e1"), Kernel.zero(Z, "exact")))])
    assert chi(w).is_zero()
    assert not w.terms


def test_chi_degree_one_example():
    from fractions import Fraction

    w = elementary(Z, exact_delta(Z, "e1"), exact_delta(Z, "e1^-1"))
    c = chi(w)
    half = QQi.of(Fraction(1, 2))
    assert c.coefficients == {
        (Z.identity(), (-1,)): half,
        (Z.identity(), (1,)): -half,
    }


def test_chi_is_multilinear():
    rng = trial_rng(11, 0)
    a, b, c = (random_exact_kernel(Z, rng, 1) for _ in range(3))
    lhs = chi(elementary(Z, a + b, c))
    rhs = chi(elementary(Z, a, c)) + chi(elementary(Z, b, c))
    assert lhs == rhs
    scaled = chi(elementary(Z, a, c, scalar=QQi.of(3)))
    assert scaled == chi(elementary(Z, a, c)).scale(QQi.of(3))


def test_chi_cap():
    big = Kernel(
        Z, {(i,): QQi.of(1) for i in range(-3, 4)}, "exact"
    )
    w = elementary(Z, big, big, big)
    with pytest.raises(CapExceeded):
        chi(w, cap=10)


def test_chain_map_identity_campaign():
    for trial in range(40):
        rng = trial_rng(13, trial)
        degree = (trial % 3) + 1
        w = random_tensor(Z, rng, degree)
        assert check_chain_map(w)["passes"]
    for trial in range(10):
        rng = trial_rng(13, 1000 + trial)
        degree = (trial % 2) + 1
        w = random_tensor(F2, rng, degree)
        assert check_chain_map(w)["passes"]


def test_chain_map_trivial_factors():
    w = elementary(Z, Kernel.identity(Z, "exact"), Kernel.identity(Z, "exact"))
    rep = check_chain_map(w)
    assert rep["passes"]


def test_cyclic_descent_exact():
    for trial in range(20):
        rng = trial_rng(17, trial)
        degree = (trial % 3) + 1
        w = random_tensor(Z, rng, degree)
        assert check_cyclic_descent(w)["passes"]


def test_chain_map_requires_exact_regime():
    w = TensorChain(Z, 1, [(1.0 + 0j, (Kernel.delta(Z, (1,)), Kernel.delta(Z, (0,))))])
    with pytest.raises(ValueError):
        check_chain_map(w)


def test_young_bound_degenerate_tensor():
    w = elementary(Z, Kernel.identity(Z, "exact"), Kernel.identity(Z, "exact"))
    rep = check_young_bound(w, k=1)
    assert rep["lhs"] == 0.0
    assert rep["passes"]


def test_young_bound_exponent_and_constant():
    w = random_tensor(Z, trial_rng(19, 0), 1, prop_max=2)
    rep = check_young_bound(w, k=2)
    assert rep["p_prime"] == pytest.approx(2.0)
    assert rep["constant"] == pytest.approx(1.0)  # 1^(2-1)
    rep3 = check_young_bound(random_tensor(Z, trial_rng(19, 1), 2, prop_max=1), k=3)
    assert rep3["p_prime"] == pytest.approx(1.5)
    assert rep3["constant"] == pytest.approx(4.0)  # 2^(3-1)


def test_young_bound_p_range():
    w = random_tensor(Z, trial_rng(19, 2), 1, prop_max=1)
    with pytest.raises(ValueError):
        check_young_bound(w, k=1, p=3.0)
    assert check_young_bound(w, k=1, p=2.0)["passes"]


def test_young_campaign():
    for grp in (Z, Z2):
        for trial in range(40):
            rng = trial_rng(23, trial)
            degree = (trial % 2) + 1
            w = random_tensor(grp, rng, degree, prop_max=2)
            for k in (1, 2, 3):
                assert check_young_bound(w, k)["passes"], (grp.descriptor, trial, k)


def test_rd_bound_trivial_and_campaign():
    w = elementary(Z, Kernel.identity(Z, "exact"), Kernel.identity(Z, "exact"))
    rows = check_rd_bound(w, k=1)
    assert all(r["passes"] for r in rows)
    for trial in range(30):
        rng = trial_rng(29, trial)
        degree = (trial % 2) + 1
        w = random_tensor(Z, rng, degree, prop_max=2)
        for k in (1, 2):
            assert all(r["passes"] for r in check_rd_bound(w, k))


def test_rd_norm_modulus_isometry():
    rng = trial_rng(31, 0)
    for _ in range(20):
        a = random_exact_kernel(Z, rng, 3)
        for s in (0.5, 1.0, 2.0):
            assert a.moduli().rapid_decay_norm(s) == pytest.approx(
                a.rapid_decay_norm(s)
            )


def test_rd_norm_monotone_in_weight():
    rng = trial_rng(31, 1)
    for _ in range(20):
        a = random_exact_kernel(Z, rng, 3)
        values = [a.rapid_decay_norm(s) for s in (0.0, 0.5, 1.0, 2.0, 3.0)]
        assert values == sorted(values)
        assert all(v >= 0 for v in values)


def test_chain_map_example_values_are_chains():
    w = elementary(Z, exact_delta(Z, "e1"), exact_delta(Z, "e1^-1"))
    lhs = boundary(chi(w))
    rhs = chi(hochschild_boundary(w))
    assert lhs.is_zero() and rhs.is_zero()


def test_tensor_file_round_trip():
    w = random_tensor(F2, trial_rng(37, 0), 2, prop_max=1)
    data = json.loads(json.dumps(tensor_to_dict(w)))
    restored = tensor_from_dict(data)
    assert restored.equals(w)
    assert restored.degree == w.degree
