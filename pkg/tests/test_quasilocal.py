import math

import pytest

from qlab.groups import make_group
from qlab.kernels import Kernel
from qlab.quasilocal import (
    BoundInterval,
    check_composition_estimate,
    check_kernel_estimates,
    check_power_estimate,
    dominating_profile,
    mu_upper,
    neumann_invert,
    operator_norm,
    poly_mu_norm,
)
from qlab.randomgen import random_kernel, random_test_vectors, trial_rng

Z = make_group("Z^1")
Z2 = make_group("Z^2")
F2 = make_group("F2")


def test_bound_interval_clamps_and_validates():
    iv = BoundInterval(1.0 + 1e-15, 1.0)
    assert iv.lower <= iv.upper
    with pytest.raises(ValueError):
        BoundInterval(-0.1, 1.0)


def test_operator_norm_identity():
    for p in (1.0, 1.5, 2.0):
        iv = operator_norm(Kernel.identity(Z), p, Z.ball(5))
        assert iv.lower == pytest.approx(1.0)
        assert iv.upper == pytest.approx(1.0)


def test_operator_norm_half_sum_p2():
    a = Kernel(Z, {(1,): 0.5, (-1,): 0.5})
    iv = operator_norm(a, 2.0, Z.ball(50))
    assert iv.lower >= 0.995
    assert iv.upper == pytest.approx(1.0)


def test_operator_norm_l1_attained():
    a = Kernel(Z, {(1,): 1.0, (-1,): 1.0})
    iv = operator_norm(a, 1.0, Z.ball(10))
    assert iv.lower == pytest.approx(2.0)
    assert iv.upper == pytest.approx(2.0)


def test_operator_norm_general_p_sound():
    rng = trial_rng(23, 0)
    window = Z.ball(25)
    for trial in range(10):
        a = random_kernel(Z, trial_rng(23, trial), 3)
        for p in (1.0, 1.5, 2.0, 3.0):
            iv = operator_norm(a, p, window)
            assert 0.0 <= iv.lower <= iv.upper + 1e-12
            assert iv.upper == pytest.approx(a.l1())


def test_operator_norm_against_fourier_symbol_oracle():
    # on Z the l2 convolution norm is the sup of the symbol modulus
    # |sum_k a_k e^(i k theta)|; a dense grid gives an independent oracle
    import numpy as np

    window = Z.ball(60)
    thetas = np.linspace(0.0, 2.0 * math.pi, 4096, endpoint=False)
    for trial in range(8):
        a = random_kernel(Z, trial_rng(61, trial), 3)
        symbol = np.zeros_like(thetas, dtype=complex)
        for (k,), coeff in a.entries.items():
            symbol += coeff * np.exp(1j * k * thetas)
        oracle = float(np.abs(symbol).max())
        iv = operator_norm(a, 2.0, window)
        assert iv.lower <= oracle * (1 + 1e-9)
        assert oracle <= iv.upper * (1 + 1e-9)
        assert iv.lower >= 0.98 * oracle


def test_operator_norm_lower_monotone_in_window():
    a = Kernel(Z, {(1,): 0.5, (-1,): 0.5})
    lowers = [operator_norm(a, 2.0, Z.ball(r)).lower for r in (5, 10, 20, 40)]
    assert all(x <= y + 1e-12 for x, y in zip(lowers, lowers[1:]))


def test_operator_norm_rejects_bad_p():
    with pytest.raises(ValueError):
        operator_norm(Kernel.identity(Z), 0.5, Z.ball(3))


def test_dominating_profile_examples():
    a = Kernel(Z, {(1,): 1.0, (4,): 1.0 / 16.0})
    prof = dominating_profile(a, 2.0, Z.ball(25), [2, 3, 4, 6])
    by_radius = dict(zip(prof.radii, prof.bounds))
    assert by_radius[2].upper == pytest.approx(1.0 / 16.0)
    assert by_radius[2].lower >= 1.0 / 16.0 - 1e-12
    # vanishing at and beyond propagation
    assert by_radius[4].upper == 0.0
    assert by_radius[6].upper == 0.0
    ident = dominating_profile(Kernel.identity(Z), 2.0, Z.ball(10), [2, 5])
    assert all(b.lower == 0.0 and b.upper == 0.0 for b in ident.bounds)


def test_dominating_profile_upper_non_increasing():
    rng = trial_rng(29, 0)
    a = random_kernel(Z2, rng, 3)
    radii = [2, 3, 4, 5, 6]
    prof = dominating_profile(a, 2.0, Z2.ball(10), radii)
    uppers = [b.upper for b in prof.bounds]
    assert all(x >= y - 1e-15 for x, y in zip(uppers, uppers[1:]))


def test_dominating_profile_window_too_small():
    a = Kernel(Z, {(4,): 1.0})
    with pytest.raises(ValueError):
        dominating_profile(a, 2.0, Z.ball(5), [2, 4])
    with pytest.raises(ValueError):
        dominating_profile(a, 2.0, Z.ball(20), [1])


def test_poly_mu_norm_values():
    assert poly_mu_norm(Kernel.identity(Z), 2.0, 3).value == BoundInterval(0.0, 0.0)
    zero = poly_mu_norm(Kernel.zero(Z), 2.0, 2).value
    assert zero.upper == 0.0
    # full-range weighting: the k = 1 leak term is included
    d1 = poly_mu_norm(Kernel.delta(Z, (1,)), 2.0, 2).value
    assert d1.lower == pytest.approx(1.0)
    assert d1.upper == pytest.approx(1.0)
    d4 = poly_mu_norm(Kernel.delta(Z, (4,)), 2.0, 2).value
    assert d4.lower == pytest.approx(16.0)
    assert d4.upper == pytest.approx(16.0)


def test_poly_mu_norm_enclosure_and_attained_below_prop():
    rng = trial_rng(31, 0)
    for trial in range(20):
        a = random_kernel(Z, trial_rng(31, trial), 4)
        rep = poly_mu_norm(a, 2.0, 2)
        assert rep.value.lower <= rep.value.upper + 1e-12
        prop = a.propagation
        if prop >= 1:
            candidates = [a.l1_tail_ge(k) * k ** 2 for k in range(1, prop + 1)]
            assert rep.value.upper == pytest.approx(max(candidates))


def test_mu_upper_matches_tail_kernel():
    a = Kernel(Z, {(0,): 1.0, (2,): -2.0, (3,): 1.0})
    assert mu_upper(a, 1.5) == pytest.approx(3.0)
    assert mu_upper(a, 2) == pytest.approx(1.0)
    assert a.tail_kernel_gt(2).l1() == pytest.approx(1.0)
    assert mu_upper(a, 3) == 0.0


def test_composition_estimate_identity_cases():
    ident = Kernel.identity(Z)
    rows = check_composition_estimate(ident, ident, 2.0, [2, 4])
    assert all(r["passes"] for r in rows)
    assert all(r["lhs_lower"] == 0.0 and r["rhs_upper"] == 0.0 for r in rows)

    a = Kernel(Z, {(0,): 0.3, (1,): 1.0, (3,): -0.5})
    rows = check_composition_estimate(a, ident, 2.0, [2, 4, 8])
    assert all(r["passes"] for r in rows)


def test_composition_estimate_random_campaign():
    for grp, prop in ((Z, 4), (Z2, 3), (F2, 3)):
        for trial in range(25):
            rng = trial_rng(37, trial)
            a = random_kernel(grp, rng, prop)
            b = random_kernel(grp, rng, prop)
            tvs = random_test_vectors(grp, rng)
            for p in (1.0, 1.5, 2.0):
                rows = check_composition_estimate(a, b, p, range(2, 17), tvs)
                assert all(r["passes"] for r in rows), (grp.descriptor, trial, p)


def test_power_estimate_reduces_to_composition_at_n1():
    rng = trial_rng(41, 5)
    a = random_kernel(Z, rng, 3)
    rows = check_power_estimate(a, 1, [4, 8])
    for row in rows:
        # the n = 1 bound 5||A|| mu_A(R/2) dominates the composition bound
        # with B = A, which expands to 3||A|| mu_A(R/2) + 2 mu_A(R/2)^2
        assert row["rhs_upper"] == pytest.approx(
            5.0 * a.l1() * mu_upper(a, row["R"] / 2.0)
        )
        assert row["passes"]
        comp = 3.0 * a.l1() * mu_upper(a, row["R"] / 2.0) \
            + 2.0 * mu_upper(a, row["R"] / 2.0) ** 2
        assert comp <= row["rhs_upper"] + 1e-12


def test_power_estimate_random_campaign():
    for trial in range(25):
        rng = trial_rng(43, trial)
        a = random_kernel(Z2, rng, 3)
        tvs = random_test_vectors(Z2, rng)
        for n in (1, 2, 3):
            rows = check_power_estimate(a, n, [4, 8, 16], test_vectors=tvs)
            assert all(r["passes"] for r in rows), (trial, n)


def test_neumann_identity_kernel():
    partial, rep = neumann_invert(Kernel.identity(Z), 10, l=1)
    assert partial == Kernel.identity(Z)
    assert rep["passes"]
    assert rep["series_norm_upper"] == 0.0


def test_neumann_acceptance_kernel():
    a = Kernel(Z, {(0,): 1.0, (1,): -0.02, (-1,): -0.02})
    partial, rep = neumann_invert(a, 40, l=1)
    assert rep["epsilon"] == pytest.approx(0.04)
    assert rep["residual_ok"]
    assert rep["norm_ok"]
    assert rep["series_norm_upper"] <= rep["bound_factor"] * 0.04 + 1e-6
    assert rep["slope"] <= math.log(0.04) + 0.1
    assert rep["passes"]


def test_neumann_threshold_errors():
    a = Kernel(Z, {(0,): 1.0, (1,): -0.3, (-1,): -0.3})
    with pytest.raises(ValueError):
        neumann_invert(a, 10, l=1)  # eps = 0.6 above the weight-1 threshold
    b = Kernel(Z, {(0,): 1.0, (1,): -0.6, (-1,): -0.6})
    with pytest.raises(ValueError):
        neumann_invert(b, 10, l=0)  # eps = 1.2: series diverges


def test_kernel_estimates_trivial_and_corner_kernels():
    rows = check_kernel_estimates(Kernel.identity(Z), 2.0, 2)
    assert all(r["passes"] for r in rows)
    assert all(r["lhs"] == 0.0 for r in rows)
    for ker in (
        Kernel.delta(Z, (1,)),
        Kernel.delta(Z, (2,)),
        Kernel.delta(Z, (4,)),
        Kernel(Z, {(1,): 1.0, (2,): 0.1}),
        Kernel(Z, {(0,): 1.0, (4,): 1.0}),
    ):
        for p in (1.0, 1.5, 2.0):
            for n in (1, 2, 3):
                rows = check_kernel_estimates(ker, p, n)
                assert all(r["passes"] for r in rows), (ker, p, n)


def test_kernel_estimates_random_campaign():
    for grp, prop in ((Z, 4), (F2, 3)):
        for trial in range(40):
            rng = trial_rng(47, trial)
            a = random_kernel(grp, rng, prop)
            for p in (1.0, 1.5, 2.0):
                for n in (1, 2, 3):
                    rows = check_kernel_estimates(a, p, n)
                    assert all(r["passes"] for r in rows)


def test_l1_upper_window_independent():
    a = Kernel(Z, {(1,): 1.0, (2,): -0.5})
    for r in (4, 8, 16):
        assert operator_norm(a, 2.0, Z.ball(r)).upper == pytest.approx(1.5)
