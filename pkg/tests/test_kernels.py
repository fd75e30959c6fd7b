import json
import math

import pytest

from qlab.groups import make_group
from qlab.kernels import (
    Kernel,
    QQi,
    adjoint,
    convolve,
    kernel_from_dict,
    kernel_power,
    kernel_to_dict,
)
from qlab.randomgen import random_exact_kernel, trial_rng

Z = make_group("Z^1")
F2 = make_group("F2")


def test_identity_convolution():
    b = Kernel(Z, {(0,): 1.5, (2,): -0.5j, (-3,): 2.0})
    assert convolve(Kernel.identity(Z), b) == b
    assert convolve(b, Kernel.identity(Z)) == b


def test_delta_shift_on_z():
    assert convolve(Kernel.delta(Z, (1,)), Kernel.delta(Z, (1,))) == Kernel.delta(Z, (2,))


def test_f2_product_expansion():
    a = Kernel(F2, {F2.parse_word("a"): 1.0, F2.parse_word("b"): 1.0})
    b = Kernel(F2, {F2.parse_word("a^-1"): 1.0, F2.parse_word("b^-1"): 1.0})
    product = convolve(a, b)
    expected = Kernel(F2, {
        F2.identity(): 2.0,
        F2.parse_word("a b^-1"): 1.0,
        F2.parse_word("b a^-1"): 1.0,
    })
    assert product == expected


def test_propagation():
    assert Kernel.identity(Z).propagation == 0
    a = Kernel(Z, {(1,): 1.0, (4,): 0.25})
    b = Kernel(Z, {(2,): 1.0})
    assert a.propagation == 4
    assert convolve(a, b).propagation <= a.propagation + b.propagation


def test_zero_coefficients_dropped():
    a = Kernel(Z, {(1,): 0.0, (2,): 1.0})
    assert (1,) not in a.entries
    e = Kernel(Z, {(3,): QQi.of(0)}, "exact")
    assert not e.entries


def test_adjoint_examples():
    assert adjoint(Kernel.identity(Z)) == Kernel.identity(Z)
    a = Kernel(Z, {(1,): 1j})
    assert adjoint(a) == Kernel(Z, {(-1,): -1j})


def test_adjoint_involution_and_antihomomorphism_exact():
    rng = trial_rng(7, 1)
    for grp in (Z, F2):
        for _ in range(50):
            a = random_exact_kernel(grp, rng, 2)
            b = random_exact_kernel(grp, rng, 2)
            assert adjoint(adjoint(a)) == a
            assert adjoint(convolve(a, b)) == convolve(adjoint(b), adjoint(a))


def test_adjoint_preserves_l1():
    rng = trial_rng(7, 2)
    for _ in range(20):
        a = random_exact_kernel(F2, rng, 2)
        assert math.isclose(adjoint(a).l1(), a.l1())


def test_exact_ring_axioms():
    rng = trial_rng(7, 3)
    for grp in (Z, F2):
        for _ in range(30):
            a = random_exact_kernel(grp, rng, 1)
            b = random_exact_kernel(grp, rng, 1)
            c = random_exact_kernel(grp, rng, 1)
            assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))
            assert convolve(a, b + c) == convolve(a, b) + convolve(a, c)


def test_regime_mixing_is_an_error():
    a = Kernel(Z, {(1,): 1.0})
    b = Kernel(Z, {(1,): QQi.of(1)}, "exact")
    with pytest.raises(ValueError):
        convolve(a, b)
    with pytest.raises(ValueError):
        Kernel(Z, {(0,): QQi.of(1)}, "float")


def test_group_mismatch_is_an_error():
    with pytest.raises(ValueError):
        convolve(Kernel.identity(Z), Kernel.identity(F2))


def test_kernel_power():
    a = Kernel(Z, {(1,): 1.0})
    assert kernel_power(a, 3) == Kernel.delta(Z, (3,))
    assert kernel_power(a, 0) == Kernel.identity(Z)


def test_coefficient_norms():
    a = Kernel(Z, {(0,): 3.0, (2,): -4.0})
    assert a.l1() == 7.0
    assert a.lp(2.0) == 5.0
    assert a.l1_tail_ge(1) == 4.0
    assert a.l1_tail_ge(3) == 0.0
    assert a.lp_tail_gt(1, 2.0) == 16.0
    assert a.weighted_lp(1.0, 1) == 8.0
    assert a.rapid_decay_norm(0) == 5.0


def test_moduli_and_to_float():
    a = Kernel(Z, {(1,): QQi.of(-3, 4)}, "exact")
    m = a.moduli()
    assert m.regime == "float"
    assert m.entries[(1,)] == pytest.approx(5.0)
    f = a.to_float()
    assert f.entries[(1,)] == complex(-3, 4)


def test_file_round_trip_float_and_exact(tmp_path):
    a = Kernel(F2, {F2.parse_word("a b^-1"): 0.5 + 0.25j, F2.identity(): -1.0})
    data = kernel_to_dict(a)
    assert kernel_from_dict(json.loads(json.dumps(data))) == a

    e = Kernel(Z, {(2,): QQi(QQi.of(1, 0).re / 3, QQi.of(0).im)}, "exact")
    data = kernel_to_dict(e)
    restored = kernel_from_dict(json.loads(json.dumps(data)))
    assert restored == e
    assert restored.regime == "exact"


def test_file_duplicate_words_accumulate():
    data = {"group": "Z^1", "entries": [
        {"word": "e1", "re": 1.0, "im": 0.0},
        {"word": "e1", "re": 2.0, "im": 0.0},
    ]}
    assert kernel_from_dict(data) == Kernel(Z, {(1,): 3.0})
