"""Seeded random instance generators for verification campaigns.

Every campaign derives one child generator per trial from
``numpy.random.SeedSequence([seed, trial])`` (PCG64), so trials are
reproducible individually and independent of execution order; reports
record the generator identifier.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .groups import MarkedGroup
from .kernels import Kernel, QQi
from .cyclic import TensorChain
from .ufchains import EquivariantChain, normalize_tuple

GENERATOR_ID = "numpy-pcg64"


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed, trial]))


def _sample_support(members, rng, size=None):
    if size is None:
        size = int(rng.integers(1, len(members) + 1))
    size = min(size, len(members))
    idx = rng.choice(len(members), size=size, replace=False)
    return [members[i] for i in sorted(int(i) for i in idx)]


def random_kernel(group: MarkedGroup, rng, prop_max: int,
                  support_size=None) -> Kernel:
    """Support sampled uniformly from B_prop_max, coefficients uniform on
    the complex square [-1,1]^2."""
    members = group.ball(prop_max).members()
    support = _sample_support(members, rng, support_size)
    entries = {}
    for g in support:
        re, im = rng.uniform(-1.0, 1.0, 2)
        entries[g] = complex(re, im)
    return Kernel(group, entries, "float")


def random_exact_kernel(group: MarkedGroup, rng, prop_max: int,
                        max_support: int = 3) -> Kernel:
    members = group.ball(prop_max).members()
    size = int(rng.integers(1, max_support + 1))
    support = _sample_support(members, rng, size)
    entries = {}
    for g in support:
        num = int(rng.integers(-3, 4))
        den = int(rng.integers(1, 5))
        num_i = int(rng.integers(-3, 4))
        den_i = int(rng.integers(1, 5))
        entries[g] = QQi(Fraction(num, den), Fraction(num_i, den_i))
    return Kernel(group, entries, "exact")


def random_test_vectors(group: MarkedGroup, rng, count: int = 2,
                        radius: int = 2, max_support: int = 3) -> list:
    members = group.ball(radius).members()
    vectors = []
    for _ in range(count):
        size = int(rng.integers(1, max_support + 1))
        support = _sample_support(members, rng, size)
        entries = {}
        for g in support:
            re, im = rng.uniform(-1.0, 1.0, 2)
            entries[g] = complex(re, im)
        vec = Kernel(group, entries, "float")
        if vec.entries:
            vectors.append(vec)
    return vectors


def random_tensor(group: MarkedGroup, rng, degree: int, prop_max: int = 1,
                  max_support: int = 3, max_terms: int = 2) -> TensorChain:
    terms = []
    for _ in range(int(rng.integers(1, max_terms + 1))):
        scalar = QQi(
            Fraction(int(rng.integers(-2, 3)), 1),
            Fraction(int(rng.integers(-2, 3)), int(rng.integers(1, 4))),
        )
        if scalar.is_zero():
            scalar = QQi.of(1)
        factors = tuple(
            random_exact_kernel(group, rng, prop_max, max_support)
            for _ in range(degree + 1)
        )
        terms.append((scalar, factors))
    return TensorChain(group, degree, terms)


def random_chain(group: MarkedGroup, rng, degree: int, radius: int = 2,
                 max_tuples: int = 4, regime: str = "exact") -> EquivariantChain:
    members = group.ball(radius).members()
    coeffs = {}
    for _ in range(int(rng.integers(1, max_tuples + 1))):
        tpl = tuple(
            members[int(rng.integers(0, len(members)))] for _ in range(degree + 1)
        )
        tpl = normalize_tuple(group, tpl)
        if regime == "exact":
            coeff = QQi(
                Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))),
                Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 4))),
            )
        else:
            coeff = complex(*rng.uniform(-1.0, 1.0, 2))
        prev = coeffs.get(tpl)
        coeffs[tpl] = coeff if prev is None else prev + coeff
    return EquivariantChain(group, degree, coeffs, regime)
