"""Cyclic complex of the group ring at finite support, and the character
map into equivariant uniformly finite chains.

Sign conventions are the standard (Loday) ones: the Hochschild boundary
contracts consecutive factors with alternating signs and wraps the last
factor around with sign (-1)^n; the cyclic operator rotates with sign
(-1)^n.  The chain-map identity boundary(chi(w)) = chi(b(w)) is verified
numerically in exact arithmetic rather than cited.
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import permutations

from .errors import CapExceeded, ParseError
from .groups import MarkedGroup, make_group
from .kernels import Kernel, QQi, convolve, kernel_from_dict, kernel_to_dict, _modulus
from .ufchains import EquivariantChain, boundary, normalize_tuple, weighted_norm

DEFAULT_CHI_CAP = 10 ** 7


class TensorChain:
    """Formal sum of elementary tensors A_0 (x) ... (x) A_n over one group."""

    __slots__ = ("group", "degree", "terms", "regime")

    def __init__(self, group: MarkedGroup, degree: int, terms, regime=None):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        clean = []
        for scalar, factors in terms:
            factors = tuple(factors)
            if len(factors) != degree + 1:
                raise ValueError("factor count must equal degree + 1")
            for f in factors:
                if f.group != group:
                    raise ValueError("tensor factors over different groups")
                if regime is None:
                    regime = f.regime
                elif f.regime != regime:
                    raise ValueError("tensor factors in different scalar regimes")
            if _scalar_is_zero(scalar) or any(not f.entries for f in factors):
                continue
            clean.append((scalar, factors))
        self.group = group
        self.degree = degree
        self.terms = clean
        self.regime = regime or "exact"

    def __add__(self, other):
        if self.group != other.group or self.degree != other.degree:
            raise ValueError("tensor chains of different groups or degrees")
        if self.regime != other.regime and self.terms and other.terms:
            raise ValueError("tensor chains in different scalar regimes")
        return TensorChain(
            self.group, self.degree, self.terms + other.terms,
            self.regime if self.terms else other.regime,
        )

    def __neg__(self):
        return self.scale_by(-1)

    def scale_by(self, c):
        if self.regime == "exact" and not isinstance(c, QQi):
            c = QQi.of(c)
        if self.regime == "float":
            c = complex(c)
        return TensorChain(
            self.group, self.degree,
            [(c * s, f) for s, f in self.terms], self.regime,
        )

    def _collect(self):
        """Canonical dict of elementary tensors (for exact zero tests)."""
        key_of = self.group.sort_key
        out: dict = {}
        for scalar, factors in self.terms:
            key = tuple(
                tuple(sorted(f.entries.items(), key=lambda kv: key_of(kv[0])))
                for f in factors
            )
            prev = out.get(key)
            out[key] = scalar if prev is None else prev + scalar
        return {k: v for k, v in out.items() if not _scalar_is_zero(v)}

    def is_zero(self):
        return not self._collect()

    def equals(self, other):
        return (self + (-other)).is_zero()

    def __repr__(self):
        return (
            f"TensorChain({self.group.descriptor}, degree={self.degree}, "
            f"{len(self.terms)} terms, {self.regime})"
        )


def _scalar_is_zero(c):
    if isinstance(c, QQi):
        return c.is_zero()
    return c == 0


def _one(regime):
    return QQi.of(1) if regime == "exact" else 1.0 + 0j


def hochschild_boundary(w: TensorChain) -> TensorChain:
    """b(A_0 x...x A_n) = sum_i (-1)^i (... A_i A_{i+1} ...)
    + (-1)^n (A_n A_0) x A_1 x...x A_{n-1}."""
    if w.degree < 1:
        raise ValueError("hochschild boundary needs degree >= 1")
    n = w.degree
    out_terms = []
    for scalar, factors in w.terms:
        for i in range(n):
            merged = (
                factors[:i]
                + (convolve(factors[i], factors[i + 1]),)
                + factors[i + 2:]
            )
            sign_scalar = scalar if i % 2 == 0 else -scalar
            out_terms.append((sign_scalar, merged))
        wrap = (convolve(factors[n], factors[0]),) + factors[1:n]
        out_terms.append((scalar if n % 2 == 0 else -scalar, wrap))
    return TensorChain(w.group, n - 1, out_terms, w.regime)


def cyclic_lambda(w: TensorChain) -> TensorChain:
    """lambda(A_0 x...x A_n) = (-1)^n A_n x A_0 x...x A_{n-1}."""
    n = w.degree
    out_terms = []
    for scalar, factors in w.terms:
        rotated = (factors[n],) + factors[:n]
        out_terms.append((scalar if n % 2 == 0 else -scalar, rotated))
    return TensorChain(w.group, n, out_terms, w.regime)


def cyclic_projector(w: TensorChain) -> TensorChain:
    """(1/(n+1)) sum_k lambda^k, the projector onto the cyclic quotient."""
    n = w.degree
    acc = w
    current = w
    for _ in range(n):
        current = cyclic_lambda(current)
        acc = acc + current
    if w.regime == "exact":
        return acc.scale_by(QQi(Fraction(1, n + 1)))
    return acc.scale_by(1.0 / (n + 1))


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def chi(w: TensorChain, cap: int = DEFAULT_CHI_CAP) -> EquivariantChain:
    """Antisymmetrized character: the degree-n equivariant chain with value

    (1/(n+1)!) sum_sigma sgn(sigma) A_0(g_sigma(n)^-1 g_sigma(0))
                                    A_1(g_sigma(0)^-1 g_sigma(1)) ...

    stored by normalized representatives.  Support enumeration runs over
    (n+1)! permutations times the product of factor supports.
    """
    grp = w.group
    n = w.degree
    fact = math.factorial(n + 1)
    for _, factors in w.terms:
        size = fact
        for f in factors:
            size *= max(len(f.entries), 1)
        if size > cap:
            raise CapExceeded(
                f"chi enumeration size {size} exceeds cap {cap}"
            )
    if w.regime == "exact":
        inv_fact = QQi(Fraction(1, fact))
    else:
        inv_fact = complex(1.0 / fact)
    mul, inv = grp.multiply, grp.invert
    e = grp.identity()
    out: dict = {}
    for scalar, factors in w.terms:
        supports = [list(f.entries.items()) for f in factors]
        base = inv_fact * scalar
        for sigma in permutations(range(n + 1)):
            sign = _perm_sign(sigma)
            signed = base if sign > 0 else -base
            # positions[sigma[j]] built along the sigma-path; arguments of
            # A_1..A_n are the consecutive steps, A_0 takes the wrap-around.
            def rec(j, prod, coeff, positions):
                if j > n:
                    a0 = factors[0].entries.get(inv(prod))
                    if a0 is None:
                        return
                    total = coeff * a0
                    tpl = normalize_tuple(grp, tuple(positions))
                    prev = out.get(tpl)
                    out[tpl] = total if prev is None else prev + total
                    return
                for s, a in supports[j]:
                    positions[sigma[j]] = mul(positions[sigma[j - 1]], s)
                    rec(j + 1, mul(prod, s), coeff * a, positions)

            positions = [e] * (n + 1)
            positions[sigma[0]] = e
            if n == 0:
                a0 = factors[0].entries.get(e)
                if a0 is not None:
                    tpl = (e,)
                    total = signed * a0
                    prev = out.get(tpl)
                    out[tpl] = total if prev is None else prev + total
            else:
                rec(1, e, signed, positions)
    return EquivariantChain(grp, n, out, w.regime)


def check_chain_map(w: TensorChain, cap: int = DEFAULT_CHI_CAP) -> dict:
    """Exact identity boundary(chi_n(w)) = chi_{n-1}(b(w))."""
    if w.degree < 1:
        raise ValueError("chain-map check needs degree >= 1")
    if w.regime != "exact":
        raise ValueError("chain-map check requires the exact regime")
    lhs = boundary(chi(w, cap))
    rhs = chi(hochschild_boundary(w), cap)
    diff = lhs - rhs
    return {
        "degree": w.degree,
        "lhs_tuples": len(lhs.coefficients),
        "rhs_tuples": len(rhs.coefficients),
        "passes": diff.is_zero(),
    }


def check_cyclic_descent(w: TensorChain, cap: int = DEFAULT_CHI_CAP) -> dict:
    """Exact identity chi(lambda w) = chi(w)."""
    lhs = chi(cyclic_lambda(w), cap)
    rhs = chi(w, cap)
    return {"degree": w.degree, "passes": (lhs - rhs).is_zero()}


def _weighted_moduli(kernel: Kernel, k: int) -> Kernel:
    """|A| * d(-, e)^k as a float kernel (e entry weighted to zero)."""
    wl = kernel.group.word_length
    entries = {}
    for g, c in kernel.entries.items():
        d = wl(g)
        if d == 0:
            continue
        entries[g] = complex(_modulus(c) * float(d) ** k)
    return Kernel(kernel.group, entries, "float")


def check_young_bound(w: TensorChain, k: int, p: float | None = None,
                      cap: int = DEFAULT_CHI_CAP) -> dict:
    """Continuity of chi against the lp' coefficient norms, p' = (n+1)/n.

    ||chi(w)||_k  <=  n^(k-1) * sum_terms |c| * sum_{s=1..n}
        prod_{i != s} || |A_i| ||_p' * || |A_s| d(-,e)^k ||_p'

    The weight lands on the consecutive-step factors A_1..A_n only; the
    permutation average cancels against the 1/(n+1)! prefactor.
    """
    n = w.degree
    if n < 1:
        raise ValueError("young bound needs degree >= 1")
    if k < 1:
        raise ValueError("weight k must be >= 1")
    p_prime = (n + 1) / n
    if p is not None and p > p_prime + 1e-12:
        raise ValueError(f"p={p} out of range: need p <= (n+1)/n = {p_prime}")
    constant = float(n) ** (k - 1)
    lhs = weighted_norm(chi(w, cap), k)
    rhs = 0.0
    for scalar, factors in w.terms:
        plain = [f.moduli().lp(p_prime) for f in factors]
        weighted = [None] + [
            _weighted_moduli(factors[s], k).lp(p_prime) for s in range(1, n + 1)
        ]
        term_sum = 0.0
        for s in range(1, n + 1):
            prod = 1.0
            for i in range(n + 1):
                prod *= weighted[s] if i == s else plain[i]
            term_sum += prod
        rhs += _modulus(scalar) * term_sum
    rhs *= constant
    return {
        "degree": n,
        "k": k,
        "p_prime": p_prime,
        "constant": constant,
        "lhs": lhs,
        "rhs": rhs,
        "slack": rhs - lhs,
        "passes": lhs <= rhs * (1 + 1e-12) + 1e-12,
    }


def check_rd_bound(w: TensorChain, k: int, window=None) -> list:
    """Pointwise operator-norm estimate behind the rapid-decay continuity.

    For each term and each weighted slot s, the iterated convolution of the
    moduli kernels evaluated at e is bounded by the product of operator-norm
    upper bounds of all but the last factor (the weighted slot carrying
    d(-,e)^k) times the l2 norm of the last factor.  Also reports the H^k
    norms of the factors (modulus is an isometry for them).
    """
    n = w.degree
    if n < 1:
        raise ValueError("rd bound needs degree >= 1")
    if k < 1:
        raise ValueError("weight k must be >= 1")
    e = w.group.identity()
    rows = []
    for t_idx, (scalar, factors) in enumerate(w.terms):
        moduli = [f.moduli() for f in factors]
        rd = [m.rapid_decay_norm(k) for m in moduli]
        for s in range(1, n + 1):
            chain = [moduli[i] if i != s else _weighted_moduli(factors[i], k)
                     for i in range(1, n + 1)]
            chain.append(moduli[0])  # the wrap factor comes last
            conv = chain[0]
            for f in chain[1:]:
                conv = convolve(conv, f)
            lhs = _modulus(conv.coefficient(e))
            rhs = 1.0
            for i in range(1, n + 1):
                rhs *= _weighted_moduli(factors[i], k).l1() if i == s else moduli[i].l1()
            rhs *= moduli[0].lp(2.0)
            rows.append(
                {
                    "term": t_idx,
                    "s": s,
                    "lhs": lhs,
                    "rhs_upper": rhs,
                    "slack": rhs - lhs,
                    "rd_norm_max": max(rd),
                    "passes": lhs <= rhs * (1 + 1e-12) + 1e-12,
                }
            )
    return rows


# -- file format ---------------------------------------------------------------
# {"group": ..., "degree": n, "terms": [{"re":..,"im":..,"factors":[[entry..]..]}]}

def tensor_from_dict(data: dict, group: MarkedGroup | None = None) -> TensorChain:
    from .kernels import _scalar_from_json

    try:
        desc = data["group"]
        degree = int(data["degree"])
        raw_terms = data["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"tensor data malformed: {exc}") from exc
    if group is None:
        group = make_group(desc)
    terms = []
    for term in raw_terms:
        scalar = _scalar_from_json(term.get("re", 1), term.get("im", 0))
        factors = []
        for entries in term.get("factors", []):
            factors.append(
                kernel_from_dict({"group": desc, "entries": entries}, group)
            )
        terms.append((scalar, tuple(factors)))
    return TensorChain(group, degree, terms)


def tensor_to_dict(w: TensorChain) -> dict:
    terms = []
    for scalar, factors in w.terms:
        if isinstance(scalar, QQi):
            rec = {"re": str(scalar.re), "im": str(scalar.im)}
        else:
            rec = {"re": scalar.real, "im": scalar.imag}
        rec["factors"] = [kernel_to_dict(f)["entries"] for f in factors]
        terms.append(rec)
    return {"group": w.group.descriptor, "degree": w.degree, "terms": terms}
