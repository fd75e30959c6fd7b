"""Equivariant uniformly finite chains over a marked group.

A degree-q chain is stored by normalized orbit representatives: tuples
(e, g1, ..., gq) mapped to scalars.  Translation-equivariance plus finite
support of representatives encodes the bounded-coefficient /
bounded-multiplicity / near-multidiagonal conditions for chains over a
finitely generated group.

Coefficients live in the same two scalar regimes as kernels: exact
Gaussian rationals for identity checks, floats for norm computations.
"""

from __future__ import annotations

from .errors import ParseError
from .groups import MarkedGroup, make_group
from .kernels import QQi, _is_zero, _modulus


def normalize_tuple(group: MarkedGroup, tpl):
    """Left-translate so the first entry is e."""
    g0 = tpl[0]
    if g0 == group.identity():
        return tuple(tpl)
    inv = group.invert(g0)
    return tuple(group.multiply(inv, g) for g in tpl)


class EquivariantChain:
    __slots__ = ("group", "degree", "coefficients", "regime")

    def __init__(self, group: MarkedGroup, degree: int, coefficients: dict,
                 regime: str = "exact"):
        if degree < 0:
            raise ValueError("degree must be >= 0")
        if regime not in ("exact", "float"):
            raise ValueError(f"unknown scalar regime {regime!r}")
        e = group.identity()
        clean = {}
        for tpl, a in coefficients.items():
            if len(tpl) != degree + 1:
                raise ValueError(f"tuple {tpl} has wrong length for degree {degree}")
            if tpl[0] != e:
                raise ValueError("chain tuples must be normalized (first entry e)")
            if regime == "exact" and not isinstance(a, QQi):
                raise ValueError("float scalar in exact chain")
            if regime == "float":
                a = complex(a)
            if not _is_zero(a):
                clean[tuple(tpl)] = a
        self.group = group
        self.degree = degree
        self.coefficients = clean
        self.regime = regime

    @staticmethod
    def zero(group, degree, regime="exact"):
        return EquivariantChain(group, degree, {}, regime)

    def is_zero(self):
        return not self.coefficients

    def _check_compatible(self, other):
        if self.group != other.group or self.degree != other.degree:
            raise ValueError("chains of different groups or degrees")
        if self.regime != other.regime:
            raise ValueError("chains in different scalar regimes")

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.coefficients)
        for t, b in other.coefficients.items():
            a = out.get(t)
            out[t] = b if a is None else a + b
        return EquivariantChain(self.group, self.degree, out, self.regime)

    def __sub__(self, other):
        self._check_compatible(other)
        out = dict(self.coefficients)
        for t, b in other.coefficients.items():
            a = out.get(t)
            out[t] = -b if a is None else a - b
        return EquivariantChain(self.group, self.degree, out, self.regime)

    def __neg__(self):
        return EquivariantChain(
            self.group, self.degree,
            {t: -a for t, a in self.coefficients.items()}, self.regime,
        )

    def scale(self, c):
        if self.regime == "exact" and not isinstance(c, QQi):
            c = QQi.of(c)
        if self.regime == "float":
            c = complex(c)
        return EquivariantChain(
            self.group, self.degree,
            {t: c * a for t, a in self.coefficients.items()}, self.regime,
        )

    def __eq__(self, other):
        return (
            isinstance(other, EquivariantChain)
            and self.group == other.group
            and self.degree == other.degree
            and self.regime == other.regime
            and self.coefficients == other.coefficients
        )

    def __repr__(self):
        return (
            f"EquivariantChain({self.group.descriptor}, degree={self.degree}, "
            f"{len(self.coefficients)} tuples, {self.regime})"
        )


def boundary(c: EquivariantChain) -> EquivariantChain:
    """Alternating face sum; face 0 renormalizes by translating with g1^-1."""
    if c.degree < 1:
        raise ValueError("boundary needs degree >= 1")
    grp = c.group
    out: dict = {}
    for tpl, a in c.coefficients.items():
        for j in range(len(tpl)):
            face = tpl[:j] + tpl[j + 1:]
            if j == 0:
                face = normalize_tuple(grp, face)
            coeff = a if j % 2 == 0 else -a
            prev = out.get(face)
            out[face] = coeff if prev is None else prev + coeff
    return EquivariantChain(grp, c.degree - 1, out, c.regime)


def diam(group: MarkedGroup, tpl) -> int:
    """Max pairwise word distance within the tuple."""
    if not tpl:
        raise ValueError("diam of empty tuple")
    best = 0
    for i in range(len(tpl)):
        for j in range(i + 1, len(tpl)):
            d = group.distance(tpl[i], tpl[j])
            if d > best:
                best = d
    return best


def weighted_norm(c: EquivariantChain, n: int) -> float:
    """sum |a| * diam^n over representatives, with 0^0 = 1 (so n=0 is l1)."""
    total = 0.0
    for tpl, a in c.coefficients.items():
        d = diam(c.group, tpl)
        w = 1.0 if (d == 0 and n == 0) else float(d) ** n
        total += _modulus(a) * w
    return total


def frechet_seminorm(c: EquivariantChain, n: int) -> float:
    """||c||_n + ||dc||_n, the completion seminorm family."""
    extra = weighted_norm(boundary(c), n) if c.degree >= 1 else 0.0
    return weighted_norm(c, n) + extra


# -- file format ---------------------------------------------------------------
# {"group": ..., "degree": q, "terms": [{"tuple": ["", "a", "a b"], "re": 1, "im": 0}]}

def chain_from_dict(data: dict, group: MarkedGroup | None = None) -> EquivariantChain:
    from .kernels import _scalar_from_json

    try:
        desc = data["group"]
        degree = int(data["degree"])
        terms = data["terms"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"chain data malformed: {exc}") from exc
    if group is None:
        group = make_group(desc)
    elif group.descriptor != desc:
        raise ParseError(f"chain group {desc!r} != expected {group.descriptor!r}")
    coeffs: dict = {}
    regime = None
    for term in terms:
        words = term.get("tuple", [])
        if len(words) != degree + 1:
            raise ParseError(f"tuple {words} has wrong arity for degree {degree}")
        if words[0].strip():
            raise ParseError("first tuple entry must be the empty word (e)")
        tpl = tuple(group.parse_word(w) for w in words)
        coeff = _scalar_from_json(term.get("re", 0), term.get("im", 0))
        this_regime = "exact" if isinstance(coeff, QQi) else "float"
        if regime is None:
            regime = this_regime
        elif regime != this_regime:
            raise ParseError("chain file mixes exact and float coefficients")
        prev = coeffs.get(tpl)
        coeffs[tpl] = coeff if prev is None else prev + coeff
    return EquivariantChain(group, degree, coeffs, regime or "exact")


def chain_to_dict(c: EquivariantChain) -> dict:
    fmt = c.group.format_element
    key = c.group.sort_key
    items = sorted(c.coefficients.items(), key=lambda kv: tuple(key(g) for g in kv[0]))
    terms = []
    for tpl, a in items:
        rec = {"tuple": [fmt(g) for g in tpl]}
        if isinstance(a, QQi):
            rec["re"], rec["im"] = str(a.re), str(a.im)
        else:
            rec["re"], rec["im"] = a.real, a.imag
        terms.append(rec)
    return {"group": c.group.descriptor, "degree": c.degree, "terms": terms}
