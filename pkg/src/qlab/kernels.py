"""Group-ring kernels: finitely supported A = sum a_g g over a marked group.

Two scalar regimes:

* ``float`` -- python complex, used for norm estimation;
* ``exact`` -- Gaussian rationals (:class:`QQi`), used for algebraic
  identity campaigns where equalities must hold exactly.

Mixing regimes in one operation is an error; conversion is explicit
(:meth:`Kernel.to_float`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .groups import MarkedGroup, make_group


@dataclass(frozen=True)
class QQi:
    """Gaussian rational a + b*i with exact Fraction parts."""

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(re, im=0) -> "QQi":
        return QQi(Fraction(re), Fraction(im))

    def __add__(self, other):
        return QQi(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return QQi(self.re - other.re, self.im - other.im)

    def __mul__(self, other):
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def conjugate(self):
        return QQi(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def _conj(x):
    return x.conjugate()


def _modulus(x) -> float:
    if isinstance(x, QQi):
        return math.sqrt(float(x.abs2()))
    return abs(x)


def _is_zero(x) -> bool:
    if isinstance(x, QQi):
        return x.is_zero()
    return x == 0


class Kernel:
    """Immutable finitely supported kernel over a marked group."""

    __slots__ = ("group", "entries", "regime", "_prop")

    def __init__(self, group: MarkedGroup, entries: dict, regime: str = "float"):
        if regime not in ("float", "exact"):
            raise ValueError(f"unknown scalar regime {regime!r}")
        clean = {}
        for g, a in entries.items():
            if regime == "float":
                if isinstance(a, QQi):
                    raise ValueError("exact scalar in float-regime kernel")
                a = complex(a) if not isinstance(a, complex) else a
            else:
                if not isinstance(a, QQi):
                    raise ValueError("float-regime scalar in exact kernel")
            if not _is_zero(a):
                clean[g] = a
        self.group = group
        self.entries = clean
        self.regime = regime
        self._prop = max((group.word_length(g) for g in clean), default=0)

    # -- constructors -----------------------------------------------------
    @staticmethod
    def zero(group, regime="float"):
        return Kernel(group, {}, regime)

    @staticmethod
    def delta(group, g, coeff=None, regime="float"):
        if coeff is None:
            coeff = QQi.of(1) if regime == "exact" else 1.0 + 0j
        return Kernel(group, {g: coeff}, regime)

    @staticmethod
    def identity(group, regime="float"):
        return Kernel.delta(group, group.identity(), regime=regime)

    # -- ring structure -----------------------------------------------------
    def _check_compatible(self, other: "Kernel"):
        if self.group != other.group:
            raise ValueError("kernels over different groups")
        if self.regime != other.regime:
            raise ValueError("kernels in different scalar regimes")

    def __add__(self, other):
        self._check_compatible(other)
        out = dict(self.entries)
        for g, b in other.entries.items():
            a = out.get(g)
            out[g] = b if a is None else a + b
        return Kernel(self.group, out, self.regime)

    def __sub__(self, other):
        self._check_compatible(other)
        out = dict(self.entries)
        for g, b in other.entries.items():
            a = out.get(g)
            out[g] = -b if a is None else a - b
        return Kernel(self.group, out, self.regime)

    def __neg__(self):
        return Kernel(self.group, {g: -a for g, a in self.entries.items()}, self.regime)

    def scale(self, c):
        if self.regime == "exact" and not isinstance(c, QQi):
            c = QQi.of(c)
        if self.regime == "float":
            c = complex(c)
        return Kernel(self.group, {g: c * a for g, a in self.entries.items()}, self.regime)

    def __eq__(self, other):
        return (
            isinstance(other, Kernel)
            and self.group == other.group
            and self.regime == other.regime
            and self.entries == other.entries
        )

    def __hash__(self):
        raise TypeError("kernels are not hashable")

    # -- basic data ----------------------------------------------------------
    @property
    def propagation(self) -> int:
        """Max word length over the support; 0 for the zero kernel."""
        return self._prop

    def support(self):
        return list(self.entries)

    def coefficient(self, g):
        a = self.entries.get(g)
        if a is not None:
            return a
        return QQi() if self.regime == "exact" else 0j

    def moduli(self) -> "Kernel":
        """|A| = sum |a_g| g (always float regime)."""
        return Kernel(
            self.group, {g: complex(_modulus(a)) for g, a in self.entries.items()}, "float"
        )

    def to_float(self) -> "Kernel":
        if self.regime == "float":
            return self
        return Kernel(
            self.group, {g: complex(a) for g, a in self.entries.items()}, "float"
        )

    # -- coefficient norms ---------------------------------------------------
    def l1(self) -> float:
        """Sum of coefficient moduli; operator-norm upper bound for every p."""
        return sum(_modulus(a) for a in self.entries.values())

    def lp(self, p: float) -> float:
        return sum(_modulus(a) ** p for a in self.entries.values()) ** (1.0 / p) if self.entries else 0.0

    def weighted_lp(self, p: float, weight_exp: int) -> float:
        """lp norm of g -> |a_g| * |g|^weight_exp  (0^0 treated as 1)."""
        total = 0.0
        wl = self.group.word_length
        for g, a in self.entries.items():
            w = float(wl(g)) ** weight_exp if wl(g) or weight_exp == 0 else 0.0
            total += (_modulus(a) * w) ** p
        return total ** (1.0 / p) if total else 0.0

    def rapid_decay_norm(self, s: float) -> float:
        """H^s norm: l2 norm of (1 + |g|)^s * a_g."""
        wl = self.group.word_length
        total = 0.0
        for g, a in self.entries.items():
            total += ((1.0 + wl(g)) ** s * _modulus(a)) ** 2
        return math.sqrt(total)

    def l1_tail_ge(self, r: float) -> float:
        """Sum of |a_g| over word length >= r."""
        wl = self.group.word_length
        return sum(_modulus(a) for g, a in self.entries.items() if wl(g) >= r)

    def lp_tail_gt(self, r: float, p: float) -> float:
        """Sum of |a_g|^p over word length > r (not the p-th root)."""
        wl = self.group.word_length
        return sum(_modulus(a) ** p for g, a in self.entries.items() if wl(g) > r)

    def tail_kernel_gt(self, r: float) -> "Kernel":
        """Sub-kernel keeping entries with |g| > r."""
        wl = self.group.word_length
        return Kernel(
            self.group,
            {g: a for g, a in self.entries.items() if wl(g) > r},
            self.regime,
        )

    def __repr__(self):
        return (
            f"Kernel({self.group.descriptor}, {len(self.entries)} entries, "
            f"prop={self.propagation}, {self.regime})"
        )


def convolve(a: Kernel, b: Kernel) -> Kernel:
    """Ring product: (AB)_g = sum_h a_h * b_{h^-1 g}."""
    a._check_compatible(b)
    mul = a.group.multiply
    out: dict = {}
    for h, ah in a.entries.items():
        for k, bk in b.entries.items():
            g = mul(h, k)
            prev = out.get(g)
            v = ah * bk
            out[g] = v if prev is None else prev + v
    return Kernel(a.group, out, a.regime)


def adjoint(a: Kernel) -> Kernel:
    """(sum a_g g)^* = sum conj(a_g) g^-1."""
    inv = a.group.invert
    return Kernel(
        a.group, {inv(g): _conj(c) for g, c in a.entries.items()}, a.regime
    )


def kernel_power(a: Kernel, n: int) -> Kernel:
    if n < 0:
        raise ValueError("negative kernel power")
    result = Kernel.identity(a.group, a.regime)
    for _ in range(n):
        result = convolve(result, a)
    return result


# -- file format -------------------------------------------------------------
# {"group": "<descriptor>", "entries": [{"word": "a b^-1", "re": 0.5, "im": 0.0}]}

def _scalar_from_json(re_v, im_v):
    if isinstance(re_v, str) or isinstance(im_v, str):
        return QQi(Fraction(str(re_v)), Fraction(str(im_v)))
    return complex(float(re_v), float(im_v))


def kernel_from_dict(data: dict, group: MarkedGroup | None = None) -> Kernel:
    try:
        desc = data["group"]
        raw_entries = data["entries"]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"kernel data missing field: {exc}") from exc
    if group is None:
        group = make_group(desc)
    elif group.descriptor != desc:
        raise ParseError(f"kernel group {desc!r} != expected {group.descriptor!r}")
    entries: dict = {}
    regime = None
    for item in raw_entries:
        word = item.get("word", "")
        coeff = _scalar_from_json(item.get("re", 0), item.get("im", 0))
        this_regime = "exact" if isinstance(coeff, QQi) else "float"
        if regime is None:
            regime = this_regime
        elif regime != this_regime:
            raise ParseError("kernel file mixes exact and float coefficients")
        g = group.parse_word(word)
        prev = entries.get(g)
        entries[g] = coeff if prev is None else prev + coeff
    return Kernel(group, entries, regime or "float")


def kernel_to_dict(a: Kernel) -> dict:
    fmt = a.group.format_element
    key = a.group.sort_key
    items = sorted(a.entries.items(), key=lambda kv: key(kv[0]))
    entries = []
    for g, c in items:
        if isinstance(c, QQi):
            entries.append({"word": fmt(g), "re": str(c.re), "im": str(c.im)})
        else:
            entries.append({"word": fmt(g), "re": c.real, "im": c.imag})
    return {"group": a.group.descriptor, "entries": entries}
