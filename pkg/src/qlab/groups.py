"""Marked groups: concrete finitely generated groups with word metrics.

Supported families (fixed standard generating sets, symmetric closure):

* ``Z^n``  -- free abelian of rank n, generators +-e1..+-en, elements are
  integer n-tuples.
* ``F<k>`` -- free group of rank k (k <= 26), generators a, b, c, ...,
  elements are reduced words stored as tuples of nonzero signed ints
  (i for the i-th generator, -i for its inverse, 1-based).
* ``H3``   -- discrete Heisenberg group, generators x, y; elements are
  integer triples (a, b, c) for the matrix [[1,a,c],[0,1,b],[0,0,1]].
* ``Z/m``  -- finite cyclic group, generator t, elements are residues.

Elements are plain hashable values (ints / tuples of ints), so they can be
used directly as dict keys.  All operations are pure; the only mutable
state is the memoised BFS distance table of H3 (append-only, safe under
the GIL for per-worker use).
"""

from __future__ import annotations

import os
import re
from collections import deque
from dataclasses import dataclass, field

from .errors import BallCapExceeded, ParseError

DEFAULT_BALL_CAP = 10 ** 6

_FREE_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def ball_cap() -> int:
    """Current element cap for ball enumeration (env QLAB_BALL_CAP overrides)."""
    raw = os.environ.get("QLAB_BALL_CAP")
    if raw is None:
        return DEFAULT_BALL_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ParseError(f"QLAB_BALL_CAP must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ParseError("QLAB_BALL_CAP must be >= 1")
    return cap


@dataclass(frozen=True)
class Ball:
    """Exhaustive ball with exact BFS distances (centred at e)."""

    group: "MarkedGroup"
    radius: int
    elements: tuple  # tuple of (element, distance), sorted by (distance, element)
    dist: dict = field(repr=False, compare=False, default_factory=dict)
    center: object = None

    def __post_init__(self):
        if self.center is None:
            object.__setattr__(self, "center", self.group.identity())

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return g in self.dist

    def members(self):
        return [g for g, _ in self.elements]


class MarkedGroup:
    """Base class: a group with a fixed symmetric generating set."""

    descriptor: str

    # -- core group operations, supplied by subclasses -------------------
    def identity(self):
        raise NotImplementedError

    def multiply(self, g, h):
        raise NotImplementedError

    def invert(self, g):
        raise NotImplementedError

    def word_length(self, g) -> int:
        raise NotImplementedError

    def generator_names(self) -> list:
        """Names of the positive generators (inverses are name^-1)."""
        raise NotImplementedError

    def generator(self, name):
        raise NotImplementedError

    # -- derived ----------------------------------------------------------
    def generators(self):
        """Symmetric generating set as a list of (token, element) pairs."""
        out = []
        seen = set()
        for name in self.generator_names():
            g = self.generator(name)
            for token, elt in ((name, g), (name + "^-1", self.invert(g))):
                if elt not in seen and elt != self.identity():
                    seen.add(elt)
                    out.append((token, elt))
        return out

    def distance(self, g, h) -> int:
        return self.word_length(self.multiply(self.invert(g), h))

    def ball(self, radius: int, cap: int | None = None) -> Ball:
        """All elements at distance <= radius from e, with exact distances."""
        if radius < 0:
            raise ValueError("radius must be >= 0")
        cap = ball_cap() if cap is None else cap
        e = self.identity()
        dist = {e: 0}
        frontier = deque([e])
        gens = [g for _, g in self.generators()]
        while frontier:
            g = frontier.popleft()
            d = dist[g]
            if d == radius:
                continue
            for s in gens:
                h = self.multiply(g, s)
                if h not in dist:
                    if len(dist) >= cap:
                        raise BallCapExceeded(
                            f"|B_{radius}| of {self.descriptor} exceeds cap {cap}"
                        )
                    dist[h] = d + 1
                    frontier.append(h)
        elements = tuple(sorted(dist.items(), key=lambda kv: (kv[1], kv[0])))
        return Ball(group=self, radius=radius, elements=elements, dist=dist)

    # -- word parsing / formatting ----------------------------------------
    _token_re = re.compile(r"^(?P<name>[A-Za-z][A-Za-z0-9]*)(\^(?P<exp>-?\d+))?$")

    def parse_word(self, word: str):
        """Product of generator tokens ('a b^-1 e2^3'); empty word is e."""
        g = self.identity()
        for token in word.split():
            m = self._token_re.match(token)
            if not m:
                raise ParseError(f"bad generator token {token!r}")
            name, exp = m.group("name"), m.group("exp")
            k = 1 if exp is None else int(exp)
            try:
                s = self.generator(name)
            except KeyError:
                raise ParseError(
                    f"unknown generator {name!r} for group {self.descriptor}"
                ) from None
            if k < 0:
                s, k = self.invert(s), -k
            for _ in range(k):
                g = self.multiply(g, s)
        return g

    def format_element(self, g) -> str:
        """Render g as a generator word that parses back to g; e is ''."""
        raise NotImplementedError

    # -- plumbing ----------------------------------------------------------
    def sort_key(self, g):
        """Deterministic total order on elements (for stable reports)."""
        return g

    def __eq__(self, other):
        return isinstance(other, MarkedGroup) and self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        return f"MarkedGroup({self.descriptor!r})"


def _group_powers(tokens):
    """'a a a b^-1 b^-1' -> 'a^3 b^-2' (token, exponent) run-length encoding."""
    parts = []
    for name, k in tokens:
        if k == 0:
            continue
        if parts and parts[-1][0] == name:
            parts[-1][1] += k
        else:
            parts.append([name, k])
    out = []
    for name, k in parts:
        if k == 0:
            continue
        out.append(name if k == 1 else f"{name}^{k}")
    return " ".join(out)


class FreeAbelian(MarkedGroup):
    def __init__(self, rank: int):
        if rank < 1:
            raise ParseError("Z^n needs rank >= 1")
        self.rank = rank
        self.descriptor = f"Z^{rank}"
        self._names = [f"e{i + 1}" for i in range(rank)]

    def identity(self):
        return (0,) * self.rank

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(-a for a in g)

    def word_length(self, g):
        return sum(abs(a) for a in g)

    def generator_names(self):
        return list(self._names)

    def generator(self, name):
        i = self._names.index(name) if name in self._names else -1
        if i < 0:
            raise KeyError(name)
        e = [0] * self.rank
        e[i] = 1
        return tuple(e)

    def format_element(self, g):
        return _group_powers((self._names[i], a) for i, a in enumerate(g))


class FreeGroup(MarkedGroup):
    def __init__(self, rank: int):
        if rank < 1:
            raise ParseError("F<k> needs rank >= 1")
        if rank > len(_FREE_LETTERS):
            raise ParseError("free rank capped at 26 (single-letter generators)")
        self.rank = rank
        self.descriptor = f"F{rank}"
        self._names = list(_FREE_LETTERS[:rank])

    def identity(self):
        return ()

    def multiply(self, g, h):
        # concatenate and freely reduce across the seam
        g = list(g)
        i = 0
        while g and i < len(h) and g[-1] == -h[i]:
            g.pop()
            i += 1
        return tuple(g) + tuple(h[i:])

    def invert(self, g):
        return tuple(-x for x in reversed(g))

    def word_length(self, g):
        return len(g)

    def generator_names(self):
        return list(self._names)

    def generator(self, name):
        if name not in self._names:
            raise KeyError(name)
        return (self._names.index(name) + 1,)

    def format_element(self, g):
        return _group_powers(
            (self._names[abs(x) - 1], 1 if x > 0 else -1) for x in g
        )


class Heisenberg(MarkedGroup):
    """H3(Z): triples (a, b, c), (a,b,c)*(a',b',c') = (a+a', b+b', c+c'+a*b').

    Word lengths are exact BFS distances on the Cayley graph of {x, y}
    (symmetric closure); the BFS table is memoised and grown on demand.
    """

    def __init__(self):
        self.descriptor = "H3"
        self._dist = {(0, 0, 0): 0}
        self._frontier = deque([(0, 0, 0)])
        self._explored_radius = 0

    def identity(self):
        return (0, 0, 0)

    def multiply(self, g, h):
        return (g[0] + h[0], g[1] + h[1], g[2] + h[2] + g[0] * h[1])

    def invert(self, g):
        a, b, c = g
        return (-a, -b, a * b - c)

    def generator_names(self):
        return ["x", "y"]

    def generator(self, name):
        if name == "x":
            return (1, 0, 0)
        if name == "y":
            return (0, 1, 0)
        raise KeyError(name)

    def _grow(self, radius, cap):
        gens = [g for _, g in self.generators()]
        while self._explored_radius < radius:
            nxt = deque()
            while self._frontier:
                g = self._frontier.popleft()
                for s in gens:
                    h = self.multiply(g, s)
                    if h not in self._dist:
                        if len(self._dist) >= cap:
                            raise BallCapExceeded(
                                f"H3 BFS exceeds cap {cap} at radius "
                                f"{self._explored_radius + 1}"
                            )
                        self._dist[h] = self._explored_radius + 1
                        nxt.append(h)
            self._frontier = nxt
            self._explored_radius += 1

    def word_length(self, g):
        cap = ball_cap()
        while g not in self._dist:
            if not self._frontier and self._explored_radius > 0:
                raise BallCapExceeded("H3 BFS frontier exhausted (impossible)")
            self._grow(self._explored_radius + 1, cap)
        return self._dist[g]

    def ball(self, radius, cap=None):
        cap = ball_cap() if cap is None else cap
        self._grow(radius, cap)
        items = [(g, d) for g, d in self._dist.items() if d <= radius]
        elements = tuple(sorted(items, key=lambda kv: (kv[1], kv[0])))
        dist = dict(items)
        return Ball(group=self, radius=radius, elements=elements, dist=dist)

    def format_element(self, g):
        # (a,b,c) = x^a y^b [x,y]^(c-ab); the commutator is spelled out.
        a, b, c = g
        k = c - a * b
        comm = [("x", 1), ("y", 1), ("x", -1), ("y", -1)]
        if k < 0:
            comm = [(n, -e) for n, e in reversed(comm)]
            k = -k
        tokens = [("x", a), ("y", b)] + comm * k
        return _group_powers(tokens)


class CyclicMod(MarkedGroup):
    def __init__(self, modulus: int):
        if modulus < 1:
            raise ParseError("Z/m needs modulus >= 1")
        self.modulus = modulus
        self.descriptor = f"Z/{modulus}"

    def identity(self):
        return 0

    def multiply(self, g, h):
        return (g + h) % self.modulus

    def invert(self, g):
        return (-g) % self.modulus

    def word_length(self, g):
        return min(g, self.modulus - g) if g else 0

    def generator_names(self):
        return ["t"]

    def generator(self, name):
        if name != "t":
            raise KeyError(name)
        return 1 % self.modulus

    def format_element(self, g):
        if not g:
            return ""
        k = g if g <= self.modulus - g else g - self.modulus
        return _group_powers([("t", k)])


_DESCRIPTOR_RE = re.compile(r"^(Z\^(?P<rank>\d+)|F(?P<free>\d+)|H3|Z/(?P<mod>\d+))$")


def make_group(descriptor: str) -> MarkedGroup:
    """Build a marked group from a descriptor: Z^<n> | F<k> | H3 | Z/<m>."""
    m = _DESCRIPTOR_RE.match(descriptor.strip())
    if not m:
        raise ParseError(f"unknown group descriptor {descriptor!r}")
    if m.group("rank"):
        return FreeAbelian(int(m.group("rank")))
    if m.group("free"):
        return FreeGroup(int(m.group("free")))
    if m.group("mod"):
        return CyclicMod(int(m.group("mod")))
    return Heisenberg()
