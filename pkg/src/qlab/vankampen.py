"""Van Kampen area of words in finite presentations (order-1 isoperimetry).

``vankampen_area`` finds the least number of conjugated relators whose
product freely equals a given word, by best-first search over freely
reduced words.  One move inserts a cyclic variant of a relator (or its
inverse) at some position and reduces; m moves from the empty word reach
exactly the words of area <= m, and inserting at a position realizes
conjugation by the prefix, so the move set is complete for subword
replacements.

Admissible heuristics keep the search exact: a generic length/relator-size
bound, plus the signed lattice area enclosed by the word's walk when the
presentation is a single commutator on two generators (each commutator
cell changes the enclosed area by exactly one).
"""

from __future__ import annotations

import heapq
import re

from .errors import ParseError

# -- words as tuples of signed 1-based generator indices ----------------------


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_word(word):
    return tuple(-x for x in reversed(word))


def cyclic_reduce(word):
    word = list(free_reduce(word))
    while len(word) >= 2 and word[0] == -word[-1]:
        word = word[1:-1]
    return tuple(word)


def cyclic_variants(word):
    seen = set()
    for base in (word, invert_word(word)):
        for i in range(len(base)):
            rotated = free_reduce(base[i:] + base[:i])
            if rotated:
                seen.add(rotated)
    return sorted(seen)


class Presentation:
    def __init__(self, generators, relators):
        self.generators = tuple(generators)
        reduced = []
        for r in relators:
            r = cyclic_reduce(r)
            if r:
                reduced.append(r)
        self.relators = tuple(reduced)

    def __repr__(self):
        return f"Presentation(<{','.join(self.generators)}|{len(self.relators)} relators>)"


# -- grammar:  <a,b|[a,b],a^2>  with [x,y] = x y x^-1 y^-1 ---------------------

_NAME_RE = re.compile(r"[A-Za-z]")


class _WordParser:
    def __init__(self, text, generators):
        self.text = text.replace(" ", "")
        self.pos = 0
        self.generators = list(generators)

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_word(self, stop_chars=""):
        word = []
        while self.pos < len(self.text) and self.peek() not in stop_chars:
            word.extend(self.parse_atom())
        return free_reduce(word)

    def parse_atom(self):
        ch = self.peek()
        if ch == "[":
            self.pos += 1
            x = self.parse_word(stop_chars=",")
            self.expect(",")
            y = self.parse_word(stop_chars="]")
            self.expect("]")
            base = free_reduce(x + y + invert_word(x) + invert_word(y))
        elif ch == "(":
            self.pos += 1
            base = self.parse_word(stop_chars=")")
            self.expect(")")
        elif _NAME_RE.match(ch):
            if ch not in self.generators:
                raise ParseError(f"unknown generator {ch!r}")
            base = (self.generators.index(ch) + 1,)
            self.pos += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in word")
        power = self.parse_power()
        if power == 1:
            return list(base)
        if power < 0:
            base, power = invert_word(base), -power
        return list(free_reduce(base * power))

    def parse_power(self):
        if self.peek() != "^":
            return 1
        self.pos += 1
        m = re.match(r"-?\d+", self.text[self.pos:])
        if not m:
            raise ParseError("missing exponent after ^")
        self.pos += len(m.group(0))
        return int(m.group(0))

    def expect(self, ch):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r} at position {self.pos}")
        self.pos += 1


def parse_presentation(text: str) -> Presentation:
    text = text.strip()
    if not (text.startswith("<") and text.endswith(">")):
        raise ParseError("presentation must look like <a,b|[a,b]>")
    body = text[1:-1]
    if "|" not in body:
        raise ParseError("presentation needs a | separating generators and relators")
    gen_part, rel_part = body.split("|", 1)
    generators = [g.strip() for g in gen_part.split(",") if g.strip()]
    for g in generators:
        if len(g) != 1 or not g.isalpha():
            raise ParseError(f"generators must be single letters, got {g!r}")
    relators = []
    for rel in rel_part.split(","):
        rel = rel.strip()
        if not rel:
            continue
        # commutator sugar contains a comma; re-join bracketed pieces
        relators.append(rel)
    relators = _rejoin_brackets(relators)
    words = []
    for rel in relators:
        parser = _WordParser(rel, generators)
        words.append(parser.parse_word())
        if parser.pos != len(parser.text):
            raise ParseError(f"trailing junk in relator {rel!r}")
    return Presentation(generators, words)


def _rejoin_brackets(pieces):
    out = []
    depth = 0
    for piece in pieces:
        if depth > 0:
            out[-1] += "," + piece
        else:
            out.append(piece)
        depth += piece.count("[") - piece.count("]")
    if depth != 0:
        raise ParseError("unbalanced brackets in relators")
    return out


def parse_word(text: str, presentation: Presentation):
    parser = _WordParser(text, presentation.generators)
    word = parser.parse_word()
    if parser.pos != len(parser.text):
        raise ParseError(f"trailing junk in word {text!r}")
    return word


def format_word(word, presentation: Presentation) -> str:
    parts = []
    for x in word:
        name = presentation.generators[abs(x) - 1]
        parts.append(name if x > 0 else name + "^-1")
    return " ".join(parts)


# -- admissible heuristics -----------------------------------------------------

def _commutator_area_heuristic(presentation: Presentation):
    """|signed lattice area| lower bound, valid for <x,y | [x,y]>."""
    if len(presentation.relators) != 1 or len(presentation.generators) != 2:
        return None
    if cyclic_reduce(presentation.relators[0]) not in (
        (1, 2, -1, -2), (2, 1, -2, -1), (-1, -2, 1, 2), (-2, -1, 2, 1),
        (1, -2, -1, 2), (2, -1, -2, 1), (-1, 2, 1, -2), (-2, 1, 2, -1),
    ):
        return None

    def heuristic(word):
        x = y = 0
        doubled = 0
        for step in word:
            nx, ny = x, y
            if abs(step) == 1:
                nx += 1 if step > 0 else -1
            else:
                ny += 1 if step > 0 else -1
            doubled += x * ny - nx * y
            x, y = nx, ny
        if x or y:  # walk does not close: not trivial even in Z^2
            return None
        return abs(doubled) // 2

    return heuristic


def vankampen_area(
    presentation: Presentation,
    word,
    area_max: int,
    length_bound: int | None = None,
):
    """Least m <= area_max with word = product of m conjugated relators.

    Returns None when no such expression exists within the area and
    intermediate-length bounds.  Intermediate reduced words are capped at
    |word| + area_max * max relator length.
    """
    word = free_reduce(word)
    if not word:
        return 0
    if not presentation.relators:
        raise ParseError("empty relator set cannot kill a nontrivial word")
    if area_max < 1:
        return None
    variants = []
    for r in presentation.relators:
        variants.extend(cyclic_variants(r))
    variants = sorted(set(variants))
    max_rel = max(len(r) for r in presentation.relators)
    if length_bound is None:
        length_bound = len(word) + area_max * max_rel

    area_h = _commutator_area_heuristic(presentation)

    def h(state):
        best = (len(state) + max_rel - 1) // max_rel
        if area_h is not None:
            signed = area_h(state)
            if signed is None:
                return None
            best = max(best, signed)
        return best

    h0 = h(word)
    if h0 is None or h0 > area_max:
        return None
    counter = 0
    heap = [(h0, 0, counter, word)]
    best_g = {word: 0}
    while heap:
        f, g, _, state = heapq.heappop(heap)
        if not state:
            return g
        if g > best_g.get(state, g):
            continue
        if g >= area_max:
            continue
        for variant in variants:
            for pos in range(len(state) + 1):
                new = free_reduce(state[:pos] + variant + state[pos:])
                if len(new) > length_bound:
                    continue
                ng = g + 1
                seen = best_g.get(new)
                if seen is not None and seen <= ng:
                    continue
                hv = h(new)
                if hv is None or ng + hv > area_max:
                    continue
                best_g[new] = ng
                counter += 1
                heapq.heappush(heap, (ng + hv, ng, counter, new))
    return None
