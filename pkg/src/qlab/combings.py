"""Combings of marked groups and empirical verification of their properties.

A combing assigns each g a unit-speed path from e that becomes constant at
g.  Supported schemes:

* ``straight-line`` on Z^n: exhaust generator 1, then generator 2, ...
* ``geodesic`` on F_k: follow the reduced word.
* ``naive`` on H3: follow x^a y^b [x,y]^(c-ab) letter by letter; a stress
  case, deliberately far from geodesic on the center.
* ``dilated`` on Z^n: straight-line with every step repeated |g| times, a
  fixture whose length-growth exponent is 2.

All verification here is exhaustive over a ball, hence exact on that ball;
reports say nothing about the group at infinity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groups import MarkedGroup


@dataclass(frozen=True)
class Combing:
    group: MarkedGroup
    scheme: str
    length_of: object  # g -> path length
    point_at: object   # (g, t) -> element

    def path(self, g):
        return [self.point_at(g, t) for t in range(self.length_of(g) + 1)]


def _straight_line(group):
    def length_of(g):
        return group.word_length(g)

    def point_at(g, t):
        out = []
        remaining = t
        for coord in g:
            step = max(min(remaining, abs(coord)), 0)
            out.append(step if coord >= 0 else -step)
            remaining -= abs(coord)
        return tuple(out)

    return length_of, point_at


def _free_geodesic(group):
    def length_of(g):
        return len(g)

    def point_at(g, t):
        return g[: min(t, len(g))]

    return length_of, point_at


def _h3_letters(group, g):
    a, b, c = g
    k = c - a * b
    x, y = (1, 0, 0), (0, 1, 0)
    xi, yi = group.invert(x), group.invert(y)
    letters = [x if a >= 0 else xi] * abs(a) + [y if b >= 0 else yi] * abs(b)
    comm = [x, y, xi, yi] if k >= 0 else [y, x, yi, xi]
    letters += comm * abs(k)
    return letters


def _h3_naive(group):
    def length_of(g):
        a, b, c = g
        return abs(a) + abs(b) + 4 * abs(c - a * b)

    def point_at(g, t):
        letters = _h3_letters(group, g)
        current = group.identity()
        for letter in letters[: min(t, len(letters))]:
            current = group.multiply(current, letter)
        return current

    return length_of, point_at


def _dilated(group):
    base_len, base_point = _straight_line(group)

    def length_of(g):
        return base_len(g) * max(base_len(g), 1)

    def point_at(g, t):
        dwell = max(base_len(g), 1)
        return base_point(g, min(t // dwell, base_len(g)))

    return length_of, point_at


_SCHEMES = {
    ("Z^", "straight-line"): _straight_line,
    ("Z^", "dilated"): _dilated,
    ("F", "geodesic"): _free_geodesic,
    ("H3", "naive"): _h3_naive,
}


def make_combing(group: MarkedGroup, scheme: str) -> Combing:
    for (prefix, name), builder in _SCHEMES.items():
        if scheme == name and group.descriptor.startswith(prefix):
            length_of, point_at = builder(group)
            return Combing(group, scheme, length_of, point_at)
    raise ValueError(
        f"scheme {scheme!r} not supported for group {group.descriptor}"
    )


def check_combing_axioms(sigma: Combing, radius: int) -> dict:
    """sigma(g)(0) = e, eventual constancy at g, unit speed, over B_radius."""
    grp = sigma.group
    ball = grp.ball(radius)
    e = grp.identity()
    for g in ball.members():
        length = sigma.length_of(g)
        if sigma.point_at(g, 0) != e:
            return {"passes": False, "reason": f"path of {g} does not start at e"}
        for t in (length, length + 1, length + 3):
            if sigma.point_at(g, t) != g:
                return {"passes": False, "reason": f"path of {g} not constant at {t}"}
        previous = e
        for t in range(1, length + 2):
            current = sigma.point_at(g, t)
            if grp.distance(previous, current) > 1:
                return {"passes": False, "reason": f"speed > 1 for {g} at t={t}"}
            previous = current
    return {"passes": True, "reason": ""}


def fellow_traveler_profile(sigma: Combing, radius: int) -> list:
    """Exact fellow-traveler constants on B_r for each r <= radius.

    Pairs are (g, gs) with both endpoints in the ball; the constant for
    B_r is the running max over pairs whose endpoints both lie in B_r.
    """
    grp = sigma.group
    ball = grp.ball(radius)
    gens = [s for _, s in grp.generators()]
    per_radius = [0] * (radius + 1)
    for g, dg in ball.elements:
        lg = sigma.length_of(g)
        for s in gens:
            h = grp.multiply(g, s)
            dh = ball.dist.get(h)
            if dh is None:
                continue
            pair_radius = max(dg, dh)
            deviation = 0
            for t in range(max(lg, sigma.length_of(h)) + 1):
                d = grp.distance(sigma.point_at(g, t), sigma.point_at(h, t))
                if d > deviation:
                    deviation = d
            if deviation > per_radius[pair_radius]:
                per_radius[pair_radius] = deviation
    running = []
    best = 0
    for r in range(radius + 1):
        best = max(best, per_radius[r])
        running.append(best)
    return running


def fellow_traveler_constant(sigma: Combing, radius: int) -> int:
    return fellow_traveler_profile(sigma, radius)[-1]


def quasi_geodesic_check(sigma: Combing, lam: float, c: float, radius: int) -> dict:
    """(|s-t|/lam - c) <= d(sigma(g)(s), sigma(g)(t)) <= |s-t| on B_radius.

    s, t range over [0, length(sigma(g))]; beyond the length the path is
    constant and the lower bound is meaningless for eventually constant
    paths.
    """
    if lam < 1 or c < 0:
        raise ValueError("need lambda >= 1 and c >= 0")
    grp = sigma.group
    ball = grp.ball(radius)
    worst = None
    for g in ball.members():
        length = sigma.length_of(g)
        points = [sigma.point_at(g, t) for t in range(length + 1)]
        if points[-1] != g:
            return {
                "passes": False,
                "reason": f"path of {g} never reaches it",
                "lam": lam, "c": c,
            }
        for s in range(length + 1):
            for t in range(s + 1, length + 1):
                d = grp.distance(points[s], points[t])
                gap = t - s
                if d > gap:
                    return {
                        "passes": False,
                        "reason": f"speed bound broken for {g} ({s},{t})",
                        "lam": lam, "c": c,
                    }
                shortfall = (gap / lam - c) - d
                if shortfall > 0 and (worst is None or shortfall > worst):
                    worst = shortfall
    return {
        "passes": worst is None,
        "reason": "" if worst is None else f"lower bound misses by {worst}",
        "lam": lam,
        "c": c,
    }


def smallest_passing_constants(sigma: Combing, radius: int,
                               lam_grid=(1.0, 1.5, 2.0, 3.0),
                               c_grid=(0.0, 1.0, 2.0, 4.0)):
    """First (lambda, c) on the grid passing the quasi-geodesic check."""
    for lam in lam_grid:
        for c in c_grid:
            if quasi_geodesic_check(sigma, lam, c, radius)["passes"]:
                return lam, c
    return None


def length_growth(sigma: Combing, radius: int) -> dict:
    """Max path length per sphere S_r and the log-log fitted exponent."""
    grp = sigma.group
    ball = grp.ball(radius)
    max_len = [0] * (radius + 1)
    for g, d in ball.elements:
        max_len[d] = max(max_len[d], sigma.length_of(g))
    pts = [(r, max_len[r]) for r in range(1, radius + 1) if max_len[r] > 0]
    exponent = None
    if len(pts) >= 2:
        xs = np.log([r for r, _ in pts])
        ys = np.log([v for _, v in pts])
        exponent = float(np.polyfit(xs, ys, 1)[0])
    return {"max_length": max_len, "exponent": exponent}
