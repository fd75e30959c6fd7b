"""Certified estimates for kernels acting by convolution on lp(G).

A kernel A acts on lp(G) by right convolution u -> u * A.  This is the
finite-propagation realization compatible with the *left*-invariant word
metric: it moves a point s of supp u to s*h with d(s, s*h) = |h|, so mass
escapes at most propagation(A) far.  (The left action u -> A * u conjugates
distances and is not quasi-local on nonabelian groups.)  On lp it has the
matrix M[x, y] = a_{y^-1 x}.

Everything here reports *enclosures* (:class:`BoundInterval`): lower bounds
come from explicit witnesses (test vectors, compressions), upper bounds from
the l1 coefficient bound, which dominates the operator norm on every lp.

Dominating-function conventions
-------------------------------

``mu_upper(A, r)`` bounds the mass an operator leaks beyond distance r from
the support of its input:  for x with d(x, supp u) > r the value (u*A)(x)
only involves coefficients with |g| > r, so the strict l1 tail is a sound
bound.  It vanishes for r >= propagation.

The polynomial quasi-locality norm is evaluated with the full-range
weighting

    ||A||_{mu,n}  <=  max_{k = 1..prop} (sum_{|g| >= k} |a_g|) * k^n,

i.e. the leak at distance >= k weighted by k^n, including k = 1.  Weighting
every positive radius (rather than only radii > 1) is what makes the
Neumann-series smoothness bound and the kernel estimates hold verbatim: the
inverse bound recurses into mu(R/2^k) for arbitrarily small R/2^k, and the
weighted tail corollary sums the tail lemma over all radii >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .groups import Ball
from .kernels import Kernel, convolve

# Relative slack absorbing float roundoff in theorem checks; the compared
# quantities are exact-in-principle inequalities between sound bounds.
FLOAT_SLACK = 1e-12

PI2_OVER_6 = math.pi ** 2 / 6


@dataclass(frozen=True)
class BoundInterval:
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower < 0 or self.upper < 0:
            raise ValueError("bounds must be non-negative")
        if self.lower > self.upper:
            # sound bounds can only cross by float noise; keep the enclosure
            object.__setattr__(self, "lower", self.upper)


@dataclass(frozen=True)
class DominatingProfile:
    p: float
    radii: tuple
    bounds: tuple  # BoundInterval per radius


@dataclass(frozen=True)
class PolyNormReport:
    n: int
    p: float
    value: BoundInterval


def leq_with_slack(lhs: float, rhs: float) -> bool:
    return lhs <= rhs + FLOAT_SLACK * max(1.0, abs(rhs))


# ---------------------------------------------------------------------------
# operator norms on a finite window
# ---------------------------------------------------------------------------

def _compression_matrix(a: Kernel, window: Ball) -> sp.csr_matrix:
    # matrix of u -> u * a restricted to the window: M[x, y] = a_{y^-1 x}
    index = {g: i for i, (g, _) in enumerate(window.elements)}
    mul = a.group.multiply
    rows, cols, data = [], [], []
    for h, coeff in a.entries.items():
        c = complex(coeff)
        for y, i in index.items():
            x = mul(y, h)
            j = index.get(x)
            if j is not None:
                rows.append(j)
                cols.append(i)
                data.append(c)
    n = len(index)
    return sp.csr_matrix(
        (np.array(data, dtype=complex), (rows, cols)), shape=(n, n)
    )


def _lp_norm(v: np.ndarray, p: float) -> float:
    return float(np.sum(np.abs(v) ** p) ** (1.0 / p))


def _dual_phase(v: np.ndarray, p: float) -> np.ndarray:
    """phase(v) * |v|^(p-1), the lp 'duality map' used by the power method."""
    av = np.abs(v)
    out = np.zeros_like(v)
    nz = av > 0
    out[nz] = (v[nz] / av[nz]) * av[nz] ** (p - 1.0)
    return out


def _p2_power_iteration(m: sp.csr_matrix, tol: float = 1e-9, max_iter: int = 5000):
    n = m.shape[0]
    mh = m.conjugate().transpose().tocsr()
    v = np.ones(n, dtype=complex) / math.sqrt(n)
    last = 0.0
    for _ in range(max_iter):
        w = mh @ (m @ v)
        norm = np.linalg.norm(w)
        if norm == 0:
            return 0.0
        v = w / norm
        current = math.sqrt(norm)
        if abs(current - last) <= tol * max(1.0, current):
            break
        last = current
    return float(np.linalg.norm(m @ v) / np.linalg.norm(v))


def _general_p_ascent(m: sp.csr_matrix, p: float, starts, max_iter: int = 200):
    """Boyd-style fixed point iteration; any iterate yields a valid lower bound."""
    mh = m.conjugate().transpose().tocsr()
    q = p / (p - 1.0) if p > 1 else math.inf
    best = 0.0
    for v0 in starts:
        v = v0.astype(complex)
        nv = _lp_norm(v, p)
        if nv == 0:
            continue
        v = v / nv
        stall = 0
        for _ in range(max_iter):
            y = m @ v
            gain = _lp_norm(y, p)
            if not math.isfinite(gain):
                break
            if gain > best + 1e-14:
                best = gain
                stall = 0
            else:
                stall += 1
                if stall >= 3:
                    break
            z = mh @ _dual_phase(y, p)
            if q is math.inf:
                w = np.zeros_like(z)
                idx = int(np.argmax(np.abs(z)))
                if abs(z[idx]) == 0:
                    break
                w[idx] = z[idx] / abs(z[idx])
            else:
                w = _dual_phase(z, q)
            nw = _lp_norm(w, p)
            if nw == 0:
                break
            v = w / nw
    return best


def operator_norm(a: Kernel, p: float, window: Ball) -> BoundInterval:
    """Enclosure of the lp -> lp convolution operator norm of ``a``.

    Lower: norm of the compression to lp(window) (exact column sums for
    p = 1, power iteration for p = 2, coordinate ascent otherwise).
    Upper: the l1 coefficient bound, valid for every p.
    """
    if p < 1 or math.isinf(p):
        raise ValueError("p must lie in [1, oo)")
    if len(window) == 0:
        raise ValueError("empty window")
    upper = a.l1()
    if not a.entries:
        return BoundInterval(0.0, 0.0)
    m = _compression_matrix(a.to_float(), window)
    if p == 1:
        lower = float(np.abs(m).sum(axis=0).max())
    elif p == 2:
        lower = _p2_power_iteration(m)
    else:
        n = m.shape[0]
        starts = [np.ones(n), np.zeros(n)]
        starts[1][0] = 1.0  # window elements are sorted, index 0 is e
        rng = np.random.default_rng(0)
        starts.append(rng.standard_normal(n))
        lower = _general_p_ascent(m, p, starts)
    return BoundInterval(min(lower, upper), upper)


# ---------------------------------------------------------------------------
# dominating functions
# ---------------------------------------------------------------------------

def mu_upper(a: Kernel, r: float) -> float:
    """l1 mass of entries with |g| > r; sound upper bound for mu_A(r)."""
    wl = a.group.word_length
    total = 0.0
    for g, c in a.entries.items():
        if wl(g) > r:
            total += abs(complex(c))
    return total


def _support_distance_table(a_u: Kernel, supp_u) -> dict:
    grp = a_u.group
    inv = [grp.invert(s) for s in supp_u]
    mul = grp.multiply
    wl = grp.word_length
    return {
        x: min(wl(mul(si, x)) for si in inv) for x in a_u.entries
    }


def prepare_witnesses(a: Kernel, test_vectors=()):
    """Precompute (u, masses) pairs reusable across exponents and radii.

    masses holds (distance-to-supp-u, |coefficient|) for each point of u*A.
    """
    grp = a.group
    vectors = [Kernel.delta(grp, grp.identity())]
    vectors += [v.to_float() for v in test_vectors if v.entries]
    af = a.to_float()
    witnesses = []
    for u in vectors:
        ua = convolve(u, af)  # right action u * A
        if not ua.entries:
            continue
        dist = _support_distance_table(ua, u.support())
        masses = sorted((dist[x], abs(c)) for x, c in ua.entries.items())
        witnesses.append((u, masses))
    return witnesses


def mu_lower_from_witnesses(witnesses, p: float, radii) -> list:
    best = [0.0] * len(radii)
    for u, masses in witnesses:
        u_norm = u.lp(p)
        for i, r in enumerate(radii):
            total = sum(m ** p for d, m in masses if d > r)
            if total > 0:
                best[i] = max(best[i], total ** (1.0 / p) / u_norm)
    return best


def mu_lower_profile(a: Kernel, p: float, radii, test_vectors=()) -> list:
    """Per-radius lower bounds for mu_A via explicit test vectors.

    Each test vector u gives the witness ||u * A||_p restricted to
    d(x, supp u) > r, divided by ||u||_p.  delta_e is always included.
    """
    return mu_lower_from_witnesses(prepare_witnesses(a, test_vectors), p, radii)


def dominating_profile(
    a: Kernel, p: float, window: Ball, radii, test_vectors=()
) -> DominatingProfile:
    radii = tuple(radii)
    if any(r <= 1 for r in radii):
        raise ValueError("profile radii must be > 1")
    if radii and window.radius < max(radii) + a.propagation:
        raise ValueError(
            "window too small: radius must be >= max(radii) + propagation"
        )
    lowers = mu_lower_profile(a, p, radii, test_vectors)
    bounds = tuple(
        BoundInterval(min(lo, mu_upper(a, r)), mu_upper(a, r))
        for lo, r in zip(lowers, radii)
    )
    return DominatingProfile(p=p, radii=radii, bounds=bounds)


def poly_mu_norm(a: Kernel, p: float, n: int) -> PolyNormReport:
    """Enclosure of the polynomial quasi-locality norm ||A||_{p,mu,n}.

    Full-range weighting: max over integer k in [1, prop] of the leak at
    distance >= k times k^n (see module docstring).  Zero for kernels
    supported on {e}.
    """
    if n < 0:
        raise ValueError("weight exponent must be >= 0")
    wl = a.group.word_length
    prop = a.propagation
    upper = 0.0
    lower = 0.0
    if prop >= 1:
        moduli = [(wl(g), abs(complex(c))) for g, c in a.entries.items()]
        for k in range(1, prop + 1):
            t1 = sum(m for d, m in moduli if d >= k)
            tp = sum(m ** p for d, m in moduli if d >= k)
            upper = max(upper, t1 * k ** n)
            lower = max(lower, tp ** (1.0 / p) * k ** n)
    return PolyNormReport(n=n, p=p, value=BoundInterval(min(lower, upper), upper))


# ---------------------------------------------------------------------------
# inequality checks (each returns report rows; a False 'passes' is a
# build-failing event for the theorem campaigns)
# ---------------------------------------------------------------------------

def check_composition_estimate(
    a: Kernel, b: Kernel, p: float, radii, test_vectors=()
) -> list:
    """Roe's composition estimate, checked in the sound direction.

    Asserts lower(mu_AB(R)) <= ||A||_1 * 2 mu_B(R/2) + mu_A(R/2) *
    (||B||_1 + 2 mu_B(R/2)) with upper bounds on the right.
    """
    a._check_compatible(b)
    ab = convolve(a, b)
    lowers = mu_lower_profile(ab, p, radii, test_vectors)
    a_up = a.l1()
    b_up = b.l1()
    rows = []
    for r, lhs in zip(radii, lowers):
        mu_b_half = mu_upper(b, r / 2.0)
        mu_a_half = mu_upper(a, r / 2.0)
        rhs = a_up * 2.0 * mu_b_half + mu_a_half * (b_up + 2.0 * mu_b_half)
        rows.append(
            {
                "R": r,
                "lhs_lower": lhs,
                "rhs_upper": rhs,
                "slack": rhs - lhs,
                "passes": leq_with_slack(lhs, rhs),
            }
        )
    return rows


def check_power_estimate(
    a: Kernel, n: int, radii, p: float = 2.0, test_vectors=()
) -> list:
    """Iterated composition estimate for A^(n+1) with constants 5^k."""
    if n < 1:
        raise ValueError("power estimate needs n >= 1")
    power = a
    for _ in range(n):
        power = convolve(power, a)
    lowers = mu_lower_profile(power, p, radii, test_vectors)
    a_up_n = a.l1() ** n
    rows = []
    for r, lhs in zip(radii, lowers):
        rhs = sum(5.0 ** k * a_up_n * mu_upper(a, r / 2.0 ** k) for k in range(1, n + 1))
        rows.append(
            {
                "n": n,
                "R": r,
                "lhs_lower": lhs,
                "rhs_upper": rhs,
                "slack": rhs - lhs,
                "passes": leq_with_slack(lhs, rhs),
            }
        )
    return rows


def _fit_slope(xs, ys) -> float:
    coeffs = np.polyfit(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float), 1)
    return float(coeffs[0])


def neumann_invert(
    a: Kernel,
    terms: int,
    l: int = 1,
    radii=tuple(range(2, 21)),
    tolerance: float = 1e-6,
):
    """Partial Neumann series S_N = sum_{k<=N} (id - A)^k with decay reports.

    Requires eps = ||id - A||_1 < 1/(2 * 5 * 2^l), the series threshold for
    weight l.  Returns (S_N, report).
    """
    grp = a.group
    ident = Kernel.identity(grp, a.regime)
    diff = ident - a
    eps = diff.l1()
    if eps >= 1.0:
        raise ValueError(f"||id - A|| l1 bound {eps} >= 1: series diverges")
    threshold = 0.5 / (5.0 * 2 ** l)
    if eps >= threshold:
        raise ValueError(
            f"eps={eps} not below the weight-{l} threshold {threshold}"
        )
    from .groups import ball_cap

    if terms * max(a.propagation, 1) > ball_cap():
        raise ValueError("N * propagation exceeds the ball cap")

    partial = Kernel.identity(grp, a.regime)
    term = Kernel.identity(grp, a.regime)
    for _ in range(terms):
        term = convolve(term, diff)
        partial = partial + term
    # id - A*S_N telescopes to (id - A)^(N+1); evaluating the power directly
    # avoids the catastrophic cancellation of subtracting ~id from id.
    residual = convolve(term, diff)
    residual_l1 = residual.l1()
    residual_bound = eps ** (terms + 1) / (1.0 - eps)

    series_norm = poly_mu_norm(partial, 2.0, l).value.upper
    base_norm = poly_mu_norm(a, 2.0, l).value.upper
    factor = 2.0 / (1.0 - eps)
    norm_rhs = factor * base_norm + tolerance

    slope = None
    slope_bound = None
    slope_ok = True
    prop = a.propagation
    if prop >= 1:
        pts = [(r, mu_upper(partial, r)) for r in radii]
        pts = [(r, v) for r, v in pts if v > 0]
        if len(pts) >= 2:
            slope = _fit_slope([r for r, _ in pts], [math.log(v) for _, v in pts])
            slope_bound = math.log(eps) / prop + 0.1
            slope_ok = slope <= slope_bound

    report = {
        "epsilon": eps,
        "terms": terms,
        "l": l,
        "residual_l1": residual_l1,
        "residual_bound": residual_bound,
        "residual_ok": leq_with_slack(residual_l1, residual_bound),
        "series_norm_upper": series_norm,
        "norm_rhs": norm_rhs,
        "bound_factor": factor,
        "norm_ok": series_norm <= norm_rhs,
        "slope": slope,
        "slope_bound": slope_bound,
        "slope_ok": slope_ok,
        "passes": None,
    }
    report["passes"] = report["residual_ok"] and report["norm_ok"] and slope_ok
    return partial, report


def check_kernel_estimates(a: Kernel, p: float, n: int) -> list:
    """Tail-sum lemma and the pi^2/6 weighted corollary, p = 2 and lp forms.

    The identity coefficient is excluded from the weighted sums: it sits at
    distance 0, where the weight d^(pn-2) is 0 by the convention read off
    the summation proof (and is undefined for pn < 2).  Strict inequalities;
    rows with both sides zero pass vacuously.
    """
    wl = a.group.word_length
    prop = a.propagation
    u2 = poly_mu_norm(a, 2.0, n).value.upper
    up = poly_mu_norm(a, p, n).value.upper
    rows = []

    def strict_row(kind, radius, lhs, rhs):
        ok = lhs < rhs or (lhs == 0.0 and rhs == 0.0)
        rows.append(
            {
                "kind": kind,
                "R": radius,
                "lhs": lhs,
                "rhs_upper": rhs,
                "slack": rhs - lhs,
                "passes": ok,
            }
        )

    for r in range(2, prop):
        strict_row("tail_l2", r, a.lp_tail_gt(r, 2.0), u2 ** 2 / r ** (2 * n))
        strict_row("tail_lp", r, a.lp_tail_gt(r, p), up ** p / r ** (p * n))

    w2 = 0.0
    wp = 0.0
    for g, c in a.entries.items():
        d = wl(g)
        if d == 0:
            continue
        m = abs(complex(c))
        w2 += float(d) ** (2 * n - 2) * m ** 2
        wp += float(d) ** (p * n - 2) * m ** p
    strict_row("weighted_l2", None, w2, u2 ** 2 * PI2_OVER_6)
    strict_row("weighted_lp", None, wp, up ** p * PI2_OVER_6)
    return rows
