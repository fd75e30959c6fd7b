"""Campaign runners binding the library modules to report rows.

Each runner returns a :class:`CampaignResult` with deterministic rows; the
service endpoints and the CLI are thin wrappers around these.  A row with
``pass`` false is an inequality violation; any violation makes the overall
outcome "violation" (CLI exit status 1).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import cyclic, quasilocal, ufchains
from .combings import (
    check_combing_axioms,
    fellow_traveler_profile,
    length_growth,
    make_combing,
    smallest_passing_constants,
)
from .filling import (
    complex_from_maximal,
    dehn_profile,
    grid_block_boundary,
    min_filling,
    triangulated_grid,
)
from .groups import make_group
from .kernels import Kernel, convolve, kernel_from_dict
from .quasilocal import (
    check_kernel_estimates,
    dominating_profile,
    mu_lower_from_witnesses,
    mu_upper,
    neumann_invert,
    operator_norm,
    prepare_witnesses,
)
from .randomgen import (
    GENERATOR_ID,
    random_kernel,
    random_tensor,
    random_test_vectors,
    trial_rng,
)
from .vankampen import format_word, parse_presentation, parse_word, vankampen_area


@dataclass
class CampaignResult:
    meta: dict
    columns: list
    rows: list
    key_columns: list = field(default_factory=list)
    violations: int = 0

    @property
    def outcome(self) -> str:
        return "violation" if self.violations else "ok"

    def finish(self):
        self.key_columns = self.key_columns or list(self.columns)
        self.violations = sum(
            1 for r in self.rows if r.get("pass") is False
        )
        return self


def _base_meta(**kwargs) -> dict:
    meta = {"generator": GENERATOR_ID}
    meta.update({k: v for k, v in kwargs.items() if v is not None})
    return meta


# ---------------------------------------------------------------------------

def ball_report(group_desc: str, radius: int) -> CampaignResult:
    grp = make_group(group_desc)
    ball = grp.ball(radius)
    rows = [
        {"length": d, "word": grp.format_element(g)}
        for g, d in ball.elements
    ]
    return CampaignResult(
        meta=_base_meta(subcommand="ball", group=group_desc, radius=radius,
                        size=len(rows)),
        columns=["length", "word"],
        rows=rows,
    ).finish()


def opnorm_report(kernel_data: dict, p: float, window_radius: int) -> CampaignResult:
    kernel = kernel_from_dict(kernel_data)
    window = kernel.group.ball(window_radius)
    iv = operator_norm(kernel, p, window)
    rows = [{"p": p, "window_radius": window_radius,
             "lower": iv.lower, "upper": iv.upper, "pass": iv.lower <= iv.upper}]
    return CampaignResult(
        meta=_base_meta(subcommand="opnorm", group=kernel.group.descriptor,
                        propagation=kernel.propagation),
        columns=["p", "window_radius", "lower", "upper", "pass"],
        rows=rows,
    ).finish()


def domfun_report(kernel_data: dict, p: float, radii, window_radius: int,
                  seed: int = 0, vectors: int = 2) -> CampaignResult:
    kernel = kernel_from_dict(kernel_data)
    grp = kernel.group
    window = grp.ball(window_radius)
    rng = trial_rng(seed, 0)
    tvs = random_test_vectors(grp, rng, count=vectors)
    prof = dominating_profile(kernel, p, window, radii, tvs)
    rows = [
        {"R": r, "lower": b.lower, "upper": b.upper, "pass": b.lower <= b.upper}
        for r, b in zip(prof.radii, prof.bounds)
    ]
    return CampaignResult(
        meta=_base_meta(subcommand="domfun", group=grp.descriptor, p=p,
                        seed=seed, window_radius=window_radius),
        columns=["R", "lower", "upper", "pass"],
        rows=rows,
    ).finish()


def roe_campaign(group_desc: str, trials: int, prop_max: int, ps, radii,
                 seed: int) -> CampaignResult:
    grp = make_group(group_desc)
    radii = list(radii)
    rows = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        a = random_kernel(grp, rng, prop_max)
        b = random_kernel(grp, rng, prop_max)
        tvs = random_test_vectors(grp, rng, count=2)
        ab = convolve(a, b)
        witnesses = prepare_witnesses(ab, tvs)
        a_up, b_up = a.l1(), b.l1()
        for p in ps:
            lowers = mu_lower_from_witnesses(witnesses, p, radii)
            for r, lhs in zip(radii, lowers):
                mu_b = mu_upper(b, r / 2.0)
                rhs = a_up * 2.0 * mu_b + mu_upper(a, r / 2.0) * (b_up + 2.0 * mu_b)
                rows.append({
                    "trial": trial, "p": p, "R": r,
                    "lhs_lower": lhs, "rhs_upper": rhs, "slack": rhs - lhs,
                    "pass": quasilocal.leq_with_slack(lhs, rhs),
                })
    return CampaignResult(
        meta=_base_meta(subcommand="verify-roe", group=group_desc, seed=seed,
                        trials=trials, prop_max=prop_max,
                        p_list=" ".join(map(str, ps))),
        columns=["trial", "p", "R", "lhs_lower", "rhs_upper", "slack", "pass"],
        rows=rows,
    ).finish()


def power_campaign(group_desc: str, trials: int, prop_max: int, ns, radii,
                   seed: int, p: float = 2.0) -> CampaignResult:
    grp = make_group(group_desc)
    radii = list(radii)
    ns = list(ns)
    rows = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        a = random_kernel(grp, rng, prop_max)
        tvs = random_test_vectors(grp, rng, count=2)
        a_l1 = a.l1()
        power = a
        for n in range(1, max(ns) + 1):
            power = convolve(power, a)
            if n not in ns:
                continue
            witnesses = prepare_witnesses(power, tvs)
            lowers = mu_lower_from_witnesses(witnesses, p, radii)
            for r, lhs in zip(radii, lowers):
                rhs = sum(
                    5.0 ** k * a_l1 ** n * mu_upper(a, r / 2.0 ** k)
                    for k in range(1, n + 1)
                )
                rows.append({
                    "trial": trial, "n": n, "R": r,
                    "lhs_lower": lhs, "rhs_upper": rhs, "slack": rhs - lhs,
                    "pass": quasilocal.leq_with_slack(lhs, rhs),
                })
    return CampaignResult(
        meta=_base_meta(subcommand="verify-power", group=group_desc, seed=seed,
                        trials=trials, prop_max=prop_max, p=p,
                        n_list=" ".join(map(str, ns))),
        columns=["trial", "n", "R", "lhs_lower", "rhs_upper", "slack", "pass"],
        rows=rows,
    ).finish()


def standard_contraction_kernel(group_desc: str, t: float) -> Kernel:
    """id - t * (delta_s + delta_s^-1)/2 on the first generator s."""
    grp = make_group(group_desc)
    s = grp.generator(grp.generator_names()[0])
    e = grp.identity()
    entries = {e: 1.0 + 0j}
    for g in (s, grp.invert(s)):
        entries[g] = entries.get(g, 0j) - t / 2.0
    return Kernel(grp, entries, "float")


def neumann_report(group_desc: str = "Z^1", t: float = 0.04, terms: int = 40,
                   l: int = 1, radii=tuple(range(2, 21)),
                   kernel_data: dict | None = None) -> CampaignResult:
    if kernel_data is not None:
        kernel = kernel_from_dict(kernel_data)
        group_desc = kernel.group.descriptor
    else:
        kernel = standard_contraction_kernel(group_desc, t)
    partial, rep = neumann_invert(kernel, terms, l=l, radii=radii)
    rows = [{
        "check": "residual", "lhs": rep["residual_l1"],
        "rhs": rep["residual_bound"], "pass": rep["residual_ok"],
    }, {
        "check": "series_norm", "lhs": rep["series_norm_upper"],
        "rhs": rep["norm_rhs"], "pass": rep["norm_ok"],
    }, {
        "check": "decay_slope", "lhs": rep["slope"],
        "rhs": rep["slope_bound"], "pass": rep["slope_ok"],
    }]
    for r in radii:
        rows.append({
            "check": f"mu_tail_{r:02d}", "lhs": mu_upper(partial, r),
            "rhs": None, "pass": True,
        })
    return CampaignResult(
        meta=_base_meta(subcommand="neumann", group=group_desc,
                        epsilon=rep["epsilon"], terms=terms, l=l,
                        bound_factor=rep["bound_factor"]),
        columns=["check", "lhs", "rhs", "pass"],
        rows=rows,
    ).finish()


def kernel_estimates_campaign(group_desc: str, trials: int, prop_max: int,
                              ps, ns, seed: int) -> CampaignResult:
    grp = make_group(group_desc)
    rows = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        a = random_kernel(grp, rng, prop_max)
        for p in ps:
            for n in ns:
                for rec in check_kernel_estimates(a, p, n):
                    rows.append({
                        "trial": trial, "p": p, "n": n, "kind": rec["kind"],
                        "R": rec["R"], "lhs": rec["lhs"],
                        "rhs_upper": rec["rhs_upper"], "pass": rec["passes"],
                    })
    return CampaignResult(
        meta=_base_meta(subcommand="kernel-est", group=group_desc, seed=seed,
                        trials=trials, prop_max=prop_max,
                        p_list=" ".join(map(str, ps)),
                        n_list=" ".join(map(str, ns))),
        columns=["trial", "p", "n", "kind", "R", "lhs", "rhs_upper", "pass"],
        rows=rows,
    ).finish()


def chi_campaign(group_desc: str, trials: int, degrees, seed: int,
                 prop_max: int = 1) -> CampaignResult:
    grp = make_group(group_desc)
    degrees = list(degrees)
    rows = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        degree = degrees[trial % len(degrees)]
        w = random_tensor(grp, rng, degree, prop_max)
        chain_map = cyclic.check_chain_map(w)
        descent = cyclic.check_cyclic_descent(w)
        rows.append({
            "trial": trial, "degree": degree, "check": "chain_map",
            "pass": chain_map["passes"],
        })
        rows.append({
            "trial": trial, "degree": degree, "check": "cyclic_descent",
            "pass": descent["passes"],
        })
    return CampaignResult(
        meta=_base_meta(subcommand="chi", group=group_desc, seed=seed,
                        trials=trials, prop_max=prop_max,
                        degrees=" ".join(map(str, degrees))),
        columns=["trial", "degree", "check", "pass"],
        rows=rows,
    ).finish()


def young_campaign(group_desc: str, trials: int, ns, ks, seed: int,
                   prop_max: int = 2) -> CampaignResult:
    grp = make_group(group_desc)
    ns = list(ns)
    rows = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        degree = ns[trial % len(ns)]
        w = random_tensor(grp, rng, degree, prop_max)
        for k in ks:
            rec = cyclic.check_young_bound(w, k)
            rows.append({
                "trial": trial, "n": degree, "k": k,
                "lhs": rec["lhs"], "rhs": rec["rhs"],
                "constant_used": rec["constant"], "pass": rec["passes"],
            })
    return CampaignResult(
        meta=_base_meta(subcommand="young", group=group_desc, seed=seed,
                        trials=trials, prop_max=prop_max,
                        n_list=" ".join(map(str, ns)),
                        k_list=" ".join(map(str, ks))),
        columns=["trial", "n", "k", "lhs", "rhs", "constant_used", "pass"],
        rows=rows,
    ).finish()


def rd_campaign(group_desc: str, trials: int, degrees, ks, seed: int,
                prop_max: int = 2) -> CampaignResult:
    grp = make_group(group_desc)
    degrees = list(degrees)
    rows = []
    for trial in range(trials):
        rng = trial_rng(seed, trial)
        degree = degrees[trial % len(degrees)]
        w = random_tensor(grp, rng, degree, prop_max)
        for k in ks:
            for rec in cyclic.check_rd_bound(w, k):
                rows.append({
                    "trial": trial, "n": degree, "k": k, "s": rec["s"],
                    "term": rec["term"], "lhs": rec["lhs"],
                    "rhs_upper": rec["rhs_upper"], "pass": rec["passes"],
                })
    return CampaignResult(
        meta=_base_meta(subcommand="rd", group=group_desc, seed=seed,
                        trials=trials, prop_max=prop_max),
        columns=["trial", "n", "k", "s", "term", "lhs", "rhs_upper", "pass"],
        rows=rows,
    ).finish()


def ufnorm_report(chain_data: dict, ns) -> CampaignResult:
    chain = ufchains.chain_from_dict(chain_data)
    rows = []
    for n in ns:
        norm = ufchains.weighted_norm(chain, n)
        seminorm = ufchains.frechet_seminorm(chain, n)
        rows.append({
            "n": n, "norm": norm, "boundary_norm": seminorm - norm,
            "seminorm": seminorm, "pass": True,
        })
    return CampaignResult(
        meta=_base_meta(subcommand="uf-norm", group=chain.group.descriptor,
                        degree=chain.degree, tuples=len(chain.coefficients)),
        columns=["n", "norm", "boundary_norm", "seminorm", "pass"],
        rows=rows,
    ).finish()


def dehn_report(order: int, k_max: int, grid: int | None = 6,
                maximal_simplices=None, coeff_bound: int | None = None) -> CampaignResult:
    if maximal_simplices is not None:
        complex_ = complex_from_maximal(maximal_simplices)
        source = "file"
    else:
        complex_ = triangulated_grid(grid)
        source = f"grid{grid}x{grid}"
    profile = dehn_profile(complex_, order, k_max, coeff_bound)
    rows = [
        {"k": k, "d": v, "exact": profile.exact, "pass": True}
        for k, v in sorted(profile.table.items())
    ]
    return CampaignResult(
        meta=_base_meta(subcommand="dehn", order=order, k_max=k_max,
                        complex=source, exact=profile.exact),
        columns=["k", "d", "exact", "pass"],
        rows=rows,
    ).finish()


def vankampen_report(presentation_text: str, word_text: str,
                     max_area: int) -> CampaignResult:
    pres = parse_presentation(presentation_text)
    word = parse_word(word_text, pres)
    area = vankampen_area(pres, word, max_area)
    rows = [{
        "word": format_word(word, pres).replace(" ", "."),
        "area": area, "found": area is not None, "pass": True,
    }]
    return CampaignResult(
        meta=_base_meta(subcommand="vankampen", presentation=presentation_text,
                        max_area=max_area),
        columns=["word", "area", "found", "pass"],
        rows=rows,
    ).finish()


def block_filling_report(grid: int, block: tuple, coeff_bound: int) -> CampaignResult:
    """Filling of a rectangular block boundary on a triangulated grid
    (library/test helper; not a CLI subcommand)."""
    complex_ = triangulated_grid(grid)
    x0, y0, w, h = block
    b = grid_block_boundary(complex_, grid, grid, x0, y0, w, h)
    result = min_filling(complex_, b, coeff_bound)
    rows = [{
        "boundary_l1": b.l1(),
        "filling_size": result.size,
        "reason": result.reason,
        "lp_lower": result.lp_lower,
        "pass": result.reason == "ok",
    }]
    return CampaignResult(
        meta=_base_meta(subcommand="block-filling", grid=grid,
                        block=" ".join(map(str, block))),
        columns=["boundary_l1", "filling_size", "reason", "lp_lower", "pass"],
        rows=rows,
    ).finish()


def combing_report(group_desc: str, scheme: str, radius: int) -> CampaignResult:
    grp = make_group(group_desc)
    sigma = make_combing(grp, scheme)
    axioms = check_combing_axioms(sigma, radius)
    ft = fellow_traveler_profile(sigma, radius)
    growth = length_growth(sigma, radius)
    constants = smallest_passing_constants(sigma, min(radius, 8))
    rows = []
    for r in range(1, radius + 1):
        rows.append({
            "r": r,
            "max_path_length": growth["max_length"][r],
            "ft_constant_so_far": ft[r],
            "pass": axioms["passes"],
        })
    meta = _base_meta(subcommand="combing", group=group_desc, scheme=scheme,
                      radius=radius, exponent=growth["exponent"],
                      axioms_ok=axioms["passes"])
    if constants is not None:
        meta["qg_lambda"], meta["qg_c"] = constants
    return CampaignResult(
        meta=meta,
        columns=["r", "max_path_length", "ft_constant_so_far", "pass"],
        rows=rows,
    ).finish()
