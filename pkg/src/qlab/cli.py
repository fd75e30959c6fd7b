"""qlab: thin CLI client for the verification service.

By default every subcommand runs against an in-process instance of the
FastAPI app (no server needed); ``--server URL`` points it at a remote
deployment instead.  The CLI only builds requests, writes report files and
maps outcomes to exit codes:

    0  all checks passed
    1  at least one inequality violation
    2  malformed input / config (HTTP 4xx or local parse failure)
    3  an enumeration cap was exceeded
"""

from __future__ import annotations

import json
import sys

import click
import httpx

from .reports import emit_report, render_csv, render_json

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_CAP = 3


def _post_in_process(endpoint: str, payload: dict) -> httpx.Response:
    import asyncio

    from .service.app import app

    async def go():
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(
            transport=transport, base_url="http://qlab.local", timeout=None
        ) as client:
            return await client.post(endpoint, json=payload)

    return asyncio.run(go())


def _post(ctx, endpoint: str, payload: dict):
    server = ctx.obj.get("server")
    try:
        if server:
            with httpx.Client(base_url=server, timeout=None) as client:
                response = client.post(endpoint, json=payload)
        else:
            response = _post_in_process(endpoint, payload)
    except httpx.HTTPError as exc:
        click.echo(f"error: cannot reach service: {exc}", err=True)
        sys.exit(EXIT_PARSE)
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        click.echo(f"error: {detail}", err=True)
        sys.exit(EXIT_PARSE)
    return response.json()


def _finish(ctx, report: dict):
    fmt = ctx.obj.get("format", "csv")
    out = ctx.obj.get("out")
    meta = dict(report["meta"])
    meta.setdefault("outcome", report["outcome"])
    meta.setdefault("violations", report["violations"])
    args = (meta, report["columns"], report["rows"], fmt)
    if out:
        emit_report(*args[:3], fmt=fmt, path=out,
                    key_columns=report["key_columns"])
    else:
        render = render_csv if fmt == "csv" else render_json
        click.echo(render(meta, report["columns"], report["rows"],
                          report["key_columns"]), nl=False)
    outcome = report["outcome"]
    if outcome == "violation":
        sys.exit(EXIT_VIOLATION)
    if outcome == "cap":
        click.echo(f"error: {report['meta'].get('error', 'cap exceeded')}", err=True)
        sys.exit(EXIT_CAP)
    sys.exit(EXIT_OK)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, ValueError) as exc:
        click.echo(f"error: cannot read {path}: {exc}", err=True)
        sys.exit(EXIT_PARSE)


def _ints(text: str) -> list:
    try:
        return [int(x) for x in text.replace(",", " ").split()]
    except ValueError:
        click.echo(f"error: expected integer list, got {text!r}", err=True)
        sys.exit(EXIT_PARSE)


common_options = [
    click.option("--out", default=None, type=click.Path(), help="report file path"),
    click.option("--format", "fmt", default="csv",
                 type=click.Choice(["csv", "json"]), help="report format"),
]


def with_common(f):
    for opt in reversed(common_options):
        f = opt(f)
    return f


@click.group()
@click.option("--server", default=None, help="remote service URL (default: in-process)")
@click.pass_context
def main(ctx, server):
    """Desk-scale verification lab for quasi-local group-ring estimates."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


def _store_common(ctx, out, fmt):
    ctx.obj["out"] = out
    ctx.obj["format"] = fmt


@main.command()
@click.option("--group", required=True)
@click.option("--radius", type=int, required=True)
@with_common
@click.pass_context
def ball(ctx, group, radius, out, fmt):
    """Enumerate the ball of a given radius with exact distances."""
    _store_common(ctx, out, fmt)
    _finish(ctx, _post(ctx, "/v1/ball", {"group": group, "radius": radius}))


@main.command()
@click.option("--kernel", "kernel_path", required=True, type=click.Path(exists=True))
@click.option("--p", type=float, default=2.0)
@click.option("--window-radius", type=int, default=20)
@with_common
@click.pass_context
def opnorm(ctx, kernel_path, p, window_radius, out, fmt):
    """Certified lp operator norm enclosure of a kernel file."""
    _store_common(ctx, out, fmt)
    payload = {"kernel": _load_json(kernel_path), "p": p,
               "window_radius": window_radius}
    _finish(ctx, _post(ctx, "/v1/opnorm", payload))


@main.command()
@click.option("--kernel", "kernel_path", required=True, type=click.Path(exists=True))
@click.option("--p", type=float, default=2.0)
@click.option("--radii", default="2,4,8")
@click.option("--window-radius", type=int, default=None)
@click.option("--seed", type=int, default=0)
@with_common
@click.pass_context
def domfun(ctx, kernel_path, p, radii, window_radius, seed, out, fmt):
    """Dominating-function profile mu_A(R) enclosures."""
    _store_common(ctx, out, fmt)
    payload = {"kernel": _load_json(kernel_path), "p": p, "radii": _ints(radii),
               "window_radius": window_radius, "seed": seed}
    _finish(ctx, _post(ctx, "/v1/domfun", payload))


@main.command(name="verify-roe")
@click.option("--group", required=True)
@click.option("--trials", type=int, default=1000)
@click.option("--prop-max", type=int, default=4)
@click.option("--p", "ps", type=float, multiple=True, default=(1.0, 1.5, 2.0))
@click.option("--r-min", type=int, default=2)
@click.option("--r-max", type=int, default=16)
@click.option("--seed", type=int, default=0)
@with_common
@click.pass_context
def verify_roe(ctx, group, trials, prop_max, ps, r_min, r_max, seed, out, fmt):
    """Composition-estimate campaign over seeded random kernel pairs."""
    _store_common(ctx, out, fmt)
    payload = {"group": group, "trials": trials, "prop_max": prop_max,
               "p_list": list(ps), "radii": list(range(r_min, r_max + 1)),
               "seed": seed}
    _finish(ctx, _post(ctx, "/v1/verify-roe", payload))


@main.command(name="verify-power")
@click.option("--group", required=True)
@click.option("--trials", type=int, default=200)
@click.option("--prop-max", type=int, default=3)
@click.option("--n", "ns", type=int, multiple=True, default=(1, 2, 3, 4))
@click.option("--radii", default="4,8,16")
@click.option("--p", type=float, default=2.0)
@click.option("--seed", type=int, default=0)
@with_common
@click.pass_context
def verify_power(ctx, group, trials, prop_max, ns, radii, p, seed, out, fmt):
    """Power-estimate campaign for A^(n+1)."""
    _store_common(ctx, out, fmt)
    payload = {"group": group, "trials": trials, "prop_max": prop_max,
               "n_list": list(ns), "radii": _ints(radii), "p": p, "seed": seed}
    _finish(ctx, _post(ctx, "/v1/verify-power", payload))


@main.command()
@click.option("--group", default="Z^1")
@click.option("--t", type=float, default=0.04, help="contraction size eps")
@click.option("--terms", type=int, default=40)
@click.option("--l", type=int, default=1, help="polynomial weight exponent")
@click.option("--radii", default=",".join(map(str, range(2, 21))))
@click.option("--kernel", "kernel_path", default=None, type=click.Path(exists=True))
@with_common
@click.pass_context
def neumann(ctx, group, t, terms, l, radii, kernel_path, out, fmt):
    """Neumann-series inversion with smoothness and decay checks."""
    _store_common(ctx, out, fmt)
    payload = {"group": group, "t": t, "terms": terms, "l": l,
               "radii": _ints(radii)}
    if kernel_path:
        payload["kernel"] = _load_json(kernel_path)
    _finish(ctx, _post(ctx, "/v1/neumann", payload))


@main.command(name="kernel-est")
@click.option("--group", required=True)
@click.option("--trials", type=int, default=500)
@click.option("--prop-max", type=int, default=4)
@click.option("--p", "ps", type=float, multiple=True, default=(1.0, 1.5, 2.0))
@click.option("--n", "ns", type=int, multiple=True, default=(1, 2, 3))
@click.option("--seed", type=int, default=0)
@with_common
@click.pass_context
def kernel_est(ctx, group, trials, prop_max, ps, ns, seed, out, fmt):
    """Tail-sum lemma and weighted pi^2/6 corollary campaign."""
    _store_common(ctx, out, fmt)
    payload = {"group": group, "trials": trials, "prop_max": prop_max,
               "p_list": list(ps), "n_list": list(ns), "seed": seed}
    _finish(ctx, _post(ctx, "/v1/kernel-est", payload))


@main.command()
@click.option("--group", required=True)
@click.option("--trials", type=int, default=200)
@click.option("--degree", "degrees", type=int, multiple=True, default=(1, 2, 3))
@click.option("--prop-max", type=int, default=1)
@click.option("--seed", type=int, default=0)
@with_common
@click.pass_context
def chi(ctx, group, trials, degrees, prop_max, seed, out, fmt):
    """Exact chain-map and cyclic-descent identities for the character."""
    _store_common(ctx, out, fmt)
    payload = {"group": group, "trials": trials, "degrees": list(degrees),
               "prop_max": prop_max, "seed": seed}
    _finish(ctx, _post(ctx, "/v1/chi", payload))


@main.command()
@click.option("--group", required=True)
@click.option("--trials", type=int, default=300)
@click.option("--n", "ns", type=int, multiple=True, default=(1, 2))
@click.option("--k", "ks", type=int, multiple=True, default=(1, 2, 3))
@click.option("--prop-max", type=int, default=2)
@click.option("--seed", type=int, default=0)
@with_common
@click.pass_context
def young(ctx, group, trials, ns, ks, prop_max, seed, out, fmt):
    """Young-inequality continuity bound for the character."""
    _store_common(ctx, out, fmt)
    payload = {"group": group, "trials": trials, "n_list": list(ns),
               "k_list": list(ks), "prop_max": prop_max, "seed": seed}
    _finish(ctx, _post(ctx, "/v1/young", payload))


@main.command(name="uf-norm")
@click.option("--chain", "chain_path", required=True, type=click.Path(exists=True))
@click.option("--n", "ns", type=int, multiple=True, default=(0, 1, 2))
@with_common
@click.pass_context
def uf_norm(ctx, chain_path, ns, out, fmt):
    """Weighted norms and completion seminorms of a chain file."""
    _store_common(ctx, out, fmt)
    payload = {"chain": _load_json(chain_path), "n_list": list(ns)}
    _finish(ctx, _post(ctx, "/v1/uf-norm", payload))


@main.command()
@click.option("--order", type=int, default=1)
@click.option("--kmax", type=int, default=8)
@click.option("--grid", type=int, default=6)
@click.option("--complex", "complex_path", default=None, type=click.Path(exists=True))
@click.option("--coeff-bound", type=int, default=None)
@with_common
@click.pass_context
def dehn(ctx, order, kmax, grid, complex_path, coeff_bound, out, fmt):
    """Higher-order Dehn function table d^N(k)."""
    _store_common(ctx, out, fmt)
    payload = {"order": order, "k_max": kmax, "grid": grid,
               "coeff_bound": coeff_bound}
    if complex_path:
        payload["maximal_simplices"] = _load_json(complex_path)
    _finish(ctx, _post(ctx, "/v1/dehn", payload))


@main.command()
@click.option("--presentation", required=True)
@click.option("--word", required=True)
@click.option("--max-area", type=int, default=25)
@with_common
@click.pass_context
def vankampen(ctx, presentation, word, max_area, out, fmt):
    """Minimal van Kampen area of a word."""
    _store_common(ctx, out, fmt)
    payload = {"presentation": presentation, "word": word, "max_area": max_area}
    _finish(ctx, _post(ctx, "/v1/vankampen", payload))


@main.command()
@click.option("--group", required=True)
@click.option("--scheme", required=True)
@click.option("--radius", type=int, default=8)
@with_common
@click.pass_context
def combing(ctx, group, scheme, radius, out, fmt):
    """Fellow-traveler constants, quasi-geodesity and length growth."""
    _store_common(ctx, out, fmt)
    payload = {"group": group, "scheme": scheme, "radius": radius}
    _finish(ctx, _post(ctx, "/v1/combing", payload))


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8321)
def serve(host, port):
    """Run the qlab service with uvicorn."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
