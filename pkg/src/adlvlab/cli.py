"""
Thin command-line client for the workbench service.

Every subcommand builds a request and renders the response; all
computation lives behind the HTTP API.  By default requests go to an
in-process application instance (no network involved); pass --server to
talk to a running `adlv serve` instead.

Exit codes: 0 success, 2 validation errors (bad grammar, invalid Newton
point, bad flags), 3 node-budget exhaustion.
"""

from __future__ import annotations

import asyncio
import json
import sys

import click
import httpx

EXIT_VALIDATION = 2
EXIT_BUDGET = 3


class ServiceClient:
    """POST/GET against a remote server or an in-process ASGI app."""

    def __init__(self, server: str | None):
        self.server = server
        self._app = None
        if server is None:
            from .service.app import create_app

            self._app = create_app()

    def request(self, method: str, path: str, payload: dict | None = None):
        if self.server is not None:
            with httpx.Client(base_url=self.server, timeout=None) as client:
                resp = client.request(method, path, json=payload)
                return resp.status_code, resp.json()

        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(
                transport=transport, base_url="http://adlv.internal", timeout=None
            ) as client:
                resp = await client.request(method, path, json=payload)
                return resp.status_code, resp.json()

        return asyncio.run(go())

    def post(self, path: str, payload: dict):
        status, body = self.request("POST", path, payload)
        if status == 409:
            click.echo(f"budget exhausted: {body.get('detail')}", err=True)
            sys.exit(EXIT_BUDGET)
        if status >= 400:
            detail = body.get("detail", body)
            click.echo(f"error: {detail}", err=True)
            sys.exit(EXIT_VALIDATION)
        return body


def _write_report(report_path: str | None, body: dict) -> None:
    if report_path:
        with open(report_path, "w", encoding="utf-8") as fh:
            json.dump(body, fh, indent=1, sort_keys=True)
            fh.write("\n")


@click.group()
@click.option("--server", default=None, help="Remote service URL; default runs in-process.")
@click.pass_context
def main(ctx, server):
    """Exact ADLV invariants for SL_n and the ML exploration pipeline."""
    ctx.obj = ServiceClient(server)


@main.command("list")
@click.option("--n", type=int, required=True)
@click.option("--w", required=True, help="Element notation.")
@click.option("--budget", type=int, default=None)
@click.option("--report", default=None)
@click.pass_obj
def list_cmd(client, n, w, budget, report):
    """Print 'Newton point = ..., dim = ..., irr = ...' per nonempty class."""
    body = client.post("/adlv/list", {"n": n, "w": w, "budget": budget})
    for line in body["lines"]:
        click.echo(line)
    _write_report(report, body)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--w", required=True)
@click.option("--nu", "nus", multiple=True, required=True, help="Repeatable Newton point.")
@click.option("--print", "prints", default=None, help="Comma list of dim/irr per --nu.")
@click.option("--budget", type=int, default=None)
@click.option("--report", default=None)
@click.pass_obj
def query(client, n, w, nus, prints, budget, report):
    """Query dim/irr at given Newton points; empty classes print 'empty'/0."""
    selectors = prints.split(",") if prints else ["dim"] * len(nus)
    body = client.post(
        "/adlv/query",
        {"n": n, "w": w, "nus": list(nus), "prints": selectors, "budget": budget},
    )
    click.echo(body["line"])
    _write_report(report, body)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--max-len", type=int, required=True)
@click.option("--filter", "pair_filter", default="NONEMPTY",
              type=click.Choice(["MAZUR", "NONEMPTY", "NONEMPTY_EQDIM", "Y_EQ_1"]))
@click.option("--schema", default="SEC5_46")
@click.option("--label", default="DIM")
@click.option("--out", required=True)
@click.option("--workers", type=int, default=1)
@click.option("--budget", type=int, default=None)
@click.option("--seed", type=int, default=0)
@click.option("--report", default=None)
@click.pass_obj
def enumerate(client, n, max_len, pair_filter, schema, label, out, workers, budget, seed, report):
    """Exhaustively enumerate filtered (w, nu) pairs into a dataset file."""
    body = client.post(
        "/dataset/enumerate",
        {
            "n": n, "max_len": max_len, "filter": pair_filter, "schema_name": schema,
            "label": label, "out": out, "workers": workers, "budget": budget, "seed": seed,
        },
    )
    click.echo(f"wrote {body['rows']} rows to {body['path']}")
    _write_report(report, body)


@main.command()
@click.option("--dataset", "dataset_id", type=int, required=True, help="1, 2 or 3.")
@click.option("--count", type=int, required=True)
@click.option("--seed", type=int, default=0)
@click.option("--n", type=int, default=5)
@click.option("--schema", default="EXP1")
@click.option("--label", default="DIM")
@click.option("--out", required=True)
@click.option("--workers", type=int, default=1)
@click.option("--report", default=None)
@click.pass_obj
def sample(client, dataset_id, count, seed, n, schema, label, out, workers, report):
    """Seeded rejection sample of elements into a dataset file."""
    body = client.post(
        "/dataset/sample",
        {
            "dataset_id": dataset_id, "count": count, "seed": seed, "n": n,
            "schema_name": schema, "label": label, "out": out, "workers": workers,
        },
    )
    click.echo(f"wrote {body['rows']} rows to {body['path']}")
    _write_report(report, body)


@main.command()
@click.option("--in", "in_path", required=True)
@click.option("--model", required=True,
              type=click.Choice(["linreg", "lasso", "l1", "svm", "mlp"]))
@click.option("--out", default=None)
@click.option("--layers", type=int, default=1)
@click.option("--width", type=int, default=10)
@click.option("--reg", type=float, default=0.0)
@click.option("--epochs", type=int, default=None)
@click.option("--seed", type=int, default=0)
@click.option("--split-seed", type=int, default=0)
@click.option("--head", default="auto", type=click.Choice(["auto", "regression", "classification"]))
@click.option("--intercept/--no-intercept", default=False)
@click.option("--oversample", is_flag=True, default=False)
@click.option("--report", default=None)
@click.pass_obj
def train(client, in_path, model, out, layers, width, reg, epochs, seed, split_seed,
          head, intercept, oversample, report):
    """Train a model on a dataset file (80/20 split) and report metrics."""
    body = client.post(
        "/ml/train",
        {
            "in_path": in_path, "model": model, "out": out, "layers": layers,
            "width": width, "reg": reg, "epochs": epochs, "seed": seed,
            "split_seed": split_seed, "head": head, "intercept": intercept,
            "oversample": oversample,
        },
    )
    click.echo(
        "train: accuracy={:.4f} mean_error={:.4f}".format(
            body["train"]["accuracy"], body["train"]["mean_error"]
        )
    )
    click.echo(
        "test:  accuracy={:.4f} mean_error={:.4f}".format(
            body["test"]["accuracy"], body["test"]["mean_error"]
        )
    )
    if out:
        click.echo(f"model saved to {out}")
    _write_report(report, body)


@main.command()
@click.option("--in", "model_path", required=True, help="Model JSON path.")
@click.option("--data", "data_path", required=True, help="Dataset file path.")
@click.option("--seed", "seeds", type=int, multiple=True,
              help="Repeatable; average saliency over retrained seeds.")
@click.option("--report", default=None)
@click.pass_obj
def analyze(client, model_path, data_path, seeds, report):
    """Feature-importance report (gradient saliency / |coefficients|)."""
    body = client.post(
        "/ml/analyze",
        {"model_path": model_path, "data_path": data_path, "seeds": list(seeds) or None},
    )
    click.echo(body["table"])
    _write_report(report, body)


@main.command()
@click.option("--n", type=int, required=True)
@click.option("--max-len", type=int, required=True)
@click.option("--budget", type=int, default=None)
@click.option("--report", default=None)
@click.pass_obj
def stats(client, n, max_len, budget, report):
    """Delta histogram and cordiality-by-eta-length tables."""
    body = client.post("/dataset/stats", {"n": n, "max_len": max_len, "budget": budget})
    click.echo("delta   count")
    for delta in sorted(body["delta_histogram"], key=int):
        click.echo(f"{delta:>5}   {body['delta_histogram'][delta]}")
    click.echo("l(eta)  cordial  non-cordial")
    for leta in sorted(body["cordiality"], key=int):
        good, bad = body["cordiality"][leta]
        click.echo(f"{leta:>6}  {good:>7}  {bad:>11}")
    _write_report(report, body)


@main.command("verify-bound")
@click.option("--n", type=int, required=True)
@click.option("--max-len", type=int, default=0)
@click.option("--budget", type=int, default=None)
@click.option("--skip-witness", is_flag=True, default=False)
@click.option("--report", default=None)
@click.pass_obj
def verify_bound(client, n, max_len, budget, skip_witness, report):
    """Scan the dimension lower bound and check the explicit witness."""
    body = client.post(
        "/qbg/verify-bound",
        {"n": n, "max_len": max_len, "budget": budget, "check_witness": not skip_witness},
    )
    keys = ["n", "max_len", "bound", "observed_max", "witness_length", "witness_delta", "elapsed"]
    click.echo(json.dumps({k: body[k] for k in keys}, indent=1, sort_keys=True))
    _write_report(report, body)


@main.command()
@click.pass_obj
def selftest(client):
    """Run the notation pin and the published-session checks."""
    body = client.post("/selftest", {})
    for check in body["checks"]:
        click.echo(f"ok: {check}")


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the workbench as a long-lived HTTP service."""
    import uvicorn

    from .service.app import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
