"""Command-line entry point: verify identities, print constants, run Monte Carlo kernels.

Exit codes: 0 when everything selected passes, 1 when any identity fails,
2 on a usage error (message on standard error).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass

from . import catalog, constants, sphere_mc
from .errors import DomainError

__all__ = ["CliConfig", "UsageError", "build_parser", "run", "main"]

THREADS_ENV = "ELLIPTIC_VERIFY_THREADS"
MIN_MC_SAMPLES = 10_000


class UsageError(Exception):
    """Bad flags or arguments; reported with exit code 2."""


@dataclass(frozen=True)
class CliConfig:
    subcommand: str
    ids: tuple = ()
    all: bool = False
    filter: str | None = None
    tol: float | None = None
    samples: int | None = None
    seed: int | None = None
    parallelism: int = 1
    out: str | None = None
    format: str = "json"
    timings: bool = False
    kernel: str | None = None
    kernel_params: tuple = ()

    def __post_init__(self):
        if self.parallelism < 1:
            raise UsageError("parallelism must be at least 1")
        if self.subcommand == "mc" and (self.samples is None or self.samples < MIN_MC_SAMPLES):
            raise UsageError(f"mc needs --samples of at least {MIN_MC_SAMPLES}")
        if self.samples is not None and self.samples < 1:
            raise UsageError("--samples must be positive")
        if self.seed is not None and not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be an unsigned 64-bit integer")
        if self.tol is not None and not self.tol > 0:
            raise UsageError("--tol must be positive")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser():
    parser = _Parser(prog="elliptic-verify", description="Numerical checks of multiple elliptic integral identities.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def output_flags(p):
        p.add_argument("--format", choices=("json", "table"), default="json")
        p.add_argument("--out", metavar="PATH", help="write to PATH instead of standard output")

    v = sub.add_parser("verify", help="evaluate identities and compare both sides")
    v.add_argument("--id", action="append", default=[], metavar="ID", help="identity id (repeatable)")
    v.add_argument("--all", action="store_true", help="every identity matching --filter")
    v.add_argument("--filter", metavar="EXPR", help="tag:X, section:X, cost:X or id:X, comma-separated")
    v.add_argument("--tol", type=float, help="override each record's tolerance")
    v.add_argument("--samples", type=int, help="Monte Carlo sample count for mc records")
    v.add_argument("--seed", type=int, help="Monte Carlo seed for mc records")
    v.add_argument("--parallelism", type=int, help=f"worker threads (default ${THREADS_ENV} or 1)")
    v.add_argument("--timings", action="store_true", help="include runtime_ms (output is then not reproducible)")
    output_flags(v)

    ls = sub.add_parser("list", help="list registered identities")
    ls.add_argument("--filter", metavar="EXPR")
    output_flags(ls)

    c = sub.add_parser("constants", help="print reference constants by every method")
    output_flags(c)

    m = sub.add_parser("mc", help="Monte Carlo estimate of one coupling kernel")
    m.add_argument("--kernel", required=True, choices=sphere_mc.KERNELS)
    m.add_argument("--samples", type=int, required=True)
    m.add_argument("--seed", type=int, default=0)
    m.add_argument("--beta", type=float, help="cut angle for eq_beta and eq_beta_prime")
    m.add_argument("--k", type=float, help="modulus for eq_ImLi2")
    m.add_argument("--theta", type=float, help="angle for eq_ImLi2")
    m.add_argument("--format", choices=("json",), default="json")
    m.add_argument("--out", metavar="PATH")
    return parser


def _parallelism(flag, env):
    if flag is not None:
        return flag
    raw = env.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def parse_config(argv, env=None):
    env = os.environ if env is None else env
    ns = build_parser().parse_args(argv)
    cmd = ns.subcommand
    kw = {"subcommand": cmd, "out": ns.out, "format": ns.format}
    if cmd == "verify":
        if bool(ns.id) == bool(ns.all):
            raise UsageError("verify needs either --id or --all")
        if ns.id and ns.filter:
            raise UsageError("--filter applies to --all, not --id")
        kw.update(
            ids=tuple(ns.id),
            all=ns.all,
            filter=ns.filter,
            tol=ns.tol,
            samples=ns.samples,
            seed=ns.seed,
            parallelism=_parallelism(ns.parallelism, env),
            timings=ns.timings,
        )
    elif cmd == "list":
        kw["filter"] = ns.filter
    elif cmd == "mc":
        params = tuple((k, getattr(ns, k)) for k in ("beta", "k", "theta") if getattr(ns, k) is not None)
        kw.update(kernel=ns.kernel, samples=ns.samples, seed=ns.seed, kernel_params=params)
    return CliConfig(**kw)


@contextmanager
def _sink(path):
    if path is None:
        yield sys.stdout
    else:
        try:
            fh = open(path, "w", encoding="utf-8", newline="\n")
        except OSError as exc:
            raise UsageError(f"cannot write {path}: {exc}") from None
        with fh:
            yield fh


def _fmt(x):
    if x is None:
        return "-"
    if isinstance(x, list):
        return f"{x[0]:.12g}{x[1]:+.12g}i"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def _table(rows, header):
    cells = [header] + [[_fmt(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]


def _verify(cfg, out):
    if cfg.all:
        result = catalog.run_suite(cfg.filter, cfg.parallelism, tol_override=cfg.tol, samples=cfg.samples, seed=cfg.seed)
        reports, summary = result.reports, result.summary
    else:
        for i in cfg.ids:
            catalog.get_record(i)
        reports = [catalog.evaluate(i, cfg.tol, samples=cfg.samples, seed=cfg.seed) for i in cfg.ids]
        summary = None
    if cfg.format == "json":
        for rep in reports:
            out.write(catalog.report_line(rep, cfg.timings) + "\n")
        if summary is not None:
            out.write(catalog.summary_line(summary, cfg.timings) + "\n")
    else:
        rows = []
        for rep in reports:
            d = rep.to_dict(cfg.timings)
            rows.append([d["id"], "PASS" if d["pass"] else "FAIL", d["lhs_value"], d["rhs_value"], d["abs_diff"], d["tol"]]
                        + ([d["runtime_ms"]] if cfg.timings else []))
        header = ["id", "result", "lhs", "rhs", "abs_diff", "tol"] + (["ms"] if cfg.timings else [])
        for line in _table(rows, header):
            out.write(line + "\n")
        if summary is not None:
            out.write(f"total {summary.total}  passed {summary.passed}  failed {summary.failed}\n")
    return 0 if all(rep.passed for rep in reports) else 1


def _list(cfg, out):
    records = catalog.list_records(cfg.filter)
    if cfg.format == "json":
        for r in records:
            out.write(json.dumps(r.to_dict(), ensure_ascii=False) + "\n")
    else:
        rows = [[r.id, r.section, r.cost_class, r.tol, ",".join(r.tags)] for r in records]
        for line in _table(rows, ["id", "section", "cost", "tol", "tags"]):
            out.write(line + "\n")
    return 0


def _constants(cfg, out):
    consts = constants.all_constants()
    if cfg.format == "json":
        for c in consts:
            out.write(json.dumps({"name": c.name, "value": c.value, "method": c.method, "est_error": c.est_error}) + "\n")
    else:
        rows = [[c.name, repr(c.value), c.method, c.est_error] for c in consts]
        for line in _table(rows, ["name", "value", "method", "est_error"]):
            out.write(line + "\n")
    return 0


def _mc(cfg, out):
    try:
        spec = sphere_mc.kernel(cfg.kernel, **dict(cfg.kernel_params))
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    est = sphere_mc.mc_coupling(spec, cfg.samples, cfg.seed)
    out.write(json.dumps({"kernel": cfg.kernel, **est.to_dict(), "target": spec.target}) + "\n")
    return 0


_DISPATCH = {"verify": _verify, "list": _list, "constants": _constants, "mc": _mc}


def run(argv=None, env=None):
    """Parse ``argv`` and run the subcommand; returns the exit code."""
    argv = sys.argv[1:] if argv is None else argv
    try:
        cfg = parse_config(argv, env)
        with _sink(cfg.out) as out:
            return _DISPATCH[cfg.subcommand](cfg, out)
    except UsageError as exc:
        print(f"elliptic-verify: error: {exc}", file=sys.stderr)
        return 2
    except catalog.UnknownIdentityError as exc:
        print(f"elliptic-verify: error: unknown identity {exc.args[0]!r}", file=sys.stderr)
        return 2
    except catalog.FilterError as exc:
        print(f"elliptic-verify: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
