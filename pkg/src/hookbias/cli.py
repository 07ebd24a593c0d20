"""Command-line entry point: ``hookbias <command> ...``.

Exit status is 0 on success, 1 when a proved statement fails to check out,
and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from hookbias import __version__, analytic, cache, certify, genfun, partitions, scan

COMMANDS = ("series", "count", "scan", "certify", "asym", "identity")
STAT_ALIASES = {
    "hook": "hooks_eq_t",
    "hook_div": "hooks_div_t",
    "gaps1": "gaps_1",
    "gaps2": "gaps_2",
    **{s: s for s in partitions.STATISTICS},
}
PAPER_T3_CLAIM_FROM = 25


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    params: dict = field(default_factory=dict)
    format: str = "table"
    cache_dir: Path | None = None
    threads: int = 1
    long_mode: bool = False
    output: Path | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.threads < 1:
            raise UsageError("--threads must be >= 1")
        if self.format not in ("table", "structured"):
            raise UsageError("--format must be table or structured")


@dataclass
class Outcome:
    """What a command produced: rows for table output, a document for structured output."""

    header: list[str]
    rows: list[list]
    result: dict
    failed: bool = False
    lines: list[str] = field(default_factory=list)


def _real(x: float) -> float | str:
    if isinstance(x, float) and not math.isfinite(x):
        return str(x)
    return float(f"{x:.15g}")


def _fmt(v) -> str:
    if isinstance(v, bool) or v is None:
        return str(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        return f"{v:.15g}"
    if isinstance(v, Fraction):
        return str(v)
    return str(v)


# -- commands -----------------------------------------------------------------------


def _cmd_series(cfg: RunConfig) -> Outcome:
    p = cfg.params
    ns = genfun.build(p["name"], p["order"])
    rows = [[n, c] for n, c in enumerate(ns.series)]
    return Outcome(["n", "coefficient"], rows,
                   {"name": ns.name, "description": ns.description, "order": ns.order,
                    "coefficients": [str(c) for c in ns.series]})


def _cmd_count(cfg: RunConfig) -> Outcome:
    p = cfg.params
    stat = STAT_ALIASES.get(p["stat"])
    if stat is None:
        raise UsageError(f"unknown statistic {p['stat']!r}; expected one of {sorted(STAT_ALIASES)}")
    t = p["t"] if stat in partitions.T_STATISTICS else 0
    if stat in partitions.T_STATISTICS and t < 1:
        raise UsageError("hook statistics need --t >= 1")
    n_from = 0 if p["table"] else p["n"]
    table = partitions.hook_table(p["family"], p["n"], max(t, 10), need_div=stat == "hooks_div_t",
                                  threads=cfg.threads, cache_dir=cfg.cache_dir)
    rows = [[n, table.get(stat, t, n)] for n in range(n_from, p["n"] + 1)]
    return Outcome(["n", "total"], rows,
                   {"family": p["family"], "statistic": stat, "t": t,
                    "values": {str(n): v for n, v in rows}})


def _cmd_scan(cfg: RunConfig) -> Outcome:
    p = cfg.params
    kind = p["kind"]
    if kind == "bias":
        rep = scan.scan_bias(p["pair"], p["t"], p["n_max"], p["source"],
                             threads=cfg.threads, cache_dir=cfg.cache_dir)
        rows = [[n, d] for n, d in sorted(rep.differences.items())]
        last = "none" if rep.last_violation is None else rep.last_violation
        lines = [f"last violation observed for n <= {rep.n_max}: {last}"]
        # only the t = 2, 3 odd/distinct biases are theorems
        proved = rep.pair == "odd_vs_distinct" and rep.t in (2, 3)
        failed = proved and any(n > 7 for n in rep.violation_set)
        return Outcome(["n", "difference"], rows, rep.to_dict(), failed, lines)
    if kind == "congruence":
        rep = scan.scan_congruence(p["m_max"], p["n_max"], cache_dir=cfg.cache_dir)
        rows = [[m, n, r] for m, n, r in rep.nonzero]
        lines = [f"nonzero residues for m <= {rep.m_max}, n <= {rep.n_max}: {len(rows)}"]
        return Outcome(["m", "n", "residue"], rows, rep.to_dict(), False, lines)
    rep = scan.scan_identities(p["n_max"])
    rows = [[c.name, c.kind, "pass" if c.passed else "FAIL",
             ",".join(str(n) for n, _ in c.failures) or "-"] for c in rep.checks]
    return Outcome(["check", "kind", "status", "failing n"], rows, rep.to_dict(), not rep.passed)


def _parse_terms(text: str) -> tuple[tuple[Fraction, int], ...]:
    """'1:29,2:30' -> ((1, 29), (2, 30)); weights may be fractions like 3/2."""
    try:
        out = []
        for item in text.split(","):
            w, s = item.split(":")
            out.append((Fraction(w), int(s)))
        return tuple(out)
    except ValueError as exc:
        raise UsageError(f"bad term list {text!r}; expected weight:shift,...") from exc


def _cmd_certify(cfg: RunConfig) -> Outcome:
    p = cfg.params
    if p["paper_t3"]:
        spec = certify.paper_t3_spec()
        claim_from = PAPER_T3_CLAIM_FROM if p["claim_from"] is None else p["claim_from"]
    else:
        if not (p["lhs"] and p["rhs"]):
            raise UsageError("give --paper-t3 or both --lhs and --rhs")
        spec = certify.InequalitySpec(_parse_terms(p["lhs"]), _parse_terms(p["rhs"]), p["m"])
        claim_from = p["claim_from"]
    if p["cancel"]:
        spec = certify.cancel(spec)
    abc = None
    if p["abc"]:
        try:
            abc = tuple(float(x) for x in p["abc"].split(","))
        except ValueError as exc:
            raise UsageError("--abc expects three comma-separated numbers") from exc
        if len(abc) != 3:
            raise UsageError("--abc expects three comma-separated numbers")
    cert = certify.certify(spec, abc, verified_from=p["from"], long=cfg.long_mode, cap=p["cap"],
                           threads=cfg.threads, budget=p["budget"], cache_dir=cfg.cache_dir)
    th = cert.thresholds
    rows = [
        ["epsilon", cert.epsilon], ["L", cert.L],
        ["A", cert.abc[0]], ["B", cert.abc[1]], ["C", cert.abc[2]],
        ["N_A", th.N_A], ["N_B", th.N_B], ["N_C", th.N_C], ["N_D", th.N_D], ["N", th.N],
        ["verified_from", cert.verified_from], ["verified_to", cert.verified_to],
        ["complete", cert.complete],
        ["violations", ",".join(map(str, cert.violations)) or "-"],
    ]
    doc = cert.to_dict()
    for key in ("epsilon", "N"):
        doc[key] = _real(doc[key])
    doc["thresholds"] = {k: _real(v) for k, v in doc["thresholds"].items()}
    doc["abc"] = [_real(x) for x in doc["abc"]]
    failed = claim_from is not None and any(n >= claim_from for n in cert.violations)
    lines = []
    if not cert.complete:
        lines.append(f"range check capped at n = {cert.verified_to}; rerun with --long to reach floor(N)")
    return Outcome(["field", "value"], rows, doc, failed, lines)


def _cmd_asym(cfg: RunConfig) -> Outcome:
    p = cfg.params
    params = analytic.PRESETS[p["name"]]
    rows = [["prefactor", analytic.wright_prefactor(params)]]
    result = {"name": params.name, "prefactor": _real(analytic.wright_prefactor(params)), "points": []}
    series = None
    if p["name"] in genfun.NAMES or p["name"] in ("diff3", "diff1"):
        series = _exact_statistic(p["name"], max(p["n"]))
    for n in p["n"]:
        log_main, _ = analytic.log_wright_main(params, n)
        entry = {"n": n, "log_main": _real(log_main)}
        rows.append([f"log main term at n={n}", log_main])
        if series is not None and series[n] > 0:
            ratio = math.exp(analytic.log_ratio_to_main(params, n, series[n]))
            entry["exact_over_main"] = _real(ratio)
            rows.append([f"exact/main at n={n}", ratio])
        result["points"].append(entry)
    return Outcome(["quantity", "value"], rows, result)


def _exact_statistic(name: str, order: int):
    if name == "diff3":
        return genfun.build("a3", order).series - genfun.build("b3", order).series
    if name == "diff1":
        return genfun.build("b1", order).series - genfun.build("a1", order).series
    return genfun.build(name, order).series


def _cmd_identity(cfg: RunConfig) -> Outcome:
    p = cfg.params
    params = {k: p[k] for k in ("t", "y", "z") if p[k] is not None}
    rep = genfun.check_identity(p["which"], params, p["order"])
    rows = [[rep.name, rep.order, "pass" if rep.passed else "FAIL"]]
    rows += [[f"  {c}", n, d] for c, n, d in rep.failures]
    return Outcome(["identity", "order", "status"], rows,
                   {"identity": rep.name, "order": rep.order, "passed": rep.passed,
                    "failures": [list(f) for f in rep.failures]}, not rep.passed)


_DISPATCH = {
    "series": _cmd_series,
    "count": _cmd_count,
    "scan": _cmd_scan,
    "certify": _cmd_certify,
    "asym": _cmd_asym,
    "identity": _cmd_identity,
}


# -- rendering ------------------------------------------------------------------------


def render(cfg: RunConfig, out: Outcome) -> str:
    if cfg.format == "structured":
        doc = {
            "tool": "hookbias",
            "version": __version__,
            "command": cfg.command,
            "parameters": {k: (str(v) if isinstance(v, Path) else v) for k, v in sorted(cfg.params.items())},
            "long": cfg.long_mode,
            "failed": out.failed,
            "result": out.result,
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    text = ["\t".join(out.header)]
    text += ["\t".join(_fmt(v) for v in row) for row in out.rows]
    text += [f"# {line}" for line in out.lines]
    return "\n".join(text) + "\n"


def run(cfg: RunConfig) -> int:
    out = _DISPATCH[cfg.command](cfg)
    doc = render(cfg, out)
    if cfg.output is not None:
        cfg.output.parent.mkdir(parents=True, exist_ok=True)
        cfg.output.write_text(doc)
    else:
        sys.stdout.write(doc)
    return 1 if out.failed else 0


# -- argument parsing --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "structured"), default="table")
    common.add_argument("--cache-dir", type=Path, default=None,
                        help=f"directory for cached tables (default: ${cache.ENV_VAR}, else memory only)")
    common.add_argument("--threads", type=int, default=os.cpu_count() or 1)
    common.add_argument("--output", type=Path, default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="hookbias", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hookbias {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("series", parents=[common], help="coefficients of a named generating function")
    sp.add_argument("name", choices=genfun.NAMES)
    sp.add_argument("--order", type=int, default=50)

    sp = sub.add_parser("count", parents=[common], help="exact statistic totals by enumeration")
    sp.add_argument("--family", choices=partitions.FAMILIES, default="odd")
    sp.add_argument("--stat", default="hook", help=f"one of {sorted(STAT_ALIASES)}")
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--table", action="store_true", help="print every n from 0 up to --n")

    sp = sub.add_parser("scan", parents=[common], help="bias, congruence and identity scans")
    sp.add_argument("kind", choices=("bias", "congruence", "identities"))
    sp.add_argument("--pair", choices=tuple(scan.PAIRS), default="odd_vs_distinct")
    sp.add_argument("--t", type=int, default=2)
    sp.add_argument("--n-max", type=int, default=None)
    sp.add_argument("--m-max", type=int, default=5)
    sp.add_argument("--source", choices=scan.SOURCES, default="enumeration")
    sp.add_argument("--allow-large", action="store_true", help="permit enumeration scans past n = 120")

    sp = sub.add_parser("certify", parents=[common], help="threshold and exhaustive check of a linear inequality")
    sp.add_argument("--paper-t3", action="store_true",
                    help="use the built-in rho(n, 9) inequality behind the t = 3 bias")
    sp.add_argument("--lhs", help="weight:shift,... for the smaller side")
    sp.add_argument("--rhs", help="weight:shift,... for the larger side")
    sp.add_argument("--m", type=int, default=1, help="minimum part (1 = plain distinct partitions)")
    sp.add_argument("--abc", help="A,B,C for the threshold; optimised when omitted")
    sp.add_argument("--long", action="store_true", help="check the whole range up to floor(N)")
    sp.add_argument("--cap", type=int, default=certify.DEFAULT_CAP, help="range cap without --long")
    sp.add_argument("--from", dest="from_", type=int, default=0)
    sp.add_argument("--claim-from", type=int, default=None,
                    help="exit 1 if any violation is at or above this n")
    sp.add_argument("--budget", type=int, default=100_000)
    sp.add_argument("--cancel", action="store_true", help="cancel common terms before certifying")

    sp = sub.add_parser("asym", parents=[common], help="circle-method main terms against exact values")
    sp.add_argument("name", choices=tuple(analytic.PRESETS))
    sp.add_argument("--n", type=int, nargs="+", default=[500, 1000, 2000])

    sp = sub.add_parser("identity", parents=[common], help="hook-product identities by enumeration")
    sp.add_argument("which", choices=genfun.IDENTITIES)
    sp.add_argument("--t", type=int, default=None)
    sp.add_argument("--y", type=int, default=None)
    sp.add_argument("--z", type=int, default=None)
    sp.add_argument("--order", type=int, default=15)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    params = {k: v for k, v in vars(ns).items()
              if k not in ("command", "format", "cache_dir", "threads", "output", "long")}
    if "from_" in params:
        params["from"] = params.pop("from_")
    if ns.command == "scan":
        if params["n_max"] is None:
            params["n_max"] = {"bias": 120, "congruence": 70, "identities": 50}[params["kind"]]
        if (params["kind"] == "bias" and params["source"] == "enumeration"
                and params["n_max"] > 120 and not params["allow_large"]):
            raise UsageError("enumeration scans past n = 120 need --allow-large")
    cache_dir = ns.cache_dir if ns.cache_dir is not None else cache.default_cache_dir()
    return RunConfig(ns.command, params, ns.format, cache_dir, ns.threads,
                     bool(getattr(ns, "long", False)), ns.output)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        return run(cfg)
    except (UsageError, ValueError, KeyError) as exc:
        parser.print_usage(sys.stderr)
        print(f"hookbias: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
