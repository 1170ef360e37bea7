"""Batch command line: ``cogmap <command> --input NET [options]``.

Exit codes: 0 success, 1 input error, 2 work budget exhausted, 3 numerical
failure.  Diagnostics go to standard error only.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from .circuit import build_circuit, export_circuit_dot
from .graph import NetworkError, format_number, read_net, render_matrix, to_dense
from .impulse import impulse_closed_form
from .kmethod import default_jobs, k_matrix, k_pair
from .numerics import SingularMatrixError
from .pathfinder import DEFAULT_BUDGET, BudgetExceeded, accumulate_pair, count_paths, enumerate_simple_paths
from .ranking import MEASURE_FUNCS, MEASURES, rank_correlation, rank_nodes

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_NUMERIC = 3


@dataclass(frozen=True)
class RunConfig:
    input: str
    input_format: str | None = None
    max_len: int | None = None
    budget: int = DEFAULT_BUDGET
    jobs: int = 1
    output_format: str = "csv"
    output: str | None = None

    @classmethod
    def from_args(cls, args):
        return cls(
            input=args.input,
            input_format=args.input_format,
            max_len=args.max_len,
            budget=args.budget,
            jobs=args.jobs if args.jobs is not None else default_jobs(),
            output_format=args.format,
            output=args.output,
        )


def _num(x):
    x = float(x)
    if not math.isfinite(x):
        return None
    return float(format_number(x))


def _dumps(doc):
    return json.dumps(doc, indent=2) + "\n"


def _csv(rows, comments=()):
    buf = io.StringIO()
    for c in comments:
        buf.write(f"# {c}\n")
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _flag(b):
    return "true" if b else "false"


def cmd_k_matrix(cfg: RunConfig, net) -> str:
    km = k_matrix(net, cfg.max_len, budget=cfg.budget, jobs=cfg.jobs)
    if cfg.output_format == "json":
        rows = [[_num(x) for x in row] for row in km.values]
        return _dumps({"labels": list(km.labels), "rows": rows, "truncated": km.truncated})
    text = render_matrix(km.labels, km.values, digits=9)
    return ("# truncated=true\n" + text) if km.truncated else text


def cmd_k_pair(cfg: RunConfig, net, source, target, emit_circuit=None) -> str:
    acc = accumulate_pair(net, source, target, cfg.max_len, budget=cfg.budget)
    k = k_pair(acc)
    if emit_circuit:
        circuit = build_circuit(net, source, target, cfg.max_len, budget=cfg.budget)
        with open(emit_circuit, "w", encoding="utf-8") as fh:
            fh.write(export_circuit_dot(circuit, name=f"K_{source}_{target}"))
    if cfg.output_format == "json":
        return _dumps({"from": source, "to": target, "K": _num(k), "M": acc.path_count, "truncated": acc.truncated})
    return _csv([["from", "to", "K", "M", "truncated"], [source, target, format_number(k), acc.path_count, _flag(acc.truncated)]])


def _measure_table(labels, values):
    ranks = rank_nodes(values).ranks
    return [{"node": lab, "value": _num(v), "rank": r} for lab, v, r in zip(labels, values, ranks)]


def cmd_rank(cfg: RunConfig, net, method, measure) -> str:
    func = MEASURE_FUNCS[measure]
    meta = {"method": method, "measure": measure}
    if method == "k":
        km = k_matrix(net, cfg.max_len, budget=cfg.budget, jobs=cfg.jobs)
        values = func(km.values).values
        meta["truncated"] = km.truncated
    else:
        res = impulse_closed_form(to_dense(net))
        values = func(res.omega, source="impulse").values
        meta["converged"] = res.converged
        meta["rho"] = _num(res.rho.rho)
    table = _measure_table(net.labels, values)
    if cfg.output_format == "json":
        return _dumps({**meta, "nodes": table})
    comments = [f"{k}={_flag(v) if isinstance(v, bool) else v}" for k, v in meta.items()]
    rows = [["node", "value", "rank"]] + [[r["node"], format_number(r["value"] or 0.0), r["rank"]] for r in table]
    return _csv(rows, comments)


def cmd_impulse(cfg: RunConfig, net) -> str:
    res = impulse_closed_form(to_dense(net))
    psi_r = rank_nodes(res.psi_imp).ranks
    v_r = rank_nodes(res.v_imp).ranks
    if cfg.output_format == "json":
        return _dumps(
            {
                "labels": list(net.labels),
                "rho": _num(res.rho.rho),
                "rho_converged": res.rho.converged,
                "converged": res.converged,
                "psi_imp": [_num(x) for x in res.psi_imp],
                "psi_imp_rank": list(psi_r),
                "v_imp": [_num(x) for x in res.v_imp],
                "v_imp_rank": list(v_r),
                "omega": [[_num(x) for x in row] for row in res.omega],
            }
        )
    rows = [["node", "psi_imp", "psi_imp_rank", "v_imp", "v_imp_rank"]]
    for lab, p, pr, v, vr in zip(net.labels, res.psi_imp, psi_r, res.v_imp, v_r):
        rows.append([lab, format_number(p), pr, format_number(v), vr])
    return _csv(rows, [f"converged={_flag(res.converged)}", f"rho={format_number(res.rho.rho)}"])


def compare_report(net, cfg: RunConfig) -> dict:
    km = k_matrix(net, cfg.max_len, budget=cfg.budget, jobs=cfg.jobs)
    res = impulse_closed_form(to_dense(net))
    k_psi = MEASURE_FUNCS["pressure"](km.values).values
    k_v = MEASURE_FUNCS["influence"](km.values).values
    rows = {
        "psi": k_psi,
        "psi_imp": res.psi_imp,
        "v": k_v,
        "v_imp": res.v_imp,
    }
    ranks = {name: rank_nodes(vals) for name, vals in rows.items()}
    sp_psi, kt_psi = rank_correlation(ranks["psi"], ranks["psi_imp"])
    sp_v, kt_v = rank_correlation(ranks["v"], ranks["v_imp"])
    return {
        "labels": list(net.labels),
        "k_method": {"truncated": km.truncated},
        "impulse": {"converged": res.converged, "rho": _num(res.rho.rho)},
        "values": {name: [_num(x) for x in vals] for name, vals in rows.items()},
        "ranks": {name: list(r.ranks) for name, r in ranks.items()},
        "correlation": {
            "pressure": {"spearman": _num(sp_psi), "kendall": _num(kt_psi)},
            "influence": {"spearman": _num(sp_v), "kendall": _num(kt_v)},
        },
    }


def _fmt_cell(x):
    if x is None:
        return "nan"
    if isinstance(x, float):
        return format_number(x, 6)
    return str(x)


def cmd_compare(cfg: RunConfig, net) -> str:
    rep = compare_report(net, cfg)
    if cfg.output_format == "json":
        return _dumps(rep)
    labels = rep["labels"]
    cells = [_fmt_cell(x) for sec in ("ranks", "values") for row in rep[sec].values() for x in row]
    width = max([len(c) for c in cells] + [len(lab) for lab in labels]) + 2
    out = io.StringIO()
    out.write(f"impulse: converged={_flag(rep['impulse']['converged'])} rho={_fmt_cell(rep['impulse']['rho'])}\n")
    out.write(f"k-method: truncated={_flag(rep['k_method']['truncated'])}\n\n")
    for section in ("ranks", "values"):
        out.write(f"{section}\n")
        out.write(f"{'':<10}" + "".join(f"{lab:>{width}}" for lab in labels) + "\n")
        for name, row in rep[section].items():
            out.write(f"{name:<10}" + "".join(f"{_fmt_cell(x):>{width}}" for x in row) + "\n")
        out.write("\n")
    for measure, c in rep["correlation"].items():
        out.write(f"{measure}: spearman={_fmt_cell(c['spearman'])} kendall={_fmt_cell(c['kendall'])}\n")
    return out.getvalue()


def cmd_paths(cfg: RunConfig, net, source, target) -> str:
    records = list(enumerate_simple_paths(net, source, target, cfg.max_len, budget=cfg.budget))
    _, truncated = count_paths(net, source, target, cfg.max_len, budget=cfg.budget)
    if cfg.output_format == "json":
        paths = [{"nodes": list(r.nodes), "length": r.length, "emf": _num(r.emf)} for r in records]
        return _dumps({"from": source, "to": target, "paths": paths, "truncated": truncated})
    rows = [["path", "length", "emf"]] + [[">".join(r.nodes), r.length, format_number(r.emf)] for r in records]
    return _csv(rows, ["truncated=true"] if truncated else ())


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="network file (.csv adjacency matrix or .json edge list)")
    common.add_argument("--input-format", choices=("matrix-csv", "edges-json"), default=None)
    common.add_argument("--max-len", type=_positive_int, default=None, help="cap on path length (edges)")
    common.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET, help="max visited DFS states per walk")
    common.add_argument("--jobs", type=_positive_int, default=None, help="worker threads (default: all cores)")
    common.add_argument("--output", default=None, help="write the report here instead of stdout")

    parser = argparse.ArgumentParser(prog="cogmap", description="K-method and impulse analysis of cognitive maps")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("k-matrix", parents=[common], help="full pairwise influence matrix")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("k-pair", parents=[common], help="influence of one node on another")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--emit-circuit", default=None, help="write the pair's circuit as DOT")
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("rank", parents=[common], help="node pressure/influence with ranks")
    p.add_argument("--method", choices=("k", "impulse"), default="k")
    p.add_argument("--measure", choices=MEASURES, default="pressure")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("impulse", parents=[common], help="impulse-method pressure and influence")
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("compare", parents=[common], help="K-method vs impulse rankings")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("paths", parents=[common], help="list simple paths between two nodes")
    p.add_argument("--from", dest="source", required=True)
    p.add_argument("--to", dest="target", required=True)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return parser


def _dispatch(args, cfg, net):
    cmd = args.command
    if cmd == "k-matrix":
        return cmd_k_matrix(cfg, net)
    if cmd == "k-pair":
        return cmd_k_pair(cfg, net, args.source, args.target, args.emit_circuit)
    if cmd == "rank":
        return cmd_rank(cfg, net, args.method, args.measure)
    if cmd == "impulse":
        return cmd_impulse(cfg, net)
    if cmd == "compare":
        return cmd_compare(cfg, net)
    if cmd == "paths":
        return cmd_paths(cfg, net, args.source, args.target)
    raise AssertionError(cmd)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    cfg = RunConfig.from_args(args)
    try:
        net = read_net(cfg.input, cfg.input_format)
        text = _dispatch(args, cfg, net)
    except (OSError, NetworkError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"cogmap: error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"cogmap: budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SingularMatrixError, FloatingPointError) as exc:
        print(f"cogmap: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
