"""Command-line front end.

Exit codes: 0 success, 1 certificate verification failure, 2 precondition or
parse error (including inputs shown not to be {P6, K2,t}-free), 3 search
budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Callable, Sequence

from tinsep import __version__
from tinsep.canonical import enumerate_by_size
from tinsep.decomposition import (
    alpha_width,
    build_from_balanced_separators,
    exact_tree_independence,
    exact_treewidth,
    optimal_decomposition,
    validate,
)
from tinsep.engine import (
    BoundConfig,
    combined_balanced_separator,
    combined_oracle,
    neighborhood_balanced_separator,
    neighborhood_oracle,
    small_alpha_ab_separator,
)
from tinsep.errors import BudgetExhausted, Counterexample, PreconditionError
from tinsep.formats import FormatError, from_edgelist, read_graph6_lines, to_graph6
from tinsep.generators import GeneratorSpec, free_predicate
from tinsep.graph import Graph, Weighting, verify_certificate
from tinsep.patterns import find_induced_path, find_k2t

EXIT_OK, EXIT_VERIFY, EXIT_PRECONDITION, EXIT_BUDGET = 0, 1, 2, 3


class VerificationFailed(Exception):
    pass


# --- input --------------------------------------------------------------------


def _read_sources(paths: Sequence[str]) -> list[tuple[str, str]]:
    if not paths:
        return [("<stdin>", sys.stdin.read())]
    out = []
    for p in paths:
        if p == "-":
            out.append(("<stdin>", sys.stdin.read()))
        else:
            with open(p, encoding="utf-8") as fh:
                out.append((p, fh.read()))
    return out


def _parse(sources: list[tuple[str, str]], fmt: str) -> list[tuple[str, Graph]]:
    graphs = []
    for name, text in sources:
        try:
            if fmt == "graph6":
                for i, G in enumerate(read_graph6_lines(text.splitlines())):
                    graphs.append((f"{name}#{i}", G))
            else:
                graphs.append((name, from_edgelist(text)))
        except FormatError as e:
            raise FormatError(f"{name}: {e}") from None
    return graphs


def _digest(sources: list[tuple[str, str]]) -> str:
    h = hashlib.sha256()
    for _, text in sources:
        h.update(text.encode())
    return h.hexdigest()


def _one_graph(graphs: list[tuple[str, Graph]]) -> Graph:
    if len(graphs) != 1:
        raise PreconditionError(f"expected exactly one input graph, got {len(graphs)}")
    return graphs[0][1]


def _pmap(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


def _config(args) -> BoundConfig:
    return BoundConfig(
        t=args.t,
        c=Fraction(args.c),
        budget=args.budget,
        assert_mode=args.assert_mode == "on",
        g_impl=getattr(args, "g_impl", None),
        q=getattr(args, "q", None),
    )


# --- commands -----------------------------------------------------------------


def _check_one(item: tuple[str, Graph, int]) -> dict:
    name, G, t = item
    path = find_induced_path(G, 6)
    k2t = find_k2t(G, t)
    return {
        "input": name,
        "n": G.n,
        "m": G.num_edges(),
        "p6_free": path is None,
        "p6_witness": path,
        "k2t_free": k2t is None,
        "k2t_witness": None if k2t is None else [*k2t[0], *sorted(k2t[1])],
    }


def cmd_check(args, graphs) -> tuple[list[dict], dict]:
    rows = _pmap(_check_one, [(n, G, args.t) for n, G in graphs], args.jobs)
    stats = {"graphs": len(rows), "free": sum(r["p6_free"] and r["k2t_free"] for r in rows)}
    return rows, stats


def cmd_separate(args, graphs) -> tuple[list[dict], dict]:
    G = _one_graph(graphs)
    cert = small_alpha_ab_separator(G, args.a, args.b, _config(args))
    ok = verify_certificate(G, cert)
    row = cert.to_dict() | {"reverified": ok}
    if not ok:
        raise VerificationFailed(json.dumps(row))
    return [row], {"max_alpha": cert.alpha}


def _weights(args, G: Graph) -> Weighting:
    if not args.weights:
        return Weighting.uniform(G.n)
    text = args.weights
    if not text.lstrip().startswith("["):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    w = Weighting.from_json(text)
    if len(w) != G.n:
        raise PreconditionError(f"expected {G.n} weights, got {len(w)}")
    # any non-negative weights with a positive total are rescaled to sum to 1
    return w if w.is_normal() or w.is_trivial() else w.normalized()


def cmd_balance(args, graphs) -> tuple[list[dict], dict]:
    G = _one_graph(graphs)
    w = _weights(args, G)
    cfg = _config(args)
    if args.method == "combined":
        cert = combined_balanced_separator(G, w, cfg)
    else:
        cert = neighborhood_balanced_separator(G, w, cfg)
    ok = verify_certificate(G, cert, w)
    row = cert.to_dict() | {"reverified": ok}
    if not ok:
        raise VerificationFailed(json.dumps(row))
    return [row], {"max_alpha": cert.alpha}


def cmd_decompose(args, graphs) -> tuple[list[dict], dict]:
    G = _one_graph(graphs)
    cfg = _config(args)
    if args.oracle == "exact":
        D = optimal_decomposition(G)
    else:
        oracle = combined_oracle(cfg) if args.oracle == "combined" else neighborhood_oracle(cfg)
        D = build_from_balanced_separators(G, oracle, cfg.c)
    ok, why = validate(D)
    if not ok:
        raise VerificationFailed(why)
    row = {"valid": ok, "alpha_width": alpha_width(D), "bags": len(D.nodes), "decomposition": D.to_dict()}
    return [row], {"max_alpha": row["alpha_width"]}


def _exact_one(item: tuple[str, Graph]) -> dict:
    name, G = item
    return {"input": name, "n": G.n, "tin": exact_tree_independence(G), "tw": exact_treewidth(G)}


def cmd_exact(args, graphs) -> tuple[list[dict], dict]:
    rows = _pmap(_exact_one, graphs, args.jobs)
    return rows, {"max_tin": max((r["tin"] for r in rows), default=0)}


def survey(n_max: int, t: int) -> list[dict]:
    """Per n <= n_max: class size, largest exact tin and a graph attaining it."""
    rows = []
    for n, graphs in enumerate_by_size(n_max, free_predicate(t)):
        best, arg = 0, None
        for G in graphs:
            v = exact_tree_independence(G)
            if v > best:
                best, arg = v, G
        rows.append({"n": n, "count": len(graphs), "max_tin": best, "extremal_graph6": to_graph6(arg)})
    return rows


def cmd_survey(args, graphs) -> tuple[list[dict], dict]:
    rows = survey(args.n_max, args.t)
    return rows, {"max_tin": max((r["max_tin"] for r in rows), default=0)}


def cmd_generate(args, graphs) -> tuple[list[dict], dict]:
    if args.spec:
        spec = GeneratorSpec.from_json(args.spec)
    else:
        params = {}
        for item in args.param:
            key, _, val = item.partition("=")
            try:
                params[key] = json.loads(val)
            except json.JSONDecodeError:
                params[key] = val
        params.setdefault("seed", args.seed)
        if args.kind in ("free", "planted", "enumerate"):
            params.setdefault("t", args.t)
        if args.kind == "enumerate":
            params.pop("seed")
        spec = GeneratorSpec(args.kind, params)
    rows = [{"graph6": to_graph6(G), "n": G.n, "m": G.num_edges()} for G in spec.graphs()]
    return rows, {"graphs": len(rows), "spec": json.loads(spec.to_json())}


COMMANDS = {
    "check": cmd_check,
    "separate": cmd_separate,
    "balance": cmd_balance,
    "decompose": cmd_decompose,
    "exact": cmd_exact,
    "survey": cmd_survey,
    "generate": cmd_generate,
}


# --- output -------------------------------------------------------------------


def _csv_value(v):
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return ""
    return v


def render(report: dict, out: str) -> str:
    if out == "json":
        return json.dumps(report, sort_keys=True, indent=2) + "\n"
    rows = report["results"]
    buf = io.StringIO()
    if rows:
        fields = list(rows[0])
        for r in rows[1:]:
            fields += [k for k in r if k not in fields]
        writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: _csv_value(r.get(k)) for k in fields})
    return buf.getvalue()


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t", type=int, default=2, help="K2,t parameter (default 2)")
    common.add_argument("--c", default="7/8", help="balance constant as a rational, e.g. 7/8")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=10**7, help="node cap for bounded searches")
    common.add_argument("--assert-mode", choices=("on", "off"), default="on")
    common.add_argument("--format", choices=("graph6", "edgelist"), default="graph6")
    common.add_argument("--out", choices=("csv", "json"), default="json")
    common.add_argument("--out-file")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="include wall time in the report")

    p = argparse.ArgumentParser(prog="tinsep", description="Separators and tree-independence tools")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="test for induced P6 and K2,t")
    s.add_argument("inputs", nargs="*")

    s = sub.add_parser("separate", parents=[common], help="small-alpha separator between two vertices")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--b", type=int, required=True)

    s = sub.add_parser("balance", parents=[common], help="balanced separator for a weighting")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--weights", help="JSON array of weights, or a file containing one")
    s.add_argument("--method", choices=("neighbourhood", "combined"), default="neighbourhood")
    s.add_argument("--q", type=int)
    s.add_argument("--g-impl", type=int)

    s = sub.add_parser("decompose", parents=[common], help="tree decomposition from balanced separators")
    s.add_argument("inputs", nargs="*")
    s.add_argument("--oracle", choices=("neighbourhood", "combined", "exact"), default="neighbourhood")

    s = sub.add_parser("exact", parents=[common], help="exact tree-independence number and treewidth")
    s.add_argument("inputs", nargs="*")

    s = sub.add_parser("survey", parents=[common], help="max tin over all small free graphs")
    s.add_argument("--n-max", type=int, required=True)

    s = sub.add_parser("generate", parents=[common], help="emit graphs from a generator spec")
    s.add_argument("--kind", choices=("named", "gnp", "free", "planted", "enumerate"), default="free")
    s.add_argument("--param", action="append", default=[], help="key=value (value parsed as JSON)")
    s.add_argument("--spec", help="GeneratorSpec as JSON")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    report: dict = {"command": args.command, "version": __version__}
    code = EXIT_OK
    try:
        if args.command in ("survey", "generate"):
            sources, graphs = [], []
        else:
            sources = _read_sources(args.inputs)
            graphs = _parse(sources, args.format)
        report["inputs_digest"] = _digest(sources)
        results, stats = COMMANDS[args.command](args, graphs)
        report["results"] = results
        report["stats"] = stats
    except VerificationFailed as e:
        report["error"] = {"type": "verification", "detail": str(e)}
        code = EXIT_VERIFY
    except Counterexample as e:
        report["error"] = {"type": "counterexample", "report": e.report.to_dict()}
        code = EXIT_PRECONDITION
    except (PreconditionError, FormatError, ValueError, OSError) as e:
        report["error"] = {"type": type(e).__name__, "detail": str(e)}
        code = EXIT_PRECONDITION
    except BudgetExhausted as e:
        report["error"] = {"type": "budget", "detail": str(e)}
        code = EXIT_BUDGET
    if args.timing:
        report["wall_time"] = round(time.perf_counter() - start, 6)
    if code != EXIT_OK:
        print(json.dumps(report["error"], sort_keys=True), file=sys.stderr)
        report.setdefault("results", [])
    text = render(report, args.out)
    if args.out_file:
        with open(args.out_file, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
