"""Shared checks for tests."""

from tinsep.errors import CounterexampleReport
from tinsep.patterns import is_induced_path


def assert_genuine(G, report: CounterexampleReport, t: int) -> None:
    """The reported witness really is an induced P6 (or longer path) or K2,t of G."""
    if report.kind == "P6":
        seq = report.extra.get("path", report.vertices)
        assert len(report.vertices) == 6 and is_induced_path(G, seq), report
    elif report.kind == "K2t":
        u, v, *side = report.vertices
        assert len(side) == t and not G.has_edge(u, v) and G.is_independent(side), report
        assert all(G.has_edge(u, x) and G.has_edge(v, x) for x in side), report
    else:
        raise AssertionError(f"no forbidden subgraph in report {report}")


def builder_survey(n_max: int) -> dict:
    """Run the neighbourhood-oracle builder on every {P6, K2,2}-free class up to n_max.

    Returns per-n rows with the class size, the largest alpha-width and the
    largest ratio alpha-width / exact tin, plus the overall maxima.
    """
    from tinsep.canonical import enumerate_by_size
    from tinsep.decomposition import alpha_width, build_from_balanced_separators, exact_tree_independence, validate
    from tinsep.engine import BoundConfig, neighborhood_oracle
    from tinsep.generators import free_predicate

    oracle = neighborhood_oracle(BoundConfig(t=2))
    rows = []
    invalid = 0
    for n, graphs in enumerate_by_size(n_max, free_predicate(2)):
        widest, worst = 0, 0.0
        for G in graphs:
            D = build_from_balanced_separators(G, oracle)
            if not validate(D)[0]:
                invalid += 1
                continue
            width = alpha_width(D)
            widest = max(widest, width)
            worst = max(worst, width / exact_tree_independence(G))
        rows.append({"n": n, "count": len(graphs), "max_alpha_width": widest, "max_ratio": round(worst, 6)})
    return {
        "rows": rows,
        "invalid": invalid,
        "max_alpha_width": max(r["max_alpha_width"] for r in rows),
        "max_ratio": max(r["max_ratio"] for r in rows),
    }
