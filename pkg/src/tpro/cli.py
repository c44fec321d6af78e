"""Command line interface.

Subcommands: orbit (walk one orbit), render (stone diagrams), census
(orbit-length census), verify (formula and lemma suites), explore
(conjecture evidence tables), graph (build and export graphs).

Exit codes: 0 success / all checks passed, 1 a verification found
mismatches, 2 usage error, 3 the step budget ran out.  Seeds come from
--seed (default 0) and are echoed into every report; TPRO_SEED, TPRO_BUDGET
and TPRO_JOBS override the defaults from the environment.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import re
import sys
from dataclasses import dataclass

from . import graphs, theorems
from .dynamics import (
    State,
    iterate_orbit,
    make_state,
    orbit_length,
    orbit_length_bounded,
    state_from_json_dict,
)
from .enumeration import (
    EnumerationPlan,
    census,
    census_csv_rows,
    census_to_json_dict,
    random_state,
)
from .graphs import SimpleGraph
from .stones import from_state, orbit_diagrams, render
from .theorems import (
    Structure,
    family_report_rows,
    predict,
    verify_family,
    verify_restriction_independence,
    wtable_rows,
)

DEFAULT_BUDGET = 10**8

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


@dataclass
class RunConfig:
    """Resolved run parameters shared by the subcommands."""

    graph: str | None = None
    mode: str = "exhaustive"
    budget: int = DEFAULT_BUDGET
    seed: int = 0
    jobs: int = 1
    csv_path: str | None = None
    json_path: str | None = None
    figure_path: str | None = None


class BudgetExceeded(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# graph spec parsing

_SHORT = {"K": "complete", "C": "cycle", "P": "path", "S": "star", "T": "tree"}
_FAMS = {"complete", "cycle", "path", "star", "tree"}


def _build_named(kind: str, size: int) -> SimpleGraph:
    if kind == "tree":
        # the canonical tree of a given size is the path
        return graphs.path(size)
    return getattr(graphs, kind)(size)


def parse_block_token(tok: str) -> SimpleGraph:
    """One block: K4 / complete:4 / complete4 / tree5 / pruefer:0-1 / file.json."""
    tok = tok.strip()
    m = re.fullmatch(r"([A-Z])(\d+)", tok)
    if m and m.group(1) in _SHORT:
        return _build_named(_SHORT[m.group(1)], int(m.group(2)))
    m = re.fullmatch(r"([a-z_]+):?(\d+)", tok)
    if m and m.group(1) in _FAMS:
        return _build_named(m.group(1), int(m.group(2)))
    if tok.startswith("pruefer:"):
        seq = tok[len("pruefer:") :]
        entries = tuple(int(x) for x in seq.split("-")) if seq else ()
        return graphs.tree_from_pruefer(entries)
    if tok.endswith(".json") or os.path.exists(tok):
        with open(tok, "r", encoding="utf-8") as fh:
            return graphs.from_json(fh.read())
    raise ValueError(f"cannot parse graph token {tok!r}")


def parse_junctions(text: str | None, n_pairs: int) -> tuple[tuple[int, int], ...]:
    if not text:
        return tuple((0, 0) for _ in range(n_pairs))
    pairs = []
    for part in text.split(","):
        a, _, b = part.partition(":")
        pairs.append((int(a), int(b)))
    if len(pairs) != n_pairs:
        raise ValueError(f"expected {n_pairs} junction pairs, got {len(pairs)}")
    return tuple(pairs)


def parse_graph_spec(text: str, junctions: str | None = None) -> SimpleGraph:
    """Full graph source: a block token, chain:..., corona:..., or a JSON file."""
    text = text.strip()
    if text.startswith("chain:"):
        toks = text[len("chain:") :].split(",")
        blocks = [parse_block_token(t) for t in toks]
        pairs = parse_junctions(junctions, len(blocks) - 1)
        acc = blocks[0]
        offset = 0
        for k, g2 in enumerate(blocks[1:]):
            a, b = pairs[k]
            acc = graphs.bridge_sum(acc, offset + a, g2, b)
            offset += blocks[k].vertex_count
        return acc
    if text.startswith("corona:"):
        body = text[len("corona:") :]
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError("corona spec needs exactly two blocks")
        second, _, attach = parts[1].partition("@")
        g1 = parse_block_token(parts[0])
        g2 = parse_block_token(second)
        return graphs.corona_product(g1, g2, int(attach) if attach else 0)
    return parse_block_token(text)


def parse_state(args, nu: int) -> State:
    if getattr(args, "state_json", None):
        with open(args.state_json, "r", encoding="utf-8") as fh:
            return state_from_json_dict(json.load(fh))
    if args.state is None or args.active is None:
        raise ValueError("need --state and --active (or --state-json)")
    text = args.state
    if "," in text:
        labels = [int(p) for p in text.split(",")]
    else:
        labels = [int(ch) for ch in text]
    if len(labels) != nu:
        raise ValueError(f"state has {len(labels)} labels for a {nu}-vertex graph")
    return make_state(labels, args.active)


# ---------------------------------------------------------------------------
# output helpers

def _write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _write_json(path: str, obj) -> None:
    _write_text(path, json.dumps(obj, indent=2) + "\n")


def _csv_text(header: list[str], rows: list) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


_REPORT_HEADER = [
    "graph_id",
    "state_one_line",
    "active",
    "measured_length",
    "predicted_length",
    "match",
    "seed",
]


def _report_csv(rows: list[dict]) -> str:
    return _csv_text(
        _REPORT_HEADER, [[r[k] for k in _REPORT_HEADER] for r in rows]
    )


# ---------------------------------------------------------------------------
# subcommands

def cmd_orbit(args) -> int:
    g = parse_graph_spec(args.graph, args.junctions)
    s = parse_state(args, g.vertex_count)
    if args.trace or args.render:
        states = []
        steps = 0
        for st in iterate_orbit(g, s):
            states.append(st)
            steps += 1
            if steps - 1 > args.budget:
                print("budget exceeded before the orbit closed", file=sys.stderr)
                return EXIT_BUDGET
        length = len(states) - 1
        if args.trace:
            for st in states:
                print(f"{st.one_line()} {st.active}")
        if args.render:
            doc = render([from_state(g, st) for st in states], args.render)
            _write_text(args.out, doc)
    else:
        length, _ = orbit_length_bounded(g, s, args.budget)
        if length is None:
            print("budget exceeded before the orbit closed", file=sys.stderr)
            return EXIT_BUDGET
    print(length)
    return EXIT_OK


def cmd_render(args) -> int:
    g = parse_graph_spec(args.graph, args.junctions)
    s = parse_state(args, g.vertex_count)
    diagrams = orbit_diagrams(g, s, steps=args.steps)
    _write_text(args.out, render(diagrams, args.format))
    return EXIT_OK


def cmd_census(args) -> int:
    g = parse_graph_spec(args.graph, args.junctions)
    plan = EnumerationPlan(
        mode=args.mode,
        count=args.samples,
        seed=args.seed,
        budget=args.budget,
        partition=args.partition,
    )
    result = census(g, plan, jobs=args.jobs)
    rows = census_csv_rows(result)
    text = _csv_text(["length", "count"], rows)
    _write_text(args.csv, text)
    if args.json:
        _write_json(args.json, census_to_json_dict(result))
    if args.figure:
        from .figures import census_figure, save_figure

        save_figure(census_figure(result), args.figure)
    if not result.complete:
        return EXIT_BUDGET
    if not result.conserved():
        print("census failed conservation checks", file=sys.stderr)
        return EXIT_MISMATCH
    return EXIT_OK


def _family_exit(reports) -> int:
    if any(not r.complete for r in reports):
        return EXIT_BUDGET
    if any(r.mismatch_count for r in reports):
        return EXIT_MISMATCH
    return EXIT_OK


def _emit_family_reports(args, reports, summaries) -> None:
    rows = []
    for r in reports:
        rows.extend(family_report_rows(r))
    if args.csv:
        _write_text(args.csv, _report_csv(rows))
    if args.json:
        _write_json(
            args.json,
            {
                "kind": "verify",
                "suite": args.suite,
                "seed": args.seed,
                "budget": args.budget,
                "reports": summaries,
                "rows": rows,
                "passed": all(s.get("passed") for s in summaries),
            },
        )
    if args.figure and reports:
        from .figures import family_figure, save_figure

        save_figure(family_figure(reports[0]), args.figure)


def _family_summary(r) -> dict:
    return {
        "graph_id": r.graph_id,
        "formula_id": r.prediction.formula_id,
        "predicted_length": r.prediction.predicted_length,
        "mode": r.mode,
        "states_checked": r.states_checked,
        "mismatches": r.mismatch_count,
        "complete": r.complete,
        "passed": r.passed,
    }


def _limit(args, flag: str, fallback: int) -> int:
    """Per-suite size cap: the suite's own flag, then --max-size, then default."""
    val = getattr(args, flag)
    if val is not None:
        return val
    if args.max_size is not None:
        return args.max_size
    return fallback


def _suite_graphs(args):
    """(graph, structure) pairs for the requested verification suite."""
    suite = args.suite
    out = []
    if suite == "complete":
        for n in range(2, _limit(args, "max_n", 6) + 1):
            out.append((graphs.complete(n), Structure("complete", (n,))))
    elif suite == "trees":
        for m in range(2, _limit(args, "max_m", 6) + 1):
            for t in graphs.all_trees(m):
                out.append((t, Structure("tree", (m,))))
    elif suite == "complete-bridge-complete":
        max_total = _limit(args, "max_N", 7)
        for n1 in range(2, max_total - 1):
            for n2 in range(n1, max_total - n1 + 1):
                g = graphs.bridge_sum(graphs.complete(n1), 0, graphs.complete(n2), 0)
                out.append(
                    (g, Structure("complete_bridge_complete", (n1, n2)))
                )
    elif suite == "tree-bridge-complete":
        max_total = _limit(args, "max_N", 7)
        for m in range(1, max_total):
            for n in range(1, max_total - m + 1):
                for t in graphs.all_trees(m):
                    for a in range(m):
                        for b in range(n):
                            g = graphs.bridge_sum(t, a, graphs.complete(n), b)
                            out.append(
                                (g, Structure("tree_bridge_complete", (m, n)))
                            )
    elif suite == "corona":
        max_total = _limit(args, "max_N", 6)
        for n in range(1, max_total + 1):
            for m in range(1, max_total + 1):
                if n * (m + 1) > max_total:
                    continue
                for t in graphs.all_trees(m):
                    for attach in range(m):
                        g = graphs.corona_product(graphs.complete(n), t, attach)
                        out.append(
                            (g, Structure("corona_complete_tree", (n, m)))
                        )
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return out


def cmd_verify(args) -> int:
    if args.suite in ("restriction-tree", "restriction-complete"):
        return _cmd_verify_restriction(args, args.suite.rsplit("-", 1)[1])
    if args.suite in ("lemma-tree-bridge", "lemma-complete-bridge"):
        side = "tree" if args.suite == "lemma-tree-bridge" else "complete"
        return _cmd_verify_lemma(args, side)
    if args.suite == "lemma-directional":
        return _cmd_verify_directional(args)
    pairs = _suite_graphs(args)
    reports = []
    summaries = []
    for g, structure in pairs:
        prediction = predict(g, structure)
        r = verify_family(
            g,
            prediction,
            mode=args.mode,
            samples=args.samples,
            seed=args.seed,
            budget=args.budget,
            partition=args.partition,
            jobs=args.jobs,
        )
        reports.append(r)
        summaries.append(_family_summary(r))
    _emit_family_reports(args, reports, summaries)
    for s in summaries:
        status = "ok" if s["passed"] else "FAIL"
        print(
            f"{s['formula_id']} {s['graph_id']} predicted={s['predicted_length']} "
            f"checked={s['states_checked']} mismatches={s['mismatches']} {status}"
        )
    return _family_exit(reports)


def _kind_blocks(kind: str, max_block: int) -> list[SimpleGraph]:
    """Attachable blocks of one kind: every labeled tree or complete graph."""
    blocks: list[SimpleGraph] = []
    if kind == "tree":
        for m in range(1, max_block + 1):
            blocks.extend(graphs.all_trees(m))
    else:
        for n in range(1, max_block + 1):
            blocks.append(graphs.complete(n))
    return blocks


def _emit_suite_rows(args, suite: str, header: list[str], rows: list[dict]) -> None:
    if args.csv:
        _write_text(args.csv, _csv_text(header, [[r[k] for k in header] for r in rows]))
    if args.json:
        _write_json(
            args.json,
            {
                "kind": "verify",
                "suite": suite,
                "seed": args.seed,
                "budget": args.budget,
                "reports": rows,
                "passed": all(r["passed"] for r in rows),
            },
        )


def _cmd_verify_restriction(args, kind: str) -> int:
    reports = []
    for c in range(4, args.max_cycle + 1):
        ring = graphs.cycle(c)
        for block in _kind_blocks(kind, args.max_block):
            for a in range(c):
                for b in range(block.vertex_count):
                    g = graphs.bridge_sum(ring, a, block, b)
                    fixed = tuple(range(c))
                    r = verify_restriction_independence(
                        g,
                        fixed,
                        mode=args.mode if args.mode == "sampled" else "exhaustive",
                        trials=args.samples,
                        seed=args.seed,
                        budget=args.budget,
                        jobs=args.jobs,
                    )
                    reports.append(r)
    rows = []
    for r in reports:
        rows.append(
            {
                "graph_id": r.graph_id,
                "groups": r.group_count,
                "states_checked": r.states_checked,
                "violations": r.violation_count,
                "passed": r.passed,
            }
        )
        status = "ok" if r.passed else "FAIL"
        print(
            f"restriction {r.graph_id} groups={r.group_count} "
            f"violations={r.violation_count} {status}"
        )
    _emit_suite_rows(
        args,
        args.suite,
        ["graph_id", "groups", "states_checked", "violations", "passed"],
        rows,
    )
    return EXIT_OK if all(r.passed for r in reports) else EXIT_MISMATCH


def _cmd_verify_lemma(args, side_kind: str) -> int:
    """Crossing-gap, rotation, and dwell checks on cycle-with-block bridges."""
    rng = random.Random(args.seed)
    rows = []
    ok = True
    for c in range(3, args.max_cycle + 1):
        ring = graphs.cycle(c)
        for block in _kind_blocks(side_kind, args.max_block):
            size = block.vertex_count
            for a in range(c):
                for b in range(size):
                    g = graphs.bridge_sum(ring, a, block, b)
                    edge = (a, c + b)
                    s = theorems.entering_state(g, edge, c + b, rng)
                    base = orbit_length(g, s).length
                    gap = size * (g.vertex_count - 1)
                    r = theorems.verify_lemma_sd_rotation(
                        g, s, edge, side_kind=side_kind, horizon=base + gap + 1
                    )
                    passed = r.passed and r.checked > 0
                    ok = ok and passed
                    rows.append(
                        {
                            "graph_id": r.graph_id,
                            "edge": f"{r.edge[0]}-{r.edge[1]}",
                            "expected_gap": r.expected_gap,
                            "expected_rotation": r.expected_rotation,
                            "crossings_checked": r.checked,
                            "failures": len(r.failures),
                            "passed": passed,
                        }
                    )
                    status = "ok" if passed else "FAIL"
                    print(
                        f"lemma-{side_kind} {r.graph_id} gap={r.expected_gap} "
                        f"rotation={r.expected_rotation} checked={r.checked} {status}"
                    )
    _emit_suite_rows(
        args,
        args.suite,
        [
            "graph_id",
            "edge",
            "expected_gap",
            "expected_rotation",
            "crossings_checked",
            "failures",
            "passed",
        ],
        rows,
    )
    return EXIT_OK if ok else EXIT_MISMATCH


def _cmd_verify_directional(args) -> int:
    """One-way replica traffic while the coin sits in a complete block."""
    rng = random.Random(args.seed)
    instances = []
    for n in range(2, args.max_block + 1):
        for other in _kind_blocks("tree", args.max_block) + _kind_blocks(
            "complete", args.max_block
        ):
            g = graphs.bridge_sum(graphs.complete(n), 0, other, 0)
            instances.append((g, tuple(range(n))))
        instances.append((graphs.complete(n), tuple(range(n))))
    rows = []
    ok = True
    for g, block in instances:
        s = random_state(g.vertex_count, rng)
        r = theorems.verify_directional(g, s, block)
        passed = r.passed
        ok = ok and passed
        rows.append(
            {
                "graph_id": r.graph_id,
                "block": "-".join(str(v) for v in r.block),
                "steps_checked": r.steps_checked,
                "violations": len(r.violations),
                "passed": passed,
            }
        )
        status = "ok" if passed else "FAIL"
        print(
            f"lemma-directional {r.graph_id} block={r.block} "
            f"steps={r.steps_checked} violations={len(r.violations)} {status}"
        )
    _emit_suite_rows(
        args,
        args.suite,
        ["graph_id", "block", "steps_checked", "violations", "passed"],
        rows,
    )
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_explore(args) -> int:
    if args.conjecture == "chain":
        toks = args.blocks.split(",")
        blocks = [parse_block_token(t) for t in toks]
        pairs = parse_junctions(args.junctions, len(blocks) - 1)
        acc = blocks[0]
        offset = 0
        for k, g2 in enumerate(blocks[1:]):
            a, b = pairs[k]
            acc = graphs.bridge_sum(acc, offset + a, g2, b)
            offset += blocks[k].vertex_count
        report = theorems.explore_chain(
            acc,
            mode=args.mode,
            count=args.samples,
            seed=args.seed,
            budget=args.budget,
            partition=args.partition,
            jobs=args.jobs,
        )
        rows = census_csv_rows(report.census)
        _write_text(args.csv, _csv_text(["length", "count"], rows))
        if args.json:
            _write_json(
                args.json,
                {
                    "kind": "explore",
                    "conjecture": "chain",
                    "graph_id": report.graph_id,
                    "seed": args.seed,
                    "predicted_length": report.prediction.predicted_length,
                    "census": census_to_json_dict(report.census),
                    "counterexamples": [
                        {"state_one_line": s.one_line(), "active": s.active, "measured_length": l}
                        for s, l in report.counterexamples
                    ],
                    "completed": report.completed,
                },
            )
        if args.figure:
            from .figures import census_figure, save_figure

            save_figure(census_figure(report.census), args.figure)
        print(
            f"chain {report.graph_id} predicted={report.prediction.predicted_length} "
            f"counterexamples={len(report.counterexamples)} "
            f"completed={report.completed}"
        )
        return EXIT_OK if report.completed else EXIT_BUDGET
    if args.conjecture in ("tree-cycle", "complete-cycle"):
        kind = "tree" if args.conjecture == "tree-cycle" else "complete"
        if kind == "tree":
            if args.pruefer:
                seq = tuple(int(x) for x in args.pruefer.split("-"))
                block = graphs.tree_from_pruefer(seq, args.m)
            else:
                block = graphs.path(args.m)
        else:
            block = graphs.complete(args.n)
        ring = graphs.cycle(args.nu)
        a, b = parse_junctions(args.junctions, 1)[0]
        g = graphs.bridge_sum(block, a, ring, b)
        cyc_vertices = tuple(range(block.vertex_count, g.vertex_count))
        bridge = (a, block.vertex_count + b)
        report = theorems.explore_cycle_attachment(
            g,
            cyc_vertices,
            bridge,
            block_kind=kind,
            mode=args.mode,
            count=args.samples,
            seed=args.seed,
            budget=args.budget,
        )
        rows = wtable_rows(report)
        header = [
            "graph_id",
            "state_one_line",
            "active",
            "measured_length",
            "inferred_w",
            "literal_w",
            "match",
            "seed",
        ]
        _write_text(
            args.csv, _csv_text(header, [[r[k] for k in header] for r in rows])
        )
        if args.json:
            _write_json(
                args.json,
                {
                    "kind": "explore",
                    "conjecture": args.conjecture,
                    "graph_id": report.graph_id,
                    "seed": args.seed,
                    "w_unit": report.w_unit,
                    "interpretation": report.interpretation,
                    "rows": rows,
                    "integral_inferred": report.integral_count,
                    "literal_matches": report.literal_match_count,
                    "completed": report.completed,
                },
            )
        if args.figure:
            from .figures import save_figure, wtable_figure

            save_figure(wtable_figure(report), args.figure)
        print(
            f"{args.conjecture} {report.graph_id} w_unit={report.w_unit} "
            f"states={len(report.rows)} integral={report.integral_count} "
            f"literal_matches={report.literal_match_count} "
            f"completed={report.completed}"
        )
        return EXIT_OK if report.completed else EXIT_BUDGET
    raise ValueError(f"unknown conjecture {args.conjecture!r}")


def cmd_graph(args) -> int:
    if args.family == "corona":
        if not (args.g1 and args.g2):
            raise ValueError("corona needs --g1 and --g2")
        g = graphs.corona_product(
            parse_block_token(args.g1), parse_block_token(args.g2), args.attach
        )
    elif args.family == "chain":
        if not args.blocks:
            raise ValueError("chain needs --blocks")
        g = parse_graph_spec("chain:" + args.blocks, args.junctions)
    else:
        g = parse_graph_spec(args.family, args.junctions)
    if args.dot:
        _write_text(args.dot, graphs.to_dot(g))
    if args.json or not args.dot:
        _write_text(args.json, graphs.to_json(g) + "\n")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser

def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(f"invalid {name}={raw!r}")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=_env_int("TPRO_SEED", 0))
    p.add_argument(
        "--budget", type=int, default=_env_int("TPRO_BUDGET", DEFAULT_BUDGET)
    )
    p.add_argument(
        "--jobs", type=int, default=_env_int("TPRO_JOBS", os.cpu_count() or 1)
    )


def _add_graph_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", required=True, help="graph spec, e.g. complete:4, chain:tree5,complete4, or a JSON file")
    p.add_argument("--junctions", default=None, help="chain junctions a:b,c:d (default all 0:0)")


def _add_state_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--state", default=None, help="one-line labeling, e.g. 4123")
    p.add_argument("--active", type=int, default=None)
    p.add_argument("--state-json", default=None, help="state JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tpro", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("orbit", help="walk one orbit and print its length")
    _add_graph_arg(p)
    _add_state_args(p)
    p.add_argument("--trace", action="store_true", help="print every state")
    p.add_argument("--render", choices=["ascii", "svg", "dot"], default=None)
    p.add_argument("--out", default=None, help="render output path (default stdout)")
    _add_common(p)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("render", help="render stone diagrams along an orbit")
    _add_graph_arg(p)
    _add_state_args(p)
    p.add_argument("--steps", type=int, default=None, help="steps to render (default: full orbit)")
    p.add_argument("--format", choices=["ascii", "svg", "dot"], default="ascii")
    p.add_argument("--out", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("census", help="orbit-length census over the state space")
    _add_graph_arg(p)
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--partition", type=int, default=1)
    p.add_argument("--csv", default=None, help="CSV output path (default stdout)")
    p.add_argument("--json", default=None)
    p.add_argument("--figure", default=None, help="PNG bar chart path")
    _add_common(p)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="check formula predictions over a family suite")
    p.add_argument(
        "--suite",
        required=True,
        choices=[
            "trees",
            "complete",
            "complete-bridge-complete",
            "tree-bridge-complete",
            "corona",
            "restriction-tree",
            "restriction-complete",
            "lemma-tree-bridge",
            "lemma-complete-bridge",
            "lemma-directional",
        ],
    )
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--max-n", type=int, default=None, help="complete suite: largest n")
    p.add_argument("--max-m", type=int, default=None, help="trees suite: largest m")
    p.add_argument(
        "--max-N", type=int, default=None, help="bridge/corona suites: largest total"
    )
    p.add_argument("--max-size", type=int, default=None, help="generic size fallback")
    p.add_argument("--max-cycle", type=int, default=5, help="restriction/lemma suites: largest cycle")
    p.add_argument("--max-block", type=int, default=3, help="restriction/lemma suites: largest block")
    p.add_argument("--partition", type=int, default=1)
    p.add_argument("--csv", default=None)
    p.add_argument("--json", default=None)
    p.add_argument("--figure", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("explore", help="evidence tables for conjectured laws")
    p.add_argument(
        "--conjecture", required=True, choices=["chain", "tree-cycle", "complete-cycle"]
    )
    p.add_argument("--blocks", default=None, help="chain blocks, e.g. K2,K2,K2")
    p.add_argument("--junctions", default=None)
    p.add_argument("--m", type=int, default=2, help="tree block size for tree-cycle")
    p.add_argument("--n", type=int, default=2, help="complete block size for complete-cycle")
    p.add_argument("--nu", type=int, default=3, help="cycle size")
    p.add_argument("--pruefer", default=None, help="tree block shape, e.g. 0-1")
    p.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--partition", type=int, default=1)
    p.add_argument("--csv", default=None)
    p.add_argument("--json", default=None)
    p.add_argument("--figure", default=None)
    _add_common(p)
    p.set_defaults(func=cmd_explore)

    p = sub.add_parser("graph", help="build a graph and export JSON or DOT")
    p.add_argument("--family", required=True, help="family token, corona, or chain")
    p.add_argument("--g1", default=None)
    p.add_argument("--g2", default=None)
    p.add_argument("--attach", type=int, default=0)
    p.add_argument("--blocks", default=None)
    p.add_argument("--junctions", default=None)
    p.add_argument("--json", default=None)
    p.add_argument("--dot", default=None)
    p.set_defaults(func=cmd_graph)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except BudgetExceeded:
        return EXIT_BUDGET
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
