"""Command-line front end.

    facility-game distances --scenario example.json
    facility-game payoffs   --scenario example.json --format csv
    facility-game allocate  --scenario example.json --profile 3
    facility-game solve     --scenario example.json --solver both --format json

Exit status: 0 on success, 1 when a requested Nash set is empty, 2 on bad
input (parse, validation, disconnected network, profile limit).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import warnings
from dataclasses import dataclass
from typing import Optional

from . import __version__
from .errors import FacilityGameError, ProfileLimitExceeded, ValidationError
from .market import PayoffTensor, allocate_demand, owner_payoff, payoff_tensor
from .network import DistanceOracle, all_pairs_shortest_paths
from .scenario import Scenario, load_scenario, profile_at
from .solvers import SolutionReport, compromise_set, find_nash

log = logging.getLogger("facility_game")

DEFAULT_MAX_PROFILES = 10**7

EXIT_OK = 0
EXIT_NO_EQUILIBRIUM = 1
EXIT_BAD_INPUT = 2


@dataclass
class RunConfig:
    scenario_path: str
    command: str
    solver: str = "nash"
    output_format: str = "table"
    output_path: Optional[str] = None
    max_profiles: int = DEFAULT_MAX_PROFILES
    workers: int = 1
    backend: Optional[str] = None
    profile: Optional[int] = None


# -- report payloads ---------------------------------------------------------


def owner_entries(sc: Scenario, profile) -> list[dict]:
    out = []
    for s in profile:
        price, m, w = sc.describe(s)
        out.append({"price": price, "production_vertex": m, "distribution_vertex": w})
    return out


def report_to_dict(sc: Scenario, report: SolutionReport) -> dict:
    profiles = []
    for prof, vals in zip(report.profiles, report.values):
        entry = {"owners": owner_entries(sc, prof), "payoffs": list(vals)}
        if report.objective is not None:
            entry["objective"] = report.objective
        profiles.append(entry)
    return {"solver": report.kind, "profiles": profiles}


def format_profile(sc: Scenario, profile, values) -> str:
    parts = [
        f"R{o + 1}: price {e['price']}, production@{e['production_vertex']}, "
        f"distribution@{e['distribution_vertex']}"
        for o, e in enumerate(owner_entries(sc, profile))
    ]
    return "; ".join(parts) + f"; payoffs ({', '.join(str(v) for v in values)})"


def report_table(sc: Scenario, report: SolutionReport) -> str:
    if report.kind == "nash":
        lines = [f"Nash equilibria ({len(report)}):"]
        if report.empty:
            lines.append("  none")
        for prof, vals in zip(report.profiles, report.values):
            lines.append("  " + format_profile(sc, prof, vals))
    else:
        ideal = ", ".join(str(x) for x in report.ideal)
        lines = [f"Compromise set ({len(report)}), objective {report.objective}, ideal ({ideal}):"]
        for prof, vals, res in zip(report.profiles, report.values, report.residuals):
            lines.append(
                "  " + format_profile(sc, prof, vals) + f"; residuals ({', '.join(str(r) for r in res)})"
            )
    return "\n".join(lines) + "\n"


REPORT_CSV_FIELDS = [
    "solver",
    "profile",
    "owner",
    "price",
    "production_vertex",
    "distribution_vertex",
    "payoff",
    "objective",
]


def report_rows(sc: Scenario, report: SolutionReport) -> list[dict]:
    rows = []
    for idx, prof, vals in zip(report.indices, report.profiles, report.values):
        for o, e in enumerate(owner_entries(sc, prof)):
            rows.append(
                {
                    "solver": report.kind,
                    "profile": idx,
                    "owner": o + 1,
                    **e,
                    "payoff": vals[o],
                    "objective": "" if report.objective is None else report.objective,
                }
            )
    return rows


def _csv(fields, rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def render_reports(sc: Scenario, reports: list[SolutionReport], fmt: str) -> str:
    if fmt == "json":
        docs = [report_to_dict(sc, r) for r in reports]
        return json.dumps(docs[0] if len(docs) == 1 else docs, indent=2) + "\n"
    if fmt == "csv":
        return _csv(REPORT_CSV_FIELDS, [row for r in reports for row in report_rows(sc, r)])
    return "".join(report_table(sc, r) for r in reports)


# -- commands ----------------------------------------------------------------


def _load(cfg: RunConfig) -> tuple[Scenario, DistanceOracle]:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        sc = load_scenario(cfg.scenario_path)
        oracle = all_pairs_shortest_paths(sc.network, backend=cfg.backend)
    for w in caught:
        log.warning("%s", w.message)
    return sc, oracle


def _tensor(cfg: RunConfig, sc: Scenario, oracle: DistanceOracle) -> PayoffTensor:
    if sc.profile_count > cfg.max_profiles:
        raise ProfileLimitExceeded(
            f"{sc.profile_count} joint profiles exceed --max-profiles {cfg.max_profiles}"
        )
    return payoff_tensor(sc, oracle, workers=cfg.workers, backend=cfg.backend)


def cmd_distances(cfg: RunConfig) -> tuple[int, str]:
    sc, oracle = _load(cfg)
    dem = [d.vertex for d in sc.demand_points]
    sites = [s.vertex for s in sc.distribution_sites]
    table = [[oracle.dist(k, w) for w in sites] for k in dem]
    matrix = oracle.matrix()
    if cfg.output_format == "json":
        doc = {
            "demand_vertices": dem,
            "distribution_vertices": sites,
            "demand_distribution": table,
            "vertices": sc.network.vertex_count,
            "matrix": matrix,
        }
        return EXIT_OK, json.dumps(doc, indent=2) + "\n"
    if cfg.output_format == "csv":
        rows = [
            {"table": "demand_distribution", "from_vertex": k, "to_vertex": w, "distance": d}
            for k, row in zip(dem, table)
            for w, d in zip(sites, row)
        ]
        rows += [
            {"table": "all_pairs", "from_vertex": u + 1, "to_vertex": v + 1, "distance": d}
            for u, row in enumerate(matrix)
            for v, d in enumerate(row)
        ]
        return EXIT_OK, _csv(["table", "from_vertex", "to_vertex", "distance"], rows)

    out = ["Demand to distribution distances:"]
    out.append("      " + "".join(f"{'w' + str(j + 1) + '@' + str(w):>8}" for j, w in enumerate(sites)))
    for i, (k, row) in enumerate(zip(dem, table)):
        out.append(f"{'k' + str(i + 1) + '@' + str(k):<6}" + "".join(f"{d:>8}" for d in row))
    out.append("")
    out.append("All-pairs shortest distances:")
    width = max(4, max(len(str(d)) for row in matrix for d in row) + 1)
    out.append("    " + "".join(f"{v:>{width}}" for v in range(1, len(matrix) + 1)))
    for u, row in enumerate(matrix, 1):
        out.append(f"{u:<4}" + "".join(f"{d:>{width}}" for d in row))
    return EXIT_OK, "\n".join(out) + "\n"


PAYOFF_FIELDS = [
    "profile",
    "owner",
    "price",
    "production_vertex",
    "distribution_vertex",
    "active",
    "served",
    "revenue",
    "transport",
    "distribution_cost",
    "production_cost",
    "raw_cost",
    "net",
]


def payoff_records(sc: Scenario, oracle: DistanceOracle, tensor: PayoffTensor) -> list[dict]:
    records = []
    for idx in range(len(tensor)):
        profile = tensor.profile(idx)
        alloc = allocate_demand(sc, oracle, profile)
        owners = []
        for o, (s, e) in enumerate(zip(profile, owner_entries(sc, profile))):
            b = owner_payoff(sc, oracle, s, alloc, o)
            owners.append(
                {
                    **e,
                    "active": alloc.active[o],
                    "served": alloc.served_quantity[o],
                    "revenue": b.revenue,
                    "transport": b.transport,
                    "distribution_cost": b.distribution_cost,
                    "production_cost": b.production_cost,
                    "raw_cost": b.raw_cost,
                    "net": b.net,
                }
            )
        records.append({"index": idx, "owners": owners, "payoffs": list(tensor.payoffs(idx))})
    return records


def cmd_payoffs(cfg: RunConfig) -> tuple[int, str]:
    sc, oracle = _load(cfg)
    tensor = _tensor(cfg, sc, oracle)
    records = payoff_records(sc, oracle, tensor)
    if cfg.output_format == "json":
        return EXIT_OK, json.dumps({"owners": sc.owner_count, "profiles": records}, indent=2) + "\n"
    rows = [
        {"profile": r["index"], "owner": o + 1, **e}
        for r in records
        for o, e in enumerate(r["owners"])
    ]
    if cfg.output_format == "csv":
        return EXIT_OK, _csv(PAYOFF_FIELDS, rows)
    head = ["profile", "owner", "price", "prod", "dist", "active", "served", "revenue", "transport", "PW", "PM", "raw", "net"]
    out = ["".join(f"{h:>10}" for h in head)]
    for row in rows:
        vals = [row[f] for f in PAYOFF_FIELDS]
        vals[5] = "yes" if vals[5] else "blocked"
        out.append("".join(f"{v!s:>10}" for v in vals))
    return EXIT_OK, "\n".join(out) + "\n"


def cmd_allocate(cfg: RunConfig) -> tuple[int, str]:
    sc, oracle = _load(cfg)
    if cfg.profile is not None:
        if not 0 <= cfg.profile < sc.profile_count:
            raise ValidationError("profile-index", f"--profile {cfg.profile} not in 0..{sc.profile_count - 1}")
        indices = [cfg.profile]
    else:
        if sc.profile_count > cfg.max_profiles:
            raise ProfileLimitExceeded(
                f"{sc.profile_count} joint profiles exceed --max-profiles {cfg.max_profiles}"
            )
        indices = range(sc.profile_count)
    rows = []
    for idx in indices:
        alloc = allocate_demand(sc, oracle, profile_at(sc, idx))
        for k, (d, j, o) in enumerate(zip(sc.demand_points, alloc.sites, alloc.owners)):
            rows.append(
                {
                    "profile": idx,
                    "demand_vertex": d.vertex,
                    "quantity": d.quantity,
                    "distribution_vertex": sc.distribution_sites[j].vertex,
                    "owner": "" if o is None else o + 1,
                    "distance": oracle.dist(d.vertex, sc.distribution_sites[j].vertex),
                }
            )
    fields = ["profile", "demand_vertex", "quantity", "distribution_vertex", "owner", "distance"]
    if cfg.output_format == "json":
        doc = [{**r, "owner": r["owner"] or None} for r in rows]
        return EXIT_OK, json.dumps(doc, indent=2) + "\n"
    if cfg.output_format == "csv":
        return EXIT_OK, _csv(fields, rows)
    out = ["".join(f"{f:>20}" for f in fields)]
    for r in rows:
        r = {**r, "owner": f"R{r['owner']}" if r["owner"] else "unserved"}
        out.append("".join(f"{r[f]!s:>20}" for f in fields))
    return EXIT_OK, "\n".join(out) + "\n"


def cmd_solve(cfg: RunConfig) -> tuple[int, str]:
    sc, oracle = _load(cfg)
    tensor = _tensor(cfg, sc, oracle)
    reports = []
    if cfg.solver in ("nash", "both"):
        reports.append(find_nash(tensor, backend=cfg.backend))
    if cfg.solver in ("compromise", "both"):
        reports.append(compromise_set(tensor, backend=cfg.backend))
    status = EXIT_OK
    if reports[0].kind == "nash" and reports[0].empty:
        status = EXIT_NO_EQUILIBRIUM
    return status, render_reports(sc, reports, cfg.output_format)


COMMANDS = {
    "distances": cmd_distances,
    "payoffs": cmd_payoffs,
    "allocate": cmd_allocate,
    "solve": cmd_solve,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", required=True, help="scenario JSON file")
    common.add_argument("--format", dest="output_format", choices=["table", "json", "csv"], default="table")
    common.add_argument("--out", dest="output_path", help="write the report here instead of stdout")
    common.add_argument("--max-profiles", type=int, default=DEFAULT_MAX_PROFILES)
    common.add_argument("--workers", type=int, default=1, help="processes for payoff evaluation")
    common.add_argument("--backend", choices=["python", "compiled"], help="force a kernel backend")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="facility-game",
        description="Place production and distribution points on a transport network.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("distances", parents=[common], help="shortest-path distance tables")
    sub.add_parser("payoffs", parents=[common], help="net income of every owner for every profile")
    alloc = sub.add_parser("allocate", parents=[common], help="demand allocation per profile")
    alloc.add_argument("--profile", type=int, help="profile index (default: all)")
    solve = sub.add_parser("solve", parents=[common], help="Nash equilibria and/or compromise set")
    solve.add_argument("--solver", choices=["nash", "compromise", "both"], default="nash")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
    )
    cfg = RunConfig(
        scenario_path=args.scenario,
        command=args.command,
        solver=getattr(args, "solver", "nash"),
        output_format=args.output_format,
        output_path=args.output_path,
        max_profiles=args.max_profiles,
        workers=args.workers,
        backend=args.backend,
        profile=getattr(args, "profile", None),
    )
    try:
        status, text = COMMANDS[cfg.command](cfg)
    except FacilityGameError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except (OSError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT

    if cfg.output_path:
        with open(cfg.output_path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
