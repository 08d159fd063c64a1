"""Analysis bundle writer: delimited reports, figures and a hashed manifest.

Sub-reports are independent: one failing report is recorded under "failures"
in the manifest while the rest still run. Every produced file is listed in
manifest.json with its sha256, so two runs over the same inputs and seed can
be compared byte for byte.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from . import labels as lbl
from .bibliometrics import (
    LogisticFit,
    fit_logistic,
    inflection_position,
    output_series,
    population_series,
    venue_ratio_series,
)
from .collab import (
    DEFAULT_PERIODS,
    YearRange,
    build_graph,
    cluster_stats,
    detect_communities,
    largest_component,
    modularity,
    period_evolution,
)
from .corpus import PublicationRecord, write_label_map
from .errors import DegenerateDataError

MANIFEST_FORMAT_VERSION = 1


def default_communities() -> dict[str, list[str]]:
    """The bundled venue -> research-community mapping."""
    text = resources.files("namelens").joinpath("data/communities.json").read_text("utf-8")
    return json.loads(text)


@dataclass(frozen=True)
class AnalysisOptions:
    seed: int = 0
    periods: tuple[YearRange, ...] = DEFAULT_PERIODS
    group_a: frozenset[str] = lbl.ASIAN_GROUP
    group_b: frozenset[str] = lbl.EUROPEAN_GROUP
    communities: Mapping[str, Sequence[str]] | None = None
    min_cluster_size: int = 10
    window: str = "cumulative"
    collab_mode: str = "fractional"
    figures: bool = True
    restarts: int = 8


@dataclass
class AnalysisResult:
    out_dir: Path
    files: dict[str, str] = field(default_factory=dict)  # rel path -> sha256
    failures: dict[str, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)
    summary: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.10g}"
    return str(value)


def _write_delimited(path: Path, header: Sequence[str], rows: Iterable[Sequence], sep=",") -> None:
    lines = [sep.join(header)]
    lines.extend(sep.join(_fmt(v) for v in row) for row in rows)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _sha256(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def run_analysis(
    records: Sequence[PublicationRecord],
    labels: Mapping[str, str],
    out_dir: str | Path,
    options: AnalysisOptions = AnalysisOptions(),
) -> AnalysisResult:
    """Run every analysis over a labeled corpus and write the bundle."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    result = AnalysisResult(out_dir=out)
    communities_map = dict(options.communities or default_communities())

    produced: list[Path] = []

    def section(name: str):
        def runner(fn):
            try:
                made = fn()
                produced.extend(made)
            except Exception as exc:  # noqa: BLE001 - independent reports continue
                result.failures[name] = f"{type(exc).__name__}: {exc}"

        return runner

    pop = population_series(records, labels)
    out_ser = output_series(records, labels)

    @section("author_labels")
    def _():
        path = out / "author_labels.tsv"
        write_label_map(labels, path)
        return [path]

    @section("population")
    def _():
        path = out / "population.csv"
        rows = [
            (year, label, pop.new[label][year], pop.accumulated[label][year])
            for year in pop.years
            for label in pop.labels_present()
        ]
        _write_delimited(path, ["year", "label", "new_authors", "accumulated"], rows)
        return [path]

    @section("output")
    def _():
        path = out / "output.csv"
        rows = [
            (year, label, out_ser.values[label].get(year, 0.0))
            for year in out_ser.years
            for label in out_ser.labels_present()
        ]
        _write_delimited(path, ["year", "label", "fractional_papers"], rows)
        return [path]

    fits: dict[str, LogisticFit] = {}

    @section("logistic_fits")
    def _():
        path = out / "logistic_fits.csv"
        rows = []
        for label in pop.labels_present():
            points = [
                (float(y), float(pop.accumulated[label][y]))
                for y in pop.years
                if pop.accumulated[label][y] > 0
            ]
            if len(points) < 4:
                rows.append((label, "", "", "", "", "", "", "", "", "skipped:too-few-points"))
                continue
            try:
                fit = fit_logistic(points)
            except DegenerateDataError:
                rows.append((label, "", "", "", "", "", "", "", "", "skipped:constant-series"))
                continue
            fits[label] = fit
            rows.append(
                (
                    label,
                    fit.t0,
                    fit.p0,
                    fit.pm,
                    fit.r,
                    fit.residual,
                    fit.iterations,
                    fit.converged,
                    inflection_position(fit, float(pop.years[-1])),
                    "ok",
                )
            )
        _write_delimited(
            path,
            ["label", "t0", "p0", "pm", "r", "residual", "iterations", "converged", "inflection", "status"],
            rows,
        )
        return [path]

    @section("venue_ratios")
    def _():
        path = out / "venue_ratios.csv"
        rows = []
        for community in sorted(communities_map):
            venues = communities_map[community]
            series = venue_ratio_series(
                records,
                labels,
                group_a=options.group_a,
                group_b=options.group_b,
                venues=venues,
                window=options.window,
            )
            present = {row.venue for row in series.rows}
            for venue in venues:
                if venue.upper() not in present:
                    result.warnings.append(
                        f"venue {venue} ({community}) not present in corpus"
                    )
            for row in series.rows:
                rows.append(
                    (
                        community,
                        row.venue,
                        row.year,
                        row.count_a,
                        row.count_b,
                        row.ratio,
                        row.venue_size,
                    )
                )
        _write_delimited(
            path,
            ["community", "venue", "year", "group_a_unique", "group_b_unique", "ratio", "venue_size"],
            rows,
        )
        return [path]

    graph = build_graph(records, labels)
    cluster_report = None
    partition: list[list[str]] = []
    component_size = 0

    @section("coauthor_graph")
    def _():
        path = out / "graph_edges.tsv"
        rows = []
        for name in sorted(graph.adj):
            for nbr in sorted(graph.adj[name]):
                if name < nbr:
                    rows.append((name, nbr, graph.adj[name][nbr]))
        _write_delimited(path, ["source", "target", "weight"], rows, sep="\t")
        return [path]

    @section("clusters")
    def _():
        nonlocal cluster_report, partition, component_size
        made = []
        if graph.nodes:
            component = largest_component(graph)
            component_size = component.n_nodes()
            partition = detect_communities(
                component, seed=options.seed, restarts=options.restarts
            )
            cluster_report = cluster_stats(partition, labels, options.min_cluster_size)
            members_path = out / "cluster_members.tsv"
            rows = [
                (name, cluster.cluster_id, labels.get(name, lbl.OTH))
                for cluster in cluster_report.clusters
                for name in cluster.members
            ]
            _write_delimited(members_path, ["name", "cluster_id", "label"], rows, sep="\t")
            made.append(members_path)
        stats_path = out / "clusters.csv"
        reported = cluster_report.reported() if cluster_report else ()
        _write_delimited(
            stats_path,
            ["cluster_id", "size", "purity", "purity_label", "entropy"],
            [(c.cluster_id, c.size, c.purity, c.purity_label, c.entropy) for c in reported],
        )
        made.append(stats_path)
        return made

    matrices = []

    @section("collaboration_strength")
    def _():
        nonlocal matrices
        matrices = period_evolution(records, labels, options.periods, mode=options.collab_mode)
        made = []
        for matrix in matrices:
            tag = f"{matrix.period[0]}_{matrix.period[1]}"
            for kind, grid in (("cs", matrix.cs), ("ncs", matrix.ncs)):
                path = out / f"{kind}_{tag}.csv"
                rows = [
                    [label] + [grid[i, j] for j in range(len(matrix.labels))]
                    for i, label in enumerate(matrix.labels)
                ]
                _write_delimited(path, ["label", *matrix.labels], rows)
                made.append(path)
        return made

    if options.figures:
        from . import plots

        @section("figures")
        def _():
            fig_dir = out / "figures"
            fig_dir.mkdir(exist_ok=True)
            made = []
            if pop.years:
                made.append(plots.plot_population(pop, fig_dir / "population.png"))
            if out_ser.years:
                made.append(plots.plot_output(out_ser, fig_dir / "output.png"))
            if fits and pop.years:
                made.append(plots.plot_logistic_fits(pop, fits, fig_dir / "logistic_fits.png"))
            for community in sorted(communities_map):
                venues = communities_map[community]
                series = venue_ratio_series(
                    records,
                    labels,
                    group_a=options.group_a,
                    group_b=options.group_b,
                    venues=venues,
                    window=options.window,
                )
                if series.rows:
                    made.append(
                        plots.plot_venue_ratios(
                            series,
                            venues,
                            f"{community}: group A / group B unique names",
                            fig_dir / f"venue_ratio_{community}.png",
                        )
                    )
            if cluster_report and cluster_report.reported():
                made.append(
                    plots.plot_cluster_purity(cluster_report.reported(), fig_dir / "cluster_purity.png")
                )
            if matrices:
                made.append(plots.plot_collab_matrices(matrices, fig_dir / "collab_strength.png"))
            return made

    @section("series_bundle")
    def _():
        # one machine-readable document with every series, for plotting tools
        path = out / "series.json"
        bundle = {
            "population": {
                "years": list(pop.years),
                "new": {la: [pop.new[la][y] for y in pop.years] for la in pop.labels_present()},
                "accumulated": {
                    la: [pop.accumulated[la][y] for y in pop.years]
                    for la in pop.labels_present()
                },
            },
            "output": {
                "years": list(out_ser.years),
                "fractional_papers": {
                    la: [out_ser.values[la].get(y, 0.0) for y in out_ser.years]
                    for la in out_ser.labels_present()
                },
            },
        }
        path.write_text(json.dumps(bundle, sort_keys=True) + "\n", "utf-8")
        return [path]

    @section("summary")
    def _():
        path = out / "summary.json"
        years = [r.year for r in records]
        result.summary = {
            "n_records": len(records),
            "n_authors": len({a.normalized for r in records for a in r.authors}),
            "year_min": min(years) if years else None,
            "year_max": max(years) if years else None,
            "largest_component_size": component_size,
            "n_clusters": len(partition),
            "n_reported_clusters": len(cluster_report.reported()) if cluster_report else 0,
            "global_entropy": cluster_report.global_entropy if cluster_report else None,
            "modularity": modularity(largest_component(graph), partition)
            if partition
            else None,
            "labels_seen": sorted(set(labels.values())),
        }
        path.write_text(json.dumps(result.summary, indent=2, sort_keys=True) + "\n", "utf-8")
        return [path]

    for path in sorted(set(produced)):
        result.files[str(path.relative_to(out))] = _sha256(path)

    manifest = {
        "format_version": MANIFEST_FORMAT_VERSION,
        "kind": "namelens-analysis",
        "seed": options.seed,
        "config": {
            "periods": [list(p) for p in options.periods],
            "group_a": sorted(options.group_a),
            "group_b": sorted(options.group_b),
            "communities": {k: list(v) for k, v in sorted(communities_map.items())},
            "min_cluster_size": options.min_cluster_size,
            "window": options.window,
            "collab_mode": options.collab_mode,
            "figures": options.figures,
            "restarts": options.restarts,
        },
        "files": result.files,
        "failures": dict(sorted(result.failures.items())),
        "warnings": sorted(result.warnings),
        "summary": result.summary,
    }
    (out / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", "utf-8"
    )
    return result
