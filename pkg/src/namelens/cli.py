"""Command-line interface: train, classify and analyze.

Exit codes: 0 on success, 1 when an analysis finished with partial failures,
2 on usage or input errors. All randomness flows from --seed, and reruns with
identical inputs, config and seed produce byte-identical outputs.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass, fields
from pathlib import Path

import click

from . import labels as lbl
from .classifier import (
    Hyperparameters,
    evaluate,
    load_model,
    predict,
    save_model,
    split,
    train,
)
from .collab import DEFAULT_PERIODS
from .corpus import (
    label_authors,
    load_labeled_names,
    load_publications,
    read_label_map,
)
from .errors import EmptyNameError, NamelensError
from .report import AnalysisOptions, run_analysis

_FLOAT_FMT = "{:.10g}".format


@dataclass
class RunConfig:
    """Defaults that a JSON --config file may override; flags win over both."""

    seed: int = 0
    ratio: float = 0.7
    l2: float = 1e-4
    max_epochs: int = 500
    min_cluster_size: int = 10
    window: str = "cumulative"
    collab_mode: str = "fractional"
    figures: bool = True
    restarts: int = 8
    periods: list[list[int]] | None = None
    groups: dict[str, list[str]] | None = None
    communities: dict[str, list[str]] | None = None

    @classmethod
    def load(cls, path: str | None) -> "RunConfig":
        config = cls()
        if path is None:
            return config
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise click.ClickException(f"cannot read config {path}: {exc}") from exc
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise click.ClickException(f"unknown config keys: {sorted(unknown)}")
        for key, value in data.items():
            setattr(config, key, value)
        return config


def _fail_usage(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _parse_periods(text: str) -> tuple[tuple[int, int], ...]:
    periods = []
    for chunk in text.split(","):
        start, _, end = chunk.strip().partition("-")
        try:
            periods.append((int(start), int(end)))
        except ValueError:
            raise click.BadParameter(f"period must look like 1991-2000, got {chunk!r}")
    return tuple(periods)


def _parse_groups(text: str) -> tuple[frozenset[str], frozenset[str]]:
    parts = text.split(":")
    if len(parts) != 2:
        raise click.BadParameter('groups must look like "CHI+JAP:ENG+GER"')
    sets = []
    for part in parts:
        members = frozenset(p.strip().upper() for p in part.split("+") if p.strip())
        bad = members - set(lbl.ALL_LABELS)
        if bad:
            raise click.BadParameter(f"unknown labels in groups: {sorted(bad)}")
        sets.append(members)
    return sets[0], sets[1]


@click.group()
@click.version_option(package_name="namelens")
def main() -> None:
    """Name-driven classification and bibliometric analysis."""


@main.command("train")
@click.option("--input", "input_path", required=True, help="labeled names TSV (name<TAB>tag)")
@click.option("--model", "model_path", required=True, help="where to write the model JSON")
@click.option("--out", "out_dir", required=True, help="directory for the evaluation report")
@click.option("--seed", type=int, default=None, help="split/training seed")
@click.option("--ratio", type=float, default=None, help="training fraction of the split")
@click.option("--l2", type=float, default=None, help="L2 regularization strength")
@click.option("--epochs", type=int, default=None, help="epoch budget")
@click.option("--config", "config_path", default=None, help="JSON config overriding defaults")
def cmd_train(input_path, model_path, out_dir, seed, ratio, l2, epochs, config_path):
    """Train a classifier on labeled names and report held-out quality."""
    config = RunConfig.load(config_path)
    seed = config.seed if seed is None else seed
    ratio = config.ratio if ratio is None else ratio
    hyper = Hyperparameters(
        l2=config.l2 if l2 is None else l2,
        max_epochs=config.max_epochs if epochs is None else epochs,
    )
    if not Path(input_path).exists():
        _fail_usage(f"input file not found: {input_path}")
    try:
        data, rejects = load_labeled_names(input_path)
        train_part, test_part = split(data, ratio, seed)
        model = train(train_part, hyper, seed)
        report = evaluate(model, test_part)
    except NamelensError as exc:
        _fail_usage(str(exc))
        return

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    save_model(model, model_path)

    rows = [
        (
            label,
            report.per_class[label].support,
            _FLOAT_FMT(report.per_class[label].precision),
            _FLOAT_FMT(report.per_class[label].recall),
            _FLOAT_FMT(report.per_class[label].f1),
        )
        for label in model.classes
    ]
    lines = ["label,names,precision,recall,f1"]
    lines.extend(",".join(str(v) for v in row) for row in rows)
    (out / "evaluation_per_class.csv").write_text("\n".join(lines) + "\n", "utf-8")

    conf_lines = ["true\\predicted," + ",".join(model.classes)]
    for i, label in enumerate(model.classes):
        conf_lines.append(label + "," + ",".join(str(int(v)) for v in report.confusion[i]))
    (out / "confusion_matrix.csv").write_text("\n".join(conf_lines) + "\n", "utf-8")

    if rejects:
        reject_lines = [f"{r.line_no}\t{r.reason}" for r in rejects]
        (out / "rejects.tsv").write_text("\n".join(reject_lines) + "\n", "utf-8")

    summary = {
        "accuracy": report.accuracy,
        "seed": seed,
        "ratio": ratio,
        "n_total": len(data),
        "n_train": len(train_part),
        "n_test": len(test_part),
        "n_rejected": len(rejects),
        "hyperparameters": hyper.to_dict(),
        "model_file": str(model_path),
    }
    (out / "training_summary.json").write_text(
        json.dumps(summary, indent=2, sort_keys=True) + "\n", "utf-8"
    )
    click.echo(f"accuracy {report.accuracy:.4f} on {len(test_part)} held-out names")


@main.command("classify")
@click.option("--model", "model_path", required=True, help="model JSON from train")
@click.option("--input", "input_path", default=None, help="names file, one per line (default stdin)")
@click.option("--out", "out_path", default=None, help="output TSV (default stdout)")
@click.option("--top", "top_k", type=int, default=3, help="ranked candidates per name")
def cmd_classify(model_path, input_path, out_path, top_k):
    """Classify names: decided label plus the top ranked candidates."""
    if not Path(model_path).exists():
        _fail_usage(f"model file not found: {model_path}")
    model = load_model(model_path)
    if input_path is not None:
        if not Path(input_path).exists():
            _fail_usage(f"input file not found: {input_path}")
        raw_lines = Path(input_path).read_text(encoding="utf-8").splitlines()
    else:
        raw_lines = [line.rstrip("\n") for line in sys.stdin]

    out_lines = []
    for raw in raw_lines:
        if not raw.strip():
            continue
        try:
            prediction = predict(model, raw)
        except EmptyNameError as exc:
            out_lines.append(f"{raw}\tERROR\t{exc}")
            continue
        ranked = "\t".join(
            f"{label}\t{_FLOAT_FMT(conf)}" for label, conf in prediction.top(top_k)
        )
        out_lines.append(f"{raw}\t{prediction.decided}\t{ranked}")
    text = "\n".join(out_lines) + ("\n" if out_lines else "")
    if out_path is None:
        click.echo(text, nl=False)
    else:
        Path(out_path).write_text(text, encoding="utf-8")


@main.command("analyze")
@click.option("--input", "input_path", required=True, help="publications JSONL")
@click.option("--model", "model_path", default=None, help="model JSON used to label authors")
@click.option("--labels", "labels_path", default=None, help="precomputed name<TAB>label map")
@click.option("--out", "out_dir", required=True, help="output bundle directory")
@click.option("--seed", type=int, default=None)
@click.option("--periods", "periods_text", default=None, help='e.g. "1936-1980,1981-1990"')
@click.option("--groups", "groups_text", default=None, help='e.g. "CHI+JAP:ENG+GER"')
@click.option("--min-cluster-size", type=int, default=None, help="report clusters at least this big")
@click.option("--window", type=click.Choice(["cumulative", "per-year"]), default=None)
@click.option("--no-figures", is_flag=True, default=False, help="skip figure rendering")
@click.option("--config", "config_path", default=None, help="JSON config overriding defaults")
def cmd_analyze(
    input_path,
    model_path,
    labels_path,
    out_dir,
    seed,
    periods_text,
    groups_text,
    min_cluster_size,
    window,
    no_figures,
    config_path,
):
    """Run the full analysis suite over a publications corpus."""
    config = RunConfig.load(config_path)
    if (model_path is None) == (labels_path is None):
        _fail_usage("exactly one of --model or --labels is required")
    if not Path(input_path).exists():
        _fail_usage(f"input file not found: {input_path}")

    if config.groups is not None:
        group_a = frozenset(config.groups.get("a", sorted(lbl.ASIAN_GROUP)))
        group_b = frozenset(config.groups.get("b", sorted(lbl.EUROPEAN_GROUP)))
    else:
        group_a, group_b = lbl.ASIAN_GROUP, lbl.EUROPEAN_GROUP
    if groups_text is not None:
        group_a, group_b = _parse_groups(groups_text)

    periods = tuple(tuple(p) for p in config.periods) if config.periods else DEFAULT_PERIODS
    if periods_text is not None:
        periods = _parse_periods(periods_text)

    try:
        records, rejects = load_publications(input_path)
        if labels_path is not None:
            if not Path(labels_path).exists():
                _fail_usage(f"labels file not found: {labels_path}")
            labels = read_label_map(labels_path)
        else:
            if not Path(model_path).exists():
                _fail_usage(f"model file not found: {model_path}")
            labels = label_authors(records, load_model(model_path))
    except NamelensError as exc:
        _fail_usage(str(exc))
        return

    options = AnalysisOptions(
        seed=config.seed if seed is None else seed,
        periods=periods,
        group_a=group_a,
        group_b=group_b,
        communities=config.communities,
        min_cluster_size=config.min_cluster_size if min_cluster_size is None else min_cluster_size,
        window=config.window if window is None else window,
        collab_mode=config.collab_mode,
        figures=config.figures and not no_figures,
        restarts=config.restarts,
    )
    result = run_analysis(records, labels, out_dir, options)
    for warning in sorted(result.warnings):
        click.echo(f"warning: {warning}", err=True)
    if rejects:
        reject_lines = [f"{r.line_no}\t{r.reason}" for r in rejects]
        (Path(out_dir) / "rejects.tsv").write_text("\n".join(reject_lines) + "\n", "utf-8")
        click.echo(f"warning: {len(rejects)} record(s) rejected, see rejects.tsv", err=True)

    click.echo(f"wrote {len(result.files)} files to {out_dir}")
    if not result.ok:
        for name, error in sorted(result.failures.items()):
            click.echo(f"warning: report {name} failed: {error}", err=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
