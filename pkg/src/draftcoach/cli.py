"""Batch and training entry points.

Exit codes: 0 success, 1 usage error, 2 data/format error (format errors
name the offending line).
"""

from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Optional

import click

from . import discourse, facets as facets_mod, features as features_mod
from . import align as align_mod
from . import genre as genre_mod
from .config import EngineConfig, load_config
from .errors import DraftcoachError
from .pipeline import AnalysisEngine, dumps_payload
from .textcore import build_document


def _engine(config_path: Optional[str]) -> AnalysisEngine:
    config = load_config(config_path) if config_path else EngineConfig()
    return AnalysisEngine.default(config)


@click.group()
def cli() -> None:
    """Abstract-writing feedback engine."""


@cli.command()
@click.argument("draft", type=click.Path(exists=True, dir_okay=False))
@click.option("--source", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--json", "as_json", is_flag=True, help="emit the service analyze payload")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
def analyze(draft: str, source: str, as_json: bool, config_path: Optional[str]) -> None:
    """Score a draft against its source introduction."""
    engine = _engine(config_path)
    source_doc = build_document(Path(source).read_text(encoding="utf-8"))
    payload = engine.analyze(Path(draft).read_text(encoding="utf-8"), source_doc)
    if as_json:
        click.echo(dumps_payload(payload))
        return
    labels = payload["organization"]["labels"]
    doc = build_document(Path(draft).read_text(encoding="utf-8"))
    click.echo("organization:")
    for i, (label, sentence) in enumerate(zip(labels, doc.sentences), start=1):
        snippet = sentence.text if len(sentence.text) <= 60 else sentence.text[:57] + "..."
        click.echo(f"  {i}. [{label}] {snippet}")
    missing = payload["organization"]["missing"]
    if missing:
        click.echo(f"missing genres: {', '.join(missing)}")
    click.echo("facets (1-7):")
    for facet in facets_mod.FACET_ORDER:
        value = payload["facets"][facet]
        shown = "undefined" if value is None else f"{value:.2f}"
        click.echo(f"  {facet:>17}: {shown}")
    overall = payload["overall"]
    click.echo(f"  {'overall':>17}: {overall:.2f}" if overall is not None else "  overall: undefined")
    for tip in payload["guidance"]:
        click.echo(f"tip: {tip}")


@cli.command()
@click.argument("abstract", type=click.Path(exists=True, dir_okay=False))
@click.option("--source", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--k", type=int, required=True)
def align(abstract: str, source: str, k: int) -> None:
    """Dump the abstract-to-source alignment map as JSON."""
    abstract_doc = build_document(Path(abstract).read_text(encoding="utf-8"))
    source_doc = build_document(Path(source).read_text(encoding="utf-8"))
    amap = align_mod.build(abstract_doc, source_doc, k)
    click.echo(json.dumps(amap.to_dict(), sort_keys=True, indent=2))


@cli.command("train-genre")
@click.argument("rct_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--alpha", type=float, default=1.0, show_default=True)
@click.option("--label-map", "label_map_path", type=click.Path(exists=True, dir_okay=False))
def train_genre(rct_file: str, out: str, alpha: float, label_map_path: Optional[str]) -> None:
    """Train the genre classifier from an RCT-format corpus."""
    label_map = genre_mod.load_label_map(label_map_path) if label_map_path else None
    lines = Path(rct_file).read_text(encoding="utf-8").splitlines()
    records = genre_mod.parse_rct(lines, label_map=label_map)
    model = genre_mod.train(records, alpha=alpha)
    model.save(out)
    n = sum(len(r.sentences) for r in records)
    click.echo(f"trained on {n} sentences from {len(records)} records -> {out}")


@cli.command("train-boundary")
@click.argument("gold_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.option("--reg", type=float, default=1.0, show_default=True)
def train_boundary_cmd(gold_file: str, out: str, reg: float) -> None:
    """Train the EDU boundary classifier from gold EDU annotations."""
    lines = Path(gold_file).read_text(encoding="utf-8").splitlines()
    gold = discourse.parse_gold_edus(lines)
    corpus = discourse.gold_boundary_corpus(gold)
    model = discourse.train_boundary(corpus, reg=reg)
    Path(out).write_text(
        json.dumps(
            {"schema": 1, "weights": model.weights, "bias": model.bias, "reg": model.reg},
            sort_keys=True,
        ),
        encoding="utf-8",
    )
    click.echo(f"trained boundary model on {len(corpus)} sentences -> {out}")


@cli.command("score-corpus")
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option("--fit-norms", is_flag=True, help="also refit normalization stats")
@click.option("--norms-out", type=click.Path(dir_okay=False), help="where to write the refitted weights config")
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
def score_corpus(directory: str, fit_norms: bool, norms_out: Optional[str], config_path: Optional[str]) -> None:
    """Score every text in a directory; emits a TSV of feature vectors.

    `<name>.abstract.txt` + `<name>.intro.txt` pairs are scored with the
    intro as source; other `.txt` files are scored standalone.
    """
    engine = _engine(config_path)
    rows = score_directory(engine, Path(directory))
    header = ["name", *features_mod.FEATURE_NAMES]
    click.echo("\t".join(header))
    for name, fv in rows:
        values = fv.as_dict()
        cells = [name] + [
            "" if values[f] is None else repr(values[f]) for f in features_mod.FEATURE_NAMES
        ]
        click.echo("\t".join(cells))
    if fit_norms:
        weights = fit_norms_from_rows(engine, [fv for _, fv in rows])
        text = json.dumps(facets_mod.dump_weights(weights), indent=2, sort_keys=True)
        if norms_out:
            Path(norms_out).write_text(text, encoding="utf-8")
            click.echo(f"wrote refitted weights config -> {norms_out}", err=True)
        else:
            click.echo(text, err=True)


def score_directory(engine: AnalysisEngine, directory: Path) -> list[tuple[str, features_mod.FeatureVector]]:
    rows = []
    files = sorted(directory.glob("*.txt"))
    intros = {p.name[: -len(".intro.txt")]: p for p in files if p.name.endswith(".intro.txt")}
    for path in files:
        if path.name.endswith(".intro.txt"):
            continue
        name = path.name[: -len(".txt")]
        source = None
        if path.name.endswith(".abstract.txt"):
            name = path.name[: -len(".abstract.txt")]
            intro = intros.get(name)
            if intro is not None:
                source = build_document(intro.read_text(encoding="utf-8"))
        doc = build_document(path.read_text(encoding="utf-8"))
        rows.append((name, engine.feature_vector(doc, source)))
    return rows


def fit_norms_from_rows(
    engine: AnalysisEngine, vectors: list[features_mod.FeatureVector]
) -> facets_mod.FacetWeights:
    """Refit per-feature mean/sd from scored vectors, keeping weights as-is.

    Features that never occur (or have zero spread) keep their current norms.
    """
    import math
    from dataclasses import replace as dc_replace

    base = engine.weights or facets_mod.default_weights()
    norms = dict(base.norms)
    for name in features_mod.FEATURE_NAMES:
        values = [fv.as_dict()[name] for fv in vectors if fv.as_dict()[name] is not None]
        if len(values) < 2:
            continue
        mean = sum(values) / len(values)
        var = sum((v - mean) ** 2 for v in values) / (len(values) - 1)
        sd = math.sqrt(var)
        if sd <= 0:
            continue
        norms[name] = (mean, sd)
    refit = dc_replace(base, norms=norms, version=base.version + "+refit")
    refit.validate()
    return refit


@cli.command()
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--root", type=click.Path(file_okay=False), default="./draftcoach-data", show_default=True)
@click.option("--ui-dir", type=click.Path(file_okay=False), default=None)
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False))
def serve(port: int, host: str, root: str, ui_dir: Optional[str], config_path: Optional[str]) -> None:
    """Run the HTTP service (and static UI when --ui-dir is given)."""
    import uvicorn

    from .server import create_app
    from .session import ProjectStore

    store = ProjectStore(root, engine=_engine(config_path))
    app = create_app(store, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port)


def main(argv: Optional[list[str]] = None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except click.UsageError as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.ClickException as exc:
        exc.show(file=sys.stderr)
        return 1
    except click.exceptions.Abort:
        return 1
    except DraftcoachError as exc:
        click.echo(f"error [{exc.code}]: {exc.message}", err=True)
        return 2


if __name__ == "__main__":
    sys.exit(main())
