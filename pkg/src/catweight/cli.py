"""Command-line entry point.

Subcommands: ``cv`` (k-fold cross-validation grid), ``curve`` (learning
curve on a fixed holdout), ``weights`` (weight-table export),
``vectorize`` (document vectors as TSV), ``train`` (fit and persist a
model), ``predict`` (classify raw text with a persisted model).

Every run resolves its configuration as command-line flags over an
optional JSON config file (``--config``) over built-in defaults, and
writes a ``<out>.manifest.json`` sidecar capturing the resolved
configuration, so reruns are reproducible byte for byte (``--jobs 1``).
Seeds are always explicit; there is no wall-clock default.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .classify import TrainConfig, load_model, predict_many, save_model, train_logreg, train_svm
from .corpus import (
    Document,
    LabeledCorpus,
    TokenizerConfig,
    load_20ng,
    load_csv,
    load_jsonl,
    make_splits,
    sample,
    tokenize,
)
from .embeddings import EmbeddingModel, load_embeddings, synthetic_model
from .errors import CatweightError, ConfigError
from .evaluation import (
    CLASSIFIERS,
    GridFailure,
    grid_run,
    learning_curve,
    write_curve_csv,
    write_results_csv,
)
from .stats import build_stats
from .vectorize import (
    CorpusVectorizer,
    standardize_apply,
    standardize_fit,
)
from .weighting import (
    DEFAULT_ALPHA,
    SCHEMES,
    WeightTable,
    build_table,
    export_weights,
    table_from_payload,
    table_payload,
)

_DATASET_FORMATS = ("auto", "csv", "tsv", "jsonl", "20ng")

_DEFAULTS = {
    "format": "auto",
    "embedding_format": "auto",
    "scheme": "tfcr",
    "classifier": "logreg",
    "k": 10,
    "seed": None,
    "alpha": DEFAULT_ALPHA,
    "standardize": False,
    "stratified": False,
    "preserve_case": False,
    "case_fallback": False,
    "kld_raw": False,
    "sample": None,
    "min_count": 1,
    "jobs": 1,
    "epochs": 100,
    "learning_rate": 0.1,
    "decay": 1e-3,
    "l2": 1e-4,
    "batch_size": 64,
    "tolerance": 1e-6,
    "text_field": "text",
    "label_field": "label",
    "top_k": None,
    "output_format": "json",
    "sizes": None,
    "min": None,
    "max": None,
    "step": None,
    "input": "-",
}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="catweight",
        description="Supervised term weighting over word embeddings: "
        "TF-CR and baselines, linear classifiers, CV harness.",
    )
    parser.add_argument("--version", action="version", version=f"catweight {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, *, data=True, embedding=True, learner=True):
        p.add_argument("--config", help="JSON config file; flags take precedence")
        p.add_argument("--seed", type=int, help="random seed (required; no wall-clock default)")
        p.add_argument("--out", help="output file path")
        if data:
            p.add_argument("--data", help="dataset path (file or directory)")
            p.add_argument("--format", choices=_DATASET_FORMATS, help="dataset format")
            p.add_argument("--text-field", help="text column/key for csv/jsonl")
            p.add_argument("--label-field", help="label column/key for csv/jsonl")
            p.add_argument("--preserve-case", action="store_true", default=None)
            p.add_argument("--sample", type=int, help="cap the corpus at N documents")
            p.add_argument("--min-count", type=int, help="prune words below this count")
        if embedding:
            p.add_argument("--embedding", help="embedding file path or synthetic:<d>:<seed>")
            p.add_argument(
                "--embedding-format",
                choices=("auto", "glove", "word2vec-text", "word2vec-binary"),
            )
            p.add_argument("--case-fallback", action="store_true", default=None)
        if learner:
            p.add_argument("--alpha", type=float, help="TF-TRR alpha constant")
            p.add_argument("--kld-raw", action="store_true", default=None)
            p.add_argument("--standardize", action="store_true", default=None)
            p.add_argument("--epochs", type=int)
            p.add_argument("--learning-rate", type=float)
            p.add_argument("--decay", type=float)
            p.add_argument("--l2", type=float)
            p.add_argument("--batch-size", type=int)
            p.add_argument("--tolerance", type=float)

    p_cv = sub.add_parser("cv", help="k-fold cross-validation over a scheme/classifier grid")
    add_common(p_cv)
    p_cv.add_argument("--scheme", help="scheme, comma list, or 'all'")
    p_cv.add_argument("--classifier", help="classifier, comma list, or 'all'")
    p_cv.add_argument("--k", type=int, help="number of folds")
    p_cv.add_argument("--stratified", action="store_true", default=None)
    p_cv.add_argument("--jobs", type=int, help="parallel grid cells (1 = deterministic)")

    p_curve = sub.add_parser("curve", help="learning curve on a fixed holdout")
    add_common(p_curve)
    p_curve.add_argument("--scheme", help="scheme, comma list, or 'all'")
    p_curve.add_argument("--classifier", help="single classifier")
    p_curve.add_argument("--k", type=int, help="holdout = 1/k of the corpus")
    p_curve.add_argument("--stratified", action="store_true", default=None)
    p_curve.add_argument("--sizes", help="explicit comma-separated ladder")
    p_curve.add_argument("--min", type=int, help="smallest training size")
    p_curve.add_argument("--max", type=int, help="largest training size")
    p_curve.add_argument("--step", type=int, help="ladder step")

    p_weights = sub.add_parser("weights", help="export a weight table")
    add_common(p_weights, embedding=False, learner=False)
    p_weights.add_argument("--scheme", help="one of tfidf, kld, tftrr, tfcr")
    p_weights.add_argument("--alpha", type=float)
    p_weights.add_argument("--kld-raw", action="store_true", default=None)
    p_weights.add_argument("--top-k", type=int, help="keep only the top K words per category")
    p_weights.add_argument("--output-format", choices=("json", "tsv"))

    p_vec = sub.add_parser("vectorize", help="emit document vectors as TSV")
    add_common(p_vec)
    p_vec.add_argument("--scheme", help="single scheme")

    p_train = sub.add_parser("train", help="train and persist a model")
    add_common(p_train)
    p_train.add_argument("--scheme", help="single scheme")
    p_train.add_argument("--classifier", help="logreg or svm")

    p_pred = sub.add_parser("predict", help="classify raw text lines with a saved model")
    p_pred.add_argument("--config", help="JSON config file; flags take precedence")
    p_pred.add_argument("--model", help="model file written by train")
    p_pred.add_argument("--embedding", help="override the embedding recorded at training time")
    p_pred.add_argument(
        "--embedding-format",
        choices=("auto", "glove", "word2vec-text", "word2vec-binary"),
    )
    p_pred.add_argument("--input", help="text file with one document per line, or - for stdin")
    p_pred.add_argument("--out", help="output TSV path")
    return parser


def _resolve(args: argparse.Namespace) -> dict:
    """flags > config file > defaults, for every key the command knows."""
    file_cfg = {}
    if getattr(args, "config", None):
        path = Path(args.config)
        if not path.is_file():
            raise ConfigError(f"config file not found: {path}")
        try:
            file_cfg = json.loads(path.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        if not isinstance(file_cfg, dict):
            raise ConfigError(f"{path}: config must be a JSON object")
    resolved = {}
    for key, value in vars(args).items():
        if key in ("command", "config"):
            continue
        if value is not None:
            resolved[key] = value
        elif key in file_cfg and file_cfg[key] is not None:
            resolved[key] = file_cfg[key]
        else:
            resolved[key] = _DEFAULTS.get(key)
    return resolved


def _require(cfg: dict, key: str, flag: str):
    if cfg.get(key) is None:
        raise ConfigError(f"{flag} is required")
    return cfg[key]


def _expand(value: str, valid: tuple[str, ...], what: str) -> list[str]:
    if value == "all":
        return list(valid)
    names = [v.strip() for v in str(value).split(",") if v.strip()]
    if not names:
        raise ConfigError(f"no {what} given")
    for name in names:
        if name not in valid:
            raise ConfigError(
                f"unknown {what} {name!r}; valid: {', '.join(valid)}"
            )
    return names


def _detect_dataset_format(path: Path) -> str:
    if path.is_dir():
        return "20ng"
    suffix = path.suffix.lower()
    if suffix == ".csv":
        return "csv"
    if suffix == ".tsv":
        return "tsv"
    if suffix in (".jsonl", ".json", ".ndjson"):
        return "jsonl"
    raise ConfigError(
        f"cannot infer dataset format from {path}; pass --format explicitly"
    )


def _load_corpus(cfg: dict) -> LabeledCorpus:
    path = Path(_require(cfg, "data", "--data"))
    if not path.exists():
        raise ConfigError(f"dataset not found: {path}")
    fmt = cfg["format"]
    if fmt == "auto":
        fmt = _detect_dataset_format(path)
    tokenizer = TokenizerConfig(preserve_case=bool(cfg.get("preserve_case")))
    if fmt == "20ng":
        corpus = load_20ng(path, tokenizer)
    elif fmt in ("csv", "tsv"):
        corpus = load_csv(
            path,
            text_column=cfg["text_field"],
            label_column=cfg["label_field"],
            delimiter="," if fmt == "csv" else "\t",
            tokenizer=tokenizer,
        )
    elif fmt == "jsonl":
        corpus = load_jsonl(
            path, text_key=cfg["text_field"], label_key=cfg["label_field"], tokenizer=tokenizer
        )
    else:
        raise ConfigError(f"unknown dataset format {fmt!r}")
    if cfg.get("sample"):
        corpus = sample(corpus, int(cfg["sample"]), int(_require(cfg, "seed", "--seed")))
    return corpus


def _parse_synthetic_spec(spec: str) -> tuple[int, int]:
    parts = spec.split(":")
    if len(parts) != 3 or parts[0] != "synthetic":
        raise ConfigError(
            f"bad synthetic embedding spec {spec!r}; expected synthetic:<d>:<seed>"
        )
    try:
        return int(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(
            f"bad synthetic embedding spec {spec!r}; d and seed must be integers"
        ) from None


def _resolve_embedding(cfg: dict, vocab) -> EmbeddingModel:
    spec = _require(cfg, "embedding", "--embedding")
    if str(spec).startswith("synthetic:"):
        d, emb_seed = _parse_synthetic_spec(str(spec))
        return synthetic_model(vocab, d, emb_seed)
    path = Path(spec)
    if not path.is_file():
        raise ConfigError(f"embedding file not found: {path}")
    return load_embeddings(path, cfg.get("embedding_format") or "auto")


def _corpus_vocab(corpus: LabeledCorpus) -> list[str]:
    seen: set[str] = set()
    for counts in corpus.token_counts():
        seen.update(counts)
    return sorted(seen)


def _train_config(cfg: dict) -> TrainConfig:
    return TrainConfig(
        epochs=int(cfg["epochs"]),
        learning_rate=float(cfg["learning_rate"]),
        decay=float(cfg["decay"]),
        l2=float(cfg["l2"]),
        batch_size=int(cfg["batch_size"]),
        seed=int(cfg["seed"]),
        tolerance=float(cfg["tolerance"]),
    )


def _jsonable(value):
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, (np.floating,)):
        return float(value)
    return value


def _write_manifest(out: Path, command: str, cfg: dict, extra: dict | None = None) -> Path:
    manifest = {
        "artifact": "catweight",
        "version": __version__,
        "command": command,
        "config": {k: _jsonable(v) for k, v in sorted(cfg.items())},
    }
    if extra:
        manifest.update(extra)
    path = Path(str(out) + ".manifest.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True, ensure_ascii=False)
        fh.write("\n")
    return path


def _summary_table(results, schemes, dataset: str) -> str:
    """Schemes as columns, one row per embedding x classifier."""
    cells = {}
    rows = []
    for (scheme, emb, clf), report in results.items():
        if (emb, clf) not in cells:
            cells[(emb, clf)] = {}
            rows.append((emb, clf))
        if isinstance(report, GridFailure):
            cells[(emb, clf)][scheme] = "failed"
        else:
            cells[(emb, clf)][scheme] = f"{report.mean_macro_f1:.4f}"
    emb_w = max([len(e) for e, _ in rows] + [len("embedding")])
    clf_w = max([len(c) for _, c in rows] + [len("classifier")])
    header = (
        f"{'dataset':<{max(len(dataset), 7)}}  {'embedding':<{emb_w}}  "
        f"{'classifier':<{clf_w}}  " + "  ".join(f"{s:>8}" for s in schemes)
    )
    lines = [header]
    for emb, clf in rows:
        row = cells[(emb, clf)]
        lines.append(
            f"{dataset:<{max(len(dataset), 7)}}  {emb:<{emb_w}}  {clf:<{clf_w}}  "
            + "  ".join(f"{row.get(s, ''):>8}" for s in schemes)
        )
    return "\n".join(lines)


def cmd_cv(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    seed = int(_require(cfg, "seed", "--seed"))
    schemes = _expand(cfg["scheme"], SCHEMES, "scheme")
    classifiers = _expand(cfg["classifier"], CLASSIFIERS, "classifier")
    corpus = _load_corpus(cfg)
    embedding = _resolve_embedding(cfg, _corpus_vocab(corpus))
    plan = make_splits(
        corpus, int(cfg["k"]), seed=seed, stratified=bool(cfg["stratified"])
    )
    dataset = Path(cfg["data"]).name
    results = grid_run(
        corpus,
        schemes,
        [embedding],
        classifiers,
        plan,
        _train_config(cfg),
        alpha=float(cfg["alpha"]),
        kld_raw=bool(cfg["kld_raw"]),
        standardize=bool(cfg["standardize"]),
        case_fallback=bool(cfg["case_fallback"]),
        dataset=dataset,
        jobs=int(cfg["jobs"]),
        min_count=int(cfg["min_count"]),
    )
    out = Path(cfg.get("out") or "results.csv")
    with open(out, "w", encoding="utf-8", newline="") as fh:
        write_results_csv(results, fh, dataset)
    _write_manifest(out, "cv", cfg)
    print(_summary_table(results, schemes, dataset))
    print(f"results written to {out}")
    if all(isinstance(r, GridFailure) for r in results.values()):
        for report in results.values():
            print(f"error: {report.message}", file=sys.stderr)
        return 1
    return 0


def _curve_sizes(cfg: dict, available: int) -> list[int]:
    if cfg.get("sizes"):
        raw = cfg["sizes"]
        parts = raw.split(",") if isinstance(raw, str) else list(raw)
        try:
            sizes = sorted({int(p) for p in parts})
        except ValueError:
            raise ConfigError(f"bad --sizes value {raw!r}") from None
    else:
        lo, hi, step = cfg.get("min"), cfg.get("max"), cfg.get("step")
        if lo is None or hi is None or step is None:
            raise ConfigError("curve needs --sizes or all of --min/--max/--step")
        if lo < 1 or hi < lo or step < 1:
            raise ConfigError(f"bad ladder bounds min={lo} max={hi} step={step}")
        sizes = list(range(int(lo), int(hi) + 1, int(step)))
    kept = [s for s in sizes if s <= available]
    if len(kept) < len(sizes):
        print(
            f"warning: ladder truncated to {available} available training "
            f"documents ({len(sizes) - len(kept)} sizes dropped)",
            file=sys.stderr,
        )
    if not kept:
        raise ConfigError(
            f"no ladder size fits the {available} available training documents"
        )
    return kept


def cmd_curve(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    seed = int(_require(cfg, "seed", "--seed"))
    schemes = _expand(cfg["scheme"], SCHEMES, "scheme")
    classifiers = _expand(cfg["classifier"], CLASSIFIERS, "classifier")
    if len(classifiers) != 1:
        raise ConfigError("curve takes exactly one classifier")
    corpus = _load_corpus(cfg)
    k = int(cfg["k"])
    holdout = len(corpus) // k if k >= 2 else 0
    if holdout < 1:
        raise ConfigError(f"corpus of {len(corpus)} documents cannot hold out 1/{k}")
    sizes = _curve_sizes(cfg, len(corpus) - holdout)
    embedding = _resolve_embedding(cfg, _corpus_vocab(corpus))
    plan = make_splits(
        corpus, k, ladder=sizes, seed=seed, stratified=bool(cfg["stratified"])
    )
    points = learning_curve(
        corpus,
        plan,
        schemes,
        embedding,
        classifiers[0],
        _train_config(cfg),
        alpha=float(cfg["alpha"]),
        kld_raw=bool(cfg["kld_raw"]),
        standardize=bool(cfg["standardize"]),
        case_fallback=bool(cfg["case_fallback"]),
        min_count=int(cfg["min_count"]),
    )
    out = Path(cfg.get("out") or "curve.csv")
    with open(out, "w", encoding="utf-8", newline="") as fh:
        write_curve_csv(points, schemes, fh)
    _write_manifest(out, "curve", cfg)
    header = ["train_size"] + [f"{s:>8}" for s in schemes]
    print("  ".join(f"{h:>10}" if i == 0 else h for i, h in enumerate(header)))
    for point in points:
        row = [f"{point.training_size:>10}"] + [
            f"{point.scores[s]:>8.4f}" for s in schemes
        ]
        print("  ".join(row))
    print(f"curve written to {out}")
    return 0


def cmd_weights(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    _require(cfg, "seed", "--seed")
    scheme = str(_require(cfg, "scheme", "--scheme"))
    if scheme == "none":
        raise ConfigError("scheme 'none' has no weights to export")
    if scheme not in SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}; valid: {', '.join(SCHEMES)}")
    top_k = cfg.get("top_k")
    if top_k is not None and int(top_k) < 1:
        raise ConfigError(f"--top-k must be >= 1, got {top_k}")
    corpus = _load_corpus(cfg)
    stats = build_stats(corpus, min_count=int(cfg["min_count"]))
    table = build_table(
        stats, scheme, alpha=float(cfg["alpha"]), kld_raw=bool(cfg["kld_raw"])
    )
    fmt = cfg["output_format"]
    out = Path(cfg.get("out") or f"weights.{fmt}")
    with open(out, "w", encoding="utf-8", newline="") as fh:
        export_weights(table, fh, fmt=fmt, top=None if top_k is None else int(top_k))
    _write_manifest(out, "weights", cfg)
    print(f"{scheme} weights for {len(table.words)} words written to {out}")
    return 0


def _full_corpus_table(corpus, cfg: dict, scheme: str) -> WeightTable:
    if scheme == "none":
        return WeightTable(scheme="none", categories=tuple(corpus.categories))
    stats = build_stats(corpus, min_count=int(cfg["min_count"]))
    return build_table(
        stats, scheme, alpha=float(cfg["alpha"]), kld_raw=bool(cfg["kld_raw"])
    )


def cmd_vectorize(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    _require(cfg, "seed", "--seed")
    scheme = str(_require(cfg, "scheme", "--scheme"))
    if scheme not in SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}; valid: {', '.join(SCHEMES)}")
    corpus = _load_corpus(cfg)
    embedding = _resolve_embedding(cfg, _corpus_vocab(corpus))
    table = _full_corpus_table(corpus, cfg, scheme)
    vec = CorpusVectorizer(corpus.documents, embedding, bool(cfg["case_fallback"]))
    X = vec.matrix(table)
    out = Path(cfg.get("out") or "vectors.tsv")
    with open(out, "w", encoding="utf-8") as fh:
        for i, doc in enumerate(corpus.documents):
            label = "" if doc.label is None else corpus.categories[doc.label]
            row = "\t".join(repr(float(v)) for v in X[i])
            fh.write(f"{doc.source_id}\t{label}\t{row}\n")
    _write_manifest(out, "vectorize", cfg)
    print(f"{X.shape[0]} vectors of dimension {X.shape[1]} written to {out}")
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    seed = int(_require(cfg, "seed", "--seed"))
    scheme = str(_require(cfg, "scheme", "--scheme"))
    if scheme not in SCHEMES:
        raise ConfigError(f"unknown scheme {scheme!r}; valid: {', '.join(SCHEMES)}")
    classifier = str(cfg["classifier"])
    if classifier not in CLASSIFIERS:
        raise ConfigError(
            f"unknown classifier {classifier!r}; valid: {', '.join(CLASSIFIERS)}"
        )
    corpus = _load_corpus(cfg)
    embedding = _resolve_embedding(cfg, _corpus_vocab(corpus))
    table = _full_corpus_table(corpus, cfg, scheme)
    vec = CorpusVectorizer(corpus.documents, embedding, bool(cfg["case_fallback"]))
    X = vec.matrix(table)
    labels = corpus.labels()
    scaler = None
    if cfg["standardize"]:
        scaler = standardize_fit(X)
        X = standardize_apply(scaler, X)
    train_fn = train_logreg if classifier == "logreg" else train_svm
    model = train_fn(X, labels, _train_config(cfg), num_classes=len(corpus.categories))
    out = Path(cfg.get("out") or "model.bin")
    save_model(model, out)
    _write_manifest(
        out,
        "train",
        cfg,
        extra={
            "model": {
                "kind": classifier,
                "num_classes": len(corpus.categories),
                "num_features": model.num_features,
                "final_objective": model.training_log[-1],
            },
            "categories": list(corpus.categories),
            "scheme": scheme,
            "alpha": float(cfg["alpha"]),
            "embedding": {
                "origin": embedding.origin,
                "dimension": embedding.dimension,
            },
            "tokenizer": {"preserve_case": bool(cfg["preserve_case"])},
            "case_fallback": bool(cfg["case_fallback"]),
            "scaler": None
            if scaler is None
            else {"mean": scaler.mean.tolist(), "scale": scaler.scale.tolist()},
            "weights": table_payload(table),
        },
    )
    print(
        f"{classifier} model ({model.num_classes} classes x {model.num_features} "
        f"features) written to {out}"
    )
    return 0


def _read_predict_lines(spec: str) -> list[str]:
    if spec == "-":
        return sys.stdin.read().splitlines()
    path = Path(spec)
    if not path.is_file():
        raise ConfigError(f"input file not found: {path}")
    return path.read_text(encoding="utf-8", errors="replace").splitlines()


def cmd_predict(args: argparse.Namespace) -> int:
    cfg = _resolve(args)
    model_path = Path(_require(cfg, "model", "--model"))
    if not model_path.is_file():
        raise ConfigError(f"model file not found: {model_path}")
    manifest_path = Path(str(model_path) + ".manifest.json")
    if not manifest_path.is_file():
        raise ConfigError(f"model manifest not found: {manifest_path}")
    manifest = json.loads(manifest_path.read_text(encoding="utf-8"))
    model = load_model(model_path)
    categories = manifest["categories"]
    if model.num_classes != len(categories):
        raise ConfigError(
            f"model has {model.num_classes} classes but manifest lists "
            f"{len(categories)} categories"
        )
    tokenizer = TokenizerConfig(
        preserve_case=bool(manifest["tokenizer"]["preserve_case"])
    )
    lines = _read_predict_lines(str(cfg.get("input") or "-"))
    docs = tuple(
        Document(tokens=tokenize(line, tokenizer), label=None, source_id=f"line-{i + 1}")
        for i, line in enumerate(lines)
    )
    trained = manifest["embedding"]
    spec = cfg.get("embedding") or trained["origin"]
    if str(spec).startswith("synthetic:"):
        d, emb_seed = _parse_synthetic_spec(str(spec))
        vocab = sorted({t for doc in docs for t in doc.tokens})
        embedding = synthetic_model(vocab, d, emb_seed)
    else:
        path = Path(spec)
        if not path.is_file():
            raise ConfigError(
                f"embedding file not found: {path} (recorded at training time: "
                f"{trained['origin']}; pass --embedding to override)"
            )
        embedding = load_embeddings(path, cfg.get("embedding_format") or "auto")
    if embedding.dimension != trained["dimension"]:
        raise ConfigError(
            f"embedding dimension {embedding.dimension} does not match the "
            f"trained model's {trained['dimension']}"
        )
    table = table_from_payload(manifest["weights"], categories=tuple(categories))
    vec = CorpusVectorizer(docs, embedding, bool(manifest.get("case_fallback")))
    X = vec.matrix(table)
    if X.shape[1] != model.num_features:
        raise ConfigError(
            f"feature length {X.shape[1]} does not match the trained model's "
            f"{model.num_features}"
        )
    if manifest.get("scaler"):
        X = (X - np.asarray(manifest["scaler"]["mean"])) / np.asarray(
            manifest["scaler"]["scale"]
        )
    pred, scores = predict_many(model, X)
    out_lines = ["\t".join(["label", *categories])]
    for i in range(len(docs)):
        row = "\t".join(repr(float(s)) for s in scores[i])
        out_lines.append(f"{categories[pred[i]]}\t{row}")
    text = "\n".join(out_lines) + "\n"
    out = cfg.get("out")
    if out:
        Path(out).write_text(text, encoding="utf-8")
        _write_manifest(Path(out), "predict", cfg)
        print(f"{len(docs)} predictions written to {out}")
    else:
        sys.stdout.write(text)
    return 0


_COMMANDS = {
    "cv": cmd_cv,
    "curve": cmd_curve,
    "weights": cmd_weights,
    "vectorize": cmd_vectorize,
    "train": cmd_train,
    "predict": cmd_predict,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CatweightError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
