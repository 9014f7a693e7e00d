"""Macro-F1 metrics, k-fold cross-validation, learning curves, grids.

The protocol under test: per fold (or per learning-curve sample), corpus
statistics, weight tables, and feature scalers are fit on the training
documents only; test documents are vectorized with those training-fold
tables and scored.  The cross-validation headline number is the
arithmetic mean of per-fold macro-F1 scores.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .classify import TrainConfig, predict_many, train_logreg, train_svm
from .corpus import LabeledCorpus, SplitPlan
from .embeddings import EmbeddingModel
from .errors import TrainingError
from .stats import CorpusStats, build_stats
from .vectorize import CorpusVectorizer, standardize_apply, standardize_fit
from .weighting import SCHEMES, WeightTable, build_table

CLASSIFIERS = ("logreg", "svm")


@dataclass
class ClassMetrics:
    category: str
    precision: float
    recall: float
    f1: float
    support: int


@dataclass
class EvalReport:
    per_class: tuple[ClassMetrics, ...]
    macro_f1: float
    accuracy: float
    confusion: np.ndarray  # rows = gold, columns = predicted
    fold_scores: tuple[float, ...] = ()
    fold_accuracies: tuple[float, ...] = ()
    fold_train_sizes: tuple[int, ...] = ()
    fingerprint: dict = field(default_factory=dict)

    @property
    def mean_macro_f1(self) -> float:
        """Mean of per-fold scores; falls back to the pooled score."""
        if self.fold_scores:
            return float(np.mean(self.fold_scores))
        return self.macro_f1


@dataclass
class CurvePoint:
    training_size: int
    scores: dict[str, float]  # scheme -> macro-F1 on the fixed holdout


@dataclass
class GridFailure:
    message: str
    fingerprint: dict = field(default_factory=dict)


def _metrics_from_confusion(confusion: np.ndarray, categories) -> tuple:
    per_class = []
    f1s = np.zeros(confusion.shape[0])
    for c in range(confusion.shape[0]):
        tp = float(confusion[c, c])
        gold = float(confusion[c, :].sum())
        predicted = float(confusion[:, c].sum())
        precision = tp / predicted if predicted > 0 else 0.0
        recall = tp / gold if gold > 0 else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        f1s[c] = f1
        per_class.append(
            ClassMetrics(
                category=categories[c] if categories else str(c),
                precision=precision,
                recall=recall,
                f1=f1,
                support=int(gold),
            )
        )
    total = float(confusion.sum())
    accuracy = float(np.trace(confusion)) / total if total > 0 else 0.0
    return tuple(per_class), float(f1s.mean()), accuracy


def macro_f1(
    predictions, gold, num_classes: int, categories=None
) -> EvalReport:
    """Per-class P/R/F1 and their unweighted mean over ALL classes.

    Zero-denominator precision or recall is taken as 0; classes absent
    from both gold and predictions still contribute an F1 of 0.
    """
    pred = np.asarray(predictions, dtype=np.int64)
    y = np.asarray(gold, dtype=np.int64)
    if pred.shape != y.shape:
        raise ValueError(
            f"predictions ({pred.shape}) and gold ({y.shape}) differ in length"
        )
    if pred.size and (pred.min() < 0 or pred.max() >= num_classes):
        raise ValueError("prediction label out of range")
    if y.size and (y.min() < 0 or y.max() >= num_classes):
        raise ValueError("gold label out of range")
    confusion = np.zeros((num_classes, num_classes), dtype=np.int64)
    np.add.at(confusion, (y, pred), 1)
    per_class, macro, accuracy = _metrics_from_confusion(confusion, categories)
    return EvalReport(
        per_class=per_class, macro_f1=macro, accuracy=accuracy, confusion=confusion
    )


def _train(classifier: str, X, y, config: TrainConfig, num_classes: int):
    if classifier == "logreg":
        return train_logreg(X, y, config, num_classes=num_classes)
    if classifier == "svm":
        return train_svm(X, y, config, num_classes=num_classes)
    raise ValueError(
        f"unknown classifier {classifier!r}; valid: {', '.join(CLASSIFIERS)}"
    )


def _check_classes(
    labels: np.ndarray, idx: np.ndarray, num_classes: int, classifier: str, what: str
):
    if classifier != "logreg":
        return
    present = np.unique(labels[idx])
    if present.size < num_classes:
        missing = sorted(set(range(num_classes)) - set(present.tolist()))
        raise TrainingError(
            f"{what} lacks categories {missing}; use stratified folds"
        )


def _fold_table(
    corpus: LabeledCorpus,
    scheme: str,
    train_idx: np.ndarray,
    alpha: float,
    kld_raw: bool,
    min_count: int,
    table_builder: Callable[[CorpusStats | None], WeightTable] | None,
) -> WeightTable:
    if table_builder is not None:
        return table_builder(
            build_stats(corpus, doc_subset=train_idx, min_count=min_count)
        )
    if scheme == "none":
        return WeightTable(scheme="none", categories=tuple(corpus.categories))
    stats = build_stats(corpus, doc_subset=train_idx, min_count=min_count)
    return build_table(stats, scheme, alpha=alpha, kld_raw=kld_raw)


def cross_validate(
    corpus: LabeledCorpus,
    plan: SplitPlan,
    scheme: str,
    embedding: EmbeddingModel,
    classifier: str = "logreg",
    train_config: TrainConfig | None = None,
    *,
    alpha: float = 1.2,
    kld_raw: bool = False,
    standardize: bool = False,
    case_fallback: bool = False,
    min_count: int = 1,
    vectorizer: CorpusVectorizer | None = None,
    table_builder: Callable[[CorpusStats | None], WeightTable] | None = None,
    dataset: str = "corpus",
) -> EvalReport:
    """k-fold cross-validation of one (scheme, embedding, classifier) cell.

    Each fold fits stats, weight table, and scaler on its nine training
    folds, trains the classifier, and scores the held-out fold.  The
    returned report pools the per-fold confusions and carries the
    per-fold macro-F1 scores; ``mean_macro_f1`` is their mean.
    """
    if scheme not in SCHEMES and table_builder is None:
        raise ValueError(f"unknown scheme {scheme!r}; valid: {', '.join(SCHEMES)}")
    cfg = train_config or TrainConfig()
    vec = vectorizer or CorpusVectorizer(
        corpus.documents, embedding, case_fallback=case_fallback
    )
    labels = corpus.labels()
    n_classes = len(corpus.categories)
    confusion = np.zeros((n_classes, n_classes), dtype=np.int64)
    fold_scores = []
    fold_accuracies = []
    fold_train_sizes = []
    for fold in range(plan.num_folds):
        train_idx = plan.train_indices(fold)
        test_idx = plan.fold_indices(fold)
        _check_classes(labels, train_idx, n_classes, classifier, f"fold {fold} training split")
        table = _fold_table(
            corpus, scheme, train_idx, alpha, kld_raw, min_count, table_builder
        )
        X = vec.matrix(table)
        X_train, X_test = X[train_idx], X[test_idx]
        if standardize:
            params = standardize_fit(X_train)
            X_train = standardize_apply(params, X_train)
            X_test = standardize_apply(params, X_test)
        model = _train(classifier, X_train, labels[train_idx], cfg, n_classes)
        pred, _ = predict_many(model, X_test)
        fold_report = macro_f1(pred, labels[test_idx], n_classes, corpus.categories)
        confusion += fold_report.confusion
        fold_scores.append(fold_report.macro_f1)
        fold_accuracies.append(fold_report.accuracy)
        fold_train_sizes.append(len(train_idx))
    per_class, macro, accuracy = _metrics_from_confusion(confusion, corpus.categories)
    return EvalReport(
        per_class=per_class,
        macro_f1=macro,
        accuracy=accuracy,
        confusion=confusion,
        fold_scores=tuple(fold_scores),
        fold_accuracies=tuple(fold_accuracies),
        fold_train_sizes=tuple(fold_train_sizes),
        fingerprint={
            "dataset": dataset,
            "scheme": scheme,
            "embedding": embedding.origin,
            "classifier": classifier,
            "seed": plan.seed,
            "train_size": int(np.mean(fold_train_sizes)) if fold_train_sizes else 0,
        },
    )


def learning_curve(
    corpus: LabeledCorpus,
    plan: SplitPlan,
    schemes,
    embedding: EmbeddingModel,
    classifier: str = "logreg",
    train_config: TrainConfig | None = None,
    *,
    alpha: float = 1.2,
    kld_raw: bool = False,
    standardize: bool = False,
    case_fallback: bool = False,
    min_count: int = 1,
    vectorizer: CorpusVectorizer | None = None,
) -> list[CurvePoint]:
    """Macro-F1 on a fixed holdout as a function of training-set size.

    Training samples are nested along the plan's ladder; the holdout is
    the plan's fold 0 and never enters stats, tables, or training.
    Weights are recomputed from each sample alone.
    """
    for scheme in schemes:
        if scheme not in SCHEMES:
            raise ValueError(
                f"unknown scheme {scheme!r}; valid: {', '.join(SCHEMES)}"
            )
    cfg = train_config or TrainConfig()
    vec = vectorizer or CorpusVectorizer(
        corpus.documents, embedding, case_fallback=case_fallback
    )
    labels = corpus.labels()
    n_classes = len(corpus.categories)
    holdout = plan.holdout_indices()
    points = []
    for size in plan.size_ladder:
        sample = plan.ladder_sample(size)
        _check_classes(labels, sample, n_classes, classifier, f"size-{size} training sample")
        scores: dict[str, float] = {}
        for scheme in schemes:
            table = _fold_table(
                corpus, scheme, sample, alpha, kld_raw, min_count, None
            )
            X = vec.matrix(table)
            X_train, X_test = X[sample], X[holdout]
            if standardize:
                params = standardize_fit(X_train)
                X_train = standardize_apply(params, X_train)
                X_test = standardize_apply(params, X_test)
            model = _train(classifier, X_train, labels[sample], cfg, n_classes)
            pred, _ = predict_many(model, X_test)
            report = macro_f1(pred, labels[holdout], n_classes, corpus.categories)
            scores[scheme] = report.macro_f1
        points.append(CurvePoint(training_size=int(size), scores=scores))
    return points


def grid_run(
    corpus: LabeledCorpus,
    schemes,
    embeddings,
    classifiers,
    plan: SplitPlan,
    train_config: TrainConfig | None = None,
    *,
    alpha: float = 1.2,
    kld_raw: bool = False,
    standardize: bool = False,
    case_fallback: bool = False,
    min_count: int = 1,
    dataset: str = "corpus",
    jobs: int = 1,
) -> dict[tuple[str, str, str], EvalReport | GridFailure]:
    """Cross-validate the full scheme x embedding x classifier grid.

    A failing cell is recorded as a GridFailure; the rest of the grid
    still runs.  Cell results do not depend on execution order.
    """
    cells = [
        (scheme, embedding, classifier)
        for embedding in embeddings
        for scheme in schemes
        for classifier in classifiers
    ]
    vectorizers = {
        id(embedding): CorpusVectorizer(
            corpus.documents, embedding, case_fallback=case_fallback
        )
        for embedding in embeddings
    }

    def run_cell(cell):
        scheme, embedding, classifier = cell
        try:
            return cross_validate(
                corpus,
                plan,
                scheme,
                embedding,
                classifier,
                train_config,
                alpha=alpha,
                kld_raw=kld_raw,
                standardize=standardize,
                case_fallback=case_fallback,
                min_count=min_count,
                vectorizer=vectorizers[id(embedding)],
                dataset=dataset,
            )
        except Exception as exc:  # cell isolation: record, don't abort the grid
            return GridFailure(
                message=f"{type(exc).__name__}: {exc}",
                fingerprint={
                    "scheme": scheme,
                    "embedding": embedding.origin,
                    "classifier": classifier,
                },
            )

    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run_cell, cells))
    else:
        outcomes = [run_cell(cell) for cell in cells]
    return {
        (scheme, embedding.origin, classifier): outcome
        for (scheme, embedding, classifier), outcome in zip(cells, outcomes)
    }


def write_results_csv(results, fh, dataset: str = "corpus") -> None:
    """`dataset,scheme,embedding,classifier,train_size,fold,macro_f1,accuracy`
    with one row per fold plus a `mean` row per cell; failed cells get a
    single `failed` row carrying the error message in the macro_f1 column."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(
        ["dataset", "scheme", "embedding", "classifier", "train_size", "fold", "macro_f1", "accuracy"]
    )
    for (scheme, embedding_id, classifier), report in results.items():
        if isinstance(report, GridFailure):
            writer.writerow(
                [dataset, scheme, embedding_id, classifier, "", "failed", report.message, ""]
            )
            continue
        for fold, (score, acc, size) in enumerate(
            zip(report.fold_scores, report.fold_accuracies, report.fold_train_sizes)
        ):
            writer.writerow(
                [dataset, scheme, embedding_id, classifier, size, fold, repr(score), repr(acc)]
            )
        writer.writerow(
            [
                dataset,
                scheme,
                embedding_id,
                classifier,
                report.fingerprint.get("train_size", ""),
                "mean",
                repr(report.mean_macro_f1),
                repr(float(np.mean(report.fold_accuracies))),
            ]
        )


def write_curve_csv(points: list[CurvePoint], schemes, fh) -> None:
    """`train_size,<scheme columns...>`, one row per ladder size."""
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow(["train_size", *schemes])
    for point in points:
        writer.writerow(
            [point.training_size, *(repr(point.scores[s]) for s in schemes)]
        )
