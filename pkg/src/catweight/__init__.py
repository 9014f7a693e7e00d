"""catweight: supervised term weighting over word embeddings.

Implements the TF-CR weighting scheme and its baselines (TF-IDF, KLD,
TF-TRR), the per-category concatenated document representation, linear
classifiers trained from scratch, and a cross-validation / learning-
curve evaluation harness with a CLI front end.
"""

from .classify import (
    LinearModel,
    TrainConfig,
    decision_scores,
    load_model,
    logreg_gradient,
    predict,
    predict_many,
    save_model,
    svm_objective,
    svm_subgradient,
    train_logreg,
    train_svm,
)
from .corpus import (
    Document,
    LabeledCorpus,
    SplitPlan,
    TokenizerConfig,
    from_token_lists,
    load_20ng,
    load_csv,
    load_jsonl,
    make_splits,
    merge_corpora,
    sample,
    tokenize,
)
from .embeddings import (
    EMBEDDING_FORMATS,
    EmbeddingModel,
    detect_format,
    load_embeddings,
    load_glove_text,
    load_word2vec_binary,
    load_word2vec_text,
    lookup,
    save_glove_text,
    save_word2vec_binary,
    save_word2vec_text,
    synthetic_model,
)
from .errors import (
    CatweightError,
    ConfigError,
    EmbeddingFormatError,
    IngestionError,
    ModelFormatError,
    SplitError,
    StatsError,
    TrainingError,
)
from .evaluation import (
    CurvePoint,
    EvalReport,
    GridFailure,
    cross_validate,
    grid_run,
    learning_curve,
    macro_f1,
    write_curve_csv,
    write_results_csv,
)
from .stats import (
    CorpusStats,
    build_stats,
    category_prob,
    remainder_prob,
    stats_summary,
)
from .synthetic import separable_corpus
from .vectorize import (
    CorpusVectorizer,
    DocVector,
    ScalerParams,
    feature_dimension,
    standardize_apply,
    standardize_fit,
    vectorize_concat,
    vectorize_document,
    vectorize_tfidf,
    vectorize_unweighted,
    vectorize_weighted_category,
)
from .weighting import (
    CATEGORY_SCHEMES,
    DEFAULT_ALPHA,
    SCHEMES,
    WeightTable,
    build_table,
    export_weights,
    idf_weight,
    import_weights,
    kld_weight,
    table_from_payload,
    table_payload,
    tfcr_weight,
    tfidf_weight,
    tftrr_weight,
    top_k,
    trr_factor,
)

__version__ = "0.1.0"

__all__ = [
    "CatweightError",
    "ConfigError",
    "CorpusStats",
    "CorpusVectorizer",
    "CurvePoint",
    "DocVector",
    "Document",
    "EmbeddingFormatError",
    "EMBEDDING_FORMATS",
    "EmbeddingModel",
    "EvalReport",
    "GridFailure",
    "IngestionError",
    "LabeledCorpus",
    "LinearModel",
    "ModelFormatError",
    "CATEGORY_SCHEMES",
    "DEFAULT_ALPHA",
    "SCHEMES",
    "ScalerParams",
    "SplitError",
    "SplitPlan",
    "StatsError",
    "TokenizerConfig",
    "TrainConfig",
    "TrainingError",
    "WeightTable",
    "build_stats",
    "stats_summary",
    "build_table",
    "category_prob",
    "cross_validate",
    "export_weights",
    "from_token_lists",
    "grid_run",
    "idf_weight",
    "import_weights",
    "kld_weight",
    "learning_curve",
    "load_20ng",
    "load_csv",
    "detect_format",
    "load_embeddings",
    "load_glove_text",
    "load_jsonl",
    "decision_scores",
    "load_model",
    "logreg_gradient",
    "load_word2vec_binary",
    "load_word2vec_text",
    "lookup",
    "macro_f1",
    "make_splits",
    "merge_corpora",
    "predict",
    "predict_many",
    "remainder_prob",
    "sample",
    "save_model",
    "save_glove_text",
    "save_word2vec_binary",
    "save_word2vec_text",
    "separable_corpus",
    "feature_dimension",
    "standardize_apply",
    "standardize_fit",
    "synthetic_model",
    "table_from_payload",
    "table_payload",
    "tfcr_weight",
    "tfidf_weight",
    "tftrr_weight",
    "tokenize",
    "top_k",
    "svm_objective",
    "svm_subgradient",
    "train_logreg",
    "train_svm",
    "trr_factor",
    "vectorize_concat",
    "vectorize_document",
    "vectorize_tfidf",
    "vectorize_unweighted",
    "vectorize_weighted_category",
    "write_curve_csv",
    "write_results_csv",
]
