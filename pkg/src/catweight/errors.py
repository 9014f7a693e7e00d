"""Exception types shared across the toolkit."""


class CatweightError(Exception):
    """Base class for all catweight errors."""


class IngestionError(CatweightError):
    """A dataset file could not be loaded (missing column, bad row, empty root)."""


class SplitError(CatweightError):
    """A fold/ladder plan could not be built from the given corpus."""


class StatsError(CatweightError):
    """Corpus statistics could not be computed (e.g. unlabeled document)."""


class EmbeddingFormatError(CatweightError):
    """An embedding file violates its declared format."""


class ModelFormatError(CatweightError):
    """A persisted classifier file is corrupt or not a model file."""


class TrainingError(CatweightError):
    """Classifier training preconditions were violated."""


class ConfigError(CatweightError):
    """Invalid run configuration; the CLI maps this to exit status 2."""
