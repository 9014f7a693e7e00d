"""Term-weighting schemes over corpus statistics.

Four schemes, all computed from training counts only:

* ``tfidf``   per-word inverse document frequency; the weight of a token
              in a document is tf * ln(|D| / df).
* ``kld``     per-(word, category) pointwise divergence
              P(w_c) * ln(P(w_c) / Q(w_r)) against the pooled remainder.
* ``tftrr``   per-(word, category) relevance-ratio factor
              ln(P(w|c) / P(w|r) + alpha), combined with a log-scaled
              document term frequency at vectorization time.
* ``tfcr``    per-(word, category) product of within-category frequency
              and category exclusivity: |w_c|^2 / (N_c * |w|).

Natural logarithms throughout.  The weighted-mean document
representation is invariant to any uniform per-category rescaling, so
the base choice is benign for the category-level schemes and simply
declared for tfidf/tftrr.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .stats import CorpusStats, category_prob, remainder_prob

SCHEMES = ("none", "tfidf", "kld", "tftrr", "tfcr")
CATEGORY_SCHEMES = ("kld", "tftrr", "tfcr")
DEFAULT_ALPHA = 1.2


def tfcr_weight(stats: CorpusStats, word: str, c: int) -> float:
    """|w_c|^2 / (N_c * |w|); 0 for words absent from c or unseen."""
    wid = stats.word_ids.get(word)
    if wid is None:
        return 0.0
    wc = int(stats.occurrences[wid, c])
    if wc == 0:
        return 0.0
    nc = int(stats.category_tokens[c])
    total = int(stats.word_totals[wid])
    return (wc * wc) / (nc * total)


def kld_weight(stats: CorpusStats, word: str, c: int, raw: bool = False) -> float:
    """P(w_c) * ln(P(w_c) / Q(w_r)).

    0 * ln(0) is taken as 0.  A zero remainder probability under a
    positive P is substituted with 1 / (N_r + 1) where N_r is the pooled
    remainder token total.  Negative values are clamped to 0 unless
    ``raw``: negative mixing weights would break the weighted-mean
    denominator's positivity.
    """
    p = category_prob(stats, word, c)
    if p == 0.0:
        return 0.0
    q = remainder_prob(stats, word, c)
    if q == 0.0:
        q = 1.0 / (stats.remainder_tokens(c) + 1)
    value = p * math.log(p / q)
    if raw:
        return value
    return value if value > 0.0 else 0.0


def trr_factor(
    stats: CorpusStats, word: str, c: int, alpha: float = DEFAULT_ALPHA
) -> float:
    """ln(P(w|c) / P(w|r) + alpha); ln(alpha) when P(w|c) = 0.

    The alpha offset (default 1.2) keeps every factor strictly positive.
    A zero remainder probability under a positive P(w|c) is substituted
    with 1 / (N_r + 1).
    """
    p = category_prob(stats, word, c)
    if p == 0.0:
        return math.log(alpha)
    q = remainder_prob(stats, word, c)
    if q == 0.0:
        q = 1.0 / (stats.remainder_tokens(c) + 1)
    return math.log(p / q + alpha)


def tftrr_weight(
    stats: CorpusStats,
    word: str,
    c: int,
    tf_in_doc: int,
    alpha: float = DEFAULT_ALPHA,
) -> float:
    """(ln(tf) + 1) * trr_factor; tf is the word's document frequency."""
    if tf_in_doc < 1:
        raise ValueError(f"tf_in_doc must be >= 1, got {tf_in_doc}")
    return (math.log(tf_in_doc) + 1.0) * trr_factor(stats, word, c, alpha)


def idf_weight(stats: CorpusStats, word: str) -> float:
    """ln(|D| / df); 0 for words unseen in training."""
    wid = stats.word_ids.get(word)
    if wid is None:
        return 0.0
    return math.log(stats.num_docs / int(stats.doc_freq[wid]))


def tfidf_weight(stats: CorpusStats, word: str, tf_in_doc: int) -> float:
    """tf * ln(|D| / df); tf is the word's document frequency."""
    if tf_in_doc < 1:
        raise ValueError(f"tf_in_doc must be >= 1, got {tf_in_doc}")
    return tf_in_doc * idf_weight(stats, word)


@dataclass
class WeightTable:
    """Materialized weights for one scheme.

    For the category-level schemes, ``category_weights`` holds one value
    per (word, category) pair with a nonzero occurrence count (kld/tfcr:
    the weight itself; tftrr: the relevance-ratio factor) and zeros
    everywhere else.  For tfidf, ``idf`` holds one value per word.
    Scheme ``none`` carries no arrays and acts as the empty marker.
    """

    scheme: str
    categories: tuple[str, ...]
    word_ids: dict[str, int] = field(default_factory=dict)
    words: tuple[str, ...] = ()
    category_weights: np.ndarray | None = None
    idf: np.ndarray | None = None
    alpha: float = DEFAULT_ALPHA

    @property
    def num_categories(self) -> int:
        return len(self.categories)

    def category_weight(self, word: str, c: int) -> float:
        """Table lookup; 0 for words not materialized."""
        wid = self.word_ids.get(word)
        if wid is None or self.category_weights is None:
            return 0.0
        return float(self.category_weights[wid, c])

    def idf_value(self, word: str) -> float:
        wid = self.word_ids.get(word)
        if wid is None or self.idf is None:
            return 0.0
        return float(self.idf[wid])


def _log_elementwise(values: np.ndarray) -> np.ndarray:
    """math.log per element, so table entries are bit-identical to the
    pointwise functions above (np.log may round differently by one ulp)."""
    return np.fromiter((math.log(v) for v in values), np.float64, count=values.size)


def build_table(
    stats: CorpusStats,
    scheme: str,
    alpha: float = DEFAULT_ALPHA,
    kld_raw: bool = False,
) -> WeightTable:
    """Materialize a scheme's weights over all observed (word, category) pairs.

    Entries are computed with the same elementwise operations as the
    pointwise functions above, vectorized over the nonzero occurrence
    positions; everything else is an implicit zero.  Deterministic:
    rebuilding from the same stats gives identical arrays.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"unknown scheme {scheme!r}; valid: {', '.join(SCHEMES)}")
    if scheme == "none":
        return WeightTable(scheme="none", categories=stats.categories, alpha=alpha)

    if scheme == "tfidf":
        ratios = float(stats.num_docs) / stats.doc_freq.astype(np.float64)
        idf = _log_elementwise(ratios)
        return WeightTable(
            scheme="tfidf",
            categories=stats.categories,
            word_ids=dict(stats.word_ids),
            words=stats.words,
            idf=idf,
            alpha=alpha,
        )

    coo = stats.occurrences.tocoo()
    rows = coo.row
    cols = coo.col
    wc = coo.data.astype(np.float64)
    nc = stats.category_tokens[cols].astype(np.float64)
    totals = stats.word_totals[rows].astype(np.float64)

    if scheme == "tfcr":
        values = (wc * wc) / (nc * totals)
    else:
        # Shared probability machinery for kld and the tftrr factor.
        p = wc / nc
        rem = totals - wc
        n_rem = float(stats.total_tokens) - nc
        q = np.zeros_like(p)
        seen_outside = rem > 0
        q[seen_outside] = rem[seen_outside] / n_rem[seen_outside]
        exclusive = ~seen_outside
        q[exclusive] = 1.0 / (n_rem[exclusive] + 1)
        ratio = p / q
        if scheme == "kld":
            values = p * _log_elementwise(ratio)
            if not kld_raw:
                values = np.maximum(values, 0.0)
        else:
            values = _log_elementwise(ratio + alpha)

    weights = np.zeros((stats.vocab_size, stats.num_categories), dtype=np.float64)
    weights[rows, cols] = values
    return WeightTable(
        scheme=scheme,
        categories=stats.categories,
        word_ids=dict(stats.word_ids),
        words=stats.words,
        category_weights=weights,
        alpha=alpha,
    )


def _ranked_word_order(table: WeightTable, values: np.ndarray) -> np.ndarray:
    """Indices sorted by descending value, ties broken lexicographically."""
    words = np.asarray(table.words, dtype=object)
    return np.lexsort((words, -values))


def top_k(table: WeightTable, c: int, k: int) -> list[tuple[str, float]]:
    """The k highest-weight words for category c, descending.

    Ties break lexicographically.  For tfidf tables the ranking is by
    idf and independent of the category index.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if table.scheme == "none":
        raise ValueError("scheme 'none' has no weights to rank")
    if c < 0 or c >= table.num_categories:
        raise ValueError(
            f"category index {c} out of range for {table.num_categories} categories"
        )
    values = table.idf if table.scheme == "tfidf" else table.category_weights[:, c]
    order = _ranked_word_order(table, values)[:k]
    return [(table.words[i], float(values[i])) for i in order]


def _format_weight(x: float) -> str:
    return format(x, ".17g")


def table_payload(table: WeightTable, top: int | None = None) -> dict:
    """JSON-ready dict of a table's nonzero entries.

    Entries are ordered by category then descending weight (ties
    lexicographic); tfidf tables carry per-word idf pairs instead.
    Omitting zero entries is lossless for vectorization.
    """
    if table.scheme == "none":
        return {"scheme": "none", "categories": list(table.categories)}
    if table.scheme == "tfidf":
        order = _ranked_word_order(table, table.idf)
        if top is not None:
            order = order[:top]
        return {
            "scheme": "tfidf",
            "entries": [[table.words[i], float(table.idf[i])] for i in order],
        }
    entries = []
    for c, name in enumerate(table.categories):
        col = table.category_weights[:, c]
        order = _ranked_word_order(table, col)
        kept = 0
        for i in order:
            if col[i] == 0.0:
                continue
            entries.append([table.words[i], name, float(col[i])])
            kept += 1
            if top is not None and kept >= top:
                break
    return {
        "scheme": table.scheme,
        "alpha": table.alpha,
        "categories": list(table.categories),
        "entries": entries,
    }


def table_from_payload(payload: dict, categories: tuple[str, ...] = ()) -> WeightTable:
    """Inverse of table_payload; omitted zero entries stay zero."""
    scheme = payload["scheme"]
    if scheme == "none":
        return WeightTable(
            scheme="none", categories=tuple(payload.get("categories") or categories)
        )
    if scheme == "tfidf":
        words = tuple(w for w, _ in payload["entries"])
        idf = np.array([v for _, v in payload["entries"]], dtype=np.float64)
        return WeightTable(
            scheme="tfidf",
            categories=tuple(payload.get("categories") or categories),
            word_ids={w: i for i, w in enumerate(words)},
            words=words,
            idf=idf,
        )
    cats = tuple(payload["categories"])
    cat_index = {name: i for i, name in enumerate(cats)}
    word_ids: dict[str, int] = {}
    triples = payload["entries"]
    for word, _, _ in triples:
        if word not in word_ids:
            word_ids[word] = len(word_ids)
    weights = np.zeros((len(word_ids), len(cats)), dtype=np.float64)
    for word, name, value in triples:
        weights[word_ids[word], cat_index[name]] = value
    return WeightTable(
        scheme=scheme,
        categories=cats,
        word_ids=word_ids,
        words=tuple(word_ids),
        category_weights=weights,
        alpha=float(payload.get("alpha", DEFAULT_ALPHA)),
    )


def export_weights(table: WeightTable, fh, fmt: str = "json", top: int | None = None):
    """Write a table as (word, category, weight) triples to a text stream.

    Triples are ordered by category then descending weight (ties
    lexicographic); zero entries are omitted.  tfidf exports per-word
    idf rows without a category column.  TSV weights are printed with 17
    significant digits so a reload round-trips exactly.
    """
    if table.scheme == "none":
        raise ValueError("scheme 'none' has no weights to export")
    if fmt not in ("json", "tsv"):
        raise ValueError(f"unknown export format {fmt!r}; valid: json, tsv")
    payload = table_payload(table, top)
    if fmt == "json":
        json.dump(payload, fh, ensure_ascii=False, indent=2)
        fh.write("\n")
    elif table.scheme == "tfidf":
        fh.write("word\tidf\n")
        for word, value in payload["entries"]:
            fh.write(f"{word}\t{_format_weight(value)}\n")
    else:
        fh.write("word\tcategory\tweight\n")
        for word, name, value in payload["entries"]:
            fh.write(f"{word}\t{name}\t{_format_weight(value)}\n")


def import_weights(fh) -> WeightTable:
    """Rebuild a WeightTable from the JSON produced by export_weights."""
    return table_from_payload(json.load(fh))
