"""Constructed corpora with known category structure.

The separable corpus gives every category a bank of exclusive keywords
(words that never occur under any other label), mixed into documents at
a fixed ratio against a category-neutral shared vocabulary.  Exclusive
keywords have CR = 1 by construction, so TF-CR concentrates nearly all
mixing weight on them, while the unweighted mean is dominated by the
shared-vocabulary noise.  Used by the end-to-end tests and the demo
script.
"""

from __future__ import annotations

import numpy as np

from .corpus import Document, LabeledCorpus


def separable_corpus(
    num_docs: int = 1000,
    num_categories: int = 4,
    keywords_per_category: int = 20,
    shared_vocab_size: int = 400,
    doc_length: int = 30,
    exclusive_ratio: float = 0.25,
    seed: int = 0,
) -> LabeledCorpus:
    """Balanced labeled corpus with category-exclusive keywords.

    Each document draws ``exclusive_ratio`` of its tokens uniformly from
    its category's keyword bank and the rest uniformly from the shared
    vocabulary (a 1:3 mix at the default ratio).  Deterministic in
    ``seed``.
    """
    if not 0.0 < exclusive_ratio < 1.0:
        raise ValueError(f"exclusive_ratio must be in (0, 1), got {exclusive_ratio}")
    rng = np.random.default_rng(seed)
    shared = [f"common{i:03d}" for i in range(shared_vocab_size)]
    keywords = [
        [f"cat{c}kw{j:02d}" for j in range(keywords_per_category)]
        for c in range(num_categories)
    ]
    n_exclusive = max(1, round(doc_length * exclusive_ratio))
    n_shared = doc_length - n_exclusive
    documents = []
    for i in range(num_docs):
        c = i % num_categories
        bank = keywords[c]
        tokens = [bank[k] for k in rng.integers(0, len(bank), size=n_exclusive)]
        tokens += [shared[k] for k in rng.integers(0, shared_vocab_size, size=n_shared)]
        rng.shuffle(tokens)
        documents.append(
            Document(tokens=tuple(tokens), label=c, source_id=f"synthetic-{i:04d}")
        )
    categories = tuple(f"topic{c}" for c in range(num_categories))
    return LabeledCorpus(documents=tuple(documents), categories=categories, seed=seed)
