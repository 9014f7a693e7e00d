from __future__ import annotations

import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for the oracles module

from catweight import from_token_lists, synthetic_model


@pytest.fixture
def toy_corpus():
    """The hand-enumerated two-category corpus behind the worked examples.

    Category A has 10 tokens with "win" occurring 4 times; category B has
    20 tokens with "win" occurring once.  tfcr(win, A) = 16/(10*5) = 0.32,
    tfcr(win, B) = 1/(20*5) = 0.01.
    """
    docs = [
        (["win", "win", "win", "win", "game", "game", "team", "team", "goal", "ball"], 0),
        (
            ["win", "market", "market", "stock", "stock", "stock", "price", "price",
             "trade", "trade", "bank", "bank", "rate", "rate", "fund", "fund",
             "bond", "bond", "cash", "loan"],
            1,
        ),
    ]
    return from_token_lists(
        [tokens for tokens, _ in docs],
        [label for _, label in docs],
        ["A", "B"],
    )


@pytest.fixture
def tiny_model():
    """Deterministic 8-dimensional embeddings over a small fixed vocabulary."""
    vocab = [
        "win", "game", "team", "goal", "ball", "market", "stock", "price",
        "trade", "bank", "rate", "fund", "bond", "cash", "loan", "extra",
    ]
    return synthetic_model(vocab, 8, seed=13)


@pytest.fixture
def rng():
    return np.random.default_rng(20260814)
