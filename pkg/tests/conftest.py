import pytest

from lexchoice.cooc import PairCounts, pair_key
from lexchoice.corpus import CorpusConfig, build_vocabulary, ingest

TINY_CORPUS = """\
the/DT team/NN 's/POS most/RBS urgent/JJ task/NN was/VBD to/TO learn/VB fast/RB
a/DT difficult/JJ task/NN needs/VBZ time/NN and/CC care/NN
to/TO learn/VB a/DT difficult/JJ lesson/NN takes/VBZ effort/NN
the/DT new/JJ hire/NN will/MD learn/VB the/DT difficult/JJ role/NN
"""


@pytest.fixture
def tiny_config():
    return CorpusConfig(stop_threshold=100)


@pytest.fixture
def tiny_stream(tiny_config):
    return ingest(TINY_CORPUS, tiny_config)


@pytest.fixture
def tiny_vocab(tiny_stream, tiny_config):
    return build_vocabulary(tiny_stream, tiny_config)


def make_counts(pairs: dict[tuple[str, str], int], freq: dict[str, int],
                total_tokens: int = 10_000, half_width: int = 4,
                stop_threshold: int = 800) -> PairCounts:
    """Hand-crafted pair table; keys are normalized to sorted order."""
    table = {pair_key(*key): value for key, value in pairs.items()}
    return PairCounts(
        table,
        freq=freq,
        total_tokens=total_tokens,
        half_width=half_width,
        stop_threshold=stop_threshold,
    )


def significant_counts(edges: list[tuple[str, str]], extra_freq: dict[str, int] | None = None) -> PairCounts:
    """Counts in which exactly the given word pairs clear the default
    thresholds (f_xy=20, marginals 50, N=10000, k=4 gives t=4.02, MI=3.32)."""
    freq: dict[str, int] = {}
    for w1, w2 in edges:
        freq.setdefault(w1, 50)
        freq.setdefault(w2, 50)
    if extra_freq:
        freq.update(extra_freq)
    return make_counts({edge: 20 for edge in edges}, freq)
