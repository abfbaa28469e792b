"""POS-tagged corpus ingestion, stop-word policy, and vocabulary counts.

Input corpora are already tokenized and tagged. Two text layouts are
supported:

* ``slash``: one sentence per line, tokens written ``surface/TAG`` and
  separated by whitespace (a surface may itself contain slashes; the tag
  is everything after the last one).
* ``tsv``: one ``surface<TAB>tag`` token per line, blank line ends a
  sentence.

Surfaces are lowercased on ingestion; tags are kept verbatim. A token is a
stop word when its tag marks a number, symbol, or proper noun, or when its
corpus-wide raw frequency exceeds the ``stop_threshold`` (F). Stop tokens
stay in the stream, flagged, so that window positions remain occupied.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .ioutil import atomic_write_text

# Penn-Treebank-style defaults: numbers, symbols/punctuation, proper nouns.
DEFAULT_STOP_TAGS = frozenset(
    {
        "CD",
        "SYM", "$", "#", ".", ",", ":", "``", "''", "(", ")", "-LRB-", "-RRB-",
        "NNP", "NNPS",
    }
)

DEFAULT_STOP_THRESHOLD = 800


class CorpusFormatError(ValueError):
    """A line of corpus text does not match the declared tag format."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class CorpusConfig:
    format: str = "slash"
    stop_threshold: int = DEFAULT_STOP_THRESHOLD
    stop_pos_tags: frozenset[str] = DEFAULT_STOP_TAGS

    def __post_init__(self):
        if self.format not in ("slash", "tsv"):
            raise ValueError(f"unknown corpus format {self.format!r}")
        if self.stop_threshold <= 0:
            raise ValueError("stop_threshold must be positive")


@dataclass
class Token:
    surface: str
    pos: str
    sentence_id: int
    is_stop: bool = False

    def __post_init__(self):
        if not self.surface:
            raise ValueError("token surface must be non-empty")


TokenStream = list[Token]


@dataclass
class Vocabulary:
    """Corpus-wide raw frequencies plus the stop-frequency threshold."""

    freq: dict[str, int]
    total_tokens: int
    stop_threshold: int

    def __post_init__(self):
        if self.total_tokens != sum(self.freq.values()):
            raise ValueError("vocabulary total_tokens does not match sum of counts")

    def __contains__(self, word: str) -> bool:
        return word in self.freq

    def is_frequency_stopped(self, word: str) -> bool:
        return self.freq.get(word, 0) > self.stop_threshold


def _parse_slash(raw: str) -> TokenStream:
    tokens: TokenStream = []
    sentence_id = 0
    for line_no, line in enumerate(raw.splitlines(), 1):
        if not line.strip():
            continue
        for match in re.finditer(r"\S+", line):
            item = match.group()
            column = match.start() + 1
            if "/" not in item:
                raise CorpusFormatError(
                    f"token {item!r} missing '/' tag separator", line_no, column
                )
            surface, pos = item.rsplit("/", 1)
            if not surface or not pos:
                raise CorpusFormatError(
                    f"token {item!r} has empty surface or tag", line_no, column
                )
            tokens.append(Token(surface.lower(), pos, sentence_id))
        sentence_id += 1
    return tokens


def _parse_tsv(raw: str) -> TokenStream:
    tokens: TokenStream = []
    sentence_id = 0
    sentence_open = False
    for line_no, line in enumerate(raw.splitlines(), 1):
        if not line.strip():
            if sentence_open:
                sentence_id += 1
                sentence_open = False
            continue
        fields = line.rstrip("\n").split("\t")
        if len(fields) != 2 or not fields[0] or not fields[1]:
            raise CorpusFormatError(
                f"expected 'surface<TAB>tag', got {line.strip()!r}", line_no, 1
            )
        tokens.append(Token(fields[0].lower(), fields[1], sentence_id))
        sentence_open = True
    return tokens


def ingest(raw: str, cfg: CorpusConfig = CorpusConfig()) -> TokenStream:
    """Parse tagged text into a token stream, in corpus order.

    Stop flags are set from tags alone here; frequency-based stops need the
    full vocabulary and are applied by build_vocabulary.
    """
    tokens = _parse_slash(raw) if cfg.format == "slash" else _parse_tsv(raw)
    for tok in tokens:
        tok.is_stop = tok.pos in cfg.stop_pos_tags
    return tokens


def ingest_files(paths: list[str | Path], cfg: CorpusConfig = CorpusConfig()) -> TokenStream:
    """Ingest several files and concatenate them in the given order."""
    stream: TokenStream = []
    offset = 0
    for path in paths:
        part = ingest(Path(path).read_text(encoding="utf-8"), cfg)
        for tok in part:
            tok.sentence_id += offset
        stream.extend(part)
        if part:
            offset = part[-1].sentence_id + 1
    return stream


def apply_stop_policy(ts: TokenStream, vocab: Vocabulary, cfg: CorpusConfig) -> None:
    """Recompute every token's stop flag from tags and vocabulary frequencies.

    The vocabulary is normally the training one: frequency-based stops are a
    training-corpus property even when flagging held-out text.
    """
    for tok in ts:
        tok.is_stop = tok.pos in cfg.stop_pos_tags or vocab.is_frequency_stopped(tok.surface)


def build_vocabulary(ts: TokenStream, cfg: CorpusConfig = CorpusConfig()) -> Vocabulary:
    """Count every token occurrence and re-flag the stream's stop words in place."""
    freq = Counter(tok.surface for tok in ts)
    vocab = Vocabulary(dict(freq), total_tokens=len(ts), stop_threshold=cfg.stop_threshold)
    apply_stop_policy(ts, vocab, cfg)
    return vocab


def merge_vocabularies(parts: list[Vocabulary]) -> Vocabulary:
    """Commutative merge of partial counts from corpus shards."""
    if not parts:
        raise ValueError("nothing to merge")
    thresholds = {v.stop_threshold for v in parts}
    if len(thresholds) != 1:
        raise ValueError(f"mismatched stop thresholds: {sorted(thresholds)}")
    freq: Counter[str] = Counter()
    for part in parts:
        freq.update(part.freq)
    total = sum(part.total_tokens for part in parts)
    return Vocabulary(dict(freq), total_tokens=total, stop_threshold=thresholds.pop())


def format_token_stream(ts: TokenStream) -> str:
    """Render a stream back to slash format, one sentence per line."""
    lines: list[str] = []
    current: list[str] = []
    current_id: int | None = None
    for tok in ts:
        if current_id is not None and tok.sentence_id != current_id:
            lines.append(" ".join(current))
            current = []
        current_id = tok.sentence_id
        current.append(f"{tok.surface}/{tok.pos}")
    if current:
        lines.append(" ".join(current))
    return "\n".join(lines) + ("\n" if lines else "")


def write_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    lines = [f"N={vocab.total_tokens}", f"F={vocab.stop_threshold}"]
    for word in sorted(vocab.freq):
        lines.append(f"{word}\t{vocab.freq[word]}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_vocabulary(path: str | Path) -> Vocabulary:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("N="):
        raise ValueError(f"{path}: missing N= header")
    total = int(lines[0][2:])
    threshold = DEFAULT_STOP_THRESHOLD
    body_start = 1
    if len(lines) > 1 and lines[1].startswith("F="):
        threshold = int(lines[1][2:])
        body_start = 2
    freq: dict[str, int] = {}
    for line in lines[body_start:]:
        if not line.strip():
            continue
        word, count = line.split("\t")
        freq[word] = int(count)
    return Vocabulary(freq, total_tokens=total, stop_threshold=threshold)
