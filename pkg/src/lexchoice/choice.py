"""Score candidate synonyms against a gap sentence and rank them.

Each candidate contributes the sum, over every non-stop token occurrence in
the sentence (the gap itself excluded), of the candidate network's relation
score for that word. Repeated words add evidence once per occurrence.
Unknown and unreachable words contribute nothing, so the totals are never
negative; when every candidate totals zero the ranking falls back to the
training-frequency baseline.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .corpus import Token
from .network import CoocNetwork, significance

# Placeholder surface standing in the blanked position of a gap sentence.
GAP = "____"


@dataclass
class GapSentence:
    """A tagged sentence with one position blanked out."""

    tokens: list[Token]
    gap_index: int

    def __post_init__(self):
        if not 0 <= self.gap_index < len(self.tokens):
            raise ValueError(f"gap index {self.gap_index} out of bounds")

    @classmethod
    def blank_out(cls, tokens: list[Token], gap_index: int) -> "GapSentence":
        """Copy ``tokens`` with position ``gap_index`` replaced by the placeholder."""
        blanked = list(tokens)
        original = blanked[gap_index]
        blanked[gap_index] = Token(GAP, original.pos, original.sentence_id, is_stop=False)
        return cls(blanked, gap_index)

    def evidence_tokens(self, evidence_window: int | None = None) -> list[Token]:
        """Non-stop tokens usable as evidence, optionally only those within
        ``evidence_window`` positions of the gap."""
        picked = []
        for i, tok in enumerate(self.tokens):
            if i == self.gap_index or tok.is_stop:
                continue
            if evidence_window is not None and abs(i - self.gap_index) > evidence_window:
                continue
            picked.append(tok)
        return picked


@dataclass
class Candidate:
    word: str
    network: CoocNetwork
    training_freq: int

    def __post_init__(self):
        if self.word != self.network.root:
            raise ValueError(
                f"candidate {self.word!r} paired with a network rooted at "
                f"{self.network.root!r}"
            )


@dataclass
class CandidateSet:
    set_id: str
    pos_category: str
    members: list[Candidate]

    def __post_init__(self):
        if len(self.members) < 2:
            raise ValueError("a candidate set needs at least two members")
        words = [m.word for m in self.members]
        if len(set(words)) != len(words):
            raise ValueError("duplicate candidate words")

    def words(self) -> list[str]:
        return [m.word for m in self.members]


@dataclass
class ChoiceScore:
    """One candidate's evidence total and its per-word breakdown."""

    candidate: str
    total: float
    per_word: dict[str, float] = field(default_factory=dict)

    def top_contributors(self, n: int = 5) -> list[tuple[str, float]]:
        ranked = sorted(self.per_word.items(), key=lambda item: (-item[1], item[0]))
        return [(word, value) for word, value in ranked[:n] if value > 0]


def score_candidate(
    net: CoocNetwork,
    sentence: GapSentence,
    evidence_window: int | None = None,
) -> ChoiceScore:
    """Total the network's relation scores over the sentence's evidence tokens."""
    total = 0.0
    per_word: dict[str, float] = {}
    for tok in sentence.evidence_tokens(evidence_window):
        value = significance(net, tok.surface).value
        total += value
        per_word[tok.surface] = per_word.get(tok.surface, 0.0) + value
    return ChoiceScore(candidate=net.root, total=total, per_word=per_word)


def choose(
    cands: CandidateSet,
    sentence: GapSentence,
    evidence_window: int | None = None,
) -> list[ChoiceScore]:
    """Rank candidates by evidence total, descending.

    Ties (the all-zero case included) go to the candidate with the higher
    training frequency, then lexicographically, so the degenerate ranking
    reproduces the most-frequent-synonym baseline.
    """
    if not cands.members:
        raise ValueError("cannot choose from an empty candidate set")
    freq = {m.word: m.training_freq for m in cands.members}
    scores = [score_candidate(m.network, sentence, evidence_window) for m in cands.members]
    scores.sort(key=lambda s: (-s.total, -freq[s.candidate], s.candidate))
    return scores


def parse_gap_sentence(
    text: str,
    gap_marker: str = GAP,
    stop_pos_tags: frozenset[str] = frozenset(),
) -> GapSentence:
    """Parse a one-line gap sentence.

    Tokens are whitespace-separated ``surface/TAG`` items (bare surfaces are
    accepted with an empty tag); exactly one token must equal ``gap_marker``.
    """
    tokens: list[Token] = []
    gap_index: int | None = None
    for piece in text.split():
        if piece == gap_marker:
            if gap_index is not None:
                raise ValueError("sentence contains more than one gap marker")
            gap_index = len(tokens)
            tokens.append(Token(GAP, "GAP", 0, is_stop=False))
            continue
        if "/" in piece:
            surface, pos = piece.rsplit("/", 1)
        else:
            surface, pos = piece, ""
        tokens.append(Token(surface.lower(), pos, 0, is_stop=pos in stop_pos_tags))
    if gap_index is None:
        raise ValueError(f"sentence contains no gap marker {gap_marker!r}")
    return GapSentence(tokens, gap_index)
