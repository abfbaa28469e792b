"""Gap-fill evaluation: instances from a held-out corpus, accuracy against
the most-frequent-synonym baseline, and Pearson's chi-squared significance.

Every occurrence of a candidate word in the held-out corpus (matching
surface and coarse POS category, word sense ignored) becomes one test
instance with that occurrence blanked; a sentence holding several candidate
occurrences yields several instances, the other occurrences staying visible
as evidence. The program's choice is correct when it matches the word the
author originally used, an imperfect but automatic stand-in for human
typicality judgments, so a strong frequency baseline can legitimately win.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .choice import Candidate, CandidateSet, ChoiceScore, GapSentence, choose
from .cooc import PairCounts, SignificanceThresholds, WindowConfig, count_pairs
from .corpus import TokenStream, Vocabulary
from .network import NetworkCaps, build_network

# Critical value for one degree of freedom at the 5% level.
CHI2_5PCT_CRITICAL = 3.841

WINDOW_NAMES = {4: "narrow", 10: "medium", 50: "wide"}


def coarse_category(tag: str) -> str:
    """Collapse inflected tags: NN/NNS -> NN, VB* -> VB, JJ* -> JJ.

    Proper-noun tags stay their own category so that a set of common nouns
    never captures name occurrences.
    """
    if tag.startswith("NNP"):
        return "NNP"
    for prefix in ("NN", "VB", "JJ", "RB"):
        if tag.startswith(prefix):
            return prefix
    return tag


@dataclass
class GapInstance:
    sentence: GapSentence
    gold: str
    set_id: str
    sentence_id: int = 0
    position: int = 0


@dataclass
class EvalReport:
    set_id: str
    sample_size: int
    accuracy: float
    baseline_accuracy: float
    chi2: float
    significant_at_5pct: bool
    config: dict | None = None

    def __post_init__(self):
        if self.sample_size < 1:
            raise ValueError("sample_size must be >= 1")
        for value in (self.accuracy, self.baseline_accuracy):
            if not 0.0 <= value <= 1.0:
                raise ValueError("accuracies must lie in [0, 1]")


@dataclass
class InstanceOutcome:
    instance: GapInstance
    ranked: list[ChoiceScore]

    @property
    def chosen(self) -> str:
        return self.ranked[0].candidate

    @property
    def correct(self) -> bool:
        return self.chosen == self.instance.gold


def extract_instances(
    held_out: TokenStream,
    words: Iterable[str],
    pos_category: str,
    set_id: str = "",
) -> list[GapInstance]:
    """One instance per candidate-word occurrence in the held-out stream."""
    targets = {w.lower() for w in words}
    instances: list[GapInstance] = []
    sentence: list = []
    current_id: int | None = None

    def flush():
        if current_id is None:
            return
        for i, tok in enumerate(sentence):
            if tok.surface in targets and coarse_category(tok.pos) == pos_category:
                instances.append(
                    GapInstance(
                        sentence=GapSentence.blank_out(sentence, i),
                        gold=tok.surface,
                        set_id=set_id,
                        sentence_id=current_id,
                        position=i,
                    )
                )

    for tok in held_out:
        if current_id is not None and tok.sentence_id != current_id:
            flush()
            sentence = []
        current_id = tok.sentence_id
        sentence.append(tok)
    flush()
    return instances


def make_gap_instances(held_out: TokenStream, cands: CandidateSet) -> list[GapInstance]:
    return extract_instances(held_out, cands.words(), cands.pos_category, cands.set_id)


def baseline_choose(cands: CandidateSet) -> str:
    """The candidate most frequent in the training corpus (ties lexicographic)."""
    return min(cands.members, key=lambda m: (-m.training_freq, m.word)).word


def judge_instances(
    cands: CandidateSet,
    instances: list[GapInstance],
    evidence_window: int | None = None,
) -> list[InstanceOutcome]:
    return [
        InstanceOutcome(inst, choose(cands, inst.sentence, evidence_window))
        for inst in instances
    ]


def chi_square(correct_a: int, n_a: int, correct_b: int, n_b: int) -> tuple[float, bool]:
    """Pearson's chi-squared on the 2x2 correct/incorrect table, 1 degree of
    freedom, no continuity correction. Degenerate margins give (0, False)."""
    if n_a < 1 or n_b < 1:
        raise ValueError("both samples must be non-empty")
    wrong_a = n_a - correct_a
    wrong_b = n_b - correct_b
    if min(correct_a, correct_b, wrong_a, wrong_b) < 0:
        raise ValueError("correct counts cannot exceed sample sizes or be negative")
    col_correct = correct_a + correct_b
    col_wrong = wrong_a + wrong_b
    if col_correct == 0 or col_wrong == 0:
        return 0.0, False
    total = n_a + n_b
    chi2 = (
        total
        * (correct_a * wrong_b - correct_b * wrong_a) ** 2
        / (col_correct * col_wrong * n_a * n_b)
    )
    return chi2, chi2 > CHI2_5PCT_CRITICAL


def evaluate(
    cands: CandidateSet,
    instances: list[GapInstance],
    config: dict | None = None,
    evidence_window: int | None = None,
) -> EvalReport:
    """Accuracy of the choice program and of the baseline over the instances."""
    if not instances:
        raise ValueError("cannot evaluate an empty instance list")
    member_words = set(cands.words())
    for inst in instances:
        if inst.gold not in member_words:
            raise ValueError(f"instance gold {inst.gold!r} is not a candidate")
    outcomes = judge_instances(cands, instances, evidence_window)
    return summarize(cands, outcomes, config)


def summarize(
    cands: CandidateSet,
    outcomes: list[InstanceOutcome],
    config: dict | None = None,
) -> EvalReport:
    n = len(outcomes)
    baseline_word = baseline_choose(cands)
    correct = sum(1 for o in outcomes if o.correct)
    baseline_correct = sum(1 for o in outcomes if o.instance.gold == baseline_word)
    chi2, significant = chi_square(correct, n, baseline_correct, n)
    return EvalReport(
        set_id=cands.set_id,
        sample_size=n,
        accuracy=correct / n,
        baseline_accuracy=baseline_correct / n,
        chi2=chi2,
        significant_at_5pct=significant,
        config=config,
    )


@dataclass
class SetDefinition:
    set_id: str
    pos_category: str
    members: list[str]

    def __post_init__(self):
        self.members = [w.lower() for w in self.members]
        if len(self.members) < 2:
            raise ValueError(f"set {self.set_id!r} needs at least two members")


@dataclass
class CellResult:
    """All per-set results for one (window, order) configuration."""

    window: int
    order: int
    reports: dict[str, EvalReport]
    outcomes: dict[str, list[InstanceOutcome]]


def grid_cells(windows: list[int], orders: list[int]) -> list[tuple[int, int]]:
    """The window/order sweep, omitting the wide third-order cell."""
    return [(k, d) for k in windows for d in orders if not (k == 50 and d == 3)]


def run_grid(
    train_ts: TokenStream,
    train_vocab: Vocabulary,
    heldout_ts: TokenStream,
    set_defs: list[SetDefinition],
    windows: list[int],
    orders: list[int],
    thresholds: SignificanceThresholds = SignificanceThresholds(),
    caps: NetworkCaps = NetworkCaps(),
    cross_sentences: bool = False,
    evidence_window: int | None = None,
) -> list[CellResult]:
    """Evaluate every synonym set at every grid cell.

    Networks are built once per (set, window, order) cell and then queried
    read-only across all of that cell's instances.
    """
    instances = {
        sdef.set_id: extract_instances(heldout_ts, sdef.members, sdef.pos_category, sdef.set_id)
        for sdef in set_defs
    }
    for sdef in set_defs:
        if not instances[sdef.set_id]:
            raise ValueError(
                f"set {sdef.set_id!r}: no occurrences of {', '.join(sdef.members)} "
                "in the held-out corpus"
            )
    counts_by_window: dict[int, PairCounts] = {}
    cells: list[CellResult] = []
    for window, order in grid_cells(windows, orders):
        if window not in counts_by_window:
            counts_by_window[window] = count_pairs(
                train_ts, train_vocab, WindowConfig(window, cross_sentences)
            )
        counts = counts_by_window[window]
        reports: dict[str, EvalReport] = {}
        outcomes: dict[str, list[InstanceOutcome]] = {}
        for sdef in set_defs:
            members = [
                Candidate(
                    word=w,
                    network=build_network(w, counts, thresholds, order, caps),
                    training_freq=train_vocab.freq.get(w, 0),
                )
                for w in sdef.members
            ]
            cands = CandidateSet(sdef.set_id, sdef.pos_category, members)
            config = {
                "window": window,
                "order": order,
                "t_min": thresholds.t_min,
                "mi_min": thresholds.mi_min,
            }
            cell_outcomes = judge_instances(cands, instances[sdef.set_id], evidence_window)
            outcomes[sdef.set_id] = cell_outcomes
            reports[sdef.set_id] = summarize(cands, cell_outcomes, config)
        cells.append(CellResult(window, order, reports, outcomes))
    return cells


def _row_label(window: int, order: int) -> str:
    name = WINDOW_NAMES.get(window, f"k{window}")
    return f"{name}-{order}"


def render_grid_report(cells: list[CellResult], set_defs: list[SetDefinition],
                       header_config: dict | None = None) -> str:
    """Delimited accuracy grid: rows are window/order, columns synonym sets,
    baseline row first. '~' marks a cell whose difference from the baseline
    is not significant at the 5% level."""
    set_ids = [sdef.set_id for sdef in set_defs]
    lines = ["# lexical choice evaluation"]
    if header_config:
        pairs = " ".join(f"{key}={header_config[key]}" for key in sorted(header_config))
        lines.append(f"# config: {pairs}")
    lines.append("# '~' marks cells not significantly different from baseline (chi2, 5% level)")
    lines.append("\t".join(["set"] + set_ids))
    if cells:
        first = cells[0].reports
        lines.append("\t".join(["size"] + [str(first[s].sample_size) for s in set_ids]))
        lines.append(
            "\t".join(
                ["baseline"] + [f"{100 * first[s].baseline_accuracy:.1f}%" for s in set_ids]
            )
        )
    for cell in cells:
        row = [_row_label(cell.window, cell.order)]
        for set_id in set_ids:
            report = cell.reports[set_id]
            marker = "" if report.significant_at_5pct else "~"
            row.append(f"{100 * report.accuracy:.1f}%{marker}")
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def render_instance_log(cells: list[CellResult]) -> str:
    """Machine-readable per-instance log, one line per instance per cell."""
    lines = ["window\torder\tset\tsentence\tposition\tgold\tchosen\tcorrect\tscores"]
    for cell in cells:
        for set_id in sorted(cell.outcomes):
            for outcome in cell.outcomes[set_id]:
                inst = outcome.instance
                scores = ";".join(f"{s.candidate}={s.total:.6f}" for s in outcome.ranked)
                lines.append(
                    "\t".join(
                        [
                            str(cell.window),
                            str(cell.order),
                            set_id,
                            str(inst.sentence_id),
                            str(inst.position),
                            inst.gold,
                            outcome.chosen,
                            str(int(outcome.correct)),
                            scores,
                        ]
                    )
                )
    return "\n".join(lines) + "\n"
