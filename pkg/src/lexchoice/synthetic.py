"""Planted-collocation corpus generator for end-to-end experiments.

The construction isolates second-order evidence: the target candidate is
planted to co-occur with an anchor word, the anchor with a bridge word, and
the bridge word never with the target directly. Held-out test sentences
offer only the bridge word as evidence, so filling their gaps correctly
requires following the two-hop path; a first-order system sees nothing and
falls back to the (wrong) frequency baseline. A rival candidate with higher
training frequency owns the baseline and gets its own direct evidence word,
so the baseline is not degenerate.

Filler pools are disjoint per sentence pattern, and held-out filler words
never occur in training, keeping the evidence chains uncontaminated.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .evaluation import SetDefinition

TARGET = "widget"
RIVAL = "gadget"
ANCHOR = "assemble"
BRIDGE = "factory"
RIVAL_CUE = "catalog"


@dataclass
class PlantedCorpus:
    train_text: str
    heldout_text: str
    set_def: SetDefinition
    target: str = TARGET
    rival: str = RIVAL
    anchor: str = ANCHOR
    bridge: str = BRIDGE
    rival_cue: str = RIVAL_CUE


def _pool(prefix: str, size: int) -> list[str]:
    return [f"{prefix}{i:03d}" for i in range(size)]


def _tag(words: list[str]) -> str:
    return " ".join(f"{w}/NN" for w in words)


def planted_corpus(
    seed: int = 20,
    n_target: int = 40,
    n_bridge: int = 40,
    n_rival_direct: int = 30,
    n_rival_neutral: int = 120,
    n_plain: int = 1000,
    n_heldout_target: int = 30,
    n_heldout_rival: int = 10,
) -> PlantedCorpus:
    rng = random.Random(seed)
    target_fill = _pool("tf", 8)
    bridge_fill = _pool("bf", 8)
    rival_fill = _pool("rf", 8)
    neutral_fill = _pool("nf", 12)
    plain_fill = _pool("pl", 200)
    heldout_fill = _pool("hx", 20)

    def fills(pool: list[str], n: int) -> list[str]:
        return [rng.choice(pool) for _ in range(n)]

    train_lines: list[str] = []
    for _ in range(n_target):
        f = fills(target_fill, 8)
        train_lines.append(_tag(f[:3] + [TARGET, ANCHOR] + f[3:]))
    for _ in range(n_bridge):
        f = fills(bridge_fill, 8)
        train_lines.append(_tag(f[:3] + [BRIDGE, ANCHOR] + f[3:]))
    for _ in range(n_rival_direct):
        f = fills(rival_fill, 8)
        train_lines.append(_tag(f[:3] + [RIVAL_CUE, RIVAL] + f[3:]))
    for _ in range(n_rival_neutral):
        f = fills(neutral_fill, 9)
        train_lines.append(_tag(f[:4] + [RIVAL] + f[4:]))
    for _ in range(n_plain):
        train_lines.append(_tag(fills(plain_fill, 14)))
    rng.shuffle(train_lines)

    heldout_lines: list[str] = []
    for _ in range(n_heldout_target):
        h = fills(heldout_fill, 5)
        heldout_lines.append(_tag(h[:2] + [BRIDGE] + h[2:3] + [TARGET] + h[3:]))
    for _ in range(n_heldout_rival):
        h = fills(heldout_fill, 5)
        heldout_lines.append(_tag(h[:2] + [RIVAL_CUE] + h[2:3] + [RIVAL] + h[3:]))
    rng.shuffle(heldout_lines)

    set_def = SetDefinition(set_id="planted", pos_category="NN", members=[TARGET, RIVAL])
    return PlantedCorpus(
        train_text="\n".join(train_lines) + "\n",
        heldout_text="\n".join(heldout_lines) + "\n",
        set_def=set_def,
    )
