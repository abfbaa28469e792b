"""Per-root lexical co-occurrence networks and path-based relation scores.

A network is grown breadth-first from a root word: connect the root to every
word it significantly co-occurs with, then recursively connect those words to
their own significant co-occurrences, up to ``max_order`` hops. A word's
depth is the order of its relation to the root (first-order neighbors at
depth 1, second-order at depth 2, ...). All significant edges among included
nodes are kept, weighted by their t-scores; higher-order relations are never
materialized as edges, they are read off shortest paths.

The relation score for a word w at depth d discounts each edge on a shortest
root-to-w path by its position i and the whole sum by the cube of the order:

    score(root, w) = (1/d^3) * sum_{i=1..d} t(w_{i-1}, w_i) / i

Among the (possibly many) shortest paths, the one maximizing that sum is
chosen, via dynamic programming over the depth layers: a shortest path moves
down exactly one layer per step, so same-depth edges are stored but can
never lie on one. Ties break toward the lexicographically smallest
predecessor, making scores and paths deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import NamedTuple

from .cooc import PairCounts, SignificanceThresholds, is_significant, pair_key, t_score
from .ioutil import atomic_write_text

# Edge weights are stored at this precision so the text format round-trips.
WEIGHT_DECIMALS = 6


class InvalidRootError(ValueError):
    """Root word is unknown or excluded by the stop policy."""


class WordNotInNetworkError(KeyError):
    """Path requested for a word the network does not contain."""


@dataclass(frozen=True)
class NetworkCaps:
    max_nodes: int = 50_000
    max_edges: int = 500_000

    def __post_init__(self):
        if self.max_nodes < 1 or self.max_edges < 0:
            raise ValueError("caps must allow at least the root node")


class SigScore(NamedTuple):
    """Relation score plus the relation's order (None when unreachable)."""

    value: float
    order: int | None


@dataclass(frozen=True)
class SigPath:
    words: tuple[str, ...]

    @property
    def order(self) -> int:
        return len(self.words) - 1


@dataclass
class CoocNetwork:
    root: str
    max_order: int
    depths: dict[str, int]
    edges: dict[tuple[str, str], float]
    total_tokens: int
    half_width: int
    thresholds: SignificanceThresholds | None = None
    truncated: str | None = None
    _adjacency: dict[str, list[tuple[str, float]]] | None = field(
        default=None, repr=False, compare=False
    )
    _best: dict[str, float] | None = field(default=None, repr=False, compare=False)
    _pred: dict[str, str | None] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        self._validate()

    def _validate(self) -> None:
        if self.depths.get(self.root) != 0:
            raise ValueError("network root must be present at depth 0")
        for word, depth in self.depths.items():
            if depth < 0 or depth > self.max_order:
                raise ValueError(f"node {word!r} depth {depth} outside 0..{self.max_order}")
            if depth == 0 and word != self.root:
                raise ValueError(f"non-root node {word!r} at depth 0")
        for (w1, w2), weight in self.edges.items():
            if w1 >= w2:
                raise ValueError(f"edge key ({w1!r}, {w2!r}) not in sorted order")
            if w1 not in self.depths or w2 not in self.depths:
                raise ValueError(f"edge ({w1!r}, {w2!r}) references a missing node")
            if abs(self.depths[w1] - self.depths[w2]) > 1:
                raise ValueError(f"edge ({w1!r}, {w2!r}) spans more than one depth layer")
            if weight <= 0:
                raise ValueError(f"edge ({w1!r}, {w2!r}) has non-positive weight {weight}")
        adjacency = self.adjacency()
        for word, depth in self.depths.items():
            if depth == 0:
                continue
            if not any(self.depths[other] == depth - 1 for other, _ in adjacency.get(word, [])):
                raise ValueError(f"node {word!r} at depth {depth} has no parent edge")

    def __contains__(self, word: str) -> bool:
        return word in self.depths

    @property
    def node_count(self) -> int:
        return len(self.depths)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def depth(self, word: str) -> int | None:
        return self.depths.get(word)

    def weight(self, w1: str, w2: str) -> float:
        return self.edges[pair_key(w1, w2)]

    def adjacency(self) -> dict[str, list[tuple[str, float]]]:
        if self._adjacency is None:
            adjacency: dict[str, list[tuple[str, float]]] = {w: [] for w in self.depths}
            for (w1, w2), weight in self.edges.items():
                adjacency[w1].append((w2, weight))
                adjacency[w2].append((w1, weight))
            for values in adjacency.values():
                values.sort()
            self._adjacency = adjacency
        return self._adjacency

    def _ensure_path_scores(self) -> None:
        """One DP sweep over the depth layers fills the score cache for
        every node; queries afterwards are dictionary lookups."""
        if self._best is not None:
            return
        adjacency = self.adjacency()
        layers: dict[int, list[str]] = {}
        for word, depth in self.depths.items():
            layers.setdefault(depth, []).append(word)
        best: dict[str, float] = {self.root: 0.0}
        pred: dict[str, str | None] = {self.root: None}
        for depth in range(1, max(layers) + 1):
            for word in sorted(layers.get(depth, [])):
                chosen_score: float | None = None
                chosen_pred: str | None = None
                for other, weight in adjacency[word]:
                    if self.depths[other] != depth - 1:
                        continue
                    candidate = best[other] + weight / depth
                    if chosen_score is None or candidate > chosen_score:
                        chosen_score = candidate
                        chosen_pred = other
                best[word] = chosen_score  # type: ignore[assignment]  # parent guaranteed
                pred[word] = chosen_pred
        self._best = best
        self._pred = pred


def build_network(
    root: str,
    counts: PairCounts,
    thresholds: SignificanceThresholds = SignificanceThresholds(),
    max_order: int = 2,
    caps: NetworkCaps = NetworkCaps(),
) -> CoocNetwork:
    """Grow the co-occurrence network for ``root`` breadth-first.

    A word enters at the first depth it is reached. When the node cap fills
    mid-layer, the strongest candidates (by best incoming t-score) are
    admitted first; when the edge cap overflows, the weakest edges go first,
    but each node always keeps its strongest parent edge.
    """
    if max_order < 0:
        raise ValueError("max_order must be >= 0")
    if root not in counts.freq:
        raise InvalidRootError(f"root word {root!r} is not in the vocabulary")
    if counts.freq[root] > counts.stop_threshold:
        raise InvalidRootError(
            f"root word {root!r} is a stop word "
            f"(frequency {counts.freq[root]} > {counts.stop_threshold})"
        )

    depths: dict[str, int] = {root: 0}
    frontier = [root]
    truncated: list[str] = []
    for depth in range(1, max_order + 1):
        if not frontier:
            break
        candidates: dict[str, float] = {}
        for word in sorted(frontier):
            for other in counts.neighbors(word):
                if other in depths:
                    continue
                stats = counts.stats(word, other)
                if not is_significant(stats, thresholds):
                    continue
                t = t_score(stats)
                if other not in candidates or t > candidates[other]:
                    candidates[other] = t
        admitted = sorted(candidates, key=lambda w: (-candidates[w], w))
        room = caps.max_nodes - len(depths)
        if len(admitted) > room:
            admitted = admitted[:room]
            if "nodes" not in truncated:
                truncated.append("nodes")
        for word in admitted:
            depths[word] = depth
        frontier = admitted

    # Retain every significant edge among included nodes. Edges spanning more
    # than one layer can only arise when the node cap displaced a word to a
    # deeper layer than its graph distance; they are dropped to keep the
    # layered structure intact.
    edges: dict[tuple[str, str], float] = {}
    for w1 in sorted(depths):
        for w2 in counts.neighbors(w1):
            if w2 <= w1 or w2 not in depths:
                continue
            if abs(depths[w1] - depths[w2]) > 1:
                continue
            stats = counts.stats(w1, w2)
            if is_significant(stats, thresholds):
                edges[(w1, w2)] = round(t_score(stats), WEIGHT_DECIMALS)

    if len(edges) > caps.max_edges:
        depths, edges = _apply_edge_cap(root, depths, edges, caps.max_edges)
        truncated.append("edges")

    return CoocNetwork(
        root=root,
        max_order=max_order,
        depths=depths,
        edges=edges,
        total_tokens=counts.total_tokens,
        half_width=counts.half_width,
        thresholds=thresholds,
        truncated=",".join(truncated) if truncated else None,
    )


def _best_parent_edge(
    word: str,
    depths: dict[str, int],
    edges: dict[tuple[str, str], float],
) -> tuple[str, str]:
    parent_depth = depths[word] - 1
    best: tuple[float, str] | None = None
    for (w1, w2), weight in edges.items():
        if w1 == word and depths.get(w2) == parent_depth:
            parent = w2
        elif w2 == word and depths.get(w1) == parent_depth:
            parent = w1
        else:
            continue
        # Highest weight wins; ties fall to the lexicographically smaller parent.
        if best is None or weight > best[0] or (weight == best[0] and parent < best[1]):
            best = (weight, parent)
    assert best is not None, f"node {word!r} lost its parent edge"
    return pair_key(word, best[1])


def _apply_edge_cap(
    root: str,
    depths: dict[str, int],
    edges: dict[tuple[str, str], float],
    max_edges: int,
) -> tuple[dict[str, int], dict[tuple[str, str], float]]:
    """Drop lowest-t edges until the cap holds, protecting each node's
    strongest parent edge; if even the parent edges overflow the cap, trim
    the weakest deepest-layer nodes (never orphaning anyone, since parents
    sit strictly above the layer being trimmed)."""
    depths = dict(depths)
    edges = dict(edges)
    protected = {w: _best_parent_edge(w, depths, edges) for w in depths if depths[w] > 0}

    while len(protected) > max_edges:
        deepest = max(depths.values())
        layer = [w for w in depths if depths[w] == deepest]
        victim = min(layer, key=lambda w: (edges[protected[w]], w))
        del depths[victim]
        del protected[victim]
        for key in [k for k in edges if victim in k]:
            del edges[key]

    protected_keys = set(protected.values())
    if len(edges) > max_edges:
        spare = sorted(
            (key for key in edges if key not in protected_keys),
            key=lambda key: (-edges[key], key),
        )
        keep = protected_keys.union(spare[: max_edges - len(protected_keys)])
        edges = {key: edges[key] for key in sorted(keep)}
    return depths, edges


def max_sig_shortest_path(net: CoocNetwork, word: str) -> SigPath:
    """The shortest root-to-word path with the largest discounted t-score sum."""
    if word not in net.depths:
        raise WordNotInNetworkError(
            f"{word!r} is not in the network rooted at {net.root!r}"
        )
    net._ensure_path_scores()
    assert net._pred is not None
    path = [word]
    while path[-1] != net.root:
        predecessor = net._pred[path[-1]]
        assert predecessor is not None
        path.append(predecessor)
    return SigPath(tuple(reversed(path)))


def significance(net: CoocNetwork, word: str) -> SigScore:
    """Score the relation between the root and ``word``.

    Unreachable words (not in the network within its order bound) score 0,
    so sentence scoring tolerates unknown words; the root never scores
    itself. A depth-1 relation's score is exactly its edge t-score.
    """
    depth = net.depths.get(word)
    if depth is None:
        return SigScore(0.0, None)
    if depth == 0:
        return SigScore(0.0, 0)
    net._ensure_path_scores()
    assert net._best is not None
    return SigScore(net._best[word] / depth**3, depth)


def write_network(net: CoocNetwork, path: str | Path) -> None:
    """Deterministic text serialization: nodes by (depth, word), edges by key."""
    lines = [
        f"ROOT {net.root}",
        f"ORDER {net.max_order}",
        f"N {net.total_tokens}",
        f"K {net.half_width}",
    ]
    if net.thresholds is not None:
        lines.append(f"TMIN {net.thresholds.t_min}")
        lines.append(f"MIMIN {net.thresholds.mi_min}")
    if net.truncated:
        lines.append(f"TRUNCATED {net.truncated}")
    for word in sorted(net.depths, key=lambda w: (net.depths[w], w)):
        lines.append(f"NODE {word} {net.depths[word]}")
    for (w1, w2) in sorted(net.edges):
        lines.append(f"EDGE {w1} {w2} {net.edges[(w1, w2)]:.{WEIGHT_DECIMALS}f}")
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_network(path: str | Path) -> CoocNetwork:
    path = Path(path)
    header: dict[str, str] = {}
    depths: dict[str, int] = {}
    edges: dict[tuple[str, str], float] = {}
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        kind, rest = line.split(" ", 1)
        if kind == "NODE":
            word, depth = rest.rsplit(" ", 1)
            depths[word] = int(depth)
        elif kind == "EDGE":
            w1, w2, weight = rest.split(" ")
            edges[(w1, w2)] = float(weight)
        else:
            header[kind] = rest
    for required in ("ROOT", "ORDER", "N", "K"):
        if required not in header:
            raise ValueError(f"{path}: missing {required} header line")
    thresholds = None
    if "TMIN" in header and "MIMIN" in header:
        thresholds = SignificanceThresholds(float(header["TMIN"]), float(header["MIMIN"]))
    return CoocNetwork(
        root=header["ROOT"],
        max_order=int(header["ORDER"]),
        depths=depths,
        edges=edges,
        total_tokens=int(header["N"]),
        half_width=int(header["K"]),
        thresholds=thresholds,
        truncated=header.get("TRUNCATED"),
    )
