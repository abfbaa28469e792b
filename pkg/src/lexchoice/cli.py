"""Command-line front end: count statistics, build networks, fill gaps,
run evaluations.

Subcommands write deterministic, self-describing text artifacts (vocab and
pair-count tables, per-root network files, evaluation reports); identical
inputs and config produce byte-identical outputs. A JSON config file
(--config or the LEXCHOICE_CONFIG env var) supplies defaults that individual
flags override.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import choice, cooc, corpus, evaluation, network
from .ioutil import atomic_write_text

CONFIG_ENV_VAR = "LEXCHOICE_CONFIG"


class CliError(Exception):
    """Fatal command error; the message names the offending path or word."""


def _load_config(path: str | None) -> dict:
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR)
    if path is None:
        return {}
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise CliError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"config {path} is not valid JSON: {exc}") from exc


def _corpus_config(fmt: str, max_freq: int) -> corpus.CorpusConfig:
    return corpus.CorpusConfig(format=fmt, stop_threshold=max_freq)


def _read_corpus(paths: list[str], cfg: corpus.CorpusConfig) -> corpus.TokenStream:
    for path in paths:
        if not Path(path).exists():
            raise CliError(f"corpus file not found: {path}")
    return corpus.ingest_files(paths, cfg)


def cmd_stats(args: argparse.Namespace) -> int:
    cfg = _corpus_config(args.format, args.max_freq)
    stream = _read_corpus(args.corpus, cfg)
    vocab = corpus.build_vocabulary(stream, cfg)
    window = cooc.WindowConfig(args.window, args.cross_sentences)
    counts = cooc.count_pairs(stream, vocab, window)
    out = Path(args.out)
    corpus.write_vocabulary(vocab, out / "vocab.tsv")
    cooc.write_pair_counts(counts, out / "pairs.tsv")
    print(f"N={vocab.total_tokens} vocabulary={len(vocab.freq)} pairs={len(counts.pairs)}")
    return 0


def _load_counts(counts_dir: str) -> cooc.PairCounts:
    base = Path(counts_dir)
    vocab_path = base / "vocab.tsv"
    pairs_path = base / "pairs.tsv"
    for path in (vocab_path, pairs_path):
        if not path.exists():
            raise CliError(f"counts artifact missing: {path}")
    vocab = corpus.read_vocabulary(vocab_path)
    return cooc.read_pair_counts(pairs_path, vocab)


def cmd_build(args: argparse.Namespace) -> int:
    counts = _load_counts(args.counts)
    thresholds = cooc.SignificanceThresholds(args.t_min, args.mi_min)
    caps = network.NetworkCaps(args.max_nodes, args.max_edges)
    out = Path(args.out)
    failed = False
    for root in args.root:
        root = root.lower()
        try:
            net = network.build_network(root, counts, thresholds, args.order, caps)
        except network.InvalidRootError as exc:
            print(f"error: {exc}", file=sys.stderr)
            failed = True
            continue
        network.write_network(net, out / f"{root}.net")
        summary = f"{root}: nodes={net.node_count} edges={net.edge_count}"
        if net.truncated:
            summary += f" truncated={net.truncated}"
        print(summary)
    return 1 if failed else 0


def cmd_choose(args: argparse.Namespace) -> int:
    words = [w.strip().lower() for w in args.candidates.split(",") if w.strip()]
    if len(words) < 2:
        raise CliError("need at least two comma-separated candidates")
    networks_dir = Path(args.networks)
    nets: dict[str, network.CoocNetwork] = {}
    for word in words:
        path = networks_dir / f"{word}.net"
        if not path.exists():
            raise CliError(f"no network file for candidate {word!r}: {path}")
        nets[word] = network.read_network(path)

    vocab_path = Path(args.vocab) if args.vocab else networks_dir / "vocab.tsv"
    vocab = corpus.read_vocabulary(vocab_path) if vocab_path.exists() else None
    freqs = {w: (vocab.freq.get(w, 0) if vocab else 0) for w in words}

    sentence = choice.parse_gap_sentence(
        args.sentence, args.gap_marker, corpus.DEFAULT_STOP_TAGS
    )
    if vocab is not None:
        for tok in sentence.tokens:
            if vocab.is_frequency_stopped(tok.surface):
                tok.is_stop = True

    cands = choice.CandidateSet(
        set_id="cli",
        pos_category=args.pos,
        members=[choice.Candidate(w, nets[w], freqs[w]) for w in words],
    )
    ranked = choice.choose(cands, sentence, args.evidence_window)
    fallback = ranked[0].total == 0.0

    if args.json:
        payload = {
            "winner": ranked[0].candidate,
            "baseline_fallback": fallback,
            "ranking": [
                {
                    "candidate": score.candidate,
                    "total": score.total,
                    "evidence": [
                        {
                            "word": word,
                            "contribution": value,
                            "order": nets[score.candidate].depth(word),
                        }
                        for word, value in score.top_contributors(args.top)
                    ],
                }
                for score in ranked
            ],
        }
        print(json.dumps(payload, indent=2, sort_keys=True))
        return 0

    for rank, score in enumerate(ranked, 1):
        print(f"{rank}. {score.candidate}  total={score.total:.6f}")
        contributors = score.top_contributors(args.top)
        if contributors:
            parts = [
                f"{word}={value:.6f}@{nets[score.candidate].depth(word)}"
                for word, value in contributors
            ]
            print(f"   evidence: {' '.join(parts)}")
    if fallback:
        print(f"winner: {ranked[0].candidate} (baseline fallback: most frequent candidate)")
    else:
        print(f"winner: {ranked[0].candidate}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    config = _load_config(args.config)

    def setting(key: str, flag_value, default):
        if flag_value is not None:
            return flag_value
        return config.get(key, default)

    train_paths = setting("train_corpus", args.train, None)
    heldout_paths = setting("heldout_corpus", args.heldout, None)
    if not train_paths or not heldout_paths:
        raise CliError("evaluate needs train_corpus and heldout_corpus (config or flags)")
    if isinstance(train_paths, str):
        train_paths = [train_paths]
    if isinstance(heldout_paths, str):
        heldout_paths = [heldout_paths]

    train_resolved = {Path(p).resolve() for p in train_paths}
    overlap = train_resolved.intersection(Path(p).resolve() for p in heldout_paths)
    if overlap:
        raise CliError(
            "training and held-out corpora overlap "
            f"({', '.join(str(p) for p in sorted(overlap))}); "
            "evaluation requires disjoint corpora"
        )

    fmt = setting("format", args.format, "slash")
    max_freq = int(setting("max_freq", args.max_freq, corpus.DEFAULT_STOP_THRESHOLD))
    windows = [int(w) for w in setting("windows", args.window or None, [4, 10, 50])]
    orders = [int(d) for d in setting("orders", args.order or None, [1, 2, 3])]
    thresholds = cooc.SignificanceThresholds(
        float(setting("t_min", args.t_min, 2.0)),
        float(setting("mi_min", args.mi_min, 2.0)),
    )
    caps = network.NetworkCaps(
        int(setting("max_nodes", args.max_nodes, 50_000)),
        int(setting("max_edges", args.max_edges, 500_000)),
    )
    cross = bool(setting("cross_sentences", args.cross_sentences or None, False))
    evidence_window = setting("evidence_window", args.evidence_window, None)
    out_dir = Path(setting("out_dir", args.out, "eval-out"))

    raw_sets = config.get("sets")
    if not raw_sets:
        raise CliError("evaluate config must define candidate sets under 'sets'")
    set_defs = [
        evaluation.SetDefinition(str(s["id"]), s["pos"], list(s["members"]))
        for s in raw_sets
    ]

    cfg = _corpus_config(fmt, max_freq)
    train_ts = _read_corpus([str(p) for p in train_paths], cfg)
    heldout_ts = _read_corpus([str(p) for p in heldout_paths], cfg)
    train_vocab = corpus.build_vocabulary(train_ts, cfg)
    corpus.apply_stop_policy(heldout_ts, train_vocab, cfg)

    for sdef in set_defs:
        missing = [w for w in sdef.members if w not in train_vocab.freq]
        if missing:
            raise CliError(
                f"set {sdef.set_id!r}: candidate(s) {', '.join(missing)} "
                "never occur in the training corpus"
            )

    cells = evaluation.run_grid(
        train_ts,
        train_vocab,
        heldout_ts,
        set_defs,
        windows,
        orders,
        thresholds,
        caps,
        cross_sentences=cross,
        evidence_window=evidence_window,
    )
    header = {
        "train": ",".join(str(p) for p in train_paths),
        "heldout": ",".join(str(p) for p in heldout_paths),
        "format": fmt,
        "max_freq": max_freq,
        "t_min": thresholds.t_min,
        "mi_min": thresholds.mi_min,
        "windows": ",".join(str(w) for w in windows),
        "orders": ",".join(str(d) for d in orders),
        "max_nodes": caps.max_nodes,
        "max_edges": caps.max_edges,
    }
    report_text = evaluation.render_grid_report(cells, set_defs, header)
    atomic_write_text(out_dir / "report.tsv", report_text)
    atomic_write_text(out_dir / "instances.tsv", evaluation.render_instance_log(cells))
    print(report_text, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexchoice",
        description="Choose the most typical near-synonym via lexical co-occurrence networks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_stats = sub.add_parser("stats", help="count a corpus into vocab and pair tables")
    p_stats.add_argument("--corpus", action="append", required=True,
                         help="tagged corpus file (repeatable, concatenated in order)")
    p_stats.add_argument("--format", choices=["slash", "tsv"], default="slash")
    p_stats.add_argument("--window", type=int, default=4, help="half-width k")
    p_stats.add_argument("--cross-sentences", action="store_true")
    p_stats.add_argument("--max-freq", type=int, default=corpus.DEFAULT_STOP_THRESHOLD,
                         help="stop-word frequency threshold F")
    p_stats.add_argument("--out", required=True, help="output directory")
    p_stats.set_defaults(func=cmd_stats)

    p_build = sub.add_parser("build", help="build co-occurrence networks from counts")
    p_build.add_argument("--counts", required=True, help="directory from 'stats'")
    p_build.add_argument("--root", action="append", required=True)
    p_build.add_argument("--order", type=int, default=2, help="maximum relation order D")
    p_build.add_argument("--t-min", type=float, default=2.0)
    p_build.add_argument("--mi-min", type=float, default=2.0)
    p_build.add_argument("--max-nodes", type=int, default=50_000)
    p_build.add_argument("--max-edges", type=int, default=500_000)
    p_build.add_argument("--out", required=True, help="output directory for .net files")
    p_build.set_defaults(func=cmd_build)

    p_choose = sub.add_parser("choose", help="rank candidates for a gap sentence")
    p_choose.add_argument("--networks", required=True, help="directory of .net files")
    p_choose.add_argument("--candidates", required=True, help="comma-separated words")
    p_choose.add_argument("--sentence", required=True,
                          help="tagged sentence with the gap marker in place")
    p_choose.add_argument("--gap-marker", default=choice.GAP)
    p_choose.add_argument("--pos", default="NN", help="candidate POS category label")
    p_choose.add_argument("--vocab", default=None,
                          help="vocab.tsv for training frequencies (default: networks dir)")
    p_choose.add_argument("--evidence-window", type=int, default=None,
                          help="only count evidence within this distance of the gap")
    p_choose.add_argument("--top", type=int, default=5, help="evidence words shown per candidate")
    p_choose.add_argument("--json", action="store_true")
    p_choose.set_defaults(func=cmd_choose)

    p_eval = sub.add_parser("evaluate", help="run the window/order evaluation grid")
    p_eval.add_argument("--config", default=None,
                        help=f"JSON config path (default: ${CONFIG_ENV_VAR})")
    p_eval.add_argument("--train", action="append", help="training corpus file (repeatable)")
    p_eval.add_argument("--heldout", action="append", help="held-out corpus file (repeatable)")
    p_eval.add_argument("--format", choices=["slash", "tsv"], default=None)
    p_eval.add_argument("--window", action="append", type=int,
                        help="window half-width (repeatable, overrides config)")
    p_eval.add_argument("--order", action="append", type=int,
                        help="relation order (repeatable, overrides config)")
    p_eval.add_argument("--t-min", type=float, default=None)
    p_eval.add_argument("--mi-min", type=float, default=None)
    p_eval.add_argument("--max-freq", type=int, default=None)
    p_eval.add_argument("--max-nodes", type=int, default=None)
    p_eval.add_argument("--max-edges", type=int, default=None)
    p_eval.add_argument("--cross-sentences", action="store_true")
    p_eval.add_argument("--evidence-window", type=int, default=None)
    p_eval.add_argument("--out", default=None, help="report output directory")
    p_eval.set_defaults(func=cmd_evaluate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, corpus.CorpusFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entrypoint() -> None:
    sys.exit(main())
