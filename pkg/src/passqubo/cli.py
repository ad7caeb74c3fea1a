"""Command-line pipeline: tokenize, train, sample, place, eval, emulate.

Every verb that consumes randomness requires an explicit --seed; reruns with
identical arguments produce byte-identical output files. Exit codes: 0 on
success, 1 for usage errors, 2 for data errors such as a bad corpus or an
impossible vocabulary size.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import placement as pl
from .boltzmann import gibbs_sample, load_model, save_model, write_bitstrings
from .corpus import filter_by_token_length, load_corpus, make_splits
from .encoding import SCHEME_NAMES, decode_password, encode_password, make_scheme
from .errors import DataError
from .evaluate import evaluate_generated, save_report_csv, save_report_json
from .tokenizer import detokenize, load_vocab, save_vocab, tokenize, train_bpe
from .training import TrainConfig, save_loss_csv, train


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract wants 1
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _decode_rng(seed: int) -> np.random.Generator:
    # separate stream from the sampler's, still derived from the verb's seed
    return np.random.default_rng(np.random.SeedSequence([seed, 0x5EC0DE]))


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        return [line.rstrip("\n") for line in fh]


def _write_lines(lines: list[str], path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for line in lines:
            fh.write(line)
            fh.write("\n")


def _eval_split(args):
    """Shared corpus -> filtered -> fold pipeline for train and eval."""
    corpus = load_corpus(args.corpus, args.min_len, args.max_len)
    vocab = load_vocab(args.vocab)
    filtered = filter_by_token_length(corpus, vocab, args.max_tokens)
    if args.folds <= 1:
        return vocab, filtered, list(range(len(filtered))), []
    plan = make_splits(filtered, args.folds, args.split_seed)
    return (vocab, filtered, plan.train_indices(args.fold),
            plan.eval_indices(args.fold))


def cmd_tokenize(args) -> int:
    corpus = load_corpus(args.corpus, args.min_len, args.max_len)
    vocab = train_bpe(corpus, args.vocab_size)
    save_vocab(vocab, args.out)
    print(f"{len(vocab)} tokens ({len(vocab.merges)} merges) -> {args.out}")
    return 0


def cmd_train(args) -> int:
    vocab, filtered, train_idx, _ = _eval_split(args)
    scheme = make_scheme(args.encoding, len(vocab))
    passwords = [filtered.passwords[i] for i in train_idx]
    bits = np.stack([
        encode_password(scheme, tokenize(vocab, pw), args.max_tokens,
                        vocab.eow_index)
        for pw in passwords
    ])
    config = TrainConfig(
        iterations=args.iterations, samples_per_iter=args.samples,
        burn_in=args.burn_in, thinning=args.thinning,
        step_size=args.step_size, init_penalty=args.init_penalty,
        seed=args.seed, chains=args.chains,
    )
    model, history = train(bits, scheme, args.max_tokens, config,
                           checkpoint_path=args.checkpoint)
    save_model(model, args.out)
    if args.loss_csv:
        save_loss_csv(history, args.loss_csv)
    last = history[-1]
    kl_note = f", kl {last.kl:.4f}" if last.kl is not None else ""
    print(f"trained {len(passwords)} passwords, n={model.n}"
          f" (grad {last.grad_norm:.5f}{kl_note}) -> {args.out}")
    return 0


def cmd_sample(args) -> int:
    model = load_model(args.model)
    vocab = load_vocab(args.vocab)
    if model.scheme is None:
        raise DataError("model file lacks an encoding scheme")
    if model.scheme.T != len(vocab):
        raise DataError(f"model expects T={model.scheme.T}, vocabulary has {len(vocab)}")
    if args.count == 0:
        _write_lines([], args.out)
        print(f"0 passwords -> {args.out}")
        return 0
    batch = gibbs_sample(model, args.count, args.burn_in, args.thinning,
                         args.seed, args.chains)
    rng = _decode_rng(args.seed)
    passwords = [
        detokenize(vocab, decode_password(model.scheme, vec, rng, vocab.eow_index))
        for vec in batch.vectors
    ]
    _write_lines(passwords, args.out)
    if args.bits_out:
        write_bitstrings(batch.vectors, args.bits_out)
    print(f"{len(passwords)} passwords -> {args.out}")
    return 0


def cmd_place(args) -> int:
    model = load_model(args.model)
    constraints = pl.DeviceConstraints()
    placed = pl.force_placement(model, constraints, args.iterations,
                                args.step_size, args.c, args.seed)
    placed = pl.pin_y_coordinates(placed, args.pin_epsilon)
    placed.record = pl.validate_constraints(placed, constraints)
    pl.save_placement(placed, args.out)
    if args.svg:
        graph = pl.blockade_graph(placed, constraints.blockade_radius)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(pl.render_svg(placed, graph, constraints,
                                   title=f"{placed.n} atoms"))
    r = placed.record
    print(f"placed {placed.n} atoms: extents {r.x_extent:.2f}x{r.y_extent:.2f} um, "
          f"min distance {r.min_pair_distance:.2f} um, "
          f"{'ok' if r.all_ok else 'constraint violations'} -> {args.out}")
    return 0


def cmd_eval(args) -> int:
    generated = _read_lines(args.generated)
    if not generated:
        raise DataError(f"no generated passwords in {args.generated!r}")
    vocab, filtered, _, eval_idx = _eval_split(args)
    if not eval_idx:
        raise DataError("eval fold is empty; check --folds/--fold")
    eval_passwords = [filtered.passwords[i] for i in eval_idx]
    report = evaluate_generated(generated, eval_passwords, vocab,
                                args.max_tokens, args.seed,
                                args.baseline_count)
    save_report_json(report, args.out)
    if args.csv:
        save_report_csv(report, generated, args.csv)
    print(f"overlap {report.overlap:.4f}, med {report.med_mean:.3f}"
          f" (baseline {report.baseline_mean:.3f}"
          f" +- {report.baseline_std:.3f}) -> {args.out}")
    return 0


def cmd_emulate(args) -> int:
    model = load_model(args.model)
    placed = pl.load_placement(args.placement)
    vocab = load_vocab(args.vocab)
    if model.scheme is None:
        raise DataError("model file lacks an encoding scheme")
    if placed.n != model.n:
        raise DataError(f"placement has {placed.n} atoms, model expects {model.n}")
    graph = pl.blockade_graph(placed, args.radius)
    batch = pl.sample_blockade_states(graph, args.count, args.seed, args.lam,
                                      args.burn_in, args.thinning, args.chains)
    rng = _decode_rng(args.seed)
    passwords = [
        detokenize(vocab, decode_password(model.scheme, vec, rng, vocab.eow_index))
        for vec in batch.vectors
    ]
    _write_lines(passwords, args.out)
    print(f"{len(passwords)} blockade-constrained passwords "
          f"({len(graph.edges)} edges) -> {args.out}")
    return 0


def _add_corpus_args(p) -> None:
    p.add_argument("corpus", help="password file, one per line")
    p.add_argument("--min-len", type=int, default=1)
    p.add_argument("--max-len", type=int, default=32)


def _add_split_args(p) -> None:
    p.add_argument("--vocab", required=True, help="vocabulary JSON")
    p.add_argument("--max-tokens", type=int, required=True,
                   help="token budget M per password")
    p.add_argument("--folds", type=int, default=5,
                   help="cross-validation folds (<=1 trains on everything)")
    p.add_argument("--fold", type=int, default=0, help="held-out fold index")
    p.add_argument("--split-seed", type=int, default=0)


def _add_sampler_args(p) -> None:
    p.add_argument("--burn-in", type=int, default=100)
    p.add_argument("--thinning", type=int, default=10)
    p.add_argument("--chains", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="passqubo",
                     description="QUBO Boltzmann password modeling")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tokenize", parents=[], help="learn a BPE vocabulary")
    _add_corpus_args(p)
    p.add_argument("--vocab-size", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("train", help="fit a QUBO Boltzmann model")
    _add_corpus_args(p)
    _add_split_args(p)
    p.add_argument("--encoding", required=True, choices=SCHEME_NAMES)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--iterations", type=int, default=1000)
    p.add_argument("--samples", type=int, default=10_000)
    _add_sampler_args(p)
    p.add_argument("--step-size", type=float, default=0.01)
    p.add_argument("--init-penalty", type=float, default=0.1)
    p.add_argument("--out", required=True, help="model JSON")
    p.add_argument("--loss-csv", default=None)
    p.add_argument("--checkpoint", default=None)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("sample", help="draw passwords from a trained model")
    p.add_argument("model", help="model JSON")
    p.add_argument("--vocab", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    _add_sampler_args(p)
    p.add_argument("--out", required=True)
    p.add_argument("--bits-out", default=None,
                   help="also dump raw bit-vectors, one per line")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("place", help="embed a model as an atom layout")
    p.add_argument("model", help="model JSON")
    p.add_argument("--iterations", type=int, default=100_000)
    p.add_argument("--step-size", type=float, default=1e-10)
    p.add_argument("--c", type=float, default=None,
                   help="inverse initial circle radius (1/m)")
    p.add_argument("--pin-epsilon", type=float, default=0.1)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="placement JSON")
    p.add_argument("--svg", default=None)
    p.set_defaults(func=cmd_place)

    p = sub.add_parser("eval", help="score generated passwords against a fold")
    p.add_argument("generated", help="generated passwords, one per line")
    _add_corpus_args(p)
    _add_split_args(p)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--baseline-count", type=int, default=1000)
    p.add_argument("--out", required=True, help="report JSON")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("emulate",
                       help="sample blockade-constrained states from a layout")
    p.add_argument("model", help="model JSON")
    p.add_argument("placement", help="placement JSON")
    p.add_argument("--vocab", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--radius", type=float, default=4.0)
    p.add_argument("--lam", type=float, default=2.0)
    _add_sampler_args(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_emulate)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DataError, OSError, ValueError) as exc:
        print(f"passqubo: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
