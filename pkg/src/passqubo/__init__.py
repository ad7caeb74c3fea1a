"""Boltzmann modeling of tokenized passwords with QUBO energies.

The pipeline: tokenize a password corpus with byte-pair encoding, encode
token sequences as fixed-width bit vectors, fit an upper-triangular QUBO so
the induced Boltzmann distribution matches the corpus, sample new passwords
by Gibbs sampling, embed the model as a geometrically constrained atom
layout, and score generated passwords against held-out folds.
"""

from .boltzmann import (QuboModel, SampleBatch, SamplerConfig,
                        conditional_probability, energy, exact_distribution,
                        exact_kl, exact_moments, gibbs_sample, load_model,
                        log_partition, save_model, state_index,
                        write_bitstrings)
from .corpus import (PasswordCorpus, SplitPlan, filter_by_token_length,
                     load_corpus, load_split_plan, make_splits,
                     save_split_plan)
from .encoding import (EncodingScheme, SCHEME_NAMES, decode_password,
                       decode_token, encode_password, encode_token,
                       make_scheme)
from .errors import (DataError, EmptyCorpusError, OutOfVocabularyError,
                     VocabularySizeError)
from .evaluate import (BkTree, EvalReport, build_bk_tree, edit_distance,
                       evaluate_generated, min_edit_distance, overlap_score,
                       save_report_csv, save_report_json, uniform_baseline)
from .placement import (BlockadeGraph, ConstraintRecord, DeviceConstraints,
                        Placement, blockade_graph, default_circle_scale,
                        edge_probabilities, force_placement, load_placement,
                        pin_y_coordinates, render_svg, sample_blockade_states,
                        save_placement, validate_constraints)
from .tokenizer import (EOW, TokenSequence, TokenVocabulary, detokenize,
                        load_vocab, save_vocab, tokenize, train_bpe)
from .training import (AdamState, Checkpoint, LossRecord, TrainConfig,
                       adam_update, empirical_moments, init_qubo,
                       kl_gradient_estimate, load_checkpoint, save_checkpoint,
                       save_loss_csv, train)

__version__ = "0.1.0"

__all__ = [
    "AdamState", "BkTree", "BlockadeGraph", "Checkpoint", "ConstraintRecord",
    "DataError", "DeviceConstraints", "EmptyCorpusError", "EncodingScheme",
    "EOW", "EvalReport", "LossRecord", "OutOfVocabularyError",
    "PasswordCorpus", "Placement", "QuboModel", "SampleBatch",
    "SamplerConfig", "SplitPlan", "TokenSequence", "TokenVocabulary",
    "TrainConfig", "VocabularySizeError", "SCHEME_NAMES", "adam_update",
    "blockade_graph", "build_bk_tree", "conditional_probability",
    "decode_password", "decode_token", "default_circle_scale", "detokenize",
    "edge_probabilities", "edit_distance", "empirical_moments", "energy",
    "encode_password", "encode_token", "evaluate_generated",
    "exact_distribution", "exact_kl", "exact_moments",
    "filter_by_token_length", "force_placement", "gibbs_sample", "init_qubo",
    "kl_gradient_estimate", "load_checkpoint", "load_corpus", "load_model",
    "load_placement", "load_split_plan", "load_vocab", "log_partition",
    "make_scheme", "make_splits", "min_edit_distance", "overlap_score",
    "pin_y_coordinates", "render_svg", "sample_blockade_states",
    "save_checkpoint", "save_loss_csv", "save_model", "save_placement",
    "save_report_csv", "save_report_json", "save_split_plan",
    "save_vocab", "state_index", "tokenize", "train", "train_bpe",
    "uniform_baseline", "validate_constraints", "write_bitstrings",
]
