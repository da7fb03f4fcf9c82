"""Ensemble summarization decoding workbench.

Thin python surface over the C++ core: ROUGE scoring, constrained
decoding over trainable toy models, token-level ensembling, consensus
(MBR) selection, extractive oracles, and the synthetic-corpus generator.
"""

from summens._core import (
    Model,
    RougeScore,
    all_overlap,
    assemble_input,
    beam_decode,
    combined_loss,
    describe_spec,
    evaluate_spec,
    greedy_best,
    greedy_decode,
    kfold_assignment,
    lcs_length,
    load_model,
    mbr_select,
    ngrams,
    rl_loss,
    rouge_score,
    sample_decode,
    save_model,
    split_sentences,
    synth_corpus,
    token_ensemble,
    tokenize,
    train_copymix,
    validate_spec,
    weight_average,
)

__all__ = [
    "Model",
    "RougeScore",
    "all_overlap",
    "assemble_input",
    "beam_decode",
    "combined_loss",
    "describe_spec",
    "evaluate_spec",
    "greedy_best",
    "greedy_decode",
    "kfold_assignment",
    "lcs_length",
    "load_model",
    "mbr_select",
    "ngrams",
    "rl_loss",
    "rouge_score",
    "sample_decode",
    "save_model",
    "split_sentences",
    "synth_corpus",
    "token_ensemble",
    "tokenize",
    "train_copymix",
    "validate_spec",
    "weight_average",
]

__version__ = "0.1.0"
