#pragma once

// Nat / Synth / Aug comparison with the lexicon baseline: three models
// trained on natural, synthetic and natural+synthetic training data, each
// scored on every evaluation set.

#include "cforge/bleu.hpp"
#include "cforge/corpus.hpp"
#include "cforge/eval_matrix.hpp"
#include "cforge/lexicon.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cforge::baseline {

struct ExperimentInputs {
    corpus::ParallelCorpus nat_train;
    corpus::ParallelCorpus syn_train;
    std::optional<corpus::ParallelCorpus> syn_valid;
    corpus::ParallelCorpus nat_valid;
    corpus::ParallelCorpus test;
    std::size_t iterations = 10;
    // Suffix of the model labels: "Synth-<label>", "Nat-<label>", "Aug-<label>".
    std::string label = "de";
    metrics::Normalizer normalizer = metrics::Normalizer::whitespace;
    metrics::Smoothing smoothing = metrics::Smoothing::none;
};

struct ExperimentResult {
    metrics::EvalMatrix matrix; // rows Synth, Nat, Aug; columns Synth-val (if given), Nat-val, Test
    std::map<std::string, LexiconModel> models;

    std::vector<metrics::LabeledScore> test_scores() const; // Synth, Nat, Aug on Test
};

inline constexpr std::string_view synth_val_label = "Synth-val";
inline constexpr std::string_view nat_val_label = "Nat-val";
inline constexpr std::string_view test_label = "Test";

// Throws LeakageError if any evaluation pair id occurs in a training corpus.
ExperimentResult run_experiment(const ExperimentInputs &inputs);

} // namespace cforge::baseline
