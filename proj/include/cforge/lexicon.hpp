#pragma once

// Word-lexicon translator trained with expectation-maximization.
//
// Every target sentence is extended with one null token; each target token
// is explained by a uniformly chosen source position, so
//
//   P(e_1..e_l, null | f_1..f_m) = prod_j (1/m) sum_i t(e_j | f_i)
//
// E-step: each target token's unit count is spread over the source tokens of
// its sentence in proportion to t(e_j | f_i). M-step: t(. | f) = counts(f, .)
// renormalized. The log-likelihood above never decreases across iterations.
// Decoding maps each source token to argmax_e t(e | f) in source order,
// drops tokens whose argmax is the null token and copies unknown tokens.

#include "cforge/corpus.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace cforge::baseline {

inline constexpr std::string_view null_token = "<null>";

class LexiconModel {
  public:
    // t(e | f); 0 for unknown f or pairs that never co-occurred after training.
    double probability(std::string_view f, std::string_view e) const;

    const std::set<std::string, std::less<>> &source_vocab() const { return source_vocab_; }
    const std::set<std::string, std::less<>> &target_vocab() const { return target_vocab_; }

    std::size_t iterations_run() const { return iterations_run_; }
    double final_log_likelihood() const { return final_log_likelihood_; }
    // Log-likelihood of the parameters after 0, 1, ..., iterations_run updates.
    const std::vector<double> &log_likelihood_history() const { return history_; }

    // max over f of |sum_e t(e | f) - 1|
    double max_normalization_error() const;

    // argmax_e t(e | f), ties to the lexicographically smallest e; nullopt for unknown f.
    std::optional<std::string> best_translation(std::string_view f) const;

    std::vector<std::string> translate(std::span<const std::string> source_lines) const;

    // Header "lexicon-v1<TAB>iterations<TAB>final_log_likelihood", then
    // sorted "f<TAB>e<TAB>prob" lines, 12 significant digits.
    std::string serialize() const;
    static LexiconModel parse(std::string_view contents);

  private:
    friend LexiconModel initialize_uniform(const corpus::ParallelCorpus &corpus);
    friend LexiconModel train_em(const corpus::ParallelCorpus &corpus, std::size_t iterations);

    void rebuild_best();

    std::map<std::string, std::map<std::string, double, std::less<>>, std::less<>> table_;
    std::map<std::string, std::string, std::less<>> best_;
    std::set<std::string, std::less<>> source_vocab_;
    std::set<std::string, std::less<>> target_vocab_;
    std::optional<double> uniform_; // set only for the untrained initial state
    std::size_t iterations_run_ = 0;
    double final_log_likelihood_ = 0.0;
    std::vector<double> history_;
};

// Initial state: t(e | f) = 1 / |target vocab + null| for every f, e.
LexiconModel initialize_uniform(const corpus::ParallelCorpus &corpus);

LexiconModel train_em(const corpus::ParallelCorpus &corpus, std::size_t iterations);

inline std::vector<std::string> translate(const LexiconModel &model, std::span<const std::string> source_lines) {
    return model.translate(source_lines);
}

} // namespace cforge::baseline
