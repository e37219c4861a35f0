#pragma once

// Corpus-level BLEU over pre-tokenized segments.
//
// Clipped n-gram matches and n-gram totals (n = 1..4) are summed over the
// whole corpus, p_n = matches_n / totals_n, and
//
//   BP   = 1                          if hyp_len > ref_len
//        = exp(1 - ref_len / hyp_len)  otherwise
//   BLEU = 100 * BP * exp((1/4) * sum_n log p_n)
//
// Orders with no hypothesis n-grams at all (every segment shorter than n)
// are left out of the mean, which then runs over the remaining orders.
//
// Smoothing::none: any p_n == 0 makes BLEU 0.
// Smoothing::add_k_exp: a floor that halves with each empty order. Walking
// n = 1..4 with k = 1, every order with zero matches gets k *= 2 and
// p_n = 1 / (k * totals_n). Orders with matches keep their raw precision.

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace cforge::metrics {

enum class Smoothing { none, add_k_exp };

std::string_view to_string(Smoothing s);
Smoothing smoothing_from_string(std::string_view s);

// "whitespace": split on white space after NFC.
// "punct-split": additionally detaches leading/trailing ASCII and common
// Unicode punctuation from each token ("end." -> "end", ".").
enum class Normalizer { whitespace, punct_split };

std::string_view to_string(Normalizer n);
Normalizer normalizer_from_string(std::string_view s);

std::vector<std::string> bleu_tokenize(std::string_view line, Normalizer normalizer);

using Segment = std::vector<std::string>;

struct BleuReport {
    double bleu = 0.0;
    std::array<double, 4> precisions{};
    std::array<std::size_t, 4> matches{};
    std::array<std::size_t, 4> totals{};
    double brevity_penalty = 1.0;
    std::size_t hyp_len = 0;
    std::size_t ref_len = 0;
    Smoothing smoothing = Smoothing::none;
    std::string normalizer = "pretokenized";

    nlohmann::ordered_json to_json() const;
    std::string to_markdown() const;
};

double brevity_penalty(std::size_t hyp_len, std::size_t ref_len);

BleuReport corpus_bleu(std::span<const Segment> hypotheses, std::span<const Segment> references,
                       Smoothing smoothing = Smoothing::none);

// Tokenizes raw lines with the normalizer and records its name in the report.
BleuReport corpus_bleu_lines(std::span<const std::string> hypotheses, std::span<const std::string> references,
                             Normalizer normalizer = Normalizer::whitespace, Smoothing smoothing = Smoothing::none);

} // namespace cforge::metrics
