#pragma once

// Joint source/target byte-pair encoding.
//
// Training starts from characters, with "</w>" glued to the last character
// of every word, and repeatedly merges the most frequent adjacent pair
// (ties: lexicographically smallest (left, right)). It stops when the number
// of distinct symbols in the segmented training data reaches the target
// size or when no pair occurs at least twice.
//
// Encoded output marks every non-final piece of a word with "@@":
// "lowest" -> ["low@@", "est"].

#include "cforge/corpus.hpp"

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace cforge::bpe {

inline constexpr std::string_view end_of_word = "</w>";
inline constexpr std::string_view continuation_marker = "@@";

struct Merge {
    std::string left;
    std::string right;

    friend bool operator==(const Merge &, const Merge &) = default;
};

struct BpeModel {
    std::vector<Merge> merges;             // training order
    std::map<std::string, std::size_t> vocab; // symbol -> frequency; empty for loaded models
    std::size_t target_vocab_size = 16'000;

    // "bpe-v1 <target_vocab_size>" then "<left> <right>" per merge.
    std::string serialize() const;
    static BpeModel parse(std::string_view contents);
};

BpeModel train_bpe(std::span<const corpus::ParallelCorpus> corpora, std::size_t target_vocab_size);

// Training from a word-frequency table; train_bpe builds this from the corpora.
BpeModel train_bpe_from_counts(const std::map<std::string, std::size_t> &word_counts, std::size_t target_vocab_size);

// Replays a model's merges over text. Immutable after construction.
class Encoder {
  public:
    explicit Encoder(const BpeModel &model);

    std::vector<std::string> encode(std::string_view line) const;

    // Symbols of one word with "</w>" still attached to the last symbol.
    std::vector<std::string> segment_word(std::string_view word) const;

  private:
    std::unordered_map<std::string, std::size_t> ranks_; // "left right" -> merge index
};

std::vector<std::string> encode(const BpeModel &model, std::string_view line);

// Joins with spaces and removes every "@@ ".
std::string decode(std::span<const std::string> tokens);

} // namespace cforge::bpe
