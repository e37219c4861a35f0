#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cforge::corpus {

enum class Origin { natural, synthetic };

std::string_view to_string(Origin origin);
Origin origin_from_string(std::string_view s);

struct SentencePair {
    std::string id;
    std::string source;
    std::string target;
    Origin origin = Origin::natural;
    std::optional<std::string> seed_word; // set iff origin == synthetic

    // Throws DataError when a field breaks the pair invariants.
    void validate() const;
};

struct ParallelCorpus {
    std::vector<SentencePair> pairs;
    std::string source_lang;
    std::string target_lang;

    // Per-pair checks plus id uniqueness.
    void validate() const;

    std::size_t size() const { return pairs.size(); }
    bool empty() const { return pairs.empty(); }
    std::size_t source_tokens() const;

    std::vector<std::string> sources() const;
    std::vector<std::string> targets() const;

    // Empty corpus sharing this corpus's language codes.
    ParallelCorpus like() const { return ParallelCorpus{{}, source_lang, target_lang}; }
};

// Concatenates corpora with the same language codes; ids must stay unique.
ParallelCorpus concat(const ParallelCorpus &a, const ParallelCorpus &b);

struct SplitSpec {
    std::size_t train_token_threshold = 900'000;
    std::size_t valid_token_threshold = 100'000;
    std::optional<std::size_t> test_token_threshold; // natural corpora only
    std::uint64_t rng_seed = 0;

    void validate() const;
};

struct Splits {
    ParallelCorpus train;
    ParallelCorpus valid;
    std::optional<ParallelCorpus> test;
};

struct Sample {
    ParallelCorpus selected;
    ParallelCorpus remainder;
};

enum class DedupMode { seed_word, sentence };

// Whitespace tokens after NFC normalization.
std::size_t count_tokens(std::string_view text);

// Keeps first occurrences in order. Returned items are NFC-normalized and trimmed;
// whitespace-only items are dropped.
std::vector<std::string> dedup(const std::vector<std::string> &items, DedupMode mode);

// Key under which two items are considered duplicates.
std::string dedup_key(std::string_view item, DedupMode mode);

// Shuffles with the seed and takes pairs until the source token count first
// reaches threshold. Throws InsufficientData if the whole corpus is smaller.
Sample sample_to_threshold(const ParallelCorpus &corpus, std::size_t threshold, std::uint64_t rng_seed);

// Train, then valid, then (optionally) test, drawn in sequence from one shuffle.
Splits make_splits(const ParallelCorpus &corpus, const SplitSpec &spec);

// Throws LeakageError if any id of `held_out` occurs in `training`.
void require_disjoint(const ParallelCorpus &training, const ParallelCorpus &held_out, std::string_view what);

} // namespace cforge::corpus
