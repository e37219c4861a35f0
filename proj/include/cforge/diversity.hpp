#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace cforge::metrics {

struct RankedWord {
    std::size_t rank = 0; // 1-based
    std::string word;
    std::size_t frequency = 0;
};

// Lexical diversity of one side of a corpus. Tokens follow the corpus token
// rules (NFC + white space) and are case-folded.
struct FrequencyProfile {
    std::size_t type_count = 0;
    std::size_t token_count = 0;
    double ttr = 0.0;
    std::vector<RankedWord> rank_frequency; // frequency desc, then word asc

    // "rank,word,frequency" header, RFC 4180 quoting.
    std::string to_csv() const;
    nlohmann::ordered_json summary_json() const;

    // (log10 rank, log10 frequency) for rank-frequency plots.
    std::vector<std::pair<double, double>> zipf_points() const;
};

FrequencyProfile frequency_profile(std::span<const std::string> lines);

std::string csv_field(std::string_view value);

} // namespace cforge::metrics
