#include "cforge/diversity.hpp"

#include "cforge/error.hpp"
#include "cforge/text.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace cforge::metrics {

FrequencyProfile frequency_profile(std::span<const std::string> lines) {
    std::unordered_map<std::string, std::size_t> counts;
    FrequencyProfile profile;
    for (const auto &line : lines) {
        for (const auto &tok : text::split_tokens(line)) {
            ++counts[text::case_fold(tok)];
            ++profile.token_count;
        }
    }
    if (profile.token_count == 0) throw EmptyInput("frequency profile of an empty corpus side");

    profile.type_count = counts.size();
    profile.ttr = static_cast<double>(profile.type_count) / static_cast<double>(profile.token_count);
    profile.rank_frequency.reserve(counts.size());
    for (auto &[word, freq] : counts) profile.rank_frequency.push_back({0, word, freq});
    std::sort(profile.rank_frequency.begin(), profile.rank_frequency.end(), [](const auto &a, const auto &b) {
        return a.frequency != b.frequency ? a.frequency > b.frequency : a.word < b.word;
    });
    for (std::size_t i = 0; i < profile.rank_frequency.size(); ++i) profile.rank_frequency[i].rank = i + 1;
    return profile;
}

std::string csv_field(std::string_view value) {
    if (value.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(value);
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string FrequencyProfile::to_csv() const {
    std::string out = "rank,word,frequency\n";
    for (const auto &r : rank_frequency) {
        out += std::to_string(r.rank) + "," + csv_field(r.word) + "," + std::to_string(r.frequency) + "\n";
    }
    return out;
}

nlohmann::ordered_json FrequencyProfile::summary_json() const {
    return {{"type_count", type_count}, {"token_count", token_count}, {"ttr", ttr}};
}

std::vector<std::pair<double, double>> FrequencyProfile::zipf_points() const {
    std::vector<std::pair<double, double>> points;
    points.reserve(rank_frequency.size());
    for (const auto &r : rank_frequency) {
        points.emplace_back(std::log10(static_cast<double>(r.rank)), std::log10(static_cast<double>(r.frequency)));
    }
    return points;
}

} // namespace cforge::metrics
