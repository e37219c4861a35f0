#pragma once

// Hermetic stand-in for a chat endpoint. Requests are classified by looking
// for a per-stage tag inside the system message; the reply is derived only
// from (request, mock_seed), so identical inputs give identical bytes.
//
//   seed nouns/verbs -> "w1, w2, ..." drawn from a bundled German word list
//   sentences        -> "s1;s2;...;" from fixed frames around the user seed
//   translation      -> word-by-word rendering through a bundled lexicon

#include "cforge/gateway.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cforge::llm {

struct MockTags {
    std::string seed_nouns;
    std::string seed_verbs;
    std::string sentences;
    std::string translation;
};

enum class MockStage { seed_nouns, seed_verbs, sentences, translation };

// Longest non-empty tag contained in the system message wins.
MockStage classify(const ChatRequest &request, const MockTags &tags);

std::string mock_complete(const ChatRequest &request, const MockTags &tags, std::uint64_t mock_seed);

// Word-by-word translation used by the mock's translation stage.
std::string mock_translate(std::string_view sentence);

class MockBackend : public Backend {
  public:
    MockBackend(MockTags tags, std::uint64_t mock_seed) : tags_(std::move(tags)), mock_seed_(mock_seed) {}

    std::string send(const ChatRequest &request) override { return mock_complete(request, tags_, mock_seed_); }

  private:
    MockTags tags_;
    std::uint64_t mock_seed_;
};

namespace mock_data {

struct Entry {
    std::string_view source;
    std::string_view target;
};

const std::vector<Entry> &nouns();
const std::vector<Entry> &verbs();
const std::vector<Entry> &function_words();
const std::vector<std::string_view> &noun_frames(); // "{w}" marks the seed slot
const std::vector<std::string_view> &verb_frames();
const std::vector<std::string_view> &suffixes();

} // namespace mock_data

} // namespace cforge::llm
