#include "cforge/mock_backend.hpp"

#include "cforge/error.hpp"
#include "cforge/rng.hpp"
#include "cforge/text.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

namespace cforge::llm {

MockStage classify(const ChatRequest &request, const MockTags &tags) {
    const ChatMessage *system = request.first(Role::system);
    if (system == nullptr) throw UnclassifiableRequest("mock: request has no system message");

    const std::pair<const std::string *, MockStage> candidates[] = {
        {&tags.seed_nouns, MockStage::seed_nouns},
        {&tags.seed_verbs, MockStage::seed_verbs},
        {&tags.sentences, MockStage::sentences},
        {&tags.translation, MockStage::translation},
    };
    const std::string *best = nullptr;
    MockStage stage = MockStage::translation;
    for (const auto &[tag, s] : candidates) {
        if (tag->empty() || system->content.find(*tag) == std::string::npos) continue;
        if (best == nullptr || tag->size() > best->size()) {
            best = tag;
            stage = s;
        }
    }
    if (best == nullptr) {
        throw UnclassifiableRequest("mock: no stage tag found in system message '" + system->content + "'");
    }
    return stage;
}

namespace {

// First run of ASCII digits in the system message, e.g. the item count.
std::size_t requested_count(const ChatRequest &request, std::size_t fallback) {
    const std::string &s = request.first(Role::system)->content;
    auto it = std::find_if(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
    if (it == s.end()) return fallback;
    std::size_t n = 0;
    for (; it != s.end() && std::isdigit(static_cast<unsigned char>(*it)) && n < 1'000'000; ++it) {
        n = n * 10 + static_cast<std::size_t>(*it - '0');
    }
    return n;
}

std::uint64_t request_seed(const ChatRequest &request, std::uint64_t mock_seed) {
    std::uint64_t h = stable_hash("", mock_seed);
    for (const auto &m : request.messages) {
        h = stable_hash(to_string(m.role), h);
        h = stable_hash(m.content, h);
    }
    return h;
}

std::string seed_list(const std::vector<mock_data::Entry> &words, std::size_t n, std::uint64_t seed) {
    std::vector<std::string_view> pool;
    for (const auto &e : words) pool.push_back(e.source);
    DeterministicRng rng(seed);
    rng.shuffle(pool);
    pool.resize(std::min(n, pool.size()));
    std::string out;
    for (std::size_t i = 0; i < pool.size(); ++i) {
        if (i > 0) out += ", ";
        out += pool[i];
    }
    return out;
}

bool is_verb(std::string_view word) {
    const auto &verbs = mock_data::verbs();
    return std::any_of(verbs.begin(), verbs.end(), [&](const auto &e) { return e.source == word; });
}

std::string fill_frame(std::string_view frame, std::string_view word, std::string_view suffix) {
    std::string s(frame);
    s.replace(s.find("{w}"), 3, word);
    if (!suffix.empty()) s.insert(s.size() - 1, " " + std::string(suffix));
    return s;
}

std::string sentence_list(const std::string &seed_word, std::size_t n, std::uint64_t seed) {
    const auto &frames = is_verb(seed_word) ? mock_data::verb_frames() : mock_data::noun_frames();
    const auto &suffixes = mock_data::suffixes();
    DeterministicRng rng(seed);
    const std::size_t offset = rng.below(frames.size());
    std::string out;
    for (std::size_t i = 0; i < n; ++i) {
        const auto &frame = frames[(offset + i) % frames.size()];
        const auto &suffix = suffixes[(i / frames.size()) % suffixes.size()];
        out += fill_frame(frame, seed_word, suffix);
        out += ';';
    }
    return out;
}

const std::unordered_map<std::string, std::string_view> &lexicon() {
    static const auto table = [] {
        std::unordered_map<std::string, std::string_view> t;
        for (const auto *list : {&mock_data::nouns(), &mock_data::verbs(), &mock_data::function_words()}) {
            for (const auto &e : *list) t.emplace(text::case_fold(e.source), e.target);
        }
        return t;
    }();
    return table;
}

bool is_edge_punct(char c) {
    return c == '.' || c == ',' || c == ';' || c == ':' || c == '!' || c == '?' || c == '"' || c == '\'' ||
           c == '(' || c == ')';
}

} // namespace

std::string mock_translate(std::string_view sentence) {
    const auto tokens = text::split_tokens(sentence);
    std::vector<std::string> out;
    out.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string &tok = tokens[i];
        std::size_t b = 0, e = tok.size();
        while (b < e && is_edge_punct(tok[b])) ++b;
        while (e > b && is_edge_punct(tok[e - 1])) --e;
        std::string core = tok.substr(b, e - b);
        auto it = lexicon().find(text::case_fold(core));
        if (it != lexicon().end()) {
            core = std::string(it->second);
            if (i == 0 && !core.empty()) core[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(core[0])));
        }
        out.push_back(tok.substr(0, b) + core + tok.substr(e));
    }
    // a -> an before a vowel
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
        if ((out[i] == "a" || out[i] == "A") && !out[i + 1].empty() &&
            std::string_view("aeiouAEIOU").find(out[i + 1][0]) != std::string_view::npos) {
            out[i] += 'n';
        }
    }
    return text::join(out, " ");
}

std::string mock_complete(const ChatRequest &request, const MockTags &tags, std::uint64_t mock_seed) {
    request.validate();
    const MockStage stage = classify(request, tags);
    const std::uint64_t seed = request_seed(request, mock_seed);
    switch (stage) {
    case MockStage::seed_nouns:
        return seed_list(mock_data::nouns(), requested_count(request, 10), seed);
    case MockStage::seed_verbs:
        return seed_list(mock_data::verbs(), requested_count(request, 10), seed);
    case MockStage::sentences: {
        const ChatMessage *user = request.first(Role::user);
        if (user == nullptr) throw UnclassifiableRequest("mock: sentence request without a seed word");
        return sentence_list(text::trim(user->content), requested_count(request, 10), seed);
    }
    case MockStage::translation: {
        const ChatMessage *user = request.last(Role::user);
        if (user == nullptr) throw UnclassifiableRequest("mock: translation request without a sentence");
        return mock_translate(user->content);
    }
    }
    throw UnclassifiableRequest("mock: unknown stage");
}

} // namespace cforge::llm
