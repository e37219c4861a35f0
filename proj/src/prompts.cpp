#include "cforge/prompts.hpp"

#include "cforge/error.hpp"
#include "cforge/text.hpp"

#include <cctype>

namespace cforge::gen {

std::string_view to_string(Stage stage) {
    switch (stage) {
    case Stage::seed_words: return "seed_words";
    case Stage::sentences: return "sentences";
    case Stage::translation: return "translation";
    }
    return "unknown";
}

void PromptTemplate::validate() const {
    auto require = [&](const std::string &where, std::string_view placeholder, const char *field) {
        if (where.find(placeholder) == std::string::npos) {
            throw ConfigError(std::string(to_string(stage)) + " template: " + field + " must contain " +
                              std::string(placeholder));
        }
    };
    if (system_text.empty()) throw ConfigError(std::string(to_string(stage)) + " template: empty system text");
    switch (stage) {
    case Stage::seed_words:
        require(system_text, "{n}", "system");
        break;
    case Stage::sentences:
        require(system_text, "{n}", "system");
        require(user_text, "{seed}", "user");
        break;
    case Stage::translation:
        require(user_text, "{sentence}", "user");
        break;
    }
}

void TemplateSet::validate() const {
    auto check = [](const PromptTemplate &t, Stage expected, const char *name) {
        if (t.stage != expected) throw ConfigError(std::string("template ") + name + " has the wrong stage");
        t.validate();
    };
    check(seed_nouns, Stage::seed_words, "seed_nouns");
    check(seed_verbs, Stage::seed_words, "seed_verbs");
    check(sentences, Stage::sentences, "sentences");
    check(translation, Stage::translation, "translation");
}

TemplateSet TemplateSet::german_defaults() {
    TemplateSet t;
    t.seed_nouns = {Stage::seed_words,
                    "Generieren Sie {n} einzigartige zufällige Substantive, die jeweils durch ein Komma getrennt sind",
                    "", std::nullopt};
    t.seed_verbs = {Stage::seed_words,
                    "Generieren Sie {n} einzigartige zufällige Verben, die jeweils durch ein Komma getrennt sind", "",
                    std::nullopt};
    t.sentences = {Stage::sentences,
                   "Generieren Sie an der Eingabeaufforderung {n} separate Sätze, die durch ein Semikolon getrennt sind",
                   "{seed}", std::string("Gärten und Terrassen;Tacos sind gut.;")};
    t.translation = {Stage::translation, "Translate from {src} to {tgt}", "{sentence}", std::nullopt};
    return t;
}

std::string render(std::string_view tmpl, const Placeholders &values) {
    std::string out;
    out.reserve(tmpl.size());
    std::size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            const std::size_t close = tmpl.find('}', i + 1);
            if (close != std::string_view::npos) {
                auto it = values.find(tmpl.substr(i + 1, close - i - 1));
                if (it != values.end()) {
                    out += it->second;
                    i = close + 1;
                    continue;
                }
            }
        }
        out += tmpl[i++];
    }
    return out;
}

std::string language_name(std::string_view code) {
    static const std::map<std::string_view, std::string_view> names{
        {"de", "German"},  {"en", "English"},   {"gl", "Galician"}, {"es", "Spanish"},
        {"fr", "French"},  {"it", "Italian"},   {"pt", "Portuguese"}, {"nl", "Dutch"},
    };
    auto it = names.find(code);
    return std::string(it == names.end() ? code : it->second);
}

namespace {

std::string longest_literal(std::string_view tmpl) {
    std::string best, current;
    std::size_t i = 0;
    auto flush = [&] {
        if (current.size() > best.size()) best = current;
        current.clear();
    };
    while (i < tmpl.size()) {
        if (tmpl[i] == '{') {
            const std::size_t close = tmpl.find('}', i + 1);
            if (close != std::string_view::npos) {
                flush();
                i = close + 1;
                continue;
            }
        }
        current += tmpl[i++];
    }
    flush();
    return best;
}

// "12. ", "3) ", "- ", "* ", "• "
std::string strip_enumeration(const std::string &item) {
    std::size_t i = 0;
    while (i < item.size() && i < 4 && std::isdigit(static_cast<unsigned char>(item[i]))) ++i;
    if (i > 0 && i < item.size() && (item[i] == '.' || item[i] == ')') && i + 1 < item.size() &&
        std::isspace(static_cast<unsigned char>(item[i + 1]))) {
        return text::trim(std::string_view(item).substr(i + 1));
    }
    for (std::string_view bullet : {"- ", "* ", "• "}) {
        if (item.starts_with(bullet)) return text::trim(std::string_view(item).substr(bullet.size()));
    }
    return item;
}

std::vector<std::string> split_on(std::string_view s, std::string_view delimiters) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || delimiters.find(s[i]) != std::string_view::npos) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

std::vector<std::string> clean(const std::vector<std::string> &raw) {
    std::vector<std::string> items;
    for (const auto &part : raw) {
        std::string item = strip_enumeration(text::trim(part));
        item = text::normalize_spaces(item);
        if (!item.empty()) items.push_back(std::move(item));
    }
    return items;
}

} // namespace

llm::MockTags mock_tags_for(const TemplateSet &templates) {
    llm::MockTags tags{longest_literal(templates.seed_nouns.system_text),
                       longest_literal(templates.seed_verbs.system_text),
                       longest_literal(templates.sentences.system_text),
                       longest_literal(templates.translation.system_text)};
    const std::string *all[] = {&tags.seed_nouns, &tags.seed_verbs, &tags.sentences, &tags.translation};
    for (std::size_t i = 0; i < 4; ++i) {
        if (all[i]->empty()) throw ConfigError("mock backend: a system template has no literal text to classify by");
        for (std::size_t j = i + 1; j < 4; ++j) {
            if (*all[i] == *all[j]) throw ConfigError("mock backend: two system templates share the tag '" + *all[i] + "'");
        }
    }
    return tags;
}

std::vector<std::string> parse_list(std::string_view response, char delimiter) {
    const std::string delim(1, delimiter);
    auto items = clean(split_on(response, delim));
    if (items.size() < 2) items = clean(split_on(response, delim + "\n\r"));
    return items;
}

} // namespace cforge::gen
