#pragma once

#include "cforge/mock_backend.hpp"

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cforge::gen {

enum class Stage { seed_words, sentences, translation };

std::string_view to_string(Stage stage);

// Placeholders: {n} item count, {seed} seed word, {src}/{tgt} language
// names, {sentence} sentence to translate. Unknown {...} text is left as is.
struct PromptTemplate {
    Stage stage = Stage::seed_words;
    std::string system_text;
    std::string user_text;                       // empty: no user message
    std::optional<std::string> assistant_fewshot; // sentences stage only

    // ConfigError when a stage's required placeholder is missing.
    void validate() const;
};

// Noun and verb seed requests use separate seed_words templates.
struct TemplateSet {
    PromptTemplate seed_nouns;
    PromptTemplate seed_verbs;
    PromptTemplate sentences;
    PromptTemplate translation;

    void validate() const;

    // German -> English prompts used when a config supplies none.
    static TemplateSet german_defaults();
};

using Placeholders = std::map<std::string, std::string, std::less<>>;

std::string render(std::string_view tmpl, const Placeholders &values);

// English display name for a language code ("de" -> "German"); unknown codes pass through.
std::string language_name(std::string_view code);

// Mock stage tags: the longest placeholder-free run of each system template.
llm::MockTags mock_tags_for(const TemplateSet &templates);

// Splits a model response on `delimiter`. Items are trimmed, numbering such
// as "1." or "2)" and bullets are stripped, empties dropped. When the
// delimiter yields fewer than two items, line breaks act as delimiters too.
std::vector<std::string> parse_list(std::string_view response, char delimiter);

} // namespace cforge::gen
