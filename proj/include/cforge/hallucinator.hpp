#pragma once

// Three-stage synthetic corpus generation: seed words -> seed sentences ->
// translations, followed by threshold sampling into train/valid splits.

#include "cforge/corpus.hpp"
#include "cforge/error.hpp"
#include "cforge/gateway.hpp"
#include "cforge/prompts.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace cforge::gen {

struct GenerationPlan {
    std::size_t n_nouns = 600;
    std::size_t n_verbs = 600;
    std::size_t sentences_per_seed = 100;
    std::string source_lang = "de";
    std::string target_lang = "en";

    void validate() const;
};

struct RequestSettings {
    std::string model_name = "gpt-3.5-turbo";
    double generation_temperature = 1.0;
    double translation_temperature = 0.0;
    std::size_t max_output_tokens = 4096;
};

struct SeedStage {
    std::vector<std::string> seeds; // nouns first, deduplicated
    std::size_t requested = 0;
    std::size_t parsed = 0;
};

struct SeededSentence {
    std::string seed_word;
    std::string sentence;
};

struct SentenceStage {
    std::vector<SeededSentence> sentences; // globally deduplicated
    std::size_t requests = 0;
    std::size_t requested = 0; // seeds * sentences_per_seed
    std::size_t raw_parsed = 0;
    std::size_t failed_requests = 0;
};

struct TranslationStage {
    corpus::ParallelCorpus corpus;
    std::size_t requests = 0;
    std::size_t failed = 0;
};

SeedStage generate_seed_words(const GenerationPlan &plan, const TemplateSet &templates, const llm::Gateway &gateway,
                              const RequestSettings &settings = {});

SentenceStage generate_sentences(const std::vector<std::string> &seeds, const GenerationPlan &plan,
                                 const TemplateSet &templates, const llm::Gateway &gateway,
                                 const RequestSettings &settings = {});

// Pair i gets id "syn-<i>" where i is the sentence's input position, so ids
// stay stable when other translations fail.
TranslationStage translate_sentences(const std::vector<SeededSentence> &sentences, const GenerationPlan &plan,
                                     const TemplateSet &templates, const llm::Gateway &gateway,
                                     const RequestSettings &settings = {});

struct PipelineReport {
    std::string status = "ok";
    std::string message;
    GenerationPlan plan;
    std::string backend;
    std::uint64_t rng_seed = 0;
    std::optional<std::uint64_t> mock_seed;

    std::size_t seeds_requested = 0;
    std::size_t seeds_parsed = 0;
    std::size_t seeds_deduplicated = 0;
    std::size_t sentence_requests = 0;
    std::size_t sentences_requested = 0;
    std::size_t sentences_parsed = 0;
    std::size_t sentences_deduplicated = 0;
    std::size_t translation_requests = 0;
    std::size_t translated = 0;
    std::size_t corpus_source_tokens = 0;
    std::size_t sampled_train = 0;
    std::size_t sampled_valid = 0;
    std::size_t sampled_train_tokens = 0;
    std::size_t sampled_valid_tokens = 0;

    std::size_t failed_sentence_requests = 0;
    std::size_t failed_translations = 0;

    // "generated" or "resumed" per stage
    std::string seeds_stage;
    std::string sentences_stage;
    std::string translations_stage;

    std::optional<double> wall_time_seconds;

    nlohmann::ordered_json to_json() const;
};

struct PipelineOptions {
    RequestSettings request;
    // When set: checkpoints/, corpora/ and reports/ are written under it and
    // existing checkpoints with matching fingerprints are reused.
    std::optional<std::filesystem::path> run_dir;
    // Identifies the backend in checkpoint fingerprints and the report ("mock", "http").
    std::string backend = "mock";
    std::optional<std::uint64_t> mock_seed;
    bool record_wall_time = false;
};

struct PipelineResult {
    corpus::ParallelCorpus train;
    corpus::ParallelCorpus valid;
    PipelineReport report;
};

class PipelineInsufficientData : public InsufficientData {
  public:
    PipelineInsufficientData(const InsufficientData &cause, PipelineReport report)
        : InsufficientData(cause), report_(std::move(report)) {}

    const PipelineReport &report() const { return report_; }

  private:
    PipelineReport report_;
};

// Splits use train/valid thresholds only; any test threshold is ignored.
PipelineResult run_pipeline(const GenerationPlan &plan, const TemplateSet &templates, const llm::Gateway &gateway,
                            const corpus::SplitSpec &split_spec, const PipelineOptions &options = {});

} // namespace cforge::gen
