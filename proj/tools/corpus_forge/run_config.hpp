#pragma once

#include "cforge/bleu.hpp"
#include "cforge/corpus.hpp"
#include "cforge/gateway.hpp"
#include "cforge/hallucinator.hpp"
#include "cforge/prompts.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cforge::cli {

struct InputPaths {
    std::optional<std::filesystem::path> nat_train;
    std::optional<std::filesystem::path> syn_train;
    std::optional<std::filesystem::path> syn_valid;
    std::optional<std::filesystem::path> nat_valid;
    std::optional<std::filesystem::path> test;
};

struct RunConfig {
    std::string backend = "mock";
    llm::BackendConfig llm;
    gen::RequestSettings request;
    gen::GenerationPlan plan;
    gen::TemplateSet templates = gen::TemplateSet::german_defaults();
    corpus::SplitSpec splits{900'000, 100'000, 100'000, 1};
    std::size_t bpe_vocab_size = 16000;
    std::size_t em_iterations = 10;
    metrics::Normalizer normalizer = metrics::Normalizer::whitespace;
    metrics::Smoothing smoothing = metrics::Smoothing::none;
    InputPaths paths;
    std::filesystem::path output_dir = "runs";
    std::optional<std::string> run_id;
    std::uint64_t rng_seed = 1;
    std::uint64_t mock_seed = 1;

    void validate() const;
};

// Every key a config file may contain, with its default value.
nlohmann::json default_config_json();
nlohmann::json config_to_json(const RunConfig &config);

// `dotted.key=value`; value is parsed as JSON when possible, else taken as a string.
void apply_override(nlohmann::json &config, std::string_view assignment);

RunConfig config_from_json(const nlohmann::json &j);

// Defaults <- file (if any) <- overrides. Unknown keys are ConfigError.
RunConfig load_config(const std::optional<std::filesystem::path> &path, const std::vector<std::string> &overrides);

} // namespace cforge::cli
