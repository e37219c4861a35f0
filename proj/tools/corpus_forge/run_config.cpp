#include "run_config.hpp"

#include "cforge/error.hpp"
#include "cforge/fs_util.hpp"

#include <fmt/format.h>

namespace cforge::cli {

using nlohmann::json;

namespace {

json template_json(const gen::PromptTemplate &t) {
    json j{{"system", t.system_text}, {"user", t.user_text}};
    j["assistant_fewshot"] = t.assistant_fewshot ? json(*t.assistant_fewshot) : json(nullptr);
    return j;
}

void check_keys(const json &value, const json &schema, const std::string &prefix) {
    if (!schema.is_object()) return;
    if (!value.is_object()) throw ConfigError(fmt::format("config key '{}' must be an object", prefix));
    for (const auto &[key, v] : value.items()) {
        const auto path = prefix.empty() ? key : prefix + "." + key;
        if (!schema.contains(key)) throw ConfigError(fmt::format("unknown config key '{}'", path));
        check_keys(v, schema[key], path);
    }
}

template <class T> T get(const json &j, std::string_view path) {
    const json *cur = &j;
    std::string_view rest = path;
    while (true) {
        const auto dot = rest.find('.');
        cur = &cur->at(std::string(rest.substr(0, dot)));
        if (dot == std::string_view::npos) break;
        rest.remove_prefix(dot + 1);
    }
    try {
        return cur->get<T>();
    } catch (const json::exception &) {
        throw ConfigError(fmt::format("config key '{}' has the wrong type", path));
    }
}

std::optional<std::filesystem::path> opt_path(const json &j, const char *key) {
    const auto &v = j.at("paths").at(key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_string()) throw ConfigError(fmt::format("config key 'paths.{}' must be a string or null", key));
    return std::filesystem::path(v.get<std::string>());
}

gen::PromptTemplate read_template(const json &j, gen::Stage stage, const char *key) {
    const auto &t = j.at("templates").at(key);
    gen::PromptTemplate out{stage, get<std::string>(t, "system"), get<std::string>(t, "user"), std::nullopt};
    if (!t.at("assistant_fewshot").is_null()) out.assistant_fewshot = get<std::string>(t, "assistant_fewshot");
    return out;
}

} // namespace

json config_to_json(const RunConfig &d) {
    json j;
    j["backend"] = d.backend;
    j["rng_seed"] = d.rng_seed;
    j["mock_seed"] = d.mock_seed;
    j["run_id"] = d.run_id ? json(*d.run_id) : json(nullptr);
    j["output_dir"] = d.output_dir.string();
    j["source_lang"] = d.plan.source_lang;
    j["target_lang"] = d.plan.target_lang;
    j["llm"] = {{"endpoint_url", d.llm.endpoint_url},
                {"api_key_env", d.llm.api_key_env},
                {"model", d.request.model_name},
                {"max_in_flight", d.llm.max_in_flight},
                {"max_retries", d.llm.max_retries},
                {"backoff_base_ms", d.llm.backoff_base.count()},
                {"timeout_ms", d.llm.timeout.count()},
                {"generation_temperature", d.request.generation_temperature},
                {"translation_temperature", d.request.translation_temperature},
                {"max_output_tokens", d.request.max_output_tokens}};
    j["plan"] = {{"n_nouns", d.plan.n_nouns}, {"n_verbs", d.plan.n_verbs},
                 {"sentences_per_seed", d.plan.sentences_per_seed}};
    j["templates"] = {{"seed_nouns", template_json(d.templates.seed_nouns)},
                      {"seed_verbs", template_json(d.templates.seed_verbs)},
                      {"sentences", template_json(d.templates.sentences)},
                      {"translation", template_json(d.templates.translation)}};
    j["splits"] = {{"train_tokens", d.splits.train_token_threshold},
                   {"valid_tokens", d.splits.valid_token_threshold},
                   {"test_tokens", d.splits.test_token_threshold ? json(*d.splits.test_token_threshold) : json(nullptr)}};
    j["bpe"] = {{"vocab_size", d.bpe_vocab_size}};
    j["em"] = {{"iterations", d.em_iterations}};
    j["bleu"] = {{"normalizer", std::string(metrics::to_string(d.normalizer))},
                 {"smoothing", std::string(metrics::to_string(d.smoothing))}};
    auto path_json = [](const std::optional<std::filesystem::path> &p) { return p ? json(p->string()) : json(nullptr); };
    j["paths"] = {{"nat_train", path_json(d.paths.nat_train)},
                  {"syn_train", path_json(d.paths.syn_train)},
                  {"syn_valid", path_json(d.paths.syn_valid)},
                  {"nat_valid", path_json(d.paths.nat_valid)},
                  {"test", path_json(d.paths.test)}};
    return j;
}

json default_config_json() { return config_to_json(RunConfig{}); }

void apply_override(json &config, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError(fmt::format("override '{}' is not of the form key=value", assignment));
    }
    const std::string key(assignment.substr(0, eq));
    const std::string raw(assignment.substr(eq + 1));
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;

    json *cur = &config;
    std::string_view rest = key;
    while (true) {
        const auto dot = rest.find('.');
        const std::string part(rest.substr(0, dot));
        if (!cur->is_object() || !cur->contains(part)) throw ConfigError(fmt::format("unknown config key '{}'", key));
        cur = &(*cur)[part];
        if (dot == std::string_view::npos) break;
        rest.remove_prefix(dot + 1);
    }
    if (cur->is_object()) throw ConfigError(fmt::format("config key '{}' is a section", key));
    // Keep strings for string-typed keys ("run_id=007" stays "007").
    if (cur->is_string() && !value.is_string() && !value.is_null()) value = raw;
    *cur = std::move(value);
}

RunConfig config_from_json(const json &j) {
    check_keys(j, default_config_json(), "");
    RunConfig c;
    try {
        c.backend = get<std::string>(j, "backend");
        c.rng_seed = get<std::uint64_t>(j, "rng_seed");
        c.mock_seed = get<std::uint64_t>(j, "mock_seed");
        if (!j.at("run_id").is_null()) c.run_id = get<std::string>(j, "run_id");
        c.output_dir = get<std::string>(j, "output_dir");
        c.plan.source_lang = get<std::string>(j, "source_lang");
        c.plan.target_lang = get<std::string>(j, "target_lang");

        c.llm.endpoint_url = get<std::string>(j, "llm.endpoint_url");
        c.llm.api_key_env = get<std::string>(j, "llm.api_key_env");
        c.request.model_name = get<std::string>(j, "llm.model");
        c.llm.max_in_flight = get<std::size_t>(j, "llm.max_in_flight");
        c.llm.max_retries = get<std::size_t>(j, "llm.max_retries");
        c.llm.backoff_base = std::chrono::milliseconds(get<std::int64_t>(j, "llm.backoff_base_ms"));
        c.llm.timeout = std::chrono::milliseconds(get<std::int64_t>(j, "llm.timeout_ms"));
        c.request.generation_temperature = get<double>(j, "llm.generation_temperature");
        c.request.translation_temperature = get<double>(j, "llm.translation_temperature");
        c.request.max_output_tokens = get<std::size_t>(j, "llm.max_output_tokens");

        c.plan.n_nouns = get<std::size_t>(j, "plan.n_nouns");
        c.plan.n_verbs = get<std::size_t>(j, "plan.n_verbs");
        c.plan.sentences_per_seed = get<std::size_t>(j, "plan.sentences_per_seed");

        c.templates.seed_nouns = read_template(j, gen::Stage::seed_words, "seed_nouns");
        c.templates.seed_verbs = read_template(j, gen::Stage::seed_words, "seed_verbs");
        c.templates.sentences = read_template(j, gen::Stage::sentences, "sentences");
        c.templates.translation = read_template(j, gen::Stage::translation, "translation");

        c.splits.train_token_threshold = get<std::size_t>(j, "splits.train_tokens");
        c.splits.valid_token_threshold = get<std::size_t>(j, "splits.valid_tokens");
        if (!j.at("splits").at("test_tokens").is_null()) c.splits.test_token_threshold = get<std::size_t>(j, "splits.test_tokens");
        c.splits.rng_seed = c.rng_seed;

        c.bpe_vocab_size = get<std::size_t>(j, "bpe.vocab_size");
        c.em_iterations = get<std::size_t>(j, "em.iterations");
        c.normalizer = metrics::normalizer_from_string(get<std::string>(j, "bleu.normalizer"));
        c.smoothing = metrics::smoothing_from_string(get<std::string>(j, "bleu.smoothing"));

        c.paths = {opt_path(j, "nat_train"), opt_path(j, "syn_train"), opt_path(j, "syn_valid"),
                   opt_path(j, "nat_valid"), opt_path(j, "test")};
    } catch (const ConfigError &) {
        throw;
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    } catch (const json::exception &e) {
        throw ConfigError(fmt::format("invalid config: {}", e.what()));
    }
    c.validate();
    return c;
}

void RunConfig::validate() const {
    if (backend != "mock" && backend != "http") {
        throw ConfigError(fmt::format("backend must be 'mock' or 'http', got '{}'", backend));
    }
    if (run_id && (run_id->empty() || run_id->find_first_of("/\\") != std::string::npos || *run_id == "." ||
                   *run_id == "..")) {
        throw ConfigError(fmt::format("invalid run id '{}'", *run_id));
    }
    if (bpe_vocab_size == 0) throw ConfigError("bpe.vocab_size must be positive");
    if (em_iterations == 0) throw ConfigError("em.iterations must be positive");
    try {
        llm.validate();
        plan.validate();
        templates.validate();
        splits.validate();
    } catch (const ConfigError &) {
        throw;
    } catch (const std::exception &e) {
        throw ConfigError(e.what());
    }
}

RunConfig load_config(const std::optional<std::filesystem::path> &path, const std::vector<std::string> &overrides) {
    json merged = default_config_json();
    if (path) {
        std::string text;
        try {
            text = fs::read_file(*path);
        } catch (const std::exception &e) {
            throw ConfigError(fmt::format("cannot read config {}: {}", path->string(), e.what()));
        }
        const json file = json::parse(text, nullptr, false);
        if (file.is_discarded() || !file.is_object()) {
            throw ConfigError(fmt::format("config {} is not a JSON object", path->string()));
        }
        check_keys(file, merged, "");
        merged.merge_patch(file);
        // merge_patch drops null-valued keys; put the optional ones back.
        const json defaults = default_config_json();
        for (const auto &[section, value] : defaults.items()) {
            if (!merged.contains(section)) merged[section] = nullptr;
            if (!value.is_object()) continue;
            for (const auto &[key, v] : value.items()) {
                if (!merged[section].contains(key)) merged[section][key] = nullptr;
            }
        }
    }
    for (const auto &o : overrides) apply_override(merged, o);
    return config_from_json(merged);
}

} // namespace cforge::cli
