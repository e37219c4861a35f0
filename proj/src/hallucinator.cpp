#include "cforge/hallucinator.hpp"

#include "cforge/corpus_io.hpp"
#include "cforge/fs_util.hpp"
#include "cforge/rng.hpp"
#include "cforge/text.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <unordered_set>

namespace cforge::gen {

using ordered_json = nlohmann::ordered_json;

void GenerationPlan::validate() const {
    if (n_nouns < 1 || n_verbs < 1 || sentences_per_seed < 1) {
        throw ConfigError("generation plan counts must be >= 1");
    }
    if (source_lang.empty() || target_lang.empty()) throw ConfigError("generation plan needs language codes");
}

namespace {

llm::ChatRequest make_request(const RequestSettings &settings, double temperature) {
    llm::ChatRequest r;
    r.model_name = settings.model_name;
    r.temperature = temperature;
    r.max_output_tokens = settings.max_output_tokens;
    return r;
}

Placeholders language_placeholders(const GenerationPlan &plan) {
    return {{"src", language_name(plan.source_lang)}, {"tgt", language_name(plan.target_lang)}};
}

llm::ChatRequest seed_request(const PromptTemplate &tmpl, std::size_t n, const GenerationPlan &plan,
                              const RequestSettings &settings) {
    auto values = language_placeholders(plan);
    values["n"] = std::to_string(n);
    auto r = make_request(settings, settings.generation_temperature);
    r.messages.push_back({llm::Role::system, render(tmpl.system_text, values)});
    if (!tmpl.user_text.empty()) r.messages.push_back({llm::Role::user, render(tmpl.user_text, values)});
    return r;
}

} // namespace

SeedStage generate_seed_words(const GenerationPlan &plan, const TemplateSet &templates, const llm::Gateway &gateway,
                              const RequestSettings &settings) {
    plan.validate();
    SeedStage stage;
    stage.requested = plan.n_nouns + plan.n_verbs;

    std::vector<std::string> combined;
    for (const auto &[tmpl, n] : {std::pair{&templates.seed_nouns, plan.n_nouns}, {&templates.seed_verbs, plan.n_verbs}}) {
        const std::string response = gateway.complete(seed_request(*tmpl, n, plan, settings));
        auto items = parse_list(response, ',');
        if (items.size() < n) {
            spdlog::warn("seed request asked for {} items, got {}", n, items.size());
        }
        stage.parsed += items.size();
        combined.insert(combined.end(), items.begin(), items.end());
    }
    stage.seeds = corpus::dedup(combined, corpus::DedupMode::seed_word);
    if (stage.seeds.empty()) throw EmptyResponse("seed word responses contained no usable items");
    return stage;
}

SentenceStage generate_sentences(const std::vector<std::string> &seeds, const GenerationPlan &plan,
                                 const TemplateSet &templates, const llm::Gateway &gateway,
                                 const RequestSettings &settings) {
    if (seeds.empty()) throw std::invalid_argument("generate_sentences: no seeds");
    plan.validate();

    std::vector<llm::ChatRequest> requests;
    requests.reserve(seeds.size());
    for (const auto &seed : seeds) {
        auto values = language_placeholders(plan);
        values["n"] = std::to_string(plan.sentences_per_seed);
        values["seed"] = seed;
        auto r = make_request(settings, settings.generation_temperature);
        r.messages.push_back({llm::Role::system, render(templates.sentences.system_text, values)});
        r.messages.push_back({llm::Role::user, render(templates.sentences.user_text, values)});
        if (templates.sentences.assistant_fewshot && !templates.sentences.assistant_fewshot->empty()) {
            r.messages.push_back({llm::Role::assistant, *templates.sentences.assistant_fewshot});
        }
        requests.push_back(std::move(r));
    }

    SentenceStage stage;
    stage.requests = requests.size();
    stage.requested = seeds.size() * plan.sentences_per_seed;
    std::unordered_set<std::string> seen;
    const auto results = gateway.complete_batch(requests);
    for (const auto &result : results) {
        const std::string &seed = seeds[result.index];
        if (!result.ok()) {
            ++stage.failed_requests;
            spdlog::warn("sentence generation for seed '{}' failed ({}): {}", seed, llm::to_string(result.error->kind),
                         result.error->message);
            continue;
        }
        const auto items = parse_list(*result.text, ';');
        stage.raw_parsed += items.size();
        for (const auto &item : items) {
            std::string sentence = text::nfc(item);
            if (seen.insert(corpus::dedup_key(sentence, corpus::DedupMode::sentence)).second) {
                stage.sentences.push_back({seed, std::move(sentence)});
            }
        }
    }
    if (stage.sentences.empty()) {
        throw AllSeedsFailed(fmt::format("no sentences produced for {} seeds ({} requests failed)", seeds.size(),
                                         stage.failed_requests));
    }
    if (stage.failed_requests > 0) spdlog::warn("{} of {} sentence requests failed", stage.failed_requests, stage.requests);
    return stage;
}

TranslationStage translate_sentences(const std::vector<SeededSentence> &sentences, const GenerationPlan &plan,
                                     const TemplateSet &templates, const llm::Gateway &gateway,
                                     const RequestSettings &settings) {
    if (sentences.empty()) throw std::invalid_argument("translate_sentences: no sentences");

    std::vector<llm::ChatRequest> requests;
    requests.reserve(sentences.size());
    for (const auto &s : sentences) {
        auto values = language_placeholders(plan);
        values["sentence"] = s.sentence;
        auto r = make_request(settings, settings.translation_temperature);
        r.messages.push_back({llm::Role::system, render(templates.translation.system_text, values)});
        r.messages.push_back({llm::Role::user, render(templates.translation.user_text, values)});
        requests.push_back(std::move(r));
    }

    TranslationStage stage;
    stage.corpus = corpus::ParallelCorpus{{}, plan.source_lang, plan.target_lang};
    stage.requests = requests.size();
    const auto results = gateway.complete_batch(requests);
    for (const auto &result : results) {
        const auto &input = sentences[result.index];
        std::string target = result.ok() ? text::normalize_spaces(*result.text) : std::string{};
        if (target.empty()) {
            ++stage.failed;
            spdlog::debug("translation {} dropped: {}", result.index,
                          result.ok() ? std::string("empty response") : result.error->message);
            continue;
        }
        stage.corpus.pairs.push_back(corpus::SentencePair{fmt::format("syn-{:06}", result.index), input.sentence,
                                                          std::move(target), corpus::Origin::synthetic,
                                                          input.seed_word});
    }
    if (stage.failed > 0) spdlog::warn("{} of {} translations failed and were dropped", stage.failed, stage.requests);
    if (stage.corpus.empty()) throw AllTranslationsFailed(fmt::format("all {} translations failed", stage.requests));
    stage.corpus.validate();
    return stage;
}

ordered_json PipelineReport::to_json() const {
    ordered_json j;
    j["status"] = status;
    if (!message.empty()) j["message"] = message;
    j["source_lang"] = plan.source_lang;
    j["target_lang"] = plan.target_lang;
    j["backend"] = backend;
    j["rng_seed"] = rng_seed;
    j["mock_seed"] = mock_seed ? ordered_json(*mock_seed) : ordered_json(nullptr);
    j["plan"] = {{"n_nouns", plan.n_nouns}, {"n_verbs", plan.n_verbs}, {"sentences_per_seed", plan.sentences_per_seed}};
    j["counts"] = {
        {"seeds_requested", seeds_requested},
        {"seeds_parsed", seeds_parsed},
        {"seeds_deduplicated", seeds_deduplicated},
        {"seed_shortfall", seeds_requested > seeds_parsed ? seeds_requested - seeds_parsed : 0},
        {"sentence_requests", sentence_requests},
        {"sentences_requested", sentences_requested},
        {"sentences_parsed", sentences_parsed},
        {"sentences_deduplicated", sentences_deduplicated},
        {"translation_requests", translation_requests},
        {"translated", translated},
        {"corpus_source_tokens", corpus_source_tokens},
        {"sampled", sampled_train + sampled_valid},
        {"sampled_train", sampled_train},
        {"sampled_valid", sampled_valid},
        {"sampled_train_tokens", sampled_train_tokens},
        {"sampled_valid_tokens", sampled_valid_tokens},
    };
    j["failures"] = {{"sentence_requests", failed_sentence_requests}, {"translations", failed_translations}};
    j["stages"] = {{"seeds", seeds_stage}, {"sentences", sentences_stage}, {"translations", translations_stage}};
    if (wall_time_seconds) j["wall_time_seconds"] = *wall_time_seconds;
    return j;
}

namespace {

// ---- checkpoints: first line is a header, then one JSON object per item ----

struct Checkpoint {
    ordered_json stats;
    std::vector<ordered_json> items;
};

std::string fingerprint(const ordered_json &inputs) {
    return fmt::format("{:016x}", stable_hash(inputs.dump()));
}

void write_checkpoint(const std::filesystem::path &path, const std::string &stage, const std::string &fp,
                      const ordered_json &stats, const std::vector<ordered_json> &items) {
    std::string out = ordered_json{{"checkpoint", stage}, {"fingerprint", fp}, {"stats", stats}}.dump() + "\n";
    for (const auto &item : items) out += item.dump() + "\n";
    fs::atomic_write(path, out);
}

std::optional<Checkpoint> read_checkpoint(const std::filesystem::path &path, const std::string &stage,
                                          const std::string &fp) {
    if (!std::filesystem::exists(path)) return std::nullopt;
    try {
        const std::string contents = fs::read_file(path);
        Checkpoint cp;
        std::size_t start = 0;
        bool header = true;
        while (start < contents.size()) {
            std::size_t end = contents.find('\n', start);
            if (end == std::string::npos) end = contents.size();
            auto line = ordered_json::parse(contents.substr(start, end - start));
            start = end + 1;
            if (header) {
                if (line.at("checkpoint") != stage || line.at("fingerprint") != fp) {
                    spdlog::info("checkpoint {} is from different inputs; regenerating", path.string());
                    return std::nullopt;
                }
                cp.stats = line.at("stats");
                header = false;
            } else {
                cp.items.push_back(std::move(line));
            }
        }
        if (header) return std::nullopt;
        return cp;
    } catch (const std::exception &e) {
        spdlog::warn("ignoring unreadable checkpoint {}: {}", path.string(), e.what());
        return std::nullopt;
    }
}

ordered_json template_json(const PromptTemplate &t) {
    return {{"system", t.system_text},
            {"user", t.user_text},
            {"assistant_fewshot", t.assistant_fewshot ? ordered_json(*t.assistant_fewshot) : ordered_json(nullptr)}};
}

} // namespace

PipelineResult run_pipeline(const GenerationPlan &plan, const TemplateSet &templates, const llm::Gateway &gateway,
                            const corpus::SplitSpec &split_spec, const PipelineOptions &options) {
    plan.validate();
    templates.validate();
    split_spec.validate();
    const auto started = std::chrono::steady_clock::now();

    PipelineReport report;
    report.plan = plan;
    report.backend = options.backend;
    report.rng_seed = split_spec.rng_seed;
    report.mock_seed = options.mock_seed;

    std::optional<std::filesystem::path> checkpoints;
    if (options.run_dir) checkpoints = *options.run_dir / "checkpoints";

    const auto &rs = options.request;
    const ordered_json backend_id = {{"backend", options.backend},
                                     {"mock_seed", options.mock_seed ? ordered_json(*options.mock_seed) : ordered_json(nullptr)},
                                     {"model", rs.model_name},
                                     {"generation_temperature", rs.generation_temperature},
                                     {"translation_temperature", rs.translation_temperature},
                                     {"max_output_tokens", rs.max_output_tokens},
                                     {"langs", {plan.source_lang, plan.target_lang}}};
    const std::string seeds_fp = fingerprint({backend_id,
                                              plan.n_nouns,
                                              plan.n_verbs,
                                              template_json(templates.seed_nouns),
                                              template_json(templates.seed_verbs)});
    const std::string sentences_fp =
        fingerprint({seeds_fp, plan.sentences_per_seed, template_json(templates.sentences)});
    const std::string translations_fp = fingerprint({sentences_fp, template_json(templates.translation)});

    // stage 1: seed words
    std::vector<std::string> seeds;
    const auto seeds_path = checkpoints ? std::optional(*checkpoints / "seeds.jsonl") : std::nullopt;
    if (auto cp = seeds_path ? read_checkpoint(*seeds_path, "seeds", seeds_fp) : std::nullopt) {
        for (const auto &item : cp->items) seeds.push_back(item.at("seed").get<std::string>());
        report.seeds_requested = cp->stats.at("requested");
        report.seeds_parsed = cp->stats.at("parsed");
        report.seeds_stage = "resumed";
    } else {
        auto stage = generate_seed_words(plan, templates, gateway, rs);
        seeds = std::move(stage.seeds);
        report.seeds_requested = stage.requested;
        report.seeds_parsed = stage.parsed;
        report.seeds_stage = "generated";
        if (seeds_path) {
            std::vector<ordered_json> items;
            for (const auto &s : seeds) items.push_back({{"seed", s}});
            write_checkpoint(*seeds_path, "seeds", seeds_fp,
                             {{"requested", stage.requested}, {"parsed", stage.parsed}}, items);
        }
    }
    report.seeds_deduplicated = seeds.size();

    // stage 2: sentences
    std::vector<SeededSentence> sentences;
    const auto sentences_path = checkpoints ? std::optional(*checkpoints / "sentences.jsonl") : std::nullopt;
    if (auto cp = sentences_path ? read_checkpoint(*sentences_path, "sentences", sentences_fp) : std::nullopt) {
        for (const auto &item : cp->items) {
            sentences.push_back({item.at("seed").get<std::string>(), item.at("sentence").get<std::string>()});
        }
        report.sentence_requests = cp->stats.at("requests");
        report.sentences_requested = cp->stats.at("requested");
        report.sentences_parsed = cp->stats.at("parsed");
        report.failed_sentence_requests = cp->stats.at("failed_requests");
        report.sentences_stage = "resumed";
    } else {
        auto stage = generate_sentences(seeds, plan, templates, gateway, rs);
        sentences = std::move(stage.sentences);
        report.sentence_requests = stage.requests;
        report.sentences_requested = stage.requested;
        report.sentences_parsed = stage.raw_parsed;
        report.failed_sentence_requests = stage.failed_requests;
        report.sentences_stage = "generated";
        if (sentences_path) {
            std::vector<ordered_json> items;
            for (const auto &s : sentences) items.push_back({{"seed", s.seed_word}, {"sentence", s.sentence}});
            write_checkpoint(*sentences_path, "sentences", sentences_fp,
                             {{"requests", stage.requests},
                              {"requested", stage.requested},
                              {"parsed", stage.raw_parsed},
                              {"failed_requests", stage.failed_requests}},
                             items);
        }
    }
    report.sentences_deduplicated = sentences.size();

    // stage 3: translations
    corpus::ParallelCorpus translated;
    const auto translations_path = checkpoints ? std::optional(*checkpoints / "translations.jsonl") : std::nullopt;
    if (auto cp = translations_path ? read_checkpoint(*translations_path, "translations", translations_fp)
                                    : std::nullopt) {
        std::string body;
        for (const auto &item : cp->items) body += item.dump() + "\n";
        translated = corpus::parse_jsonl(body, plan.source_lang, plan.target_lang);
        report.translation_requests = cp->stats.at("requests");
        report.failed_translations = cp->stats.at("failed");
        report.translations_stage = "resumed";
    } else {
        auto stage = translate_sentences(sentences, plan, templates, gateway, rs);
        translated = std::move(stage.corpus);
        report.translation_requests = stage.requests;
        report.failed_translations = stage.failed;
        report.translations_stage = "generated";
        if (translations_path) {
            std::vector<ordered_json> items;
            const std::string body = corpus::to_jsonl(translated);
            std::size_t start = 0;
            while (start < body.size()) {
                const std::size_t end = body.find('\n', start);
                items.push_back(ordered_json::parse(body.substr(start, end - start)));
                start = end + 1;
            }
            write_checkpoint(*translations_path, "translations", translations_fp,
                             {{"requests", stage.requests}, {"failed", stage.failed}}, items);
        }
    }
    report.translated = translated.size();
    report.corpus_source_tokens = translated.source_tokens();

    auto finish = [&] {
        if (options.record_wall_time) {
            report.wall_time_seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
        }
        if (options.run_dir) {
            fs::atomic_write(*options.run_dir / "reports" / "report.json", report.to_json().dump(2) + "\n");
        }
    };

    corpus::SplitSpec spec = split_spec;
    spec.test_token_threshold.reset();
    corpus::Splits splits;
    try {
        splits = corpus::make_splits(translated, spec);
    } catch (const InsufficientData &e) {
        report.status = "insufficient_data";
        report.message = e.what();
        finish();
        throw PipelineInsufficientData(e, report);
    }
    report.sampled_train = splits.train.size();
    report.sampled_valid = splits.valid.size();
    report.sampled_train_tokens = splits.train.source_tokens();
    report.sampled_valid_tokens = splits.valid.source_tokens();

    if (options.run_dir) {
        corpus::write_jsonl(splits.train, *options.run_dir / "corpora" / "train.jsonl");
        corpus::write_jsonl(splits.valid, *options.run_dir / "corpora" / "valid.jsonl");
    }
    finish();
    return PipelineResult{std::move(splits.train), std::move(splits.valid), std::move(report)};
}

} // namespace cforge::gen
