#include "cli.hpp"

#include "run_config.hpp"

#include "cforge/bpe.hpp"
#include "cforge/corpus_io.hpp"
#include "cforge/diversity.hpp"
#include "cforge/error.hpp"
#include "cforge/experiment.hpp"
#include "cforge/fs_util.hpp"
#include "cforge/hallucinator.hpp"
#include "cforge/http_backend.hpp"
#include "cforge/mock_backend.hpp"
#include "cforge/results_report.hpp"
#include "cforge/text.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <set>

namespace cforge::cli {

namespace stdfs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct Common {
    std::optional<std::string> config;
    std::vector<std::string> overrides;
    std::optional<std::string> src;
    std::optional<std::string> tgt;

    RunConfig load() const {
        auto sets = overrides;
        if (src) sets.push_back("source_lang=" + *src);
        if (tgt) sets.push_back("target_lang=" + *tgt);
        return load_config(config ? std::optional<stdfs::path>(*config) : std::nullopt, sets);
    }
};

void add_common(CLI::App &cmd, Common &c) {
    cmd.add_option("--config", c.config, "JSON run configuration")->check(CLI::ExistingFile);
    cmd.add_option("--set", c.overrides, "Override a config key, e.g. --set plan.n_nouns=5");
    cmd.add_option("--src", c.src, "Source language code (default: config source_lang)");
    cmd.add_option("--tgt", c.tgt, "Target language code (default: config target_lang)");
}

std::optional<corpus::CorpusFormat> parse_format(const std::optional<std::string> &s) {
    if (!s) return std::nullopt;
    try {
        return corpus::format_from_string(*s);
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

corpus::ParallelCorpus load(const stdfs::path &path, const RunConfig &config,
                            std::optional<corpus::CorpusFormat> format = std::nullopt) {
    const auto &src = config.plan.source_lang;
    const auto &tgt = config.plan.target_lang;
    const auto f = format.value_or(corpus::detect_format(path));
    return f == corpus::CorpusFormat::jsonl ? corpus::read_jsonl(path, src, tgt)
                                            : corpus::read_plain_pair(path, src, tgt);
}

void save(const corpus::ParallelCorpus &c, const stdfs::path &stem, corpus::CorpusFormat format) {
    if (format == corpus::CorpusFormat::jsonl) {
        corpus::write_jsonl(c, stdfs::path(stem.string() + ".jsonl"));
    } else {
        corpus::write_plain_pair(c, stem);
    }
}

std::string corpus_name(const stdfs::path &path) {
    auto name = path.filename().string();
    if (path.extension() == ".jsonl") name = path.stem().string();
    return name;
}

void write_json(const stdfs::path &path, const ordered_json &j) { fs::atomic_write(path, j.dump(2) + "\n"); }

// --- hallucinate ---------------------------------------------------------

struct HallucinateOpts {
    Common common;
    std::optional<std::string> backend;
    std::optional<std::string> out;
    std::optional<std::string> run_id;
};

std::string default_run_id(const RunConfig &c) {
    auto id = fmt::format("{}-{}-{}-r{}", c.plan.source_lang, c.plan.target_lang, c.backend, c.rng_seed);
    if (c.backend == "mock") id += fmt::format("-m{}", c.mock_seed);
    return id;
}

int cmd_hallucinate(const HallucinateOpts &o, std::ostream &out) {
    auto sets = o.common.overrides;
    if (o.backend) sets.push_back("backend=" + *o.backend);
    if (o.out) sets.push_back("output_dir=" + *o.out);
    if (o.run_id) sets.push_back("run_id=" + *o.run_id);
    Common c = o.common;
    c.overrides = sets;
    const RunConfig config = c.load();

    std::shared_ptr<llm::Backend> backend;
    if (config.backend == "http") {
        // Fails before any network traffic when the key is missing.
        auto key = llm::read_api_key(config.llm);
        backend = std::make_shared<llm::HttpBackend>(config.llm, std::move(key));
    } else {
        backend = std::make_shared<llm::MockBackend>(gen::mock_tags_for(config.templates), config.mock_seed);
    }
    const llm::Gateway gateway(backend, config.llm);

    const auto run_dir = config.output_dir / config.run_id.value_or(default_run_id(config));
    for (const char *sub : {"corpora", "checkpoints", "models", "reports"}) stdfs::create_directories(run_dir / sub);
    auto effective = ordered_json(config_to_json(config));
    effective.erase("output_dir");
    effective.erase("run_id");
    write_json(run_dir / "reports" / "config.json", effective);

    gen::PipelineOptions options;
    options.request = config.request;
    options.run_dir = run_dir;
    options.backend = config.backend;
    if (config.backend == "mock") options.mock_seed = config.mock_seed;
    options.record_wall_time = config.backend == "http";

    const auto started = std::chrono::steady_clock::now();
    const auto result = gen::run_pipeline(config.plan, config.templates, gateway, config.splits, options);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    spdlog::info("pipeline finished in {:.2f}s after {} backend calls", elapsed.count(), gateway.attempts());

    const auto &r = result.report;
    out << fmt::format("run directory: {}\n", run_dir.string());
    out << fmt::format("seeds {} -> sentences {} -> pairs {} -> train {} / valid {}\n", r.seeds_deduplicated,
                       r.sentences_deduplicated, r.translated, r.sampled_train, r.sampled_valid);
    return exit_ok;
}

// --- sample --------------------------------------------------------------

struct SampleOpts {
    Common common;
    std::string input;
    std::optional<std::string> format;
    std::string out;
    std::string output_format = "jsonl";
    bool with_test = false;
    std::optional<std::size_t> train_tokens, valid_tokens, test_tokens;
    std::optional<std::uint64_t> seed;
};

int cmd_sample(const SampleOpts &o, std::ostream &out) {
    Common c = o.common;
    if (o.train_tokens) c.overrides.push_back(fmt::format("splits.train_tokens={}", *o.train_tokens));
    if (o.valid_tokens) c.overrides.push_back(fmt::format("splits.valid_tokens={}", *o.valid_tokens));
    if (o.test_tokens) c.overrides.push_back(fmt::format("splits.test_tokens={}", *o.test_tokens));
    if (o.seed) c.overrides.push_back(fmt::format("rng_seed={}", *o.seed));
    const RunConfig config = c.load();

    const auto corpus = load(o.input, config, parse_format(o.format));
    auto spec = config.splits;
    if (!o.with_test) {
        spec.test_token_threshold.reset();
    } else {
        const bool synthetic = std::any_of(corpus.pairs.begin(), corpus.pairs.end(),
                                           [](const auto &p) { return p.origin == corpus::Origin::synthetic; });
        if (synthetic) throw ConfigError("a test split may only be drawn from natural pairs");
        if (!spec.test_token_threshold) throw ConfigError("splits.test_tokens is not set");
    }

    const auto splits = corpus::make_splits(corpus, spec);
    const auto fmt_out = parse_format(o.output_format).value();
    const stdfs::path dir = o.out;
    stdfs::create_directories(dir);
    save(splits.train, dir / "train", fmt_out);
    save(splits.valid, dir / "valid", fmt_out);
    if (splits.test) save(*splits.test, dir / "test", fmt_out);

    out << fmt::format("train: {} pairs, {} tokens\n", splits.train.size(), splits.train.source_tokens());
    out << fmt::format("valid: {} pairs, {} tokens\n", splits.valid.size(), splits.valid.source_tokens());
    if (splits.test) out << fmt::format("test: {} pairs, {} tokens\n", splits.test->size(), splits.test->source_tokens());
    return exit_ok;
}

// --- bpe-train / bpe-apply -------------------------------------------------

struct BpeTrainOpts {
    Common common;
    std::vector<std::string> inputs;
    std::vector<std::string> held_out;
    std::optional<std::size_t> vocab_size;
    std::string model;
};

int cmd_bpe_train(const BpeTrainOpts &o, std::ostream &out) {
    Common c = o.common;
    if (o.vocab_size) c.overrides.push_back(fmt::format("bpe.vocab_size={}", *o.vocab_size));
    const RunConfig config = c.load();

    std::vector<corpus::ParallelCorpus> training;
    for (const auto &p : o.inputs) training.push_back(load(p, config));
    for (const auto &p : o.held_out) {
        const auto held = load(p, config);
        for (std::size_t i = 0; i < training.size(); ++i) corpus::require_disjoint(training[i], held, p);
    }
    const auto model = bpe::train_bpe(training, config.bpe_vocab_size);
    fs::atomic_write(o.model, model.serialize());
    out << fmt::format("merges: {}, vocabulary: {} (target {})\n", model.merges.size(), model.vocab.size(),
                       config.bpe_vocab_size);
    return exit_ok;
}

struct BpeApplyOpts {
    Common common;
    std::string model;
    std::string input;
    std::string output;
};

int cmd_bpe_apply(const BpeApplyOpts &o, std::ostream &out) {
    const RunConfig config = o.common.load();
    const auto model = bpe::BpeModel::parse(fs::read_file(o.model));
    const bpe::Encoder encoder(model);
    auto corpus = load(o.input, config);
    for (auto &p : corpus.pairs) {
        p.source = text::join(encoder.encode(p.source), " ");
        p.target = text::join(encoder.encode(p.target), " ");
    }
    const stdfs::path dst = o.output;
    if (dst.has_parent_path()) stdfs::create_directories(dst.parent_path());
    if (corpus::detect_format(dst) == corpus::CorpusFormat::jsonl) {
        corpus::write_jsonl(corpus, dst);
    } else {
        corpus::write_plain_pair(corpus, dst);
    }
    out << fmt::format("encoded {} pairs\n", corpus.size());
    return exit_ok;
}

// --- experiment / analyze --------------------------------------------------

struct NamedCorpus {
    std::string name;
    corpus::ParallelCorpus corpus;
};

std::vector<metrics::TtrRow> profile_all(const std::vector<NamedCorpus> &corpora, std::string &zipf_csv) {
    std::vector<metrics::TtrRow> rows;
    zipf_csv = "corpus,side,rank,word,frequency,log10_rank,log10_frequency\n";
    for (const auto &[name, c] : corpora) {
        for (const bool source : {true, false}) {
            const auto lines = source ? c.sources() : c.targets();
            const auto profile = metrics::frequency_profile(lines);
            const std::string side = source ? "source" : "target";
            rows.push_back({name, side, profile.type_count, profile.token_count, profile.ttr});
            const auto points = profile.zipf_points();
            for (std::size_t i = 0; i < profile.rank_frequency.size(); ++i) {
                const auto &w = profile.rank_frequency[i];
                zipf_csv += fmt::format("{},{},{},{},{},{:.6f},{:.6f}\n", metrics::csv_field(name), side, w.rank,
                                        metrics::csv_field(w.word), w.frequency, points[i].first, points[i].second);
            }
        }
    }
    return rows;
}

struct ExperimentOpts {
    Common common;
    std::optional<std::string> nat_train, syn_train, syn_valid, nat_valid, test;
    std::optional<std::string> label;
    std::optional<std::size_t> iterations;
    std::string out;
    bool analyze_only = false;
    std::optional<std::string> render;
};

int cmd_experiment(const ExperimentOpts &o, std::ostream &out) {
    Common c = o.common;
    if (o.iterations) c.overrides.push_back(fmt::format("em.iterations={}", *o.iterations));
    const RunConfig config = c.load();
    const stdfs::path run_dir = o.out;
    const auto reports = run_dir / "reports";

    if (o.render) {
        const auto doc = metrics::ResultsDocument::from_json(ordered_json::parse(fs::read_file(*o.render)));
        fs::atomic_write(reports / "results.md", doc.to_markdown());
        out << fmt::format("wrote {}\n", (reports / "results.md").string());
        return exit_ok;
    }

    auto pick = [](const std::optional<std::string> &flag, const std::optional<stdfs::path> &cfg)
        -> std::optional<stdfs::path> {
        if (flag) return stdfs::path(*flag);
        return cfg;
    };
    const auto nat_train = pick(o.nat_train, config.paths.nat_train);
    const auto syn_train = pick(o.syn_train, config.paths.syn_train);
    const auto syn_valid = pick(o.syn_valid, config.paths.syn_valid);
    const auto nat_valid = pick(o.nat_valid, config.paths.nat_valid);
    const auto test = pick(o.test, config.paths.test);

    std::vector<NamedCorpus> named;
    auto add = [&](const char *name, const std::optional<stdfs::path> &p) {
        if (p) named.push_back({name, load(*p, config)});
    };
    add("nat-train", nat_train);
    add("syn-train", syn_train);
    add("syn-valid", syn_valid);
    add("nat-valid", nat_valid);
    add("test", test);
    if (named.empty()) throw ConfigError("no corpora given");

    std::string zipf;
    const auto ttr = profile_all(named, zipf);
    fs::atomic_write(reports / "ttr.csv", metrics::ttr_csv(ttr));
    fs::atomic_write(reports / "zipf.csv", zipf);
    if (o.analyze_only) {
        out << fmt::format("wrote {} and {}\n", (reports / "ttr.csv").string(), (reports / "zipf.csv").string());
        return exit_ok;
    }

    if (!nat_train || !syn_train || !nat_valid || !test) {
        throw ConfigError("experiment needs --nat-train, --syn-train, --nat-valid and --test");
    }
    auto find = [&](std::string_view name) -> const corpus::ParallelCorpus & {
        return std::find_if(named.begin(), named.end(), [&](const auto &n) { return n.name == name; })->corpus;
    };
    baseline::ExperimentInputs in;
    in.nat_train = find("nat-train");
    in.syn_train = find("syn-train");
    if (syn_valid) in.syn_valid = find("syn-valid");
    in.nat_valid = find("nat-valid");
    in.test = find("test");
    in.iterations = config.em_iterations;
    in.label = o.label.value_or(config.plan.source_lang);
    in.normalizer = config.normalizer;
    in.smoothing = config.smoothing;

    const auto result = baseline::run_experiment(in);
    stdfs::create_directories(run_dir / "models");
    for (const auto &[name, model] : result.models) {
        fs::atomic_write(run_dir / "models" / (name + ".lex"), model.serialize());
    }

    metrics::ResultsDocument doc;
    doc.test_tables.push_back(result.test_scores());
    doc.matrix = result.matrix;
    doc.ttr = ttr;
    doc.metadata = {{"baseline", "lexicon-em"},
                    {"iterations", in.iterations},
                    {"normalizer", std::string(metrics::to_string(in.normalizer))},
                    {"smoothing", std::string(metrics::to_string(in.smoothing))},
                    {"rng_seed", config.rng_seed},
                    {"mock_seed", config.mock_seed}};
    ordered_json sizes = ordered_json::object();
    for (const auto &[name, corpus] : named) sizes[name] = {{"pairs", corpus.size()}, {"tokens", corpus.source_tokens()}};
    doc.metadata["corpora"] = sizes;

    fs::atomic_write(reports / "results.md", doc.to_markdown());
    write_json(reports / "results.json", doc.to_json());
    out << metrics::render_score_row(doc.test_tables.front());
    return exit_ok;
}

struct AnalyzeOpts {
    Common common;
    std::vector<std::string> inputs;
    std::string out;
};

int cmd_analyze(const AnalyzeOpts &o, std::ostream &out) {
    const RunConfig config = o.common.load();
    std::vector<NamedCorpus> named;
    std::set<std::string> seen;
    for (const auto &p : o.inputs) {
        auto name = corpus_name(p);
        if (!seen.insert(name).second) throw ConfigError(fmt::format("two inputs are both named '{}'", name));
        named.push_back({std::move(name), load(p, config)});
    }
    const stdfs::path dir = o.out;
    ordered_json summary = ordered_json::object();
    for (const auto &[name, c] : named) {
        for (const bool source : {true, false}) {
            const auto profile = metrics::frequency_profile(source ? c.sources() : c.targets());
            const auto lang = source ? c.source_lang : c.target_lang;
            fs::atomic_write(dir / fmt::format("{}.{}.freq.csv", name, lang), profile.to_csv());
            summary[name][lang] = profile.summary_json();
        }
    }
    std::string zipf;
    const auto ttr = profile_all(named, zipf);
    fs::atomic_write(dir / "ttr.csv", metrics::ttr_csv(ttr));
    fs::atomic_write(dir / "zipf.csv", zipf);
    write_json(dir / "summary.json", summary);
    out << metrics::render_ttr_table(ttr);
    return exit_ok;
}

// --- export ----------------------------------------------------------------

struct ExportOpts {
    Common common;
    std::optional<std::string> train, valid, test;
    std::optional<std::string> format;
    std::string out;
};

int cmd_export(const ExportOpts &o, std::ostream &out) {
    const RunConfig config = o.common.load();
    const auto format = parse_format(o.format);
    std::vector<std::pair<std::string, corpus::ParallelCorpus>> splits;
    for (const auto &[name, path] : {std::pair{"train", o.train}, std::pair{"valid", o.valid}, std::pair{"test", o.test}}) {
        if (!path) continue;
        auto c = load(*path, config, format);
        if (c.empty()) throw EmptyCorpus(fmt::format("{} corpus {} is empty", name, *path));
        splits.emplace_back(name, std::move(c));
    }
    if (splits.empty()) throw ConfigError("export needs at least one of --train, --valid, --test");
    if (splits.front().first == "train") {
        for (std::size_t i = 1; i < splits.size(); ++i) {
            corpus::require_disjoint(splits.front().second, splits[i].second, splits[i].first);
        }
    }

    const stdfs::path dir = o.out;
    stdfs::create_directories(dir);
    ordered_json files = ordered_json::object();
    for (const auto &[name, c] : splits) {
        corpus::write_plain_pair(c, dir / name);
        files[name] = {{"source", fmt::format("{}.{}", name, c.source_lang)},
                       {"target", fmt::format("{}.{}", name, c.target_lang)},
                       {"pairs", c.size()},
                       {"source_tokens", c.source_tokens()}};
    }
    ordered_json meta;
    meta["source_lang"] = config.plan.source_lang;
    meta["target_lang"] = config.plan.target_lang;
    meta["files"] = files;
    meta["subword"] = {{"method", "bpe"}, {"joint", true}, {"vocab_size", config.bpe_vocab_size}};
    meta["transformer"] = {{"attention_heads", 4},
                           {"layers", 3},
                           {"batch_size", 2000},
                           {"max_epochs", 100},
                           {"early_stopping", "validation loss"}};
    meta["evaluation"] = "corpus BLEU";
    write_json(dir / "metadata.json", meta);
    out << fmt::format("exported {} split(s) to {}\n", splits.size(), dir.string());
    return exit_ok;
}

void setup_logging(const std::string &level) {
    static std::once_flag once;
    std::call_once(once, [] { spdlog::set_default_logger(spdlog::stderr_color_mt("corpus-forge")); });
    spdlog::set_level(spdlog::level::from_str(level));
}

template <class F> int guarded(F &&body, std::ostream &err) {
    try {
        return body();
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << "\n";
        return exit_config;
    } catch (const AuthError &e) {
        err << "authentication failed: " << e.what() << "\n";
        return exit_config;
    } catch (const InsufficientData &e) {
        err << "insufficient data: " << e.what() << "\n";
        return exit_insufficient;
    } catch (const GatewayError &e) {
        err << "backend error: " << e.what() << "\n";
        return exit_generation;
    } catch (const GenerationError &e) {
        err << "generation failed: " << e.what() << "\n";
        return exit_generation;
    } catch (const DataError &e) {
        err << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const LengthMismatch &e) {
        err << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const EmptyHypothesisCorpus &e) {
        err << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const EmptyInput &e) {
        err << "data error: " << e.what() << "\n";
        return exit_data;
    } catch (const stdfs::filesystem_error &e) {
        err << "i/o error: " << e.what() << "\n";
        return exit_data;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Synthetic parallel corpus generation and low-resource MT evaluation", "corpus-forge"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string log_level = "warn";
    app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off")
        ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "critical", "off"}));

    HallucinateOpts h;
    auto *hallucinate = app.add_subcommand("hallucinate", "Generate a synthetic corpus through an LLM backend");
    add_common(*hallucinate, h.common);
    hallucinate->add_option("--backend", h.backend, "http or mock")->check(CLI::IsMember({"http", "mock"}));
    hallucinate->add_option("--out", h.out, "Output root (default: config output_dir)");
    hallucinate->add_option("--run-id", h.run_id, "Run directory name under the output root");

    SampleOpts s;
    auto *sample = app.add_subcommand("sample", "Split a corpus into token-threshold train/valid/test sets");
    add_common(*sample, s.common);
    sample->add_option("--input", s.input, "Corpus (.jsonl or plain-pair stem)")->required();
    sample->add_option("--format", s.format, "Input format: jsonl or plain-pair (default: by extension)");
    sample->add_option("--out", s.out, "Output directory")->required();
    sample->add_option("--output-format", s.output_format, "jsonl or plain-pair");
    sample->add_flag("--with-test", s.with_test, "Also draw a test split (natural corpora only)");
    sample->add_option("--train-tokens", s.train_tokens);
    sample->add_option("--valid-tokens", s.valid_tokens);
    sample->add_option("--test-tokens", s.test_tokens);
    sample->add_option("--seed", s.seed, "Sampling seed (default: config rng_seed)");

    BpeTrainOpts bt;
    auto *bpe_train = app.add_subcommand("bpe-train", "Learn joint BPE merges from training corpora");
    add_common(*bpe_train, bt.common);
    bpe_train->add_option("--input", bt.inputs, "Training corpus, repeatable")->required();
    bpe_train->add_option("--held-out", bt.held_out, "Evaluation corpus that must not overlap the inputs");
    bpe_train->add_option("--vocab-size", bt.vocab_size);
    bpe_train->add_option("--model", bt.model, "Where to write the merges")->required();

    BpeApplyOpts ba;
    auto *bpe_apply = app.add_subcommand("bpe-apply", "Segment both sides of a corpus with learned merges");
    add_common(*bpe_apply, ba.common);
    bpe_apply->add_option("--model", ba.model)->required()->check(CLI::ExistingFile);
    bpe_apply->add_option("--input", ba.input)->required();
    bpe_apply->add_option("--output", ba.output, "Output .jsonl file or plain-pair stem")->required();

    ExperimentOpts e;
    auto *experiment = app.add_subcommand("experiment", "Train Nat/Synth/Aug baselines and cross-evaluate them");
    add_common(*experiment, e.common);
    experiment->add_option("--nat-train", e.nat_train);
    experiment->add_option("--syn-train", e.syn_train);
    experiment->add_option("--syn-valid", e.syn_valid);
    experiment->add_option("--nat-valid", e.nat_valid);
    experiment->add_option("--test", e.test);
    experiment->add_option("--label", e.label, "Model label suffix (default: source language)");
    experiment->add_option("--iterations", e.iterations, "EM iterations");
    experiment->add_option("--out", e.out, "Run directory (models/ and reports/ go here)")->required();
    experiment->add_flag("--analyze-only", e.analyze_only, "Only write ttr.csv and zipf.csv");
    experiment->add_option("--render", e.render, "Re-render results.md from a results.json")
        ->check(CLI::ExistingFile);

    ExportOpts x;
    auto *exp = app.add_subcommand("export", "Write line-aligned files plus model settings for external toolkits");
    add_common(*exp, x.common);
    exp->add_option("--train", x.train);
    exp->add_option("--valid", x.valid);
    exp->add_option("--test", x.test);
    exp->add_option("--format", x.format, "Input format: jsonl or plain-pair (default: by extension)");
    exp->add_option("--out", x.out, "Output directory")->required();

    AnalyzeOpts a;
    auto *analyze = app.add_subcommand("analyze", "Type-token ratio and rank-frequency profiles");
    add_common(*analyze, a.common);
    analyze->add_option("--input", a.inputs, "Corpus, repeatable")->required();
    analyze->add_option("--out", a.out, "Output directory")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError &pe) {
        const int code = app.exit(pe, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }
    setup_logging(log_level);

    return guarded(
        [&] {
            if (*hallucinate) return cmd_hallucinate(h, out);
            if (*sample) return cmd_sample(s, out);
            if (*bpe_train) return cmd_bpe_train(bt, out);
            if (*bpe_apply) return cmd_bpe_apply(ba, out);
            if (*experiment) return cmd_experiment(e, out);
            if (*exp) return cmd_export(x, out);
            return cmd_analyze(a, out);
        },
        err);
}

} // namespace cforge::cli
