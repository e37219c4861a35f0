#include "cforge/corpus_io.hpp"

#include "cforge/error.hpp"
#include "cforge/fs_util.hpp"

#include <nlohmann/json.hpp>

#include <vector>

namespace cforge::corpus {

using ordered_json = nlohmann::ordered_json;

CorpusFormat format_from_string(std::string_view s) {
    if (s == "plain-pair") return CorpusFormat::plain_pair;
    if (s == "jsonl") return CorpusFormat::jsonl;
    throw ConfigError("unknown corpus format '" + std::string(s) + "' (expected plain-pair or jsonl)");
}

CorpusFormat detect_format(const std::filesystem::path &path) {
    return path.extension() == ".jsonl" ? CorpusFormat::jsonl : CorpusFormat::plain_pair;
}

namespace {

std::vector<std::string> split_lines(const std::string &contents) {
    std::vector<std::string> lines;
    std::size_t start = 0;
    while (start < contents.size()) {
        std::size_t end = contents.find('\n', start);
        if (end == std::string::npos) end = contents.size();
        lines.push_back(contents.substr(start, end - start));
        start = end + 1;
    }
    return lines;
}

std::filesystem::path with_lang(const std::filesystem::path &stem, const std::string &lang) {
    std::filesystem::path p = stem;
    p += "." + lang;
    return p;
}

} // namespace

ParallelCorpus read_plain_pair(const std::filesystem::path &stem, const std::string &source_lang,
                               const std::string &target_lang, std::string id_prefix) {
    const auto src_path = with_lang(stem, source_lang);
    const auto tgt_path = with_lang(stem, target_lang);
    const auto src_lines = split_lines(fs::read_file(src_path));
    const auto tgt_lines = split_lines(fs::read_file(tgt_path));
    if (src_lines.size() != tgt_lines.size()) {
        throw DataError("line count mismatch: " + src_path.string() + " has " + std::to_string(src_lines.size()) +
                        " lines, " + tgt_path.string() + " has " + std::to_string(tgt_lines.size()));
    }
    if (id_prefix.empty()) id_prefix = stem.filename().string();
    ParallelCorpus corpus{{}, source_lang, target_lang};
    corpus.pairs.reserve(src_lines.size());
    for (std::size_t i = 0; i < src_lines.size(); ++i) {
        auto strip_cr = [](std::string s) {
            if (!s.empty() && s.back() == '\r') s.pop_back();
            return s;
        };
        corpus.pairs.push_back(SentencePair{id_prefix + "-" + std::to_string(i + 1), strip_cr(src_lines[i]),
                                            strip_cr(tgt_lines[i]), Origin::natural, std::nullopt});
    }
    corpus.validate();
    return corpus;
}

void write_plain_pair(const ParallelCorpus &corpus, const std::filesystem::path &stem) {
    std::string src, tgt;
    for (const auto &p : corpus.pairs) {
        src += p.source;
        src += '\n';
        tgt += p.target;
        tgt += '\n';
    }
    fs::atomic_write(with_lang(stem, corpus.source_lang), src);
    fs::atomic_write(with_lang(stem, corpus.target_lang), tgt);
}

ParallelCorpus parse_jsonl(std::string_view contents, const std::string &source_lang,
                           const std::string &target_lang) {
    ParallelCorpus corpus{{}, source_lang, target_lang};
    std::size_t line_no = 0;
    std::size_t start = 0;
    while (start < contents.size()) {
        std::size_t end = contents.find('\n', start);
        if (end == std::string_view::npos) end = contents.size();
        std::string_view line = contents.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;

        const std::string where = "jsonl line " + std::to_string(line_no);
        ordered_json obj;
        try {
            obj = ordered_json::parse(line);
        } catch (const nlohmann::json::parse_error &e) {
            throw DataError(where + ": " + e.what());
        }
        if (!obj.is_object()) throw DataError(where + ": expected an object");
        for (const char *field : {"id", "src", "tgt", "origin"}) {
            if (!obj.contains(field) || !obj[field].is_string()) {
                throw DataError(where + ": missing or non-string field '" + field + "'");
            }
        }
        SentencePair pair;
        pair.id = obj["id"].get<std::string>();
        pair.source = obj["src"].get<std::string>();
        pair.target = obj["tgt"].get<std::string>();
        pair.origin = origin_from_string(obj["origin"].get<std::string>());
        if (obj.contains("seed_word") && !obj["seed_word"].is_null()) {
            if (!obj["seed_word"].is_string()) throw DataError(where + ": seed_word must be a string or null");
            pair.seed_word = obj["seed_word"].get<std::string>();
        }
        corpus.pairs.push_back(std::move(pair));
    }
    corpus.validate();
    return corpus;
}

std::string to_jsonl(const ParallelCorpus &corpus) {
    std::string out;
    for (const auto &p : corpus.pairs) {
        ordered_json obj;
        obj["id"] = p.id;
        obj["src"] = p.source;
        obj["tgt"] = p.target;
        obj["origin"] = to_string(p.origin);
        obj["seed_word"] = p.seed_word ? ordered_json(*p.seed_word) : ordered_json(nullptr);
        out += obj.dump();
        out += '\n';
    }
    return out;
}

ParallelCorpus read_jsonl(const std::filesystem::path &path, const std::string &source_lang,
                          const std::string &target_lang) {
    try {
        return parse_jsonl(fs::read_file(path), source_lang, target_lang);
    } catch (const DataError &e) {
        throw DataError(path.string() + ": " + e.what());
    }
}

void write_jsonl(const ParallelCorpus &corpus, const std::filesystem::path &path) {
    fs::atomic_write(path, to_jsonl(corpus));
}

ParallelCorpus load_corpus(const std::filesystem::path &path, const std::string &source_lang,
                           const std::string &target_lang) {
    if (detect_format(path) == CorpusFormat::jsonl) return read_jsonl(path, source_lang, target_lang);
    return read_plain_pair(path, source_lang, target_lang);
}

} // namespace cforge::corpus
