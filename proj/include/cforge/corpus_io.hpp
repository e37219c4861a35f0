#pragma once

// On-disk corpus formats.
//
//  plain-pair: <stem>.<src> and <stem>.<tgt>, UTF-8, LF, line i of one file
//              aligned with line i of the other. Pairs read this way are
//              natural and get ids "<id_prefix>-<line number>".
//  jsonl:      one object per pair: {"id","src","tgt","origin","seed_word"},
//              seed_word null for natural pairs.

#include "cforge/corpus.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace cforge::corpus {

enum class CorpusFormat { plain_pair, jsonl };

CorpusFormat format_from_string(std::string_view s);

// ".jsonl" extension means jsonl, anything else is a plain-pair stem.
CorpusFormat detect_format(const std::filesystem::path &path);

ParallelCorpus read_plain_pair(const std::filesystem::path &stem, const std::string &source_lang,
                               const std::string &target_lang, std::string id_prefix = {});

void write_plain_pair(const ParallelCorpus &corpus, const std::filesystem::path &stem);

ParallelCorpus parse_jsonl(std::string_view contents, const std::string &source_lang,
                           const std::string &target_lang);
std::string to_jsonl(const ParallelCorpus &corpus);

ParallelCorpus read_jsonl(const std::filesystem::path &path, const std::string &source_lang,
                          const std::string &target_lang);
void write_jsonl(const ParallelCorpus &corpus, const std::filesystem::path &path);

ParallelCorpus load_corpus(const std::filesystem::path &path, const std::string &source_lang,
                           const std::string &target_lang);

} // namespace cforge::corpus
