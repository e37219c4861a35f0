#include "cforge/lexicon.hpp"

#include "cforge/error.hpp"
#include "cforge/text.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace cforge::baseline {

double LexiconModel::probability(std::string_view f, std::string_view e) const {
    if (!source_vocab_.contains(f)) return 0.0;
    if (uniform_) return (e == null_token || target_vocab_.contains(e)) ? *uniform_ : 0.0;
    auto row = table_.find(f);
    if (row == table_.end()) return 0.0;
    auto cell = row->second.find(e);
    return cell == row->second.end() ? 0.0 : cell->second;
}

double LexiconModel::max_normalization_error() const {
    double worst = 0.0;
    if (uniform_) {
        const double sum = static_cast<double>(target_vocab_.size() + 1) * *uniform_;
        return source_vocab_.empty() ? 0.0 : std::abs(sum - 1.0);
    }
    for (const auto &f : source_vocab_) {
        double sum = 0.0;
        if (auto row = table_.find(f); row != table_.end()) {
            for (const auto &[e, p] : row->second) sum += p;
        }
        worst = std::max(worst, std::abs(sum - 1.0));
    }
    return worst;
}

void LexiconModel::rebuild_best() {
    best_.clear();
    for (const auto &[f, row] : table_) {
        const std::string *best = nullptr;
        double best_p = -1.0;
        for (const auto &[e, p] : row) { // ascending e, so strict > keeps the smallest on ties
            if (p > best_p) {
                best_p = p;
                best = &e;
            }
        }
        if (best != nullptr) best_.emplace(f, *best);
    }
}

std::optional<std::string> LexiconModel::best_translation(std::string_view f) const {
    if (uniform_) {
        if (!source_vocab_.contains(f)) return std::nullopt;
        // every e ties
        std::string smallest(null_token);
        if (!target_vocab_.empty() && *target_vocab_.begin() < smallest) smallest = *target_vocab_.begin();
        return smallest;
    }
    auto it = best_.find(f);
    if (it == best_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> LexiconModel::translate(std::span<const std::string> source_lines) const {
    std::vector<std::string> out;
    out.reserve(source_lines.size());
    for (const auto &line : source_lines) {
        std::vector<std::string> words;
        for (auto &tok : text::split_tokens(line)) {
            auto best = best_translation(tok);
            if (!best) {
                words.push_back(std::move(tok));
            } else if (*best != null_token) {
                words.push_back(std::move(*best));
            }
        }
        out.push_back(text::join(words, " "));
    }
    return out;
}

std::string LexiconModel::serialize() const {
    std::string out = fmt::format("lexicon-v1\t{}\t{:.12g}\n", iterations_run_, final_log_likelihood_);
    if (uniform_) {
        for (const auto &f : source_vocab_) {
            out += fmt::format("{}\t{}\t{:.12g}\n", f, null_token, *uniform_);
            for (const auto &e : target_vocab_) out += fmt::format("{}\t{}\t{:.12g}\n", f, e, *uniform_);
        }
        return out;
    }
    for (const auto &[f, row] : table_) {
        for (const auto &[e, p] : row) out += fmt::format("{}\t{}\t{:.12g}\n", f, e, p);
    }
    return out;
}

LexiconModel LexiconModel::parse(std::string_view contents) {
    LexiconModel model;
    std::size_t start = 0, line_no = 0;
    while (start < contents.size()) {
        std::size_t end = contents.find('\n', start);
        if (end == std::string_view::npos) end = contents.size();
        const std::string line(contents.substr(start, end - start));
        start = end + 1;
        ++line_no;
        std::vector<std::string> fields;
        std::size_t s = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == '\t') {
                fields.push_back(line.substr(s, i - s));
                s = i + 1;
            }
        }
        try {
            if (line_no == 1) {
                if (fields.size() != 3 || fields[0] != "lexicon-v1") throw DataError("unknown lexicon header");
                model.iterations_run_ = std::stoul(fields[1]);
                model.final_log_likelihood_ = std::stod(fields[2]);
                continue;
            }
            if (line.empty()) continue;
            if (fields.size() != 3) throw DataError("expected f<TAB>e<TAB>prob");
            const double p = std::stod(fields[2]);
            if (!(p >= 0.0)) throw DataError("negative probability");
            model.source_vocab_.insert(fields[0]);
            if (fields[1] != null_token) model.target_vocab_.insert(fields[1]);
            model.table_[fields[0]][fields[1]] = p;
        } catch (const DataError &e) {
            throw DataError("lexicon line " + std::to_string(line_no) + ": " + e.what());
        } catch (const std::logic_error &) {
            throw DataError("lexicon line " + std::to_string(line_no) + ": bad number");
        }
    }
    if (line_no == 0) throw DataError("empty lexicon file");
    model.rebuild_best();
    return model;
}

namespace {

struct Indexed {
    std::vector<std::string> source_words;
    std::vector<std::string> target_words; // index 0 is the null token
    std::vector<std::vector<std::uint32_t>> src;
    std::vector<std::vector<std::uint32_t>> tgt; // null appended
};

Indexed index_corpus(const corpus::ParallelCorpus &corpus) {
    if (corpus.empty()) throw EmptyCorpus("EM training corpus is empty");
    Indexed ix;
    std::unordered_map<std::string, std::uint32_t> sid, tid;
    ix.target_words.emplace_back(null_token);
    tid.emplace(std::string(null_token), 0);
    auto lookup = [](auto &ids, auto &words, std::string word) {
        auto [it, inserted] = ids.emplace(word, static_cast<std::uint32_t>(words.size()));
        if (inserted) words.push_back(std::move(word));
        return it->second;
    };
    for (const auto &p : corpus.pairs) {
        std::vector<std::uint32_t> s, t;
        for (auto &w : text::split_tokens(p.source)) s.push_back(lookup(sid, ix.source_words, std::move(w)));
        for (auto &w : text::split_tokens(p.target)) t.push_back(lookup(tid, ix.target_words, std::move(w)));
        if (s.empty()) throw DataError("pair '" + p.id + "' has an empty source side");
        t.push_back(0);
        ix.src.push_back(std::move(s));
        ix.tgt.push_back(std::move(t));
    }
    return ix;
}

// Sparse t table: for each f, the sorted target ids it co-occurs with.
struct Table {
    std::vector<std::vector<std::uint32_t>> targets;
    std::vector<std::vector<double>> prob;

    std::size_t slot(std::uint32_t f, std::uint32_t e) const {
        const auto &row = targets[f];
        return static_cast<std::size_t>(std::lower_bound(row.begin(), row.end(), e) - row.begin());
    }
};

// Log-likelihood under `table`, optionally collecting expected counts.
double e_step(const Indexed &ix, const Table &table, std::vector<std::vector<double>> *counts) {
    double ll = 0.0;
    std::vector<std::size_t> slots;
    std::vector<double> weights;
    for (std::size_t s = 0; s < ix.src.size(); ++s) {
        const auto &src = ix.src[s];
        const double inv_m = 1.0 / static_cast<double>(src.size());
        for (std::uint32_t e : ix.tgt[s]) {
            slots.clear();
            weights.clear();
            double denom = 0.0;
            for (std::uint32_t f : src) {
                const std::size_t k = table.slot(f, e);
                const double p = table.prob[f][k];
                slots.push_back(k);
                weights.push_back(p);
                denom += p;
            }
            ll += std::log(denom * inv_m);
            if (counts == nullptr || denom <= 0.0) continue;
            for (std::size_t i = 0; i < src.size(); ++i) (*counts)[src[i]][slots[i]] += weights[i] / denom;
        }
    }
    return ll;
}

} // namespace

LexiconModel initialize_uniform(const corpus::ParallelCorpus &corpus) {
    const Indexed ix = index_corpus(corpus);
    LexiconModel model;
    model.source_vocab_.insert(ix.source_words.begin(), ix.source_words.end());
    model.target_vocab_.insert(ix.target_words.begin() + 1, ix.target_words.end());
    model.uniform_ = 1.0 / static_cast<double>(ix.target_words.size());
    return model;
}

LexiconModel train_em(const corpus::ParallelCorpus &corpus, std::size_t iterations) {
    if (iterations < 1) throw std::invalid_argument("train_em needs at least one iteration");
    const Indexed ix = index_corpus(corpus);

    Table table;
    table.targets.resize(ix.source_words.size());
    for (std::size_t s = 0; s < ix.src.size(); ++s) {
        for (std::uint32_t f : ix.src[s]) {
            auto &row = table.targets[f];
            row.insert(row.end(), ix.tgt[s].begin(), ix.tgt[s].end());
        }
    }
    const double uniform = 1.0 / static_cast<double>(ix.target_words.size());
    table.prob.resize(table.targets.size());
    for (std::size_t f = 0; f < table.targets.size(); ++f) {
        auto &row = table.targets[f];
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
        table.prob[f].assign(row.size(), uniform);
    }

    LexiconModel model;
    std::vector<std::vector<double>> counts(table.targets.size());
    for (std::size_t it = 0; it < iterations; ++it) {
        for (std::size_t f = 0; f < counts.size(); ++f) counts[f].assign(table.targets[f].size(), 0.0);
        model.history_.push_back(e_step(ix, table, &counts));
        for (std::size_t f = 0; f < counts.size(); ++f) {
            double total = 0.0;
            for (double c : counts[f]) total += c;
            for (std::size_t k = 0; k < counts[f].size(); ++k) {
                table.prob[f][k] = total > 0.0 ? counts[f][k] / total : 1.0 / static_cast<double>(counts[f].size());
            }
        }
    }
    model.final_log_likelihood_ = e_step(ix, table, nullptr);
    model.history_.push_back(model.final_log_likelihood_);
    model.iterations_run_ = iterations;

    model.source_vocab_.insert(ix.source_words.begin(), ix.source_words.end());
    model.target_vocab_.insert(ix.target_words.begin() + 1, ix.target_words.end());
    for (std::size_t f = 0; f < table.targets.size(); ++f) {
        auto &row = model.table_[ix.source_words[f]];
        for (std::size_t k = 0; k < table.targets[f].size(); ++k) {
            if (table.prob[f][k] > 0.0) row.emplace(ix.target_words[table.targets[f][k]], table.prob[f][k]);
        }
    }
    model.rebuild_best();
    return model;
}

} // namespace cforge::baseline
