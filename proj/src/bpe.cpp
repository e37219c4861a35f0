#include "cforge/bpe.hpp"

#include "cforge/error.hpp"
#include "cforge/text.hpp"

#include <spdlog/spdlog.h>

#include <limits>
#include <set>
#include <unordered_set>

namespace cforge::bpe {

std::string BpeModel::serialize() const {
    std::string out = "bpe-v1 " + std::to_string(target_vocab_size) + "\n";
    for (const auto &m : merges) {
        out += m.left;
        out += ' ';
        out += m.right;
        out += '\n';
    }
    return out;
}

BpeModel BpeModel::parse(std::string_view contents) {
    BpeModel model;
    std::size_t start = 0;
    std::size_t line_no = 0;
    while (start < contents.size()) {
        std::size_t end = contents.find('\n', start);
        if (end == std::string_view::npos) end = contents.size();
        std::string_view line = contents.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (line_no == 1) {
            constexpr std::string_view header = "bpe-v1 ";
            if (!line.starts_with(header)) throw DataError("unknown BPE model header '" + std::string(line) + "'");
            const std::string size(line.substr(header.size()));
            std::size_t consumed = 0;
            try {
                model.target_vocab_size = std::stoul(size, &consumed);
            } catch (const std::exception &) {
                consumed = 0;
            }
            if (consumed == 0 || consumed != size.size()) throw DataError("bad vocabulary size in BPE header");
            continue;
        }
        if (line.empty()) continue;
        const std::size_t space = line.find(' ');
        if (space == std::string_view::npos || space == 0 || space + 1 >= line.size() ||
            line.find(' ', space + 1) != std::string_view::npos) {
            throw DataError("malformed merge on line " + std::to_string(line_no));
        }
        model.merges.push_back({std::string(line.substr(0, space)), std::string(line.substr(space + 1))});
    }
    if (line_no == 0) throw DataError("empty BPE model file");
    return model;
}

namespace {

using SymbolId = std::uint32_t;
using PairKey = std::uint64_t;

PairKey pair_key(SymbolId a, SymbolId b) { return (static_cast<PairKey>(a) << 32) | b; }
SymbolId left_of(PairKey k) { return static_cast<SymbolId>(k >> 32); }
SymbolId right_of(PairKey k) { return static_cast<SymbolId>(k & 0xffffffffu); }

std::vector<std::string> initial_symbols(std::string_view word) {
    auto symbols = text::code_points(word);
    if (!symbols.empty()) symbols.back() += end_of_word;
    return symbols;
}

class Trainer {
  public:
    Trainer(const std::map<std::string, std::size_t> &word_counts, std::size_t target)
        : target_(target), queue_(QueueOrder{this}) {
        for (const auto &[word, count] : word_counts) {
            if (count == 0 || word.empty()) continue;
            Word w;
            w.count = static_cast<std::int64_t>(count);
            for (const auto &s : initial_symbols(word)) w.symbols.push_back(intern(s));
            words_.push_back(std::move(w));
        }
        for (std::size_t i = 0; i < words_.size(); ++i) add_word(i);
        for (const auto &[key, count] : pair_counts_) {
            if (count > 0) queue_.insert(key);
        }
    }

    BpeModel run() {
        BpeModel model;
        model.target_vocab_size = target_;
        if (live_symbols_ > target_) {
            spdlog::warn("BPE: alphabet of {} symbols already exceeds the target size {}; no merges learned",
                         live_symbols_, target_);
        }
        while (live_symbols_ < target_ && !queue_.empty()) {
            const PairKey best = *queue_.begin();
            if (pair_counts_[best] < 2) break;
            model.merges.push_back({symbols_[left_of(best)], symbols_[right_of(best)]});
            apply(best);
        }
        for (SymbolId id = 0; id < symbols_.size(); ++id) {
            if (symbol_freq_[id] > 0) model.vocab.emplace(symbols_[id], static_cast<std::size_t>(symbol_freq_[id]));
        }
        return model;
    }

  private:
    struct Word {
        std::vector<SymbolId> symbols;
        std::int64_t count = 0;
    };

    struct QueueOrder {
        const Trainer *self;
        bool operator()(PairKey a, PairKey b) const {
            const auto ca = self->pair_counts_.at(a);
            const auto cb = self->pair_counts_.at(b);
            if (ca != cb) return ca > cb;
            const auto &al = self->symbols_[left_of(a)], &bl = self->symbols_[left_of(b)];
            if (al != bl) return al < bl;
            return self->symbols_[right_of(a)] < self->symbols_[right_of(b)];
        }
    };

    SymbolId intern(const std::string &s) {
        auto [it, inserted] = ids_.emplace(s, static_cast<SymbolId>(symbols_.size()));
        if (inserted) {
            symbols_.push_back(s);
            symbol_freq_.push_back(0);
        }
        return it->second;
    }

    void touch(PairKey key) {
        if (touched_.insert(key).second) {
            auto it = pair_counts_.find(key);
            if (it != pair_counts_.end() && it->second > 0) queue_.erase(key);
        }
    }

    void adjust_symbol(SymbolId id, std::int64_t delta) {
        const bool was_live = symbol_freq_[id] > 0;
        symbol_freq_[id] += delta;
        const bool is_live = symbol_freq_[id] > 0;
        if (was_live && !is_live) --live_symbols_;
        if (!was_live && is_live) ++live_symbols_;
    }

    void add_word(std::size_t idx) { update_word(idx, +1); }
    void remove_word(std::size_t idx) { update_word(idx, -1); }

    void update_word(std::size_t idx, std::int64_t sign) {
        const Word &w = words_[idx];
        const std::int64_t delta = sign * w.count;
        for (std::size_t i = 0; i < w.symbols.size(); ++i) {
            adjust_symbol(w.symbols[i], delta);
            if (i + 1 < w.symbols.size()) {
                const PairKey key = pair_key(w.symbols[i], w.symbols[i + 1]);
                if (tracking_) touch(key);
                pair_counts_[key] += delta;
                if (sign > 0) where_[key].insert(idx);
            }
        }
    }

    void apply(PairKey best) {
        const SymbolId left = left_of(best), right = right_of(best);
        const SymbolId merged = intern(symbols_[left] + symbols_[right]);
        const auto affected = where_[best]; // copy: add_word mutates the index
        tracking_ = true;
        touched_.clear();
        touch(best);
        for (std::size_t idx : affected) {
            Word &w = words_[idx];
            bool contains = false;
            for (std::size_t i = 0; i + 1 < w.symbols.size(); ++i) {
                if (w.symbols[i] == left && w.symbols[i + 1] == right) {
                    contains = true;
                    break;
                }
            }
            if (!contains) continue;
            remove_word(idx);
            std::vector<SymbolId> out;
            out.reserve(w.symbols.size());
            for (std::size_t i = 0; i < w.symbols.size(); ++i) {
                if (i + 1 < w.symbols.size() && w.symbols[i] == left && w.symbols[i + 1] == right) {
                    out.push_back(merged);
                    ++i;
                } else {
                    out.push_back(w.symbols[i]);
                }
            }
            w.symbols = std::move(out);
            add_word(idx);
        }
        tracking_ = false;
        for (PairKey key : touched_) {
            auto it = pair_counts_.find(key);
            if (it == pair_counts_.end()) continue;
            if (it->second > 0) {
                queue_.insert(key);
            } else {
                pair_counts_.erase(it);
                where_.erase(key);
            }
        }
    }

    std::size_t target_;
    std::vector<Word> words_;
    std::vector<std::string> symbols_;
    std::vector<std::int64_t> symbol_freq_;
    std::unordered_map<std::string, SymbolId> ids_;
    std::size_t live_symbols_ = 0;
    std::unordered_map<PairKey, std::int64_t> pair_counts_;
    std::unordered_map<PairKey, std::set<std::size_t>> where_;
    std::set<PairKey, QueueOrder> queue_;
    std::unordered_set<PairKey> touched_;
    bool tracking_ = false;
};

} // namespace

BpeModel train_bpe_from_counts(const std::map<std::string, std::size_t> &word_counts, std::size_t target_vocab_size) {
    if (target_vocab_size == 0) throw std::invalid_argument("BPE target vocabulary size must be > 0");
    bool any = false;
    for (const auto &[w, c] : word_counts) any = any || (c > 0 && !w.empty());
    if (!any) throw EmptyCorpus("BPE training data is empty");
    return Trainer(word_counts, target_vocab_size).run();
}

BpeModel train_bpe(std::span<const corpus::ParallelCorpus> corpora, std::size_t target_vocab_size) {
    std::map<std::string, std::size_t> counts;
    for (const auto &c : corpora) {
        for (const auto &p : c.pairs) {
            for (auto &tok : text::split_tokens(p.source)) ++counts[std::move(tok)];
            for (auto &tok : text::split_tokens(p.target)) ++counts[std::move(tok)];
        }
    }
    if (counts.empty()) throw EmptyCorpus("BPE training corpora contain no tokens");
    return train_bpe_from_counts(counts, target_vocab_size);
}

Encoder::Encoder(const BpeModel &model) {
    ranks_.reserve(model.merges.size());
    for (std::size_t i = 0; i < model.merges.size(); ++i) {
        ranks_.emplace(model.merges[i].left + " " + model.merges[i].right, i);
    }
}

std::vector<std::string> Encoder::segment_word(std::string_view word) const {
    auto symbols = initial_symbols(word);
    std::string probe;
    while (symbols.size() > 1) {
        std::size_t best_rank = std::numeric_limits<std::size_t>::max();
        for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
            probe = symbols[i];
            probe += ' ';
            probe += symbols[i + 1];
            auto it = ranks_.find(probe);
            if (it != ranks_.end() && it->second < best_rank) best_rank = it->second;
        }
        if (best_rank == std::numeric_limits<std::size_t>::max()) break;
        std::vector<std::string> out;
        out.reserve(symbols.size());
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (i + 1 < symbols.size()) {
                probe = symbols[i];
                probe += ' ';
                probe += symbols[i + 1];
                auto it = ranks_.find(probe);
                if (it != ranks_.end() && it->second == best_rank) {
                    out.push_back(symbols[i] + symbols[i + 1]);
                    ++i;
                    continue;
                }
            }
            out.push_back(std::move(symbols[i]));
        }
        symbols = std::move(out);
    }
    return symbols;
}

std::vector<std::string> Encoder::encode(std::string_view line) const {
    std::vector<std::string> out;
    for (const auto &word : text::split_tokens(line)) {
        auto pieces = segment_word(word);
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            std::string piece = std::move(pieces[i]);
            if (i + 1 < pieces.size()) {
                piece += continuation_marker;
            } else {
                piece.resize(piece.size() - end_of_word.size());
            }
            out.push_back(std::move(piece));
        }
    }
    return out;
}

std::vector<std::string> encode(const BpeModel &model, std::string_view line) { return Encoder(model).encode(line); }

std::string decode(std::span<const std::string> tokens) {
    std::string joined;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i > 0) joined += ' ';
        joined += tokens[i];
    }
    std::string out;
    out.reserve(joined.size());
    const std::string marker = std::string(continuation_marker) + " ";
    std::size_t pos = 0;
    while (pos < joined.size()) {
        const std::size_t hit = joined.find(marker, pos);
        if (hit == std::string::npos) {
            out.append(joined, pos, std::string::npos);
            break;
        }
        out.append(joined, pos, hit - pos);
        pos = hit + marker.size();
    }
    return out;
}

} // namespace cforge::bpe
