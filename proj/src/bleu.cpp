#include "cforge/bleu.hpp"

#include "cforge/error.hpp"
#include "cforge/text.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>

namespace cforge::metrics {

std::string_view to_string(Smoothing s) { return s == Smoothing::none ? "none" : "add_k_exp"; }

Smoothing smoothing_from_string(std::string_view s) {
    if (s == "none") return Smoothing::none;
    if (s == "add_k_exp") return Smoothing::add_k_exp;
    throw std::invalid_argument("unknown smoothing '" + std::string(s) + "'");
}

std::string_view to_string(Normalizer n) { return n == Normalizer::whitespace ? "whitespace" : "punct-split"; }

Normalizer normalizer_from_string(std::string_view s) {
    if (s == "whitespace") return Normalizer::whitespace;
    if (s == "punct-split") return Normalizer::punct_split;
    throw std::invalid_argument("unknown BLEU normalizer '" + std::string(s) + "'");
}

namespace {

bool is_punct(std::string_view cp) {
    if (cp.size() == 1) {
        const char c = cp[0];
        return std::string_view(".,;:!?\"'()[]{}").find(c) != std::string_view::npos;
    }
    // typographic quotes, ellipsis, en and em dash
    for (std::string_view p : {"«", "»", "„", "“", "”", "‘", "’", "…", "–", "—"}) {
        if (cp == p) return true;
    }
    return false;
}

} // namespace

std::vector<std::string> bleu_tokenize(std::string_view line, Normalizer normalizer) {
    auto tokens = text::split_tokens(line);
    if (normalizer == Normalizer::whitespace) return tokens;
    std::vector<std::string> out;
    for (const auto &tok : tokens) {
        const auto cps = text::code_points(tok);
        std::size_t b = 0, e = cps.size();
        while (b < e && is_punct(cps[b])) ++b;
        while (e > b && is_punct(cps[e - 1])) --e;
        for (std::size_t i = 0; i < b; ++i) out.push_back(cps[i]);
        if (b < e) {
            std::string core;
            for (std::size_t i = b; i < e; ++i) core += cps[i];
            out.push_back(std::move(core));
        }
        for (std::size_t i = e; i < cps.size(); ++i) out.push_back(cps[i]);
    }
    return out;
}

double brevity_penalty(std::size_t hyp_len, std::size_t ref_len) {
    if (hyp_len > ref_len) return 1.0;
    if (hyp_len == 0) return 0.0;
    return std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(hyp_len));
}

namespace {

using NgramCounts = std::map<std::vector<std::string_view>, std::size_t>;

NgramCounts ngrams(const Segment &seg, std::size_t n) {
    NgramCounts counts;
    for (std::size_t i = 0; i + n <= seg.size(); ++i) {
        ++counts[std::vector<std::string_view>(seg.begin() + static_cast<std::ptrdiff_t>(i),
                                               seg.begin() + static_cast<std::ptrdiff_t>(i + n))];
    }
    return counts;
}

} // namespace

BleuReport corpus_bleu(std::span<const Segment> hypotheses, std::span<const Segment> references, Smoothing smoothing) {
    if (hypotheses.size() != references.size()) {
        throw LengthMismatch(fmt::format("{} hypotheses vs {} references", hypotheses.size(), references.size()));
    }
    if (hypotheses.empty()) throw std::invalid_argument("corpus_bleu needs at least one segment");

    BleuReport r;
    r.smoothing = smoothing;
    for (std::size_t s = 0; s < hypotheses.size(); ++s) {
        const auto &hyp = hypotheses[s];
        const auto &ref = references[s];
        r.hyp_len += hyp.size();
        r.ref_len += ref.size();
        for (std::size_t n = 1; n <= 4; ++n) {
            const auto hyp_counts = ngrams(hyp, n);
            const auto ref_counts = ngrams(ref, n);
            for (const auto &[gram, count] : hyp_counts) {
                r.totals[n - 1] += count;
                auto it = ref_counts.find(gram);
                if (it != ref_counts.end()) r.matches[n - 1] += std::min(count, it->second);
            }
        }
    }
    if (r.hyp_len == 0) throw EmptyHypothesisCorpus("all hypotheses are empty");

    r.brevity_penalty = brevity_penalty(r.hyp_len, r.ref_len);
    double k = 1.0;
    bool zero = false;
    double log_sum = 0.0;
    std::size_t orders = 0;
    for (std::size_t n = 0; n < 4; ++n) {
        if (r.totals[n] == 0) continue; // no n-grams of this order at all
        ++orders;
        if (r.matches[n] > 0) {
            r.precisions[n] = static_cast<double>(r.matches[n]) / static_cast<double>(r.totals[n]);
        } else if (smoothing == Smoothing::add_k_exp) {
            k *= 2.0;
            r.precisions[n] = 1.0 / (k * static_cast<double>(r.totals[n]));
        } else {
            zero = true;
        }
        if (!zero) log_sum += std::log(r.precisions[n]);
    }
    r.bleu = zero ? 0.0 : 100.0 * r.brevity_penalty * std::exp(log_sum / static_cast<double>(orders));
    return r;
}

BleuReport corpus_bleu_lines(std::span<const std::string> hypotheses, std::span<const std::string> references,
                             Normalizer normalizer, Smoothing smoothing) {
    std::vector<Segment> hyp, ref;
    hyp.reserve(hypotheses.size());
    ref.reserve(references.size());
    for (const auto &h : hypotheses) hyp.push_back(bleu_tokenize(h, normalizer));
    for (const auto &r : references) ref.push_back(bleu_tokenize(r, normalizer));
    auto report = corpus_bleu(hyp, ref, smoothing);
    report.normalizer = std::string(to_string(normalizer));
    return report;
}

nlohmann::ordered_json BleuReport::to_json() const {
    nlohmann::ordered_json j;
    j["bleu"] = bleu;
    j["precisions"] = precisions;
    j["matches"] = matches;
    j["totals"] = totals;
    j["brevity_penalty"] = brevity_penalty;
    j["hyp_len"] = hyp_len;
    j["ref_len"] = ref_len;
    j["smoothing"] = to_string(smoothing);
    j["normalizer"] = normalizer;
    return j;
}

std::string BleuReport::to_markdown() const {
    const std::string precision_text = fmt::format("{:.1f}/{:.1f}/{:.1f}/{:.1f}", 100 * precisions[0],
                                                   100 * precisions[1], 100 * precisions[2], 100 * precisions[3]);
    const std::string ratio = fmt::format("{}/{}", hyp_len, ref_len);
    const std::string score = fmt::format("{:.2f}", bleu);
    const std::string bp = fmt::format("{:.4f}", brevity_penalty);
    const auto w = [](std::string_view a, std::string_view b) { return std::max(a.size(), b.size()); };
    const std::size_t w0 = w("BLEU", score), w1 = w("Precisions", precision_text), w2 = w("BP", bp),
                      w3 = w("Hyp/Ref", ratio), w4 = w("Normalizer", normalizer);
    std::string out;
    out += fmt::format("| {:>{}} | {:>{}} | {:>{}} | {:>{}} | {:<{}} |\n", "BLEU", w0, "Precisions", w1, "BP", w2,
                       "Hyp/Ref", w3, "Normalizer", w4);
    out += fmt::format("|{}:|{}:|{}:|{}:|:{}|\n", std::string(w0 + 1, '-'), std::string(w1 + 1, '-'),
                       std::string(w2 + 1, '-'), std::string(w3 + 1, '-'), std::string(w4 + 1, '-'));
    out += fmt::format("| {:>{}} | {:>{}} | {:>{}} | {:>{}} | {:<{}} |\n", score, w0, precision_text, w1, bp, w2,
                       ratio, w3, normalizer, w4);
    return out;
}

} // namespace cforge::metrics
