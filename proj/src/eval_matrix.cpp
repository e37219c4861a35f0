#include "cforge/eval_matrix.hpp"

#include "cforge/error.hpp"

#include <fmt/format.h>
#include <spdlog/spdlog.h>

#include <algorithm>

namespace cforge::metrics {

EvalMatrix::EvalMatrix(std::vector<std::string> rows, std::vector<std::string> columns)
    : rows_(std::move(rows)), columns_(std::move(columns)) {
    for (const auto *labels : {&rows_, &columns_}) {
        auto sorted = *labels;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw std::invalid_argument("duplicate matrix label");
        }
    }
}

EvalMatrix::Key EvalMatrix::key(std::string_view row, std::string_view column) const {
    auto r = std::find(rows_.begin(), rows_.end(), row);
    auto c = std::find(columns_.begin(), columns_.end(), column);
    if (r == rows_.end()) throw std::out_of_range("unknown matrix row '" + std::string(row) + "'");
    if (c == columns_.end()) throw std::out_of_range("unknown matrix column '" + std::string(column) + "'");
    return {static_cast<std::size_t>(r - rows_.begin()), static_cast<std::size_t>(c - columns_.begin())};
}

void EvalMatrix::set(std::string_view row, std::string_view column, double score, std::optional<BleuReport> report) {
    const Key k = key(row, column);
    failures_.erase(k);
    cells_[k] = Cell{score, std::move(report)};
}

void EvalMatrix::set_failure(std::string_view row, std::string_view column, std::string reason) {
    const Key k = key(row, column);
    cells_.erase(k);
    failures_[k] = std::move(reason);
}

std::optional<double> EvalMatrix::score(std::string_view row, std::string_view column) const {
    auto it = cells_.find(key(row, column));
    if (it == cells_.end()) return std::nullopt;
    return it->second.score;
}

const BleuReport *EvalMatrix::report(std::string_view row, std::string_view column) const {
    auto it = cells_.find(key(row, column));
    if (it == cells_.end() || !it->second.report) return nullptr;
    return &*it->second.report;
}

std::optional<std::string> EvalMatrix::failure(std::string_view row, std::string_view column) const {
    auto it = failures_.find(key(row, column));
    if (it == failures_.end()) return std::nullopt;
    return it->second;
}

nlohmann::ordered_json EvalMatrix::to_json() const {
    nlohmann::ordered_json j;
    j["rows"] = rows_;
    j["columns"] = columns_;
    j["cells"] = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        for (std::size_t c = 0; c < columns_.size(); ++c) {
            nlohmann::ordered_json cell{{"model", rows_[r]}, {"eval_set", columns_[c]}};
            if (auto it = cells_.find({r, c}); it != cells_.end()) {
                cell["bleu"] = it->second.score;
                if (it->second.report) cell["report"] = it->second.report->to_json();
            } else if (auto f = failures_.find({r, c}); f != failures_.end()) {
                cell["bleu"] = nullptr;
                cell["error"] = f->second;
            } else {
                continue;
            }
            j["cells"].push_back(std::move(cell));
        }
    }
    return j;
}

namespace {

std::string format_score(double score) { return fmt::format("{:.1f}", score); }

std::string rule(std::size_t width, bool right) {
    return right ? std::string(width + 1, '-') + ":" : ":" + std::string(width + 1, '-');
}

} // namespace

std::string EvalMatrix::to_markdown(std::string_view corner) const {
    std::vector<std::vector<std::string>> body(rows_.size(), std::vector<std::string>(columns_.size(), "-"));
    for (const auto &[k, cell] : cells_) body[k.first][k.second] = format_score(cell.score);

    std::size_t label_width = corner.size();
    for (const auto &r : rows_) label_width = std::max(label_width, r.size());
    std::vector<std::size_t> widths(columns_.size());
    for (std::size_t c = 0; c < columns_.size(); ++c) {
        widths[c] = columns_[c].size();
        for (const auto &row : body) widths[c] = std::max(widths[c], row[c].size());
    }

    std::string out = fmt::format("| {:<{}} |", corner, label_width);
    for (std::size_t c = 0; c < columns_.size(); ++c) out += fmt::format(" {:>{}} |", columns_[c], widths[c]);
    out += "\n|" + rule(label_width, false) + "|";
    for (auto w : widths) out += rule(w, true) + "|";
    out += "\n";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        out += fmt::format("| {:<{}} |", rows_[r], label_width);
        for (std::size_t c = 0; c < columns_.size(); ++c) out += fmt::format(" {:>{}} |", body[r][c], widths[c]);
        out += "\n";
    }
    return out;
}

std::string render_score_row(std::span<const LabeledScore> scores) {
    std::string header = "|", sep = "|", values = "|";
    for (const auto &s : scores) {
        const std::string v = format_score(s.score);
        const std::size_t w = std::max(s.label.size(), v.size());
        header += fmt::format(" {:>{}} |", s.label, w);
        sep += rule(w, true) + "|";
        values += fmt::format(" {:>{}} |", v, w);
    }
    return header + "\n" + sep + "\n" + values + "\n";
}

EvalMatrix cross_evaluate(std::span<const LabeledTranslator> models, std::span<const LabeledCorpus> eval_sets,
                          Normalizer normalizer, Smoothing smoothing) {
    std::vector<std::string> rows, columns;
    for (const auto &m : models) rows.push_back(m.label);
    for (const auto &e : eval_sets) columns.push_back(e.label);
    EvalMatrix matrix(rows, columns);

    for (const auto &model : models) {
        for (const auto &set : eval_sets) {
            try {
                const auto hypotheses = model.translate(set.corpus.sources());
                const auto references = set.corpus.targets();
                auto report = corpus_bleu_lines(hypotheses, references, normalizer, smoothing);
                matrix.set(model.label, set.label, report.bleu, report);
            } catch (const std::exception &e) {
                spdlog::warn("evaluation of {} on {} failed: {}", model.label, set.label, e.what());
                matrix.set_failure(model.label, set.label, e.what());
            }
        }
    }
    return matrix;
}

} // namespace cforge::metrics
