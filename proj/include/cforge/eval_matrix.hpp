#pragma once

#include "cforge/bleu.hpp"
#include "cforge/corpus.hpp"

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace cforge::metrics {

// Models x evaluation sets. A cell exists only if that pairing was evaluated
// successfully; failed evaluations keep their reason instead.
class EvalMatrix {
  public:
    EvalMatrix() = default;
    EvalMatrix(std::vector<std::string> rows, std::vector<std::string> columns);

    const std::vector<std::string> &rows() const { return rows_; }
    const std::vector<std::string> &columns() const { return columns_; }

    void set(std::string_view row, std::string_view column, double score, std::optional<BleuReport> report = {});
    void set_failure(std::string_view row, std::string_view column, std::string reason);

    std::optional<double> score(std::string_view row, std::string_view column) const;
    const BleuReport *report(std::string_view row, std::string_view column) const;
    std::optional<std::string> failure(std::string_view row, std::string_view column) const;
    std::size_t cell_count() const { return cells_.size(); }

    nlohmann::ordered_json to_json() const;

    // Aligned Markdown, one decimal, "-" for absent cells.
    std::string to_markdown(std::string_view corner = "Model") const;

  private:
    struct Cell {
        double score;
        std::optional<BleuReport> report;
    };
    using Key = std::pair<std::size_t, std::size_t>;

    Key key(std::string_view row, std::string_view column) const;

    std::vector<std::string> rows_;
    std::vector<std::string> columns_;
    std::map<Key, Cell> cells_;
    std::map<Key, std::string> failures_;
};

struct LabeledScore {
    std::string label;
    double score;
};

// One header row of labels and one row of scores, e.g. Synth-de | Nat-de | Aug-de.
std::string render_score_row(std::span<const LabeledScore> scores);

using TranslateFn = std::function<std::vector<std::string>(const std::vector<std::string> &)>;

struct LabeledTranslator {
    std::string label;
    TranslateFn translate;
};

struct LabeledCorpus {
    std::string label;
    corpus::ParallelCorpus corpus;
};

EvalMatrix cross_evaluate(std::span<const LabeledTranslator> models, std::span<const LabeledCorpus> eval_sets,
                          Normalizer normalizer = Normalizer::whitespace, Smoothing smoothing = Smoothing::none);

} // namespace cforge::metrics
