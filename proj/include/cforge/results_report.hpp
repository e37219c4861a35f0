#pragma once

// results.md / results.json for experiment runs: Nat/Synth/Aug test-score
// rows, the models x evaluation-sets matrix and per-corpus TTR.

#include "cforge/diversity.hpp"
#include "cforge/eval_matrix.hpp"

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace cforge::metrics {

struct TtrRow {
    std::string corpus;
    std::string side; // "source" / "target"
    std::size_t type_count = 0;
    std::size_t token_count = 0;
    double ttr = 0.0;
};

struct ResultsDocument {
    std::vector<std::vector<LabeledScore>> test_tables; // one row table per language pair
    EvalMatrix matrix;
    std::vector<TtrRow> ttr;
    nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const;
    static ResultsDocument from_json(const nlohmann::json &j);

    std::string to_markdown() const;
};

// Test-score tables separated by blank lines.
std::string render_test_tables(const std::vector<std::vector<LabeledScore>> &tables);

std::string render_ttr_table(const std::vector<TtrRow> &rows);

// "corpus,side,type_count,token_count,ttr"
std::string ttr_csv(const std::vector<TtrRow> &rows);

EvalMatrix matrix_from_json(const nlohmann::json &j);

} // namespace cforge::metrics
