#include "cforge/results_report.hpp"

#include "cforge/error.hpp"

#include <fmt/format.h>

#include <algorithm>

namespace cforge::metrics {

std::string render_test_tables(const std::vector<std::vector<LabeledScore>> &tables) {
    std::string out;
    for (std::size_t i = 0; i < tables.size(); ++i) {
        if (i > 0) out += "\n";
        out += render_score_row(tables[i]);
    }
    return out;
}

std::string render_ttr_table(const std::vector<TtrRow> &rows) {
    const std::vector<std::string> headers{"Corpus", "Side", "Types", "Tokens", "TTR"};
    std::vector<std::vector<std::string>> body;
    for (const auto &r : rows) {
        body.push_back({r.corpus, r.side, std::to_string(r.type_count), std::to_string(r.token_count),
                        fmt::format("{:.4f}", r.ttr)});
    }
    std::vector<std::size_t> w(headers.size());
    for (std::size_t c = 0; c < headers.size(); ++c) {
        w[c] = headers[c].size();
        for (const auto &b : body) w[c] = std::max(w[c], b[c].size());
    }
    auto line = [&](const std::vector<std::string> &cells) {
        std::string s = "|";
        for (std::size_t c = 0; c < cells.size(); ++c) {
            s += c < 2 ? fmt::format(" {:<{}} |", cells[c], w[c]) : fmt::format(" {:>{}} |", cells[c], w[c]);
        }
        return s + "\n";
    };
    std::string out = line(headers) + "|";
    for (std::size_t c = 0; c < w.size(); ++c) {
        out += c < 2 ? ":" + std::string(w[c] + 1, '-') + "|" : std::string(w[c] + 1, '-') + ":|";
    }
    out += "\n";
    for (const auto &b : body) out += line(b);
    return out;
}

std::string ttr_csv(const std::vector<TtrRow> &rows) {
    std::string out = "corpus,side,type_count,token_count,ttr\n";
    for (const auto &r : rows) {
        out += fmt::format("{},{},{},{},{:.6f}\n", csv_field(r.corpus), r.side, r.type_count, r.token_count, r.ttr);
    }
    return out;
}

EvalMatrix matrix_from_json(const nlohmann::json &j) {
    try {
        EvalMatrix m(j.at("rows").get<std::vector<std::string>>(), j.at("columns").get<std::vector<std::string>>());
        for (const auto &cell : j.at("cells")) {
            const auto row = cell.at("model").get<std::string>();
            const auto col = cell.at("eval_set").get<std::string>();
            if (cell.contains("bleu") && cell["bleu"].is_number()) {
                m.set(row, col, cell["bleu"].get<double>());
            } else {
                m.set_failure(row, col, cell.value("error", std::string("not evaluated")));
            }
        }
        return m;
    } catch (const std::exception &e) {
        throw DataError(std::string("malformed evaluation matrix: ") + e.what());
    }
}

nlohmann::ordered_json ResultsDocument::to_json() const {
    nlohmann::ordered_json j;
    j["metadata"] = metadata;
    j["test_scores"] = nlohmann::ordered_json::array();
    for (const auto &table : test_tables) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto &s : table) arr.push_back({{"model", s.label}, {"bleu", s.score}});
        j["test_scores"].push_back(std::move(arr));
    }
    j["matrix"] = matrix.to_json();
    j["ttr"] = nlohmann::ordered_json::array();
    for (const auto &r : ttr) {
        j["ttr"].push_back({{"corpus", r.corpus},
                            {"side", r.side},
                            {"type_count", r.type_count},
                            {"token_count", r.token_count},
                            {"ttr", r.ttr}});
    }
    return j;
}

ResultsDocument ResultsDocument::from_json(const nlohmann::json &j) {
    ResultsDocument doc;
    try {
        if (j.contains("metadata")) doc.metadata = j["metadata"];
        for (const auto &table : j.at("test_scores")) {
            std::vector<LabeledScore> row;
            for (const auto &s : table) row.push_back({s.at("model").get<std::string>(), s.at("bleu").get<double>()});
            doc.test_tables.push_back(std::move(row));
        }
        doc.matrix = matrix_from_json(j.at("matrix"));
        if (j.contains("ttr")) {
            for (const auto &r : j["ttr"]) {
                doc.ttr.push_back({r.at("corpus").get<std::string>(), r.at("side").get<std::string>(),
                                   r.at("type_count").get<std::size_t>(), r.at("token_count").get<std::size_t>(),
                                   r.at("ttr").get<double>()});
            }
        }
    } catch (const DataError &) {
        throw;
    } catch (const std::exception &e) {
        throw DataError(std::string("malformed results document: ") + e.what());
    }
    return doc;
}

std::string ResultsDocument::to_markdown() const {
    std::string out = "# Results\n\n## Test BLEU\n\n";
    out += render_test_tables(test_tables);
    out += "\n## Cross-evaluation BLEU\n\n";
    out += matrix.to_markdown();
    if (!ttr.empty()) {
        out += "\n## Lexical diversity\n\n";
        out += render_ttr_table(ttr);
    }
    return out;
}

} // namespace cforge::metrics
