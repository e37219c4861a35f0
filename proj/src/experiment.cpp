#include "cforge/experiment.hpp"

#include <future>

namespace cforge::baseline {

std::vector<metrics::LabeledScore> ExperimentResult::test_scores() const {
    std::vector<metrics::LabeledScore> scores;
    for (const auto &row : matrix.rows()) {
        if (auto s = matrix.score(row, test_label)) scores.push_back({row, *s});
    }
    return scores;
}

ExperimentResult run_experiment(const ExperimentInputs &in) {
    std::vector<metrics::LabeledCorpus> eval_sets;
    if (in.syn_valid) eval_sets.push_back({std::string(synth_val_label), *in.syn_valid});
    eval_sets.push_back({std::string(nat_val_label), in.nat_valid});
    eval_sets.push_back({std::string(test_label), in.test});

    const corpus::ParallelCorpus aug_train = corpus::concat(in.nat_train, in.syn_train);
    for (const auto &set : eval_sets) {
        corpus::require_disjoint(aug_train, set.corpus, set.label);
    }

    const std::string synth = "Synth-" + in.label, nat = "Nat-" + in.label, aug = "Aug-" + in.label;
    auto train = [&](const corpus::ParallelCorpus &c) {
        return std::async(std::launch::async, [&c, n = in.iterations] { return train_em(c, n); });
    };
    auto synth_model = train(in.syn_train);
    auto nat_model = train(in.nat_train);
    auto aug_model = train(aug_train);

    ExperimentResult result;
    result.models.emplace(synth, synth_model.get());
    result.models.emplace(nat, nat_model.get());
    result.models.emplace(aug, aug_model.get());

    std::vector<metrics::LabeledTranslator> translators;
    for (const auto &label : {synth, nat, aug}) {
        const LexiconModel *model = &result.models.at(label);
        translators.push_back({label, [model](const std::vector<std::string> &lines) { return model->translate(lines); }});
    }
    result.matrix = metrics::cross_evaluate(translators, eval_sets, in.normalizer, in.smoothing);
    return result;
}

} // namespace cforge::baseline
