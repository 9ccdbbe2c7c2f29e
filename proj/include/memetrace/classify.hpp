#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "memetrace/features.hpp"
#include "memetrace/meme.hpp"

namespace memetrace::classify {

using features::FeatureStats;
using features::kFeatureCount;
using features::MemeFeatureVector;

struct ClassifierModel {
    std::array<double, kFeatureCount> weights{};
    double bias = 0.0;
    FeatureStats stats;     // scaling fitted at train time
    double threshold = 0.5; // truthy iff score >= threshold
};

enum class Label { organic, truthy };

const char* label_name(Label l);

struct Verdict {
    meme::MemeId meme;
    double score = 0.0;
    Label label = Label::organic;
    // weight_i * scaled_feature_i; contributions + bias = logit(score)
    std::array<double, kFeatureCount> contributions{};
};

struct TrainConfig {
    double learning_rate = 0.1;
    std::size_t epochs = 500;
    double l2_lambda = 1e-3;
    std::uint64_t seed = 0;
};

struct LabeledVector {
    MemeFeatureVector v;
    int label = 0; // 1 = truthy, 0 = organic
};

// Numerically stable logistic; no overflow for any finite x.
double sigmoid(double x);

double predict(const ClassifierModel& m, const MemeFeatureVector& v);

struct LossGrad {
    double loss = 0.0;
    std::array<double, kFeatureCount> grad_w{};
    double grad_b = 0.0;
};

// Mean cross-entropy over data plus (lambda/2)||w||^2, with probabilities
// clamped to [1e-12, 1 - 1e-12] inside the logs. Gradients are the exact
// analytic derivatives. Throws Error(empty_dataset) on empty data.
LossGrad loss_and_grad(const ClassifierModel& m, const std::vector<LabeledVector>& data,
                       double l2_lambda);

// Full-batch gradient descent: stats fitted on the training vectors, weights
// initialized from seeded uniform(-0.01, 0.01), bias 0. Deterministic given
// cfg.seed. Throws Error(insufficient_data) for fewer than 2 examples and
// Error(degenerate_labels) when only one class is present.
ClassifierModel train(const std::vector<LabeledVector>& data, const TrainConfig& cfg);

// Hand-set detector weights usable with no training data (bias -1.0, heavy
// positive weight on duplication, account freshness and outward seeding).
const ClassifierModel& rule_model_template();

// Rule model bound to the population under analysis.
ClassifierModel make_rule_model(const FeatureStats& population_stats);

// Fixed-signature score of a z-scored vector; equals
// predict(make_rule_model(stats), v).
double rule_score(const MemeFeatureVector& v, const FeatureStats& population_stats);

// Labels per the model threshold (score == threshold classifies truthy) and
// records per-feature contributions for the given scaled vector.
Verdict make_verdict(const meme::MemeId& id, double score, const ClassifierModel& m,
                     const std::array<double, kFeatureCount>& scaled);

// Model file round-trip. Files carry the canonical feature_names list and
// load_model rejects any mismatch. Throws Error(io_error) /
// Error(schema_violation).
void save_model(const ClassifierModel& m, const std::string& path);
ClassifierModel load_model(const std::string& path);

} // namespace memetrace::classify
