#include "memetrace/classify.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

#include "memetrace/error.hpp"
#include "memetrace/rng.hpp"

namespace memetrace::classify {

namespace {
constexpr double kProbClamp = 1e-12;

double clamp_prob(double p) {
    if (p < kProbClamp) return kProbClamp;
    if (p > 1.0 - kProbClamp) return 1.0 - kProbClamp;
    return p;
}
} // namespace

const char* label_name(Label l) { return l == Label::truthy ? "truthy" : "organic"; }

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double predict(const ClassifierModel& m, const MemeFeatureVector& v) {
    const auto scaled = features::zscore_apply(v, m.stats);
    double z = m.bias;
    for (std::size_t i = 0; i < kFeatureCount; ++i) z += m.weights[i] * scaled[i];
    return sigmoid(z);
}

LossGrad loss_and_grad(const ClassifierModel& m, const std::vector<LabeledVector>& data,
                       double l2_lambda) {
    if (data.empty()) fail(Errc::empty_dataset, "loss over empty dataset");

    LossGrad out;
    const double n = static_cast<double>(data.size());
    for (const auto& ex : data) {
        const auto x = features::zscore_apply(ex.v, m.stats);
        double z = m.bias;
        for (std::size_t i = 0; i < kFeatureCount; ++i) z += m.weights[i] * x[i];
        const double p = sigmoid(z);
        const double pc = clamp_prob(p);
        const double y = static_cast<double>(ex.label);
        out.loss += -(y * std::log(pc) + (1.0 - y) * std::log(1.0 - pc));
        const double residual = p - y;
        for (std::size_t i = 0; i < kFeatureCount; ++i) out.grad_w[i] += residual * x[i];
        out.grad_b += residual;
    }
    out.loss /= n;
    out.grad_b /= n;
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        out.grad_w[i] /= n;
        out.loss += 0.5 * l2_lambda * m.weights[i] * m.weights[i];
        out.grad_w[i] += l2_lambda * m.weights[i];
    }
    return out;
}

ClassifierModel train(const std::vector<LabeledVector>& data, const TrainConfig& cfg) {
    if (data.size() < 2) fail(Errc::insufficient_data, "need at least 2 labeled examples");
    bool any_pos = false;
    bool any_neg = false;
    for (const auto& ex : data) (ex.label ? any_pos : any_neg) = true;
    if (!any_pos || !any_neg) fail(Errc::degenerate_labels, "training data has a single class");
    if (cfg.learning_rate <= 0.0 || cfg.epochs == 0 || cfg.l2_lambda < 0.0)
        fail(Errc::invalid_params, "bad train config");

    std::vector<MemeFeatureVector> vectors;
    vectors.reserve(data.size());
    for (const auto& ex : data) vectors.push_back(ex.v);

    ClassifierModel m;
    m.stats = features::zscore_fit(vectors);
    Rng rng(cfg.seed);
    for (auto& w : m.weights) w = rng.uniform(-0.01, 0.01);
    m.bias = 0.0;

    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        const LossGrad lg = loss_and_grad(m, data, cfg.l2_lambda);
        for (std::size_t i = 0; i < kFeatureCount; ++i)
            m.weights[i] -= cfg.learning_rate * lg.grad_w[i];
        m.bias -= cfg.learning_rate * lg.grad_b;
    }
    return m;
}

const ClassifierModel& rule_model_template() {
    static const ClassifierModel m = [] {
        ClassifierModel r;
        r.weights[features::kDupTextFrac] = 2.0;
        r.weights[features::kNewAccountFrac] = 2.0;
        r.weights[features::kMentionTargetFrac] = 1.5;
        r.weights[features::kBurstiness] = 1.0;
        r.weights[features::kMaxOutdegFrac] = 1.0;
        r.weights[features::kLogPeakRate] = 1.0;
        r.weights[features::kGiniOutdeg] = 0.5;
        r.weights[features::kRootsFrac] = -0.5;
        r.bias = -1.0;
        r.threshold = 0.5;
        return r;
    }();
    return m;
}

ClassifierModel make_rule_model(const FeatureStats& population_stats) {
    ClassifierModel m = rule_model_template();
    m.stats = population_stats;
    return m;
}

double rule_score(const MemeFeatureVector& v, const FeatureStats& population_stats) {
    return predict(make_rule_model(population_stats), v);
}

Verdict make_verdict(const meme::MemeId& id, double score, const ClassifierModel& m,
                     const std::array<double, kFeatureCount>& scaled) {
    Verdict v;
    v.meme = id;
    v.score = score;
    v.label = score >= m.threshold ? Label::truthy : Label::organic;
    for (std::size_t i = 0; i < kFeatureCount; ++i) v.contributions[i] = m.weights[i] * scaled[i];
    return v;
}

void save_model(const ClassifierModel& m, const std::string& path) {
    nlohmann::ordered_json obj;
    obj["weights"] = m.weights;
    obj["bias"] = m.bias;
    obj["threshold"] = m.threshold;
    obj["stats_mean"] = m.stats.mean;
    obj["stats_std"] = m.stats.stddev;
    obj["feature_names"] = features::kFeatureNames;

    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot write " + path);
    out << obj.dump(2) << "\n";
    if (!out) fail(Errc::io_error, "write failure on " + path);
}

namespace {

template <std::size_t N>
std::array<double, N> read_array(const nlohmann::json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || !it->is_array() || it->size() != N)
        fail(Errc::schema_violation, std::string("model field ") + key + " must be a list of " +
                                         std::to_string(N) + " numbers");
    std::array<double, N> out{};
    for (std::size_t i = 0; i < N; ++i) {
        if (!(*it)[i].is_number())
            fail(Errc::schema_violation, std::string("model field ") + key + " must be numeric");
        out[i] = (*it)[i].get<double>();
    }
    return out;
}

} // namespace

ClassifierModel load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open " + path);
    nlohmann::json obj;
    try {
        in >> obj;
    } catch (const nlohmann::json::parse_error&) {
        fail(Errc::schema_violation, "model file is not valid JSON: " + path);
    }
    if (!obj.is_object()) fail(Errc::schema_violation, "model file must hold one object");

    ClassifierModel m;
    m.weights = read_array<kFeatureCount>(obj, "weights");
    m.stats.mean = read_array<kFeatureCount>(obj, "stats_mean");
    m.stats.stddev = read_array<kFeatureCount>(obj, "stats_std");
    if (!obj.contains("bias") || !obj["bias"].is_number())
        fail(Errc::schema_violation, "model field bias must be numeric");
    m.bias = obj["bias"].get<double>();
    if (!obj.contains("threshold") || !obj["threshold"].is_number())
        fail(Errc::schema_violation, "model field threshold must be numeric");
    m.threshold = obj["threshold"].get<double>();
    if (!(m.threshold > 0.0 && m.threshold < 1.0))
        fail(Errc::schema_violation, "threshold must lie in (0,1)");

    auto names_it = obj.find("feature_names");
    if (names_it == obj.end() || !names_it->is_array() || names_it->size() != kFeatureCount)
        fail(Errc::schema_violation, "model field feature_names must list all features");
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
        if (!(*names_it)[i].is_string() ||
            (*names_it)[i].get<std::string>() != features::kFeatureNames[i])
            fail(Errc::schema_violation, "feature_names mismatch at index " + std::to_string(i) +
                                             " (expected " + features::kFeatureNames[i] + ")");
    }
    for (double sd : m.stats.stddev)
        if (sd <= 0.0) fail(Errc::schema_violation, "stats_std entries must be positive");
    return m;
}

} // namespace memetrace::classify
