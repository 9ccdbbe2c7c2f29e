#include "memetrace/cli.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "memetrace/classify.hpp"
#include "memetrace/csv.hpp"
#include "memetrace/diffusion.hpp"
#include "memetrace/error.hpp"
#include "memetrace/features.hpp"
#include "memetrace/meme.hpp"
#include "memetrace/record.hpp"
#include "memetrace/simulate.hpp"

namespace memetrace::cli {

namespace {

using classify::Label;
using features::kFeatureCount;
using features::MemeFeatureVector;

std::string g9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

// Sink that is either a named file or stdout when no path was given.
class OutputSink {
public:
    explicit OutputSink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) fail(Errc::io_error, "cannot write " + path);
            path_ = path;
        }
    }

    std::ostream& stream() { return path_.empty() ? std::cout : file_; }

    void finish() {
        stream().flush();
        if (!stream()) fail(Errc::io_error, "write failure on " +
                                                (path_.empty() ? std::string("stdout") : path_));
    }

private:
    std::ofstream file_;
    std::string path_;
};

std::vector<ingest::TweetRecord> meme_posts(const std::vector<ingest::TweetRecord>& stream,
                                            const std::vector<meme::MemeRef>& refs) {
    std::vector<ingest::TweetRecord> posts;
    posts.reserve(refs.size());
    for (const auto& ref : refs) posts.push_back(stream[ref.stream_pos]);
    return posts;
}

std::string features_header() {
    std::vector<std::string> cols = {"meme_kind", "meme_key"};
    for (const auto& name : features::kFeatureNames) cols.push_back(name);
    return csv::join_row(cols);
}

struct FeatureRow {
    meme::MemeId id;
    MemeFeatureVector v;
};

std::vector<FeatureRow> read_features_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) fail(Errc::schema_violation, "empty features file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != features_header())
        fail(Errc::schema_violation, "unexpected features header in " + path);

    std::vector<FeatureRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = csv::split_row(line);
        if (fields.size() != 2 + kFeatureCount)
            fail(Errc::schema_violation, "bad feature row: " + line);
        FeatureRow row;
        row.id.kind = meme::kind_from_name(fields[0]);
        row.id.key = fields[1];
        for (std::size_t i = 0; i < kFeatureCount; ++i) {
            try {
                row.v[i] = std::stod(fields[2 + i]);
            } catch (const std::exception&) {
                fail(Errc::schema_violation, "non-numeric feature value: " + fields[2 + i]);
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::map<meme::MemeId, int> read_labels_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Errc::io_error, "cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) fail(Errc::schema_violation, "empty labels file " + path);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "meme_kind,meme_key,label")
        fail(Errc::schema_violation, "unexpected labels header in " + path);

    std::map<meme::MemeId, int> labels;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto fields = csv::split_row(line);
        if (fields.size() != 3) fail(Errc::schema_violation, "bad label row: " + line);
        meme::MemeId id{meme::kind_from_name(fields[0]), fields[1]};
        int value;
        if (fields[2] == "truthy") {
            value = 1;
        } else if (fields[2] == "organic") {
            value = 0;
        } else {
            fail(Errc::schema_violation, "label must be organic or truthy, got " + fields[2]);
        }
        labels[id] = value;
    }
    return labels;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

struct SimulateArgs {
    std::size_t organic = 0;
    std::string campaigns_path;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string labels_path;
};

int cmd_simulate(const SimulateArgs& args) {
    std::vector<sim::CampaignSpec> campaigns;
    if (!args.campaigns_path.empty()) campaigns = sim::load_campaign_specs(args.campaigns_path);

    sim::Dataset data = sim::gen_dataset(args.organic, campaigns, args.seed);

    std::ofstream out(args.out_path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot write " + args.out_path);
    for (const auto& r : data.records) out << ingest::serialize_record(r) << "\n";
    out.flush();
    if (!out) fail(Errc::io_error, "write failure on " + args.out_path);

    if (!args.labels_path.empty()) {
        std::ofstream labels(args.labels_path, std::ios::binary);
        if (!labels) fail(Errc::io_error, "cannot write " + args.labels_path);
        labels << "meme_kind,meme_key,label\n";
        for (const auto& [id, label] : data.labels)
            labels << csv::join_row({meme::kind_name(id.kind), id.key,
                                     classify::label_name(label)})
                   << "\n";
        labels.flush();
        if (!labels) fail(Errc::io_error, "write failure on " + args.labels_path);
    }

    std::cerr << "simulate: " << data.records.size() << " records, " << data.labels.size()
              << " labeled memes -> " << args.out_path << "\n";
    return kOk;
}

int cmd_extract(const std::string& in_path, const std::string& out_path) {
    auto loaded = ingest::load_stream(in_path);
    auto index = meme::build_index(loaded.records);

    struct Row {
        meme::MemeId id;
        std::size_t n;
        ingest::Timestamp first_ts;
        ingest::Timestamp last_ts;
    };
    std::vector<Row> rows;
    rows.reserve(index.entries().size());
    for (const auto& [id, refs] : index.entries())
        rows.push_back(Row{id, refs.size(), refs.front().created_at, refs.back().created_at});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        if (a.n != b.n) return a.n > b.n;
        if (a.id.key != b.id.key) return a.id.key < b.id.key;
        return a.id.kind < b.id.kind;
    });

    OutputSink sink(out_path);
    sink.stream() << "meme_kind,meme_key,n_tweets,first_ts,last_ts\n";
    for (const auto& row : rows)
        sink.stream() << csv::join_row({meme::kind_name(row.id.kind), row.id.key,
                                        std::to_string(row.n), std::to_string(row.first_ts),
                                        std::to_string(row.last_ts)})
                      << "\n";
    sink.finish();
    std::cerr << "extract: " << rows.size() << " memes from " << loaded.records.size()
              << " records (" << loaded.report.n_rejected << " lines rejected)\n";
    return kOk;
}

int cmd_graph(const std::string& in_path, const std::string& kind_name,
              const std::string& key, const std::string& dot_path) {
    meme::MemeId id;
    id.kind = meme::kind_from_name(kind_name);
    id.key = id.kind == meme::MemeKind::url ? meme::normalize_url(key) : key;

    auto loaded = ingest::load_stream(in_path);
    auto index = meme::build_index(loaded.records);
    const auto* refs = index.find(id);
    if (refs == nullptr)
        fail(Errc::invalid_params, "meme not found in stream: " + meme::to_string(id));

    auto net = diffusion::build_network(id, meme_posts(loaded.records, *refs));
    std::ofstream out(dot_path, std::ios::binary);
    if (!out) fail(Errc::io_error, "cannot write " + dot_path);
    out << diffusion::to_dot(net);
    out.flush();
    if (!out) fail(Errc::io_error, "write failure on " + dot_path);

    std::cerr << "graph: " << net.nodes.size() << " nodes, " << net.edges.size() << " edges, "
              << net.roots.size() << " roots -> " << dot_path << "\n";
    return kOk;
}

int cmd_features(const std::string& in_path, const std::string& out_path) {
    auto loaded = ingest::load_stream(in_path);
    auto index = meme::build_index(loaded.records);

    OutputSink sink(out_path);
    sink.stream() << features_header() << "\n";
    std::size_t n_rows = 0;
    for (const auto& [id, refs] : index.entries()) {
        if (!meme::MemeIndex::analyzable(refs)) continue;
        auto posts = meme_posts(loaded.records, refs);
        auto net = diffusion::build_network(id, posts);
        auto v = features::compute_features(net, posts);

        std::vector<std::string> fields = {meme::kind_name(id.kind), id.key};
        for (std::size_t i = 0; i < kFeatureCount; ++i) fields.push_back(g9(v[i]));
        sink.stream() << csv::join_row(fields) << "\n";
        ++n_rows;
    }
    sink.finish();
    std::cerr << "features: " << n_rows << " analyzable memes\n";
    return kOk;
}

struct TrainArgs {
    std::string features_path;
    std::string labels_path;
    std::string out_path;
    classify::TrainConfig cfg;
};

int cmd_train(const TrainArgs& args) {
    auto rows = read_features_csv(args.features_path);
    auto labels = read_labels_csv(args.labels_path);

    std::vector<classify::LabeledVector> data;
    for (const auto& row : rows) {
        auto it = labels.find(row.id);
        if (it == labels.end()) continue; // unlabeled memes are not training data
        data.push_back(classify::LabeledVector{row.v, it->second});
    }

    auto model = classify::train(data, args.cfg);
    classify::save_model(model, args.out_path);

    std::size_t n_truthy = 0;
    for (const auto& ex : data) n_truthy += ex.label;
    std::cerr << "train: " << data.size() << " examples (" << n_truthy << " truthy, "
              << data.size() - n_truthy << " organic) -> " << args.out_path << "\n";
    return kOk;
}

int cmd_detect(const std::string& features_path, const std::string& model_path,
               const std::string& out_path) {
    auto rows = read_features_csv(features_path);

    classify::ClassifierModel model;
    if (!model_path.empty()) {
        model = classify::load_model(model_path);
    } else {
        std::vector<MemeFeatureVector> vectors;
        vectors.reserve(rows.size());
        for (const auto& row : rows) vectors.push_back(row.v);
        model = classify::make_rule_model(features::zscore_fit(vectors));
    }

    std::vector<classify::Verdict> verdicts;
    verdicts.reserve(rows.size());
    for (const auto& row : rows) {
        auto scaled = features::zscore_apply(row.v, model.stats);
        double score = classify::predict(model, row.v);
        verdicts.push_back(classify::make_verdict(row.id, score, model, scaled));
    }
    std::sort(verdicts.begin(), verdicts.end(),
              [](const classify::Verdict& a, const classify::Verdict& b) {
                  if (a.score != b.score) return a.score > b.score;
                  return a.meme < b.meme;
              });

    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& v : verdicts) {
        nlohmann::ordered_json obj;
        obj["meme_kind"] = meme::kind_name(v.meme.kind);
        obj["meme_key"] = v.meme.key;
        obj["score"] = v.score;
        obj["label"] = classify::label_name(v.label);
        obj["contributions"] = v.contributions;
        doc.push_back(std::move(obj));
    }

    OutputSink sink(out_path);
    sink.stream() << doc.dump(2) << "\n";
    sink.finish();

    std::size_t n_truthy = 0;
    for (const auto& v : verdicts) n_truthy += v.label == Label::truthy ? 1 : 0;
    std::cerr << "detect: " << verdicts.size() << " memes scored, " << n_truthy
              << " flagged truthy\n";
    return kOk;
}

int exit_code_for(const Error& e) {
    return e.code() == Errc::internal ? kInternalError : kInputError;
}

} // namespace

int run(const std::vector<std::string>& argv) {
    CLI::App app{"meme diffusion analysis: simulate, extract, graph, score"};
    app.require_subcommand(1);

    SimulateArgs sim_args;
    auto* sc_sim = app.add_subcommand("simulate", "generate a labeled synthetic stream");
    sc_sim->add_option("--organic", sim_args.organic, "number of organic memes");
    sc_sim->add_option("--campaigns", sim_args.campaigns_path,
                       "JSON list of campaign specs (optional)");
    sc_sim->add_option("--seed", sim_args.seed, "global generator seed");
    sc_sim->add_option("--out", sim_args.out_path, "output JSONL stream")->required();
    sc_sim->add_option("--labels", sim_args.labels_path, "ground-truth labels CSV (optional)");

    std::string ex_in, ex_out;
    auto* sc_extract = app.add_subcommand("extract", "list memes found in a stream");
    sc_extract->add_option("--in", ex_in, "input JSONL stream")->required();
    sc_extract->add_option("--out", ex_out, "output CSV (default stdout)");

    std::string gr_in, gr_kind, gr_key, gr_dot;
    auto* sc_graph = app.add_subcommand("graph", "export one meme's diffusion network as DOT");
    sc_graph->add_option("--in", gr_in, "input JSONL stream")->required();
    sc_graph->add_option("--kind", gr_kind, "meme kind: hashtag|url|mention")->required();
    sc_graph->add_option("--key", gr_key, "meme key")->required();
    sc_graph->add_option("--dot", gr_dot, "output DOT path")->required();

    std::string ft_in, ft_out;
    auto* sc_features = app.add_subcommand("features", "compute per-meme delivery features");
    sc_features->add_option("--in", ft_in, "input JSONL stream")->required();
    sc_features->add_option("--out", ft_out, "output CSV (default stdout)");

    TrainArgs train_args;
    auto* sc_train = app.add_subcommand("train", "fit the logistic classifier");
    sc_train->add_option("--features", train_args.features_path, "features CSV")->required();
    sc_train->add_option("--labels", train_args.labels_path, "labels CSV")->required();
    sc_train->add_option("--out", train_args.out_path, "output model JSON")->required();
    sc_train->add_option("--lr", train_args.cfg.learning_rate, "learning rate")
        ->check(CLI::PositiveNumber);
    sc_train->add_option("--epochs", train_args.cfg.epochs, "training epochs")
        ->check(CLI::PositiveNumber);
    sc_train->add_option("--l2", train_args.cfg.l2_lambda, "L2 penalty")
        ->check(CLI::NonNegativeNumber);
    sc_train->add_option("--seed", train_args.cfg.seed, "weight init seed");

    std::string dt_features, dt_model, dt_out;
    auto* sc_detect = app.add_subcommand("detect", "score memes as truthy vs organic");
    sc_detect->add_option("--features", dt_features, "features CSV")->required();
    sc_detect->add_option("--model", dt_model,
                          "model JSON (omit to use the built-in rule detector)");
    sc_detect->add_option("--out", dt_out, "output verdicts JSON (default stdout)");

    std::vector<const char*> cargv;
    cargv.push_back("memetrace");
    for (const auto& a : argv) cargv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        app.exit(e);
        return kOk;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e);
        return kOk;
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsageError;
    }

    try {
        if (sc_sim->parsed()) return cmd_simulate(sim_args);
        if (sc_extract->parsed()) return cmd_extract(ex_in, ex_out);
        if (sc_graph->parsed()) return cmd_graph(gr_in, gr_kind, gr_key, gr_dot);
        if (sc_features->parsed()) return cmd_features(ft_in, ft_out);
        if (sc_train->parsed()) return cmd_train(train_args);
        if (sc_detect->parsed()) return cmd_detect(dt_features, dt_model, dt_out);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternalError;
    }
    return kUsageError;
}

} // namespace memetrace::cli
