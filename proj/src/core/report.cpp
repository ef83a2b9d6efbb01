#include "report.hpp"

#include <json.hpp>

#include "error.hpp"
#include "util.hpp"

namespace radtrim {

namespace {

using nlohmann::json;

json vector_json(const Eigen::VectorXd& v) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
    return arr;
}

json matrix_json(const Eigen::MatrixXd& m) {
    json arr = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        arr.push_back(std::move(row));
    }
    return arr;
}

[[noreturn]] void bad_field(const std::string& path, const std::string& why) {
    throw_parse("config field '" + path + "': " + why);
}

double need_number(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) bad_field(path + key, "missing");
    if (!obj[key].is_number()) bad_field(path + key, "must be a number");
    return obj[key].get<double>();
}

double opt_number(const json& obj, const std::string& path, const char* key,
                  double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) bad_field(path + key, "must be a number");
    return obj[key].get<double>();
}

EstimatorKind kind_from_string(const std::string& s, const std::string& path) {
    if (s == "mean") return EstimatorKind::mean;
    if (s == "median") return EstimatorKind::median;
    if (s == "hard") return EstimatorKind::hard_trim;
    if (s == "soft") return EstimatorKind::soft_trim;
    if (s == "sample_pc") return EstimatorKind::sample_pc;
    if (s == "spherical_pc") return EstimatorKind::spherical_pc;
    if (s == "hard_pc") return EstimatorKind::hard_pc;
    if (s == "soft_pc") return EstimatorKind::soft_pc;
    bad_field(path, "unknown estimator kind '" + s + "'");
}

const char* kind_to_string(EstimatorKind k) {
    switch (k) {
        case EstimatorKind::mean: return "mean";
        case EstimatorKind::median: return "median";
        case EstimatorKind::hard_trim: return "hard";
        case EstimatorKind::soft_trim: return "soft";
        case EstimatorKind::sample_pc: return "sample_pc";
        case EstimatorKind::spherical_pc: return "spherical_pc";
        case EstimatorKind::hard_pc: return "hard_pc";
        case EstimatorKind::soft_pc: return "soft_pc";
    }
    return "mean";
}

}  // namespace

std::string sim_report_csv(const SimReport& report) {
    std::string out = "estimator,model,epsilon,rmse,reps,failures,seed\n";
    for (const SimRow& row : report.rows) {
        out += row.estimator;
        out += ",";
        out += std::to_string(row.model);
        out += ",";
        out += format_double(row.epsilon);
        out += ",";
        out += format_double(row.rmse);
        out += ",";
        out += std::to_string(row.reps_used);
        out += ",";
        out += std::to_string(row.failures);
        out += ",";
        out += std::to_string(report.seed);
        out += "\n";
    }
    return out;
}

std::string sim_report_json(const SimReport& report) {
    json rows = json::array();
    for (const SimRow& row : report.rows) {
        json r;
        r["estimator"] = row.estimator;
        r["model"] = row.model;
        r["epsilon"] = row.epsilon;
        r["rmse"] = row.rmse;
        r["reps"] = row.reps_used;
        r["failures"] = row.failures;
        rows.push_back(std::move(r));
    }
    json doc;
    doc["schema"] = 1;
    doc["seed"] = report.seed;
    doc["config_hash"] = report.config_hash;
    doc["replications"] = report.replications;
    doc["rows"] = std::move(rows);
    return doc.dump(2) + "\n";
}

SimConfig parse_sim_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw_parse(std::string("invalid config JSON: ") + e.what());
    }
    if (!doc.is_object()) throw_parse("config must be a JSON object");

    SimConfig cfg;
    const double model_id = need_number(doc, "", "model");
    if (model_id != 1.0 && model_id != 2.0) bad_field("model", "must be 1 or 2");
    cfg.model = SimModel::by_id(static_cast<int>(model_id));

    cfg.n = static_cast<std::size_t>(opt_number(doc, "", "n", 100.0));
    cfg.grid_points = static_cast<std::size_t>(opt_number(doc, "", "grid_points", 50.0));
    cfg.replications =
        static_cast<std::size_t>(opt_number(doc, "", "replications", 500.0));

    if (!doc.contains("seed")) bad_field("seed", "missing");
    if (!doc["seed"].is_number_integer() && !doc["seed"].is_number_unsigned())
        bad_field("seed", "must be an integer");
    cfg.seed = doc["seed"].get<std::uint64_t>();

    if (!doc.contains("epsilons") || !doc["epsilons"].is_array() ||
        doc["epsilons"].empty())
        bad_field("epsilons", "must be a non-empty array");
    for (std::size_t i = 0; i < doc["epsilons"].size(); ++i) {
        const json& e = doc["epsilons"][i];
        if (!e.is_number()) bad_field("epsilons[" + std::to_string(i) + "]", "must be a number");
        cfg.epsilons.push_back(e.get<double>());
    }

    const std::string contam = doc.value("contamination", std::string("mean_shift"));
    if (contam == "mean_shift") {
        cfg.contamination = Contamination::mean_shift;
    } else if (contam == "pc_inflate") {
        cfg.contamination = Contamination::pc_inflate;
    } else {
        bad_field("contamination", "must be 'mean_shift' or 'pc_inflate'");
    }

    if (!doc.contains("estimators") || !doc["estimators"].is_array() ||
        doc["estimators"].empty())
        bad_field("estimators", "must be a non-empty array");
    for (std::size_t i = 0; i < doc["estimators"].size(); ++i) {
        const std::string path = "estimators[" + std::to_string(i) + "].";
        const json& e = doc["estimators"][i];
        if (!e.is_object()) bad_field(path + "kind", "estimator must be an object");
        if (!e.contains("kind") || !e["kind"].is_string()) bad_field(path + "kind", "missing");
        EstimatorSpec spec;
        spec.kind = kind_from_string(e["kind"].get<std::string>(), path + "kind");
        if (spec.uses_trim_params()) {
            spec.alpha = need_number(e, path, "alpha");
            spec.beta = need_number(e, path, "beta");
            spec.beta1 = opt_number(e, path, "beta1", 0.0);
            const bool soft = spec.kind == EstimatorKind::soft_trim ||
                              spec.kind == EstimatorKind::soft_pc;
            if (soft && !e.contains("beta1")) bad_field(path + "beta1", "missing");
        }
        cfg.estimators.push_back(spec);
    }

    try {
        cfg.validate();
    } catch (const Error& err) {
        throw_parse(std::string("config rejected: ") + err.what());
    }
    return cfg;
}

std::string dump_sim_config(const SimConfig& config) {
    json doc;
    doc["schema"] = 1;
    doc["model"] = config.model.id;
    doc["n"] = config.n;
    doc["grid_points"] = config.grid_points;
    doc["epsilons"] = config.epsilons;
    doc["contamination"] =
        (config.contamination == Contamination::mean_shift) ? "mean_shift" : "pc_inflate";
    json ests = json::array();
    for (const EstimatorSpec& spec : config.estimators) {
        json e;
        e["kind"] = kind_to_string(spec.kind);
        if (spec.uses_trim_params()) {
            e["alpha"] = spec.alpha;
            e["beta"] = spec.beta;
            if (spec.kind == EstimatorKind::soft_trim ||
                spec.kind == EstimatorKind::soft_pc)
                e["beta1"] = spec.beta1;
        }
        ests.push_back(std::move(e));
    }
    doc["estimators"] = std::move(ests);
    doc["replications"] = config.replications;
    doc["seed"] = config.seed;
    return doc.dump(2) + "\n";
}

std::string radii_csv(const RadiiResult& radii) {
    std::string out = "id,alpha,radius,rank\n";
    for (const RadiiResult::Row& row : radii.rows) {
        out += std::to_string(row.id);
        out += ",";
        out += format_double(row.alpha);
        out += ",";
        out += format_double(row.radius);
        out += ",";
        out += std::to_string(row.rank);
        out += "\n";
    }
    return out;
}

std::string trim_json(const TrimResult& result) {
    json doc;
    doc["schema"] = 1;
    doc["mean"] = vector_json(result.fit.mean);
    doc["complement_mean"] =
        result.has_complement ? vector_json(result.complement) : json(nullptr);
    doc["eigenvalues"] = vector_json(result.fit.eigenvalues);
    doc["pc_values"] = matrix_json(result.fit.pc_values);
    doc["scores"] = matrix_json(result.score_matrix);
    doc["weights"] = result.fit.weights.w;
    doc["truncated"] = result.fit.truncated;
    return doc.dump(2) + "\n";
}

std::string screen_hist_csv(const ScreenResult& screen) {
    std::string out = "alpha,bin_lo,bin_hi,count\n";
    for (const auto& [alpha, hist] : screen.histograms) {
        const std::size_t bins = hist.counts.size();
        const double width =
            (hist.hi > hist.lo) ? (hist.hi - hist.lo) / static_cast<double>(bins) : 0.0;
        for (std::size_t b = 0; b < bins; ++b) {
            const double lo = hist.lo + width * static_cast<double>(b);
            const double hi = (b + 1 == bins) ? hist.hi : lo + width;
            out += format_double(alpha);
            out += ",";
            out += format_double(lo);
            out += ",";
            out += format_double(hi);
            out += ",";
            out += std::to_string(hist.counts[b]);
            out += "\n";
        }
    }
    return out;
}

std::string manifest_json(const std::string& command, const std::string& config_json,
                          const std::string& dataset_checksum, std::uint64_t seed) {
    json doc;
    doc["schema"] = 1;
    doc["command"] = command;
    if (!config_json.empty()) {
        try {
            doc["config"] = json::parse(config_json);
        } catch (const json::parse_error&) {
            doc["config"] = config_json;  // opaque string fallback
        }
    } else {
        doc["config"] = json(nullptr);
    }
    doc["dataset_checksum"] =
        dataset_checksum.empty() ? json(nullptr) : json(dataset_checksum);
    doc["seed"] = seed;
    doc["version"] = kVersion;
    return doc.dump(2) + "\n";
}

}  // namespace radtrim
