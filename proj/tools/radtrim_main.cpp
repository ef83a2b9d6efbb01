// Command-line front end; talks to the core exclusively through the C API.
#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "radtrim/radtrim.h"

namespace {

int exit_code(radtrim_status st) {
    switch (st) {
        case RADTRIM_OK: return 0;
        case RADTRIM_ERR_PARSE: return 2;
        case RADTRIM_ERR_INVALID:
        case RADTRIM_ERR_DEGENERATE: return 3;
        default: return 1;
    }
}

int fail(radtrim_status st) {
    std::cerr << "error: " << radtrim_last_error() << "\n";
    return exit_code(st);
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct CStr {
    char* p = nullptr;
    ~CStr() { radtrim_string_free(p); }
    CStr() = default;
    CStr(const CStr&) = delete;
    CStr& operator=(const CStr&) = delete;
    const char* get() const { return p ? p : ""; }
};

struct SampleHandle {
    radtrim_sample* p = nullptr;
    ~SampleHandle() { radtrim_sample_free(p); }
};

std::string join_path(std::string dir, const std::string& name) {
    if (dir.empty()) return name;
    if (dir.back() != '/') dir += '/';
    return dir + name;
}

bool write_text(const std::string& path, const std::string& text) {
    std::error_code ec;
    const auto dir = std::filesystem::path(path).parent_path();
    if (!dir.empty()) std::filesystem::create_directories(dir, ec);
    std::ofstream out(path, std::ios::binary);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

int emit(const std::string& path, const std::string& text) {
    if (!write_text(path, text)) {
        std::cerr << "error: cannot write " << path << "\n";
        return 1;
    }
    std::cout << "wrote " << path << "\n";
    return 0;
}

std::string json_number_list(const std::vector<double>& values) {
    std::string out = "[";
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += fmt(values[i]);
    }
    return out + "]";
}

int load_sample(const std::string& dataset, const std::string& format,
                SampleHandle& sample) {
    const radtrim_status st =
        radtrim_sample_load(dataset.c_str(), format.c_str(), &sample.p);
    if (st != RADTRIM_OK) return fail(st);
    return 0;
}

int write_manifest(const std::string& out_dir, const std::string& name,
                   const std::string& command, const std::string& config_json,
                   const char* checksum, uint64_t seed) {
    CStr manifest;
    const radtrim_status st = radtrim_manifest_json(
        command.c_str(), config_json.c_str(), checksum, seed, &manifest.p);
    if (st != RADTRIM_OK) return fail(st);
    return emit(join_path(out_dir, name), manifest.get());
}

int run_radii(const std::string& dataset, const std::string& format,
              const std::vector<double>& alphas, const std::string& out_dir) {
    SampleHandle sample;
    if (int rc = load_sample(dataset, format, sample)) return rc;
    CStr csv;
    const radtrim_status st =
        radtrim_radii_csv(sample.p, alphas.data(), alphas.size(), &csv.p);
    if (st != RADTRIM_OK) return fail(st);
    if (int rc = emit(join_path(out_dir, "radii.csv"), csv.get())) return rc;
    CStr checksum;
    radtrim_sample_checksum(sample.p, &checksum.p);
    const std::string config = "{\"alphas\":" + json_number_list(alphas) + "}";
    return write_manifest(out_dir, "radii_manifest.json", "radii", config,
                          checksum.get(), 0);
}

int run_screen(const std::string& dataset, const std::string& format,
               const std::vector<double>& alphas, size_t bins,
               const std::string& out_dir) {
    SampleHandle sample;
    if (int rc = load_sample(dataset, format, sample)) return rc;
    CStr radii, hist;
    const radtrim_status st = radtrim_screen_csv(sample.p, alphas.data(),
                                                 alphas.size(), bins, &radii.p, &hist.p);
    if (st != RADTRIM_OK) return fail(st);
    if (int rc = emit(join_path(out_dir, "radii.csv"), radii.get())) return rc;
    if (int rc = emit(join_path(out_dir, "radii_hist.csv"), hist.get())) return rc;
    CStr checksum;
    radtrim_sample_checksum(sample.p, &checksum.p);
    const std::string config = "{\"alphas\":" + json_number_list(alphas) +
                               ",\"bins\":" + std::to_string(bins) + "}";
    return write_manifest(out_dir, "screen_manifest.json", "screen", config,
                          checksum.get(), 0);
}

int run_trim(const std::string& dataset, const std::string& format, double alpha,
             double beta, double beta1, const std::string& mode, size_t components,
             const std::string& out_dir) {
    SampleHandle sample;
    if (int rc = load_sample(dataset, format, sample)) return rc;

    radtrim_trim_options options{};
    options.alpha = alpha;
    options.beta = beta;
    options.beta1 = beta1;
    options.soft = (mode == "soft") ? 1 : 0;
    options.components = components;

    radtrim_fit* fit_raw = nullptr;
    const radtrim_status st = radtrim_trim_run(sample.p, &options, &fit_raw);
    if (st == RADTRIM_ERR_DEGENERATE) {
        // Show where the radii mass sits so the user can pick a workable beta.
        std::cerr << "error: " << radtrim_last_error() << "\n";
        CStr hist;
        if (radtrim_screen_csv(sample.p, &alpha, 1, 10, nullptr, &hist.p) == RADTRIM_OK) {
            std::cerr << "radius distribution at alpha=" << fmt(alpha) << ":\n"
                      << hist.get();
        }
        return exit_code(st);
    }
    if (st != RADTRIM_OK) return fail(st);

    CStr json;
    const radtrim_status jst = radtrim_fit_json(fit_raw, &json.p);
    radtrim_fit_free(fit_raw);
    if (jst != RADTRIM_OK) return fail(jst);
    if (int rc = emit(join_path(out_dir, "trim.json"), json.get())) return rc;

    CStr checksum;
    radtrim_sample_checksum(sample.p, &checksum.p);
    std::string config = "{\"alpha\":" + fmt(alpha) + ",\"beta\":" + fmt(beta);
    if (mode == "soft") config += ",\"beta1\":" + fmt(beta1);
    config += ",\"mode\":\"" + mode + "\",\"components\":" + std::to_string(components) + "}";
    return write_manifest(out_dir, "trim_manifest.json", "trim", config,
                          checksum.get(), 0);
}

int run_simulate(const std::string& config_path, const std::string& out_dir) {
    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "error: cannot open " << config_path << "\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string config_text = buf.str();

    radtrim_report* report = nullptr;
    const radtrim_status st = radtrim_simulate_run(config_text.c_str(), &report);
    if (st != RADTRIM_OK) return fail(st);

    CStr csv, json, resolved;
    radtrim_status rst = radtrim_report_csv(report, &csv.p);
    if (rst == RADTRIM_OK) rst = radtrim_report_json(report, &json.p);
    if (rst == RADTRIM_OK) rst = radtrim_report_config_json(report, &resolved.p);
    const uint64_t seed = radtrim_report_seed(report);
    radtrim_report_free(report);
    if (rst != RADTRIM_OK) return fail(rst);

    if (int rc = emit(join_path(out_dir, "simulation.csv"), csv.get())) return rc;
    if (int rc = emit(join_path(out_dir, "simulation.json"), json.get())) return rc;
    return write_manifest(out_dir, "simulation_manifest.json", "simulate",
                          resolved.get(), nullptr, seed);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radius-based trimming for functional and high-dimensional data"};
    app.set_version_flag("--version", radtrim_version());
    app.require_subcommand(1);
    app.footer("Thread count for simulations: RADTRIM_THREADS (default: all cores).\n"
               "Exit codes: 0 success, 2 parse error, 3 degenerate configuration.");

    std::string dataset, format = "auto", out_dir = ".", mode = "hard", config_path;
    std::vector<double> alphas;
    double alpha = 0.5, beta = 0.0, beta1 = 0.0;
    size_t components = 3, bins = 20;

    CLI::App* radii = app.add_subcommand("radii", "neighborhood radii per observation");
    radii->add_option("dataset", dataset, "dataset file (.csv or .json)")->required();
    radii->add_option("--alpha", alphas, "neighborhood fractions, e.g. 0.2,0.5")
        ->required()
        ->delimiter(',');
    radii->add_option("--format", format, "dataset format: auto|csv|json");
    radii->add_option("--out", out_dir, "output directory");

    CLI::App* trim = app.add_subcommand("trim", "trimmed mean and principal components");
    trim->add_option("dataset", dataset, "dataset file (.csv or .json)")->required();
    trim->add_option("--alpha", alpha, "neighborhood fraction in (0, 0.5]")->required();
    trim->add_option("--beta", beta, "trimmed fraction in [0, 0.5]")->required();
    trim->add_option("--beta1", beta1, "soft mode: downweighting starts here");
    trim->add_option("--mode", mode, "hard|soft")
        ->check(CLI::IsMember({"hard", "soft"}));
    trim->add_option("--components", components, "principal components to keep");
    trim->add_option("--format", format, "dataset format: auto|csv|json");
    trim->add_option("--out", out_dir, "output directory");

    CLI::App* simulate = app.add_subcommand("simulate", "synthetic estimator study");
    simulate->add_option("--config", config_path, "study config JSON")->required();
    simulate->add_option("--out", out_dir, "output directory");

    CLI::App* screen = app.add_subcommand("screen", "radii sweep plus histograms");
    screen->add_option("dataset", dataset, "dataset file (.csv or .json)")->required();
    screen->add_option("--alpha", alphas, "fractions to sweep (default .1,.2,.3,.4,.5)")
        ->delimiter(',');
    screen->add_option("--bins", bins, "histogram bins");
    screen->add_option("--format", format, "dataset format: auto|csv|json");
    screen->add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (radii->parsed()) return run_radii(dataset, format, alphas, out_dir);
    if (trim->parsed())
        return run_trim(dataset, format, alpha, beta, beta1, mode, components, out_dir);
    if (simulate->parsed()) return run_simulate(config_path, out_dir);
    if (screen->parsed()) {
        if (alphas.empty()) alphas = {0.1, 0.2, 0.3, 0.4, 0.5};
        return run_screen(dataset, format, alphas, bins, out_dir);
    }
    return 2;
}
