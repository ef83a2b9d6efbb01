#include "radtrim/radtrim.h"

#include <cstring>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "../core/dataset.hpp"
#include "../core/error.hpp"
#include "../core/pipeline.hpp"
#include "../core/report.hpp"
#include "../core/simulation.hpp"
#include "../core/util.hpp"

struct radtrim_sample {
    radtrim::WeightedSample sample;
    std::string checksum;
};

struct radtrim_fit {
    radtrim::TrimResult result;
};

struct radtrim_report {
    radtrim::SimReport report;
    radtrim::SimConfig config;
};

namespace {

thread_local std::string g_last_error = "no error";

radtrim_status to_status(radtrim::ErrorCode code) {
    switch (code) {
        case radtrim::ErrorCode::invalid_argument: return RADTRIM_ERR_INVALID;
        case radtrim::ErrorCode::parse: return RADTRIM_ERR_PARSE;
        case radtrim::ErrorCode::degenerate: return RADTRIM_ERR_DEGENERATE;
        case radtrim::ErrorCode::internal: return RADTRIM_ERR_INTERNAL;
    }
    return RADTRIM_ERR_INTERNAL;
}

template <typename Fn>
radtrim_status guarded(Fn&& fn) {
    try {
        fn();
        return RADTRIM_OK;
    } catch (const radtrim::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return RADTRIM_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return RADTRIM_ERR_INTERNAL;
    }
}

radtrim_status invalid(const char* message) {
    g_last_error = message;
    return RADTRIM_ERR_INVALID;
}

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.data(), s.size() + 1);
    return out;
}

std::vector<double> alpha_vector(const double* alphas, size_t count) {
    if (alphas == nullptr || count == 0)
        radtrim::throw_invalid("alpha list must not be empty");
    return std::vector<double>(alphas, alphas + count);
}

}  // namespace

extern "C" {

const char* radtrim_version(void) { return radtrim::kVersion; }

const char* radtrim_last_error(void) { return g_last_error.c_str(); }

void radtrim_string_free(char* s) { delete[] s; }

radtrim_status radtrim_sample_load(const char* path, const char* format,
                                   radtrim_sample** out) {
    if (!path || !out) return invalid("path and out must not be NULL");
    return guarded([&] {
        const std::string fmt = format ? format : "auto";
        radtrim::DatasetFormat f;
        if (fmt == "auto") {
            f = radtrim::guess_format(path);
        } else if (fmt == "csv") {
            f = radtrim::DatasetFormat::matrix_csv;
        } else if (fmt == "json") {
            f = radtrim::DatasetFormat::channel_json;
        } else {
            radtrim::throw_invalid("format must be 'auto', 'csv' or 'json'");
        }
        const std::string text = radtrim::read_file(path);
        radtrim::WeightedSample s = (f == radtrim::DatasetFormat::matrix_csv)
                                        ? radtrim::parse_matrix_csv(text)
                                        : radtrim::parse_channel_json(text);
        *out = new radtrim_sample{std::move(s), radtrim::content_checksum_hex(text)};
    });
}

radtrim_status radtrim_sample_from_csv(const char* text, radtrim_sample** out) {
    if (!text || !out) return invalid("text and out must not be NULL");
    return guarded([&] {
        const std::string str = text;
        radtrim::WeightedSample s = radtrim::parse_matrix_csv(str);
        *out = new radtrim_sample{std::move(s), radtrim::content_checksum_hex(str)};
    });
}

void radtrim_sample_free(radtrim_sample* s) { delete s; }

size_t radtrim_sample_rows(const radtrim_sample* s) { return s ? s->sample.n() : 0; }

size_t radtrim_sample_cols(const radtrim_sample* s) { return s ? s->sample.p() : 0; }

radtrim_status radtrim_sample_checksum(const radtrim_sample* s, char** hex_out) {
    if (!s || !hex_out) return invalid("sample and hex_out must not be NULL");
    *hex_out = dup_string(s->checksum);
    return RADTRIM_OK;
}

radtrim_status radtrim_radii_csv(const radtrim_sample* s, const double* alphas,
                                 size_t count, char** csv_out) {
    if (!s || !csv_out) return invalid("sample and csv_out must not be NULL");
    return guarded([&] {
        const radtrim::RadiiResult r =
            radtrim::compute_radii(s->sample, alpha_vector(alphas, count));
        *csv_out = dup_string(radtrim::radii_csv(r));
    });
}

radtrim_status radtrim_screen_csv(const radtrim_sample* s, const double* alphas,
                                  size_t count, size_t bins, char** radii_csv_out,
                                  char** hist_csv_out) {
    if (!s) return invalid("sample must not be NULL");
    return guarded([&] {
        const radtrim::ScreenResult r =
            radtrim::run_screen(s->sample, alpha_vector(alphas, count), bins);
        if (radii_csv_out) *radii_csv_out = dup_string(radtrim::radii_csv(r.radii));
        if (hist_csv_out) *hist_csv_out = dup_string(radtrim::screen_hist_csv(r));
    });
}

radtrim_status radtrim_trim_run(const radtrim_sample* s,
                                const radtrim_trim_options* options,
                                radtrim_fit** out) {
    if (!s || !options || !out) return invalid("sample, options and out must not be NULL");
    return guarded([&] {
        radtrim::TrimConfig config;
        config.alpha = options->alpha;
        config.beta = options->beta;
        config.beta1 = options->beta1;
        config.mode = options->soft ? radtrim::TrimMode::soft : radtrim::TrimMode::hard;
        const size_t k = options->components ? options->components : 1;
        *out = new radtrim_fit{radtrim::run_trim(s->sample, config, k)};
    });
}

void radtrim_fit_free(radtrim_fit* f) { delete f; }

radtrim_status radtrim_fit_json(const radtrim_fit* f, char** json_out) {
    if (!f || !json_out) return invalid("fit and json_out must not be NULL");
    return guarded([&] { *json_out = dup_string(radtrim::trim_json(f->result)); });
}

size_t radtrim_fit_components(const radtrim_fit* f) {
    return f ? f->result.fit.n_components() : 0;
}

radtrim_status radtrim_fit_mean(const radtrim_fit* f, const double** data,
                                size_t* len) {
    if (!f || !data || !len) return invalid("fit, data and len must not be NULL");
    *data = f->result.fit.mean.data();
    *len = static_cast<size_t>(f->result.fit.mean.size());
    return RADTRIM_OK;
}

radtrim_status radtrim_fit_eigenvalues(const radtrim_fit* f, const double** data,
                                       size_t* len) {
    if (!f || !data || !len) return invalid("fit, data and len must not be NULL");
    *data = f->result.fit.eigenvalues.data();
    *len = static_cast<size_t>(f->result.fit.eigenvalues.size());
    return RADTRIM_OK;
}

radtrim_status radtrim_fit_weights(const radtrim_fit* f, const double** data,
                                   size_t* len) {
    if (!f || !data || !len) return invalid("fit, data and len must not be NULL");
    *data = f->result.fit.weights.w.data();
    *len = f->result.fit.weights.w.size();
    return RADTRIM_OK;
}

radtrim_status radtrim_simulate_run(const char* config_json, radtrim_report** out) {
    if (!config_json || !out) return invalid("config_json and out must not be NULL");
    return guarded([&] {
        radtrim::SimConfig config = radtrim::parse_sim_config(config_json);
        radtrim::SimReport report = radtrim::run_study(config);
        *out = new radtrim_report{std::move(report), std::move(config)};
    });
}

void radtrim_report_free(radtrim_report* r) { delete r; }

radtrim_status radtrim_report_csv(const radtrim_report* r, char** out) {
    if (!r || !out) return invalid("report and out must not be NULL");
    return guarded([&] { *out = dup_string(radtrim::sim_report_csv(r->report)); });
}

radtrim_status radtrim_report_json(const radtrim_report* r, char** out) {
    if (!r || !out) return invalid("report and out must not be NULL");
    return guarded([&] { *out = dup_string(radtrim::sim_report_json(r->report)); });
}

radtrim_status radtrim_report_config_json(const radtrim_report* r, char** out) {
    if (!r || !out) return invalid("report and out must not be NULL");
    return guarded([&] { *out = dup_string(radtrim::dump_sim_config(r->config)); });
}

uint64_t radtrim_report_seed(const radtrim_report* r) {
    return r ? r->report.seed : 0;
}

radtrim_status radtrim_manifest_json(const char* command, const char* config_json,
                                     const char* dataset_checksum, uint64_t seed,
                                     char** out) {
    if (!command || !out) return invalid("command and out must not be NULL");
    return guarded([&] {
        *out = dup_string(radtrim::manifest_json(
            command, config_json ? config_json : "",
            dataset_checksum ? dataset_checksum : "", seed));
    });
}

}  // extern "C"
