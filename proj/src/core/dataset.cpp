#include "dataset.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "util.hpp"

namespace radtrim {

namespace {

using nlohmann::json;

std::string_view trim_ws(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view raw, std::size_t line_no) {
    const std::string_view tok = trim_ws(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw_parse("line " + std::to_string(line_no) + ": not a number: '" +
                    std::string(tok) + "'");
    return v;
}

std::vector<std::string_view> split_line(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == ',') {
            cells.push_back(line.substr(start, i - start));
            start = i + 1;
        }
    }
    return cells;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
        if (i == text.size() || text[i] == '\n') {
            std::string_view line = text.substr(start, i - start);
            if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
            lines.push_back(line);
            start = i + 1;
        }
    }
    while (!lines.empty() && trim_ws(lines.back()).empty()) lines.pop_back();
    return lines;
}

Grid grid_from_numbers(const std::vector<double>& knots, const std::string& where) {
    Grid g;
    g.knots = knots;
    if (g.knots.size() < 2) throw_parse(where + ": grid needs at least two knots");
    for (std::size_t j = 0; j + 1 < g.knots.size(); ++j)
        if (!(g.knots[j] < g.knots[j + 1]))
            throw_parse(where + ": grid knots must be strictly increasing");
    return g;
}

}  // namespace

DatasetFormat guess_format(const std::string& path) {
    const auto dot = path.find_last_of('.');
    const std::string ext = (dot == std::string::npos) ? "" : path.substr(dot);
    if (ext == ".csv") return DatasetFormat::matrix_csv;
    if (ext == ".json") return DatasetFormat::channel_json;
    throw_parse("cannot infer dataset format from '" + path +
                "' (expected .csv or .json)");
}

WeightedSample parse_matrix_csv(const std::string& text) {
    const std::vector<std::string_view> lines = split_lines(text);
    if (lines.size() < 2) throw_parse("dataset needs a header line and at least one row");

    const std::vector<std::string_view> header = split_line(lines[0]);
    const bool euclidean = trim_ws(header[0]) == "euclidean";
    Grid grid;
    if (!euclidean) {
        std::vector<double> knots;
        knots.reserve(header.size());
        for (const std::string_view cell : header) knots.push_back(parse_cell(cell, 1));
        grid = grid_from_numbers(knots, "line 1");
    } else if (header.size() != 1) {
        throw_parse("line 1: 'euclidean' header takes no other cells");
    }

    std::size_t p = euclidean ? 0 : grid.knots.size();
    std::vector<std::vector<double>> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t li = 1; li < lines.size(); ++li) {
        if (trim_ws(lines[li]).empty())
            throw_parse("line " + std::to_string(li + 1) + ": blank row");
        const std::vector<std::string_view> cells = split_line(lines[li]);
        if (p == 0) p = cells.size();
        if (cells.size() != p)
            throw_parse("line " + std::to_string(li + 1) + ": expected " +
                        std::to_string(p) + " cells, found " +
                        std::to_string(cells.size()));
        std::vector<double> row;
        row.reserve(p);
        for (const std::string_view cell : cells) row.push_back(parse_cell(cell, li + 1));
        rows.push_back(std::move(row));
    }

    Eigen::MatrixXd values(static_cast<Eigen::Index>(rows.size()),
                           static_cast<Eigen::Index>(p));
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < p; ++j)
            values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];

    if (euclidean) return WeightedSample::euclidean(std::move(values));
    return WeightedSample::on_grid(std::move(values), std::move(grid));
}

WeightedSample parse_channel_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw_parse(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("channels") || !doc["channels"].is_array() ||
            doc["channels"].empty())
            throw_parse("dataset JSON needs a non-empty 'channels' array");

        std::size_t n = 0;
        std::size_t p = 0;
        std::vector<ChannelInfo> infos;
        std::vector<Eigen::MatrixXd> blocks;
        std::vector<std::vector<double>> quads;
        for (const json& ch : doc["channels"]) {
            ChannelInfo info;
            info.name = ch.value("name", std::string("ch") + std::to_string(infos.size()));
            if (!ch.contains("values") || !ch["values"].is_array() || ch["values"].empty())
                throw_parse("channel '" + info.name + "' needs a non-empty 'values' matrix");
            const json& vals = ch["values"];
            const std::size_t rows = vals.size();
            if (n == 0) n = rows;
            if (rows != n)
                throw_parse("channel '" + info.name + "' has " + std::to_string(rows) +
                            " rows; expected " + std::to_string(n));
            const std::size_t width = vals[0].is_array() ? vals[0].size() : 0;
            if (width == 0) throw_parse("channel '" + info.name + "' rows must be arrays");

            Eigen::MatrixXd block(static_cast<Eigen::Index>(rows),
                                  static_cast<Eigen::Index>(width));
            for (std::size_t i = 0; i < rows; ++i) {
                if (!vals[i].is_array() || vals[i].size() != width)
                    throw_parse("channel '" + info.name + "' row " + std::to_string(i + 1) +
                                " is ragged");
                for (std::size_t j = 0; j < width; ++j) {
                    if (!vals[i][j].is_number())
                        throw_parse("channel '" + info.name + "' row " +
                                    std::to_string(i + 1) + " has a non-numeric cell");
                    block(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        vals[i][j].get<double>();
                }
            }

            std::vector<double> q;
            if (ch.contains("grid")) {
                if (!ch["grid"].is_array())
                    throw_parse("channel '" + info.name + "' grid must be an array");
                std::vector<double> knots;
                for (const json& v : ch["grid"]) {
                    if (!v.is_number())
                        throw_parse("channel '" + info.name + "' grid has a non-numeric knot");
                    knots.push_back(v.get<double>());
                }
                Grid grid = grid_from_numbers(knots, "channel '" + info.name + "'");
                if (grid.knots.size() != width)
                    throw_parse("channel '" + info.name + "' grid size " +
                                std::to_string(grid.knots.size()) + " != row width " +
                                std::to_string(width));
                q = trapezoid_weights(grid);
                info.grid = std::move(grid);
            } else if (ch.value("euclidean", false)) {
                q.assign(width, 1.0);
            } else {
                throw_parse("channel '" + info.name +
                            "' needs either 'grid' or 'euclidean': true");
            }

            info.offset = p;
            info.size = width;
            p += width;
            infos.push_back(std::move(info));
            blocks.push_back(std::move(block));
            quads.push_back(std::move(q));
        }

        Eigen::MatrixXd values(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(p));
        Eigen::VectorXd quad(static_cast<Eigen::Index>(p));
        std::size_t off = 0;
        for (std::size_t c = 0; c < blocks.size(); ++c) {
            values.middleCols(static_cast<Eigen::Index>(off),
                              static_cast<Eigen::Index>(quads[c].size())) = blocks[c];
            for (std::size_t j = 0; j < quads[c].size(); ++j)
                quad[static_cast<Eigen::Index>(off + j)] = quads[c][j];
            off += quads[c].size();
        }
        return WeightedSample(std::move(values), std::move(quad), std::move(infos));
    } catch (const json::exception& e) {
        throw_parse(std::string("malformed dataset JSON: ") + e.what());
    }
}

std::string to_matrix_csv(const WeightedSample& sample) {
    if (sample.channels().size() != 1)
        throw_invalid("matrix CSV holds exactly one channel; use the JSON format");
    const ChannelInfo& ch = sample.channels()[0];
    std::string out;
    if (ch.grid) {
        for (std::size_t j = 0; j < ch.grid->knots.size(); ++j) {
            if (j) out += ",";
            out += format_double(ch.grid->knots[j]);
        }
    } else {
        out += "euclidean";
    }
    out += "\n";
    for (std::size_t i = 0; i < sample.n(); ++i) {
        for (std::size_t j = 0; j < sample.p(); ++j) {
            if (j) out += ",";
            out += format_double(sample.values()(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(j)));
        }
        out += "\n";
    }
    return out;
}

std::string to_channel_json(const WeightedSample& sample) {
    json channels = json::array();
    for (const ChannelInfo& ch : sample.channels()) {
        json c;
        c["name"] = ch.name;
        if (ch.grid) {
            c["grid"] = ch.grid->knots;
        } else {
            c["euclidean"] = true;
        }
        json rows = json::array();
        for (std::size_t i = 0; i < sample.n(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < ch.size; ++j)
                row.push_back(sample.values()(static_cast<Eigen::Index>(i),
                                              static_cast<Eigen::Index>(ch.offset + j)));
            rows.push_back(std::move(row));
        }
        c["values"] = std::move(rows);
        channels.push_back(std::move(c));
    }
    json doc;
    doc["schema"] = 1;
    doc["channels"] = std::move(channels);
    return doc.dump(2) + "\n";
}

WeightedSample load_dataset(const std::string& path, DatasetFormat format) {
    const std::string text = read_file(path);
    return (format == DatasetFormat::matrix_csv) ? parse_matrix_csv(text)
                                                 : parse_channel_json(text);
}

void save_dataset(const WeightedSample& sample, const std::string& path,
                  DatasetFormat format) {
    write_file(path, (format == DatasetFormat::matrix_csv) ? to_matrix_csv(sample)
                                                           : to_channel_json(sample));
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw_parse("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::internal, "cannot write '" + path + "'");
    out << content;
    if (!out) throw Error(ErrorCode::internal, "write failed for '" + path + "'");
}

std::string content_checksum_hex(const std::string& bytes) {
    return hex64(fnv1a64(bytes.data(), bytes.size()));
}

}  // namespace radtrim
