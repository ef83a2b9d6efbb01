#ifndef RADTRIM_DATASET_HPP
#define RADTRIM_DATASET_HPP

#include <string>

#include "hilbert.hpp"

namespace radtrim {

// matrix_csv: first line is either the grid knots or the word "euclidean";
// every following line is one observation. channel_json: named channels,
// each with its own grid (or "euclidean": true) and an n x m value matrix,
// rows aligned across channels by observation index.
enum class DatasetFormat { matrix_csv, channel_json };

// By extension: .csv -> matrix_csv, .json -> channel_json.
DatasetFormat guess_format(const std::string& path);

WeightedSample parse_matrix_csv(const std::string& text);
WeightedSample parse_channel_json(const std::string& text);

std::string to_matrix_csv(const WeightedSample& sample);
std::string to_channel_json(const WeightedSample& sample);

WeightedSample load_dataset(const std::string& path, DatasetFormat format);
void save_dataset(const WeightedSample& sample, const std::string& path,
                  DatasetFormat format);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

// FNV-1a over the raw bytes, as 16 hex digits; identifies dataset files in
// run manifests.
std::string content_checksum_hex(const std::string& bytes);

}  // namespace radtrim

#endif
