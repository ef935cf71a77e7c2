#pragma once

// On-disk formats for sampled states.
//
// CSV: a mandatory header, then one row per record with columns
//   method, index, re_rho_11 .. re_rho_NN (row-major), im_rho_11 .. im_rho_NN,
//   rho_11 .. rho_NN
// Reals are written with 17 significant digits. Indices past 9 switch to the
// underscore form re_rho_10_10 so labels stay unambiguous.
//
// JSONL: one object per line with the same keys, in the same order.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bures/samplers.hpp"

namespace bures {

enum class RecordFormat { csv, jsonl };

/// "csv" or "jsonl"; InvalidInputError otherwise.
RecordFormat parse_record_format(std::string_view text);

/// jsonl for *.jsonl / *.json, csv for anything else.
RecordFormat format_for_path(const std::filesystem::path& path);

/// prefix + "rho_" + 1-based indices, e.g. ("re_", 1, 2, 3) -> "re_rho_12".
std::string entry_label(std::string_view prefix, std::size_t row, std::size_t col, std::size_t n_levels);

/// Header columns for an N-level record.
std::vector<std::string> record_columns(std::size_t n_levels);

/// printf("%.17g").
std::string format_real(double value);

void write_records(std::ostream& out, std::span<const SampleRecord> records, RecordFormat format);
/// Throws IoError when the file cannot be written.
void write_records(const std::filesystem::path& path, std::span<const SampleRecord> records,
                   RecordFormat format);

/// Reads records written by write_records; the format is detected from content.
std::vector<SampleRecord> read_records(const std::filesystem::path& path);

/// Numeric column `name` of a CSV-with-header or JSONL file. Throws IoError if the
/// file is unreadable and InvalidInputError if the column is missing or non-numeric.
std::vector<double> read_column(const std::filesystem::path& path, const std::string& name);

/// Two-column CSV "a,b" of quantile pairs.
void write_pairs(const std::filesystem::path& path, std::span<const std::pair<double, double>> pairs);

}  // namespace bures
