#pragma once

#include <optional>
#include <string>
#include <vector>

#include "specdim/dimension.hpp"
#include "specdim/spectral.hpp"

namespace specdim::io {

const char* version();

/// Full-precision decimal rendering, shortest round-trip-safe form.
std::string format_double(double x);

/// Write a file atomically: temp file in the same directory, then rename.
void write_text_atomic(const std::string& path, const std::string& content);

std::string read_text(const std::string& path);

/// gnuplot-ready CSV: '#'-prefixed header lines, comma-separated rows.
std::string csv_table(const std::vector<std::string>& header_comments,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows);

/// Spectrum cache, text format:
///   spectrum-v1 <count> <normalization> <source-id>
/// then one "lambda weight" line per entry at full precision.
void write_spectrum_cache(const std::string& path, const WeightedSpectrum& spec,
                          const std::string& source_id);
std::optional<WeightedSpectrum> read_spectrum_cache(
    const std::string& path, const std::string& expected_source_id);

}  // namespace specdim::io
