#include "specdim/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace specdim::io {

const char* version() { return "0.1.0"; }

std::string format_double(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, target);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string csv_table(const std::vector<std::string>& header_comments,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::ostringstream out;
  for (const auto& c : header_comments) out << "# " << c << "\n";
  out << "# ";
  for (std::size_t i = 0; i < columns.size(); ++i)
    out << (i ? "," : "") << columns[i];
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << "\n";
  }
  return out.str();
}

void write_spectrum_cache(const std::string& path, const WeightedSpectrum& spec,
                          const std::string& source_id) {
  std::ostringstream out;
  out << "spectrum-v1 " << spec.entries.size() << " "
      << format_double(spec.normalization) << " " << source_id << "\n";
  for (auto& [l, w] : spec.entries)
    out << format_double(l) << " " << format_double(w) << "\n";
  write_text_atomic(path, out.str());
}

std::optional<WeightedSpectrum> read_spectrum_cache(
    const std::string& path, const std::string& expected_source_id) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::string magic, source;
  std::size_t count = 0;
  double normalization = 0;
  if (!(in >> magic >> count >> normalization >> source)) return std::nullopt;
  if (magic != "spectrum-v1" || source != expected_source_id)
    return std::nullopt;
  WeightedSpectrum spec;
  spec.normalization = normalization;
  spec.source = source;
  spec.entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double l, w;
    if (!(in >> l >> w)) return std::nullopt;
    spec.entries.emplace_back(l, w);
  }
  spec.volume = normalization > 0 ? double(count) / normalization : 0;
  return spec;
}

}  // namespace specdim::io
