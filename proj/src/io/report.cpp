#include <fstream>
#include <sstream>

#include "ssns/error.hpp"
#include "ssns/io.hpp"

namespace ssns {

namespace schema {
const std::vector<std::string> energy{"t", "energy", "dissipation_rate", "dissipated",
                                      "divergence", "velocity_sup"};
const std::vector<std::string> manifest{"index", "t"};
const std::vector<std::string> scaling{"lambda", "t", "residual"};
const std::vector<std::string> decay{"t", "sup_norm", "sqrt_t_times_sup", "fitted_slope"};
const std::vector<std::string> profile_collapse{"t_i", "t_j", "distance"};
const std::vector<std::string> profile_field{"y1", "y2", "y3", "U1", "U2", "U3"};
const std::vector<std::string> serrin{"x1", "x2", "x3", "t", "r", "p", "q",
                                      "value", "admissible", "volume", "duration"};
const std::vector<std::string> l2loc{"t", "integral", "relative"};
const std::vector<std::string> commutation{"t", "discrepancy"};
}  // namespace schema

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::map<std::string, std::string>& provenance,
                     const std::vector<std::string>& columns)
    : file_(std::fopen(path.string().c_str(), "w")), columns_(columns.size()) {
  if (file_ == nullptr) throw ComputeError("csv: cannot write " + path.string());
  for (const auto& [k, v] : provenance) std::fprintf(file_, "# %s: %s\n", k.c_str(), v.c_str());
  for (std::size_t i = 0; i < columns.size(); ++i)
    std::fprintf(file_, "%s%s", i ? "," : "", columns[i].c_str());
  std::fputc('\n', file_);
}

CsvWriter::~CsvWriter() {
  if (file_ != nullptr) std::fclose(file_);
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_) throw ComputeError("csv: row width does not match header");
  for (std::size_t i = 0; i < values.size(); ++i)
    std::fprintf(file_, "%s%.17g", i ? "," : "", values[i]);
  std::fputc('\n', file_);
}

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw ValidationError("csv: missing column " + name);
}

CsvTable read_csv(const std::filesystem::path& path, const std::vector<std::string>& expected) {
  std::ifstream in(path);
  if (!in) throw ValidationError("csv: cannot open " + path.string());
  CsvTable t;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon != std::string::npos) {
        auto key = line.substr(1, colon - 1);
        auto value = line.substr(colon + 1);
        key.erase(0, key.find_first_not_of(' '));
        value.erase(0, value.find_first_not_of(' '));
        t.provenance[key] = value;
      }
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!header) {
      while (std::getline(ss, cell, ',')) t.columns.push_back(cell);
      header = true;
      if (!expected.empty() && t.columns != expected)
        throw ValidationError("csv: unexpected columns in " + path.string());
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
    if (row.size() != t.columns.size())
      throw ValidationError("csv: ragged row in " + path.string());
    t.rows.push_back(std::move(row));
  }
  if (!header) throw ValidationError("csv: no header in " + path.string());
  return t;
}

std::map<std::string, std::string> provenance(const RunConfig& cfg, const std::string& kind) {
  return {{"config_hash", cfg.hash()},
          {"report", kind},
          {"grid", std::to_string(cfg.n) + " " + std::to_string(cfg.length)}};
}

}  // namespace ssns
