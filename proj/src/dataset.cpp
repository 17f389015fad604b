#include "gabsn/dataset.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#ifndef GABSN_DATA_DIR
#define GABSN_DATA_DIR "data"
#endif

namespace gabsn {
namespace {

struct Builtin {
  std::string_view name;
  std::string_view file;
  std::string_view fetch;
};

constexpr Builtin kBuiltins[] = {
    {"lakes69", "lakes69.txt",
     "lakes69 is not bundled. It is the N latitude column (69 lakes) of the Dodson lake "
     "diversity data, available as data set 'lakes' in the R package alr4 (column 'Lat'). "
     "Save one value per line as lakes69.txt in the data directory."},
    {"ais_wcc202", "ais_wcc202.txt",
     "ais_wcc202 is the 'wcc' column of the Australian Institute of Sport data (Cook and "
     "Weisberg 1994), e.g. DAAG::ais in R. Save one value per line as ais_wcc202.txt in the "
     "data directory."},
};

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(',', start);
    std::string_view field = trim(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (field.size() >= 2 && field.front() == '"' && field.back() == '"') {
      field = field.substr(1, field.size() - 2);
    }
    out.push_back(field);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

}  // namespace

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("GABSN_DATA_DIR"); env != nullptr && *env != '\0') return env;
  return GABSN_DATA_DIR;
}

Dataset parse_dataset(std::string_view text, std::string_view name, std::string_view column) {
  Dataset ds;
  ds.name = std::string(name);
  std::string provenance;
  std::optional<std::size_t> col;
  bool header_seen = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    std::string_view line = trim(raw);
    if (line_no == 1 && line.substr(0, 3) == "\xEF\xBB\xBF") line = trim(line.substr(3));
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!provenance.empty()) provenance += '\n';
      provenance += std::string(trim(line.substr(1)));
      continue;
    }
    const auto fields = split_csv(line);
    if (!header_seen && !col) {
      header_seen = true;
      bool numeric = true;
      for (auto f : fields) numeric = numeric && parse_number(f).has_value();
      if (!numeric) {
        // header row
        for (std::size_t i = 0; i < fields.size(); ++i) {
          if (!column.empty() && fields[i] == column) col = i;
        }
        if (!column.empty() && !col) {
          throw DatasetError(ds.name + ":" + std::to_string(line_no) + ": no column named '" +
                             std::string(column) + "'");
        }
        if (!col) col = fields.size() == 1 ? 0 : std::optional<std::size_t>{};
        if (!col) {
          throw DatasetError(ds.name + ":" + std::to_string(line_no) +
                             ": CSV input needs a column name");
        }
        continue;
      }
      if (!column.empty()) {
        throw DatasetError(ds.name + ": column '" + std::string(column) +
                           "' requested but the file has no header row");
      }
      if (fields.size() != 1) {
        throw DatasetError(ds.name + ":" + std::to_string(line_no) +
                           ": expected one value per line");
      }
      col = 0;
    }
    if (*col >= fields.size()) {
      throw DatasetError(ds.name + ":" + std::to_string(line_no) + ": missing field");
    }
    const auto v = parse_number(fields[*col]);
    if (!v) {
      throw DatasetError(ds.name + ":" + std::to_string(line_no) + ": cannot parse '" +
                         std::string(fields[*col]) + "' as a number");
    }
    if (!std::isfinite(*v)) {
      throw DatasetError(ds.name + ":" + std::to_string(line_no) + ": non-finite value");
    }
    ds.values.push_back(*v);
  }
  if (ds.values.empty()) throw DatasetError(ds.name + ": no values");
  ds.source = provenance.empty() ? ds.name : provenance;
  return ds;
}

Dataset load_dataset(std::string_view ref, std::string_view column) {
  std::filesystem::path path{std::string(ref)};
  std::string name{ref};
  for (const auto& b : kBuiltins) {
    if (ref == b.name) {
      path = data_dir() / b.file;
      if (!std::filesystem::exists(path)) {
        throw DatasetError(std::string(b.fetch) + " (looked for " + path.string() + ")");
      }
    }
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DatasetError("cannot open dataset file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Dataset ds = parse_dataset(buf.str(), name, column);
  if (ds.source == name) ds.source = path.string();
  return ds;
}

}  // namespace gabsn
