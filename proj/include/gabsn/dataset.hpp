#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gabsn {

struct Dataset {
  std::string name;
  std::vector<double> values;
  std::string source;  // provenance: header comments or the file path
};

class DatasetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Directory holding the bundled data files: $GABSN_DATA_DIR if set, else the
/// path compiled in at build time.
std::filesystem::path data_dir();

/// Loads a builtin (`lakes69`, `ais_wcc202`) or a text file. Accepted files:
/// one number per line, or CSV with a header row, in which case `column`
/// picks the field (default: the first column that parses as numbers).
/// Lines starting with '#' are comments and feed the provenance string.
/// Throws DatasetError with a line number on malformed input.
Dataset load_dataset(std::string_view ref, std::string_view column = {});

/// Parses dataset text directly; `name` labels errors.
Dataset parse_dataset(std::string_view text, std::string_view name, std::string_view column = {});

}  // namespace gabsn
