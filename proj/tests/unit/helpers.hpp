#pragma once

#include "itp/io.hpp"
#include "itp/model.hpp"

#include <string>

namespace testutil {

inline std::string data_path(const std::string& relative) {
  return std::string(ITP_DATA_DIR) + "/" + relative;
}

inline std::string read(const std::string& relative) { return itp::read_file(data_path(relative)); }

// The recorded project dataset used across suites; loaded once.
inline const itp::Dataset& case_study() {
  static const itp::Dataset dataset = itp::load_dataset(data_path("case_study/dataset.json"));
  return dataset;
}

} // namespace testutil
