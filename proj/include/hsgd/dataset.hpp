#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace hsgd {

// One labeled sparse example: strictly increasing 0-based feature indices,
// label in {-1, +1}.
struct SparseRow {
  std::vector<std::size_t> indices;
  std::vector<double> values;
  double label = 1.0;

  std::size_t nnz() const { return indices.size(); }

  double dot_dense(const std::vector<double>& x) const {
    double s = 0.0;
    for (std::size_t k = 0; k < indices.size(); ++k) s += values[k] * x[indices[k]];
    return s;
  }

  double squared_norm() const {
    double s = 0.0;
    for (double v : values) s += v * v;
    return s;
  }
};

struct Dataset {
  std::vector<SparseRow> rows;
  std::size_t dimension = 0;  // max feature index + 1
  std::string name;

  std::size_t size() const { return rows.size(); }
};

}  // namespace hsgd
