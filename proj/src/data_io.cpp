#include "hsgd/data_io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "hsgd/errors.hpp"
#include "hsgd/rng.hpp"

namespace hsgd {

namespace {

// Line-at-a-time source so large files stream in bounded memory.
class LineSource {
 public:
  virtual ~LineSource() = default;
  virtual bool next(std::string& line) = 0;
};

class StreamLineSource final : public LineSource {
 public:
  explicit StreamLineSource(std::istream& in) : in_(in) {}
  bool next(std::string& line) override { return static_cast<bool>(std::getline(in_, line)); }

 private:
  std::istream& in_;
};

class GzipLineSource final : public LineSource {
 public:
  explicit GzipLineSource(const std::string& path) : file_(gzopen(path.c_str(), "rb")) {
    if (file_ == nullptr) throw IoError("cannot open " + path);
  }
  ~GzipLineSource() override {
    if (file_ != nullptr) gzclose(file_);
  }
  bool next(std::string& line) override {
    line.clear();
    char buf[4096];
    bool got_any = false;
    while (gzgets(file_, buf, sizeof(buf)) != nullptr) {
      got_any = true;
      line.append(buf);
      if (!line.empty() && line.back() == '\n') {
        line.pop_back();
        return true;
      }
    }
    return got_any;
  }

 private:
  gzFile file_;
};

double parse_double_token(std::string_view tok, long line_no, const char* what) {
  double out = 0.0;
  const char* begin = tok.data();
  const char* end = begin + tok.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(std::string("invalid ") + what + " '" + std::string(tok) + "'", line_no);
  }
  return out;
}

Dataset parse_lines(LineSource& src, const std::string& name) {
  Dataset ds;
  ds.name = name;
  std::string line;
  long line_no = 0;
  while (src.next(line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string_view rest(line);
    auto next_token = [&rest]() -> std::string_view {
      std::size_t i = 0;
      while (i < rest.size() && (rest[i] == ' ' || rest[i] == '\t' || rest[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < rest.size() && rest[j] != ' ' && rest[j] != '\t' && rest[j] != '\r') ++j;
      std::string_view tok = rest.substr(i, j - i);
      rest.remove_prefix(j);
      return tok;
    };

    const std::string_view label_tok = next_token();
    if (label_tok.empty()) continue;  // blank or comment-only line

    const double raw_label = parse_double_token(label_tok, line_no, "label");
    double label;
    if (raw_label == 1.0) {
      label = 1.0;
    } else if (raw_label == -1.0) {
      label = -1.0;
    } else if (raw_label == 0.0) {
      label = -1.0;
    } else {
      throw ParseError("label must be -1, 0, or +1, got '" + std::string(label_tok) + "'",
                       line_no);
    }

    SparseRow row;
    row.label = label;
    long last_index = 0;  // 1-based; enforces strictly increasing order
    for (std::string_view tok = next_token(); !tok.empty(); tok = next_token()) {
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos || colon == 0 || colon + 1 == tok.size()) {
        throw ParseError("malformed index:value pair '" + std::string(tok) + "'", line_no);
      }
      long idx = 0;
      {
        const char* b = tok.data();
        const char* e = b + colon;
        auto [ptr, ec] = std::from_chars(b, e, idx);
        if (ec != std::errc() || ptr != e || idx < 1) {
          throw ParseError("invalid feature index in '" + std::string(tok) + "'", line_no);
        }
      }
      if (idx <= last_index) {
        throw ParseError("feature indices must be strictly increasing", line_no);
      }
      last_index = idx;
      const double value = parse_double_token(tok.substr(colon + 1), line_no, "feature value");
      if (!std::isfinite(value)) throw ParseError("non-finite feature value", line_no);
      row.indices.push_back(static_cast<std::size_t>(idx - 1));
      row.values.push_back(value);
    }
    ds.dimension = std::max(ds.dimension, static_cast<std::size_t>(last_index));
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

}  // namespace

Dataset parse_libsvm(std::istream& in, const std::string& name) {
  StreamLineSource src(in);
  return parse_lines(src, name);
}

Dataset load_libsvm_file(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw IoError("cannot open " + path);
  unsigned char magic[2] = {0, 0};
  probe.read(reinterpret_cast<char*>(magic), 2);
  const bool gzipped = probe.gcount() == 2 && magic[0] == 0x1f && magic[1] == 0x8b;
  probe.close();

  if (gzipped) {
    GzipLineSource src(path);
    return parse_lines(src, path);
  }
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_libsvm(in, path);
}

void write_libsvm(const Dataset& ds, std::ostream& out) {
  char buf[64];
  for (const SparseRow& row : ds.rows) {
    out << (row.label > 0 ? "+1" : "-1");
    for (std::size_t k = 0; k < row.indices.size(); ++k) {
      std::snprintf(buf, sizeof(buf), "%.17g", row.values[k]);
      out << ' ' << (row.indices[k] + 1) << ':' << buf;
    }
    out << '\n';
  }
}

Dataset normalize_rows(Dataset ds) {
  for (SparseRow& row : ds.rows) {
    const double sq = row.squared_norm();
    if (sq == 0.0) continue;
    const double inv = 1.0 / std::sqrt(sq);
    for (double& v : row.values) v *= inv;
  }
  return ds;
}

std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double test_fraction,
                                             std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ParameterError("train_test_split: test_fraction must be in (0,1)");
  }
  const std::size_t n = ds.rows.size();
  if (n < 2) throw ParameterError("train_test_split: need at least 2 rows");
  const auto test_count =
      static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(n)));
  if (test_count == 0 || test_count == n) {
    throw ParameterError("train_test_split: split leaves one side empty");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  RngStream rng(seed, StreamPurpose::kSplit);
  rng.shuffle(order);

  Dataset train, test;
  train.dimension = test.dimension = ds.dimension;
  train.name = ds.name + ":train";
  test.name = ds.name + ":test";
  for (std::size_t i = 0; i < n; ++i) {
    (i < test_count ? test : train).rows.push_back(ds.rows[order[i]]);
  }
  return {std::move(train), std::move(test)};
}

QuadraticObjective::QuadraticObjective(std::vector<ParamVector> centers)
    : centers_(std::move(centers)), dim_(centers_.empty() ? 0 : centers_.front().size()) {
  if (centers_.empty()) throw ParameterError("QuadraticObjective: need at least one center");
  for (const ParamVector& c : centers_) {
    if (c.size() != dim_) throw ParameterError("QuadraticObjective: inconsistent center sizes");
  }
}

double QuadraticObjective::component_value(const ParamVector& x, std::size_t i) const {
  check_component_args(x, i);
  return 0.5 * squared_distance(x, centers_[i]);
}

void QuadraticObjective::component_gradient(const ParamVector& x, std::size_t i,
                                            ParamVector& grad) const {
  check_component_args(x, i);
  grad.resize(dim_);
  const ParamVector& c = centers_[i];
  for (std::size_t j = 0; j < dim_; ++j) grad[j] = x[j] - c[j];
}

ParamVector QuadraticObjective::mean_center() const {
  ParamVector mean(dim_, 0.0);
  for (const ParamVector& c : centers_) axpy(1.0, c, mean);
  scale(1.0 / static_cast<double>(centers_.size()), mean);
  return mean;
}

QuadraticObjective synthetic_quadratic(std::size_t n, std::size_t p, std::uint64_t seed) {
  if (n == 0 || p == 0) throw ParameterError("synthetic_quadratic: n and p must be positive");
  RngStream rng(seed, StreamPurpose::kSynthetic);
  std::vector<ParamVector> centers(n, ParamVector(p));
  for (auto& c : centers) {
    for (double& v : c) v = rng.next_normal();
  }
  return QuadraticObjective(std::move(centers));
}

Dataset synthetic_logistic(std::size_t n, std::size_t p, std::uint64_t seed, double flip_prob) {
  if (n == 0 || p == 0) throw ParameterError("synthetic_logistic: n and p must be positive");
  RngStream rng(seed, StreamPurpose::kSynthetic);
  ParamVector separator(p);
  for (double& v : separator) v = rng.next_normal();

  Dataset ds;
  ds.dimension = p;
  ds.name = "synthetic-logistic";
  ds.rows.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    SparseRow row;
    row.indices.resize(p);
    row.values.resize(p);
    double sq = 0.0;
    for (std::size_t j = 0; j < p; ++j) {
      row.indices[j] = j;
      row.values[j] = rng.next_normal();
      sq += row.values[j] * row.values[j];
    }
    const double inv = sq > 0.0 ? 1.0 / std::sqrt(sq) : 0.0;
    for (double& v : row.values) v *= inv;
    double margin = 0.0;
    for (std::size_t j = 0; j < p; ++j) margin += row.values[j] * separator[j];
    row.label = margin >= 0.0 ? 1.0 : -1.0;
    if (rng.next_uniform01() < flip_prob) row.label = -row.label;
    ds.rows.push_back(std::move(row));
  }
  return ds;
}

}  // namespace hsgd
