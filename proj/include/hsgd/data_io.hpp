#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>

#include "hsgd/dataset.hpp"
#include "hsgd/problem.hpp"

namespace hsgd {

// Parses LibSVM text: "<label> <idx>:<val> ...", 1-based strictly increasing
// indices, '#' starts a comment, blank lines skipped. Labels {0,1} are mapped
// to {-1,+1}; {-1,+1} pass through. Throws ParseError with the line number.
Dataset parse_libsvm(std::istream& in, const std::string& name = "");

// Loads from a file path; gzip-compressed files are detected by magic bytes
// and inflated on the fly.
Dataset load_libsvm_file(const std::string& path);

// Writes rows back out in LibSVM text form (1-based indices, %.17g values).
void write_libsvm(const Dataset& ds, std::ostream& out);

// Scales each row to unit Euclidean norm; all-zero rows are left unchanged.
Dataset normalize_rows(Dataset ds);

// Deterministic seeded shuffle split. testFraction in (0,1); both sides must
// be nonempty.
std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double test_fraction,
                                             std::uint64_t seed);

// f_i(x) = 0.5 * ||x - c_i||^2 with explicit centers. Full gradient has the
// closed form x - mean(c); smoothness L = 1.
class QuadraticObjective final : public FiniteSumObjective {
 public:
  explicit QuadraticObjective(std::vector<ParamVector> centers);

  std::size_t component_count() const override { return centers_.size(); }
  std::size_t dimension() const override { return dim_; }
  double smoothness() const override { return 1.0; }

  double component_value(const ParamVector& x, std::size_t i) const override;
  void component_gradient(const ParamVector& x, std::size_t i, ParamVector& grad) const override;

  const std::vector<ParamVector>& centers() const { return centers_; }
  ParamVector mean_center() const;

 private:
  std::vector<ParamVector> centers_;
  std::size_t dim_;
};

// Seeded quadratic instance with standard-normal centers.
QuadraticObjective synthetic_quadratic(std::size_t n, std::size_t p, std::uint64_t seed);

// Seeded classification instance: unit-norm dense rows, labels from a planted
// separator with the given flip probability.
Dataset synthetic_logistic(std::size_t n, std::size_t p, std::uint64_t seed,
                           double flip_prob = 0.05);

}  // namespace hsgd
