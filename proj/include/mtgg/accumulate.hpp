#pragma once

#include <cstddef>
#include <span>

namespace mtgg {

// Kahan compensated accumulator for long sequential sums.
class KahanSum {
 public:
  void add(double x) {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Pairwise (fixed-tree) summation: the result depends only on the element
// order in `values`, never on how the work that produced them was scheduled.
inline double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct MeanAndStdErr {
  double mean;
  double std_err;  // +inf when fewer than two samples
};

MeanAndStdErr mean_and_std_err(std::span<const double> values);

}  // namespace mtgg
