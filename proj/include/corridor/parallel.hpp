#pragma once

#include <cmath>

namespace corridor {

// Neumaier compensated accumulator. Sums are always taken in a fixed element
// order, so serial and parallel evaluations agree bit for bit.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Applies CORRIDOR_OPT_THREADS (0 or unset = OpenMP default). Returns the
// thread count in effect.
int configure_threads_from_env();

int max_threads();

}  // namespace corridor
