#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "pompeiu/types.hpp"

namespace pompeiu {

/// Global worker count. 0 means hardware concurrency. Results never depend on
/// it: all reductions sum fixed-size chunk partials in chunk order.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs fn(i) for i in [0, n) on the worker pool. fn must be pure per index.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Neumaier compensated accumulator for real doubles.
class CompensatedSum {
  public:
    void add(double x) {
        double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class CompensatedComplexSum {
  public:
    void add(Complex z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    Complex value() const { return {re_.value(), im_.value()}; }

  private:
    CompensatedSum re_, im_;
};

/// Deterministic chunked reduction: evaluates term(i) for i in [0, n), sums
/// each fixed-size chunk sequentially, then folds the chunk partials in chunk
/// order. Identical output for any worker count.
Complex reduce_complex(std::size_t n, const std::function<Complex(std::size_t)>& term,
                       std::size_t chunk = 1024);

}  // namespace pompeiu
