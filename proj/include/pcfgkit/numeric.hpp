#ifndef PCFGKIT_NUMERIC_HPP_
#define PCFGKIT_NUMERIC_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace pcfgkit {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without leaving log space.
inline double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    if (a < b) std::swap(a, b);
    return a + std::log1p(std::exp(b - a));
}

inline double log_sum(std::span<const double> xs) {
    double m = kNegInf;
    for (double x : xs) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : xs) s += std::exp(x - m);
    return m + std::log(s);
}

// Streaming log-sum-exp accumulator.
class LogSumAccumulator {
  public:
    void add(double log_x) { total_ = log_add(total_, log_x); }
    double value() const { return total_; }
    bool empty() const { return total_ == kNegInf; }

  private:
    double total_ = kNegInf;
};

}  // namespace pcfgkit

#endif  // PCFGKIT_NUMERIC_HPP_
