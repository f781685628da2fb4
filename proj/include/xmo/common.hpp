#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace xmo {

/// Point in R^n. Dimension is carried by size().
using Point = std::vector<double>;

/// Upper bound on the ambient dimension for stack buffers in hot loops.
inline constexpr int kMaxDim = 4;

inline constexpr const char* kVersion = "xmo-toolkit 0.1.0";

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A caller violated an operation's precondition (bad parameters, bad shapes).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// A numeric evaluation left its domain (log of nonpositive, division by zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Number of worker threads used by scans. Defaults to 1.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [0, count). Each index is handled by exactly one
/// worker; callers write results by index so the output does not depend on
/// the thread count.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Pairwise summation in a fixed tree order.
double pairwise_sum(std::span<const double> values);

/// Euclidean norm.
double norm2(std::span<const double> x);

/// Least-squares slope of y against x.
double regression_slope(std::span<const double> x, std::span<const double> y);

}  // namespace xmo
