#ifndef MODWAVE_DSL_EVALUATE_H_
#define MODWAVE_DSL_EVALUATE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "modwave/dsl/expression.h"

namespace modwave::dsl {

// Uniform sampling instants start + k * step, k = 0 .. count-1.
struct TimeGrid {
  double start_s = 0.0;
  double step_s = 1.0;
  std::size_t count = 0;

  double at(std::size_t k) const { return start_s + static_cast<double>(k) * step_s; }
  static TimeGrid from_rate(double sample_rate_hz, std::size_t count) {
    return {0.0, 1.0 / sample_rate_hz, count};
  }
};

// Bindings for every symbol a formula references, except `t` (taken from
// the grid) and `pi`.
class EvaluationContext {
 public:
  void set_constant(std::string name, double value);
  // `samples` must be aligned with the grid the context is evaluated on.
  void set_signal(std::string name, std::vector<double> samples);

  const double* constant(std::string_view name) const;
  const std::vector<double>* signal(std::string_view name) const;

  const std::map<std::string, double, std::less<>>& constants() const { return constants_; }
  const std::map<std::string, std::vector<double>, std::less<>>& signals() const {
    return signals_;
  }

 private:
  std::map<std::string, double, std::less<>> constants_;
  std::map<std::string, std::vector<double>, std::less<>> signals_;
};

class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EvaluationOptions {
  // Division by |x| < guard_epsilon yields 0 and bumps guard_count.
  // Non-finite results are zeroed and masked. With guarding off both
  // conditions raise EvaluationError.
  bool guard_division = true;
  double guard_epsilon = 1e-12;
};

struct EvaluationResult {
  std::vector<double> samples;
  std::vector<std::uint8_t> invalid_mask;  // empty when every sample is finite
  std::size_t guard_count = 0;
  std::size_t invalid_count = 0;
};

// Sample-wise evaluation. `integral(body, t)` is the running trapezoid from
// the first grid instant with zero initial value; `sum(body, i, lo, hi)`
// substitutes i = lo..hi (bounds must be integer constants).
EvaluationResult evaluate(const Expression& expr, const EvaluationContext& ctx,
                          const TimeGrid& grid, const EvaluationOptions& options = {});

}  // namespace modwave::dsl

#endif  // MODWAVE_DSL_EVALUATE_H_
