#include "modwave/dsl/evaluate.h"

#include <cmath>
#include <numbers>
#include <utility>

namespace modwave::dsl {

void EvaluationContext::set_constant(std::string name, double value) {
  constants_[std::move(name)] = value;
}

void EvaluationContext::set_signal(std::string name, std::vector<double> samples) {
  signals_[std::move(name)] = std::move(samples);
}

const double* EvaluationContext::constant(std::string_view name) const {
  auto it = constants_.find(name);
  return it == constants_.end() ? nullptr : &it->second;
}

const std::vector<double>* EvaluationContext::signal(std::string_view name) const {
  auto it = signals_.find(name);
  return it == signals_.end() ? nullptr : &it->second;
}

namespace {

// Either a broadcast scalar or one value per grid sample.
struct Value {
  bool scalar = true;
  double s = 0.0;
  std::vector<double> v;

  static Value of(double x) { return {true, x, {}}; }
  static Value of(std::vector<double> xs) { return {false, 0.0, std::move(xs)}; }

  double at(std::size_t k) const { return scalar ? s : v[k]; }
};

class Evaluator {
 public:
  Evaluator(const EvaluationContext& ctx, const TimeGrid& grid, const EvaluationOptions& options)
      : ctx_(ctx), grid_(grid), options_(options) {}

  Value eval(const Expression& e) {
    switch (e.kind()) {
      case NodeKind::kConstant:
        return Value::of(e.value());
      case NodeKind::kSymbol:
        return lookup(e.name());
      case NodeKind::kNegate:
        return map(eval(e.child(0)), [](double x) { return -x; });
      case NodeKind::kAdd:
        return zip(eval(e.child(0)), eval(e.child(1)), [](double a, double b) { return a + b; });
      case NodeKind::kSubtract:
        return zip(eval(e.child(0)), eval(e.child(1)), [](double a, double b) { return a - b; });
      case NodeKind::kMultiply:
        return zip(eval(e.child(0)), eval(e.child(1)), [](double a, double b) { return a * b; });
      case NodeKind::kDivide:
        return divide(eval(e.child(0)), eval(e.child(1)));
      case NodeKind::kPower:
        return zip(eval(e.child(0)), eval(e.child(1)),
                   [](double a, double b) { return std::pow(a, b); });
      case NodeKind::kSin:
        return map(eval(e.child(0)), [](double x) { return std::sin(x); });
      case NodeKind::kCos:
        return map(eval(e.child(0)), [](double x) { return std::cos(x); });
      case NodeKind::kIntegral:
        return integrate(eval(e.child(0)));
      case NodeKind::kSum:
        return sum(e);
    }
    throw EvaluationError("unknown node kind");
  }

  std::size_t guard_count = 0;

 private:
  Value lookup(const std::string& name) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return Value::of(it->second);
    }
    if (name == "t") {
      std::vector<double> t(grid_.count);
      for (std::size_t k = 0; k < grid_.count; ++k) t[k] = grid_.at(k);
      return Value::of(std::move(t));
    }
    if (name == "pi") return Value::of(std::numbers::pi);
    if (const double* c = ctx_.constant(name)) return Value::of(*c);
    if (const auto* s = ctx_.signal(name)) {
      if (s->size() != grid_.count) {
        throw EvaluationError("signal '" + name + "' has " + std::to_string(s->size()) +
                              " samples, grid has " + std::to_string(grid_.count));
      }
      return Value::of(*s);
    }
    throw EvaluationError("symbol '" + name + "' is not bound");
  }

  template <typename F>
  Value map(Value a, F f) {
    if (a.scalar) return Value::of(f(a.s));
    for (double& x : a.v) x = f(x);
    return a;
  }

  template <typename F>
  Value zip(Value a, Value b, F f) {
    if (a.scalar && b.scalar) return Value::of(f(a.s, b.s));
    if (!a.scalar) {
      for (std::size_t k = 0; k < a.v.size(); ++k) a.v[k] = f(a.v[k], b.at(k));
      return a;
    }
    for (std::size_t k = 0; k < b.v.size(); ++k) b.v[k] = f(a.s, b.v[k]);
    return b;
  }

  // Guard counts are per grid sample, so a guarded scalar division counts
  // once for every sample it broadcasts to.
  Value divide(Value num, Value den) {
    const std::size_t weight = num.scalar && den.scalar ? grid_.count : 1;
    return zip(std::move(num), std::move(den), [this, weight](double a, double b) {
      if (options_.guard_division && std::abs(b) < options_.guard_epsilon) {
        guard_count += weight;
        return 0.0;
      }
      return a / b;
    });
  }

  Value integrate(Value body) {
    std::vector<double> out(grid_.count, 0.0);
    for (std::size_t k = 1; k < grid_.count; ++k) {
      out[k] = out[k - 1] + 0.5 * grid_.step_s * (body.at(k - 1) + body.at(k));
    }
    return Value::of(std::move(out));
  }

  long long integer_bound(const Value& v, const char* which) {
    const double x = v.at(0);
    if (!v.scalar) {
      for (double y : v.v) {
        if (y != x) throw EvaluationError(std::string("sum ") + which + " bound varies over time");
      }
    }
    if (!std::isfinite(x) || std::abs(x - std::round(x)) > 1e-9) {
      throw EvaluationError(std::string("sum ") + which + " bound is not an integer");
    }
    return std::llround(x);
  }

  Value sum(const Expression& e) {
    const long long lo = integer_bound(eval(e.child(1)), "lower");
    const long long hi = integer_bound(eval(e.child(2)), "upper");
    Value acc = Value::of(0.0);
    for (long long i = lo; i <= hi; ++i) {
      scope_.emplace_back(e.name(), static_cast<double>(i));
      Value term = eval(e.child(0));
      scope_.pop_back();
      acc = zip(std::move(acc), std::move(term), [](double a, double b) { return a + b; });
    }
    return acc;
  }

  const EvaluationContext& ctx_;
  const TimeGrid& grid_;
  const EvaluationOptions& options_;
  std::vector<std::pair<std::string, double>> scope_;
};

}  // namespace

EvaluationResult evaluate(const Expression& expr, const EvaluationContext& ctx,
                          const TimeGrid& grid, const EvaluationOptions& options) {
  if (grid.count == 0) throw EvaluationError("time grid is empty");
  Evaluator evaluator(ctx, grid, options);
  Value v = evaluator.eval(expr);

  EvaluationResult result;
  result.guard_count = evaluator.guard_count;
  result.samples = v.scalar ? std::vector<double>(grid.count, v.s) : std::move(v.v);
  for (std::size_t k = 0; k < result.samples.size(); ++k) {
    if (std::isfinite(result.samples[k])) continue;
    if (!options.guard_division) {
      throw EvaluationError("non-finite sample at index " + std::to_string(k));
    }
    if (result.invalid_mask.empty()) result.invalid_mask.assign(result.samples.size(), 0);
    result.invalid_mask[k] = 1;
    result.samples[k] = 0.0;
    ++result.invalid_count;
  }
  return result;
}

}  // namespace modwave::dsl
