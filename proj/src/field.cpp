#include "xmo/field.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace xmo {

namespace {

std::vector<std::vector<double>> normalized(std::vector<std::vector<double>> bps, int dim) {
  bps.resize(static_cast<std::size_t>(dim));
  for (auto& axis : bps) {
    std::sort(axis.begin(), axis.end());
    axis.erase(std::unique(axis.begin(), axis.end()), axis.end());
  }
  return bps;
}

std::vector<std::vector<double>> merged(const Field& a, const Field& b) {
  std::vector<std::vector<double>> out(static_cast<std::size_t>(a.dim()));
  for (int i = 0; i < a.dim(); ++i) {
    out[i] = a.breakpoints(i);
    out[i].insert(out[i].end(), b.breakpoints(i).begin(), b.breakpoints(i).end());
  }
  return out;
}

// a * x_var + b, with var == 0 for a constant.
struct Affine {
  int var = 0;
  double a = 0.0;
  double b = 0.0;
};

std::optional<Affine> as_affine(const ExprNode& node) {
  using Kind = ExprNode::Kind;
  switch (node.kind) {
    case Kind::Number:
    case Kind::Constant:
      return Affine{0, 0.0, node.value};
    case Kind::Variable:
      return Affine{node.variable, 1.0, 0.0};
    case Kind::Negate: {
      auto u = as_affine(*node.args[0]);
      if (!u) return std::nullopt;
      return Affine{u->var, -u->a, -u->b};
    }
    case Kind::Add:
    case Kind::Sub: {
      auto l = as_affine(*node.args[0]);
      auto r = as_affine(*node.args[1]);
      if (!l || !r) return std::nullopt;
      if (l->var && r->var && l->var != r->var) return std::nullopt;
      const double s = node.kind == Kind::Add ? 1.0 : -1.0;
      return Affine{std::max(l->var, r->var), l->a + s * r->a, l->b + s * r->b};
    }
    case Kind::Mul: {
      auto l = as_affine(*node.args[0]);
      auto r = as_affine(*node.args[1]);
      if (!l || !r) return std::nullopt;
      if (l->var == 0) return Affine{r->var, l->b * r->a, l->b * r->b};
      if (r->var == 0) return Affine{l->var, r->b * l->a, r->b * l->b};
      return std::nullopt;
    }
    case Kind::Div: {
      auto l = as_affine(*node.args[0]);
      auto r = as_affine(*node.args[1]);
      if (!l || !r || r->var != 0 || r->b == 0.0) return std::nullopt;
      return Affine{l->var, l->a / r->b, l->b / r->b};
    }
    case Kind::Call:
      return std::nullopt;
  }
  return std::nullopt;
}

void collect_breakpoints(const ExprNode& node, std::vector<std::vector<double>>& out) {
  using Kind = ExprNode::Kind;
  if (node.kind == Kind::Call && (node.name == "piecewise" || node.name == "sign")) {
    auto t = as_affine(*node.args[0]);
    if (t && t->var > 0 && t->a != 0.0) {
      auto& axis = out[static_cast<std::size_t>(t->var - 1)];
      if (node.name == "sign") {
        axis.push_back(-t->b / t->a);
      } else if (auto r = as_affine(*node.args[1]); r && r->var == 0) {
        axis.push_back((r->b - t->b) / t->a);
        axis.push_back((-r->b - t->b) / t->a);
      }
    }
  }
  for (const auto& arg : node.args) collect_breakpoints(*arg, out);
}

}  // namespace

Field::Field(int dim, Eval eval, std::string label, std::vector<std::vector<double>> breakpoints)
    : dim_(dim), eval_(std::move(eval)), label_(std::move(label)), breakpoints_(normalized(std::move(breakpoints), dim)) {
  if (dim_ < 1 || dim_ > kMaxDim) throw PreconditionError("field dimension out of range");
  if (!eval_) throw PreconditionError("field has no evaluator");
}

Field field_from_spec(const FunctionSpec& spec, int dim) {
  const int d = std::max(dim, spec.dim());
  std::vector<std::vector<double>> bps(static_cast<std::size_t>(d));
  collect_breakpoints(spec.root(), bps);
  return Field(
      d, [spec](std::span<const double> x) { return spec.evaluate(x); }, spec.to_string(), std::move(bps));
}

Field operator-(const Field& a, const Field& b) {
  if (a.dim() != b.dim()) throw PreconditionError("field dimension mismatch");
  return Field(
      a.dim(), [a, b](std::span<const double> x) { return a(x) - b(x); }, "(" + a.label() + ") - (" + b.label() + ")",
      merged(a, b));
}

Field operator*(const Field& a, const Field& b) {
  if (a.dim() != b.dim()) throw PreconditionError("field dimension mismatch");
  return Field(
      a.dim(), [a, b](std::span<const double> x) { return a(x) * b(x); }, "(" + a.label() + ") * (" + b.label() + ")",
      merged(a, b));
}

Field affine(const Field& f, double alpha, double c) {
  std::vector<std::vector<double>> bps(static_cast<std::size_t>(f.dim()));
  for (int i = 0; i < f.dim(); ++i) bps[i] = f.breakpoints(i);
  return Field(
      f.dim(), [f, alpha, c](std::span<const double> x) { return alpha * f(x) + c; },
      std::to_string(alpha) + " * (" + f.label() + ") + " + std::to_string(c), std::move(bps));
}

Field abs(const Field& f) {
  std::vector<std::vector<double>> bps(static_cast<std::size_t>(f.dim()));
  for (int i = 0; i < f.dim(); ++i) bps[i] = f.breakpoints(i);
  return Field(
      f.dim(), [f](std::span<const double> x) { return std::abs(f(x)); }, "abs(" + f.label() + ")", std::move(bps));
}

Field translated(const Field& f, std::span<const double> t) {
  if (static_cast<int>(t.size()) != f.dim()) throw PreconditionError("translation dimension mismatch");
  Point shift(t.begin(), t.end());
  std::vector<std::vector<double>> bps(static_cast<std::size_t>(f.dim()));
  for (int i = 0; i < f.dim(); ++i)
    for (double b : f.breakpoints(i)) bps[i].push_back(b + shift[i]);
  return Field(
      f.dim(),
      [f, shift](std::span<const double> x) {
        double y[kMaxDim];
        for (std::size_t i = 0; i < shift.size(); ++i) y[i] = x[i] - shift[i];
        return f(std::span<const double>(y, shift.size()));
      },
      f.label() + " shifted", std::move(bps));
}

}  // namespace xmo
