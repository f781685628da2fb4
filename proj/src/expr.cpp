#include "xmo/expr.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>

namespace xmo {

ParseError::ParseError(const std::string& message, std::size_t position, std::vector<std::string> expected)
    : PreconditionError(message + " at position " + std::to_string(position)),
      position_(position),
      expected_(std::move(expected)) {}

bool ExprNode::operator==(const ExprNode& other) const {
  if (kind != other.kind || args.size() != other.args.size()) return false;
  switch (kind) {
    case Kind::Number:
      if (value != other.value) return false;
      break;
    case Kind::Constant:
    case Kind::Call:
      if (name != other.name) return false;
      break;
    case Kind::Variable:
      if (variable != other.variable) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < args.size(); ++i)
    if (!(*args[i] == *other.args[i])) return false;
  return true;
}

namespace {

using Kind = ExprNode::Kind;

int function_arity(const std::string& name) {
  static const char* unary[] = {"sin", "cos", "exp", "log", "abs", "sqrt", "sign"};
  static const char* binary[] = {"pow", "min", "max"};
  for (const char* u : unary)
    if (name == u) return 1;
  for (const char* b : binary)
    if (name == b) return 2;
  if (name == "piecewise") return 4;
  return -1;
}

std::optional<double> constant_value(const std::string& name) {
  if (name == "pi") return std::numbers::pi;
  if (name == "e") return std::numbers::e;
  return std::nullopt;
}

ExprPtr make(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    for (std::size_t i = 0; i < text_.size(); ++i)
      if (static_cast<unsigned char>(text_[i]) > 127) throw ParseError("non-ASCII character", i);
    skip_space();
    if (pos_ == text_.size()) throw ParseError("empty expression", 0, {"expression"});
    ExprPtr root = expr();
    skip_space();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_, {"+", "-", "*", "/", "end of input"});
    return root;
  }

  int max_variable() const { return max_var_; }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, std::vector<std::string> expected) {
    if (!accept(c)) throw ParseError(std::string("expected '") + c + "'", pos_, std::move(expected));
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      if (accept('+')) {
        lhs = make({Kind::Add, 0, 0, {}, {lhs, term()}});
      } else if (accept('-')) {
        lhs = make({Kind::Sub, 0, 0, {}, {lhs, term()}});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    for (;;) {
      if (accept('*')) {
        lhs = make({Kind::Mul, 0, 0, {}, {lhs, factor()}});
      } else if (accept('/')) {
        lhs = make({Kind::Div, 0, 0, {}, {lhs, factor()}});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr factor() {
    skip_space();
    static const std::vector<std::string> kFactorStart = {"number", "variable", "function", "constant", "(", "-"};
    if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_, kFactorStart);
    const char c = text_[pos_];
    if (c == '-') {
      ++pos_;
      return make({Kind::Negate, 0, 0, {}, {factor()}});
    }
    if (c == '(') {
      ++pos_;
      ExprPtr inner = expr();
      expect(')', {")"});
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
    throw ParseError(std::string("unexpected character '") + c + "'", pos_, kFactorStart);
  }

  ExprPtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t count = digits();
    if (pos_ < text_.size() && text_[pos_] == '.') {
      ++pos_;
      count += digits();
    }
    if (count == 0) throw ParseError("malformed number", start, {"digit"});
    // Exponent only when a digit follows, so "2e" is not swallowed.
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        digits();
      }
    }
    const std::string literal(text_.substr(start, pos_ - start));
    const double v = std::strtod(literal.c_str(), nullptr);
    if (!std::isfinite(v)) throw ParseError("number out of range", start, {"finite number"});
    return make({Kind::Number, v, 0, {}, {}});
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    const std::string name(text_.substr(start, pos_ - start));

    if (name.size() >= 2 && name[0] == 'x' &&
        std::all_of(name.begin() + 1, name.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      const int index = std::stoi(name.substr(1));
      if (index < 1 || index > kMaxDim)
        throw ParseError("variable index out of range: " + name, start, {"x1..x" + std::to_string(kMaxDim)});
      max_var_ = std::max(max_var_, index);
      return make({Kind::Variable, 0, index, {}, {}});
    }
    if (auto v = constant_value(name)) return make({Kind::Constant, *v, 0, name, {}});

    const int arity = function_arity(name);
    if (arity < 0) throw ParseError("unknown identifier '" + name + "'", start, {"variable", "function", "constant"});
    expect('(', {"("});
    std::vector<ExprPtr> args{expr()};
    while (accept(',')) args.push_back(expr());
    expect(')', {",", ")"});
    if (static_cast<int>(args.size()) != arity)
      throw ParseError("function '" + name + "' takes " + std::to_string(arity) + " argument(s), got " +
                           std::to_string(args.size()),
                       start);
    return make({Kind::Call, 0, 0, name, std::move(args)});
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int max_var_ = 0;
};

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw DomainError(std::string("non-finite result in ") + what);
  return v;
}

double eval(const ExprNode& node, std::span<const double> x) {
  switch (node.kind) {
    case Kind::Number:
    case Kind::Constant:
      return node.value;
    case Kind::Variable:
      if (node.variable > static_cast<int>(x.size()))
        throw PreconditionError("point has fewer coordinates than x" + std::to_string(node.variable));
      return x[node.variable - 1];
    case Kind::Negate:
      return -eval(*node.args[0], x);
    case Kind::Add:
      return checked(eval(*node.args[0], x) + eval(*node.args[1], x), "+");
    case Kind::Sub:
      return checked(eval(*node.args[0], x) - eval(*node.args[1], x), "-");
    case Kind::Mul:
      return checked(eval(*node.args[0], x) * eval(*node.args[1], x), "*");
    case Kind::Div: {
      const double num = eval(*node.args[0], x);
      const double den = eval(*node.args[1], x);
      if (den == 0.0) throw DomainError("division by zero");
      return checked(num / den, "/");
    }
    case Kind::Call:
      break;
  }
  const std::string& f = node.name;
  if (f == "piecewise") {
    const double t = eval(*node.args[0], x);
    const double r = eval(*node.args[1], x);
    return std::abs(t) < r ? eval(*node.args[2], x) : eval(*node.args[3], x);
  }
  const double a = eval(*node.args[0], x);
  if (f == "sin") return std::sin(a);
  if (f == "cos") return std::cos(a);
  if (f == "exp") return checked(std::exp(a), "exp");
  if (f == "abs") return std::abs(a);
  if (f == "sign") return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0);
  if (f == "log") {
    if (!(a > 0.0)) throw DomainError("log of nonpositive value");
    return std::log(a);
  }
  if (f == "sqrt") {
    if (a < 0.0) throw DomainError("sqrt of negative value");
    return std::sqrt(a);
  }
  const double b = eval(*node.args[1], x);
  if (f == "min") return std::min(a, b);
  if (f == "max") return std::max(a, b);
  if (f == "pow") return checked(std::pow(a, b), "pow");
  throw PreconditionError("unknown function " + f);
}

void print(const ExprNode& node, std::string& out) {
  auto binary = [&](const char* op) {
    out += '(';
    print(*node.args[0], out);
    out += op;
    print(*node.args[1], out);
    out += ')';
  };
  switch (node.kind) {
    case Kind::Number: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", node.value);
      out += buf;
      return;
    }
    case Kind::Constant:
      out += node.name;
      return;
    case Kind::Variable:
      out += 'x' + std::to_string(node.variable);
      return;
    case Kind::Negate:
      out += "(-";
      print(*node.args[0], out);
      out += ')';
      return;
    case Kind::Add:
      return binary(" + ");
    case Kind::Sub:
      return binary(" - ");
    case Kind::Mul:
      return binary(" * ");
    case Kind::Div:
      return binary(" / ");
    case Kind::Call:
      out += node.name;
      out += '(';
      for (std::size_t i = 0; i < node.args.size(); ++i) {
        if (i) out += ", ";
        print(*node.args[i], out);
      }
      out += ')';
      return;
  }
}

bool uses_variables(const ExprNode& node) {
  if (node.kind == Kind::Variable) return true;
  return std::any_of(node.args.begin(), node.args.end(), [](const ExprPtr& a) { return uses_variables(*a); });
}

}  // namespace

FunctionSpec::FunctionSpec(ExprPtr root, int dim) : root_(std::move(root)), dim_(dim) {
  if (!root_) throw PreconditionError("null expression");
  if (dim_ < 1 || dim_ > kMaxDim) throw PreconditionError("function dimension out of range");
}

double FunctionSpec::evaluate(std::span<const double> x) const { return eval(*root_, x); }

std::string FunctionSpec::to_string() const {
  std::string out;
  print(*root_, out);
  return out;
}

FunctionSpec parse_function(std::string_view text, int min_dim) {
  Parser parser(text);
  ExprPtr root = parser.parse();
  return FunctionSpec(std::move(root), std::max({1, min_dim, parser.max_variable()}));
}

double parse_number(std::string_view text) {
  // Juxtaposition such as "2pi" or "3e" means multiplication.
  std::string rewritten;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const bool after_digit = !rewritten.empty() && (std::isdigit(static_cast<unsigned char>(rewritten.back())) ||
                                                    rewritten.back() == '.');
    if (after_digit && text.substr(i, 2) == "pi") {
      rewritten += "*pi";
      ++i;
      continue;
    }
    if (after_digit && c == 'e') {
      const char next = i + 1 < text.size() ? text[i + 1] : '\0';
      const bool exponent = std::isdigit(static_cast<unsigned char>(next)) ||
                            ((next == '+' || next == '-') && i + 2 < text.size() &&
                             std::isdigit(static_cast<unsigned char>(text[i + 2])));
      if (!exponent) {
        rewritten += "*e";
        continue;
      }
    }
    rewritten += c;
  }
  const FunctionSpec spec = parse_function(rewritten);
  if (uses_variables(spec.root()))
    throw PreconditionError("numeric literal may not contain variables: " + std::string(text));
  const double zero = 0.0;
  return spec.evaluate(std::span<const double>(&zero, 1));
}

}  // namespace xmo
