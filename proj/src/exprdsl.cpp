#include "blowup/exprdsl.hpp"

#include "blowup/errors.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <sstream>

namespace blowup::expr {

ParseError::ParseError(const std::string& what, std::size_t offset,
                       std::vector<std::string> expected)
    : std::runtime_error(what), offset_(offset), expected_(std::move(expected)) {}

EvalError::EvalError(const std::string& what, std::string subexpression)
    : std::runtime_error(what + " in '" + subexpression + "'"),
      subexpression_(std::move(subexpression)) {}

namespace {

struct FuncName {
  std::string_view name;
  Func func;
};

constexpr FuncName kFunctions[] = {
    {"sin", Func::Sin},   {"cos", Func::Cos},   {"exp", Func::Exp},
    {"log", Func::Log},   {"sqrt", Func::Sqrt}, {"abs", Func::Abs},
};

std::optional<Func> lookup_function(std::string_view name) {
  for (const auto& f : kFunctions) {
    if (f.name == name) return f.func;
  }
  return std::nullopt;
}

std::string_view function_name(Func f) {
  for (const auto& entry : kFunctions) {
    if (entry.func == f) return entry.name;
  }
  return "?";
}

char op_char(BinaryOp op) {
  switch (op) {
  case BinaryOp::Add: return '+';
  case BinaryOp::Sub: return '-';
  case BinaryOp::Mul: return '*';
  case BinaryOp::Div: return '/';
  case BinaryOp::Pow: return '^';
  }
  return '?';
}

NodePtr make(auto&& alt) { return std::make_shared<const Node>(Node{std::forward<decltype(alt)>(alt)}); }

const std::vector<std::string> kOperandStart = {"number", "name", "'('", "'-'"};

class Parser {
public:
  explicit Parser(std::string_view src) : src_(src) {}

  NodePtr parse_all() {
    NodePtr root = expr();
    skip_ws();
    if (pos_ != src_.size()) {
      fail("unexpected '" + std::string(1, src_[pos_]) + "'",
           {"operator", "end of input"});
    }
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected) {
    std::ostringstream os;
    os << "syntax error at offset " << pos_ << ": " << msg;
    if (!expected.empty()) {
      os << " (expected ";
      for (std::size_t i = 0; i < expected.size(); ++i) os << (i ? ", " : "") << expected[i];
      os << ")";
    }
    throw ParseError(os.str(), pos_, std::move(expected));
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  NodePtr expr() {
    NodePtr lhs = term();
    for (;;) {
      if (accept('+')) lhs = make(Binary{BinaryOp::Add, lhs, term()});
      else if (accept('-')) lhs = make(Binary{BinaryOp::Sub, lhs, term()});
      else return lhs;
    }
  }

  NodePtr term() {
    NodePtr lhs = unary();
    for (;;) {
      if (accept('*')) lhs = make(Binary{BinaryOp::Mul, lhs, unary()});
      else if (accept('/')) lhs = make(Binary{BinaryOp::Div, lhs, unary()});
      else return lhs;
    }
  }

  NodePtr unary() {
    if (accept('-')) return make(Negate{unary()});
    return power();
  }

  NodePtr power() {
    NodePtr base = primary();
    if (accept('^')) return make(Binary{BinaryOp::Pow, base, unary()});
    return base;
  }

  NodePtr primary() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input", kOperandStart);
    const char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name_or_call();
    if (accept('(')) {
      NodePtr inner = expr();
      if (!accept(')')) fail("missing ')'", {"')'"});
      return inner;
    }
    fail("unexpected '" + std::string(1, c) + "'", kOperandStart);
  }

  NodePtr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t mantissa = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      mantissa += digits();
    }
    if (mantissa == 0) {
      pos_ = start;
      fail("malformed number", {"digit"});
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail("malformed exponent", {"digit"});
    }
    double value = 0.0;
    const auto text = src_.substr(start, pos_ - start);
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
      pos_ = start;
      fail("number out of range", {"number"});
    }
    return make(Number{value});
  }

  NodePtr name_or_call() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
      ++pos_;
    }
    std::string id(src_.substr(start, pos_ - start));
    const auto func = lookup_function(id);
    skip_ws();
    const bool call = pos_ < src_.size() && src_[pos_] == '(';
    if (call) {
      if (!func) {
        std::vector<std::string> known;
        for (const auto& f : kFunctions) known.emplace_back(f.name);
        throw UnknownFunctionError("unknown function '" + id + "' at offset " +
                                       std::to_string(start),
                                   start, std::move(known));
      }
      ++pos_;
      NodePtr arg = expr();
      if (!accept(')')) fail("missing ')' after argument of " + id, {"')'"});
      return make(Call{*func, arg});
    }
    if (func) fail("function '" + id + "' needs an argument", {"'('"});
    return make(Name{std::move(id)});
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void collect_names(const Node& n, std::set<std::string>& out) {
  std::visit(
      [&](const auto& alt) {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, Name>) {
          out.insert(alt.id);
        } else if constexpr (std::is_same_v<T, Negate>) {
          collect_names(*alt.operand, out);
        } else if constexpr (std::is_same_v<T, Binary>) {
          collect_names(*alt.lhs, out);
          collect_names(*alt.rhs, out);
        } else if constexpr (std::is_same_v<T, Call>) {
          collect_names(*alt.arg, out);
        }
      },
      n.v);
}

struct Evaluator {
  double s;
  double t;
  const ParamBinding& params;

  [[noreturn]] void domain(const Node& n, const std::string& what) const {
    throw EvalError(what, print(n));
  }

  double operator()(const Node& n) const {
    const double v = std::visit([&](const auto& alt) { return this->apply(n, alt); }, n.v);
    if (std::isnan(v)) domain(n, "result is not a number");
    return v;
  }

  double apply(const Node&, const Number& num) const { return num.value; }

  double apply(const Node& n, const Name& name) const {
    if (name.id == "s") return s;
    if (name.id == "t") return t;
    const auto it = params.find(name.id);
    if (it == params.end()) throw UnboundParameterError("unbound parameter", print(n));
    return it->second;
  }

  double apply(const Node&, const Negate& neg) const { return -(*this)(*neg.operand); }

  double apply(const Node& n, const Binary& b) const {
    const double l = (*this)(*b.lhs);
    const double r = (*this)(*b.rhs);
    switch (b.op) {
    case BinaryOp::Add: return l + r;
    case BinaryOp::Sub: return l - r;
    case BinaryOp::Mul: return l * r;
    case BinaryOp::Div:
      if (r == 0.0) domain(n, "division by zero");
      return l / r;
    case BinaryOp::Pow:
      if (l == 0.0 && r < 0.0) domain(n, "zero to a negative power");
      if (l < 0.0 && std::isfinite(r) && std::trunc(r) != r) {
        domain(n, "negative base to a non-integer power");
      }
      return std::pow(l, r);
    }
    return 0.0;
  }

  double apply(const Node& n, const Call& c) const {
    const double x = (*this)(*c.arg);
    switch (c.func) {
    case Func::Sin: return std::sin(x);
    case Func::Cos: return std::cos(x);
    case Func::Exp: return std::exp(x);
    case Func::Log:
      if (!(x > 0.0)) domain(n, "log of a non-positive number");
      return std::log(x);
    case Func::Sqrt:
      if (x < 0.0) domain(n, "sqrt of a negative number");
      return std::sqrt(x);
    case Func::Abs: return std::abs(x);
    }
    return 0.0;
  }
};

} // namespace

std::string print(const Node& node) {
  return std::visit(
      [](const auto& alt) -> std::string {
        using T = std::decay_t<decltype(alt)>;
        if constexpr (std::is_same_v<T, Number>) {
          return format_number(alt.value);
        } else if constexpr (std::is_same_v<T, Name>) {
          return alt.id;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return "(-" + print(*alt.operand) + ")";
        } else if constexpr (std::is_same_v<T, Binary>) {
          return "(" + print(*alt.lhs) + op_char(alt.op) + print(*alt.rhs) + ")";
        } else {
          return std::string(function_name(alt.func)) + "(" + print(*alt.arg) + ")";
        }
      },
      node.v);
}

bool structurally_equal(const Node& a, const Node& b) {
  if (a.v.index() != b.v.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.v);
        if constexpr (std::is_same_v<T, Number>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<T, Name>) {
          return x.id == y.id;
        } else if constexpr (std::is_same_v<T, Negate>) {
          return structurally_equal(*x.operand, *y.operand);
        } else if constexpr (std::is_same_v<T, Binary>) {
          return x.op == y.op && structurally_equal(*x.lhs, *y.lhs) &&
                 structurally_equal(*x.rhs, *y.rhs);
        } else {
          return x.func == y.func && structurally_equal(*x.arg, *y.arg);
        }
      },
      a.v);
}

std::string CoeffExpr::print() const { return root_ ? expr::print(*root_) : std::string(); }

std::set<std::string> CoeffExpr::parameters() const {
  std::set<std::string> names;
  if (root_) collect_names(*root_, names);
  names.erase("s");
  names.erase("t");
  return names;
}

bool CoeffExpr::mentions(std::string_view name) const {
  std::set<std::string> names;
  if (root_) collect_names(*root_, names);
  return names.count(std::string(name)) > 0;
}

bool operator==(const CoeffExpr& a, const CoeffExpr& b) {
  if (!a.root_ || !b.root_) return a.root_ == b.root_;
  return structurally_equal(*a.root_, *b.root_);
}

CoeffExpr parse(std::string_view source) { return CoeffExpr(Parser(source).parse_all()); }

double eval(const CoeffExpr& expr, double s, double t, const ParamBinding& params) {
  if (!expr.root()) throw EvalError("empty expression", "");
  return Evaluator{s, t, params}(*expr.root());
}

std::optional<Counterexample> positivity_scan(const CoeffExpr& expr, const ParamBinding& params,
                                              Range s_range, Range t_range, int n) {
  if (n < 2) throw DomainError("positivity_scan needs n >= 2");
  if (!(s_range.lo > 0 && s_range.hi >= s_range.lo && t_range.lo > 0 &&
        t_range.hi >= t_range.lo)) {
    throw DomainError("positivity_scan ranges must be positive and ordered");
  }
  auto node = [n](Range r, int i) {
    const double f = static_cast<double>(i) / static_cast<double>(n - 1);
    return r.lo * std::pow(r.hi / r.lo, f);
  };
  for (int i = 0; i < n; ++i) {
    const double s = node(s_range, i);
    for (int j = 0; j < n; ++j) {
      const double t = node(t_range, j);
      try {
        const double v = eval(expr, s, t, params);
        if (!std::isfinite(v)) return Counterexample{s, t, "non-finite value"};
        if (v <= 0.0) return Counterexample{s, t, "non-positive value " + format_number(v)};
      } catch (const EvalError& e) {
        return Counterexample{s, t, e.what()};
      }
    }
  }
  return std::nullopt;
}

} // namespace blowup::expr
