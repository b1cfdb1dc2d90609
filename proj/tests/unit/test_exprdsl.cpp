#include "blowup/exprdsl.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

using namespace blowup::expr;

namespace {

NodePtr num(double v) { return std::make_shared<const Node>(Node{Number{v}}); }
NodePtr name(std::string id) { return std::make_shared<const Node>(Node{Name{std::move(id)}}); }
NodePtr neg(NodePtr a) { return std::make_shared<const Node>(Node{Negate{std::move(a)}}); }
NodePtr bin(BinaryOp op, NodePtr a, NodePtr b) {
  return std::make_shared<const Node>(Node{Binary{op, std::move(a), std::move(b)}});
}
NodePtr call(Func f, NodePtr a) { return std::make_shared<const Node>(Node{Call{f, std::move(a)}}); }

NodePtr random_tree(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 4);
  static const double numbers[] = {0.0, 1.0, 2.5, 1e-5, 123.25, 6.02e23, 0.1};
  static const char* names[] = {"s", "t", "p", "a", "beta2"};
  switch (pick(rng)) {
    case 0: return num(numbers[std::uniform_int_distribution<int>(0, 6)(rng)]);
    case 1: return name(names[std::uniform_int_distribution<int>(0, 4)(rng)]);
    case 2: return neg(random_tree(rng, depth - 1));
    case 3: {
      const auto op = static_cast<BinaryOp>(std::uniform_int_distribution<int>(0, 4)(rng));
      return bin(op, random_tree(rng, depth - 1), random_tree(rng, depth - 1));
    }
    default: {
      const auto f = static_cast<Func>(std::uniform_int_distribution<int>(0, 5)(rng));
      return call(f, random_tree(rng, depth - 1));
    }
  }
}

const ParamBinding kNone;

} // namespace

TEST_CASE("golden precedence") {
  CHECK(eval(parse("2+3*4^2"), 0, 0, kNone) == 50.0);
  CHECK(eval(parse("-2^2"), 0, 0, kNone) == -4.0);
  CHECK(eval(parse("2^3^2"), 0, 0, kNone) == 512.0);
  CHECK(eval(parse("s^-1"), 4, 0, kNone) == 0.25);
  CHECK(eval(parse("8/4/2"), 0, 0, kNone) == 1.0);
  CHECK(eval(parse("10-4-3"), 0, 0, kNone) == 3.0);
  CHECK(eval(parse("--3"), 0, 0, kNone) == 3.0);
}

TEST_CASE("scenario coefficients parse to the intended trees") {
  const auto a1 = parse("s^(p-1)*(1+t)");
  const auto expected = bin(BinaryOp::Mul,
                            bin(BinaryOp::Pow, name("s"), bin(BinaryOp::Sub, name("p"), num(1))),
                            bin(BinaryOp::Add, num(1), name("t")));
  CHECK(structurally_equal(*a1.root(), *expected));
  CHECK(a1.parameters() == std::set<std::string>{"p"});

  const auto a3 = parse("2+sin(s)");
  CHECK(structurally_equal(*a3.root(), *bin(BinaryOp::Add, num(2), call(Func::Sin, name("s")))));
  CHECK(a3.parameters().empty());
  CHECK(a3.mentions("s"));
  CHECK_FALSE(a3.mentions("t"));
}

TEST_CASE("whitespace is insignificant") {
  CHECK(parse(" s ^ ( p - 1 )\t* ( 1 + t ) ") == parse("s^(p-1)*(1+t)"));
}

TEST_CASE("syntax errors carry offset and expectations") {
  try {
    parse("s + * t");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
    CHECK_FALSE(e.expected().empty());
  }
  CHECK_THROWS_AS(parse("2s"), ParseError);
  CHECK_THROWS_AS(parse("(s+t"), ParseError);
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("s+"), ParseError);
  CHECK_THROWS_AS(parse("s $ t"), ParseError);
  CHECK_THROWS_AS(parse("tan(s)"), UnknownFunctionError);
}

TEST_CASE("evaluation") {
  CHECK(eval(parse("s+t"), 2, 3, kNone) == 5.0);
  CHECK(eval(parse("s^p*((t-a)^2+b)"), 1, 1, {{"a", 1}, {"b", 2}, {"p", 3}}) == 2.0);
  CHECK(eval(parse("sqrt(abs(-16))"), 0, 0, kNone) == 4.0);
  CHECK(eval(parse("exp(log(s))"), 7, 0, kNone) == doctest::Approx(7.0).epsilon(1e-15));
  CHECK(eval(parse("cos(0)"), 0, 0, kNone) == 1.0);
  CHECK(std::isinf(eval(parse("exp(s)"), 1000, 0, kNone)));
}

TEST_CASE("evaluation errors") {
  CHECK_THROWS_AS(eval(parse("log(s)"), 0, 1, kNone), EvalError);
  CHECK_THROWS_AS(eval(parse("s^(-1)"), 0, 1, kNone), EvalError);
  CHECK_THROWS_AS(eval(parse("1/s"), 0, 1, kNone), EvalError);
  CHECK_THROWS_AS(eval(parse("sqrt(s-2)"), 1, 1, kNone), EvalError);
  CHECK_THROWS_AS(eval(parse("(-s)^0.5"), 2, 1, kNone), EvalError);
  CHECK_THROWS_AS(eval(parse("s+a"), 1, 1, kNone), UnboundParameterError);
  try {
    eval(parse("1+log(s-t)"), 1, 1, kNone);
    FAIL("expected EvalError");
  } catch (const EvalError& e) {
    CHECK(parse(e.subexpression()) == parse("log(s-t)"));
  }
}

TEST_CASE("print round-trip on fixed inputs") {
  for (const char* src : {"s^(p-1)*(1+t)", "s^p*((t-a)^2+b)", "2+sin(s)", "t^(1-p)", "exp(s)", "1",
                          "-2^2", "(-2)^2", "-(s-t)/-t", "1e-300*s", "0.1+0.2"}) {
    const auto e = parse(src);
    CHECK(parse(e.print()) == e);
  }
}

TEST_CASE("round-trip over random trees") {
  std::mt19937 rng(20240601);
  for (int i = 0; i < 2000; ++i) {
    const auto tree = random_tree(rng, 8);
    const auto text = print(*tree);
    CAPTURE(text);
    CHECK(structurally_equal(*parse(text).root(), *tree));
  }
}

TEST_CASE("positivity_scan") {
  const Range r{1e-3, 1e3};
  CHECK_FALSE(positivity_scan(parse("2+sin(s)"), kNone, r, r, 40).has_value());
  CHECK_FALSE(positivity_scan(parse("exp(s)"), kNone, {1e-3, 100}, r, 40).has_value());
  const auto bad = positivity_scan(parse("t-5"), kNone, {1, 10}, {1, 10}, 20);
  REQUIRE(bad.has_value());
  CHECK(bad->t < 5.0);
  const auto err = positivity_scan(parse("log(s-2)"), kNone, {1, 10}, {1, 10}, 5);
  REQUIRE(err.has_value());
  CHECK(err->s < 2.0);
  CHECK_FALSE(err->reason.empty());
}
