#include "blowup/errors.hpp"
#include "blowup/scenarios.hpp"

#include <doctest.h>

#include <cmath>

using namespace blowup;
using namespace blowup::scenarios;
using bifurcation::RootKind;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }
const auto kTable = norms::make_norm_table(3.0, 0.5, 0.5, 0.25, 0.25);
} // namespace

TEST_CASE("catalog text") {
  const auto cat = catalog();
  REQUIRE(cat.size() == 4);
  CHECK(cat[0].name == "cor1");
  CHECK(cat[0].A_src == "s^(p-1)*(1+t)");
  CHECK(cat[0].B_src == "s+t");
  CHECK(cat[1].A_src == "s^p*((t-a)^2+b)");
  CHECK(cat[1].B_src == "s+t");
  CHECK(cat[1].params.at("a") == 1.0);
  CHECK(cat[1].params.at("b") == 1.0);
  CHECK(cat[2].A_src == "2+sin(s)");
  CHECK(cat[2].B_src == "t^(1-p)");
  CHECK(cat[3].A_src == "exp(s)");
  CHECK(cat[3].B_src == "1");
  for (const auto& sc : cat) CHECK_NOTHROW(to_problem(sc, kTable));
  CHECK_THROWS_AS(find("cor5"), DomainError);
  CHECK(find("cor2", {{"a", 2.0}}).params.at("a") == 2.0);
}

// 40-digit references built from the high-precision norms.
TEST_CASE("analytic thresholds") {
  const auto t1 = find("cor1").thresholds(kTable);
  REQUIRE(t1.size() == 1);
  CHECK(rel(t1[0], 507.9230767944871705584) < 1e-12);

  const auto t2 = find("cor2").thresholds(kTable);
  REQUIRE(t2.size() == 2);
  CHECK(rel(t2[0], 38.14812209241278205762) < 1e-12);
  CHECK(rel(t2[1], 76.29624418482556411524) < 1e-12);

  const auto t3 = find("cor3").thresholds(kTable);
  REQUIRE(t3.size() == 2);
  CHECK(rel(t3[0], 96805.232706167732374) < 1e-12);
  CHECK(rel(t3[1], 290415.698118503197122) < 1e-12);

  const auto t4 = find("cor4").thresholds(kTable);
  REQUIRE(t4.size() == 1);
  CHECK(rel(t4[0], 1008.73768064640504813) < 1e-12);
}

TEST_CASE("analytic counts") {
  const auto c3 = find("cor3");
  const auto band = c3.thresholds(kTable);
  CHECK(c3.count(kTable, 0.5 * band[0]) == Count{0, false});
  CHECK(c3.count(kTable, 2.0 * band[0]).infinite);
  CHECK(c3.count(kTable, 1.5 * band[1]) == Count{0, false});

  const auto c2 = find("cor2");
  const auto th = c2.thresholds(kTable);
  CHECK(c2.count(kTable, 0.5 * th[0]).value == 0);
  CHECK(c2.count(kTable, th[0]).value == 1);
  CHECK(c2.count(kTable, 1.5 * th[0]).value == 2);
  CHECK(c2.count(kTable, 2.0 * th[1]).value == 1);
}

TEST_CASE("cor1 root") {
  const auto sc = find("cor1");
  const double thr = sc.thresholds(kTable)[0];
  const auto rep = check_scenario(sc, kTable, 2.0 * thr, bifurcation::default_window(kTable));
  CHECK(rep.pass());
  REQUIRE(rep.roots.size() == 1);
  CHECK(rel(rep.roots[0].numeric, 0.07510610136709352439582) < 1e-8);
  CHECK(check_scenario(sc, kTable, 0.5 * thr, bifurcation::default_window(kTable)).found == 0);
}

TEST_CASE("cor2 regimes") {
  const auto sc = find("cor2");
  const auto th = sc.thresholds(kTable);
  const auto w = bifurcation::Window{1e-10 * kTable.n_q1, 1e6 * kTable.n_q1};
  CHECK(check_scenario(sc, kTable, 0.5 * th[0], w).pass());
  const auto tangent = check_scenario(sc, kTable, th[0], w);
  CHECK(tangent.pass());
  REQUIRE(tangent.roots.size() == 1);
  CHECK(tangent.roots[0].kind == RootKind::Tangential);
  const auto two = check_scenario(sc, kTable, std::sqrt(th[0] * th[1]), w);
  CHECK(two.pass());
  CHECK(two.found == 2);
  const auto one = check_scenario(sc, kTable, 3.0 * th[1], w);
  CHECK(one.pass());
  CHECK(one.found == 1);
}

TEST_CASE("cor2 count order over a and b") {
  const auto w = bifurcation::Window{1e-10 * kTable.n_q1, 1e6 * kTable.n_q1};
  for (double a : {0.5, 1.0, 2.0})
    for (double b : {0.5, 1.0, 2.0}) {
      CAPTURE(a);
      CAPTURE(b);
      const auto sc = find("cor2", {{"a", a}, {"b", b}});
      const auto th = sc.thresholds(kTable);
      REQUIRE(th.size() == 2);
      CHECK(th[0] < th[1]);
      const std::vector<std::pair<double, std::size_t>> probes{
          {0.5 * th[0], 0}, {th[0], 1}, {std::sqrt(th[0] * th[1]), 2}, {2.0 * th[1], 1}};
      for (const auto& [lambda, expected] : probes) {
        const auto rep = check_scenario(sc, kTable, lambda, w);
        CHECK(rep.found == expected);
        CHECK(rep.pass());
      }
    }
}

TEST_CASE("cor3 roots solve the oscillating equation") {
  const auto sc = find("cor3");
  const auto band = sc.thresholds(kTable);
  const double lambda = 2.0 * band[0];
  const auto rep = check_scenario(sc, kTable, lambda, {1e-3, 1e5});
  CHECK(rep.pass());
  CHECK(rep.overflow);
  CHECK(rep.found >= 10);
  const double m2 = kTable.m_r2;
  for (const auto& r : rep.roots) CHECK(rel(m2 * m2 * (2.0 + std::sin(r.numeric)), lambda) < 1e-9);
  CHECK(check_scenario(sc, kTable, 0.99 * band[0], {1e-3, 1e5}).found == 0);
  CHECK(check_scenario(sc, kTable, 1.01 * band[1], {1e-3, 1e5}).found == 0);
}

TEST_CASE("cor4 counts") {
  const auto sc = find("cor4");
  const double thr = sc.thresholds(kTable)[0];
  const auto w = bifurcation::Window{1e-6 * kTable.n_q1, 500.0};
  CHECK(check_scenario(sc, kTable, 0.5 * thr, w).found == 0);
  const auto at = check_scenario(sc, kTable, thr, w);
  CHECK(at.found == 1);
  CHECK(at.pass());
  CHECK(check_scenario(sc, kTable, 2.0 * thr, w).found == 2);
}

TEST_CASE("cor4 asymptotic predictions") {
  const auto t = norms::make_norm_table(9.0, 2.0, 2.0, 0.4, 0.4);
  const auto a = cor4_asymptotics(t, 1e8);
  const double lead = std::pow(1e8, -1.0 / 8.0) * t.n_q1;
  CHECK(rel(a.s1, lead * (1.0 + lead / 8.0)) < 1e-15);
  CHECK(rel(a.s2, std::log(1e8) + 8.0 * std::log(std::log(1e8))) < 1e-15);
  CHECK(cor4_asymptotics(t, 1e16).s1 < a.s1);
  CHECK(cor4_asymptotics(t, 1e16).s2 > a.s2);
  CHECK_THROWS_AS(cor4_asymptotics(t, 2.0), DomainError);
}
