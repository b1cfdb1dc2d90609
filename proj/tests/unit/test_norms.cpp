#include "blowup/errors.hpp"
#include "blowup/norms.hpp"
#include "blowup/oracles.hpp"
#include "blowup/timemap.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace blowup;
using norms::norm_U;
using norms::norm_U_prime;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool mentions(const norms::ExponentReport& r, const std::string& text) {
  for (const auto& v : r.violations)
    if (v == text) return true;
  return false;
}
} // namespace

TEST_CASE("validate_exponents") {
  CHECK(norms::validate_exponents(3, 0.99, 0.99, 0.49, 0.49).ok());

  const auto q = norms::validate_exponents(3, 1.0, 0.5, 0.25, 0.25);
  CHECK_FALSE(q.ok());
  CHECK(q.violations.size() == 1);
  CHECK(mentions(q, "q1 >= (p-1)/2"));

  const auto r = norms::validate_exponents(3, 0.5, 0.5, 0.5, 0.25);
  CHECK(mentions(r, "r1 >= (p-1)/(p+1)"));

  const auto many = norms::validate_exponents(3, 0.0, 1.2, -0.1, 0.6);
  CHECK(many.violations.size() == 4);
  CHECK(mentions(many, "q1 <= 0"));
  CHECK(mentions(many, "q2 >= (p-1)/2"));
  CHECK(mentions(many, "r1 <= 0"));
  CHECK(mentions(many, "r2 >= (p-1)/(p+1)"));
  CHECK(many.message().find("q2 >= (p-1)/2") != std::string::npos);
}

// 40-digit quadrature of the s-space integrals.
TEST_CASE("closed forms against high-precision references") {
  CHECK(rel(norm_U(3, 0.5), 23.36816635696733379056) < 1e-13);
  CHECK(rel(norm_U(3, 0.7), 21.69956835983455860633) < 1e-13);
  CHECK(rel(norm_U_prime(3, 0.2), 484.0724746550242479343) < 1e-13);
  CHECK(rel(norm_U_prime(3, 0.3), 268.1678460563602071523) < 1e-13);
  CHECK(rel(norm_U_prime(3, 1.0 / 3.0), 276.6684334942376056329) < 1e-13);
  CHECK(rel(norm_U_prime(2, 0.2), 34352.85823954733417086) < 1e-12);
}

TEST_CASE("closed forms against the s-space oracle") {
  CHECK(rel(norm_U(3, 0.5), oracles::norm_U_sspace(3, 0.5)) < 1e-8);
  CHECK(rel(norm_U_prime(3, 1.0 / 3.0), oracles::norm_U_prime_sspace(3, 1.0 / 3.0)) < 1e-8);
  CHECK(rel(norm_U_prime(2, 0.2), oracles::norm_U_prime_tspace(2, 0.2)) < 1e-8);
}

TEST_CASE("closed forms against x-space quadrature of the profile") {
  const auto prof = timemap::make_profile(3.0);
  CHECK(rel(norm_U_prime(3, 1.0 / 3.0), oracles::norm_U_prime_xspace(prof, 1.0 / 3.0)) < 1e-7);
  CHECK(rel(norm_U(3, 0.5), oracles::norm_U_xspace(prof, 0.5)) < 1e-7);
  // Different cut-off, same answer: the tail model is consistent.
  CHECK(rel(oracles::norm_U_xspace(prof, 0.5, 1e-2), oracles::norm_U_xspace(prof, 0.5, 1e-4)) < 1e-9);
}

TEST_CASE("5x5 grid inside the admissible region") {
  for (double p : {2.0, 3.0, 5.0}) {
    const double qb = 0.5 * (p - 1.0), rb = (p - 1.0) / (p + 1.0);
    for (double fq : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      CHECK(rel(norm_U(p, fq * qb), oracles::norm_U_sspace(p, fq * qb)) < 1e-7);
      CHECK(rel(norm_U_prime(p, fq * rb), oracles::norm_U_prime_sspace(p, fq * rb)) < 1e-7);
    }
  }
}

TEST_CASE("divergence at the upper bounds") {
  for (double p : {2.0, 3.0}) {
    const double qb = 0.5 * (p - 1.0), rb = (p - 1.0) / (p + 1.0);
    double prev_q = 0, prev_r = 0;
    for (int k = 1; k <= 4; ++k) {
      const double f = 1.0 - std::pow(10.0, -k);
      const double nq = std::pow(norm_U(p, f * qb), f * qb);  // q-th power
      const double nr = std::pow(norm_U_prime(p, f * rb), f * rb);
      CHECK(nq > prev_q);
      CHECK(nr > prev_r);
      prev_q = nq;
      prev_r = nr;
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(norm_U(3, 1.0), DomainError);
  CHECK_THROWS_AS(norm_U(3, 0.0), DomainError);
  CHECK_THROWS_AS(norm_U_prime(3, 0.5), DomainError);
  CHECK_THROWS_AS(norm_U(1.0, 0.1), DomainError);
}

TEST_CASE("make_norm_table") {
  const auto t = norms::make_norm_table(3, 0.5, 0.5, 1.0 / 3.0, 1.0 / 3.0);
  CHECK(t.n_q1 == t.n_q2);
  CHECK(t.m_r1 == t.m_r2);
  CHECK(rel(t.mu_p, 1.854074677301371918434) < 1e-14);

  const auto d = norms::make_norm_table(3, 0.5, 0.7, 0.2, 0.3);
  CHECK(rel(d.n_q1, 23.36816635696733379056) < 1e-13);
  CHECK(rel(d.n_q2, 21.69956835983455860633) < 1e-13);
  CHECK(rel(d.m_r1, 484.0724746550242479343) < 1e-13);
  CHECK(rel(d.m_r2, 268.1678460563602071523) < 1e-13);

  try {
    norms::make_norm_table(3, 0.5, 1.2, 0.2, 0.3);
    FAIL("expected ExponentViolation");
  } catch (const norms::ExponentViolation& e) {
    CHECK(e.report().violations.size() == 1);
    CHECK(mentions(e.report(), "q2 >= (p-1)/2"));
  }
}

TEST_CASE("homogeneity through the sampler path") {
  const auto prof = timemap::make_profile(3.0);
  const double c = 3.7;
  const double base = oracles::lq_norm_xspace([&](double x) { return prof.U(x); }, 0.5, 1.0, 1e-3);
  const double scaled =
      oracles::lq_norm_xspace([&](double x) { return c * prof.U(x); }, 0.5, 1.0, 1e-3);
  CHECK(rel(scaled, c * base) < 1e-10);
}
