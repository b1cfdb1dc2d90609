#include "blowup/norms.hpp"

#include "blowup/specfun.hpp"
#include "blowup/timemap.hpp"

#include <cmath>
#include <sstream>

namespace blowup::norms {

namespace {

void check_p(double p) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw DomainError("exponent p must satisfy p > 1, got " + std::to_string(p));
  }
}

void check_open(std::vector<std::string>& out, const char* name, double v, double upper,
                const char* upper_text) {
  if (!std::isfinite(v) || v <= 0.0) {
    out.push_back(std::string(name) + " <= 0");
  } else if (v >= upper) {
    out.push_back(std::string(name) + " >= " + upper_text);
  }
}

// log mu_p from the time-map length.
double log_mu(double p) {
  const double L = specfun::beta({(p - 1.0) / (2.0 * (p + 1.0)), 0.5}) / (p + 1.0);
  return 2.0 / (p - 1.0) * std::log(std::sqrt(0.5 * (p + 1.0)) * L);
}

} // namespace

std::string ExponentReport::message() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i) os << "; ";
    os << violations[i];
  }
  return os.str();
}

ExponentReport validate_exponents(double p, double q1, double q2, double r1, double r2) {
  check_p(p);
  ExponentReport report;
  const double q_max = 0.5 * (p - 1.0);
  const double r_max = (p - 1.0) / (p + 1.0);
  check_open(report.violations, "q1", q1, q_max, "(p-1)/2");
  check_open(report.violations, "q2", q2, q_max, "(p-1)/2");
  check_open(report.violations, "r1", r1, r_max, "(p-1)/(p+1)");
  check_open(report.violations, "r2", r2, r_max, "(p-1)/(p+1)");
  return report;
}

ExponentViolation::ExponentViolation(ExponentReport report)
    : DomainError("exponents violate admissibility bounds: " + report.message()),
      report_(std::move(report)) {}

double norm_U(double p, double q) {
  check_p(p);
  if (!(q > 0.0 && q < 0.5 * (p - 1.0))) {
    throw DomainError("||U_p||_q is finite only for 0 < q < (p-1)/2");
  }
  // ||U_p||_q^q = sqrt(2/(p+1)) mu^{(2q-p+1)/2} B((p-2q-1)/(2(p+1)), 1/2)
  const double log_power = 0.5 * std::log(2.0 / (p + 1.0)) +
                           0.5 * (2.0 * q - p + 1.0) * log_mu(p) +
                           specfun::log_beta({(p - 2.0 * q - 1.0) / (2.0 * (p + 1.0)), 0.5});
  return std::exp(log_power / q);
}

double norm_U_prime(double p, double r) {
  check_p(p);
  if (!(r > 0.0 && r < (p - 1.0) / (p + 1.0))) {
    throw DomainError("||U_p'||_r is finite only for 0 < r < (p-1)/(p+1)");
  }
  // ||U_p'||_r^r = (2/(p+1))^{(r+1)/2} mu^{(p+1)(r-1)/2 + 1}
  //                * B(((1-r)(p+1)-2)/(2(p+1)), (r+1)/2)
  const double log_power =
      0.5 * (r + 1.0) * std::log(2.0 / (p + 1.0)) +
      (0.5 * (p + 1.0) * (r - 1.0) + 1.0) * log_mu(p) +
      specfun::log_beta({((1.0 - r) * (p + 1.0) - 2.0) / (2.0 * (p + 1.0)), 0.5 * (r + 1.0)});
  return std::exp(log_power / r);
}

NormTable make_norm_table(double p, double q1, double q2, double r1, double r2) {
  auto report = validate_exponents(p, q1, q2, r1, r2);
  if (!report.ok()) throw ExponentViolation(std::move(report));
  NormTable t;
  t.p = p;
  t.q1 = q1;
  t.q2 = q2;
  t.r1 = r1;
  t.r2 = r2;
  t.n_q1 = norm_U(p, q1);
  t.n_q2 = norm_U(p, q2);
  t.m_r1 = norm_U_prime(p, r1);
  t.m_r2 = norm_U_prime(p, r2);
  const timemap::Profile profile(p);
  t.mu_p = profile.mu();
  t.L_p = profile.length();
  return t;
}

} // namespace blowup::norms
