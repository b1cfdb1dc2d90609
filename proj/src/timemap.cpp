#include "blowup/timemap.hpp"

#include "blowup/errors.hpp"
#include "blowup/quadrature.hpp"
#include "blowup/rootfind.hpp"
#include "blowup/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace blowup::timemap {

namespace {

constexpr double kTailSplit = 0.5;        // u = y^{-(p-1)/2} at the split
constexpr double kBlowupCap = 1.0 - 1e-9; // z / L_p above this is out of range

const quad::Options kInnerQuad{0.0, 2e-15, 4000};

} // namespace

Profile::Profile(double p) : p_(p) {
  if (!std::isfinite(p) || p <= 1.0) {
    throw DomainError("profile exponent p must satisfy p > 1, got " + std::to_string(p));
  }
  length_ = specfun::beta({(p - 1.0) / (2.0 * (p + 1.0)), 0.5}) / (p + 1.0);
  mu_ = std::pow(std::sqrt(0.5 * (p + 1.0)) * length_, 2.0 / (p - 1.0));
  tail_power_ = 2.0 * (p + 1.0) / (p - 1.0);
  y_split_ = std::pow(kTailSplit, -2.0 / (p - 1.0));
  w_split_ = std::sqrt(y_split_ - 1.0);
  z_split_ = head_integral(w_split_);
}

Profile make_profile(double p) { return Profile(p); }

// d/dw of F(1 + w^2): 2w / sqrt((1 + w^2)^{p+1} - 1), regular at w = 0.
double Profile::head_integrand(double w) const {
  if (w < 1e-100) return 2.0 / std::sqrt(p_ + 1.0);
  const double e = std::expm1((p_ + 1.0) * std::log1p(w * w));
  return 2.0 * w / std::sqrt(e);
}

// Tail int_y^inf ds / sqrt(s^{p+1} - 1) in u = s^{-(p-1)/2}:
// (2/(p-1)) int_0^u (1 - v^{2(p+1)/(p-1)})^{-1/2} dv.
double Profile::tail_integrand(double u) const {
  if (u <= 0.0) return 2.0 / (p_ - 1.0);
  return (2.0 / (p_ - 1.0)) / std::sqrt(-std::expm1(tail_power_ * std::log(u)));
}

double Profile::head_integral(double w) const {
  return quad::integrate([this](double v) { return head_integrand(v); }, 0.0, w, kInnerQuad)
      .value;
}

double Profile::tail_integral(double u) const {
  return quad::integrate([this](double v) { return tail_integrand(v); }, 0.0, u, kInnerQuad)
      .value;
}

double Profile::F(double y) const {
  if (std::isnan(y) || y < 1.0) {
    throw DomainError("F(y) requires y >= 1, got " + std::to_string(y));
  }
  if (std::isinf(y)) return length_;
  if (y <= y_split_) return head_integral(std::sqrt(y - 1.0));
  return length_ - tail_integral(std::pow(y, -0.5 * (p_ - 1.0)));
}

Profile::Preimage Profile::invert(double z) const {
  if (z == 0.0) return {1.0, 0.0};
  if (z <= z_split_) {
    auto fdf = [&](double w) {
      return std::pair{head_integral(w) - z, head_integrand(w)};
    };
    // F ~ 2w / sqrt(p+1) near the origin.
    const double guess = std::min(0.5 * z * std::sqrt(p_ + 1.0), 0.5 * w_split_);
    const double w = rootfind::safeguarded_newton(fdf, 0.0, w_split_, guess);
    return {1.0 + w * w, std::expm1((p_ + 1.0) * std::log1p(w * w))};
  }
  const double remaining = length_ - z;
  // Solve tail_integral(u) = remaining; increasing in u, ~ 2u/(p-1) at 0.
  auto fdf = [&](double u) { return std::pair{tail_integral(u) - remaining, tail_integrand(u)}; };
  const double guess = std::min(0.5 * (p_ - 1.0) * remaining, 0.5 * kTailSplit);
  const double u = rootfind::safeguarded_newton(fdf, 0.0, kTailSplit, guess);
  const double log_u = std::log(u);
  return {std::exp(-2.0 / (p_ - 1.0) * log_u), std::expm1(-tail_power_ * log_u)};
}

Profile::Preimage Profile::checked_invert(double z) const {
  if (std::isnan(z) || z < 0.0 || z >= length_) {
    throw DomainError("F_inverse requires 0 <= z < L_p = " + std::to_string(length_) +
                      ", got " + std::to_string(z));
  }
  if (z > kBlowupCap * length_) {
    throw RangeError("F_inverse argument too close to L_p (blow-up point)");
  }
  return invert(z);
}

double Profile::F_inverse(double z) const { return checked_invert(z).y; }

namespace {
void require_interior(double x) {
  if (std::isnan(x) || std::abs(x) >= 1.0) {
    throw DomainError("profile is defined on |x| < 1, got x = " + std::to_string(x));
  }
}
} // namespace

double Profile::U(double x) const {
  require_interior(x);
  return mu_ * F_inverse(length_ * std::abs(x));
}

double Profile::U_prime(double x) const {
  require_interior(x);
  if (x == 0.0) return 0.0;
  const Preimage pre = checked_invert(length_ * std::abs(x));
  const double magnitude = mu_ * length_ * std::sqrt(pre.ym1);
  return x > 0.0 ? magnitude : -magnitude;
}

double Profile::U_prime_first_integral(double x) const {
  const double u = U(x);
  const double magnitude =
      std::sqrt(2.0 / (p_ + 1.0) * (std::pow(u, p_ + 1.0) - std::pow(mu_, p_ + 1.0)));
  return x < 0.0 ? -magnitude : magnitude;
}

std::vector<double> uniform_grid(int n, double delta) {
  if (n < 2) throw DomainError("grid needs at least 2 points");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("grid offset delta must lie in (0, 1)");
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double a = -1.0 + delta;
  const double b = 1.0 - delta;
  for (int i = 0; i < n; ++i) {
    // Mirror-exact: grid[i] == -grid[n-1-i].
    const double t = static_cast<double>(2 * i - (n - 1)) / static_cast<double>(n - 1);
    grid[static_cast<std::size_t>(i)] = (i == 0) ? a : (i == n - 1 ? b : t * (1.0 - delta));
  }
  return grid;
}

ProfileSample sample(const Profile& profile, const std::vector<double>& grid, double delta) {
  ProfileSample out;
  out.delta = delta;
  out.grid = grid;
  out.values.reserve(grid.size());
  out.derivs.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    if (std::abs(x) > 1.0 - delta) {
      throw DomainError("sample abscissa " + std::to_string(x) + " outside (-1+delta, 1-delta)");
    }
    if (i > 0 && !(x > grid[i - 1])) throw DomainError("sample grid must be strictly increasing");
    out.values.push_back(profile.U(x));
    out.derivs.push_back(profile.U_prime(x));
  }
  return out;
}

double ode_residual(const Profile& profile, double delta) {
  constexpr double h = 1e-4;
  constexpr int n = 1001;
  if (!(delta > h && delta < 1.0)) {
    throw DomainError("ode_residual needs 1e-4 < delta < 1");
  }
  double worst = 0.0;
  const auto grid = uniform_grid(n, delta);
  for (double x : grid) {
    const double u = profile.U(x);
    const double second = (profile.U(x + h) - 2.0 * u + profile.U(x - h)) / (h * h);
    const double rhs = std::pow(u, profile.p());
    worst = std::max(worst, std::abs(second - rhs) / rhs);
  }
  return worst;
}

} // namespace blowup::timemap
