#pragma once

#include <vector>

namespace blowup::timemap {

/// Boundary offset used by samplers when the caller gives none. The profile
/// is infinite at x = +-1 and is never evaluated there.
inline constexpr double kDefaultDelta = 1e-3;

/// The canonical boundary blow-up profile U_p: the unique even solution of
/// U'' = U^p on (-1, 1) with U -> +inf at +-1.
///
/// U_p is evaluated through its time map
///   F(y) = int_1^y ds / sqrt(s^{p+1} - 1),   U(x) = mu_p F^{-1}(L_p |x|),
/// where L_p = F(inf) = B((p-1)/(2(p+1)), 1/2) / (p+1) and
/// mu_p = U(0) = (sqrt((p+1)/2) L_p)^{2/(p-1)}.
///
/// Internally F is split at the point where y^{-(p-1)/2} = 1/2:
///  * below it, s = 1 + w^2 removes the inverse square root at s = 1;
///  * above it, the tail int_y^inf is written in u = s^{-(p-1)/2}, which
///    turns the algebraic decay into a smooth integrand on [0, 1/2].
/// The same two coordinates are used to invert F, so U and U' keep full
/// relative precision both near x = 0 and close to the blow-up.
///
/// Immutable after construction; all members are safe to call concurrently.
class Profile {
public:
  /// Throws DomainError unless p > 1 and finite.
  explicit Profile(double p);

  double p() const { return p_; }
  double mu() const { return mu_; }
  /// L_p, the total time-map length F(inf).
  double length() const { return length_; }

  /// F(y) for y >= 1 (DomainError below 1). F(inf) = L_p.
  double F(double y) const;

  /// Inverse of F on [0, L_p). Values of z above (1 - 1e-9) L_p are rejected
  /// with RangeError because F^{-1} diverges at L_p; z < 0 or z >= L_p is a
  /// DomainError.
  double F_inverse(double z) const;

  /// U_p(x) for |x| < 1.
  double U(double x) const;

  /// U_p'(x) = sign(x) mu_p L_p sqrt(y^{p+1} - 1), y = F^{-1}(L_p |x|).
  double U_prime(double x) const;

  /// U_p'(x) through the first integral: sign(x) sqrt(2/(p+1) (U^{p+1} - mu^{p+1})).
  /// Algebraically equal to U_prime(); loses relative accuracy near x = 0.
  double U_prime_first_integral(double x) const;

private:
  struct Preimage {
    double y;    // F^{-1}(z)
    double ym1;  // y^{p+1} - 1, computed without cancellation
  };

  Preimage invert(double z) const;
  Preimage checked_invert(double z) const;
  double head_integrand(double w) const;
  double tail_integrand(double u) const;
  double head_integral(double w) const;
  double tail_integral(double u) const;

  double p_;
  double mu_;
  double length_;
  double tail_power_;  // 2(p+1)/(p-1)
  double w_split_;     // head/tail boundary in the w coordinate
  double y_split_;
  double z_split_;     // F(y_split)
};

Profile make_profile(double p);

/// Tabulated U and U' on strictly increasing abscissae inside (-1+delta, 1-delta).
struct ProfileSample {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<double> derivs;
  double delta = kDefaultDelta;
};

/// n equally spaced points on [-1 + delta, 1 - delta] (n >= 2).
std::vector<double> uniform_grid(int n, double delta = kDefaultDelta);

ProfileSample sample(const Profile& profile, const std::vector<double>& grid,
                     double delta = kDefaultDelta);

/// Max over 1001 points of [-1+delta, 1-delta] of |U''_fd - U^p| / U^p, with
/// U''_fd the centred second difference of U at step 1e-4.
double ode_residual(const Profile& profile, double delta);

} // namespace blowup::timemap
