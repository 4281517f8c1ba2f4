#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ulf/errors.hpp"
#include "ulf/scale_law.hpp"

namespace ulf {

/// Exact rational scalar. Closed forms are evaluated in this type end to
/// end; conversion to double happens only at API edges, so equality tests
/// against independent oracles can demand equality rather than closeness.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) {
  return r.template convert_to<double>();
}

/// Total variation distance between the first-k-coordinate law of the
/// uniform sphere measure in dimension n and the k-fold Haar product:
/// q^-n (1 - q^-k) / (1 - q^-n).
Rational tv_formula(std::uint32_t q, std::uint32_t n, std::uint32_t k);

/// Independent route to the same quantity: reduces to the total variation
/// between a Binomial(k, 1-1/q) and the same binomial conditioned on a
/// Binomial(n, 1-1/q) count being nonzero, summed term by term in exact
/// rationals.
Rational tv_oracle(std::uint32_t q, std::uint32_t n, std::uint32_t k);

/// Haar mass of the invertible matrices: prod_{i in [n]} (1 - q^-i).
Rational gl_density(std::uint32_t q, std::uint32_t n);

/// Brute-force check of gl_density: enumerate all q^(n^2) residue matrices
/// and count the invertible ones.
Rational gl_density_enumerated(std::uint32_t q, std::uint32_t n);

/// Haar mass of the unit sphere in dimension n: 1 - q^-n.
Rational sphere_mass(std::uint32_t q, std::uint32_t n);

/// Distance bound between an invariant law and its Gaussian mixture: q^-n.
Rational finite_freedman_bound(std::uint32_t q, std::uint32_t n);

/// True when an empirical estimate is consistent with the q^-n bound up to
/// `slack_sigmas` standard errors.
bool freedman_bound_holds(double empirical_tv, std::uint32_t q,
                          std::uint32_t n, double standard_error,
                          double slack_sigmas = 3.0);

/// Radial kernel profile phi on the value grid of the norm. Grid index m
/// stands for radius q^-m, so values are listed from the largest radius
/// (m_lo) to the smallest (m_hi); phi(0) = 1 implicitly. A profile arising
/// from a scale mixture is nondecreasing in m (nonincreasing in the radius)
/// and approaches 1 at the small-radius end.
class RadialProfile {
 public:
  RadialProfile(std::uint32_t q, std::int64_t m_lo, std::int64_t m_hi,
                std::vector<double> values);

  std::uint32_t q() const { return q_; }
  std::int64_t m_lo() const { return m_lo_; }
  std::int64_t m_hi() const { return m_hi_; }
  const std::vector<double>& values() const { return values_; }

  /// Value at radius q^-m. Outside the window the profile continues with
  /// the convention of its mixture representation: constant on the
  /// large-radius side, 1 on the small-radius side. kInfExp gives phi(0)=1.
  double at_norm_exp(std::int64_t m) const;

  /// True when the window is wide enough to exhibit the small-argument
  /// limit (the last value is within `tol` of 1). Profiles failing this are
  /// accepted with a warning flag rather than rejected.
  bool exhibits_unit_limit(double tol = 1e-9) const;

 private:
  std::uint32_t q_;
  std::int64_t m_lo_, m_hi_;
  std::vector<double> values_;
};

/// phi(q^-m) = P(|tau| <= q^-m) evaluated on the window [m_lo, m_hi].
RadialProfile phi_from_pi(const ScaleLaw& pi, std::uint32_t q,
                          std::int64_t m_lo, std::int64_t m_hi);

/// Witness of a failed mixture inversion: either a grid pair on which the
/// profile increases with the radius, or a value outside [0, 1].
struct MonotonicityViolation {
  std::int64_t grid_m_a;
  std::int64_t grid_m_b;  // equal to grid_m_a for range violations
  double value_a;
  double value_b;
  std::string reason;
};

/// Inverts phi_from_pi on the window: consecutive differences recover the
/// atom masses; mass escaping on the small-|tau| side joins the zero atom
/// and mass on the large-|tau| side becomes a boundary atom just outside
/// the window. Succeeds iff the profile is nonnegative and nonincreasing in
/// the radius (tolerance 1e-12).
std::variant<ScaleLaw, MonotonicityViolation> pi_from_phi(
    const RadialProfile& phi);

}  // namespace ulf
