#pragma once

#include <cstdint>
#include <map>

#include "ulf/errors.hpp"
#include "ulf/field.hpp"
#include "ulf/rng.hpp"

namespace ulf {

/// Probability law of a scale variable tau supported on {rho^m : m in Z}
/// together with an atom at zero. Finitely many atoms, so sup |tau| is
/// automatically finite, as the mixture representation requires.
class ScaleLaw {
 public:
  ScaleLaw(std::map<std::int64_t, double> atoms, double zero_mass);

  static ScaleLaw point_mass(std::int64_t exponent);
  static ScaleLaw point_mass_zero();

  const std::map<std::int64_t, double>& atoms() const { return atoms_; }
  double zero_mass() const { return zero_mass_; }

  /// P(|tau| <= q^-m): the cumulative mass of atoms at exponents >= m plus
  /// the zero atom.
  double prob_abs_le(std::int64_t m) const;

  /// Inverse-CDF draw; atoms are walked in ascending exponent order with the
  /// zero atom last, so the mapping from uniforms to outcomes is fixed.
  ScaleValue sample(RngStream& rng) const;

 private:
  std::map<std::int64_t, double> atoms_;  // exponent -> probability
  double zero_mass_;
};

}  // namespace ulf
