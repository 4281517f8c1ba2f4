#include "ulf/sampler.hpp"

#include <cmath>
#include <string>

namespace ulf {

ScaleLaw::ScaleLaw(std::map<std::int64_t, double> atoms, double zero_mass)
    : atoms_(std::move(atoms)), zero_mass_(zero_mass) {
  double total = zero_mass_;
  if (zero_mass_ < -1e-12) throw DomainError("negative zero-atom mass");
  for (const auto& [m, prob] : atoms_) {
    if (prob < -1e-12)
      throw DomainError("negative atom mass at exponent " + std::to_string(m));
    total += prob;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError("scale-law masses must sum to one");
}

ScaleLaw ScaleLaw::point_mass(std::int64_t exponent) {
  return ScaleLaw({{exponent, 1.0}}, 0.0);
}

ScaleLaw ScaleLaw::point_mass_zero() { return ScaleLaw({}, 1.0); }

double ScaleLaw::prob_abs_le(std::int64_t m) const {
  double total = zero_mass_;
  for (auto it = atoms_.lower_bound(m); it != atoms_.end(); ++it)
    total += it->second;
  return total;
}

ScaleValue ScaleLaw::sample(RngStream& rng) const {
  const double u = rng.next_unit();
  double acc = 0.0;
  for (const auto& [m, prob] : atoms_) {
    acc += prob;
    if (u < acc) return ScaleValue::of_exponent(m);
  }
  if (!atoms_.empty() && zero_mass_ <= 0.0)
    return ScaleValue::of_exponent(atoms_.rbegin()->first);
  return ScaleValue::zero_value();
}

FieldElement sample_gamma(RngStream& rng, const FieldConfig& config) {
  return gamma_draw(config, rng);
}

UVector sample_gamma_vector(RngStream& rng, const FieldConfig& config,
                            std::size_t n) {
  UVector v(config, n);
  for (std::size_t i = 0; i < n; ++i) v[i] = gamma_draw(config, rng);
  return v;
}

UVector sample_sigma(RngStream& rng, const FieldConfig& config, std::size_t n,
                     std::uint64_t* attempts) {
  if (n < 1) throw DomainError("dimension must be positive");
  for (;;) {
    if (attempts) ++*attempts;
    UVector v = sample_gamma_vector(rng, config, n);
    if (norm_exp(v) == 0) return v;
  }
}

UMatrix sample_gl_haar(RngStream& rng, const FieldConfig& config,
                       std::size_t n, std::uint64_t* attempts) {
  if (n < 1) throw DomainError("dimension must be positive");
  for (;;) {
    if (attempts) ++*attempts;
    UMatrix m(config, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m.at(i, j) = gamma_draw(config, rng);
    if (is_gl(m)) return m;
  }
}

FieldElement sample_k_gaussian(RngStream& rng, const FieldConfig& config,
                               ScaleValue module) {
  if (module.zero) return FieldElement::zero(config);
  return scale_exp(gamma_draw(config, rng), module.exponent);
}

UVector sample_rotatable(RngStream& rng, const FieldConfig& config,
                         const ScaleLaw& pi, std::size_t n) {
  if (n < 1) throw DomainError("dimension must be positive");
  const ScaleValue tau = pi.sample(rng);
  UVector v(config, n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = scale(gamma_draw(config, rng), tau);
  return v;
}

ScaleValue estimate_tau(const UVector& prefix) {
  const std::int64_t m = norm_exp(prefix);
  if (m == kInfExp) return ScaleValue::zero_value();
  return ScaleValue::of_exponent(m);
}

}  // namespace ulf
