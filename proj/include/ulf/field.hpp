#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "ulf/errors.hpp"
#include "ulf/rng.hpp"

namespace ulf {

/// Which local field a configuration describes: the p-adic numbers Q_p or the
/// Laurent series F_p((t)). Both have residue field of prime order q = p.
enum class Backend : std::uint8_t { PADIC, LAURENT };

inline constexpr std::uint32_t kDefaultPrecision = 32;

/// Valuation sentinel for the exact zero element. Larger than every finite
/// valuation, so min/comparisons behave as expected for |0| = 0.
inline constexpr std::int64_t kInfExp = std::numeric_limits<std::int64_t>::max();

/// Immutable description of the ambient field and the working precision
/// (number of significant base-p digits carried by every element).
struct FieldConfig {
  std::uint32_t p;
  Backend backend;
  std::uint32_t precision;

  FieldConfig(std::uint32_t prime, Backend b,
              std::uint32_t digits = kDefaultPrecision);

  bool operator==(const FieldConfig&) const = default;

  /// Name of the additive character this configuration fixes; determined by
  /// the backend (fractional part for PADIC, t^-1 coefficient for LAURENT).
  const char* character_name() const {
    return backend == Backend::PADIC ? "fractional-part" : "t^-1-coefficient";
  }
};

/// Either rho^m for an exponent m, or exact zero. The value set of norms,
/// mixing scales and polar radii.
struct ScaleValue {
  bool zero;
  std::int64_t exponent;  // meaningful only when !zero

  static ScaleValue zero_value() { return {true, 0}; }
  static ScaleValue of_exponent(std::int64_t m) { return {false, m}; }

  bool operator==(const ScaleValue&) const = default;
};

/// A truncated local-field number x = rho^v * u, where the unit part u is
/// known through `known` leading base-p digits (1 <= known <= precision).
/// The valuation is always exact: digits are normalized so that the leading
/// digit of a nonzero element never vanishes. Exact zero is a dedicated
/// state with valuation +inf and no digits.
///
/// Values are immutable; all arithmetic lives in free functions.
class FieldElement {
 public:
  /// Builds a normalized element from its valuation and unit digits
  /// (little-endian, starting at rho^valuation). Digits are truncated or
  /// zero-padded to the working precision; `known` records how many were
  /// actually supplied. Passing kInfExp and no digits builds exact zero.
  static FieldElement make(const FieldConfig& config, std::int64_t valuation,
                           const std::vector<std::uint8_t>& unit_digits);

  static FieldElement zero(const FieldConfig& config);
  static FieldElement one(const FieldConfig& config);

  /// rho^m: the canonical element of valuation m (unit part 1).
  static FieldElement uniformizer_pow(const FieldConfig& config,
                                      std::int64_t m);

  /// Element for a ScaleValue: rho^m or exact zero.
  static FieldElement from_scale(const FieldConfig& config, ScaleValue s);

  /// Image of an ordinary integer. For PADIC this is the base-p expansion
  /// (mod p^precision); for LAURENT it is the constant k mod p.
  static FieldElement from_integer(const FieldConfig& config, std::int64_t k);

  const FieldConfig& config() const { return config_; }
  bool is_zero() const { return valuation_ == kInfExp; }
  std::int64_t valuation() const { return valuation_; }
  std::uint32_t known() const { return known_; }

  /// i-th digit of the unit part (0 beyond the stored window).
  std::uint8_t digit(std::uint32_t i) const {
    return i < digits_.size() ? digits_[i] : 0;
  }
  const std::vector<std::uint8_t>& digits() const { return digits_; }

  /// Strict representation equality (config, valuation, significance and
  /// digits all agree). See equal_to_precision() for the tolerant variant.
  bool operator==(const FieldElement&) const = default;

 private:
  FieldElement(FieldConfig config, std::int64_t valuation,
               std::vector<std::uint8_t> digits, std::uint32_t known)
      : config_(config),
        valuation_(valuation),
        digits_(std::move(digits)),
        known_(known) {}

  FieldConfig config_;
  std::int64_t valuation_;
  std::vector<std::uint8_t> digits_;  // size precision, or empty for zero
  std::uint32_t known_;

  friend FieldElement add(const FieldElement&, const FieldElement&);
  friend FieldElement neg(const FieldElement&);
  friend FieldElement mul(const FieldElement&, const FieldElement&);
  friend FieldElement div(const FieldElement&, const FieldElement&);
  friend FieldElement scale_exp(const FieldElement&, std::int64_t);
};

/// Exact phase in Z[1/p]/Z: a rational num/p^j reduced into [0, 1). The
/// character chi(x) is exp(2*pi*i * phase); the complex exponential is only
/// ever formed at the statistics layer.
class PhaseFraction {
 public:
  PhaseFraction() : num_(0), den_(1), p_(0) {}
  static PhaseFraction reduced(std::uint64_t num, std::uint64_t den,
                               std::uint32_t p);

  std::uint64_t numerator() const { return num_; }
  std::uint64_t denominator() const { return den_; }
  bool is_trivial() const { return num_ == 0; }
  double value() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  /// Addition modulo 1; the denominator stays a power of p.
  PhaseFraction operator+(const PhaseFraction& other) const;

  bool operator==(const PhaseFraction&) const = default;

 private:
  std::uint64_t num_;
  std::uint64_t den_;  // p^j
  std::uint32_t p_;    // 0 until a nontrivial phase fixes it
};

// ---- arithmetic ----------------------------------------------------------

/// Ultrametric addition. The valuation of the result is exact; when the
/// operands share a valuation and k leading digits cancel, the result keeps
/// known-k trusted digits. Cancellation of the whole trusted window is
/// PrecisionExhausted, except for full-precision complement pairs (x + (-x)),
/// which yield exact zero.
FieldElement add(const FieldElement& x, const FieldElement& y);
FieldElement sub(const FieldElement& x, const FieldElement& y);
FieldElement neg(const FieldElement& x);

/// |xy| = |x||y| holds with zero error: valuations add, unit parts multiply
/// mod p^known (PADIC) or as truncated series over F_p (LAURENT).
FieldElement mul(const FieldElement& x, const FieldElement& y);
FieldElement div(const FieldElement& x, const FieldElement& y);

/// Exact multiplication by rho^m (pure valuation shift).
FieldElement scale_exp(const FieldElement& x, std::int64_t m);
FieldElement scale(const FieldElement& x, ScaleValue s);

/// The exponent m with |x| = q^-m, or kInfExp for zero. Never precision
/// limited: normalization keeps valuations exact.
std::int64_t abs_exp(const FieldElement& x);

/// Phase of the fixed additive character at x. Trivial on the ring of
/// integers; needs the digits at negative powers, so elements whose window
/// misses them raise PrecisionExhausted.
PhaseFraction character(const FieldElement& x);

/// The level-k ball containing x inside the ring of integers: the first k
/// base-p digits of x as a coset label. Constant on {y : |x-y| <= q^-k}.
std::vector<std::uint8_t> ball_id(const FieldElement& x, std::uint32_t level);

/// True when x and y agree as far as their shared significance reaches.
bool equal_to_precision(const FieldElement& x, const FieldElement& y);

/// One draw from gamma (Haar measure restricted to the ring of integers):
/// `precision` i.i.d. uniform digits starting at valuation 0, renormalized.
/// P(|x| <= q^-m) = q^-m exactly for 0 <= m <= precision.
FieldElement gamma_draw(const FieldConfig& config, RngStream& rng);

/// Uniform draw from the units of D (leading digit nonzero).
FieldElement unit_draw(const FieldConfig& config, RngStream& rng);

inline FieldElement operator+(const FieldElement& x, const FieldElement& y) {
  return add(x, y);
}
inline FieldElement operator-(const FieldElement& x, const FieldElement& y) {
  return sub(x, y);
}
inline FieldElement operator-(const FieldElement& x) { return neg(x); }
inline FieldElement operator*(const FieldElement& x, const FieldElement& y) {
  return mul(x, y);
}
inline FieldElement operator/(const FieldElement& x, const FieldElement& y) {
  return div(x, y);
}

}  // namespace ulf
