#include "ulf/field.hpp"

#include <algorithm>
#include <cassert>
#include <string>

namespace ulf {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Inverse of a mod p for 0 < a < p, p prime.
std::uint32_t mod_inverse(std::uint32_t a, std::uint32_t p) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = p, new_r = a;
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  assert(r == 1);
  return static_cast<std::uint32_t>(t < 0 ? t + p : t);
}

void require_same_config(const FieldElement& x, const FieldElement& y) {
  if (!(x.config() == y.config()))
    throw DomainError("operands belong to different field configurations");
}

}  // namespace

FieldConfig::FieldConfig(std::uint32_t prime, Backend b, std::uint32_t digits)
    : p(prime), backend(b), precision(digits) {
  if (!is_prime(prime))
    throw DomainError("residue characteristic must be prime, got " +
                      std::to_string(prime));
  if (prime > 251)
    throw DomainError("residue characteristic must fit in one byte");
  if (digits < 1) throw DomainError("precision must be at least 1 digit");
}

FieldElement FieldElement::make(const FieldConfig& config,
                                std::int64_t valuation,
                                const std::vector<std::uint8_t>& unit_digits) {
  bool all_zero = true;
  for (std::uint8_t d : unit_digits) {
    if (d >= config.p) throw DomainError("digit out of range for base p");
    if (d != 0) all_zero = false;
  }
  if (valuation == kInfExp || unit_digits.empty()) {
    if (!all_zero)
      throw NormalizationError("zero element cannot carry nonzero digits");
    return zero(config);
  }
  if (unit_digits[0] == 0)
    throw NormalizationError(
        "leading digit must be nonzero for a nonzero valuation claim");
  std::uint32_t known = static_cast<std::uint32_t>(
      std::min<std::size_t>(unit_digits.size(), config.precision));
  std::vector<std::uint8_t> digits(config.precision, 0);
  std::copy_n(unit_digits.begin(), known, digits.begin());
  return FieldElement(config, valuation, std::move(digits), known);
}

FieldElement FieldElement::zero(const FieldConfig& config) {
  return FieldElement(config, kInfExp, {}, config.precision);
}

FieldElement FieldElement::one(const FieldConfig& config) {
  return uniformizer_pow(config, 0);
}

FieldElement FieldElement::uniformizer_pow(const FieldConfig& config,
                                           std::int64_t m) {
  std::vector<std::uint8_t> digits(config.precision, 0);
  digits[0] = 1;
  return FieldElement(config, m, std::move(digits), config.precision);
}

FieldElement FieldElement::from_scale(const FieldConfig& config,
                                      ScaleValue s) {
  return s.zero ? zero(config) : uniformizer_pow(config, s.exponent);
}

FieldElement FieldElement::from_integer(const FieldConfig& config,
                                        std::int64_t k) {
  if (k == 0) return zero(config);
  bool negative = k < 0;
  std::uint64_t a = negative ? -static_cast<std::uint64_t>(k)
                             : static_cast<std::uint64_t>(k);
  if (config.backend == Backend::LAURENT) a %= config.p;
  if (a == 0) return zero(config);
  std::vector<std::uint8_t> digits;
  std::int64_t v = 0;
  while (a % config.p == 0) {
    a /= config.p;
    ++v;
  }
  while (a != 0 && digits.size() < config.precision) {
    digits.push_back(static_cast<std::uint8_t>(a % config.p));
    a /= config.p;
  }
  FieldElement x = make(config, v, digits);
  // Integers shorter than the precision window are exactly represented.
  if (x.known_ < config.precision && a == 0) x.known_ = config.precision;
  return negative ? neg(x) : x;
}

FieldElement add(const FieldElement& x, const FieldElement& y) {
  require_same_config(x, y);
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;

  const FieldConfig& cfg = x.config();
  const std::uint32_t p = cfg.p;
  const FieldElement& lo = x.valuation() <= y.valuation() ? x : y;
  const FieldElement& hi = x.valuation() <= y.valuation() ? y : x;
  const std::uint64_t delta =
      static_cast<std::uint64_t>(hi.valuation() - lo.valuation());

  // Digits of `hi` below its valuation are exact zeros, so the trusted
  // window of the raw sum runs to min(known_lo, delta + known_hi).
  std::uint64_t trusted = lo.known();
  if (delta < trusted)
    trusted = std::min<std::uint64_t>(trusted, delta + hi.known());
  const std::uint32_t t = static_cast<std::uint32_t>(trusted);

  std::vector<std::uint8_t> raw(t, 0);
  std::uint32_t carry = 0;
  for (std::uint32_t i = 0; i < t; ++i) {
    std::uint32_t s = lo.digit(i) + carry;
    if (i >= delta && i - delta < hi.known()) s += hi.digit(i - static_cast<std::uint32_t>(delta));
    if (cfg.backend == Backend::PADIC) {
      raw[i] = static_cast<std::uint8_t>(s % p);
      carry = s / p;
    } else {
      raw[i] = static_cast<std::uint8_t>(s % p);
      carry = 0;
    }
  }

  std::uint32_t cancelled = 0;
  while (cancelled < t && raw[cancelled] == 0) ++cancelled;

  if (cancelled == t) {
    if (x.known() == cfg.precision && y.known() == cfg.precision) {
      // Full-precision representations cancelled digit for digit: this is
      // the complement pattern x + (-x), treated as an exact inverse pair.
      return FieldElement::zero(cfg);
    }
    throw PrecisionExhausted(
        "catastrophic cancellation: no significant digits survive");
  }

  std::vector<std::uint8_t> digits(cfg.precision, 0);
  std::copy(raw.begin() + cancelled, raw.end(), digits.begin());
  return FieldElement(cfg, lo.valuation() + cancelled, std::move(digits),
                      t - cancelled);
}

FieldElement neg(const FieldElement& x) {
  if (x.is_zero()) return x;
  const FieldConfig& cfg = x.config();
  const std::uint32_t p = cfg.p;
  std::vector<std::uint8_t> digits(cfg.precision, 0);
  if (cfg.backend == Backend::PADIC) {
    // p-complement of the unit part: -(d0 + d1 p + ...) mod p^known.
    digits[0] = static_cast<std::uint8_t>(p - x.digit(0));
    for (std::uint32_t i = 1; i < x.known(); ++i)
      digits[i] = static_cast<std::uint8_t>(p - 1 - x.digit(i));
  } else {
    for (std::uint32_t i = 0; i < x.known(); ++i)
      digits[i] = static_cast<std::uint8_t>((p - x.digit(i)) % p);
  }
  return FieldElement(cfg, x.valuation(), std::move(digits), x.known());
}

FieldElement sub(const FieldElement& x, const FieldElement& y) {
  require_same_config(x, y);
  return add(x, neg(y));
}

FieldElement mul(const FieldElement& x, const FieldElement& y) {
  require_same_config(x, y);
  const FieldConfig& cfg = x.config();
  if (x.is_zero() || y.is_zero()) return FieldElement::zero(cfg);

  const std::uint32_t p = cfg.p;
  const std::uint32_t k = std::min(x.known(), y.known());
  std::vector<std::uint64_t> acc(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    if (x.digit(i) == 0) continue;
    const std::uint64_t xi = x.digit(i);
    for (std::uint32_t j = 0; i + j < k; ++j) acc[i + j] += xi * y.digit(j);
  }
  std::vector<std::uint8_t> digits(cfg.precision, 0);
  if (cfg.backend == Backend::PADIC) {
    std::uint64_t carry = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
      std::uint64_t s = acc[i] + carry;
      digits[i] = static_cast<std::uint8_t>(s % p);
      carry = s / p;
    }
  } else {
    for (std::uint32_t i = 0; i < k; ++i)
      digits[i] = static_cast<std::uint8_t>(acc[i] % p);
  }
  return FieldElement(cfg, x.valuation() + y.valuation(), std::move(digits),
                      k);
}

FieldElement div(const FieldElement& x, const FieldElement& y) {
  require_same_config(x, y);
  if (y.is_zero()) throw DivisionByZero("division by exact zero");
  const FieldConfig& cfg = x.config();
  if (x.is_zero()) return FieldElement::zero(cfg);

  const std::uint32_t p = cfg.p;
  const std::uint32_t k = std::min(x.known(), y.known());
  const std::uint32_t inv0 = mod_inverse(y.digit(0), p);

  // Long division on unit parts: peel one quotient digit at a time and
  // subtract the corresponding multiple of y from the residual.
  std::vector<std::int64_t> res(k, 0);
  for (std::uint32_t i = 0; i < k; ++i) res[i] = x.digit(i);
  std::vector<std::uint8_t> digits(cfg.precision, 0);
  for (std::uint32_t i = 0; i < k; ++i) {
    std::int64_t r = res[i] % p;
    if (r < 0) r += p;
    const std::uint32_t q = static_cast<std::uint32_t>(r) * inv0 % p;
    digits[i] = static_cast<std::uint8_t>(q);
    if (q != 0) {
      for (std::uint32_t j = i; j < k; ++j)
        res[j] -= static_cast<std::int64_t>(q) * y.digit(j - i);
    }
    if (cfg.backend == Backend::PADIC) {
      // res[i] is now a multiple of p; push it into the next column.
      assert(res[i] % static_cast<std::int64_t>(p) == 0);
      if (i + 1 < k) res[i + 1] += res[i] / static_cast<std::int64_t>(p);
    } else {
      res[i] = 0;
    }
  }
  return FieldElement(cfg, x.valuation() - y.valuation(), std::move(digits),
                      k);
}

FieldElement scale_exp(const FieldElement& x, std::int64_t m) {
  if (x.is_zero()) return x;
  FieldElement r = x;
  r.valuation_ += m;
  return r;
}

FieldElement scale(const FieldElement& x, ScaleValue s) {
  if (s.zero) return FieldElement::zero(x.config());
  return scale_exp(x, s.exponent);
}

std::int64_t abs_exp(const FieldElement& x) { return x.valuation(); }

PhaseFraction PhaseFraction::reduced(std::uint64_t num, std::uint64_t den,
                                     std::uint32_t p) {
  num %= den;
  while (num != 0 && den > 1 && num % p == 0) {
    num /= p;
    den /= p;
  }
  PhaseFraction f;
  if (num == 0) return f;
  f.num_ = num;
  f.den_ = den;
  f.p_ = p;
  return f;
}

PhaseFraction PhaseFraction::operator+(const PhaseFraction& other) const {
  if (is_trivial()) return other;
  if (other.is_trivial()) return *this;
  if (p_ != other.p_)
    throw DomainError("phases from different residue characteristics");
  std::uint64_t den = std::max(den_, other.den_);
  std::uint64_t a = num_ * (den / den_);
  std::uint64_t b = other.num_ * (den / other.den_);
  return reduced(a + b, den, p_);
}

PhaseFraction character(const FieldElement& x) {
  const FieldConfig& cfg = x.config();
  if (x.is_zero() || x.valuation() >= 0) return PhaseFraction();

  if (cfg.backend == Backend::PADIC) {
    const std::uint64_t need = static_cast<std::uint64_t>(-x.valuation());
    if (need > x.known())
      throw PrecisionExhausted(
          "phase undetermined: window misses negative-valuation digits");
    std::uint64_t den = 1;
    for (std::uint64_t i = 0; i < need; ++i) {
      if (den > std::numeric_limits<std::uint64_t>::max() / cfg.p)
        throw DomainError("phase denominator exceeds 64-bit range");
      den *= cfg.p;
    }
    std::uint64_t num = 0;
    std::uint64_t pw = 1;
    for (std::uint64_t i = 0; i < need; ++i) {
      num += pw * x.digit(static_cast<std::uint32_t>(i));
      pw *= cfg.p;
    }
    return PhaseFraction::reduced(num, den, cfg.p);
  }

  // LAURENT: only the coefficient of t^-1 enters the character.
  const std::int64_t idx = -1 - x.valuation();
  if (idx < 0) return PhaseFraction();
  if (static_cast<std::uint64_t>(idx) >= x.known())
    throw PrecisionExhausted(
        "phase undetermined: window misses the t^-1 coefficient");
  return PhaseFraction::reduced(x.digit(static_cast<std::uint32_t>(idx)),
                                cfg.p, cfg.p);
}

std::vector<std::uint8_t> ball_id(const FieldElement& x, std::uint32_t level) {
  if (!x.is_zero() && x.valuation() < 0)
    throw DomainError("ball labels are defined on the ring of integers only");
  std::vector<std::uint8_t> label(level, 0);
  if (x.is_zero()) return label;
  const std::uint64_t v = static_cast<std::uint64_t>(x.valuation());
  if (level > v + x.known())
    throw PrecisionExhausted("ball level exceeds the trusted digit window");
  for (std::uint32_t j = 0; j < level; ++j)
    if (j >= v) label[j] = x.digit(j - static_cast<std::uint32_t>(v));
  return label;
}

bool equal_to_precision(const FieldElement& x, const FieldElement& y) {
  if (!(x.config() == y.config())) return false;
  if (x.is_zero() || y.is_zero()) return x.is_zero() == y.is_zero();
  if (x.valuation() != y.valuation()) return false;
  const std::uint32_t k = std::min(x.known(), y.known());
  for (std::uint32_t i = 0; i < k; ++i)
    if (x.digit(i) != y.digit(i)) return false;
  return true;
}

FieldElement gamma_draw(const FieldConfig& config, RngStream& rng) {
  std::vector<std::uint8_t> digits(config.precision);
  for (auto& d : digits) d = static_cast<std::uint8_t>(rng.next_below(config.p));
  std::uint32_t lead = 0;
  while (lead < config.precision && digits[lead] == 0) ++lead;
  if (lead == config.precision) return FieldElement::zero(config);
  std::vector<std::uint8_t> unit(digits.begin() + lead, digits.end());
  return FieldElement::make(config, lead, unit);
}

FieldElement unit_draw(const FieldConfig& config, RngStream& rng) {
  std::vector<std::uint8_t> digits(config.precision);
  digits[0] = static_cast<std::uint8_t>(1 + rng.next_below(config.p - 1));
  for (std::uint32_t i = 1; i < config.precision; ++i)
    digits[i] = static_cast<std::uint8_t>(rng.next_below(config.p));
  return FieldElement::make(config, 0, digits);
}

}  // namespace ulf
