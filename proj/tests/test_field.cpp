#include <doctest.h>

#include <cstdint>
#include <vector>

#include "ulf/field.hpp"
#include "ulf/rng.hpp"

using namespace ulf;

namespace {

const FieldConfig kQ2(2, Backend::PADIC);
const FieldConfig kQ3(3, Backend::PADIC);
const FieldConfig kQ5(5, Backend::PADIC);
const FieldConfig kL2(2, Backend::LAURENT);
const FieldConfig kL3(3, Backend::LAURENT);

// Independent oracle: base-p expansion of an ordinary integer, as the digit
// vector an exact embedding must produce.
std::vector<std::uint8_t> base_p_digits(std::uint64_t a, std::uint32_t p,
                                        std::size_t len) {
  std::vector<std::uint8_t> d(len, 0);
  for (std::size_t i = 0; i < len && a; ++i) {
    d[i] = static_cast<std::uint8_t>(a % p);
    a /= p;
  }
  return d;
}

// Digits of x at absolute positions [0, len) (position = valuation).
std::vector<std::uint8_t> absolute_digits(const FieldElement& x,
                                          std::size_t len) {
  std::vector<std::uint8_t> d(len, 0);
  if (x.is_zero()) return d;
  for (std::size_t i = 0; i < len; ++i) {
    const std::int64_t rel = static_cast<std::int64_t>(i) - x.valuation();
    if (rel >= 0 && rel < static_cast<std::int64_t>(x.config().precision))
      d[i] = x.digit(static_cast<std::uint32_t>(rel));
  }
  return d;
}

}  // namespace

TEST_CASE("construction and absolute value") {
  const FieldElement one = FieldElement::make(kQ2, 0, {1});
  CHECK(abs_exp(one) == 0);
  CHECK(one.known() == 1);

  const FieldElement rho2 = FieldElement::make(kQ3, 2, {1});
  CHECK(abs_exp(rho2) == 2);

  const FieldElement zero = FieldElement::make(kQ2, kInfExp, {});
  CHECK(zero.is_zero());
  CHECK(abs_exp(zero) == kInfExp);

  CHECK(abs_exp(FieldElement::uniformizer_pow(kQ5, 3)) == 3);

  CHECK_THROWS_AS(FieldElement::make(kQ2, 1, {0, 1}), NormalizationError);
  CHECK_THROWS_AS(FieldElement::make(kQ2, 0, {3}), DomainError);
  CHECK_THROWS_AS(FieldConfig(4, Backend::PADIC), DomainError);
  CHECK_THROWS_AS(FieldConfig(2, Backend::PADIC, 0), DomainError);
}

TEST_CASE("addition follows the ultrametric inequality") {
  const FieldElement one = FieldElement::one(kQ2);
  const FieldElement rho = FieldElement::uniformizer_pow(kQ2, 1);

  // Distinct valuations: |x+y| = |x| v |y| with no carry into the lead.
  const FieldElement s = one + rho;
  CHECK(abs_exp(s) == 0);
  CHECK(s.digit(0) == 1);
  CHECK(s.digit(1) == 1);

  // 1 + 1 = 2 has 2-adic valuation 1 and loses one significant digit.
  const FieldElement two = one + one;
  CHECK(abs_exp(two) == 1);
  CHECK(two.digit(0) == 1);
  CHECK(two.digit(1) == 0);
  CHECK(two.known() == kQ2.precision - 1);

  // Additive inverses cancel to exact zero.
  CHECK((one - one).is_zero());
  CHECK((one + neg(one)).is_zero());

  // Partial-precision full cancellation cannot certify zero.
  const FieldElement coarse = FieldElement::make(kQ2, 0, {1, 1});
  CHECK_THROWS_AS(coarse - coarse, PrecisionExhausted);

  CHECK_THROWS_AS(FieldElement::one(kQ2) + FieldElement::one(kQ3),
                  DomainError);
}

TEST_CASE("multiplication is exactly multiplicative on absolute values") {
  for (const auto& cfg : {kQ2, kQ3, kQ5, kL2}) {
    const FieldElement rho = FieldElement::uniformizer_pow(cfg, 1);
    const FieldElement rho2 = FieldElement::uniformizer_pow(cfg, 2);
    CHECK(abs_exp(rho * rho2) == 3);
  }

  // 3 * 3 = 9 with digits of 9 base 2 = [1,0,0,1].
  const FieldElement three = FieldElement::from_integer(kQ2, 3);
  const FieldElement nine = three * three;
  CHECK(abs_exp(nine) == 0);
  CHECK(nine.digit(0) == 1);
  CHECK(nine.digit(1) == 0);
  CHECK(nine.digit(2) == 0);
  CHECK(nine.digit(3) == 1);
  CHECK(nine == FieldElement::from_integer(kQ2, 9));

  CHECK_THROWS_AS(three / FieldElement::zero(kQ2), DivisionByZero);
}

TEST_CASE("integer-embedding oracle: arithmetic matches big integers mod p^N") {
  // Small precision keeps p^N inside 64 bits for the oracle itself.
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const std::uint32_t N = 12;
    const FieldConfig cfg(p, Backend::PADIC, N);
    std::uint64_t pN = 1;
    for (std::uint32_t i = 0; i < N; ++i) pN *= p;
    RngStream rng(41, p);
    for (int t = 0; t < 2000; ++t) {
      const std::uint64_t a = 1 + rng.next_u64() % (pN - 1);
      const std::uint64_t b = 1 + rng.next_u64() % (pN - 1);
      const FieldElement ea = FieldElement::from_integer(cfg, static_cast<std::int64_t>(a));
      const FieldElement eb = FieldElement::from_integer(cfg, static_cast<std::int64_t>(b));
      // Addition: compare absolute digit windows of a+b.
      const auto sum_digits = base_p_digits(a + b, p, N);
      CHECK(absolute_digits(ea + eb, N) == sum_digits);
      // Multiplication: valuations add and units match mod p^known.
      const FieldElement prod = ea * eb;
      const unsigned __int128 ab =
          static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
      std::int64_t v = 0;
      unsigned __int128 unit = ab;
      while (unit % p == 0) {
        unit /= p;
        ++v;
      }
      CHECK(prod.valuation() == v);
      for (std::uint32_t i = 0; i < prod.known(); ++i) {
        CHECK(prod.digit(i) == static_cast<std::uint8_t>(unit % p));
        unit /= p;
      }
    }
  }
}

TEST_CASE("laurent backend is exact polynomial arithmetic over F_p") {
  for (const auto& cfg : {kL2, kL3}) {
    const std::uint32_t p = cfg.p;
    RngStream rng(43, p);
    for (int t = 0; t < 1000; ++t) {
      const FieldElement a = gamma_draw(cfg, rng);
      const FieldElement b = gamma_draw(cfg, rng);
      if (a.is_zero() || b.is_zero()) continue;

      // Addition is carry-free digit-wise addition mod p.
      try {
        const FieldElement s = a + b;
        const std::size_t len = 8;
        const auto da = absolute_digits(a, len);
        const auto db = absolute_digits(b, len);
        const auto ds = absolute_digits(s, len);
        const std::size_t top = std::min<std::size_t>(
            len, static_cast<std::size_t>(
                     std::min(a.valuation() + a.known(),
                              b.valuation() + b.known())));
        for (std::size_t i = 0; i < top; ++i)
          CHECK(ds[i] == (da[i] + db[i]) % p);
      } catch (const PrecisionExhausted&) {
      }

      // Multiplication is truncated convolution of the unit parts.
      const FieldElement m = a * b;
      CHECK(m.valuation() == a.valuation() + b.valuation());
      for (std::uint32_t i = 0; i < m.known(); ++i) {
        std::uint32_t conv = 0;
        for (std::uint32_t j = 0; j <= i; ++j)
          conv += a.digit(j) * b.digit(i - j);
        CHECK(m.digit(i) == conv % p);
      }
    }
  }
}

TEST_CASE("division inverts multiplication on random units") {
  for (const auto& cfg : {kQ2, kQ3, kL2}) {
    RngStream rng(47, cfg.p);
    const FieldElement one = FieldElement::one(cfg);
    for (int t = 0; t < 1000; ++t) {
      const FieldElement x = unit_draw(cfg, rng);
      CHECK(equal_to_precision(one / x * x, one));
    }
    // And on mixed valuations.
    for (int t = 0; t < 200; ++t) {
      const FieldElement x = scale_exp(unit_draw(cfg, rng), -3);
      const FieldElement y = scale_exp(unit_draw(cfg, rng), 2);
      CHECK(equal_to_precision(x / y * y, x));
    }
  }
}

TEST_CASE("character is trivial on the integers and exact off them") {
  // Everything integral has phase zero.
  RngStream rng(53, 0);
  for (int t = 0; t < 100; ++t)
    CHECK(character(gamma_draw(kQ5, rng)).is_trivial());

  // p = 5: rho^-1 with unit digit 1 has phase 1/5.
  const FieldElement x = FieldElement::uniformizer_pow(kQ5, -1);
  const PhaseFraction f = character(x);
  CHECK(f.numerator() == 1);
  CHECK(f.denominator() == 5);

  // Laurent character reads the t^-1 coefficient.
  const FieldElement y = FieldElement::uniformizer_pow(kL3, -1);
  CHECK(character(y).numerator() == 1);
  CHECK(character(y).denominator() == 3);
  // t^-2 with zero t^-1 coefficient is trivial.
  const FieldElement y2 = FieldElement::uniformizer_pow(kL3, -2);
  CHECK(character(y2).is_trivial());

  // Nontrivial somewhere on rho^-1 D, as the character must be.
  CHECK(!character(FieldElement::uniformizer_pow(kQ2, -1)).is_trivial());

  // Precision misses the negative digits: the phase is undetermined.
  const FieldElement coarse = FieldElement::make(kQ2, -3, {1, 1});
  CHECK_THROWS_AS(character(coarse), PrecisionExhausted);
}

TEST_CASE("character is a homomorphism into phases mod 1") {
  for (const auto& cfg : {kQ2, kQ3, kQ5, kL2, kL3}) {
    RngStream rng(59, cfg.p);
    int done = 0;
    while (done < 10000) {
      const std::int64_t mx = static_cast<std::int64_t>(rng.next_below(5)) - 3;
      const std::int64_t my = static_cast<std::int64_t>(rng.next_below(5)) - 3;
      const FieldElement x = scale_exp(gamma_draw(cfg, rng), mx);
      const FieldElement y = scale_exp(gamma_draw(cfg, rng), my);
      try {
        const PhaseFraction lhs = character(x + y);
        const PhaseFraction rhs = character(x) + character(y);
        CHECK(lhs == rhs);
        ++done;
      } catch (const PrecisionExhausted&) {
        // cancellation pushed the window past the negative digits; redraw
      }
    }
  }
}

TEST_CASE("phase fractions stay reduced in [0,1) with power-of-p denominators") {
  const PhaseFraction a = PhaseFraction::reduced(3, 8, 2);
  const PhaseFraction b = PhaseFraction::reduced(5, 8, 2);
  const PhaseFraction s = a + b;  // 3/8 + 5/8 = 1 = 0 mod 1
  CHECK(s.is_trivial());
  const PhaseFraction c = PhaseFraction::reduced(1, 2, 2) + PhaseFraction::reduced(3, 4, 2);
  CHECK(c.numerator() == 1);
  CHECK(c.denominator() == 4);
  CHECK(c.value() == doctest::Approx(0.25));
}

TEST_CASE("ball labels") {
  const FieldElement zero = FieldElement::zero(kQ2);
  CHECK(ball_id(zero, 3) == std::vector<std::uint8_t>{0, 0, 0});
  CHECK(ball_id(FieldElement::one(kQ2), 2) == std::vector<std::uint8_t>{1, 0});

  CHECK_THROWS_AS(ball_id(FieldElement::uniformizer_pow(kQ2, -1), 2),
                  DomainError);
  CHECK_THROWS_AS(ball_id(FieldElement::make(kQ2, 0, {1, 1}), 5),
                  PrecisionExhausted);

  // Constant on the ball: perturbations below q^-k do not move the label.
  RngStream rng(61, 0);
  for (const auto& cfg : {kQ3, kL2}) {
    for (int t = 0; t < 1000; ++t) {
      const FieldElement x = gamma_draw(cfg, rng);
      const FieldElement delta = scale_exp(gamma_draw(cfg, rng), 3);
      try {
        CHECK(ball_id(x + delta, 3) == ball_id(x, 3));
      } catch (const PrecisionExhausted&) {
      }
    }
  }
}

TEST_CASE("minimal precision still has exact valuations") {
  const FieldConfig tiny(2, Backend::PADIC, 1);
  RngStream rng(63, 0);
  for (int t = 0; t < 200; ++t) {
    const FieldElement x = gamma_draw(tiny, rng);
    const FieldElement y = gamma_draw(tiny, rng);
    if (x.is_zero() || y.is_zero()) continue;
    CHECK(abs_exp(x * y) == abs_exp(x) + abs_exp(y));
    CHECK(equal_to_precision(x / y * y, x));
  }
  // One digit cannot distinguish 2 from 0 in Q_2; by the complement
  // convention the sum collapses to the exact zero.
  CHECK((FieldElement::one(tiny) + FieldElement::one(tiny)).is_zero());
}

TEST_CASE("ultrametric inequality on random pairs") {
  for (const auto& cfg : {kQ2, kQ3, kQ5, kL2, kL3}) {
    RngStream rng(67, cfg.p);
    for (int t = 0; t < 2000; ++t) {
      const FieldElement x =
          scale_exp(gamma_draw(cfg, rng),
                    static_cast<std::int64_t>(rng.next_below(7)) - 3);
      const FieldElement y =
          scale_exp(gamma_draw(cfg, rng),
                    static_cast<std::int64_t>(rng.next_below(7)) - 3);
      if (x.is_zero() || y.is_zero()) continue;
      CHECK(abs_exp(x * y) == abs_exp(x) + abs_exp(y));
      try {
        const std::int64_t s = abs_exp(x + y);
        CHECK(s >= std::min(abs_exp(x), abs_exp(y)));
        if (abs_exp(x) != abs_exp(y))
          CHECK(s == std::min(abs_exp(x), abs_exp(y)));
      } catch (const PrecisionExhausted&) {
        // equality of valuations with deep cancellation; allowed
        CHECK(abs_exp(x) == abs_exp(y));
      }
    }
  }
}

TEST_CASE("negative integers embed through the complement") {
  const FieldElement minus_one = FieldElement::from_integer(kQ2, -1);
  CHECK(abs_exp(minus_one) == 0);
  for (std::uint32_t i = 0; i < kQ2.precision; ++i)
    CHECK(minus_one.digit(i) == 1);  // ...1111 in base 2
  CHECK((FieldElement::from_integer(kQ2, 5) +
         FieldElement::from_integer(kQ2, -5))
            .is_zero());
  CHECK(equal_to_precision(
      FieldElement::from_integer(kQ3, -6) + FieldElement::from_integer(kQ3, 10),
      FieldElement::from_integer(kQ3, 4)));
}
