#include "ulf/laws.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ulf {

namespace {

using boost::multiprecision::cpp_int;

cpp_int int_pow(std::uint32_t base, std::uint32_t e) {
  cpp_int r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= base;
  return r;
}

cpp_int binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) return 0;
  cpp_int r = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    r *= n - i;
    r /= i + 1;
  }
  return r;
}

Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

void require_law_params(std::uint32_t q, std::uint32_t n) {
  if (q < 2) throw DomainError("residue order q must be at least 2");
  if (n < 1) throw DomainError("dimension n must be positive");
}

}  // namespace

Rational tv_formula(std::uint32_t q, std::uint32_t n, std::uint32_t k) {
  require_law_params(q, n);
  if (k < 1 || k > n)
    throw DomainError("coordinate count k must satisfy 1 <= k <= n");
  // q^-n (1 - q^-k) / (1 - q^-n) = (q^k - 1) / (q^k (q^n - 1)).
  const cpp_int qk = int_pow(q, k);
  const cpp_int qn = int_pow(q, n);
  return Rational(qk - 1, qk * (qn - 1));
}

Rational tv_oracle(std::uint32_t q, std::uint32_t n, std::uint32_t k) {
  require_law_params(q, n);
  if (k < 1 || k > n)
    throw DomainError("coordinate count k must satisfy 1 <= k <= n");
  if (n > 64) throw DomainError("oracle enumeration capped at n = 64");

  // Y counts unit coordinates among the first k of n i.i.d. gamma draws:
  // Y ~ Binomial(k, 1 - 1/q). Conditioning the full count X ~ Binomial(n,
  // 1 - 1/q) on X != 0 turns P(Y = y) into P(Y = y | X != 0); the distance
  // between the two laws of Y is the vector-law distance.
  const cpp_int qk = int_pow(q, k);
  const cpp_int qn = int_pow(q, n);
  const Rational p_x_nonzero = Rational(qn - 1, qn);

  Rational sum = 0;
  for (std::uint32_t y = 0; y <= k; ++y) {
    const Rational p_y =
        Rational(binomial(k, y) * int_pow(q - 1, y), qk);
    Rational p_y_cond;
    if (y == 0) {
      // P(Y = 0, X != 0) = q^-k (1 - q^-(n-k)).
      const cpp_int qnk = int_pow(q, n - k);
      p_y_cond = Rational(qnk - 1, qk * qnk) / p_x_nonzero;
    } else {
      p_y_cond = p_y / p_x_nonzero;
    }
    sum += abs_rational(p_y - p_y_cond);
  }
  return sum / 2;
}

Rational gl_density(std::uint32_t q, std::uint32_t n) {
  require_law_params(q, n);
  Rational r = 1;
  for (std::uint32_t i = 1; i <= n; ++i) {
    const cpp_int qi = int_pow(q, i);
    r *= Rational(qi - 1, qi);
  }
  return r;
}

Rational gl_density_enumerated(std::uint32_t q, std::uint32_t n) {
  require_law_params(q, n);
  const std::uint32_t cells = n * n;
  double total = std::pow(static_cast<double>(q), cells);
  if (total > (1 << 22))
    throw DomainError("enumeration space too large; use gl_density");
  const std::uint64_t count = static_cast<std::uint64_t>(total);

  std::vector<std::uint32_t> entries(cells, 0);
  std::uint64_t invertible = 0;
  for (std::uint64_t it = 0;; ++it) {
    // Determinant over F_q by elimination on a scratch copy.
    std::vector<std::uint32_t> m = entries;
    bool singular = false;
    for (std::uint32_t col = 0; col < n && !singular; ++col) {
      std::uint32_t pivot = col;
      while (pivot < n && m[pivot * n + col] == 0) ++pivot;
      if (pivot == n) {
        singular = true;
        break;
      }
      if (pivot != col)
        for (std::uint32_t j = 0; j < n; ++j)
          std::swap(m[pivot * n + j], m[col * n + j]);
      // Inverse of the pivot by Fermat.
      std::uint32_t inv = 1, b = m[col * n + col] % q, e = q - 2;
      while (e) {
        if (e & 1) inv = inv * b % q;
        b = b * b % q;
        e >>= 1;
      }
      for (std::uint32_t r = col + 1; r < n; ++r) {
        const std::uint32_t f = m[r * n + col] * inv % q;
        if (f == 0) continue;
        for (std::uint32_t j = col; j < n; ++j)
          m[r * n + j] = (m[r * n + j] + (q - f) * m[col * n + j]) % q;
      }
    }
    if (!singular) ++invertible;

    if (it + 1 == count) break;
    std::uint32_t pos = 0;
    while (entries[pos] + 1 == q) entries[pos++] = 0;
    ++entries[pos];
  }
  return Rational(invertible, count);
}

Rational sphere_mass(std::uint32_t q, std::uint32_t n) {
  require_law_params(q, n);
  const cpp_int qn = int_pow(q, n);
  return Rational(qn - 1, qn);
}

Rational finite_freedman_bound(std::uint32_t q, std::uint32_t n) {
  require_law_params(q, n);
  return Rational(1, int_pow(q, n));
}

bool freedman_bound_holds(double empirical_tv, std::uint32_t q,
                          std::uint32_t n, double standard_error,
                          double slack_sigmas) {
  return empirical_tv <=
         to_double(finite_freedman_bound(q, n)) + slack_sigmas * standard_error;
}

RadialProfile::RadialProfile(std::uint32_t q, std::int64_t m_lo,
                             std::int64_t m_hi, std::vector<double> values)
    : q_(q), m_lo_(m_lo), m_hi_(m_hi), values_(std::move(values)) {
  if (q < 2) throw DomainError("residue order q must be at least 2");
  if (m_hi < m_lo) throw DomainError("empty profile window");
  const std::size_t expected = static_cast<std::size_t>(m_hi - m_lo) + 1;
  if (values_.size() != expected)
    throw DomainError("profile has " + std::to_string(values_.size()) +
                      " values for a window of " + std::to_string(expected));
}

double RadialProfile::at_norm_exp(std::int64_t m) const {
  if (m == kInfExp) return 1.0;  // phi(0)
  if (m > m_hi_) return 1.0;
  if (m < m_lo_) return values_.front();
  return values_[static_cast<std::size_t>(m - m_lo_)];
}

bool RadialProfile::exhibits_unit_limit(double tol) const {
  return std::abs(values_.back() - 1.0) <= tol;
}

RadialProfile phi_from_pi(const ScaleLaw& pi, std::uint32_t q,
                          std::int64_t m_lo, std::int64_t m_hi) {
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(m_hi - m_lo) + 1);
  // Grid index m stands for radius q^-m, so the value there is
  // phi(q^-m) = P(|tau| <= q^m) = zero mass + atoms at exponents >= -m.
  for (std::int64_t m = m_lo; m <= m_hi; ++m)
    values.push_back(pi.prob_abs_le(-m));
  return RadialProfile(q, m_lo, m_hi, std::move(values));
}

std::variant<ScaleLaw, MonotonicityViolation> pi_from_phi(
    const RadialProfile& phi) {
  constexpr double kTol = 1e-12;
  const auto& v = phi.values();
  const std::int64_t lo = phi.m_lo();

  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < -kTol)
      return MonotonicityViolation{lo + static_cast<std::int64_t>(i),
                                   lo + static_cast<std::int64_t>(i), v[i],
                                   v[i], "negative value"};
    if (v[i] > 1.0 + kTol)
      return MonotonicityViolation{lo + static_cast<std::int64_t>(i),
                                   lo + static_cast<std::int64_t>(i), v[i],
                                   v[i], "value exceeds one"};
  }
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    if (v[i] > v[i + 1] + kTol)
      return MonotonicityViolation{
          lo + static_cast<std::int64_t>(i),
          lo + static_cast<std::int64_t>(i) + 1, v[i], v[i + 1],
          "profile increases with the radius"};
  }

  // Differences along the grid recover the atoms: the atom at exponent -m
  // is phi(grid m) - phi(grid m-1). Residual mass at the window edges goes
  // to the zero atom (small-|tau| side) and to a boundary atom one step
  // outside the window (large-|tau| side).
  std::map<std::int64_t, double> atoms;
  double atom_total = 0.0;
  for (std::int64_t m = phi.m_lo() + 1; m <= phi.m_hi(); ++m) {
    const double mass = phi.at_norm_exp(m) - phi.at_norm_exp(m - 1);
    if (mass > 0.0) {
      atoms[-m] = mass;
      atom_total += mass;
    }
  }
  const double boundary = 1.0 - v.back();
  if (boundary > 0.0) {
    atoms[-phi.m_hi() - 1] = boundary;
    atom_total += boundary;
  }
  // Assigning the remainder (rather than v.front() itself) keeps the total
  // mass at exactly one even after clipping roundoff-negative differences.
  const double zero_mass = std::max(0.0, 1.0 - atom_total);
  return ScaleLaw(std::move(atoms), zero_mass);
}

}  // namespace ulf
