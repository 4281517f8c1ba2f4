#include "ulf/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace ulf {

namespace {

// Reduction of an integral matrix mod rho: the leading digits as an F_p
// matrix (entries of positive valuation reduce to 0).
std::vector<std::uint32_t> residue_matrix(const UMatrix& U) {
  std::vector<std::uint32_t> r(U.rows() * U.cols(), 0);
  for (std::size_t i = 0; i < U.rows(); ++i)
    for (std::size_t j = 0; j < U.cols(); ++j) {
      const FieldElement& e = U.at(i, j);
      r[i * U.cols() + j] = (!e.is_zero() && e.valuation() == 0)
                                ? e.digit(0)
                                : 0;
    }
  return r;
}

std::uint32_t fp_inverse(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  std::uint32_t b = a % p;
  std::uint32_t e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// Rank of an n x m matrix over F_p; `mat` is destroyed. If `kernel` is
// non-null and the columns are dependent, a nonzero kernel vector of the
// COLUMN space relation (length m) is written there.
std::size_t fp_column_rank(std::vector<std::uint32_t> mat, std::size_t n,
                           std::size_t m, std::uint32_t p,
                           std::vector<std::uint32_t>* kernel) {
  std::vector<std::size_t> pivot_of_col(m, SIZE_MAX);
  std::size_t rank = 0;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m && row < n; ++col) {
    std::size_t pr = row;
    while (pr < n && mat[pr * m + col] == 0) ++pr;
    if (pr == n) continue;
    for (std::size_t j = 0; j < m; ++j)
      std::swap(mat[row * m + j], mat[pr * m + j]);
    const std::uint32_t inv = fp_inverse(mat[row * m + col], p);
    for (std::size_t j = 0; j < m; ++j)
      mat[row * m + j] = mat[row * m + j] * inv % p;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row) continue;
      const std::uint32_t f = mat[i * m + col];
      if (f == 0) continue;
      for (std::size_t j = 0; j < m; ++j)
        mat[i * m + j] = (mat[i * m + j] + (p - f) * mat[row * m + j]) % p;
    }
    pivot_of_col[col] = row;
    ++rank;
    ++row;
  }
  if (kernel && rank < m) {
    // Express a free column through the pivot columns.
    std::size_t free_col = 0;
    while (pivot_of_col[free_col] != SIZE_MAX) ++free_col;
    kernel->assign(m, 0);
    (*kernel)[free_col] = 1;
    for (std::size_t col = 0; col < m; ++col) {
      if (pivot_of_col[col] == SIZE_MAX) continue;
      const std::uint32_t c = mat[pivot_of_col[col] * m + free_col];
      if (c != 0) (*kernel)[col] = p - c;
    }
  }
  return rank;
}

void require_square(const UMatrix& U) {
  if (U.rows() != U.cols())
    throw DomainError("operation requires a square matrix");
}

UVector random_integral_vector(const FieldConfig& cfg, std::size_t n,
                               RngStream& rng) {
  std::vector<FieldElement> e;
  e.reserve(n);
  for (std::size_t i = 0; i < n; ++i) e.push_back(gamma_draw(cfg, rng));
  return UVector(std::move(e));
}

}  // namespace

UVector::UVector(std::vector<FieldElement> entries)
    : config_(entries.at(0).config()), entries_(std::move(entries)) {
  for (const auto& e : entries_)
    if (!(e.config() == config_))
      throw DomainError("vector entries have mixed field configurations");
}

UVector UVector::coordinate(const FieldConfig& config, std::size_t n,
                            std::size_t i) {
  UVector v(config, n);
  v[i] = FieldElement::one(config);
  return v;
}

UMatrix UMatrix::identity(const FieldConfig& config, std::size_t n) {
  UMatrix m(config, n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.at(i, i) = FieldElement::one(config);
  return m;
}

UVector UMatrix::column(std::size_t j) const {
  UVector v(config_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, j);
  return v;
}

UVector UMatrix::row(std::size_t i) const {
  UVector v(config_, cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = at(i, j);
  return v;
}

std::int64_t norm_exp(const UVector& x) {
  std::int64_t m = kInfExp;
  for (std::size_t i = 0; i < x.size(); ++i)
    m = std::min(m, x[i].valuation());
  return m;
}

UVector operator+(const UVector& a, const UVector& b) {
  if (a.size() != b.size()) throw DomainError("vector size mismatch");
  UVector r(a.config(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

UVector operator-(const UVector& a, const UVector& b) {
  if (a.size() != b.size()) throw DomainError("vector size mismatch");
  UVector r(a.config(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

UVector operator*(const FieldElement& c, const UVector& x) {
  UVector r(x.config(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = c * x[i];
  return r;
}

UVector apply(const UMatrix& U, const UVector& x) {
  if (U.cols() != x.size()) throw DomainError("dimension mismatch");
  UVector r(U.config(), U.rows());
  for (std::size_t i = 0; i < U.rows(); ++i) {
    FieldElement acc = FieldElement::zero(U.config());
    for (std::size_t j = 0; j < U.cols(); ++j)
      acc = acc + U.at(i, j) * x[j];
    r[i] = acc;
  }
  return r;
}

UMatrix operator*(const UMatrix& A, const UMatrix& B) {
  if (A.cols() != B.rows()) throw DomainError("dimension mismatch");
  UMatrix r(A.config(), A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < B.cols(); ++j) {
      FieldElement acc = FieldElement::zero(A.config());
      for (std::size_t k = 0; k < A.cols(); ++k)
        acc = acc + A.at(i, k) * B.at(k, j);
      r.at(i, j) = acc;
    }
  return r;
}

UVector scale_exp(const UVector& x, std::int64_t m) {
  UVector r(x.config(), x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = scale_exp(x[i], m);
  return r;
}

FieldElement dot(const UVector& a, const UVector& b) {
  if (a.size() != b.size()) throw DomainError("vector size mismatch");
  FieldElement acc = FieldElement::zero(a.config());
  for (std::size_t i = 0; i < a.size(); ++i) acc = acc + a[i] * b[i];
  return acc;
}

bool equal_to_precision(const UVector& a, const UVector& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!equal_to_precision(a[i], b[i])) return false;
  return true;
}

bool is_gl(const UMatrix& U) {
  require_square(U);
  const std::size_t n = U.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!U.at(i, j).is_zero() && U.at(i, j).valuation() < 0) return false;
  return fp_column_rank(residue_matrix(U), n, n, U.config().p, nullptr) == n;
}

IsometryCheck is_isometry_witnessed(const UMatrix& U, std::uint32_t trials,
                                    RngStream& rng) {
  require_square(U);
  const FieldConfig& cfg = U.config();
  for (std::uint32_t t = 0; t < trials; ++t) {
    UVector x = random_integral_vector(cfg, U.cols(), rng);
    try {
      if (norm_exp(apply(U, x)) != norm_exp(x)) return {false, x};
    } catch (const PrecisionExhausted&) {
      // Cannot evaluate this probe; move on to the next one.
    }
  }
  return {true, std::nullopt};
}

bool is_orthonormal(std::span<const UVector> vectors,
                    std::uint32_t scalar_trials, RngStream& rng) {
  if (vectors.empty()) return true;
  const FieldConfig& cfg = vectors[0].config();
  const std::uint32_t p = cfg.p;
  const std::size_t k = vectors.size();
  const std::size_t n = vectors[0].size();
  for (const auto& v : vectors) {
    if (v.size() != n) throw DomainError("vectors of mixed dimension");
    if (norm_exp(v) != 0) return false;
  }

  auto combination_holds = [&](const std::vector<FieldElement>& alpha,
                               std::int64_t expected) {
    UVector acc(cfg, n);
    for (std::size_t i = 0; i < k; ++i)
      if (!alpha[i].is_zero()) acc = acc + alpha[i] * vectors[i];
    return norm_exp(acc) == expected;
  };

  // Exhaust the leading-digit patterns when feasible: any failure of the
  // norm identity shows up already at some residue pattern.
  double patterns = 1;
  for (std::size_t i = 0; i < k; ++i) patterns *= p;
  if (patterns <= 4096) {
    std::vector<std::uint32_t> pat(k, 0);
    for (;;) {
      std::size_t pos = 0;
      while (pos < k && pat[pos] + 1 == p) pat[pos++] = 0;
      if (pos == k) break;
      ++pat[pos];
      std::vector<FieldElement> alpha;
      alpha.reserve(k);
      for (std::size_t i = 0; i < k; ++i)
        alpha.push_back(FieldElement::from_integer(cfg, pat[i]));
      try {
        if (!combination_holds(alpha, 0)) return false;
      } catch (const PrecisionExhausted&) {
        return false;  // the window itself witnesses a norm collapse
      }
    }
  }

  std::uint32_t inconclusive = 0;
  for (std::uint32_t t = 0; t < scalar_trials; ++t) {
    std::vector<FieldElement> alpha;
    alpha.reserve(k);
    std::int64_t expected = kInfExp;
    for (std::size_t i = 0; i < k; ++i) {
      if (rng.next_below(8) == 0) {
        alpha.push_back(FieldElement::zero(cfg));
        continue;
      }
      const std::int64_t m = static_cast<std::int64_t>(rng.next_below(6)) - 2;
      alpha.push_back(scale_exp(unit_draw(cfg, rng), m));
      expected = std::min(expected, m);
    }
    if (expected == kInfExp) continue;  // all scalars zero, nothing to test
    try {
      if (!combination_holds(alpha, expected)) return false;
    } catch (const PrecisionExhausted&) {
      if (++inconclusive > scalar_trials) break;  // give up redrawing
      --t;
    }
  }
  return true;
}

UMatrix carry_to(const UVector& x) {
  if (norm_exp(x) != 0)
    throw DomainError("carry_to requires a vector of norm one");
  const FieldConfig& cfg = x.config();
  const std::size_t n = x.size();
  std::size_t unit_row = 0;
  while (x[unit_row].valuation() != 0) ++unit_row;

  UMatrix U(cfg, n, n);
  for (std::size_t i = 0; i < n; ++i) U.at(i, 0) = x[i];
  std::size_t col = 1;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == unit_row) continue;
    U.at(j, col) = FieldElement::one(cfg);
    ++col;
  }
  if (!is_gl(U) ||
      !equal_to_precision(apply(U, UVector::coordinate(cfg, n, 0)), x))
    throw Error("carry_to postcondition violated");
  return U;
}

PolarParts polar(const UVector& x) {
  const std::int64_t m = norm_exp(x);
  if (m == kInfExp) return {ScaleValue::zero_value(), std::nullopt};
  return {ScaleValue::of_exponent(m), scale_exp(x, -m)};
}

std::int64_t det_exp(const UMatrix& U) {
  require_square(U);
  const std::size_t n = U.rows();
  UMatrix w = U;
  std::int64_t det = 0;
  for (std::size_t col = 0; col < n; ++col) {
    // Pivot on the largest absolute value, i.e. the smallest valuation:
    // the elimination multipliers then stay integral.
    std::size_t pivot = col;
    std::int64_t best = kInfExp;
    for (std::size_t r = col; r < n; ++r) {
      const std::int64_t v = w.at(r, col).valuation();
      if (v < best) {
        best = v;
        pivot = r;
      }
    }
    if (best == kInfExp) return kInfExp;  // exactly singular
    if (pivot != col)
      for (std::size_t j = col; j < n; ++j)
        std::swap(w.at(pivot, j), w.at(col, j));
    det += best;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (w.at(r, col).is_zero()) continue;
      const FieldElement f = w.at(r, col) / w.at(col, col);
      w.at(r, col) = FieldElement::zero(U.config());
      for (std::size_t j = col + 1; j < n; ++j)
        w.at(r, j) = w.at(r, j) - f * w.at(col, j);
    }
  }
  return det;
}

UMatrix inverse(const UMatrix& U) {
  require_square(U);
  const std::size_t n = U.rows();
  const FieldConfig& cfg = U.config();
  UMatrix w = U;
  UMatrix inv = UMatrix::identity(cfg, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    std::int64_t best = kInfExp;
    for (std::size_t r = col; r < n; ++r) {
      const std::int64_t v = w.at(r, col).valuation();
      if (v < best) {
        best = v;
        pivot = r;
      }
    }
    if (best == kInfExp) throw DomainError("matrix is not invertible");
    if (pivot != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(w.at(pivot, j), w.at(col, j));
        std::swap(inv.at(pivot, j), inv.at(col, j));
      }
    const FieldElement d = w.at(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      w.at(col, j) = w.at(col, j) / d;
      inv.at(col, j) = inv.at(col, j) / d;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || w.at(r, col).is_zero()) continue;
      const FieldElement f = w.at(r, col);
      w.at(r, col) = FieldElement::zero(cfg);
      for (std::size_t j = 0; j < n; ++j) {
        if (j != col) w.at(r, j) = w.at(r, j) - f * w.at(col, j);
        inv.at(r, j) = inv.at(r, j) - f * inv.at(col, j);
      }
    }
  }
  return inv;
}

}  // namespace ulf
