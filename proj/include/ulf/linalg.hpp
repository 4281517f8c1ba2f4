#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ulf/field.hpp"
#include "ulf/rng.hpp"

namespace ulf {

/// Vector over the local field, normed by the maximum of coordinate absolute
/// values.
class UVector {
 public:
  UVector(const FieldConfig& config, std::size_t n)
      : config_(config), entries_(n, FieldElement::zero(config)) {}
  explicit UVector(std::vector<FieldElement> entries);

  std::size_t size() const { return entries_.size(); }
  const FieldConfig& config() const { return config_; }
  const FieldElement& operator[](std::size_t i) const { return entries_[i]; }
  FieldElement& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<FieldElement>& entries() const { return entries_; }

  static UVector coordinate(const FieldConfig& config, std::size_t n,
                            std::size_t i);

 private:
  FieldConfig config_;
  std::vector<FieldElement> entries_;
};

/// Square matrix over the local field, row major.
class UMatrix {
 public:
  UMatrix(const FieldConfig& config, std::size_t rows, std::size_t cols)
      : config_(config),
        rows_(rows),
        cols_(cols),
        entries_(rows * cols, FieldElement::zero(config)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const FieldConfig& config() const { return config_; }
  const FieldElement& at(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  FieldElement& at(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  static UMatrix identity(const FieldConfig& config, std::size_t n);

  UVector column(std::size_t j) const;
  UVector row(std::size_t i) const;

 private:
  FieldConfig config_;
  std::size_t rows_, cols_;
  std::vector<FieldElement> entries_;
};

/// Exponent m with ||x|| = q^-m (the minimum of entry valuations), or
/// kInfExp for the zero vector. Exact.
std::int64_t norm_exp(const UVector& x);

UVector operator+(const UVector& a, const UVector& b);
UVector operator-(const UVector& a, const UVector& b);
UVector operator*(const FieldElement& c, const UVector& x);

/// Matrix-vector and matrix-matrix products with field arithmetic.
UVector apply(const UMatrix& U, const UVector& x);
inline UVector operator*(const UMatrix& U, const UVector& x) {
  return apply(U, x);
}
UMatrix operator*(const UMatrix& A, const UMatrix& B);

/// Entrywise multiplication by rho^m.
UVector scale_exp(const UVector& x, std::int64_t m);

/// Dot product sum_i a_i b_i with field arithmetic.
FieldElement dot(const UVector& a, const UVector& b);

bool equal_to_precision(const UVector& a, const UVector& b);

/// Membership in the group of norm isometries: all entries integral and the
/// reduction mod rho invertible over F_p. Decided from leading digits only,
/// hence always exact.
bool is_gl(const UMatrix& U);

struct IsometryCheck {
  bool isometry;
  std::optional<UVector> witness;  // a vector with ||Ux|| != ||x||, if found
};

/// Randomized isometry test: compares ||Ux|| with ||x|| exactly on `trials`
/// Haar-distributed integral vectors. A returned witness is conclusive; the
/// absence of one is evidence, not proof.
IsometryCheck is_isometry_witnessed(const UMatrix& U, std::uint32_t trials,
                                    RngStream& rng);

/// Checks that ||sum alpha_i x_i|| = max |alpha_i| exactly. All nonzero
/// leading-digit patterns are tried exhaustively when there are few enough,
/// followed by `scalar_trials` random scalar tuples of mixed valuations.
bool is_orthonormal(std::span<const UVector> vectors,
                    std::uint32_t scalar_trials, RngStream& rng);

/// For a unit vector x, builds U in the isometry group with U e_1 = x:
/// first column x, remaining columns the coordinate vectors e_j (j != i, in
/// ascending order) where i is the first coordinate of absolute value one.
UMatrix carry_to(const UVector& x);

struct PolarParts {
  ScaleValue radius;                  // rho^m with ||x|| = q^-m, or zero
  std::optional<UVector> direction;  // unit vector; absent when x = 0
};

/// Polar decomposition x = R * theta with ||theta|| = 1. The zero vector has
/// no direction of its own; callers who need one must supply an independent
/// uniform draw from the unit sphere.
PolarParts polar(const UVector& x);

/// Valuation of det U via elimination with exact valuation tracking;
/// kInfExp when the matrix is exactly singular. Raises PrecisionExhausted
/// only when cancellation outruns the digit window.
std::int64_t det_exp(const UMatrix& U);

/// Inverse over the field (Gauss-Jordan with maximal-norm pivoting).
UMatrix inverse(const UMatrix& U);

}  // namespace ulf
