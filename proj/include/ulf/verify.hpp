#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ulf/field.hpp"
#include "ulf/laws.hpp"
#include "ulf/linalg.hpp"
#include "ulf/rng.hpp"
#include "ulf/sampler.hpp"
#include "ulf/scale_law.hpp"

namespace ulf {

/// Eigensolver slack for PSD verdicts. Gram entries are exact-rational-valued
/// reals, so the tolerance only has to absorb eigensolver error.
inline constexpr double kPsdTol = 1e-9;

struct GofReport {
  double statistic;
  std::int64_t dof;
  double p_value;
  std::size_t cells;
  std::size_t samples;
};

/// Upper tail of the chi-square distribution with `dof` degrees of freedom.
double chi_square_tail(double statistic, double dof);

/// Pearson goodness of fit against a fully specified discrete law.
/// Zero-probability cells must be empty (one observation there refutes the
/// null outright); positive cells need expected counts >= min_expected.
GofReport chi_square_gof(std::span<const std::uint64_t> counts,
                         std::span<const double> expected_probs,
                         double min_expected = 5.0);

GofReport chi_square_uniform(std::span<const std::uint64_t> counts,
                             double min_expected = 5.0);

/// Two-sample homogeneity test; cells empty on both sides are dropped.
GofReport chi_square_two_sample(std::span<const std::uint64_t> counts_a,
                                std::span<const std::uint64_t> counts_b);

/// Independence test on an r x c contingency table, dof = (r-1)(c-1).
GofReport chi_square_independence(
    const std::vector<std::vector<std::uint64_t>>& table);

// ---- discretization ------------------------------------------------------

/// Number of level-k cells for an n-dimensional integral vector: p^(n*k).
/// Capped to keep histograms in memory; DomainError past the cap.
std::uint64_t ball_cell_count(std::uint32_t p, std::size_t n,
                              std::uint32_t level);

/// Flattened coset label of x at the given level, in [0, p^level).
std::uint64_t ball_cell_index(const FieldElement& x, std::uint32_t level);

/// Joint label of all coordinates, in [0, p^(n*level)).
std::uint64_t ball_cell_index(const UVector& x, std::uint32_t level);

/// Exact discretized laws for the two reference measures.
std::vector<double> gamma_cell_law(std::uint32_t p, std::size_t n,
                                   std::uint32_t level);
std::vector<double> sigma_cell_law(std::uint32_t p, std::size_t n,
                                   std::uint32_t level);

// ---- empirical total variation on unit-indicator patterns ----------------

/// Bit i of the result is set iff |x_i| = 1, for i < k.
std::uint32_t unit_indicator_pattern(const UVector& x, std::uint32_t k);

double tv_from_histograms(std::span<const std::uint64_t> a,
                          std::span<const std::uint64_t> b);

/// TV between the empirical laws of the unit-indicator patterns of the
/// first k coordinates. The true distance between the sphere and product
/// laws is attained on exactly this discretization, so the estimator is
/// consistent for it.
double empirical_tv_indicator(std::span<const UVector> samples_a,
                              std::span<const UVector> samples_b,
                              std::uint32_t k);

/// Bootstrap standard error of tv_from_histograms under multinomial
/// resampling of both sides.
double bootstrap_tv_se(std::span<const std::uint64_t> a,
                       std::span<const std::uint64_t> b,
                       std::uint32_t resamples, RngStream& rng);

// ---- characteristic functions --------------------------------------------

/// exp(2*pi*i*phase). The only place a phase becomes a complex number.
std::complex<double> char_value(const PhaseFraction& phase);

/// Empirical Fourier transform at t: mean of chi(t . x) over the samples.
std::complex<double> empirical_cf(std::span<const UVector> samples,
                                  const UVector& t);

// ---- Gram matrices for radial profiles ------------------------------------

struct GramCertificate {
  std::vector<UVector> points;  // representatives actually used
  Eigen::MatrixXd matrix;
  double min_eigenvalue;
  bool psd;
  Eigen::VectorXd witness;  // eigenvector of the smallest eigenvalue
  std::string method;
  std::string note;
  std::size_t merged_points = 0;
};

/// Builds the matrix phi(||x_i - x_j||) with exact norms and certifies
/// positive semidefiniteness (min eigenvalue >= -kPsdTol). Points that
/// coincide at working precision are merged, with a note.
GramCertificate gram_check(const RadialProfile& phi,
                           const std::vector<UVector>& points);

struct ViolationSearch {
  std::optional<GramCertificate> certificate;  // NOT_PSD when present
  std::uint32_t configurations_tried = 0;
};

/// Searches structured point sets for a witness that phi_n fails to be
/// nonnegative definite: single-level coset families (all pairwise
/// distances equal, Gram is a J-matrix) and two-level cluster mixtures
/// across a violating grid pair. Runs only on profiles that fail
/// pi_from_phi or take negative values; exhausting the budget without a
/// certificate is not a proof of definiteness.
ViolationSearch find_psd_violation(const RadialProfile& phi,
                                   const FieldConfig& config,
                                   std::uint32_t max_n, std::uint32_t budget);

// ---- scale-mixture decomposition checks ------------------------------------

struct CheckResult {
  std::string name;
  bool pass;
  double statistic;
  double p_value;  // NaN when the check is a plain threshold comparison
  std::string detail;
};

struct FreedmanBundle {
  std::vector<CheckResult> checks;
  bool pass;
};

/// Draws `samples` rotatable prefixes of length n and checks the mixture
/// decomposition: (a) the law of the estimated scale matches pi up to the
/// q^-n escape mass, (b) coordinates rescaled by the estimated scale
/// discretize uniformly, (c) the estimated scale is independent of the
/// rescaled pattern, (d) the indicator-level distance to a directly drawn
/// scale-Gaussian mixture stays within q^-n plus noise. Chi-square checks
/// run at level alpha with Bonferroni correction across the bundle.
FreedmanBundle freedman_roundtrip(const ScaleLaw& pi, const FieldConfig& config,
                                  std::size_t n, std::uint32_t k,
                                  std::size_t samples, std::uint64_t seed,
                                  std::uint64_t stream_base,
                                  double alpha = 0.01);

}  // namespace ulf
