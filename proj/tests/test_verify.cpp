#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>

#include "ulf/sampler.hpp"
#include "ulf/verify.hpp"

using namespace ulf;

namespace {
const FieldConfig kQ2(2, Backend::PADIC);
const FieldConfig kQ3(3, Backend::PADIC);
}  // namespace

TEST_CASE("chi-square tail against closed forms") {
  // dof 2: Q(x) = exp(-x/2); dof 4: Q(x) = (1 + x/2) exp(-x/2).
  for (double x : {0.5, 1.0, 3.0, 10.0}) {
    CHECK(chi_square_tail(x, 2) == doctest::Approx(std::exp(-x / 2)).epsilon(1e-10));
    CHECK(chi_square_tail(x, 4) ==
          doctest::Approx((1 + x / 2) * std::exp(-x / 2)).epsilon(1e-10));
  }
  CHECK(chi_square_tail(0.0, 5) == doctest::Approx(1.0));
  CHECK(chi_square_tail(1e9, 5) == doctest::Approx(0.0));
}

TEST_CASE("goodness of fit basics") {
  // A perfectly uniform histogram has statistic zero.
  std::vector<std::uint64_t> flat(8, 1000);
  const GofReport r = chi_square_uniform(flat);
  CHECK(r.statistic == doctest::Approx(0.0));
  CHECK(r.dof == 7);
  CHECK(r.p_value == doctest::Approx(1.0));

  // Zero-probability cells must stay empty.
  std::vector<std::uint64_t> counts{100, 100, 3};
  std::vector<double> law{0.5, 0.5, 0.0};
  const GofReport bad = chi_square_gof(counts, law);
  CHECK(bad.p_value == 0.0);

  // Underfilled cells are a caller error, not a silent approximation.
  std::vector<std::uint64_t> tiny{2, 1, 1};
  CHECK_THROWS_AS(chi_square_uniform(tiny), DomainError);
}

TEST_CASE("degenerate tables and histograms") {
  // A table with one effective row cannot show dependence.
  std::vector<std::vector<std::uint64_t>> one_row{{40, 60}};
  const GofReport r = chi_square_independence(one_row);
  CHECK(r.dof == 0);
  CHECK(r.p_value == doctest::Approx(1.0));

  // Two-sample with unequal budgets still normalizes correctly: identical
  // proportions give statistic zero.
  std::vector<std::uint64_t> a{100, 300}, b{50, 150};
  CHECK(chi_square_two_sample(a, b).statistic == doctest::Approx(0.0));

  CHECK_THROWS_AS(chi_square_two_sample(a, std::vector<std::uint64_t>{1}),
                  DomainError);
}

TEST_CASE("gross violations are detected decisively") {
  // A sampler whose first digit is forced to zero lands in one level-1
  // cell; the uniform null is rejected at astronomical significance.
  RngStream rng(3, 0);
  std::vector<std::uint64_t> cells(2, 0);
  for (int i = 0; i < 20000; ++i)
    ++cells[ball_cell_index(scale_exp(sample_gamma(rng, kQ2), 1), 1)];
  CHECK(chi_square_uniform(cells).p_value < 1e-6);
}

TEST_CASE("p-values are calibrated under a true null") {
  // Repeated GOF runs on genuinely uniform data give approximately uniform
  // p-values; compare with the Kolmogorov-Smirnov statistic at alpha=0.01.
  const int runs = 400;
  std::vector<double> pvalues;
  for (int r = 0; r < runs; ++r) {
    RngStream rng(5, 1000 + r);
    std::vector<std::uint64_t> cells(8, 0);
    for (int i = 0; i < 4000; ++i)
      ++cells[ball_cell_index(sample_gamma(rng, kQ2), 3)];
    pvalues.push_back(chi_square_uniform(cells).p_value);
  }
  std::sort(pvalues.begin(), pvalues.end());
  double ks = 0;
  for (int i = 0; i < runs; ++i) {
    const double ecdf_hi = double(i + 1) / runs;
    const double ecdf_lo = double(i) / runs;
    ks = std::max(ks, std::abs(ecdf_hi - pvalues[i]));
    ks = std::max(ks, std::abs(pvalues[i] - ecdf_lo));
  }
  CHECK(ks < 1.63 / std::sqrt(double(runs)));
}

TEST_CASE("sphere draws match the exact conditioned cell law") {
  RngStream rng(7, 0);
  const auto law = sigma_cell_law(2, 3, 1);
  std::vector<std::uint64_t> cells(law.size(), 0);
  for (int i = 0; i < 50000; ++i)
    ++cells[ball_cell_index(sample_sigma(rng, kQ2, 3), 1)];
  CHECK(chi_square_gof(cells, law).p_value > 1e-3);
  // The all-zero leading cell carries no mass.
  CHECK(law[0] == 0.0);
  CHECK(cells[0] == 0);
}

TEST_CASE("empirical characteristic functions") {
  RngStream rng(11, 0);
  std::vector<UVector> samples;
  for (int i = 0; i < 20000; ++i)
    samples.push_back(sample_gamma_vector(rng, kQ2, 2));
  const double bound = 3.0 / std::sqrt(20000.0);

  // ||t|| <= 1: the transform is identically one (phases vanish exactly).
  UVector t1(kQ2, 2);
  t1[0] = FieldElement::one(kQ2);
  t1[1] = FieldElement::uniformizer_pow(kQ2, 1);
  CHECK(std::abs(empirical_cf(samples, t1) - std::complex<double>{1, 0}) ==
        doctest::Approx(0.0));

  // ||t|| = q: the transform vanishes up to Monte Carlo noise.
  UVector t2(kQ2, 2);
  t2[0] = FieldElement::uniformizer_pow(kQ2, -1);
  t2[1] = FieldElement::one(kQ2);
  CHECK(std::abs(empirical_cf(samples, t2)) <= bound);

  // Gaussian on rho^2 D: the transform is 1 inside the annihilator.
  std::vector<UVector> scaled;
  RngStream rng2(11, 1);
  for (int i = 0; i < 5000; ++i) {
    UVector v(kQ2, 1);
    v[0] = sample_k_gaussian(rng2, kQ2, ScaleValue::of_exponent(2));
    scaled.push_back(std::move(v));
  }
  UVector t3(kQ2, 1);
  t3[0] = FieldElement::uniformizer_pow(kQ2, -2);
  CHECK(std::abs(empirical_cf(scaled, t3) - std::complex<double>{1, 0}) ==
        doctest::Approx(0.0));

  // Modulus never exceeds one (plus numerical dust).
  RngStream rng3(11, 2);
  for (int trial = 0; trial < 20; ++trial) {
    UVector t(kQ2, 2);
    t[0] = scale_exp(gamma_draw(kQ2, rng3), -2);
    t[1] = gamma_draw(kQ2, rng3);
    try {
      CHECK(std::abs(empirical_cf(samples, t)) <= 1.0 + 1e-12);
    } catch (const PrecisionExhausted&) {
    }
  }
}

TEST_CASE("empirical total variation on indicator patterns") {
  // Same law on both sides: the estimate stays at the sampling-noise floor.
  RngStream ra(13, 0), rb(13, 1);
  std::vector<UVector> a, b;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    a.push_back(sample_gamma_vector(ra, kQ2, 3));
    b.push_back(sample_gamma_vector(rb, kQ2, 3));
  }
  const double tv_same = empirical_tv_indicator(a, b, 3);
  CHECK(tv_same < 10.0 / std::sqrt(double(n)));

  // Sphere prefixes versus the product law: the estimate tracks the
  // closed form within bootstrap noise.
  RngStream rs(13, 2), rg(13, 3);
  std::vector<std::uint64_t> hs(8, 0), hg(8, 0);
  const int m = 60000;
  for (int i = 0; i < m; ++i) {
    ++hs[unit_indicator_pattern(sample_sigma(rs, kQ2, 6), 3)];
    ++hg[unit_indicator_pattern(sample_gamma_vector(rg, kQ2, 3), 3)];
  }
  const double tv = tv_from_histograms(hs, hg);
  RngStream boot(13, 4);
  const double se = bootstrap_tv_se(hs, hg, 200, boot);
  CHECK(std::abs(tv - to_double(tv_formula(2, 6, 3))) <= 4 * se);

  CHECK_THROWS_AS(empirical_tv_indicator(a, std::vector<UVector>{}, 3),
                  DomainError);
}

TEST_CASE("gram certification of radial profiles") {
  // The indicator of the unit ball gives the all-ones matrix: PSD.
  {
    const RadialProfile phi(2, 0, 2, {1.0, 1.0, 1.0});
    RngStream rng(17, 0);
    std::vector<UVector> pts;
    for (int i = 0; i < 6; ++i)
      pts.push_back(sample_gamma_vector(rng, kQ2, 3));
    const auto cert = gram_check(phi, pts);
    CHECK(cert.psd);
    CHECK(cert.min_eigenvalue == doctest::Approx(0.0).epsilon(1e-9));
    for (Eigen::Index i = 0; i < cert.matrix.rows(); ++i)
      CHECK(cert.matrix(i, i) == doctest::Approx(1.0));
  }
  // Mixture profiles certify PSD on arbitrary point sets.
  {
    RngStream rng(17, 1);
    const ScaleLaw pi({{-1, 0.25}, {0, 0.25}, {1, 0.5}}, 0.0);
    for (const auto& cfg : {kQ2, kQ3}) {
      const RadialProfile phi = phi_from_pi(pi, cfg.p, -6, 40);
      for (int c = 0; c < 30; ++c) {
        std::vector<UVector> pts;
        const int count = 3 + int(rng.next_below(9));
        for (int i = 0; i < count; ++i) {
          UVector v(cfg, 3);
          for (int d = 0; d < 3; ++d)
            v[d] = scale_exp(gamma_draw(cfg, rng),
                             std::int64_t(rng.next_below(4)) - 2);
          pts.push_back(std::move(v));
        }
        CHECK(gram_check(phi, pts).psd);
      }
    }
  }
  // Two points at distance one with phi(1) = -1/2: borderline PSD, and the
  // certificate flags that pairs cannot refute definiteness.
  {
    const RadialProfile phi(2, 0, 1, {-0.5, 1.0});
    std::vector<UVector> pts{UVector::coordinate(kQ2, 2, 0),
                             UVector::coordinate(kQ2, 2, 1)};
    const auto cert = gram_check(phi, pts);
    CHECK(cert.psd);
    CHECK(cert.min_eigenvalue == doctest::Approx(0.5));
    CHECK(cert.note.find("cannot refute") != std::string::npos);
  }
  // Coincident points are merged with a note.
  {
    const RadialProfile phi(2, 0, 1, {0.5, 1.0});
    const UVector x = UVector::coordinate(kQ2, 2, 0);
    std::vector<UVector> pts{x, x, UVector::coordinate(kQ2, 2, 1)};
    const auto cert = gram_check(phi, pts);
    CHECK(cert.merged_points == 1);
    CHECK(cert.points.size() == 2);
  }
}

TEST_CASE("violation search on invalid profiles") {
  // phi(1) = -1/2 at q=2: four points pairwise at distance one give the
  // J-matrix eigenvalue 1 + 3(-1/2) = -1/2.
  {
    const RadialProfile phi(2, 0, 2, {-0.5, 1.0, 1.0});
    const auto search = find_psd_violation(phi, kQ2, 6, 64);
    REQUIRE(search.certificate.has_value());
    CHECK(search.certificate->points.size() == 4);
    CHECK(search.certificate->min_eigenvalue ==
          doctest::Approx(-0.5).epsilon(1e-9));
  }
  // A strict increase with the radius across two levels is refuted by a
  // cluster configuration within the default budget.
  {
    const RadialProfile phi(2, 0, 1, {0.9, 0.2});
    const auto search = find_psd_violation(phi, kQ2, 6, 64);
    REQUIRE(search.certificate.has_value());
    CHECK(search.certificate->min_eigenvalue < -kPsdTol);
  }
  // Valid profiles never produce a witness.
  {
    const RadialProfile phi =
        phi_from_pi(ScaleLaw({{0, 0.5}, {1, 0.5}}, 0.0), 2, -4, 8);
    const auto search = find_psd_violation(phi, kQ2, 6, 64);
    CHECK(!search.certificate.has_value());
  }
  // Values above one fail on a single pair.
  {
    const RadialProfile phi(2, 0, 1, {1.4, 1.0});
    const auto search = find_psd_violation(phi, kQ2, 6, 64);
    REQUIRE(search.certificate.has_value());
    CHECK(search.certificate->points.size() == 2);
    CHECK(search.certificate->min_eigenvalue ==
          doctest::Approx(-0.4).epsilon(1e-6));
  }
}

TEST_CASE("empirical prefix distance at q = 3") {
  RngStream rs(15, 0), rg(15, 1);
  std::vector<std::uint64_t> hs(4, 0), hg(4, 0);
  const int m = 40000;
  for (int i = 0; i < m; ++i) {
    ++hs[unit_indicator_pattern(sample_sigma(rs, kQ3, 4), 2)];
    ++hg[unit_indicator_pattern(sample_gamma_vector(rg, kQ3, 2), 2)];
  }
  const double tv = tv_from_histograms(hs, hg);
  RngStream boot(15, 2);
  const double se = bootstrap_tv_se(hs, hg, 200, boot);
  CHECK(std::abs(tv - to_double(tv_formula(3, 4, 2))) <= 4 * se);
}

TEST_CASE("point-mass mixture meets the distance bound") {
  // With the scale identically one, the rotatable law and the direct
  // mixture coincide; the empirical distance sits inside q^-n plus noise.
  const ScaleLaw pi = ScaleLaw::point_mass(0);
  RngStream ra(21, 0), rb(21, 1);
  std::vector<std::uint64_t> ha(8, 0), hb(8, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    ++ha[unit_indicator_pattern(sample_rotatable(ra, kQ2, pi, 3), 3)];
    ++hb[unit_indicator_pattern(sample_gamma_vector(rb, kQ2, 3), 3)];
  }
  const double tv = tv_from_histograms(ha, hb);
  RngStream boot(21, 2);
  const double se = bootstrap_tv_se(ha, hb, 200, boot);
  CHECK(freedman_bound_holds(tv, 2, 3, se));
}

TEST_CASE("rotatable characteristic function equals the radial profile") {
  // For xi = tau * eta the transform at t depends on t only through ||t||,
  // and equals P(|tau| <= 1/||t||): exactly the profile value on the grid.
  const ScaleLaw pi({{0, 0.5}, {1, 0.5}}, 0.0);
  const RadialProfile phi = phi_from_pi(pi, 2, -3, 3);
  RngStream rng(25, 0);
  std::vector<UVector> samples;
  const int n = 40000;
  for (int i = 0; i < n; ++i)
    samples.push_back(sample_rotatable(rng, kQ2, pi, 3));
  const double bound = 3.0 / std::sqrt(double(n));
  for (std::int64_t e : {-2, -1, 0, 1}) {
    // t = rho^e e_1 has norm exponent e, matching the profile grid index.
    UVector t(kQ2, 3);
    t[0] = FieldElement::uniformizer_pow(kQ2, e);
    const std::complex<double> cf = empirical_cf(samples, t);
    const double expected = phi.at_norm_exp(e);
    CHECK(std::abs(cf - std::complex<double>{expected, 0}) <= bound);
  }
}

TEST_CASE("sphere law is invariant under constructed isometries") {
  // carry_to gives deterministic group elements, not just Haar draws; the
  // sphere law must be blind to those too.
  RngStream xrng(27, 0);
  const UVector target = sample_sigma(xrng, kQ3, 3);
  const UMatrix u = carry_to(target);
  const std::size_t cells = ball_cell_count(3, 3, 1);
  std::vector<std::uint64_t> base(cells, 0), mapped(cells, 0);
  RngStream ra(27, 1), rb(27, 2);
  for (int i = 0; i < 30000; ++i) {
    ++base[ball_cell_index(sample_sigma(ra, kQ3, 3), 1)];
    ++mapped[ball_cell_index(apply(u, sample_sigma(rb, kQ3, 3)), 1)];
  }
  CHECK(chi_square_two_sample(base, mapped).p_value > 1e-3);
}

TEST_CASE("mixture decomposition roundtrip") {
  const ScaleLaw pi({{0, 0.5}, {1, 0.5}}, 0.0);
  const auto bundle = freedman_roundtrip(pi, kQ2, 12, 3, 30000, 19, 0);
  for (const auto& check : bundle.checks) {
    INFO(check.name, ": ", check.detail);
    CHECK(check.pass);
  }
  CHECK(bundle.pass);
  CHECK(bundle.checks.size() == 4);
}
