#include "ulf/suites.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>
#include <thread>

#include "ulf/sampler.hpp"
#include "ulf/version.hpp"

namespace ulf {

namespace {

constexpr std::uint64_t kSkipCell = std::numeric_limits<std::uint64_t>::max();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Histogram accumulation over per-index streams: draw i always uses the
// stream (seed, stream_base + i), so the result does not depend on the
// thread count and merges are exact integer sums.
template <typename Fn>
std::vector<std::uint64_t> stream_histogram(std::size_t count,
                                            std::size_t cells,
                                            std::uint32_t threads,
                                            std::uint64_t seed,
                                            std::uint64_t stream_base,
                                            Fn fn) {
  threads = std::max<std::uint32_t>(threads, 1);
  if (threads == 1) {
    std::vector<std::uint64_t> hist(cells, 0);
    for (std::size_t i = 0; i < count; ++i) {
      RngStream rng(seed, stream_base + i);
      const std::uint64_t c = fn(i, rng);
      if (c != kSkipCell) ++hist[c];
    }
    return hist;
  }
  std::vector<std::vector<std::uint64_t>> local(
      threads, std::vector<std::uint64_t>(cells, 0));
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::uint32_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        const std::size_t lo = t * chunk;
        const std::size_t hi = std::min(count, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) {
          RngStream rng(seed, stream_base + i);
          const std::uint64_t c = fn(i, rng);
          if (c != kSkipCell) ++local[t][c];
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<std::uint64_t> hist(cells, 0);
  for (const auto& l : local)
    for (std::size_t c = 0; c < cells; ++c) hist[c] += l[c];
  return hist;
}

CheckResult gof_check(const std::string& name, const GofReport& gof,
                      double alpha_each) {
  std::ostringstream detail;
  detail << "dof " << gof.dof << ", cells " << gof.cells << ", samples "
         << gof.samples;
  return {name, gof.p_value >= alpha_each, gof.statistic, gof.p_value,
          detail.str()};
}

void finalize(SuiteReport& report) {
  report.pass = !report.tests.empty();
  for (const auto& t : report.tests) report.pass &= t.pass;
}

ScaleLaw default_mixture() {
  return ScaleLaw({{0, 0.5}, {1, 0.5}}, 0.0);
}

}  // namespace

Json to_json(const SuiteReport& report) {
  Json tests = Json::array();
  for (const auto& t : report.tests) tests.push_back(to_json(t));
  return Json{{"suite", report.suite},   {"version", kVersion},
              {"seed", report.seed},     {"alpha", report.alpha},
              {"bonferroni_k", report.bonferroni_k},
              {"config", report.config_echo},
              {"tests", std::move(tests)},
              {"pass", report.pass}};
}

SuiteReport run_tv_suite(const TvSuiteParams& params) {
  SuiteReport report;
  report.suite = "tv";
  report.seed = params.seed;
  report.bonferroni_k = 1;
  report.config_echo = Json{{"field", to_json(params.config)},
                            {"n", params.n},
                            {"k", params.k},
                            {"trials", params.trials},
                            {"threads", params.threads}};

  // Closed form against the counting oracle, exact rational equality.
  {
    std::size_t cases = 0, mismatches = 0;
    for (std::uint32_t q : {2u, 3u, 5u})
      for (std::uint32_t n = 1; n <= 12; ++n)
        for (std::uint32_t k = 1; k <= n; ++k) {
          ++cases;
          if (tv_formula(q, n, k) != tv_oracle(q, n, k)) ++mismatches;
        }
    report.tests.push_back({"formula-vs-oracle-exact", mismatches == 0,
                            static_cast<double>(mismatches), kNaN,
                            std::to_string(cases) + " grid cases"});
  }
  {
    std::size_t cases = 0, mismatches = 0;
    for (std::uint32_t q : {2u, 3u, 5u})
      for (std::uint32_t n = 1; n <= 12; ++n) {
        ++cases;
        if (tv_formula(q, n, n) != finite_freedman_bound(q, n)) ++mismatches;
      }
    report.tests.push_back({"full-prefix-equals-mixture-bound",
                            mismatches == 0, static_cast<double>(mismatches),
                            kNaN, std::to_string(cases) + " grid cases"});
  }

  // Empirical distance between sphere prefixes and the product law.
  {
    const std::uint32_t k = params.k;
    const std::size_t cells = 1ull << k;
    const auto hist_sphere = stream_histogram(
        params.trials, cells, params.threads, params.seed, 1ull << 32,
        [&](std::size_t, RngStream& rng) {
          const UVector x = sample_sigma(rng, params.config, params.n);
          return static_cast<std::uint64_t>(unit_indicator_pattern(x, k));
        });
    const auto hist_product = stream_histogram(
        params.trials, cells, params.threads, params.seed, 2ull << 32,
        [&](std::size_t, RngStream& rng) {
          const UVector x = sample_gamma_vector(rng, params.config, k);
          return static_cast<std::uint64_t>(unit_indicator_pattern(x, k));
        });
    const double tv = tv_from_histograms(hist_sphere, hist_product);
    RngStream boot(params.seed, 3ull << 32);
    const double se = bootstrap_tv_se(hist_sphere, hist_product, 200, boot);
    const double target =
        to_double(tv_formula(params.config.p, params.n, params.k));
    const bool pass = std::abs(tv - target) <= 3 * se;
    std::ostringstream detail;
    detail << "estimate " << tv << " vs formula " << target
           << ", bootstrap se " << se;
    report.tests.push_back(
        {"empirical-vs-formula", pass, tv, kNaN, detail.str()});
  }

  finalize(report);
  return report;
}

SuiteReport run_gl_haar_suite(const GlHaarParams& params) {
  SuiteReport report;
  report.suite = "gl-haar";
  report.seed = params.seed;
  report.bonferroni_k = 1;
  report.config_echo = Json{{"field", to_json(params.config)},
                            {"n", params.n},
                            {"attempts", params.attempts},
                            {"threads", params.threads}};
  const std::uint32_t n = params.n;
  const std::uint32_t p = params.config.p;

  // Acceptance frequency of the rejection sampler.
  {
    const auto hist = stream_histogram(
        params.attempts, 2, params.threads, params.seed, 1ull << 32,
        [&](std::size_t, RngStream& rng) -> std::uint64_t {
          UMatrix m(params.config, n, n);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              m.at(i, j) = gamma_draw(params.config, rng);
          return is_gl(m) ? 1 : 0;
        });
    const double freq =
        static_cast<double>(hist[1]) / static_cast<double>(params.attempts);
    const double target = to_double(gl_density(p, n));
    const double se =
        std::sqrt(target * (1 - target) / static_cast<double>(params.attempts));
    const bool pass = std::abs(freq - target) <= 3 * se;
    std::ostringstream detail;
    detail << "frequency " << freq << " vs density " << target << ", se "
           << se;
    report.tests.push_back(
        {"acceptance-rate", pass, freq, kNaN, detail.str()});
  }

  // The closed-form density against full residue-matrix enumeration.
  {
    const double space = std::pow(static_cast<double>(p),
                                  static_cast<double>(n) * n);
    if (space <= (1 << 20)) {
      const bool match = gl_density(p, n) == gl_density_enumerated(p, n);
      report.tests.push_back({"density-vs-enumeration", match,
                              match ? 0.0 : 1.0, kNaN,
                              "exact rational comparison"});
    } else {
      report.tests.push_back({"density-vs-enumeration", true, 0.0, kNaN,
                              "skipped: enumeration space too large"});
    }
  }

  // Every sampler output satisfies the membership predicate.
  {
    RngStream rng(params.seed, 2ull << 32);
    bool all = true;
    for (int i = 0; i < 200; ++i)
      all &= is_gl(sample_gl_haar(rng, params.config, n));
    report.tests.push_back(
        {"outputs-in-group", all, all ? 0.0 : 1.0, kNaN, "200 draws"});
  }

  // Left-invariance of the sampler's law under a fixed group element.
  {
    const std::size_t draws = std::min<std::size_t>(params.attempts / 2, 20000);
    RngStream vstream(params.seed, 3ull << 32);
    const UMatrix v = sample_gl_haar(vstream, params.config, n);
    const std::uint64_t cells = ball_cell_count(p, n, 1);
    const auto hist_u = stream_histogram(
        draws, cells, params.threads, params.seed, 4ull << 32,
        [&](std::size_t, RngStream& rng) {
          const UMatrix u = sample_gl_haar(rng, params.config, n);
          return ball_cell_index(u.row(0), 1);
        });
    const auto hist_vu = stream_histogram(
        draws, cells, params.threads, params.seed, 5ull << 32,
        [&](std::size_t, RngStream& rng) {
          const UMatrix u = sample_gl_haar(rng, params.config, n);
          return ball_cell_index((v * u).row(0), 1);
        });
    report.tests.push_back(gof_check(
        "left-invariance", chi_square_two_sample(hist_u, hist_vu),
        report.alpha));
  }

  finalize(report);
  return report;
}

SuiteReport run_invariance_suite(const InvarianceParams& params) {
  SuiteReport report;
  report.suite = "invariance";
  report.seed = params.seed;
  report.bonferroni_k = 3;  // three chi-square tests share the alpha
  report.config_echo = Json{{"field", to_json(params.config)},
                            {"n", params.n},
                            {"level", params.level},
                            {"draws", params.draws},
                            {"matrices", params.matrices},
                            {"threads", params.threads}};
  const FieldConfig& cfg = params.config;
  const std::uint32_t n = params.n;
  const double alpha_each = report.alpha / report.bonferroni_k;

  // Haar product law is uniform across level-k cells.
  {
    const std::uint64_t cells = ball_cell_count(cfg.p, n, params.level);
    const auto hist = stream_histogram(
        params.draws, cells, params.threads, params.seed, 1ull << 32,
        [&](std::size_t, RngStream& rng) {
          return ball_cell_index(sample_gamma_vector(rng, cfg, n),
                                 params.level);
        });
    report.tests.push_back(gof_check("haar-product-uniformity",
                                     chi_square_uniform(hist), alpha_each));
  }

  // Sphere draws follow the exact conditioned cell law.
  {
    const std::uint64_t cells = ball_cell_count(cfg.p, n, params.level);
    const auto hist = stream_histogram(
        params.draws, cells, params.threads, params.seed, 2ull << 32,
        [&](std::size_t, RngStream& rng) {
          return ball_cell_index(sample_sigma(rng, cfg, n), params.level);
        });
    const auto law = sigma_cell_law(cfg.p, n, params.level);
    report.tests.push_back(gof_check("sphere-conditioned-law",
                                     chi_square_gof(hist, law), alpha_each));
  }

  // A rotatable prefix and its image under a fixed isometry share a law.
  {
    RngStream ustream(params.seed, 3ull << 32);
    const UMatrix u = sample_gl_haar(ustream, cfg, n);
    const ScaleLaw pi = default_mixture();
    const std::uint64_t cells = ball_cell_count(cfg.p, n, params.level);
    const auto hist_xi = stream_histogram(
        params.draws, cells, params.threads, params.seed, 4ull << 32,
        [&](std::size_t, RngStream& rng) {
          return ball_cell_index(sample_rotatable(rng, cfg, pi, n),
                                 params.level);
        });
    const auto hist_uxi = stream_histogram(
        params.draws, cells, params.threads, params.seed, 5ull << 32,
        [&](std::size_t, RngStream& rng) {
          return ball_cell_index(
              apply(u, sample_rotatable(rng, cfg, pi, n)), params.level);
        });
    report.tests.push_back(
        gof_check("rotatable-image-law",
                  chi_square_two_sample(hist_xi, hist_uxi), alpha_each));
  }

  // Exact norm preservation on Haar group draws.
  {
    const auto hist = stream_histogram(
        params.matrices, 2, params.threads, params.seed, 6ull << 32,
        [&](std::size_t, RngStream& rng) -> std::uint64_t {
          const UMatrix u = sample_gl_haar(rng, cfg, n);
          for (int v = 0; v < 10; ++v) {
            const UVector x = sample_gamma_vector(rng, cfg, n);
            if (norm_exp(apply(u, x)) != norm_exp(x)) return 1;
          }
          return 0;
        });
    report.tests.push_back({"norm-invariance-exact", hist[1] == 0,
                            static_cast<double>(hist[1]), kNaN,
                            std::to_string(params.matrices) +
                                " matrices x 10 vectors, exact comparison"});
  }

  // Equivalence of the group-membership characterizations on random
  // integral matrices: residue invertibility, determinant valuation,
  // orthonormal columns and rows, and the randomized isometry probe.
  {
    const auto hist = stream_histogram(
        params.matrices, 2, params.threads, params.seed, 7ull << 32,
        [&](std::size_t, RngStream& rng) -> std::uint64_t {
          UMatrix m(cfg, n, n);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
              m.at(i, j) = gamma_draw(cfg, rng);
          const bool via_residue = is_gl(m);
          const bool via_det = det_exp(m) == 0;
          std::vector<UVector> cols, rows;
          for (std::size_t j = 0; j < n; ++j) cols.push_back(m.column(j));
          for (std::size_t i = 0; i < n; ++i) rows.push_back(m.row(i));
          const bool via_cols = is_orthonormal(cols, 40, rng);
          const bool via_rows = is_orthonormal(rows, 40, rng);
          const bool via_isometry =
              is_isometry_witnessed(m, 200, rng).isometry;
          const bool consistent =
              via_residue == via_det && via_residue == via_cols &&
              via_residue == via_rows && via_residue == via_isometry;
          return consistent ? 0 : 1;
        });
    report.tests.push_back({"membership-equivalences", hist[1] == 0,
                            static_cast<double>(hist[1]), kNaN,
                            std::to_string(params.matrices) +
                                " random integral matrices"});
  }

  // The group is closed under products and inverses carry integral entries.
  {
    RngStream rng(params.seed, 8ull << 32);
    std::size_t bad = 0;
    for (int i = 0; i < 200; ++i) {
      const UMatrix a = sample_gl_haar(rng, cfg, n);
      const UMatrix b = sample_gl_haar(rng, cfg, n);
      if (!is_gl(a * b) || !is_gl(inverse(a))) ++bad;
    }
    report.tests.push_back({"group-closure", bad == 0,
                            static_cast<double>(bad), kNaN, "200 pairs"});
  }

  finalize(report);
  return report;
}

SuiteReport run_freedman_suite(const FreedmanParams& params) {
  SuiteReport report;
  report.suite = "freedman";
  report.seed = params.seed;
  report.bonferroni_k = 3;
  report.config_echo = Json{{"field", to_json(params.config)},
                            {"pi", to_json(params.pi)},
                            {"n", params.n},
                            {"k", params.k},
                            {"samples", params.samples}};
  const FreedmanBundle bundle =
      freedman_roundtrip(params.pi, params.config, params.n, params.k,
                         params.samples, params.seed, 1ull << 32, report.alpha);
  report.tests = bundle.checks;
  finalize(report);
  return report;
}

SuiteReport run_gaussian_cf_suite(const GaussianCfParams& params) {
  SuiteReport report;
  report.suite = "gaussian-cf";
  report.seed = params.seed;
  report.bonferroni_k = 1;
  report.config_echo = Json{{"field", to_json(params.config)},
                            {"n", params.n},
                            {"samples", params.samples}};
  const FieldConfig& cfg = params.config;
  const std::uint32_t n = params.n;
  const double bound = 3.0 / std::sqrt(static_cast<double>(params.samples));

  auto cf_of_draws = [&](const UVector& t, std::uint64_t stream,
                         auto draw) {
    std::complex<double> acc{0, 0};
    RngStream rng(params.seed, stream);
    for (std::size_t i = 0; i < params.samples; ++i)
      acc += char_value(character(dot(t, draw(rng))));
    return acc / static_cast<double>(params.samples);
  };
  auto gamma_vec = [&](RngStream& rng) {
    return sample_gamma_vector(rng, cfg, n);
  };

  // ||t|| <= 1: the transform of the Haar product law is identically 1.
  {
    UVector t(cfg, n);
    t[0] = FieldElement::one(cfg);
    if (n > 1) t[1] = FieldElement::uniformizer_pow(cfg, 1);
    const auto cf = cf_of_draws(t, 1ull << 32, gamma_vec);
    const double err = std::abs(cf - std::complex<double>{1, 0});
    report.tests.push_back({"cf-inside-module", err <= bound, err, kNaN,
                            "|cf - 1| vs 3/sqrt(N) = " + std::to_string(bound)});
  }
  // ||t|| = q: outside the annihilator the transform vanishes.
  {
    UVector t(cfg, n);
    t[0] = FieldElement::uniformizer_pow(cfg, -1);
    if (n > 1) t[1] = FieldElement::one(cfg);
    const auto cf = cf_of_draws(t, 2ull << 32, gamma_vec);
    const double err = std::abs(cf);
    report.tests.push_back({"cf-outside-module", err <= bound, err, kNaN,
                            "|cf| vs 3/sqrt(N)"});
  }
  // Gaussian on the module rho^2 D: boundary scaling of the annihilator.
  {
    UVector t(cfg, 1);
    t[0] = FieldElement::uniformizer_pow(cfg, -2);
    auto draw = [&](RngStream& rng) {
      UVector v(cfg, 1);
      v[0] = sample_k_gaussian(rng, cfg, ScaleValue::of_exponent(2));
      return v;
    };
    const auto cf_in = cf_of_draws(t, 3ull << 32, draw);
    const double err_in = std::abs(cf_in - std::complex<double>{1, 0});
    UVector t2(cfg, 1);
    t2[0] = FieldElement::uniformizer_pow(cfg, -3);
    const auto cf_out = cf_of_draws(t2, 4ull << 32, draw);
    const double err_out = std::abs(cf_out);
    const bool pass = err_in <= bound && err_out <= bound;
    report.tests.push_back({"cf-scaled-module", pass,
                            std::max(err_in, err_out), kNaN,
                            "|t| ||xi||_inf = 1 gives 1; = q gives 0"});
  }
  // The zero module has characteristic function identically 1.
  {
    UVector t(cfg, 1);
    t[0] = FieldElement::uniformizer_pow(cfg, -5);
    auto draw = [&](RngStream& rng) {
      UVector v(cfg, 1);
      v[0] = sample_k_gaussian(rng, cfg, ScaleValue::zero_value());
      return v;
    };
    RngStream rng(params.seed, 5ull << 32);
    std::complex<double> acc{0, 0};
    for (std::size_t i = 0; i < 1000; ++i)
      acc += char_value(character(dot(t, draw(rng))));
    const double err = std::abs(acc / 1000.0 - std::complex<double>{1, 0});
    report.tests.push_back({"cf-zero-module", err == 0.0, err, kNaN,
                            "point mass at zero"});
  }

  finalize(report);
  return report;
}

SuiteReport run_schoenberg_suite(const SchoenbergParams& params) {
  SuiteReport report;
  report.suite = "schoenberg";
  report.seed = params.seed;
  report.bonferroni_k = 1;
  report.config_echo =
      Json{{"field", to_json(params.config)},
           {"max_n", params.max_n},
           {"budget", params.budget},
           {"random_cases", params.random_cases},
           {"roundtrip_cases", params.roundtrip_cases},
           {"phi", params.phi ? to_json(*params.phi) : Json(nullptr)}};
  const FieldConfig& cfg = params.config;

  auto random_law = [&](RngStream& rng) {
    const std::size_t atoms = 1 + rng.next_below(5);
    std::map<std::int64_t, double> masses;
    double total = 0;
    for (std::size_t a = 0; a < atoms; ++a) {
      const std::int64_t m = static_cast<std::int64_t>(rng.next_below(10)) - 3;
      const double w = rng.next_unit() + 1e-3;
      masses[m] += w;
      total += w;
    }
    double zero = 0;
    if (rng.next_below(3) == 0) {
      zero = rng.next_unit();
      total += zero;
    }
    for (auto& [m, w] : masses) w /= total;
    return ScaleLaw(masses, zero / total);
  };

  auto random_points = [&](RngStream& rng, std::size_t max_points) {
    const std::size_t dims = 1 + rng.next_below(5);
    const std::size_t count = 2 + rng.next_below(max_points - 1);
    std::vector<UVector> pts;
    for (std::size_t i = 0; i < count; ++i) {
      UVector v(cfg, dims);
      const std::int64_t shift =
          static_cast<std::int64_t>(rng.next_below(5)) - 2;
      for (std::size_t d = 0; d < dims; ++d)
        v[d] = scale_exp(gamma_draw(cfg, rng), shift);
      pts.push_back(std::move(v));
    }
    return pts;
  };

  if (params.phi) {
    // Certify or refute the supplied profile.
    const RadialProfile& phi = *params.phi;
    auto inverted = pi_from_phi(phi);
    const bool valid = std::holds_alternative<ScaleLaw>(inverted);
    bool has_negative = false;
    for (double v : phi.values()) has_negative |= v < -kPsdTol;
    if (valid && !has_negative) {
      RngStream rng(params.seed, 1ull << 32);
      double min_eig = 1.0;
      bool all_psd = true;
      for (std::size_t c = 0; c < std::max<std::size_t>(params.random_cases, 1);
           ++c) {
        const auto cert = gram_check(phi, random_points(rng, params.max_points));
        min_eig = std::min(min_eig, cert.min_eigenvalue);
        all_psd &= cert.psd;
      }
      report.tests.push_back({"profile-psd-certification", all_psd, min_eig,
                              kNaN, "mixture profile, random point sets"});
    } else {
      const auto search =
          find_psd_violation(phi, cfg, params.max_n, params.budget);
      const bool found = search.certificate.has_value();
      report.tests.push_back(
          {"profile-violation-witness", found,
           found ? search.certificate->min_eigenvalue : 0.0, kNaN,
           "configurations tried: " +
               std::to_string(search.configurations_tried)});
    }
    finalize(report);
    return report;
  }

  // Forward direction: mixture profiles are nonnegative definite on every
  // point set.
  {
    RngStream rng(params.seed, 1ull << 32);
    double min_eig = 1.0;
    bool all_psd = true;
    for (std::size_t c = 0; c < params.random_cases; ++c) {
      const FieldConfig case_cfg(c % 2 == 0 ? 2 : 3, cfg.backend,
                                 cfg.precision);
      const ScaleLaw pi = random_law(rng);
      const RadialProfile phi = phi_from_pi(
          pi, case_cfg.p, -6, static_cast<std::int64_t>(cfg.precision) + 6);
      const std::size_t dims = 1 + rng.next_below(5);
      const std::size_t count = 2 + rng.next_below(params.max_points - 1);
      std::vector<UVector> pts;
      for (std::size_t i = 0; i < count; ++i) {
        UVector v(case_cfg, dims);
        const std::int64_t shift =
            static_cast<std::int64_t>(rng.next_below(5)) - 2;
        for (std::size_t d = 0; d < dims; ++d)
          v[d] = scale_exp(gamma_draw(case_cfg, rng), shift);
        pts.push_back(std::move(v));
      }
      const auto cert = gram_check(phi, pts);
      min_eig = std::min(min_eig, cert.min_eigenvalue);
      all_psd &= cert.psd;
    }
    report.tests.push_back({"forward-psd", all_psd, min_eig, kNaN,
                            std::to_string(params.random_cases) +
                                " random (law, point-set) pairs"});
  }

  // Converse, seeded witness: phi(1) = -1/2 at q = 2 fails on four points
  // at pairwise distance one; the J-matrix eigenvalue is exactly -1/2.
  {
    const FieldConfig two(2, cfg.backend, cfg.precision);
    const RadialProfile phi(2, 0, 2, {-0.5, 1.0, 1.0});
    std::vector<UVector> pts;
    for (std::uint8_t a = 0; a < 2; ++a)
      for (std::uint8_t b = 0; b < 2; ++b) {
        UVector v(two, 2);
        v[0] = FieldElement::from_integer(two, a);
        v[1] = FieldElement::from_integer(two, b);
        pts.push_back(std::move(v));
      }
    const auto cert = gram_check(phi, pts);
    const bool pass = !cert.psd && cert.min_eigenvalue <= -0.5 + kPsdTol;
    report.tests.push_back({"converse-seeded-witness", pass,
                            cert.min_eigenvalue, kNaN,
                            "four points pairwise at distance one"});
  }

  // Converse, searched witness: a profile increasing with the radius on two
  // levels must fail within the default budget.
  {
    const FieldConfig two(2, cfg.backend, cfg.precision);
    const RadialProfile phi(2, 0, 1, {0.9, 0.2});
    const auto search = find_psd_violation(phi, two, params.max_n,
                                           params.budget);
    const bool found = search.certificate.has_value();
    report.tests.push_back(
        {"converse-searched-witness", found,
         found ? search.certificate->min_eigenvalue : 0.0, kNaN,
         "configurations tried: " +
             std::to_string(search.configurations_tried)});
  }

  // A valid profile never yields a witness.
  {
    const FieldConfig two(2, cfg.backend, cfg.precision);
    const RadialProfile phi =
        phi_from_pi(default_mixture(), 2, -4, 8);
    const auto search = find_psd_violation(phi, two, params.max_n,
                                           params.budget);
    report.tests.push_back({"forward-no-witness",
                            !search.certificate.has_value(), 0.0, kNaN,
                            "witness search on a mixture profile"});
  }

  // Profile <-> mixing-law roundtrip on randomized windows.
  {
    RngStream rng(params.seed, 2ull << 32);
    double worst = 0;
    bool all = true;
    for (std::size_t c = 0; c < params.roundtrip_cases; ++c) {
      const std::uint32_t q = c % 2 == 0 ? 2 : 3;
      const std::int64_t m_lo = static_cast<std::int64_t>(rng.next_below(9)) - 6;
      const std::int64_t m_hi = m_lo + 3 + rng.next_below(12);
      const RadialProfile phi = [&] {
        if (c % 3 == 2) {
          // Directly drawn nondecreasing grid values in [0, 1].
          std::vector<double> vals;
          for (std::int64_t m = m_lo; m <= m_hi; ++m)
            vals.push_back(rng.next_unit());
          std::sort(vals.begin(), vals.end());
          return RadialProfile(q, m_lo, m_hi, std::move(vals));
        }
        return phi_from_pi(random_law(rng), q, m_lo, m_hi);
      }();
      auto inverted = pi_from_phi(phi);
      if (!std::holds_alternative<ScaleLaw>(inverted)) {
        all = false;
        continue;
      }
      const RadialProfile back = phi_from_pi(std::get<ScaleLaw>(inverted), q,
                                             phi.m_lo(), phi.m_hi());
      for (std::size_t i = 0; i < phi.values().size(); ++i)
        worst = std::max(worst,
                         std::abs(phi.values()[i] - back.values()[i]));
    }
    report.tests.push_back({"profile-mixture-roundtrip",
                            all && worst <= 1e-12, worst, kNaN,
                            std::to_string(params.roundtrip_cases) +
                                " randomized windows, max abs error"});
  }

  finalize(report);
  return report;
}

}  // namespace ulf
