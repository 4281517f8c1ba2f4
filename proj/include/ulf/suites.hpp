#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ulf/field.hpp"
#include "ulf/laws.hpp"
#include "ulf/scale_law.hpp"
#include "ulf/serialize.hpp"
#include "ulf/verify.hpp"

namespace ulf {

/// One named verification battery: per-test lines plus the run configuration
/// it can be reproduced from. Chi-square tests run at `alpha` with a
/// Bonferroni split across the suite's `bonferroni_k` statistical tests.
struct SuiteReport {
  std::string suite;
  std::uint64_t seed;
  Json config_echo;
  std::vector<CheckResult> tests;
  double alpha = 0.01;
  std::size_t bonferroni_k = 1;
  bool pass = false;
};

Json to_json(const SuiteReport& report);

struct TvSuiteParams {
  FieldConfig config;
  std::uint32_t n = 6;
  std::uint32_t k = 3;
  std::size_t trials = 200000;  // per side
  std::uint64_t seed = 0;
  std::uint32_t threads = 1;
};

/// Sphere-prefix versus product law: the closed form against the exact
/// counting oracle on a (q, n, k) grid, then an empirical distance at the
/// requested size.
SuiteReport run_tv_suite(const TvSuiteParams& params);

struct GlHaarParams {
  FieldConfig config;
  std::uint32_t n = 2;
  std::size_t attempts = 100000;
  std::uint64_t seed = 0;
  std::uint32_t threads = 1;
};

/// Rejection-rate and invariance checks for the Haar matrix sampler.
SuiteReport run_gl_haar_suite(const GlHaarParams& params);

struct InvarianceParams {
  FieldConfig config;
  std::uint32_t n = 3;
  std::uint32_t level = 2;
  std::size_t draws = 100000;
  std::size_t matrices = 1000;  // for the exact-equivalence batteries
  std::uint64_t seed = 0;
  std::uint32_t threads = 1;
};

/// Distributional invariance (chi-square) plus the exact isometry and
/// group-membership equivalences on random matrices.
SuiteReport run_invariance_suite(const InvarianceParams& params);

struct FreedmanParams {
  FieldConfig config;
  ScaleLaw pi;
  std::uint32_t n = 16;
  std::uint32_t k = 4;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

SuiteReport run_freedman_suite(const FreedmanParams& params);

struct GaussianCfParams {
  FieldConfig config;
  std::uint32_t n = 2;
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
};

/// Characteristic functions: indicator behaviour of the Haar product law
/// and of Gaussians on smaller modules.
SuiteReport run_gaussian_cf_suite(const GaussianCfParams& params);

struct SchoenbergParams {
  FieldConfig config;
  std::optional<RadialProfile> phi;  // when absent, runs the default battery
  std::uint32_t max_n = 6;
  std::uint32_t budget = 64;
  std::size_t random_cases = 500;
  std::size_t roundtrip_cases = 50;
  std::size_t max_points = 12;
  std::uint64_t seed = 0;
};

/// Positive-definiteness of radial profiles: forward certification for
/// mixture profiles, witness search for invalid ones, and the profile <->
/// mixing-law roundtrip.
SuiteReport run_schoenberg_suite(const SchoenbergParams& params);

}  // namespace ulf
