#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "ulf/field.hpp"
#include "ulf/laws.hpp"
#include "ulf/sampler.hpp"
#include "ulf/serialize.hpp"
#include "ulf/suites.hpp"
#include "ulf/version.hpp"

namespace {

using ulf::Json;

struct CommonOptions {
  std::uint32_t p = 2;
  std::string backend = "qp";
  std::uint32_t precision = ulf::kDefaultPrecision;
  std::optional<std::uint64_t> seed;
  std::uint64_t stream = 0;
  std::uint32_t threads = 1;
  std::string out = "-";
  std::string format = "jsonl";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--p", opts.p, "residue characteristic (prime)");
  cmd->add_option("--backend", opts.backend, "qp | laurent")
      ->check(CLI::IsMember({"qp", "laurent"}));
  cmd->add_option("--precision", opts.precision,
                  "significant base-p digits per element");
  cmd->add_option("--seed", opts.seed, "seed (falls back to ULF_SEED, then 0)");
  cmd->add_option("--stream", opts.stream, "base stream id");
  cmd->add_option("--threads", opts.threads, "worker threads");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  if (const char* env = std::getenv("ULF_SEED"))
    return std::strtoull(env, nullptr, 10);
  return 0;
}

ulf::FieldConfig config_of(const CommonOptions& opts) {
  return ulf::FieldConfig(
      opts.p, opts.backend == "qp" ? ulf::Backend::PADIC : ulf::Backend::LAURENT,
      opts.precision);
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ulf::DomainError("cannot open file: " + path);
  Json j;
  in >> j;
  return j;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw ulf::DomainError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int run_sample(const CommonOptions& opts, const std::string& dist,
               std::uint32_t n, std::int64_t module_exp, bool zero_module,
               const std::string& pi_path, std::uint64_t count) {
  const ulf::FieldConfig cfg = config_of(opts);
  const std::uint64_t seed = resolve_seed(opts.seed);
  std::optional<ulf::ScaleLaw> pi;
  if (!pi_path.empty()) pi = ulf::scale_law_from_json(load_json(pi_path));
  if (dist == "rotatable" && !pi)
    throw ulf::DomainError("--dist rotatable requires --pi FILE");

  auto draw_line = [&](std::uint64_t index) {
    ulf::RngStream rng(seed, opts.stream + index);
    Json value;
    if (dist == "gamma") {
      value = ulf::to_json(ulf::sample_gamma(rng, cfg));
    } else if (dist == "gamma_n") {
      value = ulf::to_json(ulf::sample_gamma_vector(rng, cfg, n));
    } else if (dist == "sigma_n") {
      value = ulf::to_json(ulf::sample_sigma(rng, cfg, n));
    } else if (dist == "gl_haar") {
      value = ulf::to_json(ulf::sample_gl_haar(rng, cfg, n));
    } else if (dist == "k_gaussian") {
      const ulf::ScaleValue m = zero_module
                                    ? ulf::ScaleValue::zero_value()
                                    : ulf::ScaleValue::of_exponent(module_exp);
      value = ulf::to_json(ulf::sample_k_gaussian(rng, cfg, m));
    } else if (dist == "rotatable") {
      value = ulf::to_json(ulf::sample_rotatable(rng, cfg, *pi, n));
    } else {
      throw ulf::DomainError("unknown distribution: " + dist);
    }
    Json line{{"index", index}, {"stream", opts.stream + index},
              {"value", std::move(value)}};
    return line.dump();
  };

  // Per-index streams keep the dump byte-identical for any thread count;
  // workers fill disjoint slots and the writer emits them in order.
  std::vector<std::string> lines(count);
  const std::uint32_t threads = std::max(1u, opts.threads);
  if (threads == 1) {
    for (std::uint64_t i = 0; i < count; ++i) lines[i] = draw_line(i);
  } else {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (count + threads - 1) / threads;
    for (std::uint32_t t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        const std::uint64_t lo = t * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(count, lo + chunk);
        for (std::uint64_t i = lo; i < hi; ++i) lines[i] = draw_line(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  Output out(opts.out);
  Json header{{"record", "run_config"},
              {"command", "sample"},
              {"dist", dist},
              {"field", ulf::to_json(cfg)},
              {"n", n},
              {"count", count},
              {"seed", seed},
              {"stream", opts.stream},
              {"threads", opts.threads},
              {"version", ulf::kVersion}};
  if (pi) header["pi"] = ulf::to_json(*pi);
  if (dist == "k_gaussian")
    header["module"] = zero_module ? Json("zero") : Json(module_exp);

  if (opts.format == "json") {
    Json all = Json::array();
    for (auto& l : lines) all.push_back(Json::parse(l));
    out.stream() << Json{{"run_config", header["field"]},
                         {"header", header},
                         {"samples", std::move(all)}}
                        .dump(2)
                 << "\n";
  } else if (opts.format == "jsonl") {
    out.stream() << header.dump() << "\n";
    for (const auto& l : lines) out.stream() << l << "\n";
  } else {
    throw ulf::DomainError("sample output supports jsonl or json, not " +
                           opts.format);
  }
  return 0;
}

int run_verify(const CommonOptions& opts, const std::string& suite,
               std::uint32_t n, std::uint32_t k, std::uint64_t trials,
               const std::string& pi_path, const std::string& phi_path,
               std::uint32_t max_n, std::uint32_t budget,
               std::uint64_t cases) {
  const ulf::FieldConfig cfg = config_of(opts);
  const std::uint64_t seed = resolve_seed(opts.seed);
  ulf::SuiteReport report;

  if (suite == "tv") {
    report = ulf::run_tv_suite({cfg, n, k, trials, seed, opts.threads});
  } else if (suite == "gl-haar") {
    report = ulf::run_gl_haar_suite({cfg, n, trials, seed, opts.threads});
  } else if (suite == "invariance") {
    ulf::InvarianceParams params{.config = cfg,
                                  .n = n,
                                  .level = 2,
                                  .draws = trials,
                                  .matrices = 1000,
                                  .seed = seed,
                                  .threads = opts.threads};
    report = ulf::run_invariance_suite(params);
  } else if (suite == "freedman") {
    if (pi_path.empty())
      throw ulf::DomainError("verify freedman requires --pi FILE");
    const ulf::ScaleLaw pi = ulf::scale_law_from_json(load_json(pi_path));
    report = ulf::run_freedman_suite({cfg, pi, n, k, trials, seed});
  } else if (suite == "gaussian-cf") {
    report = ulf::run_gaussian_cf_suite({cfg, n, trials, seed});
  } else if (suite == "schoenberg") {
    ulf::SchoenbergParams params{.config = cfg,
                                  .phi = std::nullopt,
                                  .max_n = max_n,
                                  .budget = budget,
                                  .random_cases = cases,
                                  .roundtrip_cases = 50,
                                  .max_points = 12,
                                  .seed = seed};
    if (!phi_path.empty())
      params.phi = ulf::profile_from_json(load_json(phi_path));
    report = ulf::run_schoenberg_suite(params);
  } else {
    throw ulf::DomainError("unknown suite: " + suite);
  }

  Output out(opts.out);
  if (opts.format == "csv") {
    out.stream() << "name,statistic,p_value,pass\n";
    for (const auto& t : report.tests)
      out.stream() << t.name << "," << t.statistic << "," << t.p_value << ","
                   << (t.pass ? 1 : 0) << "\n";
  } else {
    out.stream() << ulf::to_json(report).dump(2) << "\n";
  }
  return report.pass ? 0 : 1;
}

int run_laws(const std::string& name, std::uint32_t q, std::uint32_t n,
             std::uint32_t k, const std::string& pi_path,
             const std::string& phi_path, std::int64_t m_lo,
             std::int64_t m_hi) {
  auto print_rational = [](const ulf::Rational& r) {
    std::cout << r << " ≈ " << ulf::to_double(r) << "\n";
  };
  if (name == "tv-formula") {
    print_rational(ulf::tv_formula(q, n, k));
  } else if (name == "gl-density") {
    print_rational(ulf::gl_density(q, n));
  } else if (name == "sphere-mass") {
    print_rational(ulf::sphere_mass(q, n));
  } else if (name == "freedman-bound") {
    print_rational(ulf::finite_freedman_bound(q, n));
  } else if (name == "phi-from-pi") {
    if (pi_path.empty()) throw ulf::DomainError("phi-from-pi requires --pi");
    const ulf::ScaleLaw pi = ulf::scale_law_from_json(load_json(pi_path));
    std::cout << ulf::to_json(ulf::phi_from_pi(pi, q, m_lo, m_hi)).dump(2)
              << "\n";
  } else if (name == "pi-from-phi") {
    if (phi_path.empty()) throw ulf::DomainError("pi-from-phi requires --phi");
    const ulf::RadialProfile phi = ulf::profile_from_json(load_json(phi_path));
    auto result = ulf::pi_from_phi(phi);
    if (std::holds_alternative<ulf::ScaleLaw>(result)) {
      std::cout << ulf::to_json(std::get<ulf::ScaleLaw>(result)).dump(2)
                << "\n";
    } else {
      const auto& v = std::get<ulf::MonotonicityViolation>(result);
      std::cout << Json{{"violation", v.reason},
                        {"grid_m_a", v.grid_m_a},
                        {"grid_m_b", v.grid_m_b},
                        {"value_a", v.value_a},
                        {"value_b", v.value_b}}
                       .dump(2)
                << "\n";
    }
  } else {
    throw ulf::DomainError("unknown law: " + name);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probability on local fields: samplers, exact laws, and "
               "statistical verification"};
  app.require_subcommand(1);

  // sample
  CommonOptions sample_opts;
  std::string dist;
  std::uint32_t sample_n = 1;
  std::int64_t module_exp = 0;
  bool zero_module = false;
  std::string sample_pi;
  std::uint64_t count = 1000;
  CLI::App* sample = app.add_subcommand("sample", "draw from a distribution");
  add_common(sample, sample_opts);
  sample->add_option("--dist", dist, "distribution")
      ->required()
      ->check(CLI::IsMember({"gamma", "gamma_n", "sigma_n", "gl_haar",
                             "k_gaussian", "rotatable"}));
  sample->add_option("--n", sample_n, "dimension");
  sample->add_option("--m", module_exp, "module exponent for k_gaussian");
  sample->add_flag("--zero-module", zero_module,
                   "sample the zero module (k_gaussian)");
  sample->add_option("--pi", sample_pi, "scale-law JSON file (rotatable)");
  sample->add_option("--count", count, "number of draws");
  sample->add_option("--out", sample_opts.out, "output path (- for stdout)");
  sample->add_option("--format", sample_opts.format, "jsonl | json")
      ->check(CLI::IsMember({"jsonl", "json"}));

  // verify
  CommonOptions verify_opts;
  verify_opts.format = "json";
  std::string suite;
  std::uint32_t verify_n = 3, verify_k = 3, max_n = 6, budget = 64;
  std::uint64_t trials = 100000, cases = 100;
  std::string verify_pi, verify_phi;
  CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, verify_opts);
  verify->add_option("suite", suite, "tv | gl-haar | invariance | freedman | "
                                     "gaussian-cf | schoenberg")
      ->required()
      ->check(CLI::IsMember({"tv", "gl-haar", "invariance", "freedman",
                             "gaussian-cf", "schoenberg"}));
  verify->add_option("--n", verify_n, "dimension");
  verify->add_option("--k", verify_k, "prefix length");
  verify->add_option("--trials", trials, "sample budget");
  verify->add_option("--pi", verify_pi, "scale-law JSON file");
  verify->add_option("--phi", verify_phi, "radial-profile JSON file");
  verify->add_option("--max-n", max_n, "witness search dimension cap");
  verify->add_option("--budget", budget, "witness search configuration cap");
  verify->add_option("--cases", cases, "random cases for schoenberg");
  verify->add_option("--out", verify_opts.out, "report path (- for stdout)");
  verify->add_option("--format", verify_opts.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // laws
  std::string law_name;
  std::uint32_t law_q = 2, law_n = 1, law_k = 1;
  std::string law_pi, law_phi;
  std::int64_t law_m_lo = -4, law_m_hi = 8;
  CLI::App* laws = app.add_subcommand("laws", "print exact closed forms");
  laws->add_option("name", law_name,
                   "tv-formula | gl-density | sphere-mass | freedman-bound | "
                   "phi-from-pi | pi-from-phi")
      ->required()
      ->check(CLI::IsMember({"tv-formula", "gl-density", "sphere-mass",
                             "freedman-bound", "phi-from-pi", "pi-from-phi"}));
  laws->add_option("--q", law_q, "residue order");
  laws->add_option("--n", law_n, "dimension");
  laws->add_option("--k", law_k, "prefix length");
  laws->add_option("--pi", law_pi, "scale-law JSON file");
  laws->add_option("--phi", law_phi, "radial-profile JSON file");
  laws->add_option("--m-lo", law_m_lo, "profile window start");
  laws->add_option("--m-hi", law_m_hi, "profile window end");

  try {
    app.parse(argc, argv);
    if (sample->parsed())
      return run_sample(sample_opts, dist, sample_n, module_exp, zero_module,
                        sample_pi, count);
    if (verify->parsed())
      return run_verify(verify_opts, suite, verify_n, verify_k, trials,
                        verify_pi, verify_phi, max_n, budget, cases);
    if (laws->parsed())
      return run_laws(law_name, law_q, law_n, law_k, law_pi, law_phi,
                      law_m_lo, law_m_hi);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const ulf::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ulf::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
