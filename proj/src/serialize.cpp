#include "ulf/serialize.hpp"

#include <cmath>

namespace ulf {

namespace {

const char* backend_tag(Backend b) {
  return b == Backend::PADIC ? "qp" : "laurent";
}

Backend backend_from_tag(const std::string& tag) {
  if (tag == "qp") return Backend::PADIC;
  if (tag == "laurent") return Backend::LAURENT;
  throw DomainError("unknown backend tag: " + tag);
}

}  // namespace

Json to_json(const FieldElement& x) {
  Json j;
  j["backend"] = backend_tag(x.config().backend);
  j["p"] = x.config().p;
  if (x.is_zero()) {
    j["v"] = "inf";
    j["digits"] = Json::array();
  } else {
    j["v"] = x.valuation();
    Json digits = Json::array();
    for (std::uint32_t i = 0; i < x.known(); ++i) digits.push_back(x.digit(i));
    j["digits"] = std::move(digits);
  }
  return j;
}

FieldElement element_from_json(const FieldConfig& config, const Json& j) {
  if (backend_from_tag(j.at("backend").get<std::string>()) != config.backend ||
      j.at("p").get<std::uint32_t>() != config.p)
    throw DomainError("serialized element does not match the configuration");
  std::vector<std::uint8_t> digits;
  for (const auto& d : j.at("digits"))
    digits.push_back(d.get<std::uint8_t>());
  if (j.at("v").is_string()) {
    if (j.at("v").get<std::string>() != "inf")
      throw DomainError("valuation must be an integer or \"inf\"");
    return FieldElement::make(config, kInfExp, digits);
  }
  return FieldElement::make(config, j.at("v").get<std::int64_t>(), digits);
}

Json to_json(const FieldConfig& config) {
  return Json{{"p", config.p},
              {"backend", backend_tag(config.backend)},
              {"precision", config.precision},
              {"character", config.character_name()}};
}

FieldConfig config_from_json(const Json& j) {
  return FieldConfig(j.at("p").get<std::uint32_t>(),
                     backend_from_tag(j.at("backend").get<std::string>()),
                     j.value("precision", kDefaultPrecision));
}

Json to_json(const UVector& x) {
  Json j = Json::array();
  for (std::size_t i = 0; i < x.size(); ++i) j.push_back(to_json(x[i]));
  return j;
}

UVector vector_from_json(const FieldConfig& config, const Json& j) {
  std::vector<FieldElement> entries;
  for (const auto& e : j) entries.push_back(element_from_json(config, e));
  if (entries.empty()) throw DomainError("empty vector");
  return UVector(std::move(entries));
}

Json to_json(const UMatrix& m) {
  Json j = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m.at(i, c)));
    j.push_back(std::move(row));
  }
  return j;
}

UMatrix matrix_from_json(const FieldConfig& config, const Json& j) {
  const std::size_t rows = j.size();
  if (rows == 0) throw DomainError("empty matrix");
  const std::size_t cols = j.at(0).size();
  UMatrix m(config, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (j.at(i).size() != cols) throw DomainError("ragged matrix rows");
    for (std::size_t c = 0; c < cols; ++c)
      m.at(i, c) = element_from_json(config, j.at(i).at(c));
  }
  return m;
}

Json to_json(const ScaleLaw& pi) {
  Json atoms = Json::object();
  for (const auto& [m, prob] : pi.atoms())
    atoms[std::to_string(m)] = prob;
  return Json{{"atoms", std::move(atoms)}, {"zero", pi.zero_mass()}};
}

ScaleLaw scale_law_from_json(const Json& j) {
  std::map<std::int64_t, double> atoms;
  for (const auto& [key, prob] : j.at("atoms").items())
    atoms[std::stoll(key)] = prob.get<double>();
  return ScaleLaw(std::move(atoms), j.value("zero", 0.0));
}

Json to_json(const RadialProfile& phi) {
  return Json{{"q", phi.q()},
              {"m_lo", phi.m_lo()},
              {"m_hi", phi.m_hi()},
              {"values", phi.values()}};
}

RadialProfile profile_from_json(const Json& j) {
  return RadialProfile(j.at("q").get<std::uint32_t>(),
                       j.at("m_lo").get<std::int64_t>(),
                       j.at("m_hi").get<std::int64_t>(),
                       j.at("values").get<std::vector<double>>());
}

Json to_json(const GofReport& report) {
  return Json{{"statistic", report.statistic},
              {"dof", report.dof},
              {"p_value", report.p_value},
              {"cells", report.cells},
              {"samples", report.samples}};
}

Json to_json(const CheckResult& check) {
  Json j{{"name", check.name},
         {"pass", check.pass},
         {"statistic", check.statistic}};
  if (!std::isnan(check.p_value)) j["p_value"] = check.p_value;
  if (!check.detail.empty()) j["detail"] = check.detail;
  return j;
}

Json to_json(const GramCertificate& cert) {
  Json points = Json::array();
  for (const auto& p : cert.points) points.push_back(to_json(p));
  Json matrix = Json::array();
  for (Eigen::Index i = 0; i < cert.matrix.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j2 = 0; j2 < cert.matrix.cols(); ++j2)
      row.push_back(cert.matrix(i, j2));
    matrix.push_back(std::move(row));
  }
  Json witness = Json::array();
  for (Eigen::Index i = 0; i < cert.witness.size(); ++i)
    witness.push_back(cert.witness(i));
  return Json{{"points", std::move(points)},
              {"matrix", std::move(matrix)},
              {"min_eigenvalue", cert.min_eigenvalue},
              {"verdict", cert.psd ? "PSD" : "NOT_PSD"},
              {"witness", std::move(witness)},
              {"method", cert.method},
              {"note", cert.note},
              {"merged_points", cert.merged_points}};
}

}  // namespace ulf
