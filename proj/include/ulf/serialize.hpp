#pragma once

#include <json.hpp>

#include "ulf/field.hpp"
#include "ulf/laws.hpp"
#include "ulf/linalg.hpp"
#include "ulf/scale_law.hpp"
#include "ulf/verify.hpp"

namespace ulf {

using Json = nlohmann::json;

// Canonical element schema:
//   {"backend":"qp"|"laurent","p":2,"v":0|"inf","digits":[...]}
// with digits little-endian from the valuation upward; exactly `known`
// digits are emitted, so parse(render(x)) reproduces x field by field.
Json to_json(const FieldElement& x);
FieldElement element_from_json(const FieldConfig& config, const Json& j);

Json to_json(const FieldConfig& config);
FieldConfig config_from_json(const Json& j);

Json to_json(const UVector& x);
UVector vector_from_json(const FieldConfig& config, const Json& j);

Json to_json(const UMatrix& m);
UMatrix matrix_from_json(const FieldConfig& config, const Json& j);

// {"atoms":{"0":0.5,"1":0.5},"zero":0.0}
Json to_json(const ScaleLaw& pi);
ScaleLaw scale_law_from_json(const Json& j);

// {"q":2,"m_lo":-1,"m_hi":4,"values":[...]} with values listed along the
// grid (radius q^-m for m from m_lo to m_hi).
Json to_json(const RadialProfile& phi);
RadialProfile profile_from_json(const Json& j);

Json to_json(const GofReport& report);
Json to_json(const CheckResult& check);
Json to_json(const GramCertificate& cert);

}  // namespace ulf
