#pragma once

#include <json.hpp>

#include "rcvf/json_io.hpp"

namespace rcvf::detail {

using Json = nlohmann::ordered_json;

Json to_json(const SetDescriptor& set);
Json to_json(const RingExpr& e);
Json to_json(const TElement& t);
Json to_json(const SOSExpr& s);
Json to_json(const CertificateDocument& doc);
Json to_json(const DickmannDocument& doc);
/// {"x":"1", ...}
Json point_to_json(const std::vector<std::string>& vars, const std::vector<Series>& point);

SetDescriptor set_from_json(const Json& j, const std::vector<std::string>& used);
RingExpr ring_from_json(const Json& j);
TElement t_element_from_json(const Json& j);
SOSExpr sos_from_json(const Json& j);
CertificateDocument certificate_from_json(const Json& j);
DickmannDocument dickmann_from_json(const Json& j);

/// Parses JSON text, mapping syntax errors to InvalidArgument.
Json parse_json(std::string_view text);
/// Variable names used by the expression strings in j.
std::vector<std::string> used_variables(const Json& j);

}  // namespace rcvf::detail
