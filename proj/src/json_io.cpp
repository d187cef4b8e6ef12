#include "json_detail.hpp"

#include <algorithm>

#include "rcvf/errors.hpp"
#include "rcvf/text.hpp"

namespace rcvf {
namespace detail {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::InvalidArgument, "malformed JSON: " + what); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing \"") + key + "\"");
  return j.at(key);
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be a string");
  return j.get<std::string>();
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) malformed(std::string(what) + " must be an array");
  return j;
}

std::size_t index(const Json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    malformed(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

Json series_list(const std::vector<Series>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(s.to_string());
  return out;
}

std::vector<Series> series_list(const Json& j, const char* what) {
  std::vector<Series> out;
  for (const auto& e : array(j, what)) out.push_back(parse_series(text(e, what)));
  return out;
}

void collect(const Json& j, const std::string& key, std::vector<std::string>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) collect(it.value(), it.key(), out);
  } else if (j.is_array()) {
    for (const auto& e : j) collect(e, key, out);
  } else if (j.is_string() && key != "op" && key != "kind" && key != "vars") {
    auto q = trim_variables(parse_rational_function(j.get<std::string>()));
    for (const auto& v : q.variables()) out.push_back(v);
  }
}

}  // namespace

Json parse_json(std::string_view s) {
  try {
    return Json::parse(s.begin(), s.end());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> used_variables(const Json& j) {
  std::vector<std::string> out;
  collect(j, "", out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Json point_to_json(const std::vector<std::string>& vars, const std::vector<Series>& point) {
  Json out = Json::object();
  for (std::size_t i = 0; i < vars.size() && i < point.size(); ++i) out[vars[i]] = point[i].to_string();
  return out;
}

Json to_json(const SetDescriptor& set) {
  Json out = Json::object();
  if (set.is_polydisc()) {
    out["kind"] = "ball";
    out["n"] = set.dimension();
  } else {
    out["kind"] = "affine";
    out["centers"] = series_list(set.affine_map()->centers);
    out["scales"] = series_list(set.affine_map()->scales);
  }
  if (set.has_strict_constraints()) {
    Json s = Json::array();
    for (const auto& p : set.strict_constraints()) s.push_back(to_string(p));
    out["strict"] = s;
  }
  out["vars"] = set.variables();
  return out;
}

SetDescriptor set_from_json(const Json& j, const std::vector<std::string>& used) {
  std::string kind = text(member(j, "kind"), "kind");
  std::vector<Polynomial> strict;
  std::vector<std::string> names = used;
  if (j.contains("strict")) {
    for (const auto& e : array(j.at("strict"), "strict")) {
      strict.push_back(trim_variables(parse_polynomial(text(e, "strict"))));
      for (const auto& v : strict.back().variables()) names.push_back(v);
    }
  }
  std::size_t n = 0;
  AffineModuleMap map;
  if (kind == "ball") {
    n = index(member(j, "n"), "n");
  } else if (kind == "affine") {
    map.centers = series_list(member(j, "centers"), "centers");
    map.scales = series_list(member(j, "scales"), "scales");
    if (map.centers.size() != map.scales.size()) malformed("centers and scales differ in length");
    n = map.centers.size();
  } else {
    malformed("unknown set kind \"" + kind + "\"");
  }
  std::vector<std::string> vars;
  if (j.contains("vars")) {
    for (const auto& v : array(j.at("vars"), "vars")) vars.push_back(text(v, "vars"));
    if (vars.size() != n) malformed("\"vars\" does not match the dimension");
  } else {
    vars = bind_variables(n, names);
  }
  SetDescriptor set = kind == "ball" ? SetDescriptor::ball(vars) : SetDescriptor::affine(vars, map);
  return strict.empty() ? set : set.with_strict(std::move(strict));
}

Json to_json(const SOSExpr& s) {
  Json out = Json::array();
  for (const auto& f : s.summands) out.push_back(to_string(f));
  return out;
}

SOSExpr sos_from_json(const Json& j) {
  SOSExpr s;
  for (const auto& e : array(j, "sos")) s.summands.push_back(parse_rational_function(text(e, "sos")));
  return s;
}

Json to_json(const RingExpr& e) {
  Json out = Json::object();
  switch (e.kind()) {
    case RingExpr::Kind::Constant:
      out["op"] = "const";
      out["value"] = e.constant_value().to_string();
      break;
    case RingExpr::Kind::Generator:
      out["op"] = "gen";
      out["index"] = e.generator_index();
      break;
    case RingExpr::Kind::IOrd:
      out["op"] = "iord";
      out["sos"] = to_json(e.sos());
      break;
    case RingExpr::Kind::ICone: {
      out["op"] = "icone";
      Json terms = Json::array();
      for (const auto& t : e.cone().terms) {
        Json term = Json::object();
        term["sos"] = to_json(t.coefficient);
        term["factors"] = t.factors;
        terms.push_back(term);
      }
      out["terms"] = terms;
      break;
    }
    case RingExpr::Kind::Sum:
    case RingExpr::Kind::Product: {
      out["op"] = e.kind() == RingExpr::Kind::Sum ? "sum" : "prod";
      Json args = Json::array();
      for (const auto& a : e.args()) args.push_back(to_json(a));
      out["args"] = args;
      break;
    }
  }
  return out;
}

RingExpr ring_from_json(const Json& j) {
  std::string op = text(member(j, "op"), "op");
  if (op == "const") return RingExpr::constant(parse_series(text(member(j, "value"), "value")));
  if (op == "gen") return RingExpr::generator(index(member(j, "index"), "index"));
  if (op == "iord") return RingExpr::iord(sos_from_json(member(j, "sos")));
  if (op == "icone") {
    ConeExpr c;
    for (const auto& t : array(member(j, "terms"), "terms")) {
      ConeTerm term;
      term.coefficient = sos_from_json(member(t, "sos"));
      for (const auto& f : array(member(t, "factors"), "factors")) term.factors.push_back(index(f, "factor"));
      c.terms.push_back(std::move(term));
    }
    return RingExpr::icone(std::move(c));
  }
  if (op == "sum" || op == "prod") {
    std::vector<RingExpr> args;
    for (const auto& a : array(member(j, "args"), "args")) args.push_back(ring_from_json(a));
    return op == "sum" ? RingExpr::sum(std::move(args)) : RingExpr::product(std::move(args));
  }
  malformed("unknown op \"" + op + "\"");
}

Json to_json(const TElement& t) {
  Json out = Json::object();
  out["m"] = t.m.to_string();
  out["a"] = to_json(t.a);
  return out;
}

TElement t_element_from_json(const Json& j) {
  return TElement{parse_series(text(member(j, "m"), "m")), ring_from_json(member(j, "a"))};
}

Json to_json(const CertificateDocument& doc) {
  const NonnegCertificate& c = doc.certificate;
  Json out = Json::object();
  out["p"] = to_string(doc.p);
  out["set"] = to_json(doc.set);
  out["r"] = to_json(c.r);
  out["m"] = c.m.to_string();
  Json h = Json::object();
  h["num"] = to_string(c.h.num);
  h["den"] = to_string(c.h.den);
  out["h"] = h;
  Json w = Json::object();
  w["num"] = to_json(c.witness.numerator);
  w["den"] = to_json(c.witness.denominator);
  if (c.witness.monic) {
    Json monic = Json::array();
    for (const auto& f : *c.witness.monic) {
      Json frac = Json::object();
      frac["num"] = to_json(f.num);
      frac["den"] = to_json(f.den);
      monic.push_back(frac);
    }
    w["monic"] = monic;
  } else {
    w["monic"] = nullptr;
  }
  out["witness"] = w;
  return out;
}

CertificateDocument certificate_from_json(const Json& j) {
  CertificateDocument doc;
  doc.p = parse_polynomial(text(member(j, "p"), "p"));
  doc.set = set_from_json(member(j, "set"), used_variables(j));
  NonnegCertificate& c = doc.certificate;
  c.r = sos_from_json(member(j, "r"));
  c.m = parse_series(text(member(j, "m"), "m"));
  const Json& h = member(j, "h");
  c.h = RationalFunction(parse_polynomial(text(member(h, "num"), "h.num")),
                         parse_polynomial(text(member(h, "den"), "h.den")));
  const Json& w = member(j, "witness");
  c.witness.numerator = ring_from_json(member(w, "num"));
  c.witness.denominator = t_element_from_json(member(w, "den"));
  if (w.contains("monic") && !w.at("monic").is_null()) {
    std::vector<WitnessFraction> monic;
    for (const auto& f : array(w.at("monic"), "monic"))
      monic.push_back({ring_from_json(member(f, "num")), t_element_from_json(member(f, "den"))});
    c.witness.monic = std::move(monic);
  }
  return doc;
}

Json to_json(const DickmannDocument& doc) {
  Json out = Json::object();
  out["p"] = to_string(doc.p);
  Json terms = Json::array();
  for (const auto& t : doc.certificate.terms) {
    Json term = Json::object();
    term["m1"] = t.m1.to_string();
    term["q1"] = to_string(t.q1);
    term["m2"] = t.m2.to_string();
    term["q2"] = to_string(t.q2);
    terms.push_back(term);
  }
  out["dickmann"] = terms;
  return out;
}

DickmannDocument dickmann_from_json(const Json& j) {
  DickmannDocument doc;
  doc.p = parse_polynomial(text(member(j, "p"), "p"));
  for (const auto& t : array(member(j, "dickmann"), "dickmann")) {
    doc.certificate.terms.push_back({parse_series(text(member(t, "m1"), "m1")),
                                     parse_polynomial(text(member(t, "q1"), "q1")),
                                     parse_series(text(member(t, "m2"), "m2")),
                                     parse_polynomial(text(member(t, "q2"), "q2"))});
  }
  return doc;
}

}  // namespace detail

std::string set_to_json(const SetDescriptor& set) { return detail::to_json(set).dump(); }

SetDescriptor set_from_json(std::string_view text, const std::vector<std::string>& used) {
  return detail::set_from_json(detail::parse_json(text), used);
}

std::string certificate_to_json(const CertificateDocument& doc) { return detail::to_json(doc).dump(); }

CertificateDocument certificate_from_json(std::string_view text) {
  return detail::certificate_from_json(detail::parse_json(text));
}

std::string dickmann_to_json(const DickmannDocument& doc) { return detail::to_json(doc).dump(); }

DickmannDocument dickmann_from_json(std::string_view text) {
  return detail::dickmann_from_json(detail::parse_json(text));
}

bool is_dickmann_json(std::string_view text) {
  detail::Json j = detail::parse_json(text);
  return j.is_object() && j.contains("dickmann");
}

}  // namespace rcvf
