#include "rcvf/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "json_detail.hpp"
#include "rcvf/certificate.hpp"
#include "rcvf/integrality.hpp"
#include "rcvf/json_io.hpp"
#include "rcvf/polyring.hpp"
#include "rcvf/sos.hpp"
#include "rcvf/text.hpp"

namespace rcvf {
namespace {

using detail::Json;
using detail::point_to_json;
using detail::to_json;

class Usage : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string set;
  long trunc = 32;
  std::uint64_t seed = 0;
  bool has_seed = false;
  std::size_t samples = 0;
  bool has_samples = false;
  bool pretty = false;

  std::string expr, a, b, h, p, file;
  std::vector<std::string> at;
  bool generate = false, falsify = false, probe41 = false;
  std::size_t c_values = 10;
};

struct Outcome {
  Json json;
  int code = 0;
};

class PrecisionScope {
 public:
  explicit PrecisionScope(long order) : saved_(default_precision()) { set_default_precision(order); }
  ~PrecisionScope() { set_default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  long saved_;
};

std::string scalar(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

void render(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  auto nested = [](const Json& v) { return (v.is_object() || v.is_array()) && !v.empty(); };
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (nested(it.value())) {
        os << pad << it.key() << ":\n";
        render(it.value(), os, indent + 2);
      } else {
        os << pad << it.key() << ": " << (it.value().empty() && !it.value().is_primitive() ? "(empty)" : scalar(it.value()))
           << "\n";
      }
    }
  } else if (j.is_array()) {
    for (const auto& e : j) {
      if (nested(e)) {
        os << pad << "-\n";
        render(e, os, indent + 2);
      } else {
        os << pad << "- " << scalar(e) << "\n";
      }
    }
  } else {
    os << pad << scalar(j) << "\n";
  }
}

void emit(const Json& j, bool pretty, std::ostream& out) {
  if (pretty)
    render(j, out, 0);
  else
    out << j.dump() << "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Usage("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> used(const RationalFunction& q) { return trim_variables(q).variables(); }

SetDescriptor resolve_set(const std::string& arg, const std::vector<std::string>& names) {
  if (arg.empty()) return SetDescriptor::ball(bind_variables(std::max<std::size_t>(1, names.size()), names));
  if (arg.rfind("ball:", 0) == 0) {
    const std::string n = arg.substr(5);
    if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos) throw Usage("bad --set " + arg);
    return SetDescriptor::ball(bind_variables(std::stoul(n), names));
  }
  if (arg.rfind("affine:", 0) == 0) return detail::set_from_json(detail::parse_json(read_file(arg.substr(7))), names);
  throw Usage("--set must be ball:n or affine:FILE");
}

void require_seed(const Options& o) {
  if (!o.has_seed) throw Usage("--seed is required for randomized commands");
}

SampleConfig sampling(const Options& o, std::size_t default_samples) {
  SampleConfig cfg;
  cfg.seed = o.seed;
  cfg.samples = o.has_samples ? o.samples : default_samples;
  return cfg;
}

RationalFunction as_fraction(const Expression& e) {
  return std::visit([](const auto& v) { return RationalFunction(v); }, e);
}

const char* kind_name(const Expression& e) {
  switch (e.index()) {
    case 0: return "series";
    case 1: return "polynomial";
    default: return "rational_function";
  }
}

// --at x=value ... as (names, values)
std::pair<std::vector<std::string>, std::vector<Series>> bindings(const std::vector<std::string>& at) {
  std::vector<std::string> names;
  std::vector<Series> values;
  for (const auto& b : at) {
    auto eq = b.find('=');
    if (eq == std::string::npos || eq == 0) throw Usage("--at expects name=value, got " + b);
    names.push_back(b.substr(0, eq));
    values.push_back(parse_series(b.substr(eq + 1)));
  }
  return {names, values};
}

Series value_of(const Options& o) {
  Expression e = parse_expression(o.expr);
  if (o.at.empty()) {
    if (e.index() != 0) throw Usage("expression has variables; bind them with --at name=value");
    return std::get<Series>(e);
  }
  auto [names, values] = bindings(o.at);
  return poly_eval(as_fraction(e), names, values);
}

Outcome cmd_eval(const Options& o) {
  Json j = Json::object();
  if (o.at.empty()) {
    Expression e = parse_expression(o.expr);
    j["kind"] = kind_name(e);
    j["value"] = to_string(e);
  } else {
    j["kind"] = "series";
    j["value"] = value_of(o).to_string();
  }
  return {j, 0};
}

Outcome cmd_val(const Options& o) {
  Series v = value_of(o);
  Json j = Json::object();
  j["value"] = v.to_string();
  j["valuation"] = v.valuation().to_string();
  return {j, 0};
}

Outcome cmd_res(const Options& o) {
  Json j = Json::object();
  Expression e = parse_expression(o.expr);
  if (e.index() == 1 && o.at.empty()) {
    const Polynomial& p = std::get<Polynomial>(e);
    Value g = gauss_valuation(p);
    j["gauss"] = g.to_string();
    j["residue"] = g.is_top() ? std::string("0") : to_string(residue_layer(p, g.rational()));
    return {j, 0};
  }
  Series v = value_of(o);
  j["value"] = v.to_string();
  j["residue"] = to_string(v.residue());
  return {j, 0};
}

Outcome cmd_cmp(const Options& o) {
  Series a = parse_series(o.a), b = parse_series(o.b);
  int s = (a - b).sign();
  Json j = Json::object();
  j["a"] = a.to_string();
  j["b"] = b.to_string();
  j["order"] = s < 0 ? "LT" : s > 0 ? "GT" : "EQ";
  return {j, 0};
}

Outcome cmd_gauss(const Options& o) {
  RationalFunction h = parse_rational_function(o.expr);
  SetDescriptor set = resolve_set(o.set, used(h));
  Json j = Json::object();
  j["expr"] = to_string(h);
  j["set"] = to_json(set);
  j["gauss"] = gauss_valuation(module_pullback(h, set)).to_string();
  j["integral"] = generic_type_integral(h, set);
  return {j, 0};
}

Outcome cmd_integral(const Options& o) {
  require_seed(o);
  RationalFunction h = parse_rational_function(o.h);
  SetDescriptor set = resolve_set(o.set, used(h));
  Json j = Json::object();
  j["h"] = to_string(h);
  j["set"] = to_json(set);
  bool gauss_ok = true;
  if (set.has_strict_constraints()) {
    j["gauss"] = nullptr;
  } else {
    IntegralityVerdict g = gauss_verdict(h, set);
    gauss_ok = g.kind == IntegralityVerdict::Kind::IntegralByGauss;
    Json gj = Json::object();
    gj["integral"] = gauss_ok;
    gj["verdict"] = verdict_name(g.kind);
    gj["valuation"] = gauss_valuation(module_pullback(h, set)).to_string();
    j["gauss"] = gj;
  }
  IntegralityVerdict pv = pointwise_integral_oracle(h, set, sampling(o, 2000));
  const bool counterexample = pv.kind == IntegralityVerdict::Kind::CounterexampleFound;
  Json pj = Json::object();
  pj["verdict"] = counterexample ? "counterexample" : "no-counterexample";
  if (counterexample) {
    pj["point"] = point_to_json(set.variables(), pv.point);
    pj["value"] = pv.value.to_string();
    pj["valuation"] = pv.value.valuation().to_string();
  }
  pj["samples"] = pv.samples;
  pj["skipped"] = pv.skipped;
  j["pointwise"] = pj;
  j["divergence"] = !set.has_strict_constraints() && gauss_ok && counterexample;
  return {j, (counterexample || !gauss_ok) ? 1 : 0};
}

Json negativity(const std::vector<std::string>& vars, const std::vector<Series>& point, const Series& value) {
  Json j = Json::object();
  j["result"] = "NegativityWitness";
  j["point"] = point_to_json(vars, point);
  j["value"] = value.to_string();
  return j;
}

Outcome generation(const Polynomial& p, const SetDescriptor& set, const Options& o, bool bare_certificate) {
  GenerationConfig cfg;
  cfg.sampling = sampling(o, cfg.sampling.samples);
  GenerationResult res = generate_ball_certificate(p, set, cfg);
  switch (res.kind) {
    case GenerationResult::Kind::Certificate: {
      Json doc = to_json(CertificateDocument{p, set, *res.certificate});
      if (bare_certificate) return {doc, 0};
      Json j = Json::object();
      j["result"] = "Certificate";
      j["certificate"] = doc;
      return {j, 0};
    }
    case GenerationResult::Kind::NegativityWitness:
      return {negativity(set.variables(), res.point, res.value), 1};
    case GenerationResult::Kind::CandidateWithoutWitness: {
      Json j = Json::object();
      j["result"] = "CandidateWithoutWitness";
      j["r"] = to_json(res.r);
      j["m"] = res.m.to_string();
      Json h = Json::object();
      h["num"] = to_string(res.h.num);
      h["den"] = to_string(res.h.den);
      j["h"] = h;
      j["gauss"] = res.gauss.to_string();
      j["note"] = res.note;
      return {j, 1};
    }
    case GenerationResult::Kind::Unknown:
      break;
  }
  Json j = Json::object();
  j["result"] = "Unknown";
  j["note"] = res.note;
  return {j, 1};
}

Outcome cmd_psd(const Options& o) {
  if (int(o.generate) + int(o.falsify) + int(o.probe41) != 1)
    throw Usage("psd needs exactly one of --generate, --falsify, --probe41");
  require_seed(o);
  Polynomial p = parse_polynomial(o.p);
  SetDescriptor set = resolve_set(o.set, trim_variables(p).variables());
  if (o.generate) return generation(p, set, o, false);
  if (o.falsify) {
    SampleConfig cfg = sampling(o, 2000);
    if (auto neg = find_negative_point(p, set, cfg)) return {negativity(set.variables(), neg->first, neg->second), 1};
    Json j = Json::object();
    j["result"] = "NoCounterexampleFound";
    j["samples"] = cfg.samples;
    return {j, 0};
  }
  CharacterizationConfig cfg;
  cfg.sampling = sampling(o, 500);
  cfg.c_values = o.c_values;
  CharacterizationReport r = check_general_characterization(p, set, cfg);
  const bool negative = r.verdict == CharacterizationReport::Verdict::NegativityWitness;
  Json j = Json::object();
  j["result"] = negative ? "NegativityWitness" : "ConsistentNonneg";
  j["coherent"] = r.coherent();
  j["samples"] = r.samples;
  j["c_tested"] = r.c_tested;
  j["negative_found"] = r.negative_found;
  j["nonintegral_found"] = r.nonintegral_found;
  if (negative) {
    j["point"] = point_to_json(set.variables(), r.point);
    j["p_value"] = r.p_value.to_string();
    j["c"] = r.c ? Json(r.c->to_string()) : Json(nullptr);
    if (!r.perturbed_point.empty()) j["perturbed_point"] = point_to_json(set.variables(), r.perturbed_point);
    j["value"] = r.value ? Json(r.value->to_string()) : Json(nullptr);
  }
  if (!r.obstruction.empty()) j["obstruction"] = r.obstruction;
  return {j, !negative && r.coherent() ? 0 : 1};
}

Outcome cmd_cert_verify(const Options& o) {
  const std::string text = read_file(o.file);
  Json j = Json::object();
  if (is_dickmann_json(text)) {
    DickmannDocument doc = dickmann_from_json(text);
    j["kind"] = "dickmann";
    VerifyResult v;
    try {
      v = verify_dickmann_certificate(doc.p, doc.certificate);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CoefficientsNotIntegral) throw;
      v.reason = e.what();
    }
    j["verified"] = v.ok;
    if (!v.ok) j["reason"] = v.reason;
    return {j, v.ok ? 0 : 1};
  }
  CertificateDocument doc = certificate_from_json(text);
  VerifyResult v = verify_nonneg_certificate(doc.p, doc.certificate, doc.set);
  j["kind"] = "nonneg";
  j["verified"] = v.ok;
  if (!v.ok) j["reason"] = v.reason;
  return {j, v.ok ? 0 : 1};
}

Outcome cmd_cert_find(const Options& o) {
  require_seed(o);
  Polynomial p = parse_polynomial(o.p);
  SetDescriptor set = resolve_set(o.set, trim_variables(p).variables());
  return generation(p, set, o, true);
}

Outcome cmd_selftest() {
  std::vector<std::pair<std::string, std::function<bool()>>> checks;
  SetDescriptor ball1 = SetDescriptor::ball(std::vector<std::string>{"x"});
  checks.emplace_back("geometric series", [] {
    return (Series(1) - Series::eps()).inverse(5) == parse_series("1 + eps + eps^2 + eps^3 + eps^4 + O(eps^5)");
  });
  checks.emplace_back("gauss integrality of 1/(1+x^2)",
                      [&] { return generic_type_integral(parse_rational_function("1/(1 + x^2)"), ball1); });
  checks.emplace_back("divergence of (x+eps)/x", [&] {
    RationalFunction h = parse_rational_function("(x + eps)/x");
    SampleConfig cfg;
    cfg.seed = 7;
    auto v = pointwise_integral_oracle(h, ball1, cfg);
    return generic_type_integral(h, ball1) && v.kind == IntegralityVerdict::Kind::CounterexampleFound;
  });
  checks.emplace_back("exact SOS of x^2 - 2*x*y + 2*y^2", [] {
    auto q = residue_layer(parse_polynomial("x^2 - 2*x*y + 2*y^2"), Rational(0));
    return residue_sos_search(q).kind == SOSResult::Kind::SOS;
  });
  checks.emplace_back("certificate for 1 - eps*x^2", [&] {
    Polynomial p = parse_polynomial("1 - eps*x^2");
    auto res = generate_ball_certificate(p, ball1);
    if (res.kind != GenerationResult::Kind::Certificate) return false;
    std::string text = certificate_to_json({p, ball1, *res.certificate});
    CertificateDocument back = certificate_from_json(text);
    return verify_nonneg_certificate(back.p, back.certificate, back.set).ok && certificate_to_json(back) == text;
  });
  checks.emplace_back("negativity of eps - x^2", [&] {
    auto neg = find_negative_point(parse_polynomial("eps - x^2"), ball1, SampleConfig{});
    return neg && neg->second.sign() < 0;
  });
  checks.emplace_back("Dickmann 1 + eps*x^2", [] {
    DickmannCertificate c{{{Series::eps(), parse_polynomial("x"), Series(), Polynomial()}}};
    return verify_dickmann_certificate(parse_polynomial("1 + eps*x^2"), c).ok;
  });

  Json list = Json::array();
  std::size_t passed = 0;
  for (auto& [name, check] : checks) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception&) {
      ok = false;
    }
    passed += ok;
    Json c = Json::object();
    c["name"] = name;
    c["ok"] = ok;
    list.push_back(c);
  }
  Json j = Json::object();
  j["checks"] = list;
  j["passed"] = passed;
  j["failed"] = checks.size() - passed;
  return {j, passed == checks.size() ? 0 : 1};
}

Json error_json(const Error& e) {
  Json j = Json::object();
  j["error"] = error_code_name(e.code());
  j["message"] = e.what();
  if (auto* pe = dynamic_cast<const ParseError*>(&e)) {
    j["offset"] = pe->offset();
    j["expected"] = pe->expected();
  }
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact Puiseux-series arithmetic and non-negativity certificates", "rcvf"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--set", o.set, "ball:n or affine:FILE (default: ball over the used variables)");
  app.add_option("--trunc", o.trunc, "working precision as an eps-order")->check(CLI::PositiveNumber);
  auto* seed = app.add_option("--seed", o.seed, "seed for randomized commands");
  auto* samples = app.add_option("--samples", o.samples, "sample budget");
  app.add_flag("--pretty", o.pretty, "human-readable output");

  auto* eval = app.add_subcommand("eval", "evaluate an expression, optionally at a point");
  eval->add_option("--expr", o.expr)->required();
  eval->add_option("--at", o.at, "name=value bindings");
  auto* val = app.add_subcommand("val", "valuation of a series");
  val->add_option("--expr", o.expr)->required();
  val->add_option("--at", o.at, "name=value bindings");
  auto* res = app.add_subcommand("res", "residue of a series, or residue form of a polynomial");
  res->add_option("--expr", o.expr)->required();
  res->add_option("--at", o.at, "name=value bindings");
  auto* cmp = app.add_subcommand("cmp", "order comparison of two series");
  cmp->add_option("--a", o.a)->required();
  cmp->add_option("--b", o.b)->required();
  auto* gauss = app.add_subcommand("gauss", "Gauss valuation on the set's polydisc");
  gauss->add_option("--expr", o.expr)->required();
  auto* integral = app.add_subcommand("integral", "Gauss and pointwise integrality of h on the set");
  integral->set_help_flag("--help", "Print this help message and exit");  // frees --h
  integral->add_option("--h", o.h)->required();
  auto* psd = app.add_subcommand("psd", "non-negativity: certificate search, falsification or characterization probe");
  psd->add_option("--p", o.p)->required();
  psd->add_flag("--generate", o.generate);
  psd->add_flag("--falsify", o.falsify);
  psd->add_flag("--probe41", o.probe41, "sampled check of the 1/(1+c^2 p) characterization");
  psd->add_option("--c-values", o.c_values, "constants c per point for --probe41")->check(CLI::Range(1, 20));
  auto* cert = app.add_subcommand("cert", "certificate files");
  cert->require_subcommand(1);
  auto* verify = cert->add_subcommand("verify", "verify a certificate file");
  verify->add_option("file", o.file)->required();
  auto* find = cert->add_subcommand("find", "search for a certificate and print it");
  find->add_option("--p", o.p)->required();
  auto* selftest = app.add_subcommand("selftest", "built-in consistency checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  o.has_seed = seed->count() > 0;
  o.has_samples = samples->count() > 0;

  try {
    PrecisionScope scope(o.trunc);
    Outcome r;
    if (eval->parsed()) r = cmd_eval(o);
    else if (val->parsed()) r = cmd_val(o);
    else if (res->parsed()) r = cmd_res(o);
    else if (cmp->parsed()) r = cmd_cmp(o);
    else if (gauss->parsed()) r = cmd_gauss(o);
    else if (integral->parsed()) r = cmd_integral(o);
    else if (psd->parsed()) r = cmd_psd(o);
    else if (verify->parsed()) r = cmd_cert_verify(o);
    else if (find->parsed()) r = cmd_cert_find(o);
    else if (selftest->parsed()) r = cmd_selftest();
    emit(r.json, o.pretty, out);
    return r.code;
  } catch (const Usage& e) {
    err << "rcvf: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    emit(error_json(e), o.pretty, out);
    return 2;
  } catch (const std::exception& e) {
    Json j = Json::object();
    j["error"] = "Internal";
    j["message"] = e.what();
    emit(j, o.pretty, out);
    return 2;
  }
}

}  // namespace rcvf
