#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "rcvf/certificate.hpp"
#include "rcvf/cli.hpp"
#include "rcvf/json_io.hpp"
#include "rcvf/polyring.hpp"
#include "rcvf/sos.hpp"
#include "rcvf/text.hpp"

namespace py = pybind11;
using namespace rcvf;

namespace {

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code;
  {
    py::gil_scoped_release release;
    code = run(args, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

std::string canonical(const std::string& text) { return to_string(parse_expression(text)); }

std::string kind(const std::string& text) {
  switch (parse_expression(text).index()) {
    case 0: return "series";
    case 1: return "polynomial";
    default: return "rational_function";
  }
}

py::tuple verify_certificate(const std::string& json_text) {
  VerifyResult v;
  if (is_dickmann_json(json_text)) {
    DickmannDocument d = dickmann_from_json(json_text);
    try {
      v = verify_dickmann_certificate(d.p, d.certificate);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::CoefficientsNotIntegral) throw;
      v.reason = e.what();
    }
  } else {
    CertificateDocument doc = certificate_from_json(json_text);
    v = verify_nonneg_certificate(doc.p, doc.certificate, doc.set);
  }
  return py::make_tuple(v.ok, v.reason);
}

std::optional<std::vector<std::string>> sos_decompose(const std::string& text, unsigned denominator_degree) {
  Polynomial p = trim_variables(parse_polynomial(text));
  SOSBudget budget;
  budget.denominator_degree_cap = denominator_degree;
  SOSResult r = residue_sos_search(residue_layer(p, Rational(0)), budget);
  if (r.kind != SOSResult::Kind::SOS) return std::nullopt;
  std::vector<std::string> out;
  for (const auto& t : r.squares) out.push_back(to_string(lift(t)));
  return out;
}

}  // namespace

PYBIND11_MODULE(_rcvf, m) {
  m.doc() = "Exact Puiseux-series arithmetic and non-negativity certificates";

  py::register_exception<Error>(m, "RcvfError", PyExc_ValueError);

  m.def("run", &run_cli, py::arg("args"), "Runs the rcvf command line; returns (exit_code, stdout, stderr).");
  m.def("canonical", &canonical, py::arg("text"), "Canonical printed form of an expression.");
  m.def("kind", &kind, py::arg("text"), "'series', 'polynomial' or 'rational_function'.");
  m.def("verify_certificate", &verify_certificate, py::arg("json_text"),
        "Exact verification of a certificate document; returns (ok, reason).");
  m.def("sos_decompose", &sos_decompose, py::arg("text"), py::arg("denominator_degree") = 0,
        "Exact sum of squares of a polynomial with rational coefficients, or None.");
}
