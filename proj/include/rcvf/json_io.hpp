#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "rcvf/certificate.hpp"

namespace rcvf {

// Certificate files:
//
//   {"p": expr, "set": set, "r": [expr, ...], "m": expr,
//    "h": {"num": expr, "den": expr},
//    "witness": {"num": tree, "den": {"m": expr, "a": tree}, "monic": [frac, ...] | null}}
//
// with frac = {"num": tree, "den": {"m": expr, "a": tree}} and tree nodes
//
//   {"op":"const","value":expr}  {"op":"gen","index":i}  (0-based)
//   {"op":"iord","sos":[expr, ...]}
//   {"op":"icone","terms":[{"sos":[expr, ...],"factors":[i, ...]}, ...]}
//   {"op":"sum","args":[tree, ...]}  {"op":"prod","args":[tree, ...]}
//
// Sets are {"kind":"ball","n":2} or {"kind":"affine","centers":[...],"scales":[...]},
// with optional "strict":[expr, ...] and "vars":[name, ...]. Without "vars" the
// coordinates are bound from the variable names used by the document.
//
// Dickmann files: {"p": expr, "dickmann": [{"m1","q1","m2","q2"}, ...]}.
//
// Writers always emit "vars" and are canonical: write(read(write(x))) == write(x).

struct CertificateDocument {
  Polynomial p;
  SetDescriptor set;
  NonnegCertificate certificate;
};

struct DickmannDocument {
  Polynomial p;
  DickmannCertificate certificate;
};

std::string set_to_json(const SetDescriptor& set);
/// `used` feeds variable binding when the text has no "vars". Throws
/// InvalidArgument on malformed input and ParseError on bad expressions.
SetDescriptor set_from_json(std::string_view text, const std::vector<std::string>& used = {});

std::string certificate_to_json(const CertificateDocument& doc);
CertificateDocument certificate_from_json(std::string_view text);

std::string dickmann_to_json(const DickmannDocument& doc);
DickmannDocument dickmann_from_json(std::string_view text);

/// True when the text is an object with a "dickmann" member.
bool is_dickmann_json(std::string_view text);

}  // namespace rcvf
