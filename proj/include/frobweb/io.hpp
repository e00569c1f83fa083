#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "frobweb/frobenius.hpp"
#include "frobweb/invariant.hpp"
#include "frobweb/reduce.hpp"
#include "frobweb/wdvv.hpp"

namespace frobweb {

using Json = nlohmann::json;

/// Integer or "p/q" string. ParseError otherwise.
Ratio parse_ratio(const Json& j);
/// Integer or "p/q" string; floats are rejected so exactness is explicit.
Exact parse_exact(const Json& j);
/// Number, [re, im], "p/q", or a multiple of pi written "pi/4", "2pi/3", "-pi/6".
Complex parse_complex(const Json& j);

/// Number when the imaginary part is zero, else [re, im].
Json complex_json(Complex z);
Json ratio_json(const Ratio& r);
Json exact_json(const Exact& e);

/// Term lists [m, n, re, im]; exact coefficients add a fifth entry "p/q".
/// Parsing: a list whose coefficients are all integers or "p/q" strings
/// (or carry the fifth entry) is exact; any float makes it numeric.
Json poly_json(const ExactPoly& p);
Json poly_json(const ComplexPoly& p);
Field parse_poly_field(const Json& terms);

/// A web read from a web spec, with the data that produced it.
struct LoadedWeb {
  CubicWeb web;
  std::optional<ReducedFamily> family;
  std::string family_name;
  /// Shear applied on top of a catalog or polynomial web.
  std::optional<Exact> shear;
  int shear_power = 0;
  Json spec;
};

/// {kind: "catalog"|"polynomial"|"profile", name?, params?, coefficients?,
///  weights, base_point, shear?: {r, k}}; profile specs carry family,
/// initial [sigma/s, alpha/a, beta/b], range [lo, hi], m0, L.
/// ParseError, UnknownForm, UnsupportedForm and InvalidArgument on bad input.
LoadedWeb load_web(const Json& spec);

Json weights_json(const Weights& w);
Json web_summary_json(const CubicWeb& web);
Json fingerprint_json(const Fingerprint& f);
Json potential_json(const Potential& p);
/// Parameter block plus knot table [s, u, u'] with complex entries.
Json profile_json(const ReducedFamily& family, const std::string& family_name);
Json metric_json(const Metric& m);
Json euler_json(const EulerField& e);
Json report_json(const VerificationReport& r);
Json error_json(const Error& e);

}  // namespace frobweb
