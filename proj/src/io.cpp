#include "frobweb/io.hpp"

#include <cmath>
#include <regex>

namespace frobweb {

namespace {

[[noreturn]] void parse_error(const std::string& what) {
  throw Error(ErrorKind::kParseError, what);
}

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string exact_string(const Exact& e) {
  const auto num = boost::multiprecision::numerator(e), den = boost::multiprecision::denominator(e);
  return den == 1 ? num.str() : num.str() + "/" + den.str();
}

bool is_exact_literal(const Json& j) {
  return j.is_number_integer() || j.is_number_unsigned() || j.is_string();
}

Point parse_point(const Json& j) {
  if (!j.is_array() || j.size() != 2) parse_error("base_point must be [x, y]");
  return {parse_complex(j[0]), parse_complex(j[1])};
}

Weights parse_weights(const Json& j) {
  if (!j.is_array() || j.size() != 2) parse_error("weights must be [w_x, w_y]");
  Weights w{parse_ratio(j[0]), parse_ratio(j[1])};
  if (w.wx == Ratio(0) && w.wy == Ratio(0)) parse_error("weights must not both vanish");
  return w;
}

double parse_double(const Json& j, const char* what) {
  if (!j.is_number()) parse_error(std::string(what) + " must be a number");
  return j.get<double>();
}

std::array<double, 2> parse_range(const Json& spec, std::array<double, 2> fallback) {
  if (!spec.contains("range")) return fallback;
  const Json& r = spec.at("range");
  if (!r.is_array() || r.size() != 2) parse_error("range must be [lo, hi]");
  return {parse_double(r[0], "range"), parse_double(r[1], "range")};
}

Json complex_list(const std::vector<Complex>& v) {
  Json out = Json::array();
  for (Complex z : v) {
    out.push_back(Json::array({z.real() == 0.0 ? 0.0 : z.real(), z.imag() == 0.0 ? 0.0 : z.imag()}));
  }
  return out;
}

}  // namespace

Ratio parse_ratio(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Ratio(j.get<std::int64_t>());
  if (j.is_string()) {
    static const std::regex re(R"(\s*(-?\d+)\s*(?:/\s*(\d+))?\s*)");
    std::smatch m;
    const std::string s = j.get<std::string>();
    if (std::regex_match(s, m, re)) {
      const std::int64_t q = m[2].matched ? std::stoll(m[2].str()) : 1;
      if (q == 0) parse_error("zero denominator in '" + s + "'");
      return Ratio(std::stoll(m[1].str()), q);
    }
  }
  parse_error("expected an integer or \"p/q\", got " + j.dump());
}

Exact parse_exact(const Json& j) {
  if (j.is_number_integer() || j.is_number_unsigned()) return Exact(j.get<std::int64_t>());
  if (j.is_string()) {
    static const std::regex re(R"(\s*-?\d+\s*(/\s*\d+)?\s*)");
    std::string s = j.get<std::string>();
    if (std::regex_match(s, re)) {
      s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
      const auto slash = s.find('/');
      if (slash != std::string::npos && std::stoll(s.substr(slash + 1)) == 0) {
        parse_error("zero denominator in '" + s + "'");
      }
      return Exact(s);
    }
  }
  parse_error("expected an exact rational (integer or \"p/q\"), got " + j.dump());
}

Complex parse_complex(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  if (j.is_string()) {
    static const std::regex rational(R"(\s*-?\d+\s*(/\s*\d+)?\s*)");
    if (std::regex_match(j.get<std::string>(), rational)) {
      const Ratio r = parse_ratio(j);
      return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
    }
    static const std::regex re(R"(\s*(-)?\s*(\d*\.?\d*)\s*\*?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*)");
    std::smatch m;
    const std::string s = j.get<std::string>();
    if (std::regex_match(s, m, re) && m[2].str() != ".") {
      const double k = m[2].length() > 0 ? std::stod(m[2].str()) : 1.0;
      const double q = m[3].matched ? std::stod(m[3].str()) : 1.0;
      if (q == 0.0) parse_error("zero denominator in '" + s + "'");
      return (m[1].matched ? -1.0 : 1.0) * k * M_PI / q;
    }
  }
  parse_error("expected a number, [re, im] or a multiple of pi, got " + j.dump());
}

Json complex_json(Complex z) {
  // Signed zeros would make otherwise equal outputs differ byte-wise.
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  if (im == 0.0) return re;
  return Json::array({re, im});
}

Json ratio_json(const Ratio& r) {
  if (r.denominator() == 1) return r.numerator();
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Json exact_json(const Exact& e) {
  if (boost::multiprecision::denominator(e) == 1) {
    const auto n = boost::multiprecision::numerator(e);
    if (boost::multiprecision::abs(n) < (boost::multiprecision::cpp_int(1) << 53)) {
      return static_cast<std::int64_t>(n);
    }
  }
  return exact_string(e);
}

Json poly_json(const ExactPoly& p) {
  Json out = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    out.push_back({ratio_json(mono.first), ratio_json(mono.second), to_double(c), 0.0,
                   exact_string(c)});
  }
  return out;
}

Json poly_json(const ComplexPoly& p) {
  Json out = Json::array();
  for (const auto& [mono, c] : p.terms()) {
    out.push_back({ratio_json(mono.first), ratio_json(mono.second), c.real(), c.imag()});
  }
  return out;
}

Field parse_poly_field(const Json& terms) {
  if (!terms.is_array()) parse_error("a polynomial field is a list of [m, n, re, im] terms");
  bool exact = true;
  for (const Json& t : terms) {
    if (!t.is_array() || t.size() < 3 || t.size() > 5) parse_error("bad term " + t.dump());
    const bool has_exact = t.size() == 5;
    const bool zero_im = t.size() < 4 || (t[3].is_number() && t[3].get<double>() == 0.0);
    if (!(has_exact || (is_exact_literal(t[2]) && zero_im))) exact = false;
  }
  if (exact) {
    ExactPoly p;
    for (const Json& t : terms) {
      p.add_term(parse_ratio(t[0]), parse_ratio(t[1]), parse_exact(t.size() == 5 ? t[4] : t[2]));
    }
    return Field::polynomial(std::move(p));
  }
  ComplexPoly p;
  for (const Json& t : terms) {
    const double re = parse_double(t[2], "coefficient");
    const double im = t.size() >= 4 ? parse_double(t[3], "coefficient") : 0.0;
    p.add_term(parse_ratio(t[0]), parse_ratio(t[1]), Complex(re, im));
  }
  return Field::polynomial(std::move(p));
}

LoadedWeb load_web(const Json& spec) {
  if (!spec.is_object()) parse_error("web spec must be a JSON object");
  const std::string kind = require(spec, "kind").is_string() ? spec.at("kind").get<std::string>() : "";
  const Point base = spec.contains("base_point") ? parse_point(spec.at("base_point")) : Point{};
  LoadedWeb out{CubicWeb::monic(Field(), Field(), Field(), {Ratio(1), Ratio(1)}, base, ""),
                std::nullopt, "", std::nullopt, 0, spec};

  if (kind == "catalog") {
    const Json& name = require(spec, "name");
    if (!name.is_string()) parse_error("catalog name must be a string");
    CatalogParams params;
    if (spec.contains("params")) {
      const Json& p = spec.at("params");
      if (p.contains("m0")) {
        if (!p.at("m0").is_number_integer()) parse_error("m0 must be an integer");
        params.m0 = p.at("m0").get<int>();
      }
      if (p.contains("L")) params.L = parse_complex(p.at("L"));
    }
    out.web = catalog(name.get<std::string>(), params);
    if (spec.contains("base_point")) out.web = out.web.with_base(base);
  } else if (kind == "polynomial") {
    const Json& c = require(spec, "coefficients");
    const Weights w = parse_weights(require(spec, "weights"));
    const std::string label = spec.value("label", std::string("polynomial"));
    if (c.contains("S") || c.contains("A") || c.contains("B")) {
      auto field = [&](const char* k) { return c.contains(k) ? parse_poly_field(c.at(k)) : Field(); };
      out.web = CubicWeb::monic(field("S"), field("A"), field("B"), w, base, label);
    } else if (c.contains("K3")) {
      auto field = [&](const char* k) { return c.contains(k) ? parse_poly_field(c.at(k)) : Field(); };
      out.web = CubicWeb::binary(field("K3"), field("K2"), field("K1"), field("K0"), w, base, label);
    } else {
      parse_error("coefficients need S, A, B or K3, K2, K1, K0");
    }
  } else if (kind == "profile") {
    const Json& fam = require(spec, "family");
    out.family_name = fam.is_string() ? fam.get<std::string>() : "";
    std::array<Complex, 3> init{};
    const bool has_init = spec.contains("initial");
    if (has_init) {
      const Json& i = spec.at("initial");
      if (!i.is_array() || i.size() != 3) parse_error("initial must have three entries");
      for (int k = 0; k < 3; ++k) init[k] = parse_complex(i[k]);
    }
    if (out.family_name == "parabolic") {
      if (!has_init) {
        const Complex s0 = spec.contains("s0") ? parse_complex(spec.at("s0")) : 0.0;
        const Complex a0 = spec.contains("a0") ? parse_complex(spec.at("a0")) : 1.0 / 3.0;
        const Complex L = spec.contains("L") ? parse_complex(spec.at("L")) : M_PI / 4;
        init = {s0, a0, parabolic_initial_for_L(L, s0, a0)};
      }
      const auto r = parse_range(spec, {-0.5, 0.5});
      out.family = integrate_parabolic(init[0], init[1], init[2], r[0], r[1]);
    } else if (out.family_name == "hyperbolic") {
      const Json m0 = spec.value("m0", Json(1));
      if (!m0.is_number_integer()) parse_error("m0 must be an integer");
      if (!has_init) {
        init = {spec.contains("sigma0") ? parse_complex(spec.at("sigma0")) : 0.0,
                spec.contains("a0") ? parse_complex(spec.at("a0")) : 0.1,
                spec.contains("beta0") ? parse_complex(spec.at("beta0")) : 0.0};
      }
      const auto r = parse_range(spec, {-0.3, 0.3});
      out.family = integrate_hyperbolic(init[0], init[1], init[2], m0.get<int>(), r[0], r[1]);
    } else {
      parse_error("profile family must be \"parabolic\" or \"hyperbolic\"");
    }
    out.web = out.family->web;
  } else {
    parse_error("web kind must be \"catalog\", \"polynomial\" or \"profile\"");
  }

  if (spec.contains("shear")) {
    const Json& s = spec.at("shear");
    TriangularMap map;
    map.r = parse_exact(require(s, "r"));
    const Json& k = require(s, "k");
    if (!k.is_number_integer()) parse_error("shear power k must be an integer");
    map.k = k.get<int>();
    out.web = pushforward(out.web, map);
    out.shear = map.r;
    out.shear_power = map.k;
  }
  return out;
}

Json weights_json(const Weights& w) { return Json::array({ratio_json(w.wx), ratio_json(w.wy)}); }

Json web_summary_json(const CubicWeb& web) {
  Json out{{"label", web.label()},
           {"monic", web.is_monic()},
           {"weights", weights_json(web.weights())},
           {"base_point", Json::array({complex_json(web.base_point().x),
                                       complex_json(web.base_point().y)})}};
  if (const ExactMonic* m = web.exact_monic()) {
    out["coefficients"] = {{"S", poly_json(m->S)}, {"A", poly_json(m->A)}, {"B", poly_json(m->B)}};
  }
  return out;
}

Json fingerprint_json(const Fingerprint& f) {
  Json inv;
  if (f.invariant.kind == InvariantKind::kPair) {
    inv = {{"kind", "pair"},
           {"value", Json::array({complex_json(f.invariant.value.first),
                                  complex_json(f.invariant.value.second)})}};
  } else {
    inv = {{"kind", "varies"}, {"value", complex_list(f.invariant.samples)}};
  }
  return {{"weights", Json::array({f.weights[0], f.weights[1]})},
          {"multiplicity", f.multiplicity},
          {"invariant", inv}};
}

Json potential_json(const Potential& p) {
  return {{"case", p.kind == PotentialKind::kKind0 ? "kind0" : "kind1"},
          {"weights", weights_json(p.weights)},
          {"terms", poly_json(p.f)}};
}

Json profile_json(const ReducedFamily& family, const std::string& family_name) {
  Json params{{"family", family_name},
              {"initial", complex_list({family.initial.begin(), family.initial.end()})},
              {"r", ratio_json(family.r)}};
  if (family_name == "hyperbolic") params["m0"] = family.m0;
  const Profile& prof = *family.profile;
  params["range"] = Json::array({prof.s_min(), prof.s_max()});
  Json knots = Json::array();
  for (std::size_t i = 0; i < prof.knots().size(); ++i) {
    knots.push_back(Json::array(
        {prof.knots()[i], complex_list(prof.states()[i]), complex_list(prof.slopes()[i])}));
  }
  return {{"parameters", params}, {"knots", knots}};
}

Json metric_json(const Metric& m) {
  Json rows = Json::array();
  for (int i = 0; i < 3; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 3; ++j) row.push_back(complex_json(m.entry(i, j)));
    rows.push_back(row);
  }
  return {{"kind", germ_kind_name(m.kind)}, {"delta", complex_json(m.delta)}, {"matrix", rows}};
}

Json euler_json(const EulerField& e) {
  return {{"w_t", ratio_json(e.wt)}, {"w_x", ratio_json(e.wx)}, {"w_y", ratio_json(e.wy)}};
}

Json report_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const CheckResult& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"max_residual", c.max_residual},
                      {"points", c.points},
                      {"pass", c.pass}});
  }
  return {{"checks", checks},
          {"euler_constant", complex_json(r.euler_constant)},
          {"fd_step", r.fd_step},
          {"tolerance", r.tolerance},
          {"pass", r.all_pass()}};
}

Json error_json(const Error& e) {
  return {{"kind", std::string(kind_name(e.kind()))}, {"message", e.what()}};
}

}  // namespace frobweb
