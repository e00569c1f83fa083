#include "frobweb/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

#include "frobweb/chern.hpp"

namespace frobweb {

namespace {

constexpr std::array<double, 4> kAnalyzeRegion = {0.25, 0.25, 1.0, 1.0};
constexpr std::array<double, 4> kPolynomialGermRegion = {0.9, 0.9, 1.1, 1.1};
constexpr std::array<double, 4> kParabolicGermRegion = {-0.1, 0.8, 0.1, 1.2};
// Commutativity truncation grows toward y = 0, potentiality truncation with
// y and m0; this window keeps both under 1e-6 for m0 <= 2.
constexpr std::array<double, 4> kHyperbolicGermRegion = {-0.1, 1.2, 0.1, 1.4};
constexpr std::array<double, 4> kPlotRegion = {-1.0, -1.0, 1.0, 1.0};
constexpr std::uint64_t kPlotSeed = 20240601;
constexpr int kMarchingCells = 160;

std::array<double, 4> germ_region(const LoadedWeb& lw) {
  if (lw.family_name == "parabolic") return kParabolicGermRegion;
  if (lw.family_name == "hyperbolic") return kHyperbolicGermRegion;
  return kPolynomialGermRegion;
}

std::vector<Point> grid_over(const std::array<double, 4>& r, int n) {
  return rectangle_grid(r[0], r[1], r[2], r[3], n);
}

Json region_json(const std::array<double, 4>& r) { return Json::array({r[0], r[1], r[2], r[3]}); }

Json connection_summary(const CubicWeb& web, const std::array<double, 4>& region, int n,
                        double tol) {
  Json samples = Json::array();
  double curvature_max = 0.0;
  int skipped = 0;
  for (const Point& p : grid_over(region, n)) {
    try {
      const ConnectionData g = gamma_at(web, p);
      curvature_max = std::max(curvature_max, std::abs(curvature_at(web, p)));
      samples.push_back({{"point", Json::array({complex_json(p.x), complex_json(p.y)})},
                         {"gamma", Json::array({complex_json(g.g1), complex_json(g.g2)})}});
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kOnDiscriminant && e.kind() != ErrorKind::kDegenerateCubic) throw;
      ++skipped;
    }
  }
  Json out{{"samples", samples}, {"skipped", skipped}, {"curvature_max", curvature_max}};
  if (web.exact_monic()) {
    const ExactConnection& ec = exact_connection(web);
    out["gamma_identically_zero"] = ec.gamma1.is_zero() && ec.gamma2.is_zero();
    out["verdict"] = ec.N.is_zero() ? "flat (exact)" : "not flat (exact)";
  } else {
    out["gamma_identically_zero"] = nullptr;
    out["verdict"] = curvature_max < tol ? "flat (numerical)" : "not flat (numerical)";
  }
  return out;
}

Json germ_json(const FrobeniusGerm& germ) {
  return {{"metric", metric_json(germ.metric())},
          {"euler", euler_json(germ.euler())},
          {"web", web_summary_json(germ.web())}};
}

GermKind parse_germ_kind(const Json& spec) {
  const std::string k = spec.value("metric", std::string("kind0"));
  if (k == "kind0") return GermKind::kKind0;
  if (k == "kind1") return GermKind::kKind1;
  throw Error(ErrorKind::kParseError, "metric must be \"kind0\" or \"kind1\"");
}

VerifyOptions verify_options(const Json& spec, const RunOptions& options) {
  VerifyOptions v;
  v.tolerance = options.tol;
  if (spec.contains("fd_step")) {
    if (!spec.at("fd_step").is_number() || !(spec.at("fd_step").get<double>() > 0.0)) {
      throw Error(ErrorKind::kParseError, "fd_step must be a positive number");
    }
    v.fd_step = spec.at("fd_step").get<double>();
  }
  return v;
}

/// Odd sigma, beta and even alpha on the knots with s > 0.
double parity_residual(const ReducedFamily& fam) {
  const Profile& prof = *fam.profile;
  double worst = 0.0;
  for (double s : prof.knots()) {
    if (s <= 0.0 || -s < prof.s_min()) continue;
    const auto a = prof.interpolate(s), b = prof.interpolate(-s);
    worst = std::max({worst, std::abs(a[0] + b[0]), std::abs(a[1] - b[1]), std::abs(a[2] + b[2])});
  }
  return worst;
}

// ---- plotting ------------------------------------------------------------

struct Frame {
  std::array<double, 4> r;
  double sx(double x) const { return 40.0 + 560.0 * (x - r[0]) / (r[2] - r[0]); }
  double sy(double y) const { return 600.0 - 560.0 * (y - r[1]) / (r[3] - r[1]); }
  bool inside(double x, double y) const { return x >= r[0] && x <= r[2] && y >= r[1] && y <= r[3]; }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

/// Ascending real slopes when all three roots are real and distinct.
std::optional<std::array<double, 3>> real_slopes(const CubicWeb& web, double x, double y) {
  try {
    const RootTriple rt = roots_at(web, {x, y});
    if (rt.p.size() != 3 || rt.partition.size() != 3) return std::nullopt;
    std::array<double, 3> s{};
    for (int i = 0; i < 3; ++i) {
      if (std::abs(rt.p[i].imag()) > 1e-9 * (1.0 + std::abs(rt.p[i]))) return std::nullopt;
      s[i] = rt.p[i].real();
    }
    std::sort(s.begin(), s.end());
    return s;
  } catch (const Error&) {
    return std::nullopt;
  }
}

double nearest(const std::array<double, 3>& s, double target) {
  return *std::min_element(s.begin(), s.end(), [&](double a, double b) {
    return std::abs(a - target) < std::abs(b - target);
  });
}

/// Integral curve of dy/dx = p_k through the seed, both directions, by the
/// midpoint rule in arc length with the branch continued by nearest slope.
std::vector<std::array<double, 2>> trace_leaf(const CubicWeb& web, const Frame& f, double x0,
                                              double y0, double slope0) {
  const double h = std::hypot(f.r[2] - f.r[0], f.r[3] - f.r[1]) / 300.0;
  std::vector<std::array<double, 2>> halves[2];
  for (int side = 0; side < 2; ++side) {
    double x = x0, y = y0, s = slope0;
    double dx = side == 0 ? 1.0 : -1.0, dy = dx * s;
    auto unit = [&](double slope, double px, double py) {
      double ux = 1.0 / std::sqrt(1.0 + slope * slope), uy = slope * ux;
      if (ux * px + uy * py < 0.0) ux = -ux, uy = -uy;
      return std::array<double, 2>{ux, uy};
    };
    std::array<double, 2> d = unit(s, dx, dy);
    for (int step = 0; step < 1500; ++step) {
      const double mx = x + 0.5 * h * d[0], my = y + 0.5 * h * d[1];
      const auto sm = real_slopes(web, mx, my);
      if (!sm) break;
      const double s_mid = nearest(*sm, s);
      const std::array<double, 2> dm = unit(s_mid, d[0], d[1]);
      const double nx = x + h * dm[0], ny = y + h * dm[1];
      if (!f.inside(nx, ny)) break;
      const auto sn = real_slopes(web, nx, ny);
      if (!sn) break;
      s = nearest(*sn, s_mid);
      d = unit(s, dm[0], dm[1]);
      x = nx;
      y = ny;
      halves[side].push_back({x, y});
    }
  }
  std::vector<std::array<double, 2>> out(halves[1].rbegin(), halves[1].rend());
  out.push_back({x0, y0});
  out.insert(out.end(), halves[0].begin(), halves[0].end());
  return out;
}

using Segment = std::array<std::array<double, 2>, 2>;

std::vector<Segment> discriminant_segments(const CubicWeb& web, const Frame& f, int cells) {
  const int n = cells;
  std::vector<double> D((n + 1) * (n + 1), NAN);
  auto X = [&](int i) { return f.r[0] + (f.r[2] - f.r[0]) * i / n; };
  auto Y = [&](int j) { return f.r[1] + (f.r[3] - f.r[1]) * j / n; };
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      try {
        const Complex d = discriminant_at(web, {X(i), Y(j)});
        if (is_finite(d)) D[i * (n + 1) + j] = d.real();
      } catch (const Error&) {
      }
    }
  }
  std::vector<Segment> out;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      // Corners counter-clockwise from (i, j).
      const std::array<std::array<int, 2>, 4> c = {{{i, j}, {i + 1, j}, {i + 1, j + 1}, {i, j + 1}}};
      std::array<double, 4> v{};
      bool ok = true;
      for (int k = 0; k < 4; ++k) {
        v[k] = D[c[k][0] * (n + 1) + c[k][1]];
        if (!std::isfinite(v[k])) ok = false;
      }
      if (!ok) continue;
      std::vector<std::array<double, 2>> cross;
      for (int k = 0; k < 4; ++k) {
        const double a = v[k], b = v[(k + 1) % 4];
        if ((a > 0.0) == (b > 0.0)) continue;
        const double t = a / (a - b);
        const auto& p = c[k];
        const auto& q = c[(k + 1) % 4];
        cross.push_back({X(p[0]) + t * (X(q[0]) - X(p[0])), Y(p[1]) + t * (Y(q[1]) - Y(p[1]))});
      }
      for (std::size_t k = 0; k + 1 < cross.size(); k += 2) out.push_back({cross[k], cross[k + 1]});
    }
  }
  return out;
}

}  // namespace

std::array<double, 4> parse_region(const std::string& text) {
  std::array<double, 4> r{};
  std::stringstream ss(text);
  std::string item;
  int k = 0;
  while (std::getline(ss, item, ',')) {
    if (k >= 4) throw Error(ErrorKind::kParseError, "region needs exactly four numbers");
    try {
      std::size_t used = 0;
      r[k] = std::stod(item, &used);
      if (used != item.size() || !std::isfinite(r[k])) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParseError, "bad region entry '" + item + "'");
    }
    ++k;
  }
  if (k != 4) throw Error(ErrorKind::kParseError, "region needs exactly four numbers");
  if (!(r[0] < r[2] && r[1] < r[3])) {
    throw Error(ErrorKind::kParseError, "region must have x0 < x1 and y0 < y1");
  }
  return r;
}

bool is_input_error(ErrorKind kind) {
  return kind == ErrorKind::kParseError || kind == ErrorKind::kInvalidArgument ||
         kind == ErrorKind::kUnknownForm || kind == ErrorKind::kUnsupportedForm;
}

Json cmd_analyze(const Json& spec, const RunOptions& options) {
  const LoadedWeb lw = load_web(spec);
  const auto region =
      options.region.value_or(lw.family ? germ_region(lw) : kAnalyzeRegion);
  const int n = options.grid > 0 ? options.grid : 4;
  return {{"command", "analyze"},
          {"web", web_summary_json(lw.web)},
          {"fingerprint", fingerprint_json(fingerprint(lw.web))},
          {"connection", connection_summary(lw.web, region, n, options.tol)},
          {"region", region_json(region)}};
}

Json cmd_verify(const Json& spec, const RunOptions& options) {
  const bool wrapped = spec.is_object() && spec.contains("web");
  const LoadedWeb lw = load_web(wrapped ? spec.at("web") : spec);
  const FrobeniusGerm germ(lw.web, wrapped ? parse_germ_kind(spec) : GermKind::kKind0);
  const auto region = options.region.value_or(germ_region(lw));
  const int n = options.grid > 0 ? options.grid : 5;
  const VerificationReport r = verify(germ, grid_over(region, n), verify_options(spec, options));
  return {{"command", "verify"},
          {"germ", germ_json(germ)},
          {"report", report_json(r)},
          {"region", region_json(region)},
          {"pass", r.all_pass()}};
}

Json cmd_build(const Json& recipe, const RunOptions& options) {
  if (!recipe.is_object() || !recipe.contains("family") || !recipe.at("family").is_string()) {
    throw Error(ErrorKind::kParseError, "recipe needs a family");
  }
  const std::string family = recipe.at("family").get<std::string>();
  Json log = Json::array();
  Json web_spec;
  Json germ_extra = Json::object();
  if (family == "elliptic") {
    const Json& form = recipe.contains("form") ? recipe.at("form") : Json();
    int f = 0;
    if (form.is_number_integer()) {
      f = form.get<int>();
    } else if (form.is_string() && form.get<std::string>().rfind("form", 0) == 0 &&
               form.get<std::string>().size() == 5) {
      f = form.get<std::string>()[4] - '0';
    } else {
      throw Error(ErrorKind::kParseError, "elliptic recipe needs form 2, 3 or 4");
    }
    if (f < 2 || f > 4) throw Error(ErrorKind::kInvalidArgument, "elliptic forms are 2, 3 and 4");
    const std::string name = "form" + std::to_string(f);
    const CubicWeb web = catalog(name);
    const Ratio ratio = web.weights().wy / web.weights().wx;
    const int k = ratio.denominator() == 1 ? static_cast<int>(ratio.numerator()) : 1;
    const Exact r = shear_fit(web, k);
    web_spec = {{"kind", "catalog"}, {"name", name}};
    if (r != 0) web_spec["shear"] = {{"r", exact_json(r)}, {"k", k}};
    germ_extra["shear"] = {{"r", exact_json(r)}, {"k", k}};
    log.push_back("shear_fit with k = " + std::to_string(k) + " gives r = " +
                  exact_json(r).dump());
  } else if (family == "parabolic" || family == "hyperbolic") {
    web_spec = recipe;
    web_spec["kind"] = "profile";
  } else {
    throw Error(ErrorKind::kParseError, "family must be elliptic, parabolic or hyperbolic");
  }

  const LoadedWeb lw = load_web(web_spec);
  if (lw.web.exact_monic()) {
    const Potential pot = reconstruct_potential(lw.web);
    germ_extra["potential"] = potential_json(pot);
    log.push_back(std::string("potential satisfies the associativity equation exactly: ") +
                  (associativity_residual_exact(pot).is_zero() ? "yes" : "no"));
  }
  if (lw.family) {
    germ_extra["profile"] = profile_json(*lw.family, lw.family_name);
    if (family == "hyperbolic" && lw.family->m0 % 2 == 0) {
      const double par = parity_residual(*lw.family);
      germ_extra["parity_residual"] = par;
      log.push_back("even m0: sigma, beta odd and alpha even on the knots, residual " +
                    sci(par) + (par < 1e-9 ? "" : " (initial data breaks the parity)"));
    }
  }
  const FrobeniusGerm germ(lw.web, GermKind::kKind0);
  const auto region = options.region.value_or(germ_region(lw));
  const int n = options.grid > 0 ? options.grid : 5;
  const VerificationReport r = verify(germ, grid_over(region, n), verify_options(recipe, options));
  Json g = germ_json(germ);
  g.update(germ_extra);
  return {{"command", "build"},
          {"recipe", recipe},
          {"germ", g},
          {"report", report_json(r)},
          {"region", region_json(region)},
          {"log", log},
          {"pass", r.all_pass()}};
}

PlotOutput cmd_plot(const Json& spec, const RunOptions& options) {
  const LoadedWeb lw = load_web(spec);
  const Frame f{options.region.value_or(kPlotRegion)};
  if (options.seeds < 0) throw Error(ErrorKind::kInvalidArgument, "seeds must be non-negative");
  const int cells = options.grid >= 10 ? options.grid : kMarchingCells;

  // Seeds where all three slopes are real; drawn from a fixed generator.
  std::mt19937_64 rng(kPlotSeed);
  std::uniform_real_distribution<double> ux(f.r[0], f.r[2]), uy(f.r[1], f.r[3]);
  std::vector<std::pair<std::array<double, 2>, std::array<double, 3>>> seeds;
  for (int attempt = 0; attempt < 400 * options.seeds && static_cast<int>(seeds.size()) < options.seeds;
       ++attempt) {
    const double x = ux(rng), y = uy(rng);
    if (const auto s = real_slopes(lw.web, x, y)) seeds.push_back({{x, y}, *s});
  }

  PlotOutput out;
  std::ostringstream svg, csv;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<!-- frobweb-plot v1: canvas 640x640; x in [" << fmt6(f.r[0]) << ", " << fmt6(f.r[2])
      << "] maps to [40, 600] left to right, y in [" << fmt6(f.r[1]) << ", " << fmt6(f.r[3])
      << "] maps to [600, 40] bottom to top; leaf0..leaf2 follow the ascending real slopes at "
         "each seed; disc is the real curve D = 0 -->\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"640\" "
         "viewBox=\"0 0 640 640\">\n"
      << "<style>.leaf0{stroke:#1f77b4}.leaf1{stroke:#d62728}.leaf2{stroke:#2ca02c}"
         ".leaf0,.leaf1,.leaf2{fill:none;stroke-width:1.2}.disc{fill:none;stroke:#000;"
         "stroke-width:2}</style>\n"
      << "<rect x=\"40\" y=\"40\" width=\"560\" height=\"560\" fill=\"none\" stroke=\"#888\"/>\n";
  csv << "kind,family,seed,index,x,y\n";

  for (std::size_t si = 0; si < seeds.size(); ++si) {
    const auto& [pt, slopes] = seeds[si];
    for (int k = 0; k < 3; ++k) {
      const auto leaf = trace_leaf(lw.web, f, pt[0], pt[1], slopes[k]);
      svg << "<polyline class=\"leaf" << k << "\" points=\"";
      for (std::size_t i = 0; i < leaf.size(); ++i) {
        svg << (i ? " " : "") << fmt(f.sx(leaf[i][0])) << "," << fmt(f.sy(leaf[i][1]));
        csv << "leaf," << k << "," << si << "," << i << "," << fmt6(leaf[i][0]) << ","
            << fmt6(leaf[i][1]) << "\n";
      }
      svg << "\"/>\n";
      ++out.leaves;
    }
  }
  // Requested seeds with no real triple of slopes: complex branches.
  for (int si = static_cast<int>(seeds.size()); si < options.seeds; ++si) {
    for (int k = 0; k < 3; ++k) {
      csv << "absent," << k << "," << si << ",,,\n";
      ++out.absent;
    }
  }

  const auto segs = discriminant_segments(lw.web, f, cells);
  if (!segs.empty()) {
    svg << "<path class=\"disc\" d=\"";
    for (std::size_t i = 0; i < segs.size(); ++i) {
      svg << (i ? " " : "") << "M" << fmt(f.sx(segs[i][0][0])) << "," << fmt(f.sy(segs[i][0][1]))
          << " L" << fmt(f.sx(segs[i][1][0])) << "," << fmt(f.sy(segs[i][1][1]));
      for (int e = 0; e < 2; ++e) {
        csv << "discriminant,," << i << "," << e << "," << fmt6(segs[i][e][0]) << ","
            << fmt6(segs[i][e][1]) << "\n";
      }
    }
    svg << "\"/>\n";
  }
  svg << "</svg>\n";
  out.svg = svg.str();
  out.csv = csv.str();
  return out;
}

Json cmd_report(const Json& spec, const RunOptions& options) {
  const LoadedWeb lw = load_web(spec);
  const CubicWeb& web = lw.web;
  Json out{{"command", "report"}, {"web", web_summary_json(web)}};
  auto attempt = [&](const char* key, auto&& body) {
    try {
      out[key] = body();
    } catch (const Error& e) {
      out[key] = {{"error", error_json(e)}};
    }
  };
  const auto region = options.region.value_or(lw.family ? germ_region(lw) : kAnalyzeRegion);
  const int n = options.grid > 0 ? options.grid : 4;
  attempt("fingerprint", [&] { return fingerprint_json(fingerprint(web)); });
  attempt("connection", [&] { return connection_summary(web, region, n, options.tol); });
  bool wdvv0_holds = false;
  attempt("wdvv0", [&] {
    double worst = 0.0;
    for (const Point& p : grid_over(region, n)) worst = std::max(worst, wdvv0_residual(web, p).max_abs());
    Json w{{"max_residual", worst}};
    if (web.exact_monic()) {
      wdvv0_holds = wdvv0_residual_exact(web).is_zero();
      w["exact_zero"] = wdvv0_holds;
    } else {
      wdvv0_holds = worst < options.tol;
    }
    return w;
  });
  if (web.exact_monic()) {
    attempt("potential", [&] { return potential_json(reconstruct_potential(web)); });
  }
  if (wdvv0_holds) {
    attempt("verification", [&] {
      const FrobeniusGerm germ(web, GermKind::kKind0);
      const auto gr = options.region.value_or(germ_region(lw));
      VerifyOptions v;
      v.tolerance = options.tol;
      return report_json(verify(germ, grid_over(gr, options.grid > 0 ? options.grid : 5), v));
    });
  }
  attempt("kind1_obstruction", [&] {
    const Point target = web.base_point();
    // Short in x: form 6 has a pole line near x = 0.23 for L = pi/4.
    const Point start{target.x + 0.1, target.y + 0.5};
    const DeltaObstruction d =
        delta_obstruction(web, GermKind::kKind1, approach_sequence(start, target), target);
    return Json{{"obstructed", d.obstructed},
                {"inverse_delta_limit", complex_json(d.inverse_delta_limit)}};
  });
  return out;
}

}  // namespace frobweb
