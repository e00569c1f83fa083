#pragma once

#include <array>
#include <optional>
#include <string>

#include "frobweb/io.hpp"

namespace frobweb {

/// Options shared by the front-end commands. Zero grid means the command's
/// own default.
struct RunOptions {
  int grid = 0;
  double tol = 1e-6;
  std::optional<std::array<double, 4>> region;
  int seeds = 5;
};

/// "x0,y0,x1,y1" with x0 < x1 and y0 < y1. ParseError otherwise.
std::array<double, 4> parse_region(const std::string& text);

/// Fingerprint plus connection summary: gamma on an N x N sample grid,
/// the largest curvature and an exactness verdict.
Json cmd_analyze(const Json& spec, const RunOptions& options);

/// Germ spec {web: <web spec>, metric: "kind0"|"kind1", fd_step?} or a
/// bare web spec (kind0). Result carries "pass".
Json cmd_verify(const Json& spec, const RunOptions& options);

/// Recipe {family: "elliptic", form} | {family: "parabolic", L, s0, a0}
/// | {family: "hyperbolic", m0, sigma0, a0, beta0}. Result carries "pass".
Json cmd_build(const Json& recipe, const RunOptions& options);

struct PlotOutput {
  std::string svg;
  std::string csv;
  int leaves = 0;
  int absent = 0;
};

/// Leaves of the three families through seed points where all roots are
/// real, and the real discriminant curve by marching squares.
PlotOutput cmd_plot(const Json& spec, const RunOptions& options);

/// Everything about one web: fingerprint, connection, WDVV0 residual,
/// potential and, when WDVV0 holds, germ verification. Failing parts are
/// reported in place as error objects.
Json cmd_report(const Json& spec, const RunOptions& options);

/// Input errors (exit code 2) versus analysis failures (exit code 1).
bool is_input_error(ErrorKind kind);

}  // namespace frobweb
