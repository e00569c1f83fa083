// frobweb analyze|verify|build|plot|report --in <file> --out <file>
//         [--grid N] [--tol T] [--region x0,y0,x1,y1] [--seeds N]
// Exit codes: 0 ok, 1 analysis failure, 2 input error. Failures print a
// JSON error object on stdout.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "frobweb/app.hpp"

namespace {

using frobweb::Json;

constexpr int kOk = 0;
constexpr int kAnalysisFailure = 1;
constexpr int kInputError = 2;

int fail(const std::string& kind, const std::string& message, int code) {
  std::cout << Json{{"kind", kind}, {"message", message}}.dump() << "\n";
  return code;
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw frobweb::Error(frobweb::ErrorKind::kParseError, "cannot open input " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    throw frobweb::Error(frobweb::ErrorKind::kParseError, e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw frobweb::Error(frobweb::ErrorKind::kInvalidArgument, "cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Singular flat 3-webs and Frobenius 3-fold germs"};
  app.require_subcommand(1);
  std::string in_path, out_path, region;
  frobweb::RunOptions options;

  for (const char* name : {"analyze", "verify", "build", "plot", "report"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--in", in_path, "input JSON (web spec, germ spec or build recipe)")->required();
    sub->add_option("--out", out_path, "output file (JSON, or SVG for plot)")->required();
    sub->add_option("--grid", options.grid, "grid size; 0 keeps the command default")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--tol", options.tol, "residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--region", region, "x0,y0,x1,y1");
    sub->add_option("--seeds", options.seeds, "seed points per leaf family (plot)")
        ->check(CLI::NonNegativeNumber);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("ParseError", e.what(), kInputError);
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    if (!region.empty()) options.region = frobweb::parse_region(region);
    const Json input = read_json(in_path);
    if (command == "plot") {
      const frobweb::PlotOutput plot = frobweb::cmd_plot(input, options);
      write_text(out_path, plot.svg);
      write_text(std::filesystem::path(out_path).replace_extension(".csv").string(), plot.csv);
      return kOk;
    }
    Json result;
    if (command == "analyze") result = frobweb::cmd_analyze(input, options);
    if (command == "verify") result = frobweb::cmd_verify(input, options);
    if (command == "build") result = frobweb::cmd_build(input, options);
    if (command == "report") result = frobweb::cmd_report(input, options);
    write_text(out_path, result.dump(2) + "\n");
    if (result.contains("pass") && !result.at("pass").get<bool>()) {
      return fail("VerificationFailed", "residuals exceed the tolerance; see " + out_path,
                  kAnalysisFailure);
    }
    return kOk;
  } catch (const frobweb::Error& e) {
    const int code = frobweb::is_input_error(e.kind()) ? kInputError : kAnalysisFailure;
    return fail(std::string(frobweb::kind_name(e.kind())), e.what(), code);
  } catch (const Json::exception& e) {
    return fail("ParseError", e.what(), kInputError);
  } catch (const std::out_of_range& e) {
    // Integer literals too large for the exact parsers.
    return fail("ParseError", e.what(), kInputError);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what(), kAnalysisFailure);
  }
}
