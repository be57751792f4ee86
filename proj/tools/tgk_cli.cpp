// tgk: run verification suites over scenario files.
//
//   tgk check --scenario <path> [--report json|text]
//   tgk reduce --scenario <path> --point <name> [--report json|text]
//   tgk catalog [--export <dir>]
//   tgk selftest [--report json|text]
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 load or validation error.
// A scenario argument of the form builtin:<name> loads a catalog entry.

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "tgk/catalog.hpp"
#include "tgk/runner.hpp"
#include "tgk/selftest.hpp"

namespace {

constexpr int kFailed = 1;
constexpr int kLoadError = 2;

tgk::Scenario open_scenario(const std::string& arg) {
  const std::string prefix = "builtin:";
  if (arg.rfind(prefix, 0) == 0) return tgk::load_catalog_scenario(arg.substr(prefix.size()));
  return tgk::load_scenario(arg);
}

void emit(const tgk::Report& r, const std::string& format) {
  if (format == "json") std::cout << r.to_json().dump(2) << "\n";
  else std::cout << r.text();
}

int export_catalog(const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& e : tgk::catalog()) {
    auto path = std::filesystem::path(dir) / (e.name + ".json");
    std::ofstream out(path);
    out << e.text << "\n";
    if (!out) {
      std::cerr << "error: cannot write " << path << "\n";
      return kLoadError;
    }
    std::cout << path.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for twisted generalized complex and Kahler structures"};
  app.require_subcommand(1);

  std::string scenario, format = "json", point, export_dir;

  auto* check = app.add_subcommand("check", "run the checks a scenario declares");
  check->add_option("--scenario", scenario, "scenario file, or builtin:<name>")->required();
  check->add_option("--report", format, "report format")->check(CLI::IsMember({"json", "text"}));

  auto* reduce = app.add_subcommand("reduce", "reduce the primary structure at one sample point");
  reduce->add_option("--scenario", scenario, "scenario file, or builtin:<name>")->required();
  reduce->add_option("--point", point, "sample point name")->required();
  reduce->add_option("--report", format, "report format")->check(CLI::IsMember({"json", "text"}));

  auto* cat = app.add_subcommand("catalog", "list the built-in scenarios");
  cat->add_option("--export", export_dir, "write every built-in scenario into this directory");

  auto* self = app.add_subcommand("selftest", "run every built-in scenario and the identity sweep");
  self->add_option("--report", format, "report format")->check(CLI::IsMember({"json", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kLoadError;
  }

  try {
    if (*check) {
      tgk::Report r = tgk::run_checks(open_scenario(scenario));
      emit(r, format);
      return r.all_passed() ? 0 : kFailed;
    }
    if (*reduce) {
      tgk::Scenario s = open_scenario(scenario);
      tgk::Report r = tgk::reduce_at(s, point);
      emit(r, format);
      return r.all_passed() ? 0 : kFailed;
    }
    if (*cat) {
      if (!export_dir.empty()) return export_catalog(export_dir);
      std::cout << tgk::list_catalog();
      return 0;
    }
    if (*self) {
      tgk::SelftestResult res = tgk::run_selftest();
      if (format == "json") {
        std::cout << res.to_json().dump(2) << "\n";
      } else {
        for (const auto& r : res.reports) std::cout << r.text() << "\n";
        for (const auto& [name, m] : res.mismatches)
          for (const auto& line : m) std::cout << "mismatch " << name << ": " << line << "\n";
        std::cout << "selftest " << (res.ok() ? "pass" : "fail") << "\n";
      }
      return res.ok() ? 0 : kFailed;
    }
  } catch (const tgk::LoadError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLoadError;
  } catch (const tgk::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLoadError;
  } catch (const tgk::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kLoadError;
  }
  return 0;
}
