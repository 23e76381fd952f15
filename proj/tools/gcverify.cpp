// Command-line front end: run named check suites against catalog structures
// or description files and emit a verification report.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "gcv/runner.hpp"

namespace {

std::vector<std::string> split_csv(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "gcverify: residual certification of generalized complex structures on coordinate "
      "tori"};

  std::string catalog, input, checks_csv, format = "json", out_path;
  std::vector<std::string> tol_overrides;
  std::uint32_t seed = gcv::kDefaultSeed;

  auto* catalog_opt = app.add_option("--catalog", catalog, "catalog entry name");
  auto* input_opt = app.add_option("--input", input, "structure description file");
  catalog_opt->excludes(input_opt);
  app.add_option("--checks", checks_csv,
                 "comma-separated checks (default: the entry's full suite)");
  app.add_option("--tol", tol_overrides, "tolerance override, e.g. --tol accept=1e-6")
      ->expected(-1);
  app.add_option("--seed", seed, "sample-point seed");
  app.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", out_path, "write the report to this path instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    gcv::RunConfig config;
    config.seed = seed;
    config.checks = split_csv(checks_csv);

    for (const auto& item : tol_overrides) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw gcv::Error("tolerance override needs name=value");
      const auto name = item.substr(0, eq);
      const double value = std::stod(item.substr(eq + 1));
      if (value <= 0) throw gcv::Error("tolerance overrides must be positive");
      if (name == "axiom") {
        config.tol.axiom = value;
      } else if (name == "accept") {
        config.tol.accept = value;
      } else if (name == "accept_fd") {
        config.tol.accept_fd = value;
      } else if (name == "reject") {
        config.tol.reject = value;
      } else {
        throw gcv::Error("unknown tolerance name '" + name + "'");
      }
    }

    for (const auto& name : config.checks) {
      bool known = false;
      for (const auto& k : gcv::known_checks()) known = known || k == name;
      if (!known) throw gcv::Error("unknown check identifier '" + name + "'");
    }

    if (!catalog.empty()) {
      config.catalog = catalog;
    } else if (!input.empty()) {
      std::ifstream in(input);
      if (!in) throw gcv::Error("cannot open input file: " + input);
      std::stringstream buf;
      buf << in.rdbuf();
      config.input_text = buf.str();
    } else {
      throw gcv::Error("either --catalog or --input is required");
    }

    const auto report = gcv::run(config);
    const auto rendered =
        format == "json" ? gcv::report_json(report) : gcv::report_text(report);
    if (out_path.empty()) {
      std::cout << rendered;
    } else {
      std::ofstream out(out_path);
      if (!out) throw gcv::Error("cannot open output path: " + out_path);
      out << rendered;
    }
    return report.all_pass() ? 0 : 1;
  } catch (const gcv::Error& e) {
    std::cerr << "gcverify: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "gcverify: " << e.what() << "\n";
    return 2;
  }
}
