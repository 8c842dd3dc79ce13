// Command-line driver: scenario simulation and the identity suite.
//
// Exit codes: 0 success, 1 validation error, 2 runtime physics error,
// 3 identity failure.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "geolorentz/geolorentz.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitPhysics = 2;
constexpr int kExitIdentity = 3;

constexpr const char* kConfigHelp = R"(Config file keys (`key = value`, `#` comments, triples as "x y z"):
  scenario       name used in reports                      [custom]
  uniform_E, E   uniform electric field triple              [unset]
  uniform_B, B   uniform magnetic field triple              [unset]
  coulomb_q      point-source strength at unit radius       [unset]
  coulomb_r_min  singular radius of the point source        [1e-6]
  k              charge-to-mass ratio                       [1]
  u              spatial initial four-velocity              [0 0 0]
  velocity       initial three-velocity, |v| < 1 (instead of u)
  position       initial spatial position                   [0 0 0]
  dtau           proper-time step                           [1e-3]
  steps          number of steps                            [required]
  stepper        expmap | euler | rk4                       [expmap]
  output         trajectory CSV path                        [trajectory.csv]
  stride         write every n-th sample                    [1]
At least one of uniform_E, uniform_B, coulomb_q is required.
Presets: free, hyperbolic, cyclotron, crossed, coulomb-orbit.
)";

int run_simulate(const std::string& config_path, const std::string& preset,
                 const std::string& out) {
  using namespace geolorentz;
  ScenarioConfig cfg;
  try {
    if (!preset.empty()) {
      cfg = preset_config(preset);
    } else {
      std::ifstream in(config_path, std::ios::binary);
      if (!in) {
        std::cerr << "error: cannot read config file " << config_path << '\n';
        return kExitValidation;
      }
      std::ostringstream text;
      text << in.rdbuf();
      cfg = parse_config(text.str());
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  if (!out.empty()) cfg.output = out;

  try {
    const ScenarioResult result = run_scenario(cfg);
    std::cout << result.summary << "csv: " << cfg.output << '\n'
              << "report: " << summary_path_for(cfg.output).string() << '\n';
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPhysics;
  }
  return kExitOk;
}

int run_verify(std::uint64_t seed, int samples, const std::string& fault, const std::string& out) {
  using namespace geolorentz;
  VerifyOptions opt;
  opt.seed = seed;
  opt.samples = samples;
  if (fault == "b3-sign") {
    opt.fault = InjectedFault::FlipB3Sign;
  } else if (!fault.empty()) {
    std::cerr << "error: unknown fault '" << fault << "'\n";
    return kExitValidation;
  }
  VerifyReport report;
  try {
    report = verify_identities(opt);
  } catch (const Error& e) {
    std::cerr << "error: identity suite aborted: " << e.what() << '\n';
    return kExitIdentity;
  }
  const std::string text = report.text();
  std::cout << text;
  if (!out.empty()) {
    try {
      write_file_atomic(out, text);
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitPhysics;
    }
  }
  return report.all_passed() ? kExitOk : kExitIdentity;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Charged-particle dynamics as successive infinitesimal Lorentz transformations"};
  app.require_subcommand(1);

  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write a trajectory CSV");
  std::string config_path, preset, out;
  auto* config_opt = simulate->add_option("--config", config_path, "Scenario config file")
                         ->check(CLI::ExistingFile);
  auto* preset_opt = simulate->add_option("--scenario", preset, "Built-in scenario preset")
                         ->check(CLI::IsMember(geolorentz::preset_names()));
  config_opt->excludes(preset_opt);
  simulate->add_option("--out", out, "Trajectory CSV path (overrides `output`)");
  simulate->footer(kConfigHelp);

  auto* verify = app.add_subcommand("verify", "Run the algebraic identity suite");
  std::uint64_t seed = 42;
  int samples = 1000;
  std::string fault, report_out;
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify->add_option("--samples", samples, "Random samples per identity")
      ->capture_default_str()
      ->check(CLI::Range(1, 10000000));
  verify->add_option("--out", report_out, "Also write the report to this file");
  verify->add_option("--inject-fault", fault, "Harness self-test hook (b3-sign)")->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  if (simulate->parsed()) {
    if (config_path.empty() && preset.empty()) {
      std::cerr << "error: simulate needs --config <path> or --scenario <preset>\n";
      return kExitValidation;
    }
    return run_simulate(config_path, preset, out);
  }
  return run_verify(seed, samples, fault, report_out);
}
