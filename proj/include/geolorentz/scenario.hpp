#pragma once

// Runs a ScenarioConfig and writes the trajectory CSV plus a summary report.
//
// CSV columns, in order:
//   tau, t, x, y, z, u0, u1, u2, u3, norm_err, u0_drift
// with every real printed to 17 significant digits. norm_err is |u.u - 1| of
// the row's own u columns; u0_drift is u0 minus the initial u0.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "geolorentz/config.hpp"
#include "geolorentz/dynamics.hpp"
#include "geolorentz/error.hpp"

namespace geolorentz {

/// %.17g, enough for a lossless double round trip.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline constexpr const char* kCsvHeader = "tau,t,x,y,z,u0,u1,u2,u3,norm_err,u0_drift";

inline void write_csv_row(std::ostream& os, const Sample& s, double u0_start) {
  const auto& st = s.state;
  os << format_real(st.tau);
  for (std::size_t i = 0; i < 4; ++i) os << ',' << format_real(st.position[i]);
  for (std::size_t i = 0; i < 4; ++i) os << ',' << format_real(st.u[i]);
  os << ',' << format_real(s.norm_err) << ',' << format_real(st.u[0] - u0_start) << '\n';
}

/// Writes `content` to `path` through a temporary file and a rename.
inline void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

struct ScenarioResult {
  InvariantReport report;
  Sample final_sample;
  std::int64_t rows_written = 0;
  std::string csv;      ///< CSV text as written
  std::string summary;  ///< human-readable report as written
};

inline std::string format_summary(const ScenarioConfig& cfg, const ScenarioResult& r) {
  std::ostringstream os;
  const auto& fs = r.final_sample.state;
  os << "scenario: " << cfg.name << '\n'
     << "stepper: " << to_string(cfg.stepper) << '\n'
     << "k: " << format_real(cfg.k) << '\n'
     << "dtau: " << format_real(cfg.dtau) << '\n'
     << "steps: " << cfg.steps << '\n'
     << "rows_written: " << r.rows_written << '\n'
     << "final_tau: " << format_real(fs.tau) << '\n'
     << "final_position: " << format_real(fs.position[0]) << ' ' << format_real(fs.position[1])
     << ' ' << format_real(fs.position[2]) << ' ' << format_real(fs.position[3]) << '\n'
     << "final_u: " << format_real(fs.u[0]) << ' ' << format_real(fs.u[1]) << ' '
     << format_real(fs.u[2]) << ' ' << format_real(fs.u[3]) << '\n'
     << "max_norm_err: " << format_real(r.report.max_norm_err) << '\n'
     << "max_orthogonality: " << format_real(r.report.max_orthogonality) << '\n'
     << "max_energy_drift: " << format_real(r.report.max_energy_drift) << '\n';
  return os.str();
}

/// Simulates `cfg` in memory. Rows are every `stride`-th sample plus the final one.
/// Dynamics failures propagate as geolorentz::Error.
inline ScenarioResult run_scenario_in_memory(const ScenarioConfig& cfg) {
  ScenarioResult result;
  const FieldProvider fp = cfg.provider();
  const ParticleState initial = cfg.initial_state();
  const double u0_start = initial.u[0];
  InvariantMonitor monitor;
  std::ostringstream csv;
  csv << kCsvHeader << '\n';
  std::int64_t index = 0;
  simulate_each(initial, fp, ChargeRatio{cfg.k}, cfg.dtau, cfg.steps, cfg.stepper,
                [&](const Sample& s) {
                  monitor.add(s);
                  if (index % cfg.stride == 0 || index == cfg.steps) {
                    write_csv_row(csv, s, u0_start);
                    ++result.rows_written;
                  }
                  result.final_sample = s;
                  ++index;
                });
  result.report = monitor.report();
  result.csv = csv.str();
  result.summary = format_summary(cfg, result);
  return result;
}

/// Path of the summary report written next to a CSV.
inline std::filesystem::path summary_path_for(const std::filesystem::path& csv) {
  std::filesystem::path p = csv;
  p += ".report.txt";
  return p;
}

/// Runs `cfg` and writes the CSV to cfg.output and the summary next to it.
inline ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult result = run_scenario_in_memory(cfg);
  write_file_atomic(cfg.output, result.csv);
  write_file_atomic(summary_path_for(cfg.output), result.summary);
  return result;
}

}  // namespace geolorentz
