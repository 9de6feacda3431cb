#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mirrorprox/mfmp.hpp"
#include "mirrorprox/problems.hpp"

namespace mirrorprox::harness {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitBadConfig = 2;
inline constexpr int kExitDiverged = 3;
inline constexpr int kExitProxFailure = 4;

/// Parsed experiment configuration (INI-style file, see docs/config.md).
struct ExperimentConfig {
  std::string name;  // config file stem
  // [instance]
  std::string kind = "smooth";
  int n = 10;
  // [algorithm]
  std::string method = "mfmp-sm";  // mfmp | mfmp-sm
  int K = 200;
  double prox_tol = 1e-10;
  bool tighten_constants = true;
  double z1_scale = 0.5;
  // [run]
  std::vector<std::uint64_t> seeds{0};
  std::string out = "run";
  std::vector<std::string> checks;  // three-point certificates contraction lemma-mfmp
  double gap_radius = 2.0;
  int gap_points = 64;
  // [tolerances]
  double certificate_tol = 1e-9;
  double check_slack = 1e-8;
};

/// Strict INI parse + schema validation; throws std::invalid_argument on any
/// unknown section/key or malformed value.
ExperimentConfig load_config(const std::filesystem::path& path);

struct RunOutcome {
  std::uint64_t seed = 0;
  double final_f_norm = 0.0;
  double gap = std::numeric_limits<double>::quiet_NaN();
  bool diverged = false;
  bool prox_failed = false;
  int iterations = 0;
  double L_used = 0.0, m_used = 0.0;
  std::map<std::string, double> check_values;
  std::map<std::string, bool> check_passed;
  std::filesystem::path csv_path;
};

struct CliOptions {
  std::optional<std::filesystem::path> out_override;
  std::optional<std::vector<std::uint64_t>> seeds_override;
  bool quiet = false;
  bool timing = false;
};

std::filesystem::path output_root();

/// Executes one (config, seed) run and writes its trace CSV.
RunOutcome execute_run(const ExperimentConfig& cfg, std::uint64_t seed,
                       const std::filesystem::path& out_dir, bool timing);

int cmd_run(const std::filesystem::path& config_path, const CliOptions& opts);
int cmd_certify(const std::filesystem::path& config_path, const CliOptions& opts,
                std::optional<double> l_override,
                std::optional<double> m_override);
int cmd_antilip(double B, double E, const std::vector<double>& thetas,
                const CliOptions& opts);
int cmd_plotdata(const std::filesystem::path& trace_dir, const CliOptions& opts);

/// 17-significant-digit formatting used for every CSV number (round-trip safe).
std::string fmt_g17(double v);

}  // namespace mirrorprox::harness
