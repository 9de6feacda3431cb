#include "harness.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

namespace mirrorprox::harness {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string fmt_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

const std::set<std::string> kKinds = {"smooth",          "smooth-separable",
                                      "eg2-subproblem",  "eg2-subproblem-standard",
                                      "bilinear",        "cgo"};
const std::set<std::string> kChecks = {"three-point", "certificates",
                                       "contraction", "lemma-mfmp"};

struct IniData {
  std::map<std::string, std::map<std::string, std::string>> sections;
};

IniData parse_ini(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  IniData ini;
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r\n");
    line = line.substr(first, last - first + 1);
    if (line.front() == '[') {
      if (line.back() != ']')
        throw std::invalid_argument("config: bad section at line " +
                                    std::to_string(lineno));
      section = line.substr(1, line.size() - 2);
      ini.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: expected key = value at line " +
                                  std::to_string(lineno));
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return (a == std::string::npos) ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config: empty key or value at line " +
                                  std::to_string(lineno));
    ini.sections[section][key] = value;
  }
  return ini;
}

double to_double(const std::string& s, const std::string& key) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (...) {
    throw std::invalid_argument("config: bad number for " + key);
  }
  if (pos != s.size())
    throw std::invalid_argument("config: trailing characters in " + key);
  return v;
}

int to_int(const std::string& s, const std::string& key) {
  const double v = to_double(s, key);
  if (v != std::floor(v))
    throw std::invalid_argument("config: expected integer for " + key);
  return static_cast<int>(v);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

}  // namespace

ExperimentConfig load_config(const fs::path& path) {
  const IniData ini = parse_ini(path);
  ExperimentConfig cfg;
  cfg.name = path.stem().string();

  const std::set<std::string> known_sections = {"instance", "algorithm", "run",
                                                "tolerances"};
  for (const auto& [sec, _] : ini.sections)
    if (!known_sections.count(sec))
      throw std::invalid_argument("config: unknown section [" + sec + "]");

  for (const auto& [sec, kvs] : ini.sections) {
    for (const auto& [key, value] : kvs) {
      if (sec == "instance") {
        if (key == "kind")
          cfg.kind = value;
        else if (key == "n")
          cfg.n = to_int(value, key);
        else
          throw std::invalid_argument("config: unknown key instance." + key);
      } else if (sec == "algorithm") {
        if (key == "method")
          cfg.method = value;
        else if (key == "K")
          cfg.K = to_int(value, key);
        else if (key == "prox_tol")
          cfg.prox_tol = to_double(value, key);
        else if (key == "tighten_constants")
          cfg.tighten_constants = (value == "true" || value == "1");
        else if (key == "z1_scale")
          cfg.z1_scale = to_double(value, key);
        else
          throw std::invalid_argument("config: unknown key algorithm." + key);
      } else if (sec == "run") {
        if (key == "seeds") {
          cfg.seeds.clear();
          for (const auto& tok : split_ws(value))
            cfg.seeds.push_back(static_cast<std::uint64_t>(to_int(tok, key)));
        } else if (key == "out")
          cfg.out = value;
        else if (key == "checks")
          cfg.checks = split_ws(value);
        else if (key == "gap_radius")
          cfg.gap_radius = to_double(value, key);
        else if (key == "gap_points")
          cfg.gap_points = to_int(value, key);
        else
          throw std::invalid_argument("config: unknown key run." + key);
      } else if (sec == "tolerances") {
        if (key == "certificate")
          cfg.certificate_tol = to_double(value, key);
        else if (key == "check_slack")
          cfg.check_slack = to_double(value, key);
        else
          throw std::invalid_argument("config: unknown key tolerances." + key);
      }
    }
  }

  if (!kKinds.count(cfg.kind))
    throw std::invalid_argument("config: unknown instance kind '" + cfg.kind + "'");
  if (cfg.method != "mfmp" && cfg.method != "mfmp-sm")
    throw std::invalid_argument("config: method must be mfmp or mfmp-sm");
  if (cfg.n < 1) throw std::invalid_argument("config: n must be positive");
  if (cfg.K < 1) throw std::invalid_argument("config: K must be positive");
  if (cfg.prox_tol <= 0.0)
    throw std::invalid_argument("config: prox_tol must be positive");
  if (cfg.seeds.empty()) throw std::invalid_argument("config: seeds is empty");
  for (const auto& c : cfg.checks)
    if (!kChecks.count(c))
      throw std::invalid_argument("config: unknown check '" + c + "'");
  return cfg;
}

std::filesystem::path output_root() {
  if (const char* env = std::getenv("MIRRORPROX_OUT_ROOT")) return env;
  return "out";
}

namespace {

void write_trace_csv(const fs::path& path, const RunTrace& trace, bool timing,
                     const std::vector<double>& iter_seconds) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "k,f_half_norm,f_next_norm,omega_ref,e_k,prox_res_half,prox_res_next";
  if (timing) out << ",wall_time_s";
  out << "\n";
  const auto cell = [](double v) {
    return std::isnan(v) ? std::string() : fmt_g17(v);
  };
  for (std::size_t i = 0; i < trace.records.size(); ++i) {
    const IterRecord& r = trace.records[i];
    out << r.k << ',' << fmt_g17(r.f_half_norm) << ',' << fmt_g17(r.f_next_norm)
        << ',' << cell(r.omega_to_ref) << ',' << cell(r.e_k) << ','
        << fmt_g17(r.prox_res_half) << ',' << fmt_g17(r.prox_res_next);
    if (timing) out << ',' << fmt_g17(i < iter_seconds.size() ? iter_seconds[i] : 0.0);
    out << "\n";
  }
}

}  // namespace

RunOutcome execute_run(const ExperimentConfig& cfg, std::uint64_t seed,
                       const fs::path& out_dir, bool timing) {
  const GeometryContext ctx;
  ProblemInstance inst = random_instance(cfg.kind, cfg.n, seed);
  const int d = inst.field_f.dim;

  RunOutcome oc;
  oc.seed = seed;

  SampleBox box{d, -inst.box_halfwidth, inst.box_halfwidth,
                derive_seed("certify", cfg.n, seed)};
  if (cfg.tighten_constants) {
    const auto [lt, mt] = tighten_constants(inst.field_f, inst.field_h, box, 200);
    inst.L = lt;
    inst.m = mt;
  }
  oc.L_used = inst.L;
  oc.m_used = inst.m;

  RunConfig rc;
  rc.L = inst.L;
  rc.m = inst.m;
  rc.K = cfg.K;
  rc.prox_tol = cfg.prox_tol;
  Rng z1_rng(derive_seed("z1", cfg.n, seed));
  rc.z_1 = cfg.z1_scale * z1_rng.normal_vec(d);

  const bool want_ref =
      std::count(cfg.checks.begin(), cfg.checks.end(), "contraction") > 0 ||
      cfg.method == "mfmp-sm";
  if (want_ref) {
    if (inst.z_star.has_value())
      rc.z_star = inst.z_star;
    else if (auto zs = solve_vi_newton(inst.field_f, Vec::Zero(d)))
      rc.z_star = zs;
  }

  std::vector<double> iter_seconds;
  const auto t0 = std::chrono::steady_clock::now();
  const RunTrace trace =
      (cfg.method == "mfmp-sm")
          ? run_mfmp_sm(inst.field_f, inst.field_h, rc, &ctx)
          : run_mfmp(inst.field_f, inst.field_h, rc, &ctx);
  const auto t1 = std::chrono::steady_clock::now();
  if (timing && !trace.records.empty()) {
    const double per =
        std::chrono::duration<double>(t1 - t0).count() / trace.records.size();
    iter_seconds.assign(trace.records.size(), per);
  }

  oc.diverged = trace.diverged;
  oc.prox_failed = trace.prox_failed;
  oc.iterations = static_cast<int>(trace.records.size());
  oc.final_f_norm = trace.records.empty()
                        ? eval_field(inst.field_f, rc.z_1).norm()
                        : trace.records.back().f_next_norm;

  std::vector<Vec> extra;
  if (rc.z_star) extra.push_back(*rc.z_star);
  const auto cmp = comparison_points(rc.z_1, cfg.gap_radius, cfg.gap_points, extra);
  oc.gap = gap_estimate(trace.z_out, inst.field_f, cmp);

  for (const std::string& check : cfg.checks) {
    if (check == "certificates") {
      const auto rs = rel_smooth_certificate(inst.field_f, inst.field_h, inst.L,
                                             box, 200, cfg.certificate_tol);
      const auto rm = rel_strong_mono_certificate(inst.field_f, inst.field_h,
                                                  inst.m, box, 200,
                                                  cfg.certificate_tol);
      oc.check_values["rel_smooth_margin"] = rs.worst_margin;
      oc.check_values["rel_strong_mono_margin"] = rm.worst_margin;
      oc.check_passed["certificates"] = rs.holds && rm.holds;
    } else if (check == "three-point") {
      Rng rng(derive_seed("threept", cfg.n, seed));
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        const Vec a = rng.uniform_vec(d, -2.0, 2.0);
        const Vec b = rng.uniform_vec(d, -2.0, 2.0);
        const Vec c = rng.uniform_vec(d, -2.0, 2.0);
        worst = std::max(worst, three_point_residual(ctx, inst.field_h, a, b, c));
      }
      oc.check_values["three_point_residual"] = worst;
      oc.check_passed["three-point"] = worst <= 1e-10;
    } else if (check == "contraction" && cfg.method == "mfmp-sm" &&
               rc.z_star.has_value() && !trace.records.empty()) {
      const auto rep = contraction_check(ctx, trace, inst.field_f, inst.field_h,
                                         inst.L, inst.m, *rc.z_star);
      oc.check_values["contraction_iter_slack"] = rep.worst_iteration_slack;
      oc.check_values["contraction_cumulative_slack"] = rep.worst_cumulative_slack;
      oc.check_values["contraction_as_written_slack"] = rep.as_written_slack;
      oc.check_passed["contraction"] =
          rep.worst_iteration_slack >= -cfg.check_slack &&
          rep.worst_cumulative_slack >= -cfg.check_slack;
    } else if (check == "lemma-mfmp" && !trace.records.empty()) {
      Rng rng(derive_seed("probe", cfg.n, seed));
      double worst = std::numeric_limits<double>::infinity();
      for (const IterRecord& r : trace.records) {
        for (int i = 0; i < 5; ++i) {
          const Vec probe = rng.uniform_vec(d, -2.0, 2.0);
          worst = std::min(
              worst, lemma_mfmp_slack(r, inst.field_f, inst.field_h, inst.L, probe));
        }
      }
      oc.check_values["lemma_mfmp_slack"] = worst;
      oc.check_passed["lemma-mfmp"] = worst >= -cfg.check_slack;
    }
  }

  oc.csv_path = out_dir / (cfg.name + "_seed" + std::to_string(seed) + ".csv");
  write_trace_csv(oc.csv_path, trace, timing, iter_seconds);
  return oc;
}

int cmd_run(const fs::path& config_path, const CliOptions& opts) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  if (opts.seeds_override) cfg.seeds = *opts.seeds_override;

  const fs::path out_dir =
      opts.out_override.value_or(output_root() / fs::path(cfg.out));
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir << "\n";
    return kExitBadConfig;
  }

  // one task per seed; isolated outputs, deterministic aggregation order
  std::vector<std::future<RunOutcome>> futures;
  futures.reserve(cfg.seeds.size());
  for (const std::uint64_t seed : cfg.seeds)
    futures.push_back(std::async(std::launch::async, [&cfg, seed, &out_dir, &opts] {
      return execute_run(cfg, seed, out_dir, opts.timing);
    }));

  json summary;
  summary["schema_version"] = 1;
  summary["config"] = {{"name", cfg.name},       {"kind", cfg.kind},
                       {"n", cfg.n},             {"method", cfg.method},
                       {"K", cfg.K},             {"prox_tol", cfg.prox_tol},
                       {"tighten_constants", cfg.tighten_constants},
                       {"z1_scale", cfg.z1_scale}};
  json runs = json::array();

  bool any_diverged = false, any_prox_failed = false;
  for (auto& fut : futures) {
    RunOutcome oc;
    try {
      oc = fut.get();
    } catch (const std::exception& e) {
      std::cerr << "error: run failed: " << e.what() << "\n";
      return kExitProxFailure;
    }
    any_diverged |= oc.diverged;
    any_prox_failed |= oc.prox_failed;
    json jr = {{"seed", oc.seed},
               {"final_f_norm", oc.final_f_norm},
               {"gap_estimate", oc.gap},
               {"iterations", oc.iterations},
               {"diverged", oc.diverged},
               {"prox_failed", oc.prox_failed},
               {"L", oc.L_used},
               {"m", oc.m_used},
               {"trace", oc.csv_path.filename().string()}};
    for (const auto& [k, v] : oc.check_values) jr["checks"][k] = v;
    for (const auto& [k, v] : oc.check_passed) jr["checks_passed"][k] = v;
    runs.push_back(jr);
    if (!opts.quiet)
      std::cout << cfg.name << " seed=" << oc.seed
                << " final |F|=" << fmt_g17(oc.final_f_norm)
                << (oc.diverged ? " DIVERGED" : "")
                << (oc.prox_failed ? " PROX-FAILED" : "") << "\n";
  }
  summary["runs"] = runs;

  std::ofstream js(out_dir / "summary.json", std::ios::binary);
  js << summary.dump(2) << "\n";

  if (any_prox_failed) return kExitProxFailure;
  if (any_diverged) return kExitDiverged;
  return kExitOk;
}

int cmd_certify(const fs::path& config_path, const CliOptions& opts,
                std::optional<double> l_override,
                std::optional<double> m_override) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadConfig;
  }
  const std::uint64_t seed = cfg.seeds.front();
  const GeometryContext ctx;
  const ProblemInstance inst = random_instance(cfg.kind, cfg.n, seed);
  const int d = inst.field_f.dim;
  const double L = l_override.value_or(inst.L);
  const double m = m_override.value_or(inst.m);

  const SampleBox box{d, -inst.box_halfwidth, inst.box_halfwidth,
                      derive_seed("certify", cfg.n, seed)};
  const auto rs =
      rel_smooth_certificate(inst.field_f, inst.field_h, L, box, 200,
                             cfg.certificate_tol);
  const auto rm =
      rel_strong_mono_certificate(inst.field_f, inst.field_h, m, box, 200,
                                  cfg.certificate_tol);
  const double delta_f = conservativeness_estimate(ctx, inst.field_f, box, 100);
  const double delta_h = conservativeness_estimate(ctx, inst.field_h, box, 100);
  const double delta_co = co_conservativeness_estimate(
      ctx, field_scale(L, inst.field_h), inst.field_f, box, 100);

  const auto report_line = [&](const std::string& name,
                               const CertificateReport& rep) {
    if (opts.quiet) return;
    std::cout << name << ": " << (rep.holds ? "holds" : "FAILS")
              << " worst_margin=" << fmt_g17(rep.worst_margin);
    if (!rep.holds && rep.worst_point.size() > 0) {
      std::cout << " witness=[";
      for (int i = 0; i < rep.worst_point.size(); ++i)
        std::cout << (i ? " " : "") << fmt_g17(rep.worst_point[i]);
      std::cout << "]";
    }
    std::cout << "\n";
  };
  if (!opts.quiet)
    std::cout << "instance " << inst.label << "  L=" << fmt_g17(L)
              << " m=" << fmt_g17(m) << "\n";
  report_line("rel-smooth", rs);
  report_line("rel-strong-mono", rm);
  if (!opts.quiet) {
    std::cout << "delta(F)  = " << fmt_g17(delta_f) << "\n";
    std::cout << "delta(H)  = " << fmt_g17(delta_h) << "\n";
    std::cout << "delta(F vs L*H) = " << fmt_g17(delta_co) << "\n";
  }

  const fs::path out_dir =
      opts.out_override.value_or(output_root() / fs::path(cfg.out));
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    std::cerr << "error: cannot create " << out_dir << "\n";
    return kExitBadConfig;
  }
  json rep;
  rep["schema_version"] = 1;
  rep["instance"] = inst.label;
  rep["L"] = L;
  rep["m"] = m;
  rep["rel_smooth"] = {{"holds", rs.holds}, {"worst_margin", rs.worst_margin}};
  rep["rel_strong_mono"] = {{"holds", rm.holds},
                            {"worst_margin", rm.worst_margin}};
  rep["delta_f"] = delta_f;
  rep["delta_h"] = delta_h;
  rep["delta_co_f_vs_lh"] = delta_co;
  std::ofstream js(out_dir / (cfg.name + "_certify.json"), std::ios::binary);
  js << rep.dump(2) << "\n";
  return kExitOk;
}

int cmd_antilip(double B, double E, const std::vector<double>& thetas,
                const CliOptions& opts) {
  for (const double th : thetas)
    if (!(th > 0.0)) {
      std::cerr << "error: theta values must be positive\n";
      return kExitBadConfig;
    }
  const GeometryContext ctx;
  // two-dimensional obstruction instance: F = (4 E^4 x^3 + B y, 4 E^4 y^3 - B x),
  // H = (x^3, y^3); triangle a=(t,t), b=(0,0), c=(0,t).
  const double e4 = E * E * E * E;
  const VectorField f(2, [B, e4](const Vec& z) {
    Vec out(2);
    out[0] = 4.0 * e4 * z[0] * z[0] * z[0] + B * z[1];
    out[1] = 4.0 * e4 * z[1] * z[1] * z[1] - B * z[0];
    return out;
  });
  const VectorField h(2, [](const Vec& z) {
    Vec out(2);
    out[0] = z[0] * z[0] * z[0];
    out[1] = z[1] * z[1] * z[1];
    return out;
  });

  std::ostringstream table;
  table << "theta,numeric_ratio,d_theta,rel_diff\n";
  if (!opts.quiet)
    std::cout << "theta         numeric_ratio        d(theta)             rel_diff\n";
  for (const double th : thetas) {
    Vec a(2), b(2), c(2);
    a << th, th;
    b << 0.0, 0.0;
    c << 0.0, th;
    const double numeric = anti_lipschitz_ratio(ctx, f, h, TrianglePath(a, b, c));
    const double closed = d_theta(B, E, th);
    const double denom = std::max(1.0, std::abs(closed));
    const double rel = std::abs(numeric - closed) / denom;
    table << fmt_g17(th) << ',' << fmt_g17(numeric) << ',' << fmt_g17(closed)
          << ',' << fmt_g17(rel) << "\n";
    if (!opts.quiet)
      std::printf("%-13g %-20.12g %-20.12g %.3e\n", th, numeric, closed, rel);
  }
  if (opts.out_override) {
    std::error_code ec;
    fs::create_directories(opts.out_override->parent_path(), ec);
    std::ofstream out(*opts.out_override, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot write " << *opts.out_override << "\n";
      return kExitBadConfig;
    }
    out << table.str();
  }
  return kExitOk;
}

int cmd_plotdata(const fs::path& trace_dir, const CliOptions& opts) {
  if (!fs::is_directory(trace_dir)) {
    std::cerr << "error: not a directory: " << trace_dir << "\n";
    return kExitBadConfig;
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(trace_dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv" &&
        entry.path().filename().string().find("_seed") != std::string::npos)
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "error: no trace CSVs in " << trace_dir << "\n";
    return kExitBadConfig;
  }

  std::ostringstream out;
  out << "config,seed,k,metric,value\n";
  const std::vector<std::string> metrics = {"f_half_norm",   "f_next_norm",
                                            "omega_ref",     "e_k",
                                            "prox_res_half", "prox_res_next"};
  for (const fs::path& file : files) {
    const std::string stem = file.stem().string();
    const auto pos = stem.rfind("_seed");
    const std::string config = stem.substr(0, pos);
    const std::string seed = stem.substr(pos + 5);

    std::ifstream in(file);
    std::string header;
    if (!std::getline(in, header) ||
        header.rfind("k,f_half_norm,f_next_norm,omega_ref,e_k", 0) != 0) {
      std::cerr << "error: corrupt trace " << file << "\n";
      return kExitBadConfig;
    }
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> cells;
      std::stringstream ss(line);
      std::string cell;
      while (std::getline(ss, cell, ',')) cells.push_back(cell);
      if (cells.size() < 7) {
        std::cerr << "error: corrupt row in " << file << "\n";
        return kExitBadConfig;
      }
      const std::string& k = cells[0];
      for (std::size_t mi = 0; mi < metrics.size(); ++mi) {
        const std::string& v = cells[mi + 1];
        if (v.empty()) continue;
        out << config << ',' << seed << ',' << k << ',' << metrics[mi] << ','
            << v << "\n";
        if (metrics[mi] == "f_next_norm") {
          const double val = std::strtod(v.c_str(), nullptr);
          if (val > 0.0)
            out << config << ',' << seed << ',' << k << ",log10_f_next,"
                << fmt_g17(std::log10(val)) << "\n";
        }
      }
    }
  }

  const fs::path out_path =
      opts.out_override.value_or(trace_dir / "plotdata.csv");
  std::ofstream of(out_path, std::ios::binary);
  if (!of) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitBadConfig;
  }
  of << out.str();
  if (!opts.quiet) std::cout << "wrote " << out_path.string() << "\n";
  return kExitOk;
}

}  // namespace mirrorprox::harness
