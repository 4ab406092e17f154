// rotamime - explore interval maps that mimic rational circle rotations.
//
// Subcommands: check, orbit, scan, windows, birth, return-map, farey, basin.
// Exit codes: 0 success (check: member), 1 check non-member, 2 usage,
// 3 bracket error, 4 numeric error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rotamime/json_io.hpp"
#include "rotamime/svg.hpp"

namespace {

using namespace rotamime;

int default_jobs() {
  if (const char* env = std::getenv("ROTAMIME_JOBS")) {
    const int j = std::atoi(env);
    if (j >= 1) return j;
  }
  return 1;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw Error("short write to " + path);
}

struct SpecArgs {
  long long k = 0;
  long long n = 0;
  double a = 0.0;
  std::string kernel = "eos";

  MapSpec spec() const { return make_spec(parse_kernel(kernel), a, k, n); }
  Rational offset() const { return make_rational(k, n); }
};

void add_fraction_flags(CLI::App* cmd, SpecArgs& args) {
  cmd->add_option("--k", args.k, "numerator of b = k/n")->required();
  cmd->add_option("--n", args.n, "denominator of b = k/n")->required();
  cmd->add_option("--kernel", args.kernel, "kernel family (eos|arctan|erf)")
      ->default_val("eos");
}

void add_spec_flags(CLI::App* cmd, SpecArgs& args) {
  add_fraction_flags(cmd, args);
  cmd->add_option("--a", args.a, "steepness")->required();
}

int run(int argc, char** argv) {
  CLI::App app{"interval maps mimicking circle rotations"};
  app.require_subcommand(1);

  // ---- check ----
  SpecArgs check_args;
  bool check_json = false;
  std::string check_out;
  CLI::App* cmd_check = app.add_subcommand("check", "membership test with numeric margins");
  add_spec_flags(cmd_check, check_args);
  cmd_check->add_flag("--json", check_json, "print the full JSON report");
  cmd_check->add_option("--out", check_out, "write the JSON report to this file");

  // ---- orbit ----
  SpecArgs orbit_args;
  std::string orbit_seed = "plus";
  std::optional<double> orbit_custom_seed;
  OrbitOptions orbit_opts;
  bool orbit_certify = false;
  std::string orbit_out;
  CLI::App* cmd_orbit = app.add_subcommand("orbit", "find and refine the attracting orbit");
  add_spec_flags(cmd_orbit, orbit_args);
  cmd_orbit->add_option("--seed", orbit_seed, "seed critical point (plus|minus)")
      ->default_val("plus");
  cmd_orbit->add_option("--seed-at", orbit_custom_seed, "custom seed value");
  cmd_orbit->add_option("--transient", orbit_opts.transient, "transient iterations");
  cmd_orbit->add_option("--max-period", orbit_opts.max_period, "recurrence search horizon");
  cmd_orbit->add_option("--tol", orbit_opts.recurrence_tol, "recurrence tolerance");
  cmd_orbit->add_option("--refine-tol", orbit_opts.refine_tol, "refinement tolerance");
  cmd_orbit->add_flag("--certify", orbit_certify, "also run the orbit certificate");
  cmd_orbit->add_option("--out", orbit_out, "write JSON here instead of stdout");

  // ---- scan / windows ----
  SpecArgs scan_args;
  double scan_from = 0.0, scan_to = 0.0, scan_step = 0.1;
  ScanOptions scan_opts;
  std::string scan_out = "scan";
  bool scan_svg_flag = false;
  bool scan_hybrid = false;
  CLI::App* cmd_scan = app.add_subcommand("scan", "bifurcation sweep to CSV (and SVG)");
  add_fraction_flags(cmd_scan, scan_args);
  cmd_scan->add_option("--a-from", scan_from, "sweep start")->required();
  cmd_scan->add_option("--a-to", scan_to, "sweep end")->required();
  cmd_scan->add_option("--step", scan_step, "grid step")->required();
  cmd_scan->add_option("--transient", scan_opts.transient, "transient iterations");
  cmd_scan->add_option("--samples", scan_opts.n_samples, "attractor samples per seed");
  cmd_scan->add_option("--max-period", scan_opts.max_period, "recurrence search horizon");
  cmd_scan->add_option("--jobs", scan_opts.jobs, "worker threads")->default_val(default_jobs());
  cmd_scan->add_flag("--hybrid", scan_hybrid, "sweep the hybrid map");
  cmd_scan->add_flag("--svg", scan_svg_flag, "also write <out>.svg");
  cmd_scan->add_option("--out", scan_out, "output stem")->default_val("scan");

  SpecArgs win_args;
  double win_from = 0.0, win_to = 0.0, win_step = 0.01;
  ScanOptions win_opts;
  std::string win_out;
  CLI::App* cmd_windows = app.add_subcommand("windows", "detect periodic windows in a sweep");
  add_fraction_flags(cmd_windows, win_args);
  cmd_windows->add_option("--a-from", win_from, "sweep start")->required();
  cmd_windows->add_option("--a-to", win_to, "sweep end")->required();
  cmd_windows->add_option("--step", win_step, "grid step")->required();
  cmd_windows->add_option("--transient", win_opts.transient, "transient iterations");
  cmd_windows->add_option("--max-period", win_opts.max_period, "recurrence search horizon");
  cmd_windows->add_option("--jobs", win_opts.jobs, "worker threads")->default_val(default_jobs());
  cmd_windows->add_option("--out", win_out, "output stem (writes <out>.windows.json)");

  // ---- birth ----
  SpecArgs birth_args;
  int birth_target = 0;
  double birth_lo = 0.0, birth_hi = 0.0;
  OrbitOptions birth_opts;
  std::string birth_out;
  CLI::App* cmd_birth = app.add_subcommand("birth", "bisect the birth of a target period");
  add_fraction_flags(cmd_birth, birth_args);
  cmd_birth->add_option("--target", birth_target, "target period")->required();
  cmd_birth->add_option("--a-lo", birth_lo, "bracket start")->required();
  cmd_birth->add_option("--a-hi", birth_hi, "bracket end")->required();
  cmd_birth->add_option("--transient", birth_opts.transient, "transient iterations");
  cmd_birth->add_option("--out", birth_out, "write {birth_a} JSON here");

  // ---- return-map ----
  SpecArgs ret_args;
  int ret_j = 1;
  int ret_samples = 512;
  std::string ret_out;
  bool ret_svg = false;
  CLI::App* cmd_return = app.add_subcommand("return-map", "hybrid return-map data on a cell");
  add_spec_flags(cmd_return, ret_args);
  cmd_return->add_option("--j", ret_j, "cell index (0 or 1)")->required();
  cmd_return->add_option("--graph-samples", ret_samples, "graph sample count");
  cmd_return->add_option("--out", ret_out, "output stem (writes <out>.return<j>.json)");
  cmd_return->add_flag("--svg", ret_svg, "also write <out>.return<j>.svg");

  // ---- farey ----
  SpecArgs farey_args;
  CLI::App* cmd_farey = app.add_subcommand("farey", "Farey parents of k/n");
  add_fraction_flags(cmd_farey, farey_args);

  // ---- basin ----
  SpecArgs basin_args;
  long basin_samples = 10000;
  double basin_lo = -5.0, basin_hi = 5.0;
  BasinOptions basin_opts;
  std::string basin_seed = "plus";
  bool basin_json = false;
  CLI::App* cmd_basin = app.add_subcommand("basin", "stratified basin-of-attraction estimate");
  add_spec_flags(cmd_basin, basin_args);
  cmd_basin->add_option("--samples", basin_samples, "sample count");
  cmd_basin->add_option("--lo", basin_lo, "sample interval start");
  cmd_basin->add_option("--hi", basin_hi, "sample interval end");
  cmd_basin->add_option("--iters", basin_opts.max_iters, "iteration budget per sample");
  cmd_basin->add_option("--tol", basin_opts.tol, "capture tolerance");
  cmd_basin->add_option("--seed", basin_seed, "orbit seed (plus|minus)")->default_val("plus");
  cmd_basin->add_option("--jobs", basin_opts.jobs, "worker threads")->default_val(default_jobs());
  cmd_basin->add_flag("--json", basin_json, "print JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (cmd_check->parsed()) {
    const ConditionReport report = check_membership(check_args.spec());
    const nlohmann::json j = to_json(report);
    if (!check_out.empty()) write_file(check_out, j.dump(2) + "\n");
    if (check_json) {
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "kernel=" << check_args.kernel << " a=" << dec17(check_args.a)
                << " b=" << check_args.k << "/" << check_args.n << "\n";
      for (const ConditionCheck& c : report.checks)
        std::cout << c.id << (c.passed ? " pass" : " FAIL") << " margin=" << dec17(c.margin)
                  << "\n";
      std::cout << "epsilon=" << dec17(report.epsilon) << "\n";
      std::cout << "member=" << (report.member ? "true" : "false") << "\n";
    }
    return report.member ? 0 : 1;
  }

  if (cmd_orbit->parsed()) {
    const MapSpec spec = orbit_args.spec();
    double seed;
    if (orbit_custom_seed)
      seed = *orbit_custom_seed;
    else if (orbit_seed == "plus")
      seed = seed_point(spec, SeedKind::Plus);
    else if (orbit_seed == "minus")
      seed = seed_point(spec, SeedKind::Minus);
    else
      throw DomainError("--seed must be plus or minus");
    const PeriodicOrbit orbit = find_attracting_orbit(spec, seed, orbit_opts);
    nlohmann::json j{{"spec", to_json(spec)}, {"orbit", to_json(orbit)}};
    if (orbit_certify) j["certificate"] = to_json(orbit_certificate(spec));
    if (!orbit_out.empty())
      write_file(orbit_out, j.dump(2) + "\n");
    else
      std::cout << j.dump(2) << "\n";
    return 0;
  }

  if (cmd_scan->parsed()) {
    scan_opts.use_hybrid = scan_hybrid;
    const Rational offset = scan_args.offset();
    const KernelTag kernel = parse_kernel(scan_args.kernel);
    const auto records = scan(offset, kernel, Interval{scan_from, scan_to}, scan_step, scan_opts);
    write_file(scan_out + ".csv", scan_to_csv(records));
    std::cout << "wrote " << scan_out << ".csv (" << records.size() << " records)\n";
    if (scan_svg_flag) {
      write_file(scan_out + ".svg", scan_svg(records, offset, kernel));
      std::cout << "wrote " << scan_out << ".svg\n";
    }
    return 0;
  }

  if (cmd_windows->parsed()) {
    const Rational offset = win_args.offset();
    const KernelTag kernel = parse_kernel(win_args.kernel);
    const auto records = scan(offset, kernel, Interval{win_from, win_to}, win_step, win_opts);
    const auto windows = detect_windows(records, offset, kernel);
    const nlohmann::json j = to_json(windows);
    if (!win_out.empty()) {
      write_file(win_out + ".windows.json", j.dump(2) + "\n");
      std::cout << "wrote " << win_out << ".windows.json (" << windows.size() << " windows)\n";
    } else {
      std::cout << j.dump(2) << "\n";
    }
    return 0;
  }

  if (cmd_birth->parsed()) {
    const double a = birth_parameter(birth_args.offset(), parse_kernel(birth_args.kernel),
                                     birth_target, Interval{birth_lo, birth_hi}, birth_opts);
    std::cout << dec17(a) << "\n";
    if (!birth_out.empty())
      write_file(birth_out, nlohmann::json{{"birth_a", dec17(a)}}.dump(2) + "\n");
    return 0;
  }

  if (cmd_return->parsed()) {
    const Rational offset = ret_args.offset();
    const KernelTag kernel = parse_kernel(ret_args.kernel);
    const ReturnMapData data = return_map(offset, kernel, ret_args.a, ret_j, ret_samples);
    const nlohmann::json j = to_json(data);
    if (!ret_out.empty()) {
      const std::string stem = ret_out + ".return" + std::to_string(ret_j);
      write_file(stem + ".json", j.dump(2) + "\n");
      std::cout << "wrote " << stem << ".json\n";
      if (ret_svg) {
        write_file(stem + ".svg", return_map_svg(data, offset, kernel, ret_args.a));
        std::cout << "wrote " << stem << ".svg\n";
      }
    } else {
      std::cout << j.dump(2) << "\n";
    }
    return 0;
  }

  if (cmd_farey->parsed()) {
    const auto [small, large] = farey_parents(farey_args.offset());
    std::cout << "parents: " << to_string(small) << ", " << to_string(large)
              << "; larger-den: " << to_string(large) << "\n";
    return 0;
  }

  if (cmd_basin->parsed()) {
    const MapSpec spec = basin_args.spec();
    const SeedKind sk = basin_seed == "minus" ? SeedKind::Minus : SeedKind::Plus;
    const PeriodicOrbit orbit = find_attracting_orbit(spec, seed_point(spec, sk));
    const double fraction =
        basin_fraction(spec, orbit, basin_samples, Interval{basin_lo, basin_hi}, basin_opts);
    if (basin_json) {
      std::cout << nlohmann::json{{"fraction", dec17(fraction)},
                                  {"samples", basin_samples},
                                  {"period", orbit.period}}
                       .dump(2)
                << "\n";
    } else {
      std::cout << "period=" << orbit.period << " fraction=" << dec17(fraction) << "\n";
    }
    return 0;
  }

  return 0;
}

} // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BracketError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
