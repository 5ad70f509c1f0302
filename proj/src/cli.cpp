#include "corridor/cli.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "corridor/errors.hpp"
#include "corridor/gradcheck.hpp"
#include "corridor/objectives.hpp"
#include "corridor/optimizer.hpp"
#include "corridor/parallel.hpp"
#include "corridor/report.hpp"
#include "corridor/scenario.hpp"

namespace corridor {

std::vector<double> read_column(const std::string& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(line);
  }
  auto split = [](const std::string& s) {
    std::vector<std::string> cells;
    std::stringstream ss(s);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    return cells;
  };
  auto number = [&](const std::string& cell, std::size_t row) {
    try {
      std::size_t used = 0;
      const double v = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      return v;
    } catch (const std::exception&) {
      throw ValidationError(path + ": line " + std::to_string(row + 1) +
                            ": not a number: '" + cell + "'");
    }
  };

  std::vector<double> out;
  if (lines.empty()) return out;
  std::size_t col = 0;
  std::size_t first = 0;
  const auto header = split(lines[0]);
  if (header.size() > 1 || header[0] == column) {
    const auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end()) throw ValidationError(path + ": no column '" + column + "'");
    col = static_cast<std::size_t>(it - header.begin());
    first = 1;
  }
  for (std::size_t r = first; r < lines.size(); ++r) {
    const auto cells = split(lines[r]);
    if (col >= cells.size()) {
      throw ValidationError(path + ": line " + std::to_string(r + 1) + ": missing column");
    }
    out.push_back(number(cells[col], r));
  }
  return out;
}

namespace {

struct Common {
  std::string scenario;
  std::string algo;
  std::string emit = "csv";
  std::string out_dir;
};

Scenario load_with_algo(const Common& c) {
  Scenario s = c.scenario.empty() ? default_scenario() : load_scenario(c.scenario);
  if (!c.algo.empty()) {
    const auto a = parse_algorithm(c.algo);
    if (!a) throw ValidationError("--algo: unknown algorithm '" + c.algo + "'");
    s.optimizer.algorithm = *a;
    s.objective.kind = objective_kind(*a);
  }
  return s;
}

Emit parse_emit(const std::string& e) { return e == "json" ? Emit::kJson : Emit::kCsv; }

nlohmann::json summary_json(const RunReport& rep) {
  nlohmann::json j = report_json(rep);
  j.erase("stations");
  j.erase("trace");
  j.erase("wall_seconds");
  return j;
}

int run_optimize(const Common& c, std::optional<std::uint64_t> seed, int restarts,
                 bool progress, std::ostream& out, std::ostream& err) {
  Scenario s = load_with_algo(c);
  if (seed) {
    s.seed = *seed;
    s.optimizer.seed = *seed;
  }
  RunOptions opt;
  if (progress) {
    opt.progress = [&err](const ProgressEvent& e) {
      err << nlohmann::json{{"restart", e.restart},
                            {"outer", e.outer},
                            {"objective", e.objective},
                            {"tilt_iterations", e.tilt_iterations},
                            {"power_iterations", e.power_iterations}}
                 .dump()
          << std::endl;
    };
  }
  const auto t0 = std::chrono::steady_clock::now();
  const OptimizerRun run = run_with_restarts(s, restarts, opt);
  RunReport rep = build_report(s, run.tilts, run.powers, &run);
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  write_outputs(c.out_dir, rep, run.partition, s.build_samples(), parse_emit(c.emit));
  out << summary_json(rep).dump(2) << '\n';
  if (run.truncated_inner_loops > 0) {
    err << "warning: " << run.truncated_inner_loops
        << " inner loop(s) stopped at max_inner\n";
  }
  if (run.termination == Termination::kMaxOuter) {
    err << "warning: stopped at max_outer before the outer threshold was met\n";
  }
  return kExitOk;
}

struct FixedState {
  std::vector<double> tilts;
  std::vector<double> powers;
};

FixedState read_state(const Scenario& s, const std::string& tilts_path,
                      const std::string& powers_path) {
  FixedState st;
  st.tilts = tilts_path.empty() ? std::vector<double>(s.deployment.size(), s.optimizer.init_tilt)
                                : read_column(tilts_path, "tilt_deg");
  st.powers = powers_path.empty()
                  ? std::vector<double>(s.deployment.size(), s.optimizer.initial_power())
                  : read_column(powers_path, "power_dbm");
  if (st.tilts.size() != s.deployment.size() || st.powers.size() != s.deployment.size()) {
    throw ValidationError("expected " + std::to_string(s.deployment.size()) +
                          " tilts and powers, got " + std::to_string(st.tilts.size()) +
                          " and " + std::to_string(st.powers.size()));
  }
  for (double p : st.powers) {
    if (p > s.deployment.rho_max) throw ValidationError("power above rho_max");
  }
  return st;
}

int run_evaluate(const Common& c, const std::string& tilts_path,
                 const std::string& powers_path, std::ostream& out) {
  const Scenario s = load_with_algo(c);
  const FixedState st = read_state(s, tilts_path, powers_path);
  const SampleSet samples = s.build_samples();
  const Evaluator ev(samples, s.deployment);
  const Partition cells = ev.assign(st.tilts, st.powers);
  const double value =
      ev.evaluate(s.objective, cells, st.tilts, st.powers, kernels::kValue).value;
  RunReport rep = build_report(s, st.tilts, st.powers);
  rep.final_objective = value;
  rep.trace = {value};
  if (!c.out_dir.empty()) write_outputs(c.out_dir, rep, cells, samples, parse_emit(c.emit));
  nlohmann::json j = summary_json(rep);
  j["objective_kind"] = std::string(to_string(s.objective.kind));
  out << j.dump(2) << '\n';
  return kExitOk;
}

int run_grad_check(const Common& c, int trials, double tol, std::uint64_t seed,
                   std::ostream& out) {
  GradCheckOptions opt;
  opt.trials = trials;
  opt.rel_tol = tol;
  opt.seed = seed;
  const GradCheckResult res = c.scenario.empty()
                                  ? grad_check_random(opt)
                                  : grad_check_scenario(load_scenario(c.scenario), opt);
  out << "trials " << res.trials << ", components " << res.components << ", failures "
      << res.failures << '\n';
  if (!res.worst.empty()) out << "worst: " << res.worst << '\n';
  return res.passed() ? kExitOk : kExitCheckFailed;
}

int run_verify_partition(const Common& c, const std::string& tilts_path,
                         const std::string& powers_path, std::ostream& out) {
  const Scenario s = load_with_algo(c);
  const FixedState st = read_state(s, tilts_path, powers_path);
  const SampleSet samples = s.build_samples();
  const LinkTable table(samples, s.deployment);
  const kernels::State state{st.tilts, st.powers};
  const Partition cells = assign_best_rss(table, state);
  bool all = true;
  for (ObjectiveKind kind : {ObjectiveKind::kRss, ObjectiveKind::kSinr,
                             ObjectiveKind::kMaxProduct, ObjectiveKind::kSoftMaxMin}) {
    ObjectiveSpec spec = s.objective;
    spec.kind = kind;
    const bool ok = verify_partition_optimality(cells, table, state, spec);
    out << to_string(kind) << ": " << (ok ? "optimal" : "NOT optimal") << '\n';
    all = all && ok;
  }
  return all ? kExitOk : kExitCheckFailed;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tilt, power and cell optimization for ground users and UAV corridors",
               "corridor-opt"};
  app.require_subcommand(1);

  Common c;
  std::optional<std::uint64_t> seed;
  int restarts = 1;
  bool progress = false;
  std::string tilts_path, powers_path;
  int trials = 100;
  double tol = 1e-5;
  std::uint64_t check_seed = 1;

  auto* opt = app.add_subcommand("optimize", "run an optimization algorithm");
  opt->add_option("--scenario", c.scenario, "scenario JSON file")->required();
  opt->add_option("--algo", c.algo, "max-rss-vat | max-sinr-pa-vat | mp-pa-vat | smm-pa-vat");
  opt->add_option("--out", c.out_dir, "output directory")->required();
  opt->add_option("--seed", seed, "overrides the scenario seed");
  opt->add_option("--restarts", restarts, "best of K runs")->check(CLI::PositiveNumber);
  opt->add_option("--emit", c.emit, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  opt->add_flag("--progress", progress, "per-iteration JSON lines on stderr");

  auto* ev = app.add_subcommand("evaluate", "metrics of a fixed configuration");
  ev->add_option("--scenario", c.scenario, "scenario JSON file")->required();
  ev->add_option("--algo", c.algo, "selects the objective");
  ev->add_option("--tilts", tilts_path, "CSV with tilt_deg column, or one per line");
  ev->add_option("--powers", powers_path, "CSV with power_dbm column, or one per line");
  ev->add_option("--out", c.out_dir, "optional output directory");
  ev->add_option("--emit", c.emit, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* gc = app.add_subcommand("grad-check", "finite-difference gradient gate");
  gc->add_option("--scenario", c.scenario, "scenario file (random small cases if omitted)");
  gc->add_option("--trials", trials, "number of random states")->check(CLI::PositiveNumber);
  gc->add_option("--tol", tol, "relative tolerance")->check(CLI::PositiveNumber);
  gc->add_option("--seed", check_seed, "random seed");

  auto* vp = app.add_subcommand("verify-partition",
                                "exchange test of the best-RSS cells for all objectives");
  vp->add_option("--scenario", c.scenario, "scenario file (case study if omitted)");
  vp->add_option("--tilts", tilts_path, "tilts CSV");
  vp->add_option("--powers", powers_path, "powers CSV");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  configure_threads_from_env();
  try {
    if (*opt) return run_optimize(c, seed, restarts, progress, out, err);
    if (*ev) return run_evaluate(c, tilts_path, powers_path, out);
    if (*gc) return run_grad_check(c, trials, tol, check_seed, out);
    if (*vp) return run_verify_partition(c, tilts_path, powers_path, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const UnsupportedOperation& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return kExitValidation;
}

int cli_main(int argc, char** argv) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return cli_main(args, std::cout, std::cerr);
}

}  // namespace corridor
