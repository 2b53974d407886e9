#include "qst/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>

#include "qst/chain.hpp"
#include "qst/dynamics.hpp"
#include "qst/effective.hpp"
#include "qst/errors.hpp"
#include "qst/experiments.hpp"
#include "qst/format.hpp"
#include "qst/random.hpp"
#include "qst/spectral.hpp"
#include "qst/version.hpp"

namespace qst::cli {

namespace {

struct PatternOptions {
  std::vector<double> pattern;
  std::string pattern_file;
  int uniform_n = 0;
  int staggered_n = 0;
  double b = 0.5;
  std::string phase = "weak";
  int random_n = 0;
  double width = 0.5;
  std::uint64_t seed = 1;
};

void add_pattern_options(CLI::App* cmd, PatternOptions& po) {
  cmd->add_option("--pattern", po.pattern, "explicit couplings J_1,...,J_{N-1}")
      ->delimiter(',');
  cmd->add_option("--pattern-file", po.pattern_file, "pattern CSV file");
  cmd->add_option("--uniform", po.uniform_n, "uniform channel with N sites");
  cmd->add_option("--staggered", po.staggered_n, "staggered channel with N sites");
  cmd->add_option("--b", po.b, "staggered weak/strong ratio in (0,1]")
      ->capture_default_str();
  cmd->add_option("--phase", po.phase, "staggered phase: weak|strong")
      ->check(CLI::IsMember({"weak", "strong"}))
      ->capture_default_str();
  cmd->add_option("--random", po.random_n, "random paired channel with N sites");
  cmd->add_option("--w", po.width, "disorder width W in [0,1)")->capture_default_str();
  cmd->add_option("--seed", po.seed, "PRNG seed")->capture_default_str();
}

struct ResolvedPattern {
  CouplingPattern pattern;
  std::string id;
  std::string echo;
};

ResolvedPattern resolve_pattern(const PatternOptions& po) {
  const int sources = static_cast<int>(!po.pattern.empty()) +
                      static_cast<int>(!po.pattern_file.empty()) +
                      static_cast<int>(po.uniform_n != 0) +
                      static_cast<int>(po.staggered_n != 0) +
                      static_cast<int>(po.random_n != 0);
  if (sources != 1) {
    throw ValidationError(
        "exactly one pattern source required: --pattern, --pattern-file, --uniform, "
        "--staggered or --random");
  }
  if (!po.pattern.empty()) {
    CouplingPattern pattern(po.pattern);
    return {pattern, "pattern_n" + std::to_string(pattern.sites()),
            "--pattern " + join_round_trip(po.pattern)};
  }
  if (!po.pattern_file.empty()) {
    // Echo the materialized couplings so the config line round-trips
    // without the file.
    CouplingPattern pattern = read_pattern_csv(po.pattern_file);
    return {pattern, "pattern_n" + std::to_string(pattern.sites()),
            "--pattern " + join_round_trip(pattern.couplings())};
  }
  if (po.uniform_n != 0) {
    return {CouplingPattern::uniform(po.uniform_n), "uniform_n" + std::to_string(po.uniform_n),
            "--uniform " + std::to_string(po.uniform_n)};
  }
  if (po.staggered_n != 0) {
    const auto phase = (po.phase == "weak") ? StaggerPhase::WeakFirst : StaggerPhase::StrongFirst;
    return {CouplingPattern::staggered(po.staggered_n, po.b, phase),
            "staggered_n" + std::to_string(po.staggered_n) + "_b" + round_trip(po.b) + "_" +
                po.phase,
            "--staggered " + std::to_string(po.staggered_n) + " --b " + round_trip(po.b) +
                " --phase " + po.phase};
  }
  return {CouplingPattern::random_paired(po.random_n, po.width, po.seed),
          "random_n" + std::to_string(po.random_n) + "_w" + round_trip(po.width) + "_s" +
              std::to_string(po.seed),
          "--random " + std::to_string(po.random_n) + " --w " + round_trip(po.width) +
              " --seed " + std::to_string(po.seed)};
}

struct EndOptions {
  double a = 0.01;
  double a_s = 0.0;
  double a_r = 0.0;
  double xi = 0.0;
  CLI::Option* opt_a = nullptr;
  CLI::Option* opt_a_s = nullptr;
  CLI::Option* opt_a_r = nullptr;
  CLI::Option* opt_xi = nullptr;
};

void add_end_options(CLI::App* cmd, EndOptions& eo) {
  eo.opt_a = cmd->add_option("--a", eo.a, "symmetric end coupling a_S = a_R")
                 ->capture_default_str();
  eo.opt_a_s = cmd->add_option("--a-s", eo.a_s, "sender end coupling");
  eo.opt_a_r = cmd->add_option("--a-r", eo.a_r, "receiver end coupling");
  eo.opt_xi = cmd->add_option("--xi", eo.xi,
                              "equal-time drive: a_S = a_R = xi / sqrt(|Lambda_N|)");
}

std::pair<EndCouplings, std::string> resolve_ends(const EndOptions& eo,
                                                  const CouplingPattern& pattern) {
  const bool has_a = eo.opt_a->count() > 0;
  const bool has_pair = eo.opt_a_s->count() > 0 || eo.opt_a_r->count() > 0;
  const bool has_xi = eo.opt_xi->count() > 0;
  if (static_cast<int>(has_a) + static_cast<int>(has_pair) + static_cast<int>(has_xi) > 1) {
    throw ValidationError("choose one of --a, --a-s/--a-r, or --xi");
  }
  if (has_xi) {
    return {equal_time_end_couplings(pattern, eo.xi), "--xi " + round_trip(eo.xi)};
  }
  if (has_pair) {
    if (eo.opt_a_s->count() == 0 || eo.opt_a_r->count() == 0) {
      throw ValidationError("--a-s and --a-r must be given together");
    }
    return {EndCouplings(eo.a_s, eo.a_r),
            "--a-s " + round_trip(eo.a_s) + " --a-r " + round_trip(eo.a_r)};
  }
  return {EndCouplings::symmetric(eo.a), "--a " + round_trip(eo.a)};
}

void print_config(std::ostream& out, const std::string& subcommand, const std::string& echo) {
  out << "# config: " << subcommand;
  if (!echo.empty()) out << ' ' << echo;
  out << '\n';
}

double max_relative_deviation(const std::vector<double>& values) {
  double max_abs = 0.0;
  for (double v : values) max_abs = std::max(max_abs, std::abs(v));
  double max_diff = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      max_diff = std::max(max_diff, std::abs(values[i] - values[j]));
    }
  }
  return (max_abs > 0.0) ? max_diff / max_abs : max_diff;
}

void write_text_file(const std::string& text, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw IoError("cannot write " + path.string());
  }
}

int run_lambda(const PatternOptions& po, const std::string& output, const std::string& dump,
               std::ostream& out) {
  const auto resolved = resolve_pattern(po);
  std::string echo = resolved.echo;
  if (!output.empty()) echo += " --output " + output;
  if (!dump.empty()) echo += " --dump-spectrum " + dump;
  print_config(out, "lambda", echo);

  const auto decomp = diagonalize(build_channel_hamiltonian(resolved.pattern));
  const std::vector<double> routes = {
      lambda_closed_form(resolved.pattern),
      lambda_spectral(decomp),
      lambda_recursion_centered(resolved.pattern),
      lambda_recursion_appendix(resolved.pattern),
  };
  const double max_rel_dev = max_relative_deviation(routes);

  std::string csv = "N,lambda_closed,lambda_spectral,lambda_rec_centered,lambda_rec_appendix,"
                    "max_rel_dev\n";
  csv += std::to_string(resolved.pattern.sites()) + ',' + g12(routes[0]) + ',' + g12(routes[1]) +
         ',' + g12(routes[2]) + ',' + g12(routes[3]) + ',' + g12(max_rel_dev) + '\n';
  out << csv;
  if (!output.empty()) {
    write_text_file("# config: lambda " + echo + '\n' + csv, output);
  }
  if (!dump.empty()) {
    write_spectrum_csv(decomp, dump + ".values.csv", dump + ".vectors.csv");
  }
  return 0;
}

int run_effective(const PatternOptions& po, const EndOptions& eo, const std::string& dump,
                  std::ostream& out) {
  const auto resolved = resolve_pattern(po);
  const auto [ends, ends_echo] = resolve_ends(eo, resolved.pattern);
  std::string echo = resolved.echo + ' ' + ends_echo;
  if (!dump.empty()) echo += " --dump-spectrum " + dump;
  print_config(out, "effective", echo);

  const auto model = effective_two_level(resolved.pattern, ends);
  out << "N = " << resolved.pattern.sites() << '\n';
  out << "a_S = " << g12(ends.a_s) << '\n';
  out << "a_R = " << g12(ends.a_r) << '\n';
  out << "perturbative = " << (ends.perturbative_for(resolved.pattern.sites()) ? "yes" : "no")
      << '\n';
  out << "h_S = " << g12(model.h_s) << '\n';
  out << "h_R = " << g12(model.h_r) << '\n';
  out << "lambda = " << g12(model.lambda) << '\n';
  out << "J_eff = " << g12(model.j_eff) << '\n';
  out << "delta_lambda = " << g12(model.gap) << '\n';
  out << "tau = " << g12(model.tau) << '\n';
  if (!dump.empty()) {
    const auto decomp = diagonalize(build_channel_hamiltonian(resolved.pattern));
    write_spectrum_csv(decomp, dump + ".values.csv", dump + ".vectors.csv");
  }
  return 0;
}

struct DynamicsOptions {
  double t_max = 0.0;
  int t_points = 2001;
  std::string output;
  std::string dump;
  CLI::Option* opt_t_max = nullptr;
};

int run_dynamics(const PatternOptions& po, const EndOptions& eo, const DynamicsOptions& do_,
                 std::ostream& out) {
  const auto resolved = resolve_pattern(po);
  const auto [ends, ends_echo] = resolve_ends(eo, resolved.pattern);
  const auto model = effective_two_level(resolved.pattern, ends);

  const double t_max = (do_.opt_t_max->count() > 0) ? do_.t_max : 2.0 * model.tau;
  if (!(t_max > 0.0)) {
    throw ValidationError("--t-max must be positive, got " + round_trip(t_max));
  }
  if (do_.t_points < 2) {
    throw ValidationError("--t-points must be at least 2, got " + std::to_string(do_.t_points));
  }

  std::string echo = resolved.echo + ' ' + ends_echo + " --t-max " + round_trip(t_max) +
                     " --t-points " + std::to_string(do_.t_points);
  if (!do_.output.empty()) echo += " --output " + do_.output;
  if (!do_.dump.empty()) echo += " --dump-spectrum " + do_.dump;
  print_config(out, "dynamics", echo);

  std::vector<double> grid(static_cast<std::size_t>(do_.t_points));
  for (int i = 0; i < do_.t_points; ++i) {
    grid[static_cast<std::size_t>(i)] = t_max * static_cast<double>(i) / (do_.t_points - 1);
  }
  const auto decomp = diagonalize(build_full_hamiltonian(resolved.pattern, ends));
  auto series = evolve_series(decomp, grid);
  series.meta.pattern_id = resolved.id;
  series.meta.a_s = ends.a_s;
  series.meta.a_r = ends.a_r;

  if (do_.output.empty()) {
    write_series_csv(series, out);
  } else {
    write_series_csv(series, std::filesystem::path(do_.output));
    out << "# wrote " << do_.output << " (" << series.times.size() << " samples)\n";
  }
  if (!do_.dump.empty()) {
    write_spectrum_csv(decomp, do_.dump + ".values.csv", do_.dump + ".vectors.csv");
  }
  return 0;
}

struct SweepOptions {
  std::string config_file;
  int n_sites = 30;
  std::vector<double> b_values = {0.5, 0.7, 0.9};
  double width = 0.5;
  int samples = 1000;
  std::uint64_t seed = 1;
  std::vector<double> xi_grid;
  double xi_min = 1e-3;
  double xi_max = 0.5;
  int xi_points = 60;
  std::string output;
  CLI::Option* opt_n = nullptr;
  CLI::Option* opt_b = nullptr;
  CLI::Option* opt_w = nullptr;
  CLI::Option* opt_samples = nullptr;
  CLI::Option* opt_seed = nullptr;
  CLI::Option* opt_xi_grid = nullptr;
  CLI::Option* opt_xi_min = nullptr;
  CLI::Option* opt_xi_max = nullptr;
  CLI::Option* opt_xi_points = nullptr;
  CLI::Option* opt_output = nullptr;
};

void add_sweep_options(CLI::App* cmd, SweepOptions& so, bool staggered) {
  cmd->add_option("--config", so.config_file, "key=value config file");
  so.opt_n = cmd->add_option("--n", so.n_sites, "channel sites (even)")->capture_default_str();
  if (staggered) {
    so.opt_b = cmd->add_option("--b", so.b_values, "staggered b values")
                   ->delimiter(',')
                   ->capture_default_str();
  } else {
    so.opt_w = cmd->add_option("--w", so.width, "disorder width W in [0,1)")
                   ->capture_default_str();
    so.opt_samples =
        cmd->add_option("--samples", so.samples, "ensemble size")->capture_default_str();
  }
  so.opt_seed = cmd->add_option("--seed", so.seed, "ensemble seed")->capture_default_str();
  so.opt_xi_grid = cmd->add_option("--xi-grid", so.xi_grid, "explicit xi values")
                       ->delimiter(',');
  so.opt_xi_min = cmd->add_option("--xi-min", so.xi_min, "geometric grid start")
                      ->capture_default_str();
  so.opt_xi_max = cmd->add_option("--xi-max", so.xi_max, "geometric grid end")
                      ->capture_default_str();
  so.opt_xi_points = cmd->add_option("--xi-points", so.xi_points, "geometric grid size")
                         ->capture_default_str();
  so.opt_output = cmd->add_option("--output", so.output, "result CSV path");
}

int run_sweep(const SweepOptions& so, bool staggered, std::ostream& out) {
  SweepConfig config;
  if (!so.config_file.empty()) {
    config = load_config_file(so.config_file);
  }
  if (so.opt_n->count() > 0 || so.config_file.empty()) config.n_sites = so.n_sites;
  if (staggered) {
    if (so.opt_b->count() > 0 || so.config_file.empty()) config.b_values = so.b_values;
  } else {
    if (so.opt_w->count() > 0 || so.config_file.empty()) config.disorder_width = so.width;
    if (so.opt_samples->count() > 0 || so.config_file.empty()) config.samples = so.samples;
  }
  if (so.opt_seed->count() > 0 || so.config_file.empty()) config.seed = so.seed;

  bool geometric = true;
  if (so.opt_xi_grid->count() > 0) {
    config.xi_grid = so.xi_grid;
    geometric = false;
  } else if (so.opt_xi_min->count() > 0 || so.opt_xi_max->count() > 0 ||
             so.opt_xi_points->count() > 0 || so.config_file.empty()) {
    config.xi_grid = geometric_grid(so.xi_min, so.xi_max, so.xi_points);
  } else {
    // Grid came from the config file; echo it explicitly.
    geometric = false;
  }
  if (so.opt_output->count() > 0) config.output = so.output;
  if (config.output.empty()) {
    config.output = staggered ? "sweep_staggered.csv" : "sweep_random.csv";
  }

  std::string echo = "--n " + std::to_string(config.n_sites);
  if (staggered) {
    echo += " --b " + join_round_trip(config.b_values);
  } else {
    echo += " --w " + round_trip(config.disorder_width) + " --samples " +
            std::to_string(config.samples);
  }
  echo += " --seed " + std::to_string(config.seed);
  if (geometric) {
    echo += " --xi-min " + round_trip(so.xi_min) + " --xi-max " + round_trip(so.xi_max) +
            " --xi-points " + std::to_string(so.xi_points);
  } else {
    echo += " --xi-grid " + join_round_trip(config.xi_grid);
  }
  echo += " --output " + config.output;
  print_config(out, staggered ? "sweep-staggered" : "sweep-random", echo);

  const auto result = staggered ? sweep_staggered(config) : sweep_random_paired(config);
  write_results(result, config.output);
  out << "# wrote " << config.output << " (" << result.rows.size() << " rows)\n";
  return 0;
}

int run_equal_time(int n_sites, double b, double xi, std::ostream& out) {
  print_config(out, "equal-time", "--n " + std::to_string(n_sites) + " --b " + round_trip(b) +
                                      " --xi " + round_trip(xi));
  const auto cmp = equal_time_compare(n_sites, b, xi);
  out << "shared_tau = " << g12(cmp.shared_tau) << '\n';
  out << "a_uniform = " << g12(cmp.a_uniform) << '\n';
  out << "a_staggered = " << g12(cmp.a_staggered) << '\n';
  out << "lambda_staggered = " << g12(cmp.lambda_staggered) << '\n';
  out << "t_star_uniform = " << g12(cmp.uniform.time) << '\n';
  out << "F_uniform = " << g12(cmp.uniform.fidelity) << '\n';
  out << "t_star_staggered = " << g12(cmp.staggered.time) << '\n';
  out << "F_staggered = " << g12(cmp.staggered.fidelity) << '\n';
  out << "deficit = " << g12(cmp.deficit) << '\n';
  return 0;
}

int run_selftest(std::ostream& out) {
  print_config(out, "selftest", "");
  bool all_ok = true;

  {  // Four-route Lambda agreement on a seeded ensemble plus pinned values.
    std::mt19937_64 rng(0x5eed5eedull);
    double worst = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
      const int n = 2 * (1 + static_cast<int>(rng() % 30));
      std::vector<double> couplings(static_cast<std::size_t>(n) - 1);
      for (auto& j : couplings) j = 0.05 + 0.95 * uniform_unit(rng);
      const CouplingPattern pattern(couplings);
      const auto decomp = diagonalize(build_channel_hamiltonian(pattern));
      worst = std::max(worst, max_relative_deviation({
                                  lambda_closed_form(pattern),
                                  lambda_spectral(decomp),
                                  lambda_recursion_centered(pattern),
                                  lambda_recursion_appendix(pattern),
                              }));
    }
    bool ok = worst <= 1e-8;
    ok = ok && lambda_closed_form(CouplingPattern({0.5})) == 2.0;
    ok = ok && lambda_closed_form(CouplingPattern({1.0, 0.5, 1.0})) == -0.5;
    ok = ok && lambda_closed_form(CouplingPattern::uniform(6)) == 1.0;
    out << (ok ? "PASS" : "FAIL") << " four-route lambda agreement (max rel dev = " << g12(worst)
        << ")\n";
    all_ok = all_ok && ok;
  }

  {  // Dimer Rabi oracle: |f(t)| = |sin(g t)| for a bare two-site chain.
    const double g = 0.37;
    const auto decomp = diagonalize(TridiagonalHamiltonian({g}));
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) {
      const double t = 0.6 * i;
      worst = std::max(worst, std::abs(std::abs(transition_amplitude(decomp, t)) -
                                       std::abs(std::sin(g * t))));
    }
    const bool ok = worst <= 1e-12;
    out << (ok ? "PASS" : "FAIL") << " dimer dynamics oracle (max err = " << g12(worst) << ")\n";
    all_ok = all_ok && ok;
  }

  return all_ok ? 0 : 2;
}

}  // namespace

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qst " + std::string(kVersion) +
               ": weak-coupling quantum state transfer on XX spin chains"};
  app.require_subcommand(1);

  int exit_code = 0;

  PatternOptions lambda_po;
  std::string lambda_output;
  std::string lambda_dump;
  auto* lambda_cmd = app.add_subcommand("lambda", "effective coupling Lambda via four routes");
  add_pattern_options(lambda_cmd, lambda_po);
  lambda_cmd->add_option("--output", lambda_output, "also write the CSV row to a file");
  lambda_cmd->add_option("--dump-spectrum", lambda_dump, "channel spectrum CSV prefix");
  lambda_cmd->callback([&] { exit_code = run_lambda(lambda_po, lambda_output, lambda_dump, out); });

  PatternOptions effective_po;
  EndOptions effective_eo;
  std::string effective_dump;
  auto* effective_cmd =
      app.add_subcommand("effective", "effective two-level model (h, J_eff, gap, tau)");
  add_pattern_options(effective_cmd, effective_po);
  add_end_options(effective_cmd, effective_eo);
  effective_cmd->add_option("--dump-spectrum", effective_dump, "channel spectrum CSV prefix");
  effective_cmd->callback(
      [&] { exit_code = run_effective(effective_po, effective_eo, effective_dump, out); });

  PatternOptions dynamics_po;
  EndOptions dynamics_eo;
  DynamicsOptions dynamics_do;
  auto* dynamics_cmd = app.add_subcommand("dynamics", "exact |f(t)|, F(t) and Rabi series");
  add_pattern_options(dynamics_cmd, dynamics_po);
  add_end_options(dynamics_cmd, dynamics_eo);
  dynamics_do.opt_t_max =
      dynamics_cmd->add_option("--t-max", dynamics_do.t_max, "grid end (default 2 tau)");
  dynamics_cmd->add_option("--t-points", dynamics_do.t_points, "grid size")
      ->capture_default_str();
  dynamics_cmd->add_option("--output", dynamics_do.output, "series CSV path (default stdout)");
  dynamics_cmd->add_option("--dump-spectrum", dynamics_do.dump, "full-chain spectrum CSV prefix");
  dynamics_cmd->callback(
      [&] { exit_code = run_dynamics(dynamics_po, dynamics_eo, dynamics_do, out); });

  SweepOptions staggered_so;
  auto* staggered_cmd =
      app.add_subcommand("sweep-staggered", "correlation-vs-xi sweep over staggered channels");
  add_sweep_options(staggered_cmd, staggered_so, /*staggered=*/true);
  staggered_cmd->callback([&] { exit_code = run_sweep(staggered_so, true, out); });

  SweepOptions random_so;
  auto* random_cmd =
      app.add_subcommand("sweep-random", "correlation-vs-xi sweep over random paired ensembles");
  add_sweep_options(random_cmd, random_so, /*staggered=*/false);
  random_cmd->callback([&] { exit_code = run_sweep(random_so, false, out); });

  int et_n = 30;
  double et_b = 0.7;
  double et_xi = 0.02;
  auto* equal_time_cmd =
      app.add_subcommand("equal-time", "uniform vs staggered peak fidelity at matched tau");
  equal_time_cmd->add_option("--n", et_n, "channel sites (even)")->capture_default_str();
  equal_time_cmd->add_option("--b", et_b, "staggered ratio in (0,1]")->capture_default_str();
  equal_time_cmd->add_option("--xi", et_xi, "uniform-channel drive a = xi")
      ->capture_default_str();
  equal_time_cmd->callback([&] { exit_code = run_equal_time(et_n, et_b, et_xi, out); });

  auto* selftest_cmd = app.add_subcommand("selftest", "built-in oracle checks");
  selftest_cmd->callback([&] { exit_code = run_selftest(out); });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << '\n';
    return 3;
  }
  return exit_code;
}

}  // namespace qst::cli
