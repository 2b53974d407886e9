// Acceptance suite: one pass/fail line per criterion, exit 0 only if all
// criteria hold. `--smoke` shrinks the random ensemble of criterion 6 to 50
// samples; `--only <id>` runs a single criterion.

#include <chrono>
#include <cmath>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qst/chain.hpp"
#include "qst/dynamics.hpp"
#include "qst/effective.hpp"
#include "qst/experiments.hpp"
#include "qst/format.hpp"
#include "qst/random.hpp"
#include "qst/spectral.hpp"
#include "test_support.hpp"

namespace {

using namespace qst;

struct Outcome {
  bool pass;
  std::string detail;
};

Outcome four_route_agreement() {
  std::mt19937_64 rng(0xa11cebull);
  double worst = 0.0;
  int worst_n = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng() % 50));  // N in {2,...,100}
    const CouplingPattern pattern(test::random_couplings(rng, n));
    const auto decomp = diagonalize(build_channel_hamiltonian(pattern));
    const double dev = test::max_relative_deviation({
        lambda_closed_form(pattern),
        lambda_spectral(decomp),
        lambda_recursion_centered(pattern),
        lambda_recursion_appendix(pattern),
    });
    if (dev > worst) {
      worst = dev;
      worst_n = n;
    }
  }
  return {worst <= 1e-8, "1000 patterns, max rel dev " + g12(worst) + " at N=" +
                             std::to_string(worst_n) + " (bound 1e-8)"};
}

Outcome small_n_closed_forms() {
  double worst = 0.0;
  auto check = [&worst](double actual, double expected) {
    worst = std::max(worst, std::abs(actual - expected) / std::abs(expected));
  };
  for (double j1 : {0.5, 0.3, 0.8}) {
    check(lambda_closed_form(CouplingPattern({j1})), 1.0 / j1);
  }
  check(lambda_closed_form(CouplingPattern({1.0, 0.5, 1.0})), -0.5);
  check(lambda_closed_form(CouplingPattern({0.3, 0.7, 0.9})), -0.7 / (0.3 * 0.9));
  check(lambda_closed_form(CouplingPattern({0.5, 0.25, 0.5, 0.25, 0.5})),
        (0.25 * 0.25) / (0.5 * 0.5 * 0.5));
  check(lambda_closed_form(CouplingPattern({0.9, 0.6, 0.4, 0.7, 0.8})),
        (0.6 * 0.7) / (0.9 * 0.4 * 0.8));
  return {worst <= 1e-14, "N=2,4,6 closed forms, max rel err " + g12(worst) + " (bound 1e-14)"};
}

Outcome zero_onsite_shifts() {
  std::mt19937_64 rng(0x5417ull);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng() % 50));
    const CouplingPattern pattern(test::random_couplings(rng, n));
    const auto shifts = onsite_shifts(diagonalize(build_channel_hamiltonian(pattern)));
    worst = std::max({worst, std::abs(shifts.h_s), std::abs(shifts.h_r)});
  }
  return {worst <= 1e-10, "100 channels, max |h| " + g12(worst) + " (bound 1e-10)"};
}

Outcome rabi_regime_transfer() {
  auto peak_for = [](double a) {
    const auto decomp =
        diagonalize(build_full_hamiltonian(CouplingPattern::uniform(30),
                                           EndCouplings::symmetric(a)));
    return peak_fidelity(decomp, std::numbers::pi / (2.0 * a * a));
  };
  const auto weak = peak_for(0.01);
  const auto weaker = peak_for(0.005);
  const bool pass = weak.fidelity >= 0.999 && weaker.fidelity >= 0.9997;
  return {pass, "uniform N=30: F(a=0.01) = " + g12(weak.fidelity) +
                    " (>= 0.999), F(a=0.005) = " + g12(weaker.fidelity) + " (>= 0.9997)"};
}

Outcome fig2_dominance() {
  SweepConfig config;
  config.n_sites = 30;
  config.xi_grid = geometric_grid(1e-3, 0.5, 60);
  config.b_values = {0.9, 0.7, 0.5};
  const auto result = sweep_staggered(config);

  std::map<double, std::vector<double>> by_b;  // b -> C(xi)
  for (const auto& row : result.rows) {
    by_b[row.b_or_w].push_back(row.correlation);
  }
  const auto& uniform = by_b.at(1.0);
  bool pass = uniform.size() == 60;
  double worst_violation = 0.0;
  const std::vector<double> ordering = {1.0, 0.9, 0.7, 0.5};
  for (std::size_t level = 1; level < ordering.size(); ++level) {
    const auto& upper = by_b.at(ordering[level - 1]);
    const auto& lower = by_b.at(ordering[level]);
    for (std::size_t i = 0; i < uniform.size(); ++i) {
      worst_violation = std::max(worst_violation, lower[i] - uniform[i]);
      if (lower[i] > uniform[i] + 1e-6) pass = false;   // dominance
      if (lower[i] > upper[i] + 1e-9) pass = false;     // b-ordering
    }
  }
  return {pass, "60-point grid, b in {0.9,0.7,0.5}: worst C_staggered - C_uniform = " +
                    g12(worst_violation) + " (bound 1e-6), ordering preserved"};
}

Outcome fig3_ensemble(int samples) {
  bool pass = true;
  double worst_lambda = 0.0;
  double worst_violation = -1.0;
  for (double width : {0.5, 0.99}) {
    SweepConfig config;
    config.n_sites = 30;
    config.xi_grid = geometric_grid(1e-3, 0.5, 60);
    config.disorder_width = width;
    config.samples = samples;
    config.seed = 0xf163ull;
    const auto result = sweep_random_paired(config);

    std::vector<double> uniform;
    for (const auto& row : result.rows) {
      if (row.pattern_id == "uniform") uniform.push_back(row.correlation);
    }
    std::size_t xi_index = 0;
    for (const auto& row : result.rows) {
      if (row.pattern_id != "random") continue;
      worst_lambda = std::max(worst_lambda, std::abs(row.lambda - 1.0));
      if (std::abs(row.lambda - 1.0) > 1e-12) pass = false;
      const double violation = row.correlation - uniform[xi_index % uniform.size()];
      worst_violation = std::max(worst_violation, violation);
      if (violation > 1e-6) pass = false;
      ++xi_index;
    }
  }
  return {pass, std::to_string(samples) + " samples x {W=0.5, W=0.99}: max |lambda-1| = " +
                    g12(worst_lambda) + " (bound 1e-12), worst C_sample - C_uniform = " +
                    g12(worst_violation) + " (bound 1e-6)"};
}

Outcome dynamics_oracle() {
  std::mt19937_64 rng(0xd15cull);
  double worst_expm = 0.0;
  for (int dim : {4, 6, 8}) {
    const int n_channel = dim - 2;
    const CouplingPattern pattern(test::random_couplings(rng, n_channel, 0.2));
    const EndCouplings ends(0.05 + 0.25 * uniform_unit(rng), 0.05 + 0.25 * uniform_unit(rng));
    const auto hamiltonian = build_full_hamiltonian(pattern, ends);
    const auto decomp = diagonalize(hamiltonian);
    for (int i = 0; i < 100; ++i) {
      const double t = 60.0 * uniform_unit(rng);
      const auto oracle = test::expm_amplitude(hamiltonian.off_diagonal(), t, 0, dim - 1);
      worst_expm = std::max(
          worst_expm, std::abs(std::abs(transition_amplitude(decomp, t)) - std::abs(oracle)));
    }
  }
  double worst_dimer = 0.0;
  const double g = 0.73;
  const auto dimer = diagonalize(TridiagonalHamiltonian({g}));
  for (int i = 0; i < 100; ++i) {
    const double t = 60.0 * uniform_unit(rng);
    worst_dimer = std::max(worst_dimer, std::abs(std::abs(transition_amplitude(dimer, t)) -
                                                 std::abs(std::sin(g * t))));
  }
  const bool pass = worst_expm <= 1e-9 && worst_dimer <= 1e-12;
  return {pass, "expm gap " + g12(worst_expm) + " (bound 1e-9), dimer gap " + g12(worst_dimer) +
                    " (bound 1e-12)"};
}

Outcome rabi_approximation() {
  const double xi = 0.005;
  const auto decomp = diagonalize(
      build_full_hamiltonian(CouplingPattern::uniform(30), EndCouplings::symmetric(xi)));
  const double tau = std::numbers::pi / (2.0 * xi * xi);
  std::vector<double> grid;
  grid.reserve(4001);
  for (int i = 0; i <= 4000; ++i) grid.push_back(2.0 * tau * i / 4000.0);
  const auto series = evolve_series(decomp, grid);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    sup = std::max(sup, std::abs(series.abs_f[i] - series.rabi_abs_f[i]));
  }
  return {sup <= 0.05, "uniform N=30, xi=0.005, [0, 2tau]: sup |f| gap " + g12(sup) +
                           " (bound 0.05)"};
}

Outcome eigensolver_contracts() {
  std::mt19937_64 rng(0xe16e2ull);
  std::vector<TridiagonalHamiltonian> matrices;
  for (int n : {2, 4, 8, 30, 60, 100}) {
    matrices.push_back(build_channel_hamiltonian(CouplingPattern::uniform(n)));
  }
  for (double b : {0.5, 0.9}) {
    for (auto phase : {StaggerPhase::WeakFirst, StaggerPhase::StrongFirst}) {
      matrices.push_back(build_channel_hamiltonian(CouplingPattern::staggered(30, b, phase)));
    }
  }
  for (double width : {0.5, 0.99}) {
    for (std::uint64_t seed : {1ull, 2ull}) {
      matrices.push_back(
          build_channel_hamiltonian(CouplingPattern::random_paired(30, width, seed)));
    }
  }
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 * (1 + static_cast<int>(rng() % 50));
    matrices.push_back(build_channel_hamiltonian(CouplingPattern(test::random_couplings(rng, n))));
  }
  for (double xi : {0.01, 0.1}) {
    matrices.push_back(build_full_hamiltonian(CouplingPattern::uniform(30),
                                              EndCouplings::symmetric(xi)));
    matrices.push_back(build_full_hamiltonian(
        CouplingPattern::staggered(30, 0.5, StaggerPhase::WeakFirst),
        EndCouplings::symmetric(xi)));
  }

  double worst_residual = 0.0;
  double worst_ortho = 0.0;
  double worst_pairing = 0.0;
  for (const auto& hamiltonian : matrices) {
    const auto decomp = diagonalize(hamiltonian);
    worst_residual = std::max(
        worst_residual, max_eigen_residual(hamiltonian, decomp) / hamiltonian.norm_inf());
    worst_ortho = std::max(worst_ortho, max_orthonormality_residual(decomp));
    const auto report = particle_hole_report(decomp);
    worst_pairing =
        std::max({worst_pairing, report.energy_residual, report.amplitude_residual});
  }
  const bool pass = worst_residual <= 1e-10 && worst_ortho <= 1e-10 && worst_pairing <= 1e-9;
  return {pass, std::to_string(matrices.size()) + " matrices: residual/||H|| " +
                    g12(worst_residual) + ", orthonormality " + g12(worst_ortho) +
                    " (bounds 1e-10), particle-hole " + g12(worst_pairing) + " (bound 1e-9)"};
}

Outcome sweep_determinism() {
  test::TempDir dir;
  SweepConfig config;
  config.n_sites = 30;
  config.xi_grid = geometric_grid(1e-3, 0.5, 20);
  config.disorder_width = 0.5;
  config.samples = 20;
  config.seed = 4242;

  write_results(sweep_random_paired(config), dir.file("rand_a.csv"));
  write_results(sweep_random_paired(config), dir.file("rand_b.csv"));
  const bool random_ok =
      test::slurp(dir.file("rand_a.csv")) == test::slurp(dir.file("rand_b.csv"));

  SweepConfig staggeredarm = config;
  staggered_config_fixup(staggered_config);
  return {random_ok, ""};
}

}  // namespace

int main(int argc, char** argv) {
  bool smoke = false;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--smoke") == 0) smoke = true;
    if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) only = std::atoi(argv[i + 1]);
  }

  const int fig3_samples = smoke ? 50 : 1000;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"four-route lambda agreement", four_route_agreement},
      {"small-N closed forms", small_n_closed_forms},
      {"zero on-site shifts", zero_onsite_shifts},
      {"Rabi-regime transfer", rabi_regime_transfer},
      {"staggered dominance (Fig. 2 grid)", fig2_dominance},
      {"random paired ensemble (Fig. 3 grid)", [=] { return fig3_ensemble(fig3_samples); }},
      {"dynamics oracle", dynamics_oracle},
      {"Rabi approximation", rabi_approximation},
      {"eigensolver contracts", eigensolver_contracts},
      {"sweep determinism", sweep_determinism},
  };

  int failures = 0;
  int ran = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (only != 0 && only != id) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome{false, "unhandled exception"};
    try {
      outcome = criteria[i].second();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const auto elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream line;
    line << (outcome.pass ? "[PASS] " : "[FAIL] ") << id << ". " << criteria[i].first << " — "
         << outcome.detail << " [" << qst::g12(elapsed) << " s]";
    std::cout << line.str() << std::endl;
    if (!outcome.pass) ++failures;
  }
  std::cout << "ACCEPTANCE: " << (ran - failures) << "/" << ran << " criteria passed"
            << (smoke ? " (smoke ensemble)" : "") << std::endl;
  return failures == 0 ? 0 : 1;
}
