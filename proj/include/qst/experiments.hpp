#pragma once

// Seeded batch experiments: correlation-versus-xi sweeps over staggered and
// random paired channels, the equal-time fidelity comparison, and the
// reproducible CSV output they share.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "qst/chain.hpp"
#include "qst/dynamics.hpp"

namespace qst {

std::vector<double> geometric_grid(double lo, double hi, int points);

struct SweepConfig {
  int n_sites = 30;
  std::vector<double> xi_grid = default_xi_grid();
  std::vector<double> b_values = {0.5, 0.7, 0.9};  // staggered mode
  double disorder_width = 0.5;                     // W, random mode
  int samples = 1000;                              // random mode
  std::uint64_t seed = 1;
  std::string output;

  // 60 geometric points in [1e-3, 0.5].
  static std::vector<double> default_xi_grid();
};

struct SweepRow {
  std::string pattern_id;  // uniform | staggered | random
  double b_or_w;
  int sample;  // 0 for deterministic patterns, 1-based for ensemble samples
  double xi;
  double a;
  double lambda;
  double correlation;
  double gap;  // numeric delta_lambda
  double tau;  // pi / (2 a^2 |lambda|)
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::uint64_t seed = 0;
  std::string config_summary;
  std::uint64_t config_hash = 0;
};

// Weak-first staggered patterns for every b in b_values, each swept over
// xi with a = xi, plus the uniform reference rows (b_or_W = 1).
SweepResult sweep_staggered(const SweepConfig& config);

// `samples` random paired patterns from per-sample substreams of the seed,
// each swept over xi with a = xi, plus the uniform reference rows
// (b_or_W = 0). Requires N/2 odd.
SweepResult sweep_random_paired(const SweepConfig& config);

struct EqualTimeComparison {
  int n_sites;
  double b;
  double xi;
  double shared_tau;  // pi / (2 xi^2)
  double a_uniform;
  double a_staggered;  // xi / sqrt(lambda_staggered)
  double lambda_staggered;
  FidelityPeak uniform;
  FidelityPeak staggered;
  double deficit;  // uniform peak fidelity minus staggered peak fidelity
};

// Uniform channel at a = xi versus weak-first staggered channel rescaled to
// the same transfer time; both peaks searched around the shared tau.
EqualTimeComparison equal_time_compare(int n_sites, double b, double xi);

// CSV header `pattern_id,b_or_W,sample,xi,a,lambda,C,delta_lambda_numeric,tau`
// preceded by `#` provenance comments (version, seed, config, config hash).
// Byte-identical for identical config and seed. The file is written in one
// shot; failures never leave partial output.
void write_results(const SweepResult& result, const std::filesystem::path& path);

// Plain-text key=value config: keys N, xi_grid, b_values, W, samples, seed,
// output. xi_grid accepts a comma list or geom:<lo>:<hi>:<points>.
SweepConfig load_config_file(const std::filesystem::path& path);

}  // namespace qst
