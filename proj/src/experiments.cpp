#include "qst/experiments.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qst/effective.hpp"
#include "qst/errors.hpp"
#include "qst/format.hpp"
#include "qst/random.hpp"
#include "qst/version.hpp"

namespace qst {

namespace {

void check_xi_grid(const std::vector<double>& xi_grid) {
  if (xi_grid.empty()) {
    throw ValidationError("xi grid must be nonempty");
  }
  for (double xi : xi_grid) {
    if (!(xi > 0.0)) {
      throw ValidationError("xi grid values must be positive, got " + round_trip(xi));
    }
  }
}

// One pattern swept over the xi grid at a = xi.
void append_pattern_rows(std::vector<SweepRow>& rows, const std::string& pattern_id,
                         double b_or_w, int sample, const CouplingPattern& pattern,
                         const std::vector<double>& xi_grid) {
  const double lambda = lambda_closed_form(pattern);
  for (double xi : xi_grid) {
    const auto decomp = diagonalize(build_full_hamiltonian(pattern, EndCouplings::symmetric(xi)));
    const auto mode = correlation_amplitude(decomp);
    const double tau = std::numbers::pi / (2.0 * xi * xi * std::abs(lambda));
    rows.push_back({pattern_id, b_or_w, sample, xi, xi, lambda, mode.correlation, mode.gap, tau});
  }
}

std::string summarize(const std::string& mode, const SweepConfig& config) {
  std::string text = "mode=" + mode + " N=" + std::to_string(config.n_sites) +
                     " xi=" + join_round_trip(config.xi_grid);
  if (mode == "staggered") {
    text += " b_values=" + join_round_trip(config.b_values);
  } else {
    text += " W=" + round_trip(config.disorder_width) +
            " samples=" + std::to_string(config.samples);
  }
  text += " seed=" + std::to_string(config.seed);
  return text;
}

}  // namespace

std::vector<double> geometric_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi >= lo)) {
    throw ValidationError("geometric grid needs 0 < lo <= hi");
  }
  if (points < 1) {
    throw ValidationError("geometric grid needs at least one point");
  }
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(points));
  if (points == 1) {
    grid.push_back(lo);
    return grid;
  }
  const double ratio = hi / lo;
  for (int i = 0; i < points; ++i) {
    grid.push_back(lo * std::pow(ratio, static_cast<double>(i) / (points - 1)));
  }
  return grid;
}

std::vector<double> SweepConfig::default_xi_grid() { return geometric_grid(1e-3, 0.5, 60); }

SweepResult sweep_staggered(const SweepConfig& config) {
  check_xi_grid(config.xi_grid);
  if (config.b_values.empty()) {
    throw ValidationError("staggered sweep needs at least one b value");
  }

  SweepResult result;
  result.seed = config.seed;
  result.config_summary = summarize("staggered", config);
  result.config_hash = fnv1a64(result.config_summary);

  append_pattern_rows(result.rows, "uniform", 1.0, 0, CouplingPattern::uniform(config.n_sites),
                      config.xi_grid);
  for (double b : config.b_values) {
    append_pattern_rows(result.rows, "staggered", b, 0,
                        CouplingPattern::staggered(config.n_sites, b, StaggerPhase::WeakFirst),
                        config.xi_grid);
  }
  return result;
}

SweepResult sweep_random_paired(const SweepConfig& config) {
  check_xi_grid(config.xi_grid);
  if (config.samples < 1) {
    throw ValidationError("random sweep needs at least one sample");
  }

  SweepResult result;
  result.seed = config.seed;
  result.config_summary = summarize("random", config);
  result.config_hash = fnv1a64(result.config_summary);

  append_pattern_rows(result.rows, "uniform", 0.0, 0, CouplingPattern::uniform(config.n_sites),
                      config.xi_grid);
  for (int sample = 1; sample <= config.samples; ++sample) {
    const auto pattern = CouplingPattern::random_paired(
        config.n_sites, config.disorder_width,
        substream_seed(config.seed, static_cast<std::uint64_t>(sample)));
    append_pattern_rows(result.rows, "random", config.disorder_width, sample, pattern,
                        config.xi_grid);
  }
  return result;
}

EqualTimeComparison equal_time_compare(int n_sites, double b, double xi) {
  if (!(xi > 0.0)) {
    throw ValidationError("xi must be positive, got " + round_trip(xi));
  }
  const auto uniform_pattern = CouplingPattern::uniform(n_sites);
  const auto staggered_pattern = CouplingPattern::staggered(n_sites, b, StaggerPhase::WeakFirst);

  EqualTimeComparison cmp{};
  cmp.n_sites = n_sites;
  cmp.b = b;
  cmp.xi = xi;
  cmp.shared_tau = std::numbers::pi / (2.0 * xi * xi);
  cmp.a_uniform = xi;
  const auto staggered_ends = equal_time_end_couplings(staggered_pattern, xi);
  cmp.a_staggered = staggered_ends.a_s;
  cmp.lambda_staggered = lambda_closed_form(staggered_pattern);

  const auto uniform_decomp =
      diagonalize(build_full_hamiltonian(uniform_pattern, EndCouplings::symmetric(xi)));
  const auto staggered_decomp =
      diagonalize(build_full_hamiltonian(staggered_pattern, staggered_ends));
  cmp.uniform = peak_fidelity(uniform_decomp, cmp.shared_tau);
  cmp.staggered = peak_fidelity(staggered_decomp, cmp.shared_tau);
  cmp.deficit = cmp.uniform.fidelity - cmp.staggered.fidelity;
  return cmp;
}

void write_results(const SweepResult& result, const std::filesystem::path& path) {
  std::ostringstream buffer;
  buffer << "# qst sweep v" << kVersion << '\n';
  buffer << "# seed=" << result.seed << '\n';
  buffer << "# config=" << result.config_summary << '\n';
  char hash[24];
  std::snprintf(hash, sizeof hash, "%016llx",
                static_cast<unsigned long long>(result.config_hash));
  buffer << "# config_hash=" << hash << '\n';
  buffer << "pattern_id,b_or_W,sample,xi,a,lambda,C,delta_lambda_numeric,tau\n";
  for (const auto& row : result.rows) {
    buffer << row.pattern_id << ',' << g12(row.b_or_w) << ',' << row.sample << ',' << g12(row.xi)
           << ',' << g12(row.a) << ',' << g12(row.lambda) << ',' << g12(row.correlation) << ','
           << g12(row.gap) << ',' << g12(row.tau) << '\n';
  }

  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << buffer.str())) {
    throw IoError("cannot write sweep results to " + path.string());
  }
}

namespace {

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::stringstream cells(text);
  std::string cell;
  while (std::getline(cells, cell, ',')) {
    try {
      std::size_t used = 0;
      values.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw ValidationError("bad value '" + cell + "' for config key " + key);
    }
  }
  if (values.empty()) {
    throw ValidationError("config key " + key + " needs at least one value");
  }
  return values;
}

std::vector<double> parse_xi_grid(const std::string& text) {
  if (text.rfind("geom:", 0) == 0) {
    const auto spec = text.substr(5);
    std::stringstream parts(spec);
    std::string lo_s, hi_s, n_s;
    if (!std::getline(parts, lo_s, ':') || !std::getline(parts, hi_s, ':') ||
        !std::getline(parts, n_s)) {
      throw ValidationError("xi_grid geom form is geom:<lo>:<hi>:<points>, got '" + text + "'");
    }
    try {
      return geometric_grid(std::stod(lo_s), std::stod(hi_s), std::stoi(n_s));
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw ValidationError("bad xi_grid geom spec '" + text + "'");
    }
  }
  return parse_double_list(text, "xi_grid");
}

}  // namespace

SweepConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file " + path.string());
  }
  SweepConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(line_no) + " is not key=value: '" +
                            line + "'");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return (b == std::string::npos) ? std::string{} : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "N") {
        config.n_sites = std::stoi(value);
      } else if (key == "xi_grid") {
        config.xi_grid = parse_xi_grid(value);
      } else if (key == "b_values") {
        config.b_values = parse_double_list(value, key);
      } else if (key == "W") {
        config.disorder_width = std::stod(value);
      } else if (key == "samples") {
        config.samples = std::stoi(value);
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else if (key == "output") {
        config.output = value;
      } else {
        throw ValidationError("unknown config key '" + key + "'");
      }
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception&) {
      throw ValidationError("bad value '" + value + "' for config key " + key);
    }
  }
  return config;
}

}  // namespace qst
