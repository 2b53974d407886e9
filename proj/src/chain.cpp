#include "qst/chain.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>

#include "qst/errors.hpp"
#include "qst/format.hpp"
#include "qst/random.hpp"

namespace qst {

namespace {

void check_site_count(int n_sites) {
  if (n_sites < 2) {
    throw ValidationError("channel needs at least 2 sites, got " + std::to_string(n_sites));
  }
  if (n_sites % 2 != 0) {
    throw ValidationError("odd channel length N=" + std::to_string(n_sites) +
                          " unsupported; N must be even");
  }
}

void check_couplings(const std::vector<double>& couplings) {
  check_site_count(static_cast<int>(couplings.size()) + 1);
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    const double j = couplings[i];
    if (!(j > 0.0)) {
      throw ValidationError("non-positive coupling J_" + std::to_string(i + 1) + " = " +
                            round_trip(j));
    }
    if (j > 1.0) {
      throw ValidationError("coupling J_" + std::to_string(i + 1) + " = " + round_trip(j) +
                            " exceeds J_max = 1");
    }
  }
}

}  // namespace

CouplingPattern::CouplingPattern(std::vector<double> couplings)
    : couplings_(std::move(couplings)) {
  check_couplings(couplings_);
}

CouplingPattern CouplingPattern::uniform(int n_sites) {
  check_site_count(n_sites);
  return CouplingPattern(std::vector<double>(static_cast<std::size_t>(n_sites) - 1, 1.0));
}

CouplingPattern CouplingPattern::staggered(int n_sites, double b, StaggerPhase phase) {
  check_site_count(n_sites);
  if (!(b > 0.0) || b > 1.0) {
    throw ValidationError("staggered ratio b = " + round_trip(b) + " outside (0, 1]");
  }
  std::vector<double> couplings(static_cast<std::size_t>(n_sites) - 1);
  for (std::size_t idx = 0; idx < couplings.size(); ++idx) {
    const bool odd_label = (idx % 2 == 0);  // 1-based J_i with i odd
    const bool weak = (phase == StaggerPhase::WeakFirst) ? odd_label : !odd_label;
    couplings[idx] = weak ? b : 1.0;
  }
  return CouplingPattern(std::move(couplings));
}

CouplingPattern CouplingPattern::random_paired(int n_sites, double width, std::uint64_t seed) {
  check_site_count(n_sites);
  const int m = n_sites / 2;
  if (m % 2 == 0) {
    throw ValidationError("paired ensemble requires M = N/2 odd, got M = " + std::to_string(m));
  }
  if (width < 0.0 || !(width < 1.0)) {
    throw ValidationError("disorder width W = " + round_trip(width) + " outside [0, 1)");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> couplings(static_cast<std::size_t>(n_sites) - 1, 1.0);
  // Pairs (J_1,J_2)...(J_{M-2},J_{M-1}), then J_M = 1, then the pairing
  // resumes with (J_{M+1},J_{M+2})... One draw per pair.
  auto fill_pairs = [&](int first, int last) {
    for (int i = first; i < last; i += 2) {
      const double value = 1.0 - width * uniform_unit(rng);
      couplings[static_cast<std::size_t>(i) - 1] = value;
      couplings[static_cast<std::size_t>(i)] = value;
    }
  };
  fill_pairs(1, m);
  fill_pairs(m + 1, n_sites - 1);
  return CouplingPattern(std::move(couplings));
}

const CouplingPattern& validate(const CouplingPattern& pattern) {
  check_couplings(pattern.couplings());
  return pattern;
}

EndCouplings::EndCouplings(double sender, double receiver) : a_s(sender), a_r(receiver) {
  if (!(a_s > 0.0)) {
    throw ValidationError("sender coupling a_S = " + round_trip(a_s) + " must be positive");
  }
  if (!(a_r > 0.0)) {
    throw ValidationError("receiver coupling a_R = " + round_trip(a_r) + " must be positive");
  }
}

bool EndCouplings::perturbative_for(int n_sites) const {
  const double bound = 1.0 / std::sqrt(static_cast<double>(n_sites));
  return a_s <= bound && a_r <= bound;
}

CouplingPattern read_pattern_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open pattern file " + path.string());
  }
  std::string header;
  std::string row;
  if (!std::getline(in, header) || !std::getline(in, row)) {
    throw ValidationError("pattern file " + path.string() + " needs a header line and a data row");
  }
  std::vector<double> couplings;
  std::stringstream cells(row);
  std::string cell;
  while (std::getline(cells, cell, ',')) {
    try {
      std::size_t used = 0;
      const double value = std::stod(cell, &used);
      if (used != cell.size()) throw std::invalid_argument(cell);
      couplings.push_back(value);
    } catch (const std::exception&) {
      throw ValidationError("bad coupling cell '" + cell + "' in " + path.string());
    }
  }
  return CouplingPattern(std::move(couplings));
}

void write_pattern_csv(const CouplingPattern& pattern, const std::filesystem::path& path) {
  std::string text;
  const auto& couplings = pattern.couplings();
  for (std::size_t i = 0; i < couplings.size(); ++i) {
    if (i > 0) text.push_back(',');
    text += "J_" + std::to_string(i + 1);
  }
  text.push_back('\n');
  text += join_round_trip(couplings);
  text.push_back('\n');

  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) {
    throw IoError("cannot write pattern file " + path.string());
  }
}

}  // namespace qst
