#pragma once

// Channel coupling patterns: uniform, staggered and seeded random paired
// ensembles, plus validation and the single-row CSV serialization.

#include <cstdint>
#include <filesystem>
#include <vector>

namespace qst {

enum class StaggerPhase { StrongFirst, WeakFirst };

// Ordered nearest-neighbor couplings (J_1, ..., J_{N-1}) of an N-site
// channel, in units of J_max = 1. N must be even and >= 2; every coupling
// must lie in (0, 1].
class CouplingPattern {
 public:
  explicit CouplingPattern(std::vector<double> couplings);

  // All couplings equal to J_max.
  static CouplingPattern uniform(int n_sites);

  // Alternating pattern: strong-first is (J, b, J, b, ..., b, J),
  // weak-first is (b, J, b, J, ..., J, b), with J = 1 and 0 < b <= 1.
  static CouplingPattern staggered(int n_sites, double b, StaggerPhase phase);

  // Consecutive couplings paired up, J_1 = J_2, J_3 = J_4, ..., with the
  // middle coupling J_M (M = N/2, required odd) fixed to 1 and the pairing
  // resuming at J_{M+1} = J_{M+2}. Each pair value is J = 1 - chi with chi
  // uniform on [0, width), width in [0, 1). Deterministic in the seed.
  static CouplingPattern random_paired(int n_sites, double width, std::uint64_t seed);

  int sites() const { return static_cast<int>(couplings_.size()) + 1; }
  int half_sites() const { return sites() / 2; }
  const std::vector<double>& couplings() const { return couplings_; }

  // 1-based accessor matching the J_i labels.
  double j(int i) const { return couplings_[static_cast<std::size_t>(i) - 1]; }

 private:
  std::vector<double> couplings_;
};

// Re-checks the pattern invariants and returns the pattern unchanged.
const CouplingPattern& validate(const CouplingPattern& pattern);

// Sender/receiver end couplings a_S, a_R > 0 (units of J_max).
struct EndCouplings {
  EndCouplings(double sender, double receiver);
  static EndCouplings symmetric(double a) { return {a, a}; }

  double a_s;
  double a_r;

  // Weak-coupling heuristic a <= J / sqrt(N). Advisory only.
  bool perturbative_for(int n_sites) const;
};

// Single-row CSV with header J_1,...,J_{N-1}; one coupling per cell.
CouplingPattern read_pattern_csv(const std::filesystem::path& path);
void write_pattern_csv(const CouplingPattern& pattern, const std::filesystem::path& path);

}  // namespace qst
