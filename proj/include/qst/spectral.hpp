#pragma once

// Single-excitation Hamiltonians (channel-only and full chain with the end
// spins attached) and their certified eigendecompositions.

#include <Eigen/Dense>

#include <filesystem>
#include <vector>

#include "qst/chain.hpp"

namespace qst {

// Real symmetric tridiagonal matrix with zero diagonal (uniform local
// fields drop out). Off-diagonal entries must be nonzero and finite.
class TridiagonalHamiltonian {
 public:
  explicit TridiagonalHamiltonian(std::vector<double> off_diagonal);

  int dimension() const { return static_cast<int>(off_diagonal_.size()) + 1; }
  const std::vector<double>& off_diagonal() const { return off_diagonal_; }

  double norm_inf() const;
  Eigen::MatrixXd dense() const;

 private:
  std::vector<double> off_diagonal_;
};

// Channel Hamiltonian in the single-excitation basis |j>, j = 1..N.
TridiagonalHamiltonian build_channel_hamiltonian(const CouplingPattern& pattern);

// Full chain in site order (S, 1, ..., N, R): off-diagonal
// (a_S, J_1, ..., J_{N-1}, a_R), dimension N + 2.
TridiagonalHamiltonian build_full_hamiltonian(const CouplingPattern& pattern,
                                              const EndCouplings& ends);

// Eigenvalues ascending; column k of `vectors` is the orthonormal
// eigenvector v_k, with the first component of magnitude above 1e-14 made
// positive so repeated runs produce identical output.
struct EigenDecomposition {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;

  int dimension() const { return static_cast<int>(values.size()); }
  double component(int k, int site) const { return vectors(site, k); }
};

// Full eigendecomposition. Throws NumericalError if the solver fails to
// converge or the residual/orthonormality certificates are violated.
EigenDecomposition diagonalize(const TridiagonalHamiltonian& hamiltonian);

// Certificates: max_k ||H v_k - eps_k v_k||_2 and max |V^T V - I|.
double max_eigen_residual(const TridiagonalHamiltonian& hamiltonian,
                          const EigenDecomposition& decomp);
double max_orthonormality_residual(const EigenDecomposition& decomp);

struct ParticleHoleReport {
  double energy_residual;     // max_k |eps_k + eps_{n+1-k}|
  double amplitude_residual;  // max_{k,j} | |v_{k,j}| - |v_{n+1-k,j}| |
};

// Pairing residuals of the symmetric spectrum. Even dimension only.
ParticleHoleReport particle_hole_report(const EigenDecomposition& decomp);

// Spectrum dump: `k,epsilon_k` rows (k 1-based) plus a separate matrix CSV
// whose row k is v_k.
void write_spectrum_csv(const EigenDecomposition& decomp,
                        const std::filesystem::path& values_path,
                        const std::filesystem::path& vectors_path);

}  // namespace qst
