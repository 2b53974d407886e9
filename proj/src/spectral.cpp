#include "qst/spectral.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include "qst/errors.hpp"
#include "qst/format.hpp"

namespace qst {

namespace {

// Components below this are treated as structural zeros when fixing the
// eigenvector sign; unit vectors always have a component well above it.
constexpr double kSignTol = 1e-14;

constexpr double kResidualBound = 1e-10;

}  // namespace

TridiagonalHamiltonian::TridiagonalHamiltonian(std::vector<double> off_diagonal)
    : off_diagonal_(std::move(off_diagonal)) {
  if (off_diagonal_.empty()) {
    throw ValidationError("Hamiltonian needs dimension >= 2");
  }
  for (std::size_t i = 0; i < off_diagonal_.size(); ++i) {
    const double e = off_diagonal_[i];
    if (e == 0.0 || !std::isfinite(e)) {
      throw ValidationError("off-diagonal entry " + std::to_string(i + 1) + " = " +
                            round_trip(e) + " must be nonzero and finite");
    }
  }
}

double TridiagonalHamiltonian::norm_inf() const {
  const int n = dimension();
  double norm = 0.0;
  for (int row = 0; row < n; ++row) {
    double sum = 0.0;
    if (row > 0) sum += std::abs(off_diagonal_[static_cast<std::size_t>(row) - 1]);
    if (row < n - 1) sum += std::abs(off_diagonal_[static_cast<std::size_t>(row)]);
    norm = std::max(norm, sum);
  }
  return norm;
}

Eigen::MatrixXd TridiagonalHamiltonian::dense() const {
  const int n = dimension();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = off_diagonal_[static_cast<std::size_t>(i)];
    h(i + 1, i) = off_diagonal_[static_cast<std::size_t>(i)];
  }
  return h;
}

TridiagonalHamiltonian build_channel_hamiltonian(const CouplingPattern& pattern) {
  return TridiagonalHamiltonian(pattern.couplings());
}

TridiagonalHamiltonian build_full_hamiltonian(const CouplingPattern& pattern,
                                              const EndCouplings& ends) {
  std::vector<double> off;
  off.reserve(pattern.couplings().size() + 2);
  off.push_back(ends.a_s);
  off.insert(off.end(), pattern.couplings().begin(), pattern.couplings().end());
  off.push_back(ends.a_r);
  return TridiagonalHamiltonian(std::move(off));
}

EigenDecomposition diagonalize(const TridiagonalHamiltonian& hamiltonian) {
  const int n = hamiltonian.dimension();
  const Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  const Eigen::Map<const Eigen::VectorXd> sub(hamiltonian.off_diagonal().data(), n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);

  EigenDecomposition decomp{solver.eigenvalues(), solver.eigenvectors()};
  if (solver.info() != Eigen::Success) {
    throw NumericalError("eigensolver failed to converge on dimension " + std::to_string(n) +
                         " (worst residual " + g12(max_eigen_residual(hamiltonian, decomp)) +
                         ")");
  }

  // Deterministic global sign: first resolvable component positive.
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      const double v = decomp.vectors(j, k);
      if (std::abs(v) > kSignTol) {
        if (v < 0.0) decomp.vectors.col(k) = -decomp.vectors.col(k);
        break;
      }
    }
  }

  const double residual = max_eigen_residual(hamiltonian, decomp);
  const double scale = hamiltonian.norm_inf();
  if (!(residual <= kResidualBound * scale)) {
    throw NumericalError("eigen-residual " + g12(residual) + " exceeds bound on dimension " +
                         std::to_string(n));
  }
  const double ortho = max_orthonormality_residual(decomp);
  if (!(ortho <= kResidualBound)) {
    throw NumericalError("orthonormality residual " + g12(ortho) + " exceeds bound on dimension " +
                         std::to_string(n));
  }
  return decomp;
}

double max_eigen_residual(const TridiagonalHamiltonian& hamiltonian,
                          const EigenDecomposition& decomp) {
  const int n = hamiltonian.dimension();
  const auto& e = hamiltonian.off_diagonal();
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    double norm_sq = 0.0;
    for (int j = 0; j < n; ++j) {
      double hv = 0.0;
      if (j > 0) hv += e[static_cast<std::size_t>(j) - 1] * decomp.vectors(j - 1, k);
      if (j < n - 1) hv += e[static_cast<std::size_t>(j)] * decomp.vectors(j + 1, k);
      const double r = hv - decomp.values(k) * decomp.vectors(j, k);
      norm_sq += r * r;
    }
    worst = std::max(worst, std::sqrt(norm_sq));
  }
  return worst;
}

double max_orthonormality_residual(const EigenDecomposition& decomp) {
  const int n = decomp.dimension();
  Eigen::MatrixXd gram = decomp.vectors.transpose() * decomp.vectors;
  gram -= Eigen::MatrixXd::Identity(n, n);
  return gram.cwiseAbs().maxCoeff();
}

ParticleHoleReport particle_hole_report(const EigenDecomposition& decomp) {
  const int n = decomp.dimension();
  if (n % 2 != 0) {
    throw ValidationError("particle-hole pairing needs even dimension, got " + std::to_string(n));
  }
  ParticleHoleReport report{0.0, 0.0};
  for (int k = 0; k < n / 2; ++k) {
    const int partner = n - 1 - k;
    report.energy_residual =
        std::max(report.energy_residual, std::abs(decomp.values(k) + decomp.values(partner)));
    for (int j = 0; j < n; ++j) {
      const double mismatch =
          std::abs(std::abs(decomp.vectors(j, k)) - std::abs(decomp.vectors(j, partner)));
      report.amplitude_residual = std::max(report.amplitude_residual, mismatch);
    }
  }
  return report;
}

void write_spectrum_csv(const EigenDecomposition& decomp,
                        const std::filesystem::path& values_path,
                        const std::filesystem::path& vectors_path) {
  const int n = decomp.dimension();
  std::ostringstream values;
  values << "k,epsilon_k\n";
  for (int k = 0; k < n; ++k) {
    values << (k + 1) << ',' << g12(decomp.values(k)) << '\n';
  }
  std::ostringstream vectors;
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) {
      if (j > 0) vectors << ',';
      vectors << g12(decomp.vectors(j, k));
    }
    vectors << '\n';
  }

  std::ofstream values_out(values_path, std::ios::binary);
  if (!values_out || !(values_out << values.str())) {
    throw IoError("cannot write spectrum values to " + values_path.string());
  }
  std::ofstream vectors_out(vectors_path, std::ios::binary);
  if (!vectors_out || !(vectors_out << vectors.str())) {
    throw IoError("cannot write eigenvector matrix to " + vectors_path.string());
  }
}

}  // namespace qst
