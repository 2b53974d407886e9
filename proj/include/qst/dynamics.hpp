#pragma once

// Exact spectral time evolution of the full (S, channel, R) chain:
// transition amplitude f(t), averaged fidelity F(t), the band-center
// correlation amplitude C, and the two-level Rabi approximation.

#include <complex>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "qst/spectral.hpp"

namespace qst {

// f(t) = <R| e^{-iHt} |S> = sum_k e^{-i eps_k t} v_{k,R} v_{k,S}, with S
// the first site and R the last.
std::complex<double> transition_amplitude(const EigenDecomposition& full, double time);

// Amplitudes <j| e^{-iHt} |S> for every site j. Handy for unitarity checks.
Eigen::VectorXcd site_amplitudes(const EigenDecomposition& full, double time);

// F = 1/2 + |f|/3 + |f|^2/6; |f| must lie in [0, 1] up to 1e-9 slack.
double average_fidelity(double abs_f);

struct BandCenterMode {
  double correlation;  // C = 2 |v_{k,R} v_{k,S}| of the smallest-|eps| state
  double gap;          // numeric delta_lambda between the two central levels
};

// Selects the eigenstate closest to the band center (ties resolved toward
// the positive branch). Even dimension only.
BandCenterMode correlation_amplitude(const EigenDecomposition& full);

// Two-level approximation C |sin(gap t / 2)|.
double rabi_amplitude(double correlation, double gap, double time);

struct SeriesMetadata {
  std::string pattern_id;
  int n_sites = 0;  // channel site count
  double a_s = 0;
  double a_r = 0;
  double correlation = 0;
  double gap = 0;
  double tau = 0;  // pi / gap
};

struct TransferSeries {
  std::vector<double> times;
  std::vector<double> abs_f;
  std::vector<double> fidelity;
  std::vector<double> rabi_abs_f;
  SeriesMetadata meta;
};

// Samples |f|, F and the Rabi approximation over a strictly ascending,
// nonempty time grid. pattern_id / end couplings in `meta` are left for the
// caller to fill.
TransferSeries evolve_series(const EigenDecomposition& full, const std::vector<double>& time_grid);

struct FidelityPeak {
  double time;
  double fidelity;
};

// Scans t in [0.8, 1.2] * tau_estimate with 2001 uniform samples and
// returns the fidelity argmax.
FidelityPeak peak_fidelity(const EigenDecomposition& full, double tau_estimate);

// CSV `t,abs_f,fidelity,rabi_abs_f` with `#` metadata comments.
void write_series_csv(const TransferSeries& series, std::ostream& out);
void write_series_csv(const TransferSeries& series, const std::filesystem::path& path);

}  // namespace qst
