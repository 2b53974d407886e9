#include "qst/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "qst/errors.hpp"
#include "qst/format.hpp"

namespace qst {

namespace {

constexpr double kAbsFSlack = 1e-9;

std::complex<double> phase_factor(double energy, double time) {
  const double angle = -energy * time;
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

std::complex<double> transition_amplitude(const EigenDecomposition& full, double time) {
  const int n = full.dimension();
  std::complex<double> f{0.0, 0.0};
  for (int k = 0; k < n; ++k) {
    f += full.vectors(n - 1, k) * full.vectors(0, k) * phase_factor(full.values(k), time);
  }
  return f;
}

Eigen::VectorXcd site_amplitudes(const EigenDecomposition& full, double time) {
  const int n = full.dimension();
  Eigen::VectorXcd weights(n);
  for (int k = 0; k < n; ++k) {
    weights(k) = full.vectors(0, k) * phase_factor(full.values(k), time);
  }
  return full.vectors.cast<std::complex<double>>() * weights;
}

double average_fidelity(double abs_f) {
  if (abs_f < -kAbsFSlack || abs_f > 1.0 + kAbsFSlack) {
    throw ValidationError("|f| = " + round_trip(abs_f) + " outside [0, 1]");
  }
  const double x = std::clamp(abs_f, 0.0, 1.0);
  return 0.5 + x / 3.0 + x * x / 6.0;
}

BandCenterMode correlation_amplitude(const EigenDecomposition& full) {
  const int n = full.dimension();
  if (n % 2 != 0) {
    throw ValidationError("band-center selection needs even dimension, got " + std::to_string(n));
  }
  auto closer_to_center = [&](int a, int b) {
    const double abs_a = std::abs(full.values(a));
    const double abs_b = std::abs(full.values(b));
    if (abs_a != abs_b) return abs_a < abs_b;
    return full.values(a) > full.values(b);  // tie: positive branch
  };
  int best = 0;
  for (int k = 1; k < n; ++k) {
    if (closer_to_center(k, best)) best = k;
  }
  int second = (best == 0) ? 1 : 0;
  for (int k = 0; k < n; ++k) {
    if (k != best && closer_to_center(k, second)) second = k;
  }
  const double correlation = 2.0 * std::abs(full.vectors(n - 1, best) * full.vectors(0, best));
  const double gap = std::abs(full.values(best) - full.values(second));
  return {correlation, gap};
}

double rabi_amplitude(double correlation, double gap, double time) {
  if (correlation < -kAbsFSlack || correlation > 1.0 + kAbsFSlack) {
    throw ValidationError("correlation amplitude C = " + round_trip(correlation) +
                          " outside [0, 1]");
  }
  const double c = std::clamp(correlation, 0.0, 1.0);
  return c * std::abs(std::sin(0.5 * gap * time));
}

TransferSeries evolve_series(const EigenDecomposition& full,
                             const std::vector<double>& time_grid) {
  if (time_grid.empty()) {
    throw ValidationError("time grid must be nonempty");
  }
  for (std::size_t i = 1; i < time_grid.size(); ++i) {
    if (!(time_grid[i] > time_grid[i - 1])) {
      throw ValidationError("time grid must be strictly ascending");
    }
  }
  const auto mode = correlation_amplitude(full);

  TransferSeries series;
  series.meta.n_sites = full.dimension() - 2;
  series.meta.correlation = mode.correlation;
  series.meta.gap = mode.gap;
  series.meta.tau = std::numbers::pi / mode.gap;
  series.times = time_grid;
  series.abs_f.reserve(time_grid.size());
  series.fidelity.reserve(time_grid.size());
  series.rabi_abs_f.reserve(time_grid.size());
  for (double t : time_grid) {
    const double abs_f = std::min(std::abs(transition_amplitude(full, t)), 1.0);
    series.abs_f.push_back(abs_f);
    series.fidelity.push_back(average_fidelity(abs_f));
    series.rabi_abs_f.push_back(rabi_amplitude(mode.correlation, mode.gap, t));
  }
  return series;
}

FidelityPeak peak_fidelity(const EigenDecomposition& full, double tau_estimate) {
  if (!(tau_estimate > 0.0)) {
    throw ValidationError("tau estimate must be positive, got " + round_trip(tau_estimate));
  }
  constexpr int kSamples = 2001;
  const double lo = 0.8 * tau_estimate;
  const double step = 0.4 * tau_estimate / (kSamples - 1);
  FidelityPeak peak{lo, 0.0};
  for (int i = 0; i < kSamples; ++i) {
    const double t = lo + step * i;
    const double abs_f = std::min(std::abs(transition_amplitude(full, t)), 1.0);
    const double fidelity = average_fidelity(abs_f);
    if (fidelity > peak.fidelity) {
      peak = {t, fidelity};
    }
  }
  return peak;
}

void write_series_csv(const TransferSeries& series, std::ostream& out) {
  if (!series.meta.pattern_id.empty()) {
    out << "# pattern=" << series.meta.pattern_id << '\n';
  }
  out << "# N=" << series.meta.n_sites << ", a=";
  if (series.meta.a_s == series.meta.a_r) {
    out << round_trip(series.meta.a_s);
  } else {
    out << round_trip(series.meta.a_s) << ';' << round_trip(series.meta.a_r);
  }
  out << ", C=" << g12(series.meta.correlation) << ", delta_lambda=" << g12(series.meta.gap)
      << ", tau=" << g12(series.meta.tau) << '\n';
  out << "t,abs_f,fidelity,rabi_abs_f\n";
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out << g12(series.times[i]) << ',' << g12(series.abs_f[i]) << ',' << g12(series.fidelity[i])
        << ',' << g12(series.rabi_abs_f[i]) << '\n';
  }
}

void write_series_csv(const TransferSeries& series, const std::filesystem::path& path) {
  std::ostringstream buffer;
  write_series_csv(series, buffer);
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << buffer.str())) {
    throw IoError("cannot write transfer series to " + path.string());
  }
}

}  // namespace qst
