#include "qst/effective.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qst/errors.hpp"
#include "qst/format.hpp"

namespace qst {

namespace {

constexpr double kResonanceTol = 1e-12;

void check_off_resonant(const EigenDecomposition& channel) {
  const double min_abs = channel.values.cwiseAbs().minCoeff();
  if (min_abs <= kResonanceTol) {
    throw NumericalError("resonant channel spectrum: min |eps_k| = " + g12(min_abs) +
                         " (odd N or pathological couplings)");
  }
}

// Neumaier-compensated accumulator.
struct KahanSum {
  double sum = 0.0;
  double comp = 0.0;
  void add(double term) {
    const double t = sum + term;
    if (std::abs(sum) >= std::abs(term)) {
      comp += (sum - t) + term;
    } else {
      comp += (term - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + comp; }
};

}  // namespace

double lambda_spectral(const EigenDecomposition& channel) {
  check_off_resonant(channel);
  const int n = channel.dimension();
  KahanSum lambda;
  for (int k = 0; k < n; ++k) {
    lambda.add(channel.vectors(0, k) * channel.vectors(n - 1, k) / channel.values(k));
  }
  return lambda.value();
}

double lambda_product(std::span<const double> couplings) {
  if (couplings.empty() || couplings.size() % 2 == 0) {
    throw ValidationError("coupling sequence length must be odd (even N), got " +
                          std::to_string(couplings.size()));
  }
  for (double j : couplings) {
    if (j == 0.0 || !std::isfinite(j)) {
      throw ValidationError("coupling sequence entries must be nonzero and finite");
    }
  }
  const auto m = (couplings.size() + 1) / 2;  // M = N/2
  int sign = (m % 2 == 0) ? -1 : 1;           // (-1)^{M+1}
  // Mantissa/exponent accumulation: exact for powers of two and immune to
  // overflow until the final ldexp.
  double mantissa = 1.0;
  long exponent = 0;
  int e = 0;
  for (std::size_t idx = 0; idx < couplings.size(); ++idx) {
    double x = couplings[idx];
    if (x < 0.0) {
      sign = -sign;
      x = -x;
    }
    const double mx = std::frexp(x, &e);
    if (idx % 2 == 1) {  // 1-based even label: numerator
      mantissa *= mx;
      exponent += e;
    } else {  // odd label: denominator
      mantissa /= mx;
      exponent -= e;
    }
    mantissa = std::frexp(mantissa, &e);
    exponent += e;
  }
  return sign * std::ldexp(mantissa, static_cast<int>(exponent));
}

double lambda_closed_form(const CouplingPattern& pattern) {
  return lambda_product(pattern.couplings());
}

double lambda_recursion_centered(const CouplingPattern& pattern) {
  const int m = pattern.half_sites();
  double lambda = 1.0 / pattern.j(m);
  for (int step = 1; step <= m - 1; ++step) {
    lambda = -1.0 / (lambda * pattern.j(m - step) * pattern.j(m + step));
  }
  return lambda;
}

double lambda_recursion_appendix(const CouplingPattern& pattern) {
  const int n = pattern.sites();
  double lambda = 1.0 / pattern.j(1);  // i = 1: the Kronecker-delta term
  for (int i = 3; i <= n - 1; i += 2) {
    lambda *= -pattern.j(i - 1) / pattern.j(i);
  }
  return lambda;
}

OnsiteShifts onsite_shifts(const EigenDecomposition& channel) {
  check_off_resonant(channel);
  const int n = channel.dimension();
  if (n % 2 != 0) {
    throw ValidationError("on-site shifts need an even channel dimension, got " +
                          std::to_string(n));
  }
  // Particle-hole partners cancel term by term; summing each (k, n-1-k)
  // pair together keeps the cancellation at machine precision.
  KahanSum h_s;
  KahanSum h_r;
  for (int k = 0; k < n / 2; ++k) {
    const int partner = n - 1 - k;
    const double vs_k = channel.vectors(0, k);
    const double vs_p = channel.vectors(0, partner);
    const double vr_k = channel.vectors(n - 1, k);
    const double vr_p = channel.vectors(n - 1, partner);
    h_s.add(vs_k * vs_k / channel.values(k) + vs_p * vs_p / channel.values(partner));
    h_r.add(vr_k * vr_k / channel.values(k) + vr_p * vr_p / channel.values(partner));
  }
  return {h_s.value(), h_r.value()};
}

EffectiveModel effective_two_level(const CouplingPattern& pattern, const EndCouplings& ends) {
  EffectiveModel model{};
  model.lambda = lambda_closed_form(pattern);
  const auto shifts = onsite_shifts(diagonalize(build_channel_hamiltonian(pattern)));
  model.h_s = shifts.h_s;
  model.h_r = shifts.h_r;
  model.j_eff = -ends.a_s * ends.a_r * model.lambda;
  model.gap = 2.0 * model.j_eff;
  model.tau = std::numbers::pi / std::abs(model.gap);
  return model;
}

EndCouplings equal_time_end_couplings(const CouplingPattern& pattern, double xi) {
  if (!(xi > 0.0)) {
    throw ValidationError("xi = " + round_trip(xi) + " must be positive");
  }
  const double lambda = lambda_closed_form(pattern);
  if (lambda == 0.0 || !std::isfinite(lambda)) {
    throw NumericalError("cannot rescale end couplings: Lambda_N = " + g12(lambda));
  }
  return EndCouplings::symmetric(xi / std::sqrt(std::abs(lambda)));
}

}  // namespace qst
