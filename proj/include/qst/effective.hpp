#pragma once

// Channel-mediated effective two-level quantities: the coupling factor
// Lambda by four independent routes, on-site shifts h_S/h_R, and the
// effective model (J_eff, gap, transfer time).

#include <span>

#include "qst/chain.hpp"
#include "qst/spectral.hpp"

namespace qst {

// Spectral sum Lambda = sum_k v_{k,1} v_{k,N} / eps_k over the channel
// decomposition. Throws NumericalError if any |eps_k| <= 1e-12 (resonant
// spectrum; signals odd N or pathological input).
double lambda_spectral(const EigenDecomposition& channel);

// Closed form (-1)^{M+1} (J_2 J_4 ... J_{N-2}) / (J_1 J_3 ... J_{N-1}),
// M = N/2. Evaluated with scaled mantissa/exponent accumulation, so
// staggered patterns spanning b^{+-M} neither overflow nor underflow.
double lambda_closed_form(const CouplingPattern& pattern);

// Centered recursion: Lambda_{M,0} = 1/J_M, then
// Lambda_{M,j} = -(Lambda_{M,j-1} J_{M-j} J_{M+j})^{-1} up to j = M-1.
double lambda_recursion_centered(const CouplingPattern& pattern);

// Two-step recursion over odd i: Lambda_2 = 1/J_1, then
// Lambda_{i+1} = -(J_{i-1}/J_i) Lambda_{i-1}.
double lambda_recursion_appendix(const CouplingPattern& pattern);

// Closed form on a raw coupling sequence (odd length, nonzero finite
// entries). Admits negative entries so virtual chains such as
// (a, 1/Lambda, a) compose.
double lambda_product(std::span<const double> couplings);

struct OnsiteShifts {
  double h_s;  // sum_k v_{k,1}^2 / eps_k
  double h_r;  // sum_k v_{k,N}^2 / eps_k
};

// Second-order on-site shifts. Zero (<= 1e-10) for zero-field channels by
// particle-hole symmetry; summed pairwise so the cancellation is clean.
OnsiteShifts onsite_shifts(const EigenDecomposition& channel);

struct EffectiveModel {
  double h_s;
  double h_r;
  double lambda;  // units 1/J
  double j_eff;   // -a_S a_R Lambda
  double gap;     // delta_lambda = 2 J_eff
  double tau;     // pi / |gap|
};

EffectiveModel effective_two_level(const CouplingPattern& pattern, const EndCouplings& ends);

// End couplings a_S = a_R = xi / sqrt(|Lambda_N|), which makes the
// pattern's transfer time equal pi/(2 xi^2) -- the uniform channel's time
// at a = xi.
EndCouplings equal_time_end_couplings(const CouplingPattern& pattern, double xi);

}  // namespace qst
