#pragma once

#include "qclone/cloner.hpp"
#include "qclone/povm.hpp"
#include "qclone/qmath.hpp"

#include <cstdint>
#include <functional>

// The gain/disturbance ledger: the single-qubit information/disturbance
// bound, analytic and Monte Carlo estimation fidelity G, quantum output
// fidelity F, and the feed-forward reversal strategies that saturate the
// bound for both the asymmetric-cloner and symmetric-cloner pipelines.
namespace qclone::tradeoff {

using qmath::Matrix;
using qmath::Vector;

// Seeded Monte Carlo result; stdError = sample standard deviation / sqrt(n).
struct McEstimate {
  double mean;
  double stdError;
  long long n;
  std::uint64_t seed;
};

// Splits n across 16 fixed substreams derived from the seed and combines the
// per-chunk sums in index order, so the result is bit-identical regardless
// of scheduling.  Requires n >= 100.
McEstimate monteCarloMean(long long n, std::uint64_t seed,
                          const std::function<double(qmath::Rng&)>& trial);

// Optimal quantum fidelity at estimation fidelity G for one qubit:
// F = 1/3 + (sqrt(G - 1/3) + sqrt(2/3 - G))^2 on the operational domain
// G in [1/2, 2/3] (random guessing already achieves 1/2).
double banaszekF(double g);

// Best estimation fidelity from N copies: (N+1)/(N+2).
double gOptNCopies(int n);

// Mean estimation fidelity of the tetrahedron POVM applied to the
// clone2/anticlone pair of the mu-cloner, averaged over inputs.  Computed by
// sphere quadrature of the pointwise gain and, independently, through the
// covariant family evaluated at |0> (the two routes are cross-checked at
// 1e-10 internally).  Closed form: 1/2 + (sqrt(3)/12) mu sqrt(4 - 3 mu^2).
double asymGAnalytic(double mu);

// Same quantity by full simulation: Haar input, cloner, tetrahedron outcome
// on (C2, AC), guess overlap scored.
McEstimate asymGMonteCarlo(double mu, long long n, std::uint64_t seed);

enum class StrategyKind { Asymmetric, Symmetric };

struct TradeoffPoint {
  double f;  // quantum output fidelity, in [1/2, 1]
  double g;  // estimation fidelity, in [1/2, 2/3]
  StrategyKind strategy;
  double param;  // mu or xi
};

// Closed forms of the symmetric-cloner xi-family strategy:
// G = 1/3 + xi^2/9, F = 2/3 + (2/9) xi sqrt(3 - xi^2); lies on banaszekF
// identically.
TradeoffPoint symGF(double xi);

// The asymmetric strategy's point (F_C1(mu), asymGAnalytic(mu)).
TradeoffPoint asymPoint(double mu);

// Feed-forward correction for the xi-family outcome U: U U^T sigma_Y applied
// to the anticlone.  The angle form evaluates it on the fiber section
// U = uOmega(omega); the SU(2) form is the one the pipeline needs, since
// sampled outcomes carry a fiber angle.
Matrix symCorrection(const qmath::SphereAngles& omega);
Matrix symCorrectionSu2(const Matrix& u);

// Full symmetric pipeline by simulation: symmetric cloner, covariant
// xi-family outcome on the clone pair, guess scored for G; correction
// applied to the anticlone and overlap with the input scored for F.
McEstimate symGMonteCarlo(double xi, long long n, std::uint64_t seed);
McEstimate symFMonteCarlo(double xi, long long n, std::uint64_t seed);

// Applies the Pauli correction for a Bell outcome on (C2, AC) to the
// collapsed C1 state and returns it; reproduces the input exactly.  Throws
// if the outcome has zero probability for this state.
qmath::PureState asymReversal(const cloner::CloneTriple& t,
                              cloner::BellLabel outcome);

}  // namespace qclone::tradeoff
