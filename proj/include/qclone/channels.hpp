#pragma once

#include "qclone/cloner.hpp"
#include "qclone/qmath.hpp"
#include "qclone/tradeoff.hpp"

#include <array>
#include <cstdint>
#include <optional>

// Two operational scenarios where splitting a qubit into a transmitted part
// and a measured/retained part pays off: transmission over a lossy channel
// (each send arrives with probability p) and protection of a quantum memory
// whose cells are erased independently.  Closed-form fidelities, the optimal
// asymmetry, the feed-forward reversal table for the incomplete Bell
// measurement, and Monte Carlo simulations of every protocol.
namespace qclone::channels {

using qmath::Matrix;
using qmath::Vector;

// ---- lossy transmission --------------------------------------------------

// Send the qubit as is: it arrives intact with probability p, otherwise the
// receiver holds the maximally mixed state.  F = (1 + p) / 2.
double fDirect(double p);

// Classical-assisted transmission at asymmetry mu: clone, send C1, measure
// the (C2, anticlone) pair and broadcast the estimate as a fallback.
// F = p (1 - mu^2/2) + (1 - p) asymGAnalytic(mu).
double fClassicalAt(double p, double mu);

// Asymmetry maximizing fClassicalAt(p, .): golden-section search on [0, 1]
// (the objective is strictly unimodal) followed by one parabolic refinement,
// which pushes past the ~sqrt(eps) flat-region limit of comparison-based
// search.  Tests cross-check mu*^2 = (2/3)(1 - 2p / sqrt(5p^2 - 2p + 1)).
double optimalMu(double p);

// fClassicalAt(p, optimalMu(p)) = (3 + p + sqrt(5p^2 - 2p + 1)) / 6.
double fClassical(double p);

// Quantum-memory transmission: clone symmetrically, send the anticlone, keep
// both clones.  If it arrives, the incomplete Bell measurement on the clones
// plus a feed-forward correction on the anticlone restores the input
// exactly; if it is lost, the optimal estimation measurement on the clone
// pair still reaches 2/3.  F = p + (1 - p) 2/3 = (2 + p) / 3.
double fQuantumMemory(double p);

// Correction for each incomplete-Bell outcome b on the clone pair of the
// symmetric cloner: the collapsed anticlone is K_b |phi> with
// K_b = W_b^dag / sqrt(3), so applying W_b restores |phi> for every input
// and every outcome fires with probability exactly 1/3.  The table is
// assembled numerically from the collapse map on basis inputs, checked to be
// proportional to a unitary, and verified on a batch of Haar states; throws
// std::logic_error if any of that fails.  Entries follow the effect order of
// incompleteBellPovm (Psi+, Phi-, Phi+).
struct ReversalEntry {
  cloner::BellLabel outcome;
  Matrix correction;  // 2x2 unitary
};
const std::array<ReversalEntry, 3>& symReversalTable();

enum class Strategy { Direct, ClassicalAssist, QuantumMemory };

// Simulates n transmissions of Haar-random inputs under the strategy and
// scores the receiver's output fidelity.  mu selects the classical-assist
// asymmetry (defaults to optimalMu(p)) and is rejected for the other
// strategies.
tradeoff::McEstimate simulateStrategy(Strategy strategy, double p,
                                      long long n, std::uint64_t seed,
                                      std::optional<double> mu = std::nullopt);

// ---- memory-erasure protection --------------------------------------------
// Each stored qubit independently survives with probability p.

// Store the qubit bare: (1 + p) / 2.
double fStoragePlain(double p);

// Store all three cloner outputs and recover from whatever survives:
//   all three        -> exact reversal,          F = 1
//   at least a clone -> keep the clone,          F = 5/6
//   anticlone only   -> re-invert (U-NOT twice), F = 5/9
//   nothing          -> maximally mixed guess,   F = 1/2
// Total: (1 + 2p)(9 - 5p + 2p^2) / 18.
double fStorageCloned(double p);

// fStorageCloned - fStoragePlain; nonnegative on [0, 1], maximal at p = 1/3
// with value 8/243.
double storageAdvantage(double p);

// Simulates the cloned-storage protocol with i.i.d. survival draws.  The
// default scores each survival pattern by its (input-independent) branch
// fidelity; fullState = true instead runs the three-qubit pipeline per
// trial -- clone a Haar input, apply the losses, run the matching recovery
// on the actual quantum state -- and scores the recovered fidelity.
tradeoff::McEstimate simulateStorage(double p, long long n,
                                     std::uint64_t seed,
                                     bool fullState = false);

}  // namespace qclone::channels
