#pragma once

#include "qclone/qmath.hpp"

#include <array>
#include <utility>

// The 1->2 universal asymmetric cloning machine as an exact pure-state
// isometry: output construction, reduced states, the Bell-basis form used for
// feed-forward reversal, and the approximate U-NOT channel realized by the
// anticlone marginal.
namespace qclone::cloner {

using qmath::Complex;
using qmath::DensityMatrix;
using qmath::Matrix;
using qmath::PureState;
using qmath::Vector;

// Asymmetry weights of the machine; mu^2 + mu*nu + nu^2 = 1.
struct ClonerParams {
  double mu;
  double nu;
};

// nu = (-mu + sqrt(4 - 3 mu^2)) / 2, the unique nonnegative root of the
// normalization condition.  mu = 0 transfers the original to clone 1;
// mu = 1/sqrt(3) is the symmetric machine.
ClonerParams paramsFromMu(double mu);
ClonerParams symmetricParams();

// Three-qubit cloner output; qubit order fixed as (C1, C2, AC) with C1 the
// leftmost tensor factor and AC the anticlone.
struct CloneTriple {
  PureState state;
};

// nu |phi>_C1 |Psi->_{C2,AC} + mu |phi>_C2 |Psi->_{C1,AC}; unit norm by the
// normalization condition.
CloneTriple applyCloner(const PureState& phi, const ClonerParams& p);

// (F_C1, F_C2) = (1 - mu^2/2, 1 - nu^2/2).
std::pair<double, double> cloneFidelities(const ClonerParams& p);

DensityMatrix reducedClone1(const CloneTriple& t);
DensityMatrix reducedClone2(const CloneTriple& t);
DensityMatrix reducedAnticlone(const CloneTriple& t);
// Two-qubit marginal keeping the given triple qubits (ascending, 0=C1, 1=C2,
// 2=AC); used for the clone-pair and clone/anticlone measurements.
DensityMatrix reducedPair(const CloneTriple& t, int qa, int qb);

// The state orthogonal to phi: -conj(phi_1)|0> + conj(phi_0)|1>.
Vector orthogonalState(const Vector& phi);

enum class BellLabel { PsiMinus, PsiPlus, PhiMinus, PhiPlus };
constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::PsiMinus, BellLabel::PsiPlus, BellLabel::PhiMinus,
    BellLabel::PhiPlus};
const char* bellName(BellLabel label);

// |Psi-+> = (|01> -+ |10>)/sqrt(2), |Phi-+> = (|00> -+ |11>)/sqrt(2), ordered
// as kBellLabels.
std::array<Vector, 4> bellBasis();

// One term of the cloner output rewritten over the Bell basis of (C2, AC):
// output = sum_b coefficient_b * (pauli_b |phi>)_C1 (x) |bell_b>_{C2,AC}.
// pauli_b is also the correction that restores |phi> on C1 after outcome b.
struct BellTerm {
  BellLabel label;
  Complex coefficient;
  Matrix pauli;
};
std::array<BellTerm, 4> bellCoefficients(const ClonerParams& p);

// Approximate universal NOT: the convex-linear extension of
// |phi> -> anticlone marginal of the symmetric cloner; Bloch map v -> -v/3.
DensityMatrix unotChannel(const DensityMatrix& rho);

}  // namespace qclone::cloner
