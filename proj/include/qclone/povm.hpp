#pragma once

#include "qclone/cloner.hpp"
#include "qclone/qmath.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

// Measurements: covariant POVM families generated by rank-one seeds (the
// phi/phi-perp estimation seed and the xi family on the clone pair), the
// discrete tetrahedron POVM, full and incomplete Bell measurements, and
// outcome sampling for all of them.
namespace qclone::povm {

using qmath::Matrix;
using qmath::Vector;

// Subspace on which a POVM resolves the identity.  The xi family is complete
// only on the symmetric (triplet) subspace where both clones live; declaring
// the support explicitly prevents silent probability leakage.
enum class Support { FullTwoQubit, SymmetricSubspace };
Matrix supportProjector(Support s);

struct PovmEffect {
  std::string label;
  Matrix op;                     // 4x4, Hermitian, PSD
  std::optional<Vector> guess;   // 1-qubit estimate tied to this outcome
};

struct Povm {
  std::vector<PovmEffect> effects;
  Support support;
  // Frobenius distance between sum of effects and the support projector,
  // recorded at construction.
  double completenessResidual = 0.0;
  // Measured constant c in sum = c * projector before any rescale; stays 1
  // unless the construction had to renormalize (see tetrahedronPovm).
  double proportionality = 1.0;
};

// Seed |pi0> = ((sqrt3+1)/sqrt2)(|01> + (2-sqrt3)|10>) of the covariant POVM
// that optimally estimates phi from a |phi>|phi-perp> pair; <pi0|pi0> = 4 so
// the family averages to the identity on the full two-qubit space.
Vector pi0Orthogonal();

inline constexpr double kXiMin = 1.2247448713915890;  // sqrt(3/2)
inline constexpr double kXiMax = 1.7320508075688772;  // sqrt(3)

// xi|00> + sqrt(3-xi^2)|11>, squared norm 3; xi in [sqrt(3/2), sqrt(3)].
// The endpoints are the Bell measurement and the optimal two-copy
// estimation POVM on the symmetric subspace.
Vector xiSeed(double xi);

// Effect (U (x) U) |seed><seed| (U (x) U)~ with guess U|0>.  The angle form
// uses the U(1)-fiber section U = uOmega(omega); the SU(2) form is required
// whenever the seed is not invariant under |0>,|1> phase rotations (the xi
// family), since then distinct fiber points give distinct effects.
PovmEffect covariantElement(const Vector& seed,
                            const qmath::SphereAngles& omega);
PovmEffect covariantElementSu2(const Vector& seed, const Matrix& u);

std::array<std::array<double, 3>, 4> tetrahedronVertices();

// Four-outcome discretization of the pi0 family along tetrahedron vertices:
// |Theta_i> = gamma |n_i, -n_i> - delta * sum_{k != i} |n_k, -n_k>, with the
// product-state phase convention |n, -n> := (U_n (x) U_n)|01>.  The sum of
// effects is measured against c * identity; c is recorded and effects are
// rescaled by 1/c if it deviates from 1.
Povm tetrahedronPovm();

// Projectors onto the four Bell states (full space) and onto the three
// symmetric-subspace Bell states Psi+, Phi-, Phi+ (clone-pair support).
Povm bellPovm();
Povm incompleteBellPovm();

// Samples an outcome index with probability tr(effect_i rho).  Throws if the
// probabilities do not sum to 1 within 1e-9 (support violation).
int sampleOutcome(const Matrix& rho, const Povm& m, qmath::Rng& rng);

// Samples U from the continuous outcome density tr(Pi(U) rho) over the Haar
// measure by rejection against Haar proposals with envelope
// M = lambda_max(rho) * <seed|seed>.  Throws if rho leaks off the support.
Matrix sampleCovariant(const Matrix& rho, const Vector& seed, Support support,
                       qmath::Rng& rng);

// || group mean of the covariant family - support projector ||_F, via the
// full SU(2) rule (exact for these degree-2 seeds at the default order).
double completenessResidual(const Vector& seed, Support support,
                            int order = 8);
double completenessResidual(const Povm& m);

}  // namespace qclone::povm
