#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

// Small dense complex linear algebra, Bloch-sphere geometry, Haar sampling and
// the quadrature rules used by every other module.  Dimensions never exceed
// 8x8, so everything is dynamic-size Eigen without further ceremony.
namespace qclone::qmath {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Structural identities (norms, Hermiticity, unitarity) hold to this bound.
inline constexpr double kStructuralTol = 1e-12;
// Eigenvalues of physical operators may dip this far below zero.
inline constexpr double kPsdTol = 1e-10;

// Normalized pure state on 1..3 qubits.  Qubit 0 is the leftmost tensor
// factor (most significant bit of the amplitude index).
class PureState {
 public:
  PureState(int nQubits, Vector amps);
  int nQubits() const { return nQubits_; }
  Eigen::Index dim() const { return amps_.size(); }
  const Vector& amps() const { return amps_; }

 private:
  int nQubits_;
  Vector amps_;
};

// Unit-trace Hermitian positive-semidefinite operator on 1..2 qubits.
class DensityMatrix {
 public:
  DensityMatrix(int nQubits, Matrix mat);
  // Skips the eigenvalue check; for internal use where positivity is
  // guaranteed by construction (partial traces of pure states, convex
  // mixtures of validated states).
  static DensityMatrix trusted(int nQubits, Matrix mat);
  int nQubits() const { return nQubits_; }
  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& mat() const { return mat_; }

 private:
  DensityMatrix(int nQubits, Matrix mat, bool checked);
  int nQubits_;
  Matrix mat_;
};

// Unit vector on the Bloch sphere.
struct BlochDirection {
  BlochDirection(double x, double y, double z);
  double x, y, z;
};

// Polar/azimuthal coordinates, theta in [0, pi], phi in [0, 2*pi).
struct SphereAngles {
  SphereAngles(double theta, double phi);
  double theta, phi;
  BlochDirection direction() const;
};

Matrix pauliX();
Matrix pauliY();
Matrix pauliZ();
Matrix identity(Eigen::Index dim);

Matrix kron(const Matrix& a, const Matrix& b);
Vector kronVec(const Vector& a, const Vector& b);

// Traces out the qubits not listed in `keep` (indices ascending, qubit 0 =
// leftmost factor) of a 2^n x 2^n operator.
Matrix partialTrace(const Matrix& m, int nQubits, const std::vector<int>& keep);

// Partial inner product on a three-qubit state: contracts <probe| against
// the two qubits other than `keep` (taken in ascending order), returning the
// unnormalized residual single-qubit vector.  This is the post-measurement
// state, up to normalization, after a rank-one outcome on those two qubits.
Vector partialInner(const Vector& probe4, const Vector& state8, int keep);

double fidelityToPure(const DensityMatrix& rho, const PureState& psi);
double fidelityToPure(const Matrix& rho, const Vector& psi);

// Bloch rotation taking |0> to the state with Bloch direction (theta, phi):
// Rz(phi) * Ry(theta), an SU(2) element.
Matrix uOmega(const SphereAngles& angles);
// Full Euler parameterization Rz(phi) * Ry(theta) * Rz(chi) of SU(2).
Matrix su2FromAngles(double theta, double phi, double chi);

std::array<double, 3> blochVector(const DensityMatrix& rho);
std::array<double, 3> blochVector(const Matrix& rho);

double frobeniusDistance(const Matrix& a, const Matrix& b);
// Compares states after factoring out the phase of the largest-magnitude
// amplitude of `a`, so equal rays compare equal.
bool equalUpToGlobalPhase(const Vector& a, const Vector& b, double tol);

// Deterministic RNG streams: one master seed, substreams derived by counter.
using Rng = std::mt19937_64;
Rng streamRng(std::uint64_t seed, std::uint64_t stream);
double uniform01(Rng& rng);

SphereAngles haarAngles(Rng& rng);
PureState haarState(Rng& rng);
// Haar-distributed SU(2) element (Euler angles with chi in [0, 4*pi)).
Matrix haarSu2(Rng& rng);

// Gauss-Legendre nodes/weights on [-1, 1]; exact for degree <= 2n-1.
struct QuadratureRule1D {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule1D gaussLegendre(int n);

// Mean over the sphere, exact for spherical-harmonic degree <= order.
// Product rule: Gauss-Legendre in cos(theta) x uniform in phi.
double sphereQuadrature(const std::function<double(const SphereAngles&)>& f,
                        int order = 8);
Matrix sphereQuadratureMatrix(
    const std::function<Matrix(const SphereAngles&)>& f, int order = 8);

// Mean over SU(2) (adds a uniform rule in the fiber angle chi).  Needed for
// covariant families whose seed is not invariant under the U(1) fiber; for
// fiber-invariant integrands it agrees with sphereQuadrature.
double su2Quadrature(const std::function<double(const Matrix&)>& f,
                     int order = 8);
Matrix su2QuadratureMatrix(const std::function<Matrix(const Matrix&)>& f,
                           int order = 8);

}  // namespace qclone::qmath
