#include "qclone/povm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace qclone::povm {

namespace {

const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

Matrix kron2(const Matrix& u) { return qmath::kron(u, u); }

std::string angleLabel(const qmath::SphereAngles& omega) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "omega(%.6f,%.6f)", omega.theta, omega.phi);
  return buf;
}

}  // namespace

Matrix supportProjector(Support s) {
  if (s == Support::FullTwoQubit) return qmath::identity(4);
  const Vector singlet = cloner::bellBasis()[0];
  return qmath::identity(4) - singlet * singlet.adjoint();
}

Vector pi0Orthogonal() {
  Vector seed = Vector::Zero(4);
  seed(1) = (kSqrt3 + 1.0) / kSqrt2;
  seed(2) = seed(1) * (2.0 - kSqrt3);
  return seed;
}

Vector xiSeed(double xi) {
  if (!(xi >= kXiMin - 1e-12 && xi <= kXiMax + 1e-12))
    throw std::invalid_argument("xiSeed: xi outside [sqrt(3/2), sqrt(3)]");
  Vector seed = Vector::Zero(4);
  seed(0) = xi;
  seed(3) = std::sqrt(std::max(0.0, 3.0 - xi * xi));
  return seed;
}

PovmEffect covariantElement(const Vector& seed,
                            const qmath::SphereAngles& omega) {
  PovmEffect e = covariantElementSu2(seed, qmath::uOmega(omega));
  e.label = angleLabel(omega);
  return e;
}

PovmEffect covariantElementSu2(const Vector& seed, const Matrix& u) {
  const Vector rotated = kron2(u) * seed;
  return PovmEffect{"covariant", rotated * rotated.adjoint(), u.col(0)};
}

std::array<std::array<double, 3>, 4> tetrahedronVertices() {
  const double s2 = std::sqrt(2.0), s6 = std::sqrt(6.0), s8 = std::sqrt(8.0);
  return {{{0.0, 0.0, 1.0},
           {s8 / 3.0, 0.0, -1.0 / 3.0},
           {-s2 / 3.0, s6 / 3.0, -1.0 / 3.0},
           {-s2 / 3.0, -s6 / 3.0, -1.0 / 3.0}}};
}

namespace {

qmath::SphereAngles anglesOf(const std::array<double, 3>& n) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double phi = std::atan2(n[1], n[0]);
  if (phi < 0) phi += kTwoPi;
  if (phi >= kTwoPi) phi = 0.0;
  return qmath::SphereAngles(std::acos(std::clamp(n[2], -1.0, 1.0)), phi);
}

}  // namespace

Povm tetrahedronPovm() {
  const double denom = 6.0 * std::sqrt(6.0) - 2.0 * kSqrt2;
  const double gamma = 13.0 / denom;
  const double delta = (5.0 - 2.0 * kSqrt3) / denom;

  const auto vertices = tetrahedronVertices();
  std::array<Matrix, 4> rot;
  std::array<Vector, 4> antipodal;  // |n_i, -n_i> = (U_i (x) U_i)|01>
  Vector ket01 = Vector::Zero(4);
  ket01(1) = 1.0;
  for (int i = 0; i < 4; ++i) {
    rot[i] = qmath::uOmega(anglesOf(vertices[i]));
    antipodal[i] = kron2(rot[i]) * ket01;
  }

  Povm povm;
  povm.support = Support::FullTwoQubit;
  for (int i = 0; i < 4; ++i) {
    Vector theta = gamma * antipodal[i];
    for (int k = 0; k < 4; ++k)
      if (k != i) theta -= delta * antipodal[k];
    char label[16];
    std::snprintf(label, sizeof(label), "tet-%d", i + 1);
    povm.effects.push_back(
        PovmEffect{label, theta * theta.adjoint(), rot[i].col(0)});
  }

  Matrix sum = Matrix::Zero(4, 4);
  for (const auto& e : povm.effects) sum += e.op;
  povm.proportionality = sum.trace().real() / 4.0;
  if (std::abs(povm.proportionality - 1.0) > 1e-12)
    for (auto& e : povm.effects) e.op /= povm.proportionality;
  povm.completenessResidual = completenessResidual(povm);
  return povm;
}

Povm bellPovm() {
  const auto bells = cloner::bellBasis();
  Povm povm;
  povm.support = Support::FullTwoQubit;
  for (int b = 0; b < 4; ++b)
    povm.effects.push_back(PovmEffect{
        cloner::bellName(cloner::kBellLabels[b]),
        bells[b] * bells[b].adjoint(), std::nullopt});
  povm.completenessResidual = completenessResidual(povm);
  return povm;
}

Povm incompleteBellPovm() {
  const auto bells = cloner::bellBasis();
  Povm povm;
  povm.support = Support::SymmetricSubspace;
  for (int b = 1; b < 4; ++b)  // Psi+, Phi-, Phi+ span the triplet space
    povm.effects.push_back(PovmEffect{
        cloner::bellName(cloner::kBellLabels[b]),
        bells[b] * bells[b].adjoint(), std::nullopt});
  povm.completenessResidual = completenessResidual(povm);
  return povm;
}

int sampleOutcome(const Matrix& rho, const Povm& m, qmath::Rng& rng) {
  std::vector<double> probs;
  probs.reserve(m.effects.size());
  double total = 0.0;
  for (const auto& e : m.effects) {
    const double p = (e.op * rho).trace().real();
    probs.push_back(p);
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument(
        "sampleOutcome: outcome probabilities do not sum to 1 (state off "
        "the POVM support)");
  double u = qmath::uniform01(rng) * total;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    u -= probs[i];
    if (u <= 0.0) return static_cast<int>(i);
  }
  return static_cast<int>(probs.size()) - 1;
}

Matrix sampleCovariant(const Matrix& rho, const Vector& seed, Support support,
                       qmath::Rng& rng) {
  const double onSupport = (supportProjector(support) * rho).trace().real();
  if (std::abs(onSupport - 1.0) > 1e-9)
    throw std::invalid_argument(
        "sampleCovariant: state leaks off the declared support");

  Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
  const double envelope =
      es.eigenvalues().maxCoeff() * seed.squaredNorm();
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const Matrix u = qmath::haarSu2(rng);
    const Vector rotated = kron2(u) * seed;
    const double density = (rotated.adjoint() * rho * rotated)(0, 0).real();
    if (qmath::uniform01(rng) * envelope <= density) return u;
  }
  throw std::runtime_error("sampleCovariant: rejection sampler stalled");
}

double completenessResidual(const Vector& seed, Support support, int order) {
  const Matrix mean = qmath::su2QuadratureMatrix(
      [&seed](const Matrix& u) {
        const Vector rotated = kron2(u) * seed;
        return (rotated * rotated.adjoint()).eval();
      },
      order);
  return qmath::frobeniusDistance(mean, supportProjector(support));
}

double completenessResidual(const Povm& m) {
  Matrix sum = Matrix::Zero(4, 4);
  for (const auto& e : m.effects) sum += e.op;
  return qmath::frobeniusDistance(sum, supportProjector(m.support));
}

}  // namespace qclone::povm
