#include "qclone/cloner.hpp"

#include <cmath>
#include <stdexcept>

namespace qclone::cloner {

namespace {

const Complex kI(0.0, 1.0);

}  // namespace

ClonerParams paramsFromMu(double mu) {
  if (!(mu >= 0.0 && mu <= 1.0))
    throw std::invalid_argument("paramsFromMu: mu must lie in [0, 1]");
  const double nu = (-mu + std::sqrt(4.0 - 3.0 * mu * mu)) / 2.0;
  return {mu, nu};
}

ClonerParams symmetricParams() {
  const double w = 1.0 / std::sqrt(3.0);
  return {w, w};
}

CloneTriple applyCloner(const PureState& phi, const ClonerParams& p) {
  if (phi.nQubits() != 1)
    throw std::invalid_argument("applyCloner: input must be one qubit");
  const Vector& a = phi.amps();
  const double s = 1.0 / std::sqrt(2.0);

  // Amplitude of |b0 b1 b2> with qubits (C1, C2, AC); the singlet weight of
  // |x y> is s for (0,1), -s for (1,0), 0 otherwise.
  auto singlet = [s](int x, int y) {
    if (x == 0 && y == 1) return s;
    if (x == 1 && y == 0) return -s;
    return 0.0;
  };
  Vector out(8);
  for (int b0 = 0; b0 < 2; ++b0)
    for (int b1 = 0; b1 < 2; ++b1)
      for (int b2 = 0; b2 < 2; ++b2)
        out(b0 * 4 + b1 * 2 + b2) = p.nu * a(b0) * singlet(b1, b2) +
                                    p.mu * a(b1) * singlet(b0, b2);
  return CloneTriple{PureState(3, std::move(out))};
}

std::pair<double, double> cloneFidelities(const ClonerParams& p) {
  return {1.0 - p.mu * p.mu / 2.0, 1.0 - p.nu * p.nu / 2.0};
}

namespace {

DensityMatrix marginal(const CloneTriple& t, const std::vector<int>& keep) {
  const Vector& v = t.state.amps();
  const Matrix rho = v * v.adjoint();
  Matrix m = qmath::partialTrace(rho, 3, keep);
  m = ((m + m.adjoint()) / 2.0).eval();  // scrub rounding asymmetry
  return DensityMatrix::trusted(static_cast<int>(keep.size()), std::move(m));
}

}  // namespace

DensityMatrix reducedClone1(const CloneTriple& t) { return marginal(t, {0}); }
DensityMatrix reducedClone2(const CloneTriple& t) { return marginal(t, {1}); }
DensityMatrix reducedAnticlone(const CloneTriple& t) {
  return marginal(t, {2});
}

DensityMatrix reducedPair(const CloneTriple& t, int qa, int qb) {
  if (!(0 <= qa && qa < qb && qb <= 2))
    throw std::invalid_argument("reducedPair: need ascending qubits in 0..2");
  return marginal(t, {qa, qb});
}

Vector orthogonalState(const Vector& phi) {
  Vector perp(2);
  perp << -std::conj(phi(1)), std::conj(phi(0));
  return perp;
}

const char* bellName(BellLabel label) {
  switch (label) {
    case BellLabel::PsiMinus: return "psi-";
    case BellLabel::PsiPlus: return "psi+";
    case BellLabel::PhiMinus: return "phi-";
    case BellLabel::PhiPlus: return "phi+";
  }
  return "?";
}

std::array<Vector, 4> bellBasis() {
  const double s = 1.0 / std::sqrt(2.0);
  Vector psiM(4), psiP(4), phiM(4), phiP(4);
  psiM << 0, s, -s, 0;
  psiP << 0, s, s, 0;
  phiM << s, 0, 0, -s;
  phiP << s, 0, 0, s;
  return {psiM, psiP, phiM, phiP};
}

std::array<BellTerm, 4> bellCoefficients(const ClonerParams& p) {
  // nu |phi>|Psi-> expands trivially; mu |phi>_C2 |Psi->_{C1,AC} contributes
  // mu/2 times each Bell state of (C2, AC) with a Pauli acting on C1:
  //   (1/2)[ |phi>|Psi-> + sZ|phi>|Psi+> - sX|phi>|Phi-> + i sY|phi>|Phi+> ].
  const Complex half(0.5, 0.0);
  return {BellTerm{BellLabel::PsiMinus, Complex(p.nu + p.mu / 2.0, 0.0),
                   qmath::identity(2)},
          BellTerm{BellLabel::PsiPlus, half * p.mu, qmath::pauliZ()},
          BellTerm{BellLabel::PhiMinus, -half * p.mu, qmath::pauliX()},
          BellTerm{BellLabel::PhiPlus, kI * half * p.mu, qmath::pauliY()}};
}

DensityMatrix unotChannel(const DensityMatrix& rho) {
  if (rho.nQubits() != 1)
    throw std::invalid_argument("unotChannel: one-qubit states only");
  // Convex-linear extension of |phi> -> anticlone marginal at the symmetric
  // point, applied eigenstate by eigenstate.
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.mat());
  const ClonerParams sym = symmetricParams();
  Matrix out = Matrix::Zero(2, 2);
  for (int k = 0; k < 2; ++k) {
    const PureState eig(1, es.eigenvectors().col(k).normalized());
    out += es.eigenvalues()(k) * reducedAnticlone(applyCloner(eig, sym)).mat();
  }
  out = ((out + out.adjoint()) / 2.0).eval();
  return DensityMatrix::trusted(1, std::move(out));
}

}  // namespace qclone::cloner
