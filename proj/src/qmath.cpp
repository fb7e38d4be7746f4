#include "qclone/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qclone::qmath {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

PureState::PureState(int nQubits, Vector amps)
    : nQubits_(nQubits), amps_(std::move(amps)) {
  require(nQubits_ >= 1 && nQubits_ <= 3, "PureState: 1..3 qubits");
  require(amps_.size() == (Eigen::Index{1} << nQubits_),
          "PureState: amplitude count != 2^n");
  require(std::abs(amps_.norm() - 1.0) <= kStructuralTol,
          "PureState: not normalized");
}

DensityMatrix::DensityMatrix(int nQubits, Matrix mat, bool /*checked*/)
    : nQubits_(nQubits), mat_(std::move(mat)) {
  require(nQubits_ >= 1 && nQubits_ <= 2, "DensityMatrix: 1..2 qubits");
  const Eigen::Index d = Eigen::Index{1} << nQubits_;
  require(mat_.rows() == d && mat_.cols() == d, "DensityMatrix: wrong shape");
  require((mat_ - mat_.adjoint()).norm() <= kStructuralTol,
          "DensityMatrix: not Hermitian");
  require(std::abs(mat_.trace().real() - 1.0) <= kStructuralTol &&
              std::abs(mat_.trace().imag()) <= kStructuralTol,
          "DensityMatrix: trace != 1");
}

DensityMatrix::DensityMatrix(int nQubits, Matrix mat)
    : DensityMatrix(nQubits, std::move(mat), true) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(mat_, Eigen::EigenvaluesOnly);
  require(es.eigenvalues().minCoeff() >= -kPsdTol,
          "DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::trusted(int nQubits, Matrix mat) {
  return DensityMatrix(nQubits, std::move(mat), true);
}

BlochDirection::BlochDirection(double x_, double y_, double z_)
    : x(x_), y(y_), z(z_) {
  require(std::abs(std::sqrt(x * x + y * y + z * z) - 1.0) <= kStructuralTol,
          "BlochDirection: not a unit vector");
}

SphereAngles::SphereAngles(double theta_, double phi_)
    : theta(theta_), phi(phi_) {
  require(theta >= 0.0 && theta <= kPi, "SphereAngles: theta out of [0, pi]");
  require(phi >= 0.0 && phi < 2.0 * kPi, "SphereAngles: phi out of [0, 2*pi)");
}

BlochDirection SphereAngles::direction() const {
  return BlochDirection(std::sin(theta) * std::cos(phi),
                        std::sin(theta) * std::sin(phi), std::cos(theta));
}

Matrix pauliX() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauliY() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauliZ() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix identity(Eigen::Index dim) { return Matrix::Identity(dim, dim); }

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector kronVec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix partialTrace(const Matrix& m, int nQubits,
                    const std::vector<int>& keep) {
  const Eigen::Index dim = Eigen::Index{1} << nQubits;
  require(m.rows() == dim && m.cols() == dim, "partialTrace: wrong shape");
  for (std::size_t k = 0; k < keep.size(); ++k) {
    require(keep[k] >= 0 && keep[k] < nQubits, "partialTrace: bad index");
    require(k == 0 || keep[k] > keep[k - 1],
            "partialTrace: indices must be ascending");
  }
  std::vector<int> traced;
  for (int q = 0; q < nQubits; ++q)
    if (std::find(keep.begin(), keep.end(), q) == keep.end())
      traced.push_back(q);

  const int nKeep = static_cast<int>(keep.size());
  const int nTr = static_cast<int>(traced.size());
  // Qubit 0 is the most significant bit of the amplitude index.
  auto interleave = [&](Eigen::Index a, Eigen::Index t) {
    Eigen::Index idx = 0;
    for (int k = 0; k < nKeep; ++k)
      idx |= ((a >> (nKeep - 1 - k)) & 1) << (nQubits - 1 - keep[k]);
    for (int k = 0; k < nTr; ++k)
      idx |= ((t >> (nTr - 1 - k)) & 1) << (nQubits - 1 - traced[k]);
    return idx;
  };

  const Eigen::Index dOut = Eigen::Index{1} << nKeep;
  const Eigen::Index dTr = Eigen::Index{1} << nTr;
  Matrix out = Matrix::Zero(dOut, dOut);
  for (Eigen::Index a = 0; a < dOut; ++a)
    for (Eigen::Index b = 0; b < dOut; ++b)
      for (Eigen::Index t = 0; t < dTr; ++t)
        out(a, b) += m(interleave(a, t), interleave(b, t));
  return out;
}

Vector partialInner(const Vector& probe4, const Vector& state8, int keep) {
  require(probe4.size() == 4 && state8.size() == 8,
          "partialInner: expects a 2-qubit probe and a 3-qubit state");
  require(keep >= 0 && keep <= 2, "partialInner: keep out of range");
  const int qa = keep == 0 ? 1 : 0;
  const int qb = keep == 2 ? 1 : 2;
  Vector out = Vector::Zero(2);
  for (int b = 0; b < 8; ++b) {
    const int bitKeep = (b >> (2 - keep)) & 1;
    const int bitA = (b >> (2 - qa)) & 1;
    const int bitB = (b >> (2 - qb)) & 1;
    out(bitKeep) += std::conj(probe4(bitA * 2 + bitB)) * state8(b);
  }
  return out;
}

double fidelityToPure(const Matrix& rho, const Vector& psi) {
  return (psi.adjoint() * rho * psi)(0, 0).real();
}

double fidelityToPure(const DensityMatrix& rho, const PureState& psi) {
  require(rho.dim() == psi.dim(), "fidelityToPure: dimension mismatch");
  return fidelityToPure(rho.mat(), psi.amps());
}

Matrix uOmega(const SphereAngles& angles) {
  return su2FromAngles(angles.theta, angles.phi, 0.0);
}

Matrix su2FromAngles(double theta, double phi, double chi) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  const Complex ep = std::polar(1.0, -phi / 2), em = std::polar(1.0, phi / 2);
  const Complex gp = std::polar(1.0, -chi / 2), gm = std::polar(1.0, chi / 2);
  Matrix u(2, 2);
  u << ep * c * gp, -ep * s * gm, em * s * gp, em * c * gm;
  return u;
}

std::array<double, 3> blochVector(const Matrix& rho) {
  return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(),
          (rho(0, 0) - rho(1, 1)).real()};
}

std::array<double, 3> blochVector(const DensityMatrix& rho) {
  require(rho.nQubits() == 1, "blochVector: needs a 1-qubit state");
  return blochVector(rho.mat());
}

double frobeniusDistance(const Matrix& a, const Matrix& b) {
  return (a - b).norm();
}

bool equalUpToGlobalPhase(const Vector& a, const Vector& b, double tol) {
  if (a.size() != b.size()) return false;
  Eigen::Index imax = 0;
  a.cwiseAbs().maxCoeff(&imax);
  if (std::abs(a(imax)) == 0.0) return b.norm() <= tol;
  const Complex phase = std::abs(b(imax)) == 0.0
                            ? Complex(1, 0)
                            : (b(imax) / a(imax)) /
                                  std::abs(b(imax) / a(imax));
  return (a * phase - b).norm() <= tol;
}

namespace {
// SplitMix64; decorrelates the per-stream seeds handed to mt19937_64.
std::uint64_t splitMix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace

Rng streamRng(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed;
  std::uint64_t mixed = splitMix64(s);
  s = mixed ^ (stream * 0xD1B54A32D192ED03ULL + 0x2545F4914F6CDD1DULL);
  return Rng(splitMix64(s));
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

SphereAngles haarAngles(Rng& rng) {
  const double x = 2.0 * uniform01(rng) - 1.0;  // cos(theta) uniform
  double phi = 2.0 * kPi * uniform01(rng);
  if (phi >= 2.0 * kPi) phi = 0.0;
  return SphereAngles(std::acos(x), phi);
}

PureState haarState(Rng& rng) {
  const SphereAngles a = haarAngles(rng);
  Vector v(2);
  v << std::cos(a.theta / 2),
      std::polar(std::sin(a.theta / 2), a.phi);
  return PureState(1, std::move(v));
}

Matrix haarSu2(Rng& rng) {
  const SphereAngles a = haarAngles(rng);
  const double chi = 4.0 * kPi * uniform01(rng);
  return su2FromAngles(a.theta, a.phi, chi);
}

QuadratureRule1D gaussLegendre(int n) {
  require(n >= 1, "gaussLegendre: n >= 1");
  QuadratureRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on P_n from the Chebyshev initial guess.
  for (int i = 0; i < n; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return rule;
}

namespace {

struct SphereGrid {
  QuadratureRule1D gl;
  int nPhi;
};

SphereGrid sphereGrid(int order) {
  if (order < 1) throw std::invalid_argument("quadrature: order >= 1");
  return {gaussLegendre(order / 2 + 1), order + 1};
}

}  // namespace

double sphereQuadrature(const std::function<double(const SphereAngles&)>& f,
                        int order) {
  const SphereGrid g = sphereGrid(order);
  double sum = 0.0;
  for (std::size_t i = 0; i < g.gl.nodes.size(); ++i) {
    const double theta = std::acos(g.gl.nodes[i]);
    double inner = 0.0;
    for (int j = 0; j < g.nPhi; ++j)
      inner += f(SphereAngles(theta, 2.0 * kPi * j / g.nPhi));
    sum += g.gl.weights[i] * inner / g.nPhi;
  }
  return sum / 2.0;  // GL weights integrate d(cos theta) over [-1, 1]
}

Matrix sphereQuadratureMatrix(
    const std::function<Matrix(const SphereAngles&)>& f, int order) {
  const SphereGrid g = sphereGrid(order);
  Matrix sum;
  bool first = true;
  for (std::size_t i = 0; i < g.gl.nodes.size(); ++i) {
    const double theta = std::acos(g.gl.nodes[i]);
    for (int j = 0; j < g.nPhi; ++j) {
      const Matrix val = f(SphereAngles(theta, 2.0 * kPi * j / g.nPhi));
      const double w = g.gl.weights[i] / (2.0 * g.nPhi);
      if (first) {
        sum = w * val;
        first = false;
      } else {
        sum += w * val;
      }
    }
  }
  return sum;
}

double su2Quadrature(const std::function<double(const Matrix&)>& f,
                     int order) {
  const SphereGrid g = sphereGrid(order);
  const int nChi = order + 1;
  double sum = 0.0;
  for (std::size_t i = 0; i < g.gl.nodes.size(); ++i) {
    const double theta = std::acos(g.gl.nodes[i]);
    for (int j = 0; j < g.nPhi; ++j)
      for (int k = 0; k < nChi; ++k)
        sum += g.gl.weights[i] *
               f(su2FromAngles(theta, 2.0 * kPi * j / g.nPhi,
                               4.0 * kPi * k / nChi));
  }
  return sum / (2.0 * g.nPhi * nChi);
}

Matrix su2QuadratureMatrix(const std::function<Matrix(const Matrix&)>& f,
                           int order) {
  const SphereGrid g = sphereGrid(order);
  const int nChi = order + 1;
  Matrix sum;
  bool first = true;
  for (std::size_t i = 0; i < g.gl.nodes.size(); ++i) {
    const double theta = std::acos(g.gl.nodes[i]);
    for (int j = 0; j < g.nPhi; ++j)
      for (int k = 0; k < nChi; ++k) {
        const Matrix val = f(su2FromAngles(theta, 2.0 * kPi * j / g.nPhi,
                                           4.0 * kPi * k / nChi));
        const double w = g.gl.weights[i] / (2.0 * g.nPhi * nChi);
        if (first) {
          sum = w * val;
          first = false;
        } else {
          sum += w * val;
        }
      }
  }
  return sum;
}

}  // namespace qclone::qmath
