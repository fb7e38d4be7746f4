#include "qclone/tradeoff.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <stdexcept>
#include <vector>

namespace qclone::tradeoff {

namespace {

const double kSqrt3 = std::sqrt(3.0);

const povm::Povm& cachedTetrahedron() {
  static const povm::Povm tet = povm::tetrahedronPovm();
  return tet;
}

double overlap2(const Vector& a, const Vector& b) {
  return std::norm((a.adjoint() * b)(0, 0));
}

}  // namespace

McEstimate monteCarloMean(long long n, std::uint64_t seed,
                          const std::function<double(qmath::Rng&)>& trial) {
  if (n < 100)
    throw std::invalid_argument("monteCarloMean: need at least 100 samples");
  constexpr int kChunks = 16;

  auto runChunk = [&trial, seed](int chunk, long long count) {
    qmath::Rng rng = qmath::streamRng(seed, static_cast<std::uint64_t>(chunk));
    double sum = 0.0, sumSq = 0.0;
    for (long long i = 0; i < count; ++i) {
      const double x = trial(rng);
      sum += x;
      sumSq += x * x;
    }
    return std::array<double, 2>{sum, sumSq};
  };

  std::vector<std::future<std::array<double, 2>>> futures;
  futures.reserve(kChunks);
  for (int c = 0; c < kChunks; ++c) {
    const long long count = n / kChunks + (c < n % kChunks ? 1 : 0);
    futures.push_back(std::async(std::launch::async, runChunk, c, count));
  }
  double sum = 0.0, sumSq = 0.0;
  for (auto& f : futures) {  // fixed combine order => deterministic result
    const auto part = f.get();
    sum += part[0];
    sumSq += part[1];
  }

  const double mean = sum / static_cast<double>(n);
  const double var = std::max(
      0.0, (sumSq - static_cast<double>(n) * mean * mean) /
               static_cast<double>(n - 1));
  return McEstimate{mean, std::sqrt(var / static_cast<double>(n)), n, seed};
}

double banaszekF(double g) {
  if (!(g >= 0.5 - 1e-12 && g <= 2.0 / 3.0 + 1e-12))
    throw std::invalid_argument("banaszekF: G outside [1/2, 2/3]");
  const double a = std::sqrt(std::max(0.0, g - 1.0 / 3.0));
  const double b = std::sqrt(std::max(0.0, 2.0 / 3.0 - g));
  return 1.0 / 3.0 + (a + b) * (a + b);
}

double gOptNCopies(int n) {
  if (n < 1) throw std::invalid_argument("gOptNCopies: need N >= 1");
  return (n + 1.0) / (n + 2.0);
}

double asymGAnalytic(double mu) {
  const cloner::ClonerParams params = cloner::paramsFromMu(mu);
  const povm::Povm& tet = cachedTetrahedron();

  // Route A: average the tetrahedron gain over all input states.
  const double routeA = qmath::sphereQuadrature(
      [&params, &tet](const qmath::SphereAngles& omega) {
        const Vector phi = qmath::uOmega(omega).col(0);
        const cloner::CloneTriple t =
            cloner::applyCloner(qmath::PureState(1, phi), params);
        const Matrix rho = cloner::reducedPair(t, 1, 2).mat();
        double gain = 0.0;
        for (const auto& e : tet.effects)
          gain += (e.op * rho).trace().real() * overlap2(*e.guess, phi);
        return gain;
      });

  // Route B: by covariance the average gain equals the continuous-family
  // gain at the fixed input |0>.
  Vector zero(2);
  zero << 1, 0;
  const cloner::CloneTriple t0 =
      cloner::applyCloner(qmath::PureState(1, zero), params);
  const Matrix rho0 = cloner::reducedPair(t0, 1, 2).mat();
  const Vector seed = povm::pi0Orthogonal();
  const double routeB = qmath::sphereQuadrature(
      [&rho0, &seed, &zero](const qmath::SphereAngles& omega) {
        const povm::PovmEffect e = povm::covariantElement(seed, omega);
        return (e.op * rho0).trace().real() * overlap2(*e.guess, zero);
      });

  if (std::abs(routeA - routeB) > 1e-10)
    throw std::logic_error(
        "asymGAnalytic: quadrature and covariance routes disagree");
  return routeA;
}

McEstimate asymGMonteCarlo(double mu, long long n, std::uint64_t seed) {
  const cloner::ClonerParams params = cloner::paramsFromMu(mu);
  const povm::Povm& tet = cachedTetrahedron();
  return monteCarloMean(n, seed, [&params, &tet](qmath::Rng& rng) {
    const qmath::PureState phi = qmath::haarState(rng);
    const cloner::CloneTriple t = cloner::applyCloner(phi, params);
    const Matrix rho = cloner::reducedPair(t, 1, 2).mat();
    const int outcome = povm::sampleOutcome(rho, tet, rng);
    return overlap2(*tet.effects[outcome].guess, phi.amps());
  });
}

TradeoffPoint symGF(double xi) {
  povm::xiSeed(xi);  // validates the range
  const double eta = std::sqrt(std::max(0.0, 3.0 - xi * xi));
  return TradeoffPoint{2.0 / 3.0 + (2.0 / 9.0) * xi * eta,
                       1.0 / 3.0 + xi * xi / 9.0, StrategyKind::Symmetric,
                       xi};
}

TradeoffPoint asymPoint(double mu) {
  return TradeoffPoint{1.0 - mu * mu / 2.0, asymGAnalytic(mu),
                       StrategyKind::Asymmetric, mu};
}

Matrix symCorrection(const qmath::SphereAngles& omega) {
  return symCorrectionSu2(qmath::uOmega(omega));
}

Matrix symCorrectionSu2(const Matrix& u) {
  return u * u.transpose() * qmath::pauliY();
}

namespace {

// One full symmetric-strategy trial; returns (gain score, output fidelity).
std::pair<double, double> symPipelineTrial(double xi, qmath::Rng& rng) {
  const Vector seed = povm::xiSeed(xi);
  const qmath::PureState phi = qmath::haarState(rng);
  const cloner::CloneTriple t =
      cloner::applyCloner(phi, cloner::symmetricParams());
  const Matrix rhoClones = cloner::reducedPair(t, 0, 1).mat();

  const Matrix u = povm::sampleCovariant(
      rhoClones, seed, povm::Support::SymmetricSubspace, rng);

  const double gain = overlap2(phi.amps(), u.col(0));

  const Vector probe = qmath::kron(u, u) * seed;
  Vector chi = qmath::partialInner(probe, t.state.amps(), 2);
  chi.normalize();
  const Vector corrected = symCorrectionSu2(u) * chi;
  return {gain, overlap2(phi.amps(), corrected)};
}

}  // namespace

McEstimate symGMonteCarlo(double xi, long long n, std::uint64_t seed) {
  return monteCarloMean(n, seed, [xi](qmath::Rng& rng) {
    return symPipelineTrial(xi, rng).first;
  });
}

McEstimate symFMonteCarlo(double xi, long long n, std::uint64_t seed) {
  return monteCarloMean(n, seed, [xi](qmath::Rng& rng) {
    return symPipelineTrial(xi, rng).second;
  });
}

qmath::PureState asymReversal(const cloner::CloneTriple& t,
                              cloner::BellLabel outcome) {
  const auto bells = cloner::bellBasis();
  // The correction Paulis are independent of the asymmetry weights.
  const auto terms = cloner::bellCoefficients(cloner::symmetricParams());
  const int idx = static_cast<int>(outcome);

  Vector chi = qmath::partialInner(bells[idx], t.state.amps(), 0);
  const double norm = chi.norm();
  if (norm * norm < 1e-12)
    throw std::invalid_argument(
        "asymReversal: outcome has zero probability for this state");
  chi /= norm;
  return qmath::PureState(1, terms[idx].pauli * chi);
}

}  // namespace qclone::tradeoff
