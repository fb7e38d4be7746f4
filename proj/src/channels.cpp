#include "qclone/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "qclone/povm.hpp"

namespace qclone::channels {

namespace {

void requireProbability(double p, const char* where) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument(std::string(where) + ": p must lie in [0, 1]");
}

double overlap2(const Vector& a, const Vector& b) {
  return std::norm((a.adjoint() * b)(0, 0));
}

const povm::Povm& cachedTetrahedron() {
  static const povm::Povm tet = povm::tetrahedronPovm();
  return tet;
}

const povm::Povm& cachedIncompleteBell() {
  static const povm::Povm bell = povm::incompleteBellPovm();
  return bell;
}

const std::array<Vector, 4>& cachedBellBasis() {
  static const std::array<Vector, 4> bells = cloner::bellBasis();
  return bells;
}

const Vector& cachedEstimationSeed() {
  static const Vector seed = povm::xiSeed(povm::kXiMax);
  return seed;
}

}  // namespace

double fDirect(double p) {
  requireProbability(p, "fDirect");
  return (1.0 + p) / 2.0;
}

double fClassicalAt(double p, double mu) {
  requireProbability(p, "fClassicalAt");
  return p * (1.0 - mu * mu / 2.0) +
         (1.0 - p) * tradeoff::asymGAnalytic(mu);
}

double optimalMu(double p) {
  requireProbability(p, "optimalMu");
  const auto objective = [p](double mu) { return fClassicalAt(p, mu); };

  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = objective(c), fd = objective(d);
  while (b - a > 1e-10) {
    // >= so that rounding ties keep the left subinterval; otherwise a
    // maximum at the left boundary makes the bracket drift off it once the
    // objective goes numerically flat.
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = objective(d);
    }
  }
  const double m = (a + b) / 2.0;

  // Comparison-based search cannot localize a smooth maximum better than
  // ~sqrt(eps); one parabolic fit over a stride where objective differences
  // are well above rounding recovers ~1e-9 accuracy.  Skipped when the
  // maximum sits at the boundary or the fit is degenerate.
  const double h = 1e-5;
  if (m - h >= 0.0 && m + h <= 1.0) {
    const double fm = objective(m);
    const double fp = objective(m + h);
    const double fn = objective(m - h);
    const double denom = fp - 2.0 * fm + fn;
    if (denom < -1e-14) {
      const double vertex = m - h / 2.0 * (fp - fn) / denom;
      if (std::abs(vertex - m) <= h) return vertex;
    }
  }
  return m;
}

double fClassical(double p) { return fClassicalAt(p, optimalMu(p)); }

double fQuantumMemory(double p) {
  requireProbability(p, "fQuantumMemory");
  return (2.0 + p) / 3.0;
}

const std::array<ReversalEntry, 3>& symReversalTable() {
  static const std::array<ReversalEntry, 3> table = [] {
    const auto& bells = cachedBellBasis();
    const cloner::ClonerParams params = cloner::symmetricParams();
    std::array<ReversalEntry, 3> out;
    for (int k = 0; k < 3; ++k) {
      const cloner::BellLabel label = cloner::kBellLabels[k + 1];
      const Vector& bell = bells[k + 1];

      // The collapse phi -> <bell|_{C1,C2} (x) I_AC |cloner(phi)> is linear
      // in phi; assemble its matrix from the basis inputs.
      Matrix collapse(2, 2);
      for (int col = 0; col < 2; ++col) {
        Vector basis = Vector::Zero(2);
        basis(col) = 1.0;
        const cloner::CloneTriple t =
            cloner::applyCloner(qmath::PureState(1, basis), params);
        collapse.col(col) = qmath::partialInner(bell, t.state.amps(), 2);
      }

      const Matrix gram = collapse.adjoint() * collapse;
      const double s2 = gram.trace().real() / 2.0;
      if (s2 < 1e-6 ||
          (gram - s2 * qmath::identity(2)).norm() > 1e-12)
        throw std::logic_error(
            "symReversalTable: collapse is not proportional to a unitary");
      const Matrix correction = collapse.adjoint() / std::sqrt(s2);

      qmath::Rng rng = qmath::streamRng(7, static_cast<std::uint64_t>(k));
      for (int i = 0; i < 100; ++i) {
        const qmath::PureState phi = qmath::haarState(rng);
        const cloner::CloneTriple t = cloner::applyCloner(phi, params);
        Vector chi = qmath::partialInner(bell, t.state.amps(), 2);
        chi.normalize();
        if (overlap2(phi.amps(), correction * chi) < 1.0 - 1e-12)
          throw std::logic_error(
              "symReversalTable: correction fails to restore the input");
      }
      out[k] = ReversalEntry{label, correction};
    }
    return out;
  }();
  return table;
}

tradeoff::McEstimate simulateStrategy(Strategy strategy, double p,
                                      long long n, std::uint64_t seed,
                                      std::optional<double> mu) {
  requireProbability(p, "simulateStrategy");
  if (mu && strategy != Strategy::ClassicalAssist)
    throw std::invalid_argument(
        "simulateStrategy: mu applies only to the classical-assist strategy");

  switch (strategy) {
    case Strategy::Direct:
      return tradeoff::monteCarloMean(n, seed, [p](qmath::Rng& rng) {
        // Arrived: exact transmission.  Lost: the receiver holds I/2, whose
        // fidelity to any input is 1/2.
        return qmath::uniform01(rng) < p ? 1.0 : 0.5;
      });

    case Strategy::ClassicalAssist: {
      const cloner::ClonerParams params =
          cloner::paramsFromMu(mu ? *mu : optimalMu(p));
      const povm::Povm& tet = cachedTetrahedron();
      return tradeoff::monteCarloMean(n, seed, [p, params,
                                                &tet](qmath::Rng& rng) {
        const qmath::PureState phi = qmath::haarState(rng);
        const cloner::CloneTriple t = cloner::applyCloner(phi, params);
        if (qmath::uniform01(rng) < p)
          return qmath::fidelityToPure(cloner::reducedClone1(t), phi);
        const Matrix rho = cloner::reducedPair(t, 1, 2).mat();
        const int outcome = povm::sampleOutcome(rho, tet, rng);
        return overlap2(*tet.effects[outcome].guess, phi.amps());
      });
    }

    case Strategy::QuantumMemory: {
      const auto& table = symReversalTable();
      return tradeoff::monteCarloMean(n, seed, [p, &table](qmath::Rng& rng) {
        const qmath::PureState phi = qmath::haarState(rng);
        const cloner::CloneTriple t =
            cloner::applyCloner(phi, cloner::symmetricParams());
        const Matrix rhoClones = cloner::reducedPair(t, 0, 1).mat();
        if (qmath::uniform01(rng) < p) {
          // Arrived: incomplete Bell measurement on the retained clones,
          // correction fed forward to the anticlone.
          const int outcome =
              povm::sampleOutcome(rhoClones, cachedIncompleteBell(), rng);
          const auto& entry = table[outcome];
          Vector chi = qmath::partialInner(
              cachedBellBasis()[static_cast<int>(entry.outcome)],
              t.state.amps(), 2);
          chi.normalize();
          return overlap2(phi.amps(), entry.correction * chi);
        }
        // Lost: best estimate from the clone pair (xi = sqrt(3) family).
        const Matrix u = povm::sampleCovariant(
            rhoClones, cachedEstimationSeed(),
            povm::Support::SymmetricSubspace, rng);
        return overlap2(phi.amps(), u.col(0));
      });
    }
  }
  throw std::logic_error("simulateStrategy: unknown strategy");
}

double fStoragePlain(double p) {
  requireProbability(p, "fStoragePlain");
  return (1.0 + p) / 2.0;
}

double fStorageCloned(double p) {
  requireProbability(p, "fStorageCloned");
  return (1.0 + 2.0 * p) * (9.0 - 5.0 * p + 2.0 * p * p) / 18.0;
}

double storageAdvantage(double p) {
  return fStorageCloned(p) - fStoragePlain(p);
}

tradeoff::McEstimate simulateStorage(double p, long long n,
                                     std::uint64_t seed, bool fullState) {
  requireProbability(p, "simulateStorage");
  if (!fullState) {
    // Every branch fidelity is input-independent, so only the survival
    // pattern needs to be drawn.
    return tradeoff::monteCarloMean(n, seed, [p](qmath::Rng& rng) {
      const bool c1 = qmath::uniform01(rng) < p;
      const bool c2 = qmath::uniform01(rng) < p;
      const bool ac = qmath::uniform01(rng) < p;
      if (c1 && c2 && ac) return 1.0;
      if (c1 || c2) return 5.0 / 6.0;
      if (ac) return 5.0 / 9.0;
      return 0.5;
    });
  }

  return tradeoff::monteCarloMean(n, seed, [p](qmath::Rng& rng) {
    const qmath::PureState phi = qmath::haarState(rng);
    const cloner::CloneTriple t =
        cloner::applyCloner(phi, cloner::symmetricParams());
    const bool c1 = qmath::uniform01(rng) < p;
    const bool c2 = qmath::uniform01(rng) < p;
    const bool ac = qmath::uniform01(rng) < p;

    if (c1 && c2 && ac) {
      // Everything survived: Bell measurement on (C2, AC) plus the Pauli
      // correction on C1 reverses the cloner exactly.
      const auto terms = cloner::bellCoefficients(cloner::symmetricParams());
      double u = qmath::uniform01(rng);
      int outcome = 3;
      for (int b = 0; b < 3; ++b) {
        const double w = std::norm(terms[b].coefficient);
        if (u < w) {
          outcome = b;
          break;
        }
        u -= w;
      }
      const qmath::PureState restored =
          tradeoff::asymReversal(t, cloner::kBellLabels[outcome]);
      return overlap2(phi.amps(), restored.amps());
    }
    if (c1 || c2)
      return qmath::fidelityToPure(
          c1 ? cloner::reducedClone1(t) : cloner::reducedClone2(t), phi);
    if (ac)
      return qmath::fidelityToPure(
          cloner::unotChannel(cloner::reducedAnticlone(t)), phi);
    // Nothing survived: the maximally mixed guess scores 1/2 exactly.
    return 0.5;
  });
}

}  // namespace qclone::channels
