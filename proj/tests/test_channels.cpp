#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "qclone/channels.hpp"
#include "qclone/cloner.hpp"
#include "qclone/povm.hpp"
#include "qclone/qmath.hpp"
#include "qclone/tradeoff.hpp"

using namespace qclone;
using namespace qclone::channels;
using qmath::Matrix;
using qmath::Vector;

namespace {

// Independent closed forms used as oracles against the optimizer and the
// quadrature-backed objective.
double gClosedForm(double mu) {
  return 0.5 + std::sqrt(3.0) / 12.0 * mu * std::sqrt(4.0 - 3.0 * mu * mu);
}

double muStarClosedForm(double p) {
  const double q = 5.0 * p * p - 2.0 * p + 1.0;
  const double m2 = (2.0 / 3.0) * (1.0 - 2.0 * p / std::sqrt(q));
  return std::sqrt(std::max(0.0, m2));
}

double fClassicalClosedForm(double p) {
  return (3.0 + p + std::sqrt(5.0 * p * p - 2.0 * p + 1.0)) / 6.0;
}

// Survival-pattern expansion of the cloned-storage fidelity.
double fStorageExpansion(double p) {
  const double pAll = p * p * p;
  const double pClone = 2.0 * p - p * p - pAll;      // >= 1 clone, not all
  const double pAcOnly = p * (1.0 - p) * (1.0 - p);  // anticlone alone
  const double pNone = std::pow(1.0 - p, 3);
  return pAll * 1.0 + pClone * 5.0 / 6.0 + pAcOnly * 5.0 / 9.0 + pNone * 0.5;
}

}  // namespace

TEST_CASE("direct transmission fidelity") {
  CHECK(fDirect(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fDirect(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fDirect(0.7) == doctest::Approx(0.85).epsilon(1e-15));
  CHECK_THROWS_AS(fDirect(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(fDirect(1.1), std::invalid_argument);
}

TEST_CASE("classical-assist fidelity at fixed asymmetry") {
  SUBCASE("reduces to the estimation gain when nothing arrives") {
    for (double mu : {0.0, 0.3, 0.7, 1.0})
      CHECK(fClassicalAt(0.0, mu) ==
            doctest::Approx(gClosedForm(mu)).epsilon(1e-10));
  }

  SUBCASE("reduces to the clone fidelity when everything arrives") {
    for (double mu : {0.0, 0.3, 0.7, 1.0})
      CHECK(fClassicalAt(1.0, mu) ==
            doctest::Approx(1.0 - mu * mu / 2.0).epsilon(1e-12));
  }

  SUBCASE("general mixture") {
    for (double p : {0.2, 0.5, 0.8})
      for (double mu : {0.1, 0.5, 0.9}) {
        const double expected =
            p * (1.0 - mu * mu / 2.0) + (1.0 - p) * gClosedForm(mu);
        CHECK(fClassicalAt(p, mu) == doctest::Approx(expected).epsilon(1e-10));
      }
  }

  CHECK_THROWS_AS(fClassicalAt(-0.01, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(fClassicalAt(0.5, 1.5), std::invalid_argument);
}

TEST_CASE("optimal asymmetry matches the closed form") {
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    CHECK(std::abs(optimalMu(p) - muStarClosedForm(p)) <= 1e-8);
  }
  // Pure estimation: the gain-maximizing asymmetry sqrt(2/3).
  CHECK(std::abs(optimalMu(0.0) - std::sqrt(2.0 / 3.0)) <= 1e-8);
  // Perfect channel: send the exact state, no cloning.
  CHECK(std::abs(optimalMu(1.0)) <= 1e-8);
  CHECK(std::abs(optimalMu(0.5) - 0.2652958231725499) <= 1e-8);
}

TEST_CASE("optimal classical-assist fidelity") {
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    CHECK(std::abs(fClassical(p) - fClassicalClosedForm(p)) <= 1e-10);
  }
  CHECK(fClassical(0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
  CHECK(fClassical(1.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(std::abs(fClassical(0.5) - 0.7696723314583158) <= 1e-10);
}

TEST_CASE("strategy ordering over the loss range") {
  for (int i = 0; i <= 50; ++i) {
    const double p = i / 50.0;
    CHECK(fQuantumMemory(p) >= fClassical(p) - 1e-12);
    CHECK(fClassical(p) >= fDirect(p) - 1e-12);
  }
  // Strict separation away from the degenerate endpoints.
  CHECK(fQuantumMemory(0.5) - fClassical(0.5) > 0.01);
  CHECK(fClassical(0.5) - fDirect(0.5) > 0.01);
  // Equalities where the strategies coincide.
  CHECK(std::abs(fClassical(1.0) - fDirect(1.0)) <= 1e-10);
  CHECK(std::abs(fQuantumMemory(0.0) - fClassical(0.0)) <= 1e-10);
}

TEST_CASE("incomplete-Bell reversal table") {
  const auto& table = symReversalTable();
  const povm::Povm bell = povm::incompleteBellPovm();
  REQUIRE(table.size() == 3);

  SUBCASE("entries follow the incomplete-Bell effect order") {
    for (int k = 0; k < 3; ++k)
      CHECK(bell.effects[k].label == cloner::bellName(table[k].outcome));
  }

  SUBCASE("corrections are the expected Paulis up to phase") {
    CHECK(table[0].outcome == cloner::BellLabel::PsiPlus);
    CHECK(qmath::equalUpToGlobalPhase(table[0].correction, qmath::pauliZ(),
                                      1e-12));
    CHECK(table[1].outcome == cloner::BellLabel::PhiMinus);
    CHECK(qmath::equalUpToGlobalPhase(table[1].correction, qmath::pauliX(),
                                      1e-12));
    CHECK(table[2].outcome == cloner::BellLabel::PhiPlus);
    CHECK(qmath::equalUpToGlobalPhase(table[2].correction, qmath::pauliY(),
                                      1e-12));
  }

  SUBCASE("every outcome restores every input exactly") {
    const auto bells = cloner::bellBasis();
    qmath::Rng rng = qmath::streamRng(11, 0);
    for (int i = 0; i < 100; ++i) {
      const qmath::PureState phi = qmath::haarState(rng);
      const cloner::CloneTriple t =
          cloner::applyCloner(phi, cloner::symmetricParams());
      for (const auto& entry : table) {
        Vector chi = qmath::partialInner(
            bells[static_cast<int>(entry.outcome)], t.state.amps(), 2);
        // Each outcome fires with probability exactly 1/3.
        CHECK(chi.squaredNorm() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
        chi.normalize();
        const Vector restored = entry.correction * chi;
        CHECK(std::norm((phi.amps().adjoint() * restored)(0, 0)) >=
              1.0 - 1e-12);
      }
    }
  }
}

TEST_CASE("transmission simulations agree with the closed forms") {
  SUBCASE("direct") {
    const auto est = simulateStrategy(Strategy::Direct, 0.7, 20000, 5);
    CHECK(std::abs(est.mean - 0.85) <= 3.0 * est.stdError);
    CHECK(est.stdError > 0.0);
    const auto again = simulateStrategy(Strategy::Direct, 0.7, 20000, 5);
    CHECK(est.mean == again.mean);  // bit-identical reruns
    const auto other = simulateStrategy(Strategy::Direct, 0.7, 20000, 6);
    CHECK(est.mean != other.mean);
  }

  SUBCASE("classical assist at the optimal asymmetry") {
    const auto est = simulateStrategy(Strategy::ClassicalAssist, 0.4, 20000, 7);
    CHECK(std::abs(est.mean - fClassical(0.4)) <= 3.0 * est.stdError);
  }

  SUBCASE("classical assist at a supplied asymmetry") {
    const auto est =
        simulateStrategy(Strategy::ClassicalAssist, 0.4, 20000, 8, 0.3);
    CHECK(std::abs(est.mean - fClassicalAt(0.4, 0.3)) <= 3.0 * est.stdError);
  }

  SUBCASE("quantum memory") {
    const auto est = simulateStrategy(Strategy::QuantumMemory, 0.5, 20000, 9);
    CHECK(std::abs(est.mean - fQuantumMemory(0.5)) <= 3.0 * est.stdError);
  }

  SUBCASE("quantum memory is exact when the anticlone always arrives") {
    const auto est = simulateStrategy(Strategy::QuantumMemory, 1.0, 1000, 10);
    CHECK(std::abs(est.mean - 1.0) <= 1e-12);
    CHECK(est.stdError <= 1e-12);
  }

  SUBCASE("quantum memory degrades to pair estimation when all is lost") {
    const auto est = simulateStrategy(Strategy::QuantumMemory, 0.0, 20000, 11);
    CHECK(std::abs(est.mean - 2.0 / 3.0) <= 3.0 * est.stdError);
  }

  SUBCASE("argument validation") {
    CHECK_THROWS_AS(simulateStrategy(Strategy::Direct, 1.2, 1000, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulateStrategy(Strategy::Direct, 0.5, 1000, 1, 0.3),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulateStrategy(Strategy::Direct, 0.5, 50, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("storage closed forms") {
  SUBCASE("survival-pattern expansion") {
    for (int i = 0; i <= 40; ++i) {
      const double p = i / 40.0;
      CHECK(fStorageCloned(p) ==
            doctest::Approx(fStorageExpansion(p)).epsilon(1e-12));
    }
  }

  SUBCASE("pinned values") {
    CHECK(fStorageCloned(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(fStorageCloned(1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fStorageCloned(1.0 / 3.0) ==
          doctest::Approx(170.0 / 243.0).epsilon(1e-15));
  }

  SUBCASE("advantage peaks at p = 1/3 with value 8/243") {
    CHECK(storageAdvantage(1.0 / 3.0) ==
          doctest::Approx(8.0 / 243.0).epsilon(1e-15));
    CHECK(storageAdvantage(1.0 / 3.0 + 1e-4) < storageAdvantage(1.0 / 3.0));
    CHECK(storageAdvantage(1.0 / 3.0 - 1e-4) < storageAdvantage(1.0 / 3.0));
    for (int i = 0; i <= 100; ++i) {
      const double p = i / 100.0;
      CHECK(storageAdvantage(p) >= -1e-12);
      CHECK(storageAdvantage(p) <= 8.0 / 243.0 + 1e-12);
    }
  }
}

TEST_CASE("storage simulation") {
  SUBCASE("pattern-scored path") {
    const auto est = simulateStorage(1.0 / 3.0, 40000, 21);
    CHECK(std::abs(est.mean - 170.0 / 243.0) <= 3.0 * est.stdError);
    const auto again = simulateStorage(1.0 / 3.0, 40000, 21);
    CHECK(est.mean == again.mean);
  }

  SUBCASE("full-state path agrees with the closed form") {
    const auto est = simulateStorage(0.5, 4000, 22, true);
    CHECK(std::abs(est.mean - fStorageCloned(0.5)) <= 3.0 * est.stdError);
  }

  SUBCASE("full-state and pattern paths estimate the same number") {
    const auto fast = simulateStorage(0.5, 20000, 23);
    const auto full = simulateStorage(0.5, 4000, 24, true);
    const double sigma = std::hypot(fast.stdError, full.stdError);
    CHECK(std::abs(fast.mean - full.mean) <= 3.0 * sigma);
  }

  CHECK_THROWS_AS(simulateStorage(-0.2, 1000, 1), std::invalid_argument);
}
