#include "doctest.h"
#include "qclone/tradeoff.hpp"

#include <cmath>

using namespace qclone;
using namespace qclone::tradeoff;

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kMuStar = std::sqrt(2.0 / 3.0);  // where G reaches 2/3

// Independently derived closed form for the tetrahedron gain of the
// mu-cloner: G(mu) = 1/2 + (sqrt(3)/12) mu sqrt(4 - 3 mu^2).
double asymGClosedForm(double mu) {
  return 0.5 + kSqrt3 / 12.0 * mu * std::sqrt(4.0 - 3.0 * mu * mu);
}

}  // namespace

TEST_CASE("banaszek bound evaluation") {
  CHECK(banaszekF(0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(banaszekF(2.0 / 3.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(banaszekF(0.6) == doctest::Approx(14.0 / 15.0).epsilon(1e-14));
  CHECK_THROWS_AS(banaszekF(0.4), std::invalid_argument);
  CHECK_THROWS_AS(banaszekF(0.7), std::invalid_argument);
}

TEST_CASE("optimal estimation from N copies") {
  CHECK(gOptNCopies(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(gOptNCopies(2) == doctest::Approx(0.75).epsilon(1e-14));
  for (int n = 1; n < 30; ++n) CHECK(gOptNCopies(n + 1) > gOptNCopies(n));
  CHECK(gOptNCopies(1000) < 1.0);
  CHECK_THROWS_AS(gOptNCopies(0), std::invalid_argument);
}

TEST_CASE("asymmetric estimation fidelity") {
  SUBCASE("quadrature matches the closed form") {
    for (const double mu : {0.0, 0.2, 1 / kSqrt3, 0.7, kMuStar, 0.9, 1.0})
      CHECK(std::abs(asymGAnalytic(mu) - asymGClosedForm(mu)) <= 1e-10);
  }

  SUBCASE("frozen endpoint values") {
    CHECK(std::abs(asymGAnalytic(0.0) - 0.5) <= 1e-12);
    CHECK(std::abs(asymGAnalytic(kMuStar) - 2.0 / 3.0) <= 1e-12);
    // At mu=1 the pair is a perfect copy and a maximally mixed qubit; the
    // tetrahedron gain is (6 + sqrt(3))/12, below the one-copy optimum 2/3.
    CHECK(std::abs(asymGAnalytic(1.0) - 0.6443375672974064) <= 1e-12);
  }

  SUBCASE("gain never exceeds the one-copy optimum") {
    for (int i = 0; i <= 20; ++i)
      CHECK(asymGAnalytic(i / 20.0) <= gOptNCopies(1) + 1e-12);
  }
}

TEST_CASE("asymmetric strategy saturates the bound up to mu*") {
  // F_C1(mu) = banaszekF(G(mu)) holds identically for mu in [0, sqrt(2/3)].
  // banaszekF has infinite slope at G = 2/3, so the last grid point is
  // checked by pinning both coordinates of the exact endpoint (2/3, 2/3)
  // instead of pushing float noise through the branch point.
  for (int i = 0; i < 20; ++i) {
    const double mu = kMuStar * i / 20.0;
    const TradeoffPoint pt = asymPoint(mu);
    CHECK(std::abs(pt.f - banaszekF(pt.g)) <= 1e-9);
  }
  const TradeoffPoint end = asymPoint(kMuStar);
  CHECK(std::abs(end.g - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(end.f - 2.0 / 3.0) <= 1e-12);

  // Beyond mu*, both F_C1 and G decrease: the strategy leaves the optimal
  // frontier (F_C1 < 2/3 while banaszekF >= 2/3), but the bound inequality
  // sqrt(F - 1/3) <= sqrt(G - 1/3) + sqrt(2/3 - G) still holds.
  for (const double mu : {0.85, 0.93, 1.0}) {
    const TradeoffPoint pt = asymPoint(mu);
    CHECK(pt.f < 2.0 / 3.0);
    CHECK(std::sqrt(pt.f - 1.0 / 3.0) <=
          std::sqrt(pt.g - 1.0 / 3.0) + std::sqrt(2.0 / 3.0 - pt.g) + 1e-9);
  }
}

TEST_CASE("asymmetric gain Monte Carlo") {
  SUBCASE("agrees with the analytic value within 3 sigma") {
    for (const double mu : {0.0, 1 / kSqrt3}) {
      const McEstimate est = asymGMonteCarlo(mu, 40000, 91);
      CHECK(std::abs(est.mean - asymGAnalytic(mu)) <= 3 * est.stdError);
      CHECK(est.stdError < 0.01);
      CHECK(est.n == 40000);
    }
  }

  SUBCASE("fixed seeds reproduce bit-identical estimates") {
    const McEstimate a = asymGMonteCarlo(0.5, 1000, 7);
    const McEstimate b = asymGMonteCarlo(0.5, 1000, 7);
    CHECK(a.mean == b.mean);
    CHECK(a.stdError == b.stdError);
    const McEstimate c = asymGMonteCarlo(0.5, 1000, 8);
    CHECK(a.mean != c.mean);
  }

  SUBCASE("sample floor is enforced") {
    CHECK_THROWS_AS(asymGMonteCarlo(0.5, 99, 1), std::invalid_argument);
  }
}

TEST_CASE("symmetric strategy closed forms") {
  SUBCASE("endpoints") {
    const TradeoffPoint bell = symGF(povm::kXiMin);
    CHECK(std::abs(bell.g - 0.5) <= 1e-12);
    CHECK(std::abs(bell.f - 1.0) <= 1e-12);
    // kXiMax is the closest double to sqrt(3), not sqrt(3) itself; F has a
    // square-root branch there, so |F - 2/3| lands at sqrt(ulp) ~ 1e-8.
    const TradeoffPoint est = symGF(povm::kXiMax);
    CHECK(std::abs(est.g - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(est.f - 2.0 / 3.0) <= 1e-7);
  }

  SUBCASE("frozen midpoint") {
    const TradeoffPoint pt = symGF(1.5);
    CHECK(std::abs(pt.g - 7.0 / 12.0) <= 1e-15);
    CHECK(std::abs(pt.f - 0.9553418012614795) <= 1e-15);
  }

  SUBCASE("the whole family lies on the bound") {
    // The bound has a square-root branch point at G = 2/3 where one ulp of
    // noise in G moves banaszekF(G) by ~1e-8, so the xi = sqrt(3) endpoint
    // is pinned to its exact limit (2/3, 2/3) instead of being pushed
    // through banaszekF.
    for (int i = 0; i < 20; ++i) {
      const double xi = povm::kXiMin + (povm::kXiMax - povm::kXiMin) * i / 20;
      const TradeoffPoint pt = symGF(xi);
      CHECK(std::abs(pt.f - banaszekF(pt.g)) <= 1e-12);
    }
    const TradeoffPoint end = symGF(povm::kXiMax);
    CHECK(std::abs(end.g - 2.0 / 3.0) <= 1e-12);
    CHECK(std::abs(end.f - 2.0 / 3.0) <= 1e-7);
  }

  SUBCASE("both strategies trace the same (G, F) curve") {
    for (int i = 1; i < 10; ++i) {
      const double mu = kMuStar * i / 10.0;
      const TradeoffPoint asym = asymPoint(mu);
      const double xi = 3.0 * std::sqrt(asym.g - 1.0 / 3.0);
      CHECK(std::abs(symGF(xi).f - asym.f) <= 1e-9);
    }
  }
}

TEST_CASE("symmetric correction is unitary") {
  qmath::Rng rng = qmath::streamRng(41, 0);
  for (int i = 0; i < 100; ++i) {
    const Matrix w = symCorrectionSu2(qmath::haarSu2(rng));
    CHECK((w.adjoint() * w - qmath::identity(2)).norm() <= 1e-12);
  }
  const Matrix w0 = symCorrection(qmath::SphereAngles(0.0, 0.0));
  CHECK(qmath::frobeniusDistance(w0, qmath::pauliY()) <= 1e-14);
}

TEST_CASE("symmetric pipeline Monte Carlo") {
  SUBCASE("bell endpoint reverses exactly, run by run") {
    const McEstimate f = symFMonteCarlo(povm::kXiMin, 2000, 17);
    CHECK(std::abs(f.mean - 1.0) <= 1e-10);
    CHECK(f.stdError <= 1e-8);
  }

  SUBCASE("estimation endpoint matches (2/3, 2/3)") {
    const McEstimate g = symGMonteCarlo(povm::kXiMax, 30000, 18);
    CHECK(std::abs(g.mean - 2.0 / 3.0) <= 3 * g.stdError);
    const McEstimate f = symFMonteCarlo(povm::kXiMax, 30000, 19);
    CHECK(std::abs(f.mean - 2.0 / 3.0) <= 3 * f.stdError);
  }

  SUBCASE("interior point matches the closed forms") {
    const TradeoffPoint pt = symGF(1.5);
    const McEstimate g = symGMonteCarlo(1.5, 30000, 20);
    CHECK(std::abs(g.mean - pt.g) <= 3 * g.stdError);
    const McEstimate f = symFMonteCarlo(1.5, 30000, 21);
    CHECK(std::abs(f.mean - pt.f) <= 3 * f.stdError);
  }
}

TEST_CASE("bell reversal on clone 1") {
  qmath::Rng rng = qmath::streamRng(42, 0);
  const auto bells = cloner::bellBasis();

  for (const double mu : {0.3, 1 / kSqrt3, 0.8, 1.0}) {
    const cloner::ClonerParams p = cloner::paramsFromMu(mu);
    const auto terms = cloner::bellCoefficients(p);
    for (int i = 0; i < 25; ++i) {
      const qmath::PureState phi = qmath::haarState(rng);
      const cloner::CloneTriple t = cloner::applyCloner(phi, p);
      for (int b = 0; b < 4; ++b) {
        const qmath::PureState corrected =
            asymReversal(t, cloner::kBellLabels[b]);
        CHECK(std::norm((phi.amps().adjoint() * corrected.amps())(0, 0)) >=
              1.0 - 1e-12);
        // The outcome weight is the squared Bell coefficient.
        const Vector chi =
            qmath::partialInner(bells[b], t.state.amps(), 0);
        CHECK(std::abs(chi.squaredNorm() -
                       std::norm(terms[b].coefficient)) <= 1e-12);
      }
    }
  }

  SUBCASE("zero-probability outcomes are rejected") {
    qmath::Rng r2 = qmath::streamRng(43, 0);
    const cloner::CloneTriple t =
        cloner::applyCloner(qmath::haarState(r2), cloner::paramsFromMu(0.0));
    CHECK_THROWS_AS(asymReversal(t, cloner::BellLabel::PhiPlus),
                    std::invalid_argument);
  }
}
