#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bdiff/penaliser.hpp"
#include "support/oracles.hpp"

using bdiff::Penaliser;
using doctest::Approx;

namespace {

const Penaliser kFamily[] = {Penaliser(1, 1), Penaliser(1, 2), Penaliser(1, 3),
                             Penaliser(2, 2), Penaliser(2, 1), Penaliser(0.5, 4)};

}  // namespace

TEST_SUITE("penaliser") {

TEST_CASE("construction rejects invalid parameters") {
  CHECK_THROWS_AS(Penaliser(0.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Penaliser(-1.0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Penaliser(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Penaliser(NAN, 1), std::invalid_argument);
}

TEST_CASE("psi examples") {
  const Penaliser p(1, 1);
  CHECK(p.psi(0.0) == 0.0);
  CHECK(p.psi(1.0) == -1.0);
  CHECK(p.psi(1.5) == Approx(-0.75).epsilon(1e-15));
  CHECK(p.psi(1.5) == Approx(p.psi(2.0 - 1.5)).epsilon(1e-15));
  CHECK(p.psi(1.5) == Approx(oracle::psi(1, 1, 1.5)).epsilon(1e-15));
}

TEST_CASE("flux examples") {
  CHECK(Penaliser(1, 1).flux(0.5) == -0.5);
  CHECK(Penaliser(1, 1).flux(1.0) == 0.0);
  CHECK(Penaliser(1, 2).flux(0.5) == -0.25);
  CHECK(Penaliser(1, 1).flux(-0.5) == 0.5);
  CHECK(Penaliser(1, 1).flux(-0.5) == Penaliser(1, 1).flux(1.5));
}

TEST_CASE("flux is zero at even integers") {
  for (const auto& p : kFamily)
    for (double s : {0.0, 2.0, -2.0, 4.0, -6.0, 1e6}) CHECK(p.flux(s) == 0.0);
}

TEST_CASE("dflux examples and jump points") {
  CHECK(Penaliser(1, 1).dflux(0.7) == 1.0);
  CHECK(Penaliser(1, 2).dflux(1.0) == 0.0);
  CHECK(Penaliser(1, 2).dflux(0.5) == 1.5);
  CHECK_THROWS_AS(Penaliser(1, 2).dflux(0.0), std::domain_error);
  CHECK_THROWS_AS(Penaliser(1, 2).dflux(-4.0), std::domain_error);
}

TEST_CASE("lipschitz constants") {
  CHECK(Penaliser(1, 1).flux_lipschitz_tight() == 1.0);
  CHECK(Penaliser(1, 2).flux_lipschitz_tight() == 6.0);
  CHECK(Penaliser(2, 1).flux_lipschitz_tight() == 2.0);
  CHECK(Penaliser(1, 1).flux_lipschitz_coarse() == 1.0);
  CHECK(Penaliser(1, 2).flux_lipschitz_coarse() == 24.0);
  CHECK(Penaliser(1, 3).flux_lipschitz_coarse() == 240.0);

  for (const auto& p : kFamily) {
    CHECK(p.flux_lipschitz_tight() <= p.flux_lipschitz_coarse());
    const double sup = oracle::numeric_sup([&](double s) { return p.dflux(s); }, 0.0, 2.0);
    CHECK(p.flux_lipschitz_tight() == Approx(sup).epsilon(1e-12));
  }
}

TEST_CASE("flux is odd, bit for bit") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& p : kFamily)
    for (int k = 0; k < 1000; ++k) {
      const double s = u(rng);
      REQUIRE(p.flux(-s) == -p.flux(s));
    }
  // The slow fold path as well.
  const Penaliser p(1, 2);
  for (double s : {2.5, 3.75, 7.1, 101.3}) CHECK(p.flux(-s) == -p.flux(s));
}

TEST_CASE("flux and psi are 2-periodic") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const auto& p : kFamily)
    for (int k = 0; k < 1000; ++k) {
      const double s = u(rng);
      REQUIRE(std::fabs(p.flux(s + 2.0) - p.flux(s)) < 1e-12 * (1 + std::fabs(p.flux(s))));
      REQUIRE(std::fabs(p.psi(s + 2.0) - p.psi(s)) < 1e-12 * (1 + std::fabs(p.psi(s))));
    }
}

TEST_CASE("psi is continuous at fold seams") {
  for (const auto& p : kFamily)
    for (double s : {0.0, 1.0, 2.0}) {
      CHECK(std::fabs(p.psi(s + 1e-9) - p.psi(s)) < 1e-6);
      CHECK(std::fabs(p.psi(s - 1e-9) - p.psi(s)) < 1e-6);
    }
}

TEST_CASE("psi and flux agree with the reference extension") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (const auto& p : kFamily)
    for (int k = 0; k < 2000; ++k) {
      const double s = u(rng);
      const double a = p.amplitude();
      const int n = p.exponent();
      REQUIRE(p.psi(s) == Approx(oracle::psi(a, n, s)).epsilon(1e-12).scale(1.0));
      REQUIRE(p.flux(s) == Approx(oracle::flux(a, n, s)).epsilon(1e-12).scale(1.0));
    }
}

TEST_CASE("d/ds psi(s) = 2 flux(s)") {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(0.01, 1.99);
  const double h = 1e-6;
  for (const auto& p : kFamily)
    for (int k = 0; k < 500; ++k) {
      const double s = u(rng);
      if (std::fabs(s - 1.0) < 1e-3) continue;
      const double fd = (p.psi(s + h) - p.psi(s - h)) / (2 * h);
      REQUIRE(std::fabs(fd - 2.0 * p.flux(s)) < 1e-5 * p.amplitude() * p.exponent() * 8);
    }
}

TEST_CASE("dflux matches a central difference of flux") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1.9, 1.9);
  const double h = 1e-6;
  for (const auto& p : kFamily)
    for (int k = 0; k < 500; ++k) {
      const double s = u(rng);
      if (std::fabs(s) < 0.05 || std::fabs(std::fabs(s) - 1.0) < 0.05) continue;
      const double fd = (p.flux(s + h) - p.flux(s - h)) / (2 * h);
      REQUIRE(fd == Approx(p.dflux(s)).epsilon(1e-6));
    }
}

}  // TEST_SUITE
