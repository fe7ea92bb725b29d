#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "bdiff/weights.hpp"
#include "support/oracles.hpp"

using namespace bdiff;
using doctest::Approx;

TEST_SUITE("weights") {

TEST_CASE("gamma1 examples") {
  CHECK(gamma1(0.0, 60.0) == 1.0);
  CHECK(gamma1(60.0, 60.0) == 0.0);
  CHECK(gamma1(59.999, 60.0) == 1.0);
}

TEST_CASE("gamma2 examples") {
  for (double rho : {1.0, 7.5, 60.0}) {
    CHECK(gamma2(0.0, rho) == 1.0);
    CHECK(gamma2(rho / 2, rho) == Approx(0.25).epsilon(1e-15));
    CHECK(gamma2(rho, rho) == 0.0);
    CHECK(gamma2(2 * rho, rho) == 0.0);
  }
}

TEST_CASE("gamma2 is continuous and non-increasing") {
  const double rho = 10.0;
  double prev = gamma2(0.0, rho);
  for (int k = 1; k <= 10000; ++k) {
    const double d = rho * k / 10000.0;
    const double g = gamma2(d, rho);
    REQUIRE(g <= prev + 1e-15);
    REQUIRE(std::fabs(g - prev) < 1e-3);
    prev = g;
  }
}

TEST_CASE("mirror_index") {
  CHECK(mirror_index(-1, 5) == 0);
  CHECK(mirror_index(-2, 5) == 1);
  CHECK(mirror_index(5, 5) == 4);
  CHECK(mirror_index(6, 5) == 3);
  CHECK(mirror_index(3, 5) == 3);
  for (long x = -40; x <= 40; ++x)
    for (long n : {1L, 2L, 3L, 7L}) REQUIRE(mirror_index(x, n) == oracle::reflect(x, n));
}

TEST_CASE("dense weights validation") {
  CHECK_THROWS_AS(DenseWeights(2, {1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(DenseWeights(2, {1, -1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(DenseWeights(2, {0, 1, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(DenseWeights(1, {NAN}), std::invalid_argument);
  const DenseWeights w(2, {2, 1, 1, 3});
  CHECK(w.row_sum(0) == 3.0);
  CHECK(w.row_sum(1) == 4.0);
  CHECK(w.max_row_sum() == 4.0);
  CHECK_FALSE(w.constant_columns());
  CHECK(DenseWeights::ones(4).constant_columns());
}

TEST_CASE("dense neighbours skip zero weights") {
  const DenseWeights w(3, {1, 0, 2, 0, 1, 0, 1, 1, 1});
  const auto row = w.neighbours(0);
  REQUIRE(row.size() == 2);
  CHECK(row[0].index == 0);
  CHECK(row[1].index == 2);
  CHECK(row[1].weight == 2.0);
}

TEST_CASE("global histogram weights") {
  const auto w = build_global_histogram_weights(std::vector<double>{0.25, 0.75},
                                                std::vector<double>{3, 1});
  CHECK(w.size() == 2);
  CHECK(w.row_sum(0) == 4.0);
  CHECK(w.row_sum(1) == 4.0);
  CHECK(w.weight(1, 0) == 3.0);
  CHECK(w.constant_columns());

  CHECK_THROWS_AS(build_global_histogram_weights(std::vector<double>{0.5, 0.5},
                                                 std::vector<double>{1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_global_histogram_weights(std::vector<double>{0.5},
                                                 std::vector<double>{0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GlobalHistogramWeights(std::vector<double>{}), std::invalid_argument);

  const GlobalHistogramWeights big(std::vector<double>{100000, 54401});
  CHECK(big.row_sum(0) == 154401.0);
}

TEST_CASE("local disk weights on a 1x1 image") {
  const LocalDiskWeights w(1, 1, 2.0, Kernel::box);
  const auto row = w.neighbours(0);
  REQUIRE(row.size() == 1);
  // dx^2 + dy^2 < 4 admits the 3x3 block only.
  CHECK(row[0].weight == 9.0);
  CHECK(w.row_sum(0) == 9.0);
  CHECK(w.constant_columns());
}

TEST_CASE("interior pixel neighbourhoods") {
  // rho = 1.2 keeps the 4-neighbourhood; rho = 1.5 also admits the diagonals
  // (1 + 1 < 2.25).
  const LocalDiskWeights small(5, 5, 1.2, Kernel::box);
  const auto row = small.neighbours(12);
  REQUIRE(row.size() == 5);
  for (const auto& e : row) CHECK(e.weight == 1.0);
  CHECK(row[0].index == 7);
  CHECK(row[2].index == 12);
  CHECK(row[4].index == 17);

  const LocalDiskWeights wider(5, 5, 1.5, Kernel::box);
  CHECK(wider.neighbours(12).size() == 9);
}

TEST_CASE("corner pixel accumulates mirrored weight") {
  const LocalDiskWeights small(3, 3, 1.2, Kernel::box);
  double sum = 0.0;
  for (const auto& e : small.neighbours(0)) sum += e.weight;
  CHECK(sum == 5.0);
  CHECK(small.weight(0, 0) == 3.0);
  CHECK(small.weight(0, 1) == 1.0);
  CHECK(small.weight(0, 3) == 1.0);
  CHECK(small.weight(0, 4) == 0.0);

  const LocalDiskWeights wider(3, 3, 1.5, Kernel::box);
  sum = 0.0;
  for (const auto& e : wider.neighbours(0)) sum += e.weight;
  CHECK(sum == 9.0);
  CHECK(sum == wider.row_sum(4));
  CHECK(wider.weight(0, 0) == 4.0);
  CHECK(wider.weight(0, 1) == 2.0);
  CHECK(wider.weight(0, 4) == 1.0);
}

TEST_CASE("row sums are uniform and match the stencil") {
  for (Kernel k : {Kernel::box, Kernel::bspline})
    for (double rho : {1.0, 2.5, 4.0, 9.0}) {
      const LocalDiskWeights w(7, 5, rho, k);
      double stencil = 0.0;
      for (const auto& o : w.stencil()) stencil += o.weight;
      for (std::size_t i = 0; i < w.size(); ++i) {
        double s = 0.0;
        for (const auto& e : w.neighbours(i)) s += e.weight;
        REQUIRE(s == stencil);
        REQUIRE(w.row_sum(i) == stencil);
      }
    }
}

TEST_CASE("local rows agree with a dense reference and with weight()") {
  for (Kernel k : {Kernel::box, Kernel::bspline})
    for (double rho : {1.5, 3.2, 11.0}) {
      const std::size_t wd = 6, ht = 4;
      const LocalDiskWeights w(wd, ht, rho, k);
      for (std::size_t i = 0; i < w.size(); ++i) {
        const auto snapped = [&](double d) {
          return std::round(kernel_value(k, d, rho) * 16777216.0) / 16777216.0;
        };
        const auto ref = oracle::disk_row(wd, ht, rho, snapped, i);
        std::vector<double> got(w.size(), 0.0);
        for (const auto& e : w.neighbours(i)) got[e.index] += e.weight;
        std::vector<double> via_terms(w.size(), 0.0);
        std::vector<WeightEntry> terms;
        w.terms(i, terms);
        for (const auto& e : terms) via_terms[e.index] += e.weight;
        for (std::size_t j = 0; j < w.size(); ++j) {
          REQUIRE(got[j] == ref[j]);
          REQUIRE(via_terms[j] == ref[j]);
          REQUIRE(w.weight(i, j) == ref[j]);
        }
      }
    }
}

TEST_CASE("large images fall back to on-the-fly rows") {
  const LocalDiskWeights w(2100, 2100, 2.0, Kernel::box);
  double s = 0.0;
  for (const auto& e : w.neighbours(0)) s += e.weight;
  CHECK(s == 9.0);
  CHECK(w.neighbours(2100 * 1000 + 1000).size() == 9);
}

TEST_CASE("local weights reject bad parameters") {
  CHECK_THROWS_AS(LocalDiskWeights(0, 3, 1.0, Kernel::box), std::invalid_argument);
  CHECK_THROWS_AS(LocalDiskWeights(3, 3, 0.0, Kernel::box), std::invalid_argument);
}

}  // TEST_SUITE
