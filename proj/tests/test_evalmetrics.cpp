#include <cmath>
#include <stdexcept>
#include <vector>

#include "bipart/evalmetrics.hpp"
#include "bipart/rng.hpp"
#include "doctest.h"

using namespace bipart;

namespace {
const std::vector<Label> kTarget{0, 0, 1, 1};
}

TEST_CASE("perfectly homogeneous labelings") {
  CHECK(homogeneity(kTarget, {1, 1, 0, 0}) == doctest::Approx(1.0));
  CHECK(homogeneity(kTarget, {0, 0, 1, 2}) == doctest::Approx(1.0));
  // every cluster a singleton: trivially pure
  CHECK(homogeneity(kTarget, {0, 1, 2, 3}) == doctest::Approx(1.0));
}

TEST_CASE("perfectly complete labelings") {
  CHECK(completeness(kTarget, {0, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK(completeness(kTarget, {1, 1, 0, 0}) == doctest::Approx(1.0));
}

TEST_CASE("partial scores match hand-computed entropies") {
  // splitting one element off a class: H = 1 - H(t|f)/H(t) = 0.311278
  CHECK(homogeneity(kTarget, {0, 1, 1, 1}) == doctest::Approx(0.311278).epsilon(1e-4));
  // the even split carries no information about the clusters
  CHECK(completeness(kTarget, {0, 1, 0, 1}) == doctest::Approx(0.0));
  CHECK(completeness(kTarget, {0, 0, 1, 2}) == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("v-measure combines both scores harmonically") {
  SimilarityScores s = v_measure(kTarget, {0, 0, 1, 2});
  CHECK(s.homogeneity == doctest::Approx(1.0));
  CHECK(s.completeness == doctest::Approx(0.667).epsilon(1e-2));
  CHECK(s.v_measure == doctest::Approx(0.8).epsilon(1e-4));

  SimilarityScores perfect = v_measure(kTarget, {5, 5, 9, 9});
  CHECK(perfect.homogeneity == doctest::Approx(1.0));
  CHECK(perfect.completeness == doctest::Approx(1.0));
  CHECK(perfect.v_measure == doctest::Approx(1.0));
}

TEST_CASE("swapping the arguments swaps homogeneity and completeness") {
  const std::vector<Label> found{0, 1, 1, 2, 0};
  const std::vector<Label> target{0, 0, 1, 1, 2};
  SimilarityScores ab = v_measure(target, found);
  SimilarityScores ba = v_measure(found, target);
  CHECK(ab.homogeneity == doctest::Approx(ba.completeness).epsilon(1e-12));
  CHECK(ab.completeness == doctest::Approx(ba.homogeneity).epsilon(1e-12));
  CHECK(ab.v_measure == doctest::Approx(ba.v_measure).epsilon(1e-12));
  CHECK(homogeneity(target, found) ==
        doctest::Approx(completeness(found, target)).epsilon(1e-12));
}

TEST_CASE("scores stay in the unit interval and ignore label names") {
  Rng rng = make_rng(808);
  for (int t = 0; t < 50; ++t) {
    std::size_t n = 2 + uniform_below(rng, 30);
    std::vector<Label> a(n), b(n), b2(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = static_cast<Label>(uniform_below(rng, 4));
      b[i] = static_cast<Label>(uniform_below(rng, 4));
      b2[i] = 7 + 3 * b[i];  // renamed labels, same grouping
    }
    SimilarityScores s = v_measure(a, b);
    CHECK(s.homogeneity >= 0.0);
    CHECK(s.homogeneity <= 1.0);
    CHECK(s.completeness >= 0.0);
    CHECK(s.completeness <= 1.0);
    CHECK(s.v_measure >= 0.0);
    CHECK(s.v_measure <= 1.0);
    SimilarityScores renamed = v_measure(a, b2);
    CHECK(s.homogeneity == doctest::Approx(renamed.homogeneity).epsilon(1e-12));
    CHECK(s.v_measure == doctest::Approx(renamed.v_measure).epsilon(1e-12));
  }
}

TEST_CASE("degenerate universes use the zero-entropy conventions") {
  // one class only: H(class) = 0, so homogeneity is 1 by convention
  CHECK(homogeneity({0, 0, 0}, {0, 1, 2}) == doctest::Approx(1.0));
  // one cluster only: H(cluster) = 0, so completeness is 1
  CHECK(completeness({0, 1, 2}, {0, 0, 0}) == doctest::Approx(1.0));
  // both sides trivial
  SimilarityScores s = v_measure({0, 0}, {0, 0});
  CHECK(s.v_measure == doctest::Approx(1.0));
}

TEST_CASE("metric preconditions") {
  CHECK_THROWS_AS(homogeneity({0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(v_measure({}, {}), std::invalid_argument);
}

TEST_CASE("bootstrap interval of constant samples is a point") {
  Rng rng = make_rng(1);
  std::vector<double> samples(20, 0.5);
  auto [lo, hi] = bootstrap_ci(samples, 0.95, 2000, rng);
  CHECK(lo == doctest::Approx(0.5));
  CHECK(hi == doctest::Approx(0.5));
}

TEST_CASE("bootstrap interval brackets the mean and shrinks with n") {
  std::vector<double> small_sample, large_sample;
  for (int i = 0; i < 10; ++i) {
    small_sample.push_back(i % 2);
  }
  for (int i = 0; i < 100; ++i) {
    large_sample.push_back(i % 2);
  }
  Rng r1 = make_rng(2), r2 = make_rng(2);
  auto [lo_s, hi_s] = bootstrap_ci(small_sample, 0.95, 4000, r1);
  auto [lo_l, hi_l] = bootstrap_ci(large_sample, 0.95, 4000, r2);
  CHECK(lo_s <= 0.5);
  CHECK(hi_s >= 0.5);
  CHECK(lo_l <= 0.5);
  CHECK(hi_l >= 0.5);
  CHECK(hi_l - lo_l < hi_s - lo_s);
}

TEST_CASE("bootstrap intervals nest with the confidence level") {
  std::vector<double> samples;
  Rng rng = make_rng(77);
  for (int i = 0; i < 40; ++i)
    samples.push_back(static_cast<double>(uniform_below(rng, 100)));
  Rng r1 = make_rng(3), r2 = make_rng(3);
  auto [lo_wide, hi_wide] = bootstrap_ci(samples, 0.95, 4000, r1);
  auto [lo_narrow, hi_narrow] = bootstrap_ci(samples, 0.5, 4000, r2);
  CHECK(lo_wide <= lo_narrow);
  CHECK(hi_wide >= hi_narrow);
}

TEST_CASE("bootstrap is deterministic for a fixed rng and validates input") {
  std::vector<double> samples{0.1, 0.4, 0.3, 0.9, 0.6};
  Rng r1 = make_rng(9), r2 = make_rng(9);
  CHECK(bootstrap_ci(samples, 0.95, 1000, r1) ==
        bootstrap_ci(samples, 0.95, 1000, r2));
  Rng r3 = make_rng(9);
  CHECK_THROWS_AS(bootstrap_ci({1.0}, 0.95, 100, r3), std::invalid_argument);
  CHECK_THROWS_AS(bootstrap_ci(samples, 1.5, 100, r3), std::invalid_argument);
  CHECK_THROWS_AS(bootstrap_ci(samples, 0.95, 0, r3), std::invalid_argument);
}

TEST_CASE("contingency tables count jointly and marginally") {
  ContingencyTable t = ContingencyTable::build({0, 0, 1, 1}, {0, 0, 1, 2});
  CHECK(t.n == 4);
  CHECK(t.class_totals == std::vector<std::int64_t>{2, 2});
  CHECK(t.cluster_totals == std::vector<std::int64_t>{2, 1, 1});
  CHECK(t.counts.size() == 3);
}
