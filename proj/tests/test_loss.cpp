#include <doctest.h>

#include <cmath>

#include "mubsim/loss.hpp"

using namespace mubsim;

namespace {

double mean_detected(const OutcomeDistribution& dist, bool side_a) {
  double mean = 0.0;
  for (const auto& [key, prob] : dist.prob)
    mean += prob * occupation_total(side_a ? key.a : key.b, dist.modes_per_party);
  return mean;
}

}  // namespace

TEST_CASE("binomial thinning probabilities") {
  CHECK(thinning_probability(2, 3, 0.5) == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(thinning_probability(0, 3, 0.0) == 1.0);
  CHECK(thinning_probability(1, 3, 0.0) == 0.0);
  CHECK(thinning_probability(3, 3, 1.0) == 1.0);
  CHECK(thinning_probability(2, 3, 1.0) == 0.0);
  CHECK(thinning_probability(4, 3, 0.5) == 0.0);
  CHECK(thinning_probability(-1, 3, 0.5) == 0.0);
  for (int n : {0, 1, 4, 7})
    for (double eta : {0.0, 0.3, 0.77, 1.0}) {
      double sum = 0.0;
      for (int m = 0; m <= n; ++m) sum += thinning_probability(m, n, eta);
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
    }
  CHECK_THROWS_AS(Efficiency(1.2), std::invalid_argument);
  CHECK_THROWS_AS(Efficiency(-0.1), std::invalid_argument);
}

TEST_CASE("ideal distribution equals the squared state amplitudes") {
  const BsvSpec spec{3, 1.1, 6, false};
  const auto dist = ideal_joint_distribution(spec, 0);
  const auto psi = build_bsv(spec);
  CHECK(dist.total() == doctest::Approx(1.0).epsilon(1e-12));
  REQUIRE(dist.prob.size() == psi.amps.size());
  for (const auto& [key, amp] : psi.amps)
    CHECK(dist.prob.at(key) == doctest::Approx(std::norm(amp)).epsilon(1e-12));
}

TEST_CASE("the ideal distribution does not depend on the setting") {
  const BsvSpec spec{3, 0.8, 5, true};
  const auto ref = ideal_joint_distribution(spec, 0);
  for (int m = 1; m <= 3; ++m) {
    const auto dist = ideal_joint_distribution(spec, m);
    REQUIRE(dist.prob.size() == ref.prob.size());
    for (const auto& [key, prob] : ref.prob)
      CHECK(dist.prob.at(key) == doctest::Approx(prob).epsilon(1e-13));
  }
  CHECK_THROWS_AS(ideal_joint_distribution(spec, 4), std::invalid_argument);
  CHECK_THROWS_AS(ideal_joint_distribution(spec, -1), std::invalid_argument);
}

TEST_CASE("loss keeps normalization and scales the mean by eta") {
  const BsvSpec spec{3, 1.0, 8, false};
  const auto ideal = ideal_joint_distribution(spec, 3);
  const double ideal_mean = mean_detected(ideal, true);
  for (double eta : {0.0, 0.25, 0.6, 1.0}) {
    const auto lossy = apply_loss(ideal, Efficiency(eta));
    CHECK(lossy.total() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(mean_detected(lossy, true) == doctest::Approx(eta * ideal_mean).epsilon(1e-9));
    CHECK(mean_detected(lossy, false) == doctest::Approx(eta * ideal_mean).epsilon(1e-9));
  }
}

TEST_CASE("single pair at eta = 1/2 splits into four equal outcomes") {
  OutcomeDistribution dist{2, {}};
  const Occupation one{1, 0}, zero{0, 0};
  dist.prob[{pack_occupation(one), pack_occupation(one)}] = 1.0;
  const auto lossy = apply_loss(dist, Efficiency(0.5));
  REQUIRE(lossy.prob.size() == 4);
  for (const auto& a : {one, zero})
    for (const auto& b : {one, zero})
      CHECK(lossy.prob.at({pack_occupation(a), pack_occupation(b)}) ==
            doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("eta = 0 concentrates all mass on the vacuum pair") {
  const auto ideal = ideal_joint_distribution(BsvSpec{3, 1.5, 6, true}, 0);
  const auto dark = apply_loss(ideal, Efficiency(0.0));
  REQUIRE(dark.prob.size() == 1);
  CHECK(dark.prob.begin()->first == JointKey{0, 0});
  CHECK(dark.prob.begin()->second == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eta = 1 returns the input distribution") {
  const auto ideal = ideal_joint_distribution(BsvSpec{2, 0.9, 5, false}, 1);
  const auto same = apply_loss(ideal, Efficiency(1.0));
  REQUIRE(same.prob.size() == ideal.prob.size());
  for (const auto& [key, prob] : ideal.prob)
    CHECK(same.prob.at(key) == doctest::Approx(prob).epsilon(1e-14));
}

TEST_CASE("distribution_from_state squares bipartite amplitudes") {
  StateVector psi{2, 2, 3, {}};
  psi.add(Occupation{1, 0}, Occupation{0, 1}, {0.6, 0.0});
  psi.add(Occupation{0, 2}, Occupation{2, 0}, {0.0, 0.8});
  const auto dist = distribution_from_state(psi);
  CHECK(dist.prob.at({pack_occupation(Occupation{1, 0}), pack_occupation(Occupation{0, 1})}) ==
        doctest::Approx(0.36).epsilon(1e-14));
  CHECK(dist.prob.at({pack_occupation(Occupation{0, 2}), pack_occupation(Occupation{2, 0})}) ==
        doctest::Approx(0.64).epsilon(1e-14));

  CHECK_THROWS_AS(distribution_from_state(fock_state(Occupation{1, 0}, 3)),
                  std::invalid_argument);
}
