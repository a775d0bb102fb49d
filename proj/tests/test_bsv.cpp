#include <doctest.h>

#include <cmath>
#include <map>

#include "mubsim/bsv.hpp"

using namespace mubsim;

TEST_CASE("validate rejects malformed specs") {
  CHECK_THROWS_AS(validate(BsvSpec{4, 1.0, 10, false}), std::invalid_argument);
  CHECK_THROWS_AS(validate(BsvSpec{3, -0.5, 10, false}), std::invalid_argument);
  CHECK_THROWS_AS(validate(BsvSpec{3, 0.0, 10, true}), std::invalid_argument);
  CHECK_THROWS_AS(validate(BsvSpec{3, 1.0, 0, true}), std::invalid_argument);
  CHECK_NOTHROW(validate(BsvSpec{3, 0.0, 10, false}));
  CHECK_NOTHROW(validate(BsvSpec{2, 1.0, 10, true}));
}

TEST_CASE("twin-beam state pairs occupations and weights sectors by tanh") {
  const BsvSpec spec{3, 0.9, 6, false};
  const auto psi = build_bsv(spec);
  CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-13));
  const double t = std::tanh(spec.gamma);
  for (const auto& [key, amp] : psi.amps) CHECK(key.a == key.b);

  // within a sector every composition carries the same amplitude; across
  // sectors amplitudes scale by tanh Γ per pair
  const cxd a1 = psi.amplitude(Occupation{1, 0, 0}, Occupation{1, 0, 0});
  const cxd a1b = psi.amplitude(Occupation{0, 1, 0}, Occupation{0, 1, 0});
  const cxd a2 = psi.amplitude(Occupation{0, 1, 1}, Occupation{0, 1, 1});
  CHECK(std::abs(a1 - a1b) < 1e-14);
  CHECK(std::abs(a2 / a1 - t) < 1e-13);
}

TEST_CASE("renormalized state drops the vacuum sector") {
  const auto raw = build_bsv(BsvSpec{3, 1.0, 6, false});
  const auto renorm = build_bsv(BsvSpec{3, 1.0, 6, true});
  CHECK(std::abs(raw.amplitude(Occupation{0, 0, 0}, Occupation{0, 0, 0})) > 0.1);
  CHECK(std::abs(renorm.amplitude(Occupation{0, 0, 0}, Occupation{0, 0, 0})) == 0.0);
  CHECK(renorm.norm() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("state-norm sector weights match the per-sector mass of the state") {
  const BsvSpec spec{3, 1.2, 8, false};
  const auto psi = build_bsv(spec);
  std::map<int, double> mass;
  for (const auto& [key, amp] : psi.amps)
    mass[occupation_total(key.a, spec.p)] += std::norm(amp);

  const auto weights = sector_weights(spec, SectorWeighting::StateNorm);
  REQUIRE(weights.size() == static_cast<std::size_t>(spec.cutoff) + 1);
  double sum = 0.0;
  for (const auto& [n, w] : weights) {
    CHECK(w == doctest::Approx(mass[n]).epsilon(1e-12));
    sum += w;
  }
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("the two weighting conventions differ by the squared multiplicity") {
  const BsvSpec spec{3, 1.0, 6, false};
  const auto state_norm = sector_weights(spec, SectorWeighting::StateNorm);
  const auto literal = sector_weights(spec, SectorWeighting::LiteralAppendixC);
  // w_sn(n)/w_lit(n) ∝ C(n+2,2)², so the ratio of ratios at consecutive n is
  // the squared multiplicity ratio
  for (std::size_t n = 1; n < state_norm.size(); ++n) {
    const double mult_prev = binomial(static_cast<int>(n) - 1 + 2, 2);
    const double mult = binomial(static_cast<int>(n) + 2, 2);
    const double ratio = (state_norm[n].second / state_norm[n - 1].second) /
                         (literal[n].second / literal[n - 1].second);
    CHECK(ratio == doctest::Approx((mult / mult_prev) * (mult / mult_prev)).epsilon(1e-10));
  }
}

TEST_CASE("literal weights are normalized and geometrically suppressed") {
  const BsvSpec spec{3, 0.8, 10, true};
  const auto weights = sector_weights(spec, SectorWeighting::LiteralAppendixC);
  REQUIRE(weights.size() == 10);  // renormalized: sectors 1..cutoff
  CHECK(weights.front().first == 1);
  double sum = 0.0;
  for (const auto& [n, w] : weights) sum += w;
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  const double t2 = std::tanh(0.8) * std::tanh(0.8);
  CHECK(weights[1].second / weights[0].second ==
        doctest::Approx(t2 * binomial(3, 2) / binomial(4, 2)).epsilon(1e-11));
}

TEST_CASE("truncated mass shrinks with the cutoff and matches the closed form") {
  const double frozen = truncated_mass(BsvSpec{3, 1.0, 10, true});
  CHECK(frozen == doctest::Approx(0.0466016686773).epsilon(1e-9));

  double prev = 1.0;
  for (int cutoff : {4, 8, 12}) {
    const double m = truncated_mass(BsvSpec{3, 1.0, cutoff, false});
    CHECK(m < prev);
    CHECK(m > 0.0);
    prev = m;
  }

  // independent closed form: captured/(1-t²)^{-p} complement
  const BsvSpec spec{3, 0.7, 6, false};
  const double t2 = std::tanh(0.7) * std::tanh(0.7);
  double captured = 0.0;
  for (int n = 0; n <= spec.cutoff; ++n)
    captured += binomial(n + 2, 2) * std::pow(t2, n);
  const double expected = 1.0 - captured * std::pow(1.0 - t2, 3);
  CHECK(truncated_mass(spec) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("gamma 0 leaves only vacuum") {
  const auto psi = build_bsv(BsvSpec{3, 0.0, 5, false});
  CHECK(psi.amps.size() == 1);
  CHECK(std::abs(psi.amplitude(Occupation{0, 0, 0}, Occupation{0, 0, 0}) -
                 cxd{1.0, 0.0}) < 1e-14);
}
