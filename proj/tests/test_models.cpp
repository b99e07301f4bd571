#include <doctest.h>

#include <cmath>

#include "suppkit/census.hpp"
#include "suppkit/error.hpp"
#include "suppkit/models.hpp"
#include "suppkit/permanent.hpp"

using namespace suppkit;

namespace {

double max_diff(const Distribution& a, const Distribution& b) {
  REQUIRE(a.same_space(b));
  double d = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) d = std::max(d, std::abs(a.entries()[i].p - b.entries()[i].p));
  return d;
}

const OccupationState kHom{1, 1};

}  // namespace

TEST_CASE("distinguishable particles") {
  const auto spec2 = InterferometerSpec::sylvester(2);
  const auto d = distinguishable_distribution(spec2, kHom);
  CHECK(d.probability({1, 1}) == doctest::Approx(0.25));
  CHECK(d.probability({2, 2}) == doctest::Approx(0.25));
  CHECK(d.probability({1, 2}) == doctest::Approx(0.5));
  const auto spec4 = InterferometerSpec::sylvester(4);
  const auto cf = distinguishable_distribution(spec4, OccupationState{1, 1, 0, 0}, true);
  CHECK(cf.entries().size() == 6);
  for (const auto& e : cf.entries()) CHECK(e.p == doctest::Approx(1.0 / 6.0));
  for (const auto& in : enumerate_states(2, 8, false)) {
    CHECK(std::abs(distinguishable_distribution(InterferometerSpec::sylvester(8), in).total() - 1.0) < 1e-9);
    CHECK(std::abs(distinguishable_distribution(InterferometerSpec::fourier(8), in).total() - 1.0) < 1e-9);
  }
  CHECK(std::abs(distinguishable_distribution(InterferometerSpec::fourier(5), OccupationState{1, 1, 1, 0, 0}).total() -
                 1.0) < 1e-9);
}

TEST_CASE("partial indistinguishability mixture") {
  const auto spec = InterferometerSpec::sylvester(4);
  const OccupationState in{1, 0, 1, 0};
  const auto q = output_distribution(spec, in, false);
  const auto d = distinguishable_distribution(spec, in);
  CHECK(max_diff(mixed_distribution(spec, in, 1.0), q) == 0.0);
  CHECK(max_diff(mixed_distribution(spec, in, 0.0), d) == 0.0);
  const auto half = mixed_distribution(spec, in, 0.5);
  for (std::size_t i = 0; i < half.entries().size(); ++i) {
    CHECK(half.entries()[i].p == doctest::Approx(0.5 * (q.entries()[i].p + d.entries()[i].p)));
  }
  CHECK(std::abs(half.total() - 1.0) < 1e-9);
  const auto hom = mixed_distribution(InterferometerSpec::sylvester(2), kHom, 0.758);
  CHECK(hom.probability({1, 2}) == doctest::Approx(0.121));
  CHECK_THROWS_AS(mixed_distribution(spec, OccupationState{1, 1, 1, 0}, 0.5), Error);
  CHECK_THROWS_AS(mixed_distribution(spec, in, 1.5), Error);
}

TEST_CASE("HOM visibility") {
  const auto spec = InterferometerSpec::sylvester(2);
  const auto q = output_distribution(spec, kHom, false);
  const auto d = distinguishable_distribution(spec, kHom);
  CHECK(hom_visibility(q, d, {1, 2}) == doctest::Approx(1.0));
  CHECK(hom_visibility(d, d, {1, 2}) == 0.0);
  CHECK(hom_visibility(mixed_distribution(spec, kHom, 0.6), d, {1, 2}) == doctest::Approx(0.6));
  CHECK_THROWS_AS(hom_visibility(q, q, {1, 2}), Error);
}

TEST_CASE("mean-field closed form against Monte Carlo") {
  const auto spec = InterferometerSpec::sylvester(4);
  for (auto input : {ModeAssignmentList{1, 2}, ModeAssignmentList{2, 3}}) {
    auto mf = MeanFieldSpec::for_input(input, 200'000, 17);
    CHECK(mf.sampling == PhaseSampling::ClosedForm);
    const auto exact = meanfield_distribution(spec, mf, false);
    CHECK(std::abs(exact.distribution.total() - 1.0) < 1e-9);
    mf.sampling = PhaseSampling::MonteCarlo;
    const auto mc = meanfield_distribution(spec, mf, false);
    CHECK(std::abs(mc.distribution.total() - 1.0) < 1e-9);
    for (std::size_t o = 0; o < exact.distribution.entries().size(); ++o) {
      const double diff = std::abs(exact.distribution.entries()[o].p - mc.distribution.entries()[o].p);
      CHECK(diff <= 4.0 * mc.std_error[o] + 1e-12);
    }
  }
}

TEST_CASE("mean-field Monte Carlo is seeded and converges") {
  const auto spec = InterferometerSpec::sylvester(8);
  auto mf = MeanFieldSpec::for_input({1, 2, 3, 4}, 20'000, 99);
  CHECK(mf.sampling == PhaseSampling::MonteCarlo);
  const auto a = meanfield_distribution(spec, mf, true);
  const auto b = meanfield_distribution(spec, mf, true);
  CHECK(max_diff(a.distribution, b.distribution) == 0.0);
  CHECK(std::abs(a.distribution.total() - 1.0) < 1e-9);
  mf.samples = 80'000;
  const auto c = meanfield_distribution(spec, mf, true);
  double se_small = 0.0, se_big = 0.0;
  for (std::size_t o = 0; o < a.std_error.size(); ++o) {
    se_small += a.std_error[o];
    se_big += c.std_error[o];
  }
  // quadrupling the samples halves the error
  CHECK(se_big / se_small == doctest::Approx(0.5).epsilon(0.1));
  mf.input_modes = {1, 2, 3};
  CHECK_THROWS_AS(meanfield_distribution(spec, mf, true), Error);
}

TEST_CASE("noisy sources") {
  const auto spec = InterferometerSpec::sylvester(4);
  const OccupationState in{1, 1, 0, 0};
  // no multi-pair emission: the post-selected mixture
  for (double p : {0.0, 0.4, 0.758, 1.0}) {
    const auto params = NoiseParams::uniform(4, 0.0, p, kDefaultHeralding, kDefaultTransmission);
    const auto noisy = noisy_event_model(spec, params, 1, 2);
    CHECK(max_diff(noisy.patterns, post_select_collision_free(mixed_distribution(spec, in, p))) < 1e-12);
    CHECK(noisy.three_source_rate == 0.0);
    CHECK(noisy.double_pair_rate == 0.0);
  }
  const auto ideal = noisy_event_model(spec, NoiseParams::uniform(4, 0.0, 1.0, 1.0, 1.0), 1, 2);
  CHECK(max_diff(ideal.patterns, output_distribution(spec, in, true)) < 1e-12);

  // multi-pair emission lifts the exact zeros
  const auto noisy = noisy_event_model(spec, NoiseParams::uniform(4, 0.12, 0.758, 0.15, 0.015), 1, 2);
  CHECK(std::abs(noisy.patterns.total() - 1.0) < 1e-9);
  const auto zeros = exact_suppressed_outputs(spec, {1, 2});
  REQUIRE_FALSE(zeros.empty());
  for (const auto& s : zeros) CHECK(noisy.patterns.probability(s) > 0.0);
  CHECK(noisy.three_source_rate > 0.0);
  CHECK(noisy.double_pair_rate > 0.0);
  // stays perfect even with noise at p = 1 only if g = 0
  const auto pure = noisy_event_model(spec, NoiseParams::uniform(4, 0.12, 1.0, 0.15, 0.015), 1, 2);
  for (const auto& s : zeros) CHECK(pure.patterns.probability(s) > 0.0);

  // continuity in the gain
  const auto tiny = noisy_event_model(spec, NoiseParams::uniform(4, 1e-6, 0.758, 0.15, 0.015), 1, 2);
  CHECK(max_diff(tiny.patterns, post_select_collision_free(mixed_distribution(spec, in, 0.758))) < 1e-9);

  CHECK_THROWS_AS(noisy_event_model(spec, NoiseParams::uniform(4, -1.0, 1.0, 0.1, 0.1), 1, 2), Error);
  CHECK_THROWS_AS(noisy_event_model(spec, NoiseParams::uniform(4, 0.1, 1.0, 0.1, 0.1), 2, 2), Error);
}

TEST_CASE("visibility correction for multi-pair emission") {
  CHECK(p_from_visibility(0.9, 0.0) == 0.9);
  CHECK(p_from_visibility(1.0, 0.0) == 1.0);
  CHECK(noisy_hom_visibility(1.0, 0.0, 0.15, 0.015) == doctest::Approx(1.0));
  CHECK(noisy_hom_visibility(0.7, 0.0, 0.15, 0.015) == doctest::Approx(0.7));
  const double p = p_from_visibility(0.724, 0.12);
  CHECK(p > 0.724);
  CHECK(p <= 1.0);
  CHECK(noisy_hom_visibility(p, 0.12, kDefaultHeralding, kDefaultTransmission) == doctest::Approx(0.724).epsilon(1e-9));
  MESSAGE("p(V = 0.724, g = 0.12) = " << p);
  CHECK_THROWS_AS(p_from_visibility(0.9999, 0.5), Error);
  CHECK_THROWS_AS(p_from_visibility(1.2, 0.1), Error);
}
