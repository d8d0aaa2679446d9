#include <doctest.h>

#include <cmath>

#include "twospace/montecarlo.hpp"

using namespace twospace;

namespace {

SchemeInstance load_toy(const char* name) {
  return load_scheme_file(std::string(TWOSPACE_DATA_DIR) + "/" + name);
}

} // namespace

TEST_CASE("splitmix64 reference vectors") {
  // First outputs of the reference implementation from state 0.
  SplitMix64 g{0};
  CHECK(g.next() == 0xE220A8397B1DCDAFULL);
  CHECK(g.next() == 0x6E789E6AA1B965F4ULL);
  CHECK(g.next() == 0x06C45D188009454FULL);
}

TEST_CASE("trial streams are derived, not sequential") {
  const auto a = trial_rng(42, 0);
  const auto b = trial_rng(42, 1);
  CHECK(a.state != b.state);
  CHECK(trial_rng(42, 0).state == a.state); // pure derivation
  CHECK(trial_rng(43, 0).state != a.state);
}

TEST_CASE("uniform_below stays in range and is deterministic") {
  SplitMix64 g{7};
  for (std::uint64_t n : {1ULL, 2ULL, 3ULL, 10ULL, 1000000007ULL}) {
    for (int i = 0; i < 200; ++i)
      CHECK(uniform_below(g, n) < n);
  }
  SplitMix64 g1{11}, g2{11};
  for (int i = 0; i < 100; ++i)
    CHECK(uniform_below(g1, 6) == uniform_below(g2, 6));
  CHECK_THROWS_AS(uniform_below(g, 0), ValidationError);
}

TEST_CASE("uniform_below_mpz handles bounds wider than a word") {
  const mpz_class big = mpz_class(1) << 100;
  SplitMix64 g{99};
  for (int i = 0; i < 50; ++i) {
    const mpz_class x = uniform_below_mpz(g, big);
    CHECK(x >= 0);
    CHECK(x < big);
  }
  SplitMix64 g1{5}, g2{5};
  CHECK(uniform_below_mpz(g1, big) == uniform_below_mpz(g2, big));
}

TEST_CASE("dist sampler inverts exact cumulative weights") {
  const auto d = FiniteDist::from_weights(
      {{{"a"}, Rational(1, 3)}, {{"b"}, Rational(2, 3)}});
  const DistSampler sampler(d);

  SplitMix64 g{2718};
  std::uint64_t counts[2] = {0, 0};
  const int n = 30000;
  for (int i = 0; i < n; ++i)
    ++counts[sampler.sample(g)];
  CHECK(counts[0] + counts[1] == n);
  // Pinned-seed regression with a generous window around n/3.
  const double freq = static_cast<double>(counts[0]) / n;
  CHECK(freq == doctest::Approx(1.0 / 3).epsilon(0.03));

  const DistSampler point(FiniteDist::point({"only"}));
  for (int i = 0; i < 10; ++i)
    CHECK(point.sample(g) == 0);
}

TEST_CASE("bernoulli draws are exact at the edges") {
  SplitMix64 g{1};
  for (int i = 0; i < 20; ++i) {
    CHECK_FALSE(bernoulli(g, Rational(0)));
    CHECK(bernoulli(g, Rational(1)));
  }
  int hits = 0;
  const int n = 20000;
  for (int i = 0; i < n; ++i)
    hits += bernoulli(g, Rational(1, 4));
  CHECK(static_cast<double>(hits) / n == doctest::Approx(0.25).epsilon(0.05));
  CHECK_THROWS_AS(bernoulli(g, Rational(3, 2)), ValidationError);
}

TEST_CASE("hoeffding radius") {
  CHECK(hoeffding_radius(1000000, Rational(999, 1000)) ==
        doctest::Approx(0.00194947).epsilon(1e-4));
  CHECK(hoeffding_radius(100, Rational(1, 2)) ==
        doctest::Approx(std::sqrt(std::log(4.0) / 200.0)));
  CHECK_THROWS_AS(hoeffding_radius(0, Rational(999, 1000)), ValidationError);
  CHECK_THROWS_AS(hoeffding_radius(10, Rational(1)), ValidationError);
  CHECK_THROWS_AS(hoeffding_radius(10, Rational(2)), ValidationError);
}

TEST_CASE("simulation is reproducible") {
  const auto s = load_toy("toy-v1.json");
  SimConfig cfg;
  cfg.trials = 20000;
  cfg.seed = 42;
  cfg.strategy.kind = Strategy::AssumeS2;

  const auto first = simulate_scheme(s, cfg);
  const auto second = simulate_scheme(s, cfg);
  CHECK(first.counts.receiver_hits == second.counts.receiver_hits);
  CHECK(first.counts.eve_hits == second.counts.eve_hits);
  CHECK(first.empirical_pb == second.empirical_pb);
  CHECK(first.empirical_pe == second.empirical_pe);

  cfg.seed = 43;
  const auto reseeded = simulate_scheme(s, cfg);
  CHECK(reseeded.counts.eve_hits != first.counts.eve_hits);
}

TEST_CASE("a single trial is a bernoulli draw") {
  const auto s = load_toy("toy-v1.json");
  SimConfig cfg;
  cfg.trials = 1;
  cfg.seed = 7;
  cfg.strategy.kind = Strategy::ReceiverEmulation;
  const auto result = simulate_scheme(s, cfg);
  CHECK((result.empirical_pb == Rational(0) || result.empirical_pb == Rational(1)));
  CHECK((result.empirical_pe == Rational(0) || result.empirical_pe == Rational(1)));
}

TEST_CASE("trial ranges aggregate exactly") {
  const auto s = load_toy("toy-v2.json");
  SimConfig cfg;
  cfg.trials = 9000;
  cfg.seed = 1234;
  cfg.strategy.kind = Strategy::TripleSampling;

  const auto whole = simulate_trials(s, cfg, 0, 9000);
  for (std::uint64_t split : {1ULL, 1000ULL, 4500ULL, 8999ULL}) {
    const auto left = simulate_trials(s, cfg, 0, split);
    const auto right = simulate_trials(s, cfg, split, 9000 - split);
    CHECK(left.receiver_hits + right.receiver_hits == whole.receiver_hits);
    CHECK(left.eve_hits + right.eve_hits == whole.eve_hits);
  }
}

TEST_CASE("empirical values agree with exact ones at moderate size") {
  for (const char* name : {"toy-v1.json", "toy-v2.json"}) {
    const auto s = load_toy(name);
    for (Strategy kind : {Strategy::AssumeS1, Strategy::AssumeS2, Strategy::Mixed,
                          Strategy::BayesOptimal, Strategy::ReceiverEmulation,
                          Strategy::TripleSampling}) {
      SimConfig cfg;
      cfg.trials = 50000;
      cfg.seed = SimConfig::kDefaultSeed;
      cfg.strategy.kind = kind;
      const auto result = simulate_scheme(s, cfg);
      CHECK(result.agrees_with_exact);
      CHECK(mc_agreement_check(result.exact_pe, result));
    }
  }
}

TEST_CASE("uniform fallback simulates like the exact value") {
  const auto s = load_toy("toy-v1.json");
  SimConfig cfg;
  cfg.trials = 50000;
  cfg.seed = 97;
  cfg.strategy.kind = Strategy::AssumeS2;
  cfg.strategy.fallback = Fallback::UniformGuess;
  const auto result = simulate_scheme(s, cfg);
  CHECK(result.exact_pe == Rational(5, 8));
  CHECK(result.agrees_with_exact);
}

TEST_CASE("agreement check arithmetic") {
  SimResult sim;
  sim.hoeffding_radius = 0.002;
  sim.empirical_pe = Rational(1, 2);
  CHECK(mc_agreement_check(Rational(1, 2), sim));
  sim.empirical_pe = Rational(51, 100);
  CHECK_FALSE(mc_agreement_check(Rational(1, 2), sim));
  sim.empirical_pe = Rational(1, 2) + Rational(1, 1000);
  CHECK(mc_agreement_check(Rational(1, 2), sim));
}

TEST_CASE("simulation rejects invalid configurations") {
  const auto s = load_toy("toy-v1.json");
  SimConfig cfg;
  cfg.trials = 0;
  CHECK_THROWS_AS(simulate_scheme(s, cfg), ValidationError);

  auto broken = s;
  broken.space1["k3"] = Rational(0);
  cfg.trials = 10;
  CHECK_THROWS_AS(simulate_scheme(broken, cfg), ValidationError);
}
