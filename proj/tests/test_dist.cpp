#include <doctest.h>

#include <algorithm>

#include "twospace/dist.hpp"
#include "twospace/montecarlo.hpp"

using namespace twospace;

namespace {

Label L(std::initializer_list<const char*> parts) {
  Label l;
  for (const char* p : parts)
    l.emplace_back(p);
  return l;
}

// Small random distribution for the property checks.
FiniteDist random_dist(SplitMix64& g, int max_outcomes = 6) {
  const auto n = 1 + uniform_below(g, max_outcomes);
  std::vector<FiniteDist::Outcome> pairs;
  for (std::uint64_t i = 0; i < n; ++i)
    pairs.emplace_back(L({("x" + std::to_string(i)).c_str()}),
                       Rational(static_cast<long>(1 + uniform_below(g, 9)),
                                static_cast<long>(1 + uniform_below(g, 9))));
  return FiniteDist::from_weights(pairs);
}

Rational total_mass(const FiniteDist& d) {
  Rational total;
  for (const auto& [label, w] : d.outcomes())
    total += w;
  return total;
}

} // namespace

TEST_CASE("from_weights normalizes and orders") {
  const auto uniform =
      FiniteDist::from_weights({{L({"a"}), Rational(1)}, {L({"b"}), Rational(1)}});
  CHECK(uniform.weight_of(L({"a"})) == Rational(1, 2));
  CHECK(uniform.weight_of(L({"b"})) == Rational(1, 2));

  const auto skewed =
      FiniteDist::from_weights({{L({"b"}), Rational(1)}, {L({"a"}), Rational(3)}});
  CHECK(skewed.weight_of(L({"a"})) == Rational(3, 4));
  CHECK(skewed.weight_of(L({"b"})) == Rational(1, 4));
  CHECK(skewed.outcomes().front().first == L({"a"})); // canonical order

  CHECK_THROWS_WITH_AS(
      FiniteDist::from_weights({{L({"a"}), Rational(0)}, {L({"b"}), Rational(0)}}),
      "dist: zero total mass", ValidationError);
  CHECK_THROWS_AS(
      FiniteDist::from_weights({{L({"a"}), Rational(1)}, {L({"a"}), Rational(1)}}),
      ValidationError);
  CHECK_THROWS_AS(FiniteDist::from_weights({{L({"a"}), Rational(-1, 2)}}),
                  ValidationError);
}

TEST_CASE("zero-weight outcomes are dropped") {
  const auto d =
      FiniteDist::from_weights({{L({"a"}), Rational(1)}, {L({"b"}), Rational(0)}});
  CHECK(d.size() == 1);
  CHECK(d.weight_of(L({"b"})) == Rational(0));
}

TEST_CASE("condition restricts and renormalizes") {
  // Two-child sex pairs as (younger, older); conditioning on a younger boy
  // leaves the two boy-first pairs, uniformly.
  const auto families = FiniteDist::uniform(
      {L({"G", "G"}), L({"G", "B"}), L({"B", "G"}), L({"B", "B"})});
  const auto conditioned =
      families.condition([](const Label& l) { return l[0] == "B"; });
  CHECK(conditioned.size() == 2);
  CHECK(conditioned.weight_of(L({"B", "G"})) == Rational(1, 2));
  CHECK(conditioned.weight_of(L({"B", "B"})) == Rational(1, 2));

  // Full-support event is the identity.
  CHECK(families.condition([](const Label&) { return true; }) == families);

  CHECK_THROWS_WITH_AS(families.condition([](const Label&) { return false; }),
                       "dist: conditioning on null event", ValidationError);
}

TEST_CASE("condition is idempotent") {
  SplitMix64 g{2024};
  for (int round = 0; round < 100; ++round) {
    const auto d = random_dist(g);
    const auto pred = [&](const Label& l) { return l[0].back() % 2 == 0; };
    const auto e = d.where(pred);
    if (e.members.empty())
      continue;
    const auto once = d.condition(e);
    CHECK(once.condition(e) == once);
    CHECK(once.prob(e) == Rational(1));
    CHECK(total_mass(once) == Rational(1));
  }
}

TEST_CASE("product forms the independent joint") {
  const auto coin = FiniteDist::uniform({L({"0"}), L({"1"})});
  const auto four = product(coin, coin);
  CHECK(four.size() == 4);
  for (const auto& [label, w] : four.outcomes())
    CHECK(w == Rational(1, 4));

  // Point mass is a left identity up to relabeling.
  const auto point = FiniteDist::point(L({"a"}));
  const auto lifted = product(point, coin);
  CHECK(lifted.weight_of(L({"a", "0"})) == Rational(1, 2));
  CHECK(lifted.weight_of(L({"a", "1"})) == Rational(1, 2));

  const auto left =
      FiniteDist::from_weights({{L({"a"}), Rational(1, 3)}, {L({"b"}), Rational(2, 3)}});
  const auto right =
      FiniteDist::from_weights({{L({"x"}), Rational(1, 4)}, {L({"y"}), Rational(3, 4)}});
  CHECK(product(left, right).weight_of(L({"b", "y"})) == Rational(1, 2));
}

TEST_CASE("product marginals recover the factors exactly") {
  SplitMix64 g{77};
  for (int round = 0; round < 100; ++round) {
    const auto a = random_dist(g);
    const auto b = random_dist(g);
    const auto joint = product(a, b);
    CHECK(joint.project({0}) == a);
    CHECK(joint.project({1}) == b);
    CHECK(total_mass(joint) == Rational(1));
  }
}

TEST_CASE("pushforward adds colliding masses") {
  const auto quad = FiniteDist::uniform({L({"1"}), L({"2"}), L({"3"}), L({"4"})});
  const auto parity = quad.pushforward([](const Label& l) -> std::optional<Label> {
    const int v = l[0][0] - '0';
    return Label{v % 2 == 0 ? "even" : "odd"};
  });
  CHECK(parity.weight_of(L({"even"})) == Rational(1, 2));
  CHECK(parity.weight_of(L({"odd"})) == Rational(1, 2));

  const auto identity =
      quad.pushforward([](const Label& l) -> std::optional<Label> { return l; });
  CHECK(identity == quad);

  const auto skewed =
      FiniteDist::from_weights({{L({"a"}), Rational(1, 4)}, {L({"b"}), Rational(3, 4)}});
  const auto collapsed =
      skewed.pushforward([](const Label&) -> std::optional<Label> {
        return Label{"z"};
      });
  CHECK(collapsed.size() == 1);
  CHECK(collapsed.weight_of(L({"z"})) == Rational(1));

  CHECK_THROWS_AS(
      skewed.pushforward([](const Label& l) -> std::optional<Label> {
        if (l[0] == "a")
          return l;
        return std::nullopt;
      }),
      ValidationError);
}

TEST_CASE("pushforward preserves total mass") {
  SplitMix64 g{99};
  for (int round = 0; round < 100; ++round) {
    const auto d = random_dist(g);
    const auto squashed = d.pushforward([&](const Label& l) -> std::optional<Label> {
      return Label{l[0].size() % 2 ? "long" : "short"};
    });
    CHECK(total_mass(squashed) == Rational(1));
  }
}

TEST_CASE("argmax is deterministic under ties") {
  const auto strict =
      FiniteDist::from_weights({{L({"0"}), Rational(2, 3)}, {L({"1"}), Rational(1, 3)}});
  CHECK(strict.argmax() == std::pair{L({"0"}), false});

  const auto tied = FiniteDist::uniform({L({"1"}), L({"0"})});
  CHECK(tied.argmax() == std::pair{L({"0"}), true}); // lexicographically smallest

  CHECK(FiniteDist::point(L({"1"})).argmax() == std::pair{L({"1"}), false});
}

TEST_CASE("Bayes consistency of conditioning on a joint") {
  SplitMix64 g{4242};
  for (int round = 0; round < 50; ++round) {
    // Prior over hypotheses h0..h2, then an observation coordinate whose
    // likelihood depends on the hypothesis.
    std::vector<FiniteDist::Outcome> joint_pairs;
    std::map<Label, Rational> prior;
    std::map<Label, std::map<Label, Rational>> likelihood;
    for (int h = 0; h < 3; ++h) {
      const Label hl = L({("h" + std::to_string(h)).c_str()});
      prior[hl] = Rational(static_cast<long>(1 + uniform_below(g, 5)), 12);
      Rational rest(1);
      for (int o = 0; o < 2; ++o) {
        const Label ol = L({("o" + std::to_string(o)).c_str()});
        const Rational lw = o == 1 ? rest
                                   : Rational(static_cast<long>(uniform_below(g, 5)),
                                              static_cast<long>(5));
        likelihood[hl][ol] = lw;
        rest -= lw;
        joint_pairs.push_back({Label{hl[0], ol[0]}, prior[hl] * lw});
      }
    }
    FiniteDist joint = [&] {
      try {
        return FiniteDist::from_weights(joint_pairs);
      } catch (const ValidationError&) {
        return FiniteDist::point(L({"h0", "o0"})); // degenerate draw; skip below
      }
    }();
    if (joint.size() < 2)
      continue;

    const Label obs = L({"o0"});
    const auto obs_event = joint.where([&](const Label& l) { return l[1] == obs[0]; });
    if (joint.prob(obs_event).is_zero())
      continue;
    const auto posterior = joint.condition(obs_event).project({0});

    // Direct route: posterior proportional to prior(h) * likelihood(o|h).
    std::vector<FiniteDist::Outcome> direct_pairs;
    for (const auto& [hl, pw] : prior) {
      const Rational mass = pw * likelihood[hl][obs];
      direct_pairs.push_back({hl, mass});
    }
    const auto direct = FiniteDist::from_weights(direct_pairs);
    CHECK(posterior == direct);
  }
}

TEST_CASE("construction order does not matter") {
  std::vector<FiniteDist::Outcome> pairs = {{L({"m"}), Rational(1, 6)},
                                            {L({"a"}), Rational(2, 6)},
                                            {L({"z"}), Rational(3, 6)}};
  const auto sorted_in = FiniteDist::from_weights(pairs);
  std::reverse(pairs.begin(), pairs.end());
  const auto reversed_in = FiniteDist::from_weights(pairs);
  CHECK(sorted_in == reversed_in);
  CHECK(sorted_in.outcomes().front().first == L({"a"}));
}
