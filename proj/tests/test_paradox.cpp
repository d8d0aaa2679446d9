#include <doctest.h>

#include "twospace/paradox.hpp"

using namespace twospace;

TEST_CASE("monty hall with three doors") {
  CHECK(monty_hall(3, MontyStrategy::Switch) == Rational(2, 3));
  CHECK(monty_hall(3, MontyStrategy::Stay) == Rational(1, 3));
  // With one door revealed at n = 3, the two strategies partition the game.
  CHECK(monty_hall(3, MontyStrategy::Switch) + monty_hall(3, MontyStrategy::Stay) ==
        Rational(1));
}

TEST_CASE("monty hall with more doors") {
  for (int n = 3; n <= 7; ++n) {
    CHECK(monty_hall(n, MontyStrategy::Stay) == Rational(1, n));
    // Switch wins iff the first pick was wrong and the uniform re-pick among
    // the n-2 remaining closed doors finds the prize.
    CHECK(monty_hall(n, MontyStrategy::Switch) ==
          Rational(n - 1, n) * Rational(1, n - 2));
  }
  CHECK(monty_hall(4, MontyStrategy::Switch) > monty_hall(4, MontyStrategy::Stay));
}

TEST_CASE("monty hall rejects degenerate door counts") {
  CHECK_THROWS_AS(monty_hall(2, MontyStrategy::Switch), ValidationError);
  CHECK_THROWS_AS(monty_hall(0, MontyStrategy::Stay), ValidationError);
}

TEST_CASE("two-child variants") {
  CHECK(two_child({TwoChildVariant::YoungerBoy, std::nullopt}) == Rational(1, 2));
  CHECK(two_child({TwoChildVariant::YoungerBoyBornOnDay, Weekday::Tuesday}) ==
        Rational(13, 20));
  CHECK(two_child({TwoChildVariant::AtLeastOneBoy, std::nullopt}) == Rational(1, 3));
  CHECK(two_child({TwoChildVariant::AtLeastOneBoyBornOnDay, Weekday::Tuesday}) ==
        Rational(13, 27));
}

TEST_CASE("the day is exchangeable") {
  for (int d = 0; d < 7; ++d) {
    CHECK(two_child({TwoChildVariant::YoungerBoyBornOnDay, static_cast<Weekday>(d)}) ==
          Rational(13, 20));
    CHECK(two_child({TwoChildVariant::AtLeastOneBoyBornOnDay, static_cast<Weekday>(d)}) ==
          Rational(13, 27));
  }
}

TEST_CASE("13/20 agrees with the Bayes-formula route") {
  // Within the younger-boy space: hypothesis H = older child's sex,
  // evidence E = "some child is a boy born on Tuesday".
  const Rational p_e_given_boy =
      Rational(1) - Rational(6, 7) * Rational(6, 7); // 13/49
  const Rational p_e_given_girl = Rational(1, 7);
  const Rational half(1, 2);
  const Rational posterior = half * p_e_given_boy /
                             (half * p_e_given_boy + half * p_e_given_girl);
  CHECK(posterior == Rational(13, 20));
  CHECK(two_child({TwoChildVariant::YoungerBoyBornOnDay, Weekday::Tuesday}) ==
        posterior);
}

TEST_CASE("two-child day argument is validated") {
  CHECK_THROWS_AS(two_child({TwoChildVariant::YoungerBoy, Weekday::Tuesday}),
                  ValidationError);
  CHECK_THROWS_AS(two_child({TwoChildVariant::YoungerBoyBornOnDay, std::nullopt}),
                  ValidationError);
}

TEST_CASE("weekday names") {
  CHECK(weekday_from_string("tuesday") == Weekday::Tuesday);
  CHECK(weekday_from_string("sunday") == Weekday::Sunday);
  CHECK_FALSE(weekday_from_string("caturday").has_value());
}

namespace {

StratifiedTable kidney_fixture() {
  StratifiedTable t;
  t.strata.push_back({"small", 81, 87, 234, 270});
  t.strata.push_back({"large", 192, 263, 55, 80});
  return t;
}

} // namespace

TEST_CASE("simpson reversal on the classic counts") {
  const auto report = simpson_check(kidney_fixture());
  REQUIRE(report.per_stratum.size() == 2);
  CHECK(report.per_stratum[0].second == Direction::AFavored);
  CHECK(report.per_stratum[1].second == Direction::AFavored);
  CHECK(report.aggregate == Direction::BFavored); // 289/350 > 273/350
  CHECK(report.reversal);
}

TEST_CASE("simpson reversal is invariant under swapping the options") {
  auto swapped = kidney_fixture();
  for (auto& s : swapped.strata) {
    std::swap(s.success_a, s.success_b);
    std::swap(s.total_a, s.total_b);
  }
  const auto original = simpson_check(kidney_fixture());
  const auto mirrored = simpson_check(swapped);
  CHECK(mirrored.reversal == original.reversal);
  CHECK(mirrored.aggregate == Direction::AFavored);
  CHECK(mirrored.per_stratum[0].second == Direction::BFavored);
}

TEST_CASE("simpson degenerate tables") {
  StratifiedTable single;
  single.strata.push_back({"only", 3, 10, 2, 10});
  const auto report = simpson_check(single);
  CHECK(report.aggregate == report.per_stratum[0].second);
  CHECK_FALSE(report.reversal);

  StratifiedTable tied;
  tied.strata.push_back({"x", 1, 2, 1, 2});
  tied.strata.push_back({"y", 3, 4, 3, 4});
  const auto tied_report = simpson_check(tied);
  CHECK(tied_report.per_stratum[0].second == Direction::Tie);
  CHECK(tied_report.per_stratum[1].second == Direction::Tie);
  CHECK(tied_report.aggregate == Direction::Tie);
  CHECK_FALSE(tied_report.reversal);
}

TEST_CASE("stratified csv parsing") {
  const auto table = parse_stratified_csv(
      "stratum,successA,totalA,successB,totalB\nsmall,81,87,234,270\nlarge,192,263,55,80\n");
  REQUIRE(table.strata.size() == 2);
  CHECK(table.strata[0].name == "small");
  CHECK(table.strata[1].total_b == 80);
  CHECK(simpson_check(table).reversal);

  // CRLF and a blank trailing line are tolerated.
  const auto crlf = parse_stratified_csv(
      "stratum,successA,totalA,successB,totalB\r\nonly,1,2,1,3\r\n\r\n");
  CHECK(crlf.strata.size() == 1);

  CHECK_THROWS_AS(parse_stratified_csv(""), ParseError);
  CHECK_THROWS_AS(parse_stratified_csv("bad,header\n1,2,3,4,5\n"), ParseError);
  CHECK_THROWS_AS(
      parse_stratified_csv("stratum,successA,totalA,successB,totalB\nx,1,2\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_stratified_csv("stratum,successA,totalA,successB,totalB\nx,1,2,3,4,5\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_stratified_csv("stratum,successA,totalA,successB,totalB\nx,a,2,3,4\n"),
      ParseError);
  CHECK_THROWS_AS(
      parse_stratified_csv("stratum,successA,totalA,successB,totalB\n"), ParseError);

  // Count rules are validation, not parsing.
  CHECK_THROWS_AS(
      parse_stratified_csv("stratum,successA,totalA,successB,totalB\nx,3,2,1,4\n"),
      ValidationError);
  CHECK_THROWS_AS(
      parse_stratified_csv("stratum,successA,totalA,successB,totalB\nx,0,0,1,4\n"),
      ValidationError);
}
