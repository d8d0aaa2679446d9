#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "twospace/rational.hpp"

namespace twospace {

enum class MontyStrategy { Stay, Switch };

/// Exact win probability with `doors` doors: prize and initial pick uniform,
/// the host opens one non-prize non-picked door uniformly at random, and a
/// switching player re-picks uniformly among the remaining closed doors.
/// Throws ValidationError when doors < 3.
Rational monty_hall(int doors, MontyStrategy strategy);

enum class Weekday { Monday, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

constexpr std::array<const char*, 7> kWeekdayNames = {
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};

std::optional<Weekday> weekday_from_string(const std::string& name);

enum class TwoChildVariant {
  YoungerBoy,              // condition: the younger child is a boy
  YoungerBoyBornOnDay,     // ... and some child is a boy born on the given day
  AtLeastOneBoy,           // condition: at least one child is a boy
  AtLeastOneBoyBornOnDay,  // condition: some child is a boy born on the given day
};

struct TwoChildCondition {
  TwoChildVariant variant;
  std::optional<Weekday> day; // present iff the variant references a day
};

/// Probability that "the other child is a boy" given the condition, computed
/// by conditioning the uniform 196-atom (sex x weekday per child) space.
/// For the younger-* variants the other child is the older one; for the
/// at-least-one variants the event is that both children are boys.
Rational two_child(const TwoChildCondition& cond);

/// Two-option success counts across strata.
struct StratifiedTable {
  struct Stratum {
    std::string name;
    long success_a = 0;
    long total_a = 0;
    long success_b = 0;
    long total_b = 0;
  };
  std::vector<Stratum> strata;
};

/// Parses the CSV format "stratum,successA,totalA,successB,totalB" with a
/// header row. Throws ParseError on malformed input, ValidationError on
/// count violations (total <= 0 or success outside [0, total]).
StratifiedTable parse_stratified_csv(const std::string& text);

enum class Direction { AFavored, BFavored, Tie };

std::string to_string(Direction d);

struct SimpsonReport {
  std::vector<std::pair<std::string, Direction>> per_stratum;
  Direction aggregate = Direction::Tie;
  bool reversal = false; // all strata strictly favor one side, aggregate the other
};

SimpsonReport simpson_check(const StratifiedTable& table);

} // namespace twospace
