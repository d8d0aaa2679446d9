#include "twospace/paradox.hpp"

#include <sstream>

#include "twospace/dist.hpp"

namespace twospace {

Rational monty_hall(int doors, MontyStrategy strategy) {
  if (doors < 3)
    throw ValidationError("monty_hall: need at least 3 doors");
  const int n = doors;
  const Rational uniform_door(1, n);

  Rational win;
  for (int prize = 0; prize < n; ++prize) {
    for (int pick = 0; pick < n; ++pick) {
      const Rational branch = uniform_door * uniform_door;
      // Host opens one door that is neither the prize nor the pick.
      std::vector<int> host_options;
      for (int d = 0; d < n; ++d)
        if (d != prize && d != pick)
          host_options.push_back(d);
      const Rational host_w(1, static_cast<long>(host_options.size()));
      for (int opened : host_options) {
        if (strategy == MontyStrategy::Stay) {
          if (pick == prize)
            win += branch * host_w;
          continue;
        }
        // Switch: uniform among closed doors other than the current pick.
        std::vector<int> targets;
        for (int d = 0; d < n; ++d)
          if (d != pick && d != opened)
            targets.push_back(d);
        for (int target : targets)
          if (target == prize)
            win += branch * host_w * Rational(1, static_cast<long>(targets.size()));
      }
    }
  }
  return win;
}

std::optional<Weekday> weekday_from_string(const std::string& name) {
  for (std::size_t i = 0; i < kWeekdayNames.size(); ++i)
    if (name == kWeekdayNames[i])
      return static_cast<Weekday>(i);
  return std::nullopt;
}

Rational two_child(const TwoChildCondition& cond) {
  const bool wants_day = cond.variant == TwoChildVariant::YoungerBoyBornOnDay ||
                         cond.variant == TwoChildVariant::AtLeastOneBoyBornOnDay;
  if (wants_day != cond.day.has_value())
    throw ValidationError(wants_day ? "two_child: variant requires a day"
                                    : "two_child: variant does not take a day");

  // Atom labels: (younger sex, younger day, older sex, older day).
  std::vector<Label> sexes = {{"B"}, {"G"}};
  std::vector<Label> days;
  for (const char* d : kWeekdayNames)
    days.push_back({d});
  const FiniteDist child = product(FiniteDist::uniform(sexes), FiniteDist::uniform(days));
  const FiniteDist families = product(child, child);

  const std::string day_name =
      cond.day ? kWeekdayNames[static_cast<std::size_t>(*cond.day)] : "";
  const auto younger_boy = [](const Label& l) { return l[0] == "B"; };
  const auto older_boy = [](const Label& l) { return l[2] == "B"; };
  const auto boy_born_on_day = [&](const Label& l) {
    return (l[0] == "B" && l[1] == day_name) || (l[2] == "B" && l[3] == day_name);
  };

  FiniteDist conditioned = [&] {
    switch (cond.variant) {
    case TwoChildVariant::YoungerBoy:
      return families.condition(younger_boy);
    case TwoChildVariant::YoungerBoyBornOnDay:
      return families.condition(
          [&](const Label& l) { return younger_boy(l) && boy_born_on_day(l); });
    case TwoChildVariant::AtLeastOneBoy:
      return families.condition(
          [&](const Label& l) { return younger_boy(l) || older_boy(l); });
    case TwoChildVariant::AtLeastOneBoyBornOnDay:
      return families.condition(boy_born_on_day);
    }
    throw Error("two_child: unreachable");
  }();

  // "The other child is a boy": the older child for the younger-* variants
  // (the observed child is the younger), both-boys for the at-least-one ones.
  const bool other_is_older = cond.variant == TwoChildVariant::YoungerBoy ||
                              cond.variant == TwoChildVariant::YoungerBoyBornOnDay;
  return conditioned.prob(conditioned.where([&](const Label& l) {
    return other_is_older ? older_boy(l) : (younger_boy(l) && older_boy(l));
  }));
}

StratifiedTable parse_stratified_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("stratified csv: empty input");
  // Tolerate a trailing carriage return from CRLF files.
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  if (line != "stratum,successA,totalA,successB,totalB")
    throw ParseError("stratified csv: bad header '" + line + "'");

  StratifiedTable table;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r')
      line.pop_back();
    if (line.empty())
      continue;
    std::istringstream row(line);
    StratifiedTable::Stratum s;
    std::string field;
    if (!std::getline(row, s.name, ','))
      throw ParseError("stratified csv: bad row '" + line + "'");
    long* cells[4] = {&s.success_a, &s.total_a, &s.success_b, &s.total_b};
    for (long* cell : cells) {
      if (!std::getline(row, field, ','))
        throw ParseError("stratified csv: bad row '" + line + "'");
      try {
        *cell = std::stol(field);
      } catch (const std::exception&) {
        throw ParseError("stratified csv: bad count '" + field + "'");
      }
    }
    if (std::getline(row, field, ','))
      throw ParseError("stratified csv: too many fields in '" + line + "'");
    table.strata.push_back(std::move(s));
  }
  if (table.strata.empty())
    throw ParseError("stratified csv: no data rows");

  for (const auto& s : table.strata) {
    if (s.total_a <= 0 || s.total_b <= 0)
      throw ValidationError("stratified table: stratum " + s.name +
                            " has a nonpositive total");
    if (s.success_a < 0 || s.success_a > s.total_a || s.success_b < 0 ||
        s.success_b > s.total_b)
      throw ValidationError("stratified table: stratum " + s.name +
                            " has success outside [0, total]");
  }
  return table;
}

std::string to_string(Direction d) {
  switch (d) {
  case Direction::AFavored: return "A";
  case Direction::BFavored: return "B";
  case Direction::Tie: return "tie";
  }
  return "?";
}

namespace {

Direction compare_rates(const Rational& a, const Rational& b) {
  if (a > b)
    return Direction::AFavored;
  if (b > a)
    return Direction::BFavored;
  return Direction::Tie;
}

} // namespace

SimpsonReport simpson_check(const StratifiedTable& table) {
  SimpsonReport report;
  long sum_sa = 0, sum_ta = 0, sum_sb = 0, sum_tb = 0;
  bool all_a = true, all_b = true;
  for (const auto& s : table.strata) {
    const Direction dir = compare_rates(Rational(s.success_a, s.total_a),
                                        Rational(s.success_b, s.total_b));
    report.per_stratum.emplace_back(s.name, dir);
    all_a = all_a && dir == Direction::AFavored;
    all_b = all_b && dir == Direction::BFavored;
    sum_sa += s.success_a;
    sum_ta += s.total_a;
    sum_sb += s.success_b;
    sum_tb += s.total_b;
  }
  report.aggregate =
      compare_rates(Rational(sum_sa, sum_ta), Rational(sum_sb, sum_tb));
  report.reversal = (all_a && report.aggregate == Direction::BFavored) ||
                    (all_b && report.aggregate == Direction::AFavored);
  return report;
}

} // namespace twospace
