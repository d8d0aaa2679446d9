#include "twospace/dist.hpp"

#include <algorithm>
#include <map>

namespace twospace {

namespace {

std::string label_str(const Label& l) {
  std::string s = "(";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i)
      s += ",";
    s += l[i];
  }
  return s + ")";
}

} // namespace

FiniteDist FiniteDist::from_weights(const std::vector<Outcome>& pairs) {
  std::map<Label, Rational> acc;
  Rational total;
  for (const auto& [label, w] : pairs) {
    if (w.sign() < 0)
      throw ValidationError("dist: negative weight for " + label_str(label));
    if (!acc.emplace(label, w).second)
      throw ValidationError("dist: duplicate label " + label_str(label));
    total += w;
  }
  if (total.is_zero())
    throw ValidationError("dist: zero total mass");
  FiniteDist d;
  d.outcomes_.reserve(acc.size());
  for (const auto& [label, w] : acc)
    if (!w.is_zero())
      d.outcomes_.emplace_back(label, w / total);
  return d;
}

FiniteDist FiniteDist::uniform(const std::vector<Label>& labels) {
  std::vector<Outcome> pairs;
  pairs.reserve(labels.size());
  for (const auto& l : labels)
    pairs.emplace_back(l, Rational(1));
  return from_weights(pairs);
}

FiniteDist FiniteDist::point(const Label& label) {
  return from_weights({{label, Rational(1)}});
}

Rational FiniteDist::weight_of(const Label& l) const {
  const auto it = std::lower_bound(
      outcomes_.begin(), outcomes_.end(), l,
      [](const Outcome& o, const Label& key) { return o.first < key; });
  if (it != outcomes_.end() && it->first == l)
    return it->second;
  return Rational(0);
}

Rational FiniteDist::prob(const Event& e) const {
  Rational mass;
  for (const auto& [label, w] : outcomes_)
    if (e.contains(label))
      mass += w;
  return mass;
}

Event FiniteDist::where(const std::function<bool(const Label&)>& pred) const {
  Event e;
  for (const auto& [label, w] : outcomes_)
    if (pred(label))
      e.members.insert(label);
  return e;
}

FiniteDist FiniteDist::condition(const Event& e) const {
  std::vector<Outcome> kept;
  for (const auto& o : outcomes_)
    if (e.contains(o.first))
      kept.push_back(o);
  if (kept.empty())
    throw ValidationError("dist: conditioning on null event");
  return from_weights(kept); // renormalizes
}

FiniteDist FiniteDist::condition(
    const std::function<bool(const Label&)>& pred) const {
  return condition(where(pred));
}

FiniteDist FiniteDist::pushforward(
    const std::function<std::optional<Label>(const Label&)>& f) const {
  std::map<Label, Rational> image;
  for (const auto& [label, w] : outcomes_) {
    auto mapped = f(label);
    if (!mapped)
      throw ValidationError("dist: pushforward undefined on " + label_str(label));
    image[*mapped] += w;
  }
  FiniteDist d;
  d.outcomes_.assign(image.begin(), image.end());
  return d;
}

FiniteDist FiniteDist::project(const std::vector<std::size_t>& coords) const {
  return pushforward([&](const Label& l) -> std::optional<Label> {
    Label out;
    out.reserve(coords.size());
    for (std::size_t c : coords) {
      if (c >= l.size())
        return std::nullopt;
      out.push_back(l[c]);
    }
    return out;
  });
}

std::pair<Label, bool> FiniteDist::argmax() const {
  if (outcomes_.empty())
    throw ValidationError("dist: argmax of empty distribution");
  const Outcome* best = &outcomes_.front();
  bool tie = false;
  for (const auto& o : outcomes_) {
    if (o.second > best->second) {
      best = &o;
      tie = false;
    } else if (&o != best && o.second == best->second) {
      tie = true;
    }
  }
  // outcomes_ is label-sorted, so the first maximal outcome wins ties.
  return {best->first, tie};
}

FiniteDist product(const FiniteDist& a, const FiniteDist& b) {
  std::vector<FiniteDist::Outcome> pairs;
  pairs.reserve(a.size() * b.size());
  for (const auto& [la, wa] : a.outcomes()) {
    for (const auto& [lb, wb] : b.outcomes()) {
      Label joined = la;
      joined.insert(joined.end(), lb.begin(), lb.end());
      pairs.emplace_back(std::move(joined), wa * wb);
    }
  }
  return FiniteDist::from_weights(pairs);
}

} // namespace twospace
