#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "twospace/rational.hpp"

namespace twospace {

/// Outcome label: an opaque tuple of strings. Canonical order is the
/// lexicographic order of the tuple, which std::vector provides.
using Label = std::vector<std::string>;

/// An event over a distribution's outcomes, materialized as a label subset.
struct Event {
  std::set<Label> members;

  bool contains(const Label& l) const { return members.count(l) != 0; }
};

/// Finite probability distribution over labeled outcomes.
///
/// Invariants: weights are strictly positive rationals summing to exactly 1,
/// labels are pairwise distinct, and outcomes are stored in canonical
/// (lexicographic) label order. Zero-weight outcomes are dropped at
/// construction, so the stored support is the true support. All operations
/// are pure; identical inputs produce structurally identical outputs.
class FiniteDist {
public:
  using Outcome = std::pair<Label, Rational>;

  /// Builds a distribution from nonnegative weights, normalizing by their
  /// sum. Throws ValidationError on a negative weight, a duplicate label,
  /// or zero total mass.
  static FiniteDist from_weights(const std::vector<Outcome>& pairs);

  /// Uniform distribution over the given labels.
  static FiniteDist uniform(const std::vector<Label>& labels);

  /// Point mass.
  static FiniteDist point(const Label& label);

  const std::vector<Outcome>& outcomes() const { return outcomes_; }
  std::size_t size() const { return outcomes_.size(); }

  /// Weight of a label; exact zero if the label is outside the support.
  Rational weight_of(const Label& l) const;

  /// Total mass of an event.
  Rational prob(const Event& e) const;

  /// Materializes the event {labels in support satisfying pred}.
  Event where(const std::function<bool(const Label&)>& pred) const;

  /// Restriction to the event, renormalized. Throws ValidationError when
  /// the event has zero mass ("conditioning on null event").
  FiniteDist condition(const Event& e) const;
  FiniteDist condition(const std::function<bool(const Label&)>& pred) const;

  /// Image distribution under f; masses of colliding labels add. f must be
  /// total on the support (return a value for every support label); a
  /// nullopt result raises ValidationError.
  FiniteDist pushforward(
      const std::function<std::optional<Label>(const Label&)>& f) const;

  /// Marginal onto the given label coordinates (pushforward by projection).
  FiniteDist project(const std::vector<std::size_t>& coords) const;

  /// Label of maximal weight and a tie flag. On ties the lexicographically
  /// smallest maximal label is returned, deterministically.
  std::pair<Label, bool> argmax() const;

  friend bool operator==(const FiniteDist& a, const FiniteDist& b) {
    return a.outcomes_ == b.outcomes_;
  }

private:
  FiniteDist() = default;

  std::vector<Outcome> outcomes_;
};

/// Independent product; labels are the concatenated tuples and the marginals
/// recover the factors exactly.
FiniteDist product(const FiniteDist& a, const FiniteDist& b);

} // namespace twospace
