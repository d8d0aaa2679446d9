#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "twospace/dist.hpp"
#include "twospace/rational.hpp"

namespace twospace {

/// Which of the sender's two key spaces a key was drawn from.
enum class SpaceId { S1, S2 };

std::string to_string(SpaceId s);

/// Receiver side of a scheme: a prior over private keys, a deterministic
/// keygen map, per-private-key decryption tables, and the public key the
/// eavesdropper actually observed.
struct ReceiverModel {
  std::map<std::string, Rational> private_keys;                    // prior
  std::map<std::string, std::string> keygen;                       // priv -> pub
  std::map<std::string, std::map<std::string, int>> decryption;    // priv -> ct -> bit
  std::string observed_public_key;
};

/// One fully explicit instantiation of the two-space bit-transmission
/// scheme: the sender draws a key space (S1 with probability space_prior),
/// a key within the space, and a uniform secret bit; the ciphertext is
/// encryption[key] at that bit. The receiver decrypts with a private key
/// drawn from the prior conditioned on the observed public key.
struct SchemeInstance {
  std::string name;
  Rational space_prior;                                   // Pr(space = S1)
  std::map<std::string, Rational> space1;                 // key -> weight
  std::map<std::string, Rational> space2;
  std::map<std::string, std::pair<std::string, std::string>> encryption; // key -> (ct for 0, ct for 1)
  ReceiverModel receiver;

  bool key_in_space1(const std::string& key) const { return space1.count(key) != 0; }
  const std::pair<std::string, std::string>& cts_of(const std::string& key) const;
  const std::string& ct_of(const std::string& key, int bit) const;
};

/// Checks every structural invariant. Violations are data, not failures:
/// the returned strings name the offending field and rule, and an empty
/// list means the instance is valid.
std::vector<std::string> validate_scheme(const SchemeInstance& s);

/// Parses the scheme JSON document. Unknown fields and malformed rationals
/// are rejected with ParseError; semantic rules are left to validate_scheme.
SchemeInstance parse_scheme_json(const std::string& text);

/// Reads and parses a scheme file. Throws ParseError on I/O failure.
SchemeInstance load_scheme_file(const std::string& path);

/// Serializes back to the scheme JSON document format.
std::string scheme_to_json(const SchemeInstance& s);

} // namespace twospace
