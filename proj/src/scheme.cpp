#include "twospace/scheme.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace twospace {

namespace {

using nlohmann::ordered_json;

void require_fields(const ordered_json& obj, const std::string& where,
                    const std::set<std::string>& allowed) {
  if (!obj.is_object())
    throw ParseError("scheme: " + where + " must be a JSON object");
  for (const auto& [key, value] : obj.items())
    if (allowed.count(key) == 0)
      throw ParseError("scheme: unknown field '" + key + "' in " + where);
}

Rational parse_rat(const ordered_json& v, const std::string& where) {
  if (!v.is_string())
    throw ParseError("scheme: " + where + " must be a rational string \"p/q\"");
  return Rational::parse(v.get<std::string>());
}

std::map<std::string, Rational> parse_weight_map(const ordered_json& v,
                                                 const std::string& where) {
  if (!v.is_object())
    throw ParseError("scheme: " + where + " must be an object");
  std::map<std::string, Rational> out;
  for (const auto& [key, value] : v.items())
    out.emplace(key, parse_rat(value, where + "." + key));
  return out;
}

} // namespace

std::string to_string(SpaceId s) {
  return s == SpaceId::S1 ? "S1" : "S2";
}

const std::pair<std::string, std::string>&
SchemeInstance::cts_of(const std::string& key) const {
  const auto it = encryption.find(key);
  if (it == encryption.end())
    throw Error("scheme: no encryption entry for key '" + key + "'");
  return it->second;
}

const std::string& SchemeInstance::ct_of(const std::string& key, int bit) const {
  const auto& pair = cts_of(key);
  return bit == 0 ? pair.first : pair.second;
}

std::vector<std::string> validate_scheme(const SchemeInstance& s) {
  std::vector<std::string> violations;
  const auto flag = [&](const std::string& v) { violations.push_back(v); };

  if (s.space_prior < Rational(0) || s.space_prior > Rational(1))
    flag("space_prior " + s.space_prior.str() + " outside [0,1]");

  // Disjointness and per-space mass.
  for (const auto& [key, w] : s.space1)
    if (s.space2.count(key))
      flag("spaces not disjoint: " + key);
  for (const auto* space : {&s.space1, &s.space2}) {
    const std::string name = space == &s.space1 ? "space1" : "space2";
    Rational mass;
    for (const auto& [key, w] : *space) {
      if (w.sign() < 0)
        flag(name + " weight of " + key + " is negative");
      mass += w;
    }
    if (mass != Rational(1))
      flag(name + " mass " + mass.str() + " != 1");
  }

  // Encryption totality on (all keys) x {0,1}; no stray entries.
  for (const auto* space : {&s.space1, &s.space2})
    for (const auto& [key, w] : *space)
      if (s.encryption.count(key) == 0)
        flag("encryption missing key " + key);
  for (const auto& [key, cts] : s.encryption)
    if (!s.space1.count(key) && !s.space2.count(key))
      flag("encryption references unknown key " + key);

  // Receiver: prior mass, keygen totality, observed key reachability.
  Rational priv_mass;
  for (const auto& [priv, w] : s.receiver.private_keys) {
    if (w.sign() < 0)
      flag("private key weight of " + priv + " is negative");
    priv_mass += w;
    if (s.receiver.keygen.count(priv) == 0)
      flag("keygen missing private key " + priv);
  }
  if (priv_mass != Rational(1))
    flag("private_keys mass " + priv_mass.str() + " != 1");
  for (const auto& [priv, pub] : s.receiver.keygen)
    if (s.receiver.private_keys.count(priv) == 0)
      flag("keygen references unknown private key " + priv);

  Rational observed_mass;
  for (const auto& [priv, w] : s.receiver.private_keys) {
    const auto it = s.receiver.keygen.find(priv);
    if (it != s.receiver.keygen.end() && it->second == s.receiver.observed_public_key)
      observed_mass += w;
  }
  if (!(observed_mass > Rational(0)))
    flag("observed_public_key " + s.receiver.observed_public_key +
         " has zero prior mass");

  // Reachable ciphertexts: positive-probability key draws, either bit.
  std::set<std::string> reachable;
  for (const auto* space : {&s.space1, &s.space2}) {
    const bool space_possible = (space == &s.space1)
                                    ? s.space_prior > Rational(0)
                                    : s.space_prior < Rational(1);
    if (!space_possible)
      continue;
    for (const auto& [key, w] : *space) {
      if (w.is_zero())
        continue;
      const auto it = s.encryption.find(key);
      if (it == s.encryption.end())
        continue; // flagged above
      reachable.insert(it->second.first);
      reachable.insert(it->second.second);
    }
  }

  // Decryption totality for every private key with positive posterior mass.
  for (const auto& [priv, w] : s.receiver.private_keys) {
    const auto kg = s.receiver.keygen.find(priv);
    const bool posterior_positive =
        w > Rational(0) && kg != s.receiver.keygen.end() &&
        kg->second == s.receiver.observed_public_key;
    if (!posterior_positive)
      continue;
    const auto dec = s.receiver.decryption.find(priv);
    if (dec == s.receiver.decryption.end()) {
      flag("decryption missing table for private key " + priv);
      continue;
    }
    for (const auto& ct : reachable)
      if (dec->second.count(ct) == 0)
        flag("decryption of " + priv + " undefined on reachable ciphertext " + ct);
    for (const auto& [ct, bit] : dec->second)
      if (bit != 0 && bit != 1)
        flag("decryption of " + priv + " at " + ct + " is not a bit");
  }

  return violations;
}

SchemeInstance parse_scheme_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("scheme: invalid JSON: ") + e.what());
  }

  require_fields(doc, "document",
                 {"name", "space_prior", "spaces", "encryption", "receiver"});
  for (const char* field : {"name", "space_prior", "spaces", "encryption", "receiver"})
    if (!doc.contains(field))
      throw ParseError(std::string("scheme: missing field '") + field + "'");

  SchemeInstance s;
  if (!doc["name"].is_string())
    throw ParseError("scheme: name must be a string");
  s.name = doc["name"].get<std::string>();
  s.space_prior = parse_rat(doc["space_prior"], "space_prior");

  require_fields(doc["spaces"], "spaces", {"S1", "S2"});
  for (const char* sp : {"S1", "S2"})
    if (!doc["spaces"].contains(sp))
      throw ParseError(std::string("scheme: spaces missing '") + sp + "'");
  s.space1 = parse_weight_map(doc["spaces"]["S1"], "spaces.S1");
  s.space2 = parse_weight_map(doc["spaces"]["S2"], "spaces.S2");

  if (!doc["encryption"].is_object())
    throw ParseError("scheme: encryption must be an object");
  for (const auto& [key, cts] : doc["encryption"].items()) {
    require_fields(cts, "encryption." + key, {"0", "1"});
    if (!cts.contains("0") || !cts.contains("1"))
      throw ParseError("scheme: encryption." + key + " must map both bits");
    if (!cts["0"].is_string() || !cts["1"].is_string())
      throw ParseError("scheme: encryption." + key + " ciphertexts must be strings");
    s.encryption[key] = {cts["0"].get<std::string>(), cts["1"].get<std::string>()};
  }

  const auto& recv = doc["receiver"];
  require_fields(recv, "receiver",
                 {"private_keys", "keygen", "decryption", "observed_public_key"});
  for (const char* field : {"private_keys", "keygen", "decryption", "observed_public_key"})
    if (!recv.contains(field))
      throw ParseError(std::string("scheme: receiver missing '") + field + "'");

  s.receiver.private_keys = parse_weight_map(recv["private_keys"], "receiver.private_keys");
  if (!recv["keygen"].is_object())
    throw ParseError("scheme: receiver.keygen must be an object");
  for (const auto& [priv, pub] : recv["keygen"].items()) {
    if (!pub.is_string())
      throw ParseError("scheme: receiver.keygen." + priv + " must be a string");
    s.receiver.keygen[priv] = pub.get<std::string>();
  }
  if (!recv["decryption"].is_object())
    throw ParseError("scheme: receiver.decryption must be an object");
  for (const auto& [priv, table] : recv["decryption"].items()) {
    if (!table.is_object())
      throw ParseError("scheme: receiver.decryption." + priv + " must be an object");
    for (const auto& [ct, bit] : table.items()) {
      if (!bit.is_number_integer())
        throw ParseError("scheme: receiver.decryption." + priv + "." + ct +
                         " must be 0 or 1");
      s.receiver.decryption[priv][ct] = bit.get<int>();
    }
  }
  if (!recv["observed_public_key"].is_string())
    throw ParseError("scheme: receiver.observed_public_key must be a string");
  s.receiver.observed_public_key = recv["observed_public_key"].get<std::string>();

  return s;
}

SchemeInstance load_scheme_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("scheme: cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scheme_json(buf.str());
}

std::string scheme_to_json(const SchemeInstance& s) {
  ordered_json doc;
  doc["name"] = s.name;
  doc["space_prior"] = s.space_prior.str();
  ordered_json spaces;
  for (const auto& [name, space] :
       {std::pair{"S1", &s.space1}, std::pair{"S2", &s.space2}}) {
    ordered_json sp = ordered_json::object();
    for (const auto& [key, w] : *space)
      sp[key] = w.str();
    spaces[name] = std::move(sp);
  }
  doc["spaces"] = std::move(spaces);
  ordered_json enc = ordered_json::object();
  for (const auto& [key, cts] : s.encryption)
    enc[key] = {{"0", cts.first}, {"1", cts.second}};
  doc["encryption"] = std::move(enc);
  ordered_json recv;
  ordered_json privs = ordered_json::object();
  for (const auto& [priv, w] : s.receiver.private_keys)
    privs[priv] = w.str();
  recv["private_keys"] = std::move(privs);
  ordered_json keygen = ordered_json::object();
  for (const auto& [priv, pub] : s.receiver.keygen)
    keygen[priv] = pub;
  recv["keygen"] = std::move(keygen);
  ordered_json dec = ordered_json::object();
  for (const auto& [priv, table] : s.receiver.decryption) {
    ordered_json t = ordered_json::object();
    for (const auto& [ct, bit] : table)
      t[ct] = bit;
    dec[priv] = std::move(t);
  }
  recv["decryption"] = std::move(dec);
  recv["observed_public_key"] = s.receiver.observed_public_key;
  doc["receiver"] = std::move(recv);
  return doc.dump(2) + "\n";
}

} // namespace twospace
