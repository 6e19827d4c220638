#pragma once

#include "alcove/demazure.hpp"
#include "alcove/steinberg.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace alcove {

using json = nlohmann::ordered_json;

inline json weight_to_json(const Weight& w) {
  json a = json::array();
  for (const Rat& c : w.fw) a.push_back(rat_str(c));
  return a;
}

inline Weight weight_from_json(const nlohmann::json& a, int rank) {
  if (!a.is_array() || static_cast<int>(a.size()) != rank)
    throw ParseError("expected an array of " + std::to_string(rank) + " coordinates");
  Coords c(rank);
  for (int i = 0; i < rank; ++i) c[i] = parse_rat(a[i].get<std::string>());
  return Weight(std::move(c));
}

inline json coords_to_json(const Coords& b) {
  json a = json::array();
  for (const Rat& c : b) a.push_back(rat_str(c));
  return a;
}

// --- alcove certificates -----------------------------------------------------

inline json alcove_certificate_to_json(const RootSystem& rs, const AlcoveCertificate& c) {
  json j;
  j["type"] = "alcove_certificate";
  j["algebra"] = rs.label().str();
  j["word"] = c.word;
  j["linear_word"] = rs.reduced_word(c.u);
  j["transl_coords"] = coords_to_json(rs.root_coords(c.element.transl()));
  j["mu_prime_coords"] = weight_to_json(c.mu_prime);
  return j;
}

// --- Steinberg certificates --------------------------------------------------

inline json certificate_to_json(const RootSystem& rs, const SteinbergCertificate& c) {
  json j;
  j["type"] = "steinberg_certificate";
  j["algebra"] = rs.label().str();
  j["level"] = c.level;
  j["lambda"] = weight_to_json(c.lambda);
  j["mu"] = weight_to_json(c.mu);
  j["mu_root_coords"] = coords_to_json(rs.root_coords(c.mu));
  j["w_word"] = rs.reduced_word(c.w);
  json L;
  L["classical"] = weight_to_json(c.Lambda.classical);
  L["level"] = c.Lambda.level;
  L["degree"] = rat_str(c.Lambda.degree);
  j["Lambda"] = std::move(L);
  j["fold_word"] = c.fold_word;
  j["vD_word"] = c.vD_word;
  return j;
}

inline SteinbergCertificate certificate_from_json(const RootSystem& rs, const nlohmann::json& j) {
  SteinbergCertificate c;
  if (j.value("type", "") != "steinberg_certificate")
    throw ParseError("not a steinberg_certificate record");
  if (AffineLabel::parse(j.at("algebra").get<std::string>()) != rs.label())
    throw ParseError("certificate algebra does not match " + rs.label().str());
  c.level = j.at("level").get<long long>();
  c.lambda = weight_from_json(j.at("lambda"), rs.rank());
  c.mu = weight_from_json(j.at("mu"), rs.rank());
  c.w = rs.element_from_word(j.at("w_word").get<std::vector<int>>());
  const auto& L = j.at("Lambda");
  c.Lambda = AffineWeight(weight_from_json(L.at("classical"), rs.rank()),
                          L.at("level").get<long long>(), parse_rat(L.at("degree").get<std::string>()));
  c.fold_word = j.value("fold_word", std::vector<int>{});
  c.vD_word = j.at("vD_word").get<std::vector<int>>();
  return c;
}

// --- characters ---------------------------------------------------------------

inline json character_to_json(const RootSystem& rs, const Weight& lambda, const CharPoly& f) {
  return detail::char_poly_to_json(rs.label(), integral_coords(rs, lambda), f);
}

}  // namespace alcove
