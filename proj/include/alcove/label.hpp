#pragma once

#include "alcove/rational.hpp"

#include <compare>
#include <string>
#include <string_view>

namespace alcove {

// An affine Cartan label "Xn^r" from the Kac tables Aff 1-3.
struct AffineLabel {
  char series = 'A';  // A..G
  int rank = 1;       // number of finite nodes
  int twist = 1;      // 1, 2 or 3

  auto operator<=>(const AffineLabel&) const = default;

  std::string str() const {
    return std::string(1, series) + std::to_string(rank) + "^" + std::to_string(twist);
  }

  static AffineLabel parse(std::string_view s);
};

inline bool label_is_valid(const AffineLabel& l, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (l.series < 'A' || l.series > 'G') return fail("unknown series '" + std::string(1, l.series) + "'");
  if (l.rank < 1) return fail("rank must be positive");
  switch (l.twist) {
    case 1:
      switch (l.series) {
        case 'A': return true;
        case 'B': return l.rank >= 3 || fail("B_n^(1) requires n >= 3");
        case 'C': return l.rank >= 2 || fail("C_n^(1) requires n >= 2");
        case 'D': return l.rank >= 4 || fail("D_n^(1) requires n >= 4");
        case 'E': return (l.rank >= 6 && l.rank <= 8) || fail("E_n^(1) requires n in {6,7,8}");
        case 'F': return l.rank == 4 || fail("F_n^(1) requires n = 4");
        case 'G': return l.rank == 2 || fail("G_n^(1) requires n = 2");
      }
      return fail("unknown series");
    case 2:
      switch (l.series) {
        case 'A':
          if (l.rank >= 2 && l.rank % 2 == 0) return true;  // A_{2n}^(2), n >= 1
          if (l.rank >= 5 && l.rank % 2 == 1) return true;  // A_{2n-1}^(2), n >= 3
          return fail("A_m^(2) requires m even >= 2 or m odd >= 5");
        case 'D': return l.rank >= 3 || fail("D_m^(2) requires m >= 3");
        case 'E': return l.rank == 6 || fail("E_m^(2) requires m = 6");
        default: return fail("no twist-2 label in series " + std::string(1, l.series));
      }
    case 3:
      if (l.series == 'D' && l.rank == 4) return true;
      return fail("the only twist-3 label is D4^3");
    default:
      return fail("twist must be 1, 2 or 3");
  }
}

inline AffineLabel AffineLabel::parse(std::string_view s) {
  auto bad = [&](const std::string& why) {
    return ParseError("invalid affine label '" + std::string(s) + "': " + why);
  };
  if (s.size() < 4) throw bad("expected form Xn^r");
  AffineLabel l;
  l.series = s[0];
  std::size_t i = 1;
  while (i < s.size() && s[i] >= '0' && s[i] <= '9') ++i;
  if (i == 1) throw bad("missing rank");
  if (i >= s.size() || s[i] != '^') throw bad("missing '^'");
  l.rank = std::stoi(std::string(s.substr(1, i - 1)));
  std::size_t j = i + 1;
  if (j >= s.size()) throw bad("missing twist");
  for (std::size_t k = j; k < s.size(); ++k)
    if (s[k] < '0' || s[k] > '9') throw bad("malformed twist");
  l.twist = std::stoi(std::string(s.substr(j)));
  std::string why;
  if (!label_is_valid(l, &why)) throw bad(why);
  return l;
}

// Finite Dynkin type of the subdiagram obtained by removing node 0.
// Twisted assignments follow the Kac tables: A_{2n}^(2) and A_{2n-1}^(2)
// give C_n (with C_1 = A_1), D_{n+1}^(2) gives B_n, E_6^(2) gives F_4 and
// D_4^(3) gives G_2.
struct FiniteType {
  char series;
  int rank;
};

inline FiniteType finite_part(const AffineLabel& l) {
  if (l.twist == 1) return {l.series, l.rank};
  if (l.twist == 3) return {'G', 2};
  switch (l.series) {
    case 'A': {
      int n = (l.rank % 2 == 0) ? l.rank / 2 : (l.rank + 1) / 2;
      if (n == 1) return {'A', 1};
      return {'C', n};
    }
    case 'D': return {'B', l.rank - 1};
    case 'E': return {'F', 4};
  }
  throw Error("unreachable: finite_part");
}

inline long long a0_of(const AffineLabel& l) {
  return (l.series == 'A' && l.twist == 2 && l.rank % 2 == 0) ? 2 : 1;
}

}  // namespace alcove
