#pragma once

#include "alcove/steinberg.hpp"

#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace alcove {

// The character kernel is untwisted-only and works over integral affine
// weights, where classical coordinates and delta degrees are integers.

struct CharKey {
  std::vector<long long> cl;  // classical part, fundamental-weight coordinates
  long long deg = 0;          // delta degree
  bool operator==(const CharKey& o) const { return deg == o.deg && cl == o.cl; }
  bool operator<(const CharKey& o) const {
    if (deg != o.deg) return deg < o.deg;
    return cl < o.cl;
  }
};

struct CharKeyHash {
  std::size_t operator()(const CharKey& k) const {
    std::size_t h = 1469598103934665603ull;
    auto mix = [&h](long long v) {
      h ^= static_cast<std::size_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    };
    mix(k.deg);
    for (long long c : k.cl) mix(c);
    return h;
  }
};

// Finitely supported integer-multiplicity map on affine weights of one
// fixed level; no zero multiplicities are stored.
class CharPoly {
 public:
  CharPoly() = default;
  CharPoly(int rank, long long level) : rank_(rank), level_(level) {}

  static CharPoly monomial(const RootSystem& rs, const AffineWeight& L) {
    rs.check_weight(L.classical);
    CharPoly f(rs.rank(), L.level);
    CharKey k;
    k.cl.resize(rs.rank());
    for (int i = 0; i < rs.rank(); ++i) k.cl[i] = rat_to_ll(L.classical.fw[i]);
    k.deg = rat_to_ll(L.degree);
    f.add(std::move(k), 1);
    return f;
  }

  int rank() const { return rank_; }
  long long level() const { return level_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const std::unordered_map<CharKey, long long, CharKeyHash>& terms() const { return terms_; }

  void add(CharKey k, long long mult) {
    if (mult == 0) return;
    auto [it, inserted] = terms_.try_emplace(std::move(k), mult);
    if (!inserted) {
      it->second += mult;
      if (it->second == 0) terms_.erase(it);
    }
  }

  bool operator==(const CharPoly& o) const {
    return rank_ == o.rank_ && level_ == o.level_ && terms_ == o.terms_;
  }

  std::vector<std::pair<CharKey, long long>> sorted_terms() const {
    std::vector<std::pair<CharKey, long long>> v(terms_.begin(), terms_.end());
    std::sort(v.begin(), v.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return v;
  }

  AffineWeight term_weight(const CharKey& k) const {
    Coords c(k.cl.size());
    for (std::size_t i = 0; i < k.cl.size(); ++i) c[i] = Rat(k.cl[i]);
    return AffineWeight(Weight(std::move(c)), level_, Rat(k.deg));
  }

 private:
  int rank_ = 0;
  long long level_ = 0;
  std::unordered_map<CharKey, long long, CharKeyHash> terms_;
};

namespace detail {

inline void require_untwisted(const RootSystem& rs) {
  if (!rs.untwisted())
    throw UnsupportedError("the character kernel supports untwisted labels only, got " +
                           rs.label().str());
}

inline long long theta_pairing(const RootSystem& rs, const std::vector<long long>& cl) {
  const Root& th = rs.theta();
  long long acc = 0;
  for (int i = 0; i < rs.rank(); ++i) acc += th.coroot[i] * cl[i];
  return acc;
}

}  // namespace detail

// One Demazure operator D_i, i in 0..n, extended linearly over the string
// formula: for m = <mu, alpha_i^vee>,
//   m >= 0  ->  sum_{j=0..m} e^{mu - j alpha_i}
//   m = -1  ->  0
//   m <= -2 ->  - sum_{j=1..-m-1} e^{mu + j alpha_i}
// with alpha_0 = delta - theta and alpha_0^vee = c - theta^vee.
inline CharPoly demazure_step(const RootSystem& rs, int i, const CharPoly& f) {
  detail::require_untwisted(rs);
  const int n = rs.rank();
  if (i < 0 || i > n) throw UsageError("Demazure operator index out of range 0..n");
  CharPoly out(f.rank(), f.level());
  const Root& th = rs.theta();
  const IMat& cart = rs.cartan();
  for (const auto& [key, mult] : f.terms()) {
    long long m = (i == 0) ? f.level() - detail::theta_pairing(rs, key.cl) : key.cl[i - 1];
    auto shifted = [&](long long j) {  // e^{mu - j alpha_i}
      CharKey k = key;
      if (i == 0) {
        for (int r = 0; r < n; ++r) k.cl[r] += j * th.wcoords[r];
        k.deg -= j;
      } else {
        for (int r = 0; r < n; ++r) k.cl[r] -= j * cart[r][i - 1];
      }
      return k;
    };
    if (m >= 0) {
      for (long long j = 0; j <= m; ++j) out.add(shifted(j), mult);
    } else if (m <= -2) {
      for (long long j = 1; j <= -m - 1; ++j) out.add(shifted(-j), -mult);
    }
  }
  return out;
}

// --- classical and graded projections --------------------------------------

using WeightVec = std::vector<long long>;
using ClassicalChar = std::map<WeightVec, long long>;

inline ClassicalChar classical_character(const CharPoly& f) {
  ClassicalChar out;
  for (const auto& [key, mult] : f.terms()) {
    auto [it, inserted] = out.try_emplace(key.cl, mult);
    if (!inserted && (it->second += mult) == 0) out.erase(it);
  }
  return out;
}

inline long long dimension(const CharPoly& f) {
  long long d = 0;
  for (const auto& [key, mult] : f.terms()) d += mult;
  return d;
}

inline long long char_dimension(const ClassicalChar& c) {
  long long d = 0;
  for (const auto& [w, mult] : c) d += mult;
  return d;
}

struct GradedClassicalChar {
  // degree -> classical layer; degrees count up from the generator layer
  // (the minimal delta degree), matching the current-algebra grading.
  std::map<long long, ClassicalChar> layers;
  bool operator==(const GradedClassicalChar& o) const { return layers == o.layers; }
};

inline GradedClassicalChar graded_classical_character(const CharPoly& f) {
  GradedClassicalChar g;
  if (f.empty()) return g;
  long long dmin = 0;
  bool first = true;
  for (const auto& [key, mult] : f.terms()) {
    if (first || key.deg < dmin) dmin = key.deg;
    first = false;
  }
  for (const auto& [key, mult] : f.terms()) {
    auto& layer = g.layers[key.deg - dmin];
    auto [it, inserted] = layer.try_emplace(key.cl, mult);
    if (!inserted && (it->second += mult) == 0) layer.erase(it);
  }
  for (auto it = g.layers.begin(); it != g.layers.end();)
    it = it->second.empty() ? g.layers.erase(it) : std::next(it);
  return g;
}

inline GradedClassicalChar grade_shift(GradedClassicalChar g, long long d) {
  if (d < 0) throw PreconditionError("grade_shift requires d >= 0");
  if (d == 0) return g;
  GradedClassicalChar out;
  for (auto& [deg, layer] : g.layers) out.layers.emplace(deg + d, std::move(layer));
  return out;
}

inline GradedClassicalChar graded_sum(const GradedClassicalChar& a, const GradedClassicalChar& b) {
  GradedClassicalChar out = a;
  for (const auto& [deg, layer] : b.layers) {
    auto& dst = out.layers[deg];
    for (const auto& [w, mult] : layer) {
      auto [it, inserted] = dst.try_emplace(w, mult);
      if (!inserted && (it->second += mult) == 0) dst.erase(it);
    }
    if (dst.empty()) out.layers.erase(deg);
  }
  return out;
}

inline ClassicalChar char_sum(const ClassicalChar& a, const ClassicalChar& b) {
  ClassicalChar out = a;
  for (const auto& [w, mult] : b) {
    auto [it, inserted] = out.try_emplace(w, mult);
    if (!inserted && (it->second += mult) == 0) out.erase(it);
  }
  return out;
}

// Convolution of weight multiplicities (classical character of the tensor
// product).
inline ClassicalChar char_product(const ClassicalChar& a, const ClassicalChar& b) {
  ClassicalChar out;
  for (const auto& [wa, ma] : a)
    for (const auto& [wb, mb] : b) {
      WeightVec w(wa.size());
      for (std::size_t i = 0; i < wa.size(); ++i) w[i] = wa[i] + wb[i];
      auto [it, inserted] = out.try_emplace(std::move(w), ma * mb);
      if (!inserted && (it->second += ma * mb) == 0) out.erase(it);
    }
  return out;
}

inline ClassicalChar trivial_classical_char(int rank) {
  ClassicalChar c;
  c.emplace(WeightVec(rank, 0), 1);
  return c;
}

// dim V(lambda) by the product over positive roots of
// <lambda+rho, alpha^vee> / <rho, alpha^vee>; an independent oracle for the
// stable range of Demazure characters.
inline Int weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  if (!rs.is_dominant_integral(lambda))
    throw PreconditionError("weyl_dimension needs a dominant integral weight");
  Rat prod(1);
  Weight shifted = lambda + rs.rho();
  for (const Root& a : rs.positive_roots())
    prod *= rs.pair_coroot(shifted, a) / rs.pair_coroot(rs.rho(), a);
  if (!is_integer(prod)) throw Error("Weyl dimension did not come out integral");
  return numerator(prod);
}

// --- the persistent character cache ----------------------------------------

class CharCache;
inline CharPoly demazure_character(const RootSystem& rs, long long level, const Weight& lambda,
                                   CharCache* cache = nullptr);

namespace detail {

inline nlohmann::ordered_json char_poly_to_json(const AffineLabel& label,
                                                const std::vector<long long>& lambda_coords,
                                                const CharPoly& f) {
  nlohmann::ordered_json j;
  j["label"] = label.str();
  j["level"] = f.level();
  j["lambda_coords"] = lambda_coords;
  auto& terms = j["terms"] = nlohmann::ordered_json::array();
  for (const auto& [key, mult] : f.sorted_terms()) {
    nlohmann::ordered_json t;
    t["classical_coords"] = key.cl;
    t["delta_deg_num"] = key.deg;
    t["delta_deg_den"] = 1;
    t["mult"] = mult;
    terms.push_back(std::move(t));
  }
  return j;
}

struct CacheEntry {
  AffineLabel label;
  long long level = 0;
  std::vector<long long> lambda_coords;
  CharPoly poly;
};

inline CacheEntry char_poly_from_json(const nlohmann::json& j) {
  CacheEntry e;
  e.label = AffineLabel::parse(j.at("label").get<std::string>());
  e.level = j.at("level").get<long long>();
  e.lambda_coords = j.at("lambda_coords").get<std::vector<long long>>();
  e.poly = CharPoly(static_cast<int>(e.lambda_coords.size()), e.level);
  for (const auto& t : j.at("terms")) {
    CharKey k;
    k.cl = t.at("classical_coords").get<std::vector<long long>>();
    long long num = t.at("delta_deg_num").get<long long>();
    long long den = t.at("delta_deg_den").get<long long>();
    if (den != 1) throw ParseError("cache entry has a non-integral delta degree");
    k.deg = num;
    long long mult = t.at("mult").get<long long>();
    if (mult == 0) throw ParseError("cache entry stores a zero multiplicity");
    if (k.cl.size() != e.lambda_coords.size()) throw ParseError("cache entry rank mismatch");
    e.poly.add(std::move(k), mult);
  }
  return e;
}

}  // namespace detail

// Disk-backed memo for Demazure characters keyed by (label, level, lambda).
// Reads are lock-free on the filesystem; writes go through a temp file and
// an atomic rename.  An instance without a directory is an in-memory memo.
class CharCache {
 public:
  CharCache() = default;
  explicit CharCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(*dir_);
  }

  bool persistent() const { return dir_.has_value(); }
  const std::filesystem::path& dir() const { return *dir_; }

  static std::string entry_name(const AffineLabel& label, long long level,
                                const std::vector<long long>& coords) {
    std::string s(1, label.series);
    s += std::to_string(label.rank) + "x" + std::to_string(label.twist);
    s += "-l" + std::to_string(level) + "-w";
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) s += "_";
      s += std::to_string(coords[i]);
    }
    return s + ".json";
  }

  std::optional<CharPoly> lookup(const AffineLabel& label, long long level,
                                 const std::vector<long long>& coords) {
    std::string key = entry_name(label, level, coords);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    if (!dir_) return std::nullopt;
    std::filesystem::path p = *dir_ / key;
    std::ifstream in(p);
    if (!in) return std::nullopt;
    try {
      nlohmann::json j = nlohmann::json::parse(in);
      detail::CacheEntry e = detail::char_poly_from_json(j);
      if (e.label != label || e.level != level || e.lambda_coords != coords) return std::nullopt;
      std::lock_guard<std::mutex> lock(mu_);
      memo_.emplace(key, e.poly);
      return e.poly;
    } catch (const std::exception&) {
      return std::nullopt;  // unreadable entries are reported by cache_admin, never used
    }
  }

  void store(const AffineLabel& label, long long level, const std::vector<long long>& coords,
             const CharPoly& f) {
    std::string key = entry_name(label, level, coords);
    {
      std::lock_guard<std::mutex> lock(mu_);
      memo_.emplace(key, f);
    }
    if (!dir_) return;
    nlohmann::ordered_json j = detail::char_poly_to_json(label, coords, f);
    std::filesystem::path final_path = *dir_ / key;
    std::filesystem::path tmp =
        *dir_ / (key + ".tmp" + std::to_string(::getpid()) + "." +
                 std::to_string(tmp_counter_.fetch_add(1)));
    {
      std::ofstream out(tmp);
      out << j.dump(1) << "\n";
    }
    std::error_code ec;
    std::filesystem::rename(tmp, final_path, ec);
    if (ec) std::filesystem::remove(tmp, ec);
  }

 private:
  std::optional<std::filesystem::path> dir_;
  std::mutex mu_;
  std::map<std::string, CharPoly> memo_;
  std::atomic<unsigned long long> tmp_counter_{0};
};

// --- Demazure characters ----------------------------------------------------

inline std::vector<long long> integral_coords(const RootSystem& rs, const Weight& w) {
  std::vector<long long> c(rs.rank());
  for (int i = 0; i < rs.rank(); ++i) c[i] = rat_to_ll(w.fw[i]);
  return c;
}

// ch D(level, lambda) = D_{i1} ... D_{ik} e^Lambda along the reduced word
// from the Steinberg certificate of -w0(lambda), so that
// (s_{i1}...s_{ik})(Lambda) = level*Lambda_0 + w0(lambda) and the classical
// top of the result is V(lambda).
inline CharPoly demazure_character(const RootSystem& rs, long long level, const Weight& lambda,
                                   CharCache* cache) {
  detail::require_untwisted(rs);
  if (level < 1) throw PreconditionError("level must be a positive integer");
  if (!rs.is_dominant_integral(lambda))
    throw PreconditionError("lambda must be dominant integral, got " + lambda.str());
  std::vector<long long> coords = integral_coords(rs, lambda);
  if (cache)
    if (auto hit = cache->lookup(rs.label(), level, coords)) return *hit;

  Weight dual = -rs.apply_word(rs.w0_word(), lambda);
  SteinbergCertificate cert = steinberg_certificate(rs, level, dual);
  CharPoly f = CharPoly::monomial(rs, cert.Lambda);
  for (auto it = cert.vD_word.rbegin(); it != cert.vD_word.rend(); ++it)
    f = demazure_step(rs, *it, f);

  if (cache) cache->store(rs.label(), level, coords, f);
  return f;
}

// --- character-level verification of the decomposition theorems -------------

struct FusionReport {
  bool pass = false;
  long long lhs_dim = 0;
  long long rhs_dim = 0;
  std::vector<long long> factor_dims;  // parts first, remainder last
  std::string detail;
};

inline std::string weight_vec_str(const WeightVec& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + "]";
}

inline std::string first_difference(const ClassicalChar& a, const ClassicalChar& b) {
  for (const auto& [w, m] : a) {
    auto it = b.find(w);
    long long mb = (it == b.end()) ? 0 : it->second;
    if (mb != m)
      return "weight " + weight_vec_str(w) + ": " + std::to_string(m) + " vs " + std::to_string(mb);
  }
  for (const auto& [w, m] : b)
    if (!a.count(w)) return "weight " + weight_vec_str(w) + ": 0 vs " + std::to_string(m);
  return "";
}

// Checks ch D(l, lambda) = prod_i ch D(l, l*lambda_i) * ch D(l, lambda_0)
// at the classical-character level (the fusion product has the tensor
// product's classical character).
inline FusionReport verify_fusion(const RootSystem& rs, long long level, const Weight& lambda,
                                  const WeightDecomposition& dec, CharCache* cache = nullptr) {
  detail::require_untwisted(rs);
  VerifyResult v = validate_decomposition(rs, dec, lambda);
  if (!v) throw PreconditionError("invalid decomposition: " + v.reason);
  FusionReport rep;
  ClassicalChar lhs = classical_character(demazure_character(rs, level, lambda, cache));
  rep.lhs_dim = char_dimension(lhs);
  ClassicalChar rhs = trivial_classical_char(rs.rank());
  for (const Weight& part : dec.parts) {
    Weight scaled = part;
    scaled *= Rat(level);
    ClassicalChar factor = classical_character(demazure_character(rs, level, scaled, cache));
    rep.factor_dims.push_back(char_dimension(factor));
    rhs = char_product(rhs, factor);
  }
  ClassicalChar rem = classical_character(demazure_character(rs, level, dec.remainder, cache));
  rep.factor_dims.push_back(char_dimension(rem));
  rhs = char_product(rhs, rem);
  rep.rhs_dim = char_dimension(rhs);
  rep.pass = (lhs == rhs);
  if (!rep.pass) rep.detail = "first differing " + first_difference(lhs, rhs);
  return rep;
}

struct QSystemReport {
  bool pass_classical = false;
  bool pass_graded = false;
  Weight mu;
  long long shift = 0;
  long long dim_lhs = 0;
  long long dim_sub = 0;
  long long dim_quot = 0;
  std::string detail_classical;
  std::string detail_graded;
  bool pass() const { return pass_classical && pass_graded; }
};

inline bool is_miniscule(const RootSystem& rs, int node) {
  Weight w = rs.fundamental_weight(node);
  for (const Root& a : rs.positive_roots()) {
    Rat p = rs.pair_coroot(w, a);
    if (p != 0 && p != 1) return false;
  }
  return true;
}

inline Rat max_coroot_pairing(const RootSystem& rs, const Weight& lambda) {
  Rat m(0);
  for (const Root& a : rs.positive_roots()) m = std::max(m, rs.pair_coroot(lambda, a));
  return m;
}

// Checks the short exact sequence
//   0 -> tau*_d D(l, mu) -> D(l, lambda + l w_i) -> D(l+1, lambda + l w_i) -> 0
// with mu = l w_i + lambda - lambda(alpha_i^vee) alpha_i and
// d = lambda(alpha_i^vee): (a) classical characters exactly, (b) graded
// characters with the submodule shifted up by d.
inline QSystemReport verify_qsystem(const RootSystem& rs, long long level, const Weight& lambda,
                                    int node, CharCache* cache = nullptr) {
  detail::require_untwisted(rs);
  if (!rs.simply_laced())
    throw UnsupportedError("the Q-system check requires a simply-laced finite type");
  if (node < 1 || node > rs.rank()) throw UsageError("node index out of range");
  if (!rs.is_dominant_integral(lambda))
    throw PreconditionError("lambda must be dominant integral");
  if (!is_miniscule(rs, node))
    throw PreconditionError("omega_" + std::to_string(node) + " is not miniscule");
  Rat li = lambda.fw[node - 1];
  if (!(li > 0))
    throw PreconditionError("hypothesis lambda(alpha_i^vee) > 0 fails at node " +
                            std::to_string(node));
  Rat maxp = max_coroot_pairing(rs, lambda);
  if (Rat(level) < maxp)
    throw PreconditionError("hypothesis l >= max{lambda(alpha^vee) : alpha > 0} fails: l = " +
                            std::to_string(level) + " < " + rat_str(maxp));

  QSystemReport rep;
  rep.shift = rat_to_ll(li);
  Weight li_alpha = rs.simple_root(node);
  li_alpha *= li;
  Weight big = lambda;
  big.fw[node - 1] += Rat(level);  // lambda + l * omega_i
  rep.mu = big - li_alpha;
  if (!rs.is_dominant_integral(rep.mu)) {
    rep.detail_classical = "mu = " + rep.mu.str() + " is not dominant integral";
    return rep;
  }

  CharPoly lhs = demazure_character(rs, level, big, cache);
  CharPoly sub = demazure_character(rs, level, rep.mu, cache);
  CharPoly quot = demazure_character(rs, level + 1, big, cache);
  rep.dim_lhs = dimension(lhs);
  rep.dim_sub = dimension(sub);
  rep.dim_quot = dimension(quot);

  ClassicalChar lc = classical_character(lhs);
  ClassicalChar rc = char_sum(classical_character(sub), classical_character(quot));
  rep.pass_classical = (lc == rc);
  if (!rep.pass_classical) rep.detail_classical = "first differing " + first_difference(lc, rc);

  GradedClassicalChar lg = graded_classical_character(lhs);
  GradedClassicalChar rg =
      graded_sum(grade_shift(graded_classical_character(sub), rep.shift),
                 graded_classical_character(quot));
  rep.pass_graded = (lg == rg);
  if (!rep.pass_graded && rep.detail_graded.empty()) {
    for (const auto& [deg, layer] : lg.layers) {
      auto it = rg.layers.find(deg);
      if (it == rg.layers.end() || !(it->second == layer)) {
        rep.detail_graded = "degree " + std::to_string(deg) + ": " +
                            first_difference(layer, it == rg.layers.end() ? ClassicalChar{} : it->second);
        break;
      }
    }
    if (rep.detail_graded.empty()) rep.detail_graded = "extra degrees on the right-hand side";
  }
  return rep;
}

}  // namespace alcove
