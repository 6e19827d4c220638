#pragma once

#include "alcove/root_system.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace alcove {

// An element of the affine weight space: classical part plus level (the
// value on the canonical central element c) plus the delta coefficient.
struct AffineWeight {
  Weight classical;
  long long level = 0;
  Rat degree;  // coefficient of delta

  AffineWeight() = default;
  AffineWeight(Weight cl, long long lvl, Rat deg)
      : classical(std::move(cl)), level(lvl), degree(std::move(deg)) {}

  bool operator==(const AffineWeight& o) const {
    return level == o.level && degree == o.degree && classical == o.classical;
  }
};

inline AffineWeight lambda0(const RootSystem& rs, long long level = 1) {
  return AffineWeight(Weight(rs.rank()), level, Rat(0));
}

// A point perturbed by an infinitesimal: base + epsilon * eps.  With a
// regular eps (typically rho) the point lies on no affine hyperplane, so
// every wall comparison has a strict lexicographic answer.
struct LexPoint {
  Weight base;
  Weight eps;
  bool operator==(const LexPoint& o) const { return base == o.base && eps == o.eps; }
};

struct LexVal {
  Rat base;
  Rat eps;
  bool operator==(const LexVal& o) const { return base == o.base && eps == o.eps; }
};

inline bool lex_less(const LexVal& a, const LexVal& b) {
  return a.base < b.base || (a.base == b.base && a.eps < b.eps);
}
inline bool lex_less_const(const LexVal& a, const Rat& k) {
  return a.base < k || (a.base == k && a.eps < 0);
}
inline bool lex_greater_const(const LexVal& a, const Rat& k) {
  return a.base > k || (a.base == k && a.eps > 0);
}

// t_nu * u in (linear, translation) normal form: x |-> u(x) + nu.
class AffineElement {
 public:
  AffineElement() = default;
  AffineElement(WeylElement linear, Weight transl)
      : linear_(std::move(linear)), transl_(std::move(transl)) {}

  static AffineElement identity(const RootSystem& rs) {
    return AffineElement(rs.identity_element(), Weight(rs.rank()));
  }
  static AffineElement translation(const RootSystem& rs, Weight nu) {
    return AffineElement(rs.identity_element(), std::move(nu));
  }

  const WeylElement& linear() const { return linear_; }
  const Weight& transl() const { return transl_; }

  Weight apply(const Weight& x) const { return linear_.apply(x) + transl_; }
  LexPoint apply(const LexPoint& p) const {
    return LexPoint{linear_.apply(p.base) + transl_, linear_.apply(p.eps)};
  }

  bool operator==(const AffineElement& o) const {
    return linear_ == o.linear_ && transl_ == o.transl_;
  }

  // In-place right multiplication by the affine simple reflection r_i
  // (i = 0 is the reflection in the wall theta^vee = 1/a0).
  void rmul_simple(const RootSystem& rs, int i) {
    int n = rs.rank();
    IMat m = linear_.matrix();
    if (i >= 1) {
      const IMat& cart = rs.cartan();
      std::vector<long long> newcol(n, 0);
      for (int r = 0; r < n; ++r) {
        long long acc = m[r][i - 1];
        for (int k = 0; k < n; ++k)
          if (cart[k][i - 1] != 0) acc -= m[r][k] * cart[k][i - 1];
        newcol[r] = acc;
      }
      for (int r = 0; r < n; ++r) m[r][i - 1] = newcol[r];
    } else {
      const Root& th = rs.theta();
      std::vector<long long> v(n, 0);  // v = linear * theta (weight coords)
      for (int r = 0; r < n; ++r) {
        long long acc = 0;
        for (int k = 0; k < n; ++k)
          if (th.wcoords[k] != 0) acc += m[r][k] * th.wcoords[k];
        v[r] = acc;
      }
      for (int r = 0; r < n; ++r) transl_.fw[r] += Rat(v[r], rs.a0());
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c)
          if (th.coroot[c] != 0) m[r][c] -= v[r] * th.coroot[c];
    }
    linear_ = WeylElement(std::move(m));
  }

 private:
  WeylElement linear_;
  Weight transl_;
};

inline AffineElement affine_compose(const AffineElement& a, const AffineElement& b) {
  if (a.linear().rank() != b.linear().rank())
    throw UsageError("cannot compose affine elements over different root systems");
  // (t_nu u)(t_mu v) = t_{nu + u(mu)} (u v)
  return AffineElement(compose(a.linear(), b.linear()), a.linear().apply(b.transl()) + a.transl());
}

inline AffineElement affine_inverse(const RootSystem& rs, const AffineElement& a) {
  WeylElement inv = rs.inverse(a.linear());
  return AffineElement(inv, -inv.apply(a.transl()));
}

inline AffineElement affine_simple_reflection(const RootSystem& rs, int i) {
  AffineElement e = AffineElement::identity(rs);
  if (i < 0 || i > rs.rank())
    throw UsageError("affine reflection index " + std::to_string(i) + " out of range 0.." +
                     std::to_string(rs.rank()));
  e.rmul_simple(rs, i);
  return e;
}

inline LexPoint affine_act_point(const AffineElement& a, const LexPoint& p) { return a.apply(p); }

// --- Z_alpha and the translation lattice ----------------------------------

// The wall set in the alpha direction is { x(alpha^vee) = k : k in m Z };
// returns m = min { c > 0 : c alpha in M }.  For untwisted labels this is
// 2/<alpha,alpha> (2 for short roots in types B, C, F; 3 for short roots in
// G2; 1 otherwise), and long roots of A_{2n}^(2) get 1/2.
inline Rat z_alpha_modulus(const RootSystem& rs, const Root& alpha) {
  const Root* r = rs.find_root(alpha.simple);
  if (r == nullptr) throw DomainError("z_alpha_modulus: not a root of the finite system");
  return r->z_modulus;
}

inline const std::vector<Weight>& m_lattice_basis(const RootSystem& rs) { return rs.m_basis(); }

inline bool m_contains(const RootSystem& rs, const Weight& nu) { return rs.m_contains(nu); }

inline bool m_plus_contains(const RootSystem& rs, const Weight& nu) {
  return rs.m_contains(nu) && rs.is_dominant(nu);
}

// --- translation action on affine weights ----------------------------------

// t_alpha(L) = L + L(c) alpha - (<L, alpha> + <alpha,alpha>/2 L(c)) delta.
inline AffineWeight translate_affine_weight(const RootSystem& rs, const Weight& alpha,
                                            const AffineWeight& L) {
  rs.check_weight(alpha);
  AffineWeight out = L;
  out.degree -= rs.inner(L.classical, alpha) + rs.inner(alpha, alpha) / 2 * Rat(L.level);
  out.classical += Rat(L.level) * alpha;
  return out;
}

// (t_nu u)(L), with the linear part acting on the classical component only.
inline AffineWeight affine_act_weight(const RootSystem& rs, const AffineElement& g,
                                      const AffineWeight& L) {
  AffineWeight mid(g.linear().apply(L.classical), L.level, L.degree);
  return translate_affine_weight(rs, g.transl(), mid);
}

// --- the alcove model -------------------------------------------------------

inline LexPoint alcove_interior_point(const RootSystem& rs) {
  return LexPoint{Weight(rs.rank()), rs.rho()};
}

inline void check_regular_eps(const RootSystem& rs, const LexPoint& p) {
  rs.check_weight(p.base);
  rs.check_weight(p.eps);
  for (const Root& a : rs.positive_roots())
    if (rs.pair_coroot(p.eps, a) == 0)
      throw PreconditionError("perturbation direction is not regular (vanishes on " +
                              a.as_weight().str() + ")");
}

struct AlcoveCertificate {
  std::vector<int> word;      // reduced word for v, indices in 0..n
  AffineElement element;      // v = t_{mu'} u
  Weight mu_prime;            // v(0) = element.transl()
  WeylElement u;              // linear part of v
  LexPoint representative;    // the input point folded into the alcove
};

inline long long separating_count(const RootSystem& rs, const LexPoint& p, const LexPoint& q);

// Folds a regular point into the fundamental alcove.  Scans the finite
// walls 1..n first (smallest index), then the theta wall; the recorded word
// is reduced and v maps the representative back to the input point.
// The word length equals the gallery distance, so folding a point that is
// max_steps alcoves away is refused up front rather than ground through.
inline AlcoveCertificate fold_to_alcove(const RootSystem& rs, const LexPoint& start,
                                        long long max_steps = 2000000) {
  check_regular_eps(rs, start);
  {
    long long distance = separating_count(rs, alcove_interior_point(rs), start);
    if (distance > max_steps)
      throw PreconditionError("gallery distance " + std::to_string(distance) +
                              " exceeds the folding limit of " + std::to_string(max_steps) +
                              " (the reduced word would have that many letters)");
  }
  const int n = rs.rank();
  const Rat wall0 = Rat(1, rs.a0());
  LexPoint p = start;
  std::vector<int> word;
  AffineElement v = AffineElement::identity(rs);
  while (true) {
    int hit = -1;
    for (int i = 1; i <= n; ++i) {
      LexVal val{p.base.fw[i - 1], p.eps.fw[i - 1]};
      if (lex_less_const(val, Rat(0))) {
        hit = i;
        break;
      }
    }
    if (hit == -1) {
      LexVal val{rs.pair_theta(p.base), rs.pair_theta(p.eps)};
      if (lex_greater_const(val, wall0)) hit = 0;
    }
    if (hit == -1) break;
    if (hit >= 1) {
      rs.reflect_simple(hit, p.base);
      rs.reflect_simple(hit, p.eps);
    } else {
      const Root& th = rs.theta();
      Rat cb = rs.pair_theta(p.base) - wall0;
      Rat ce = rs.pair_theta(p.eps);
      Weight thw = th.as_weight();
      p.base -= cb * thw;
      p.eps -= ce * thw;
    }
    word.push_back(hit);
    v.rmul_simple(rs, hit);
  }
  return AlcoveCertificate{std::move(word), v, v.transl(), v.linear(), std::move(p)};
}

// Number of hyperplanes H_{alpha^vee, k}, k in Z_alpha, strictly separating
// two regular points; equals the Coxeter length of the alcove-to-alcove map.
inline long long separating_count(const RootSystem& rs, const LexPoint& p, const LexPoint& q) {
  check_regular_eps(rs, p);
  check_regular_eps(rs, q);
  long long total = 0;
  for (const Root& a : rs.positive_roots()) {
    LexVal pa{rs.pair_coroot(p.base, a), rs.pair_coroot(p.eps, a)};
    LexVal qa{rs.pair_coroot(q.base, a), rs.pair_coroot(q.eps, a)};
    if (pa == qa) continue;
    const LexVal& lo = lex_less(pa, qa) ? pa : qa;
    const LexVal& hi = lex_less(pa, qa) ? qa : pa;
    const Rat& m = a.z_modulus;
    // smallest t with (m t, 0) >lex lo
    Rat lo_t = lo.base / m;
    Int tmin = is_integer(lo_t) ? (lo.eps < 0 ? numerator(lo_t) : numerator(lo_t) + 1)
                                : rat_floor(lo_t) + 1;
    // largest t with (m t, 0) <lex hi
    Rat hi_t = hi.base / m;
    Int tmax = is_integer(hi_t) ? (hi.eps > 0 ? numerator(hi_t) : numerator(hi_t) - 1)
                                : rat_floor(hi_t);
    if (tmax >= tmin) total += to_ll(tmax - tmin + 1);
  }
  return total;
}

// A reduced word for a valid affine Weyl element, recovered by folding the
// image of an interior point back to the fundamental alcove.
inline std::vector<int> reduced_word_of(const RootSystem& rs, const AffineElement& g) {
  if (!rs.m_contains(g.transl()))
    throw PreconditionError("invalid affine Weyl element: translation part is not in M");
  LexPoint x0 = alcove_interior_point(rs);
  AlcoveCertificate cert = fold_to_alcove(rs, g.apply(x0));
  if (!(cert.element == g)) throw Error("reduced_word_of: folding did not recover the element");
  return cert.word;
}

// Non-strict base-only membership in the closed fundamental alcove.
inline bool in_closed_alcove(const RootSystem& rs, const Weight& x) {
  if (!rs.is_dominant(x)) return false;
  return rs.pair_theta(x) <= Rat(1, rs.a0());
}

}  // namespace alcove
