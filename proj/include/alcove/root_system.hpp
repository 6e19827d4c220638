#pragma once

#include "alcove/label.hpp"
#include "alcove/rational.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace alcove {

using Coords = std::vector<Rat>;

// A point of the rational span of the finite weight lattice, stored in
// fundamental-weight coordinates: fw[i] = x(alpha_{i+1}^vee).
struct Weight {
  Coords fw;

  Weight() = default;
  explicit Weight(Coords c) : fw(std::move(c)) {}
  explicit Weight(int rank) : fw(rank, Rat(0)) {}

  int rank() const { return static_cast<int>(fw.size()); }
  Rat& operator[](int i) { return fw[i]; }
  const Rat& operator[](int i) const { return fw[i]; }
  bool operator==(const Weight& o) const { return fw == o.fw; }

  Weight& operator+=(const Weight& o) {
    for (std::size_t i = 0; i < fw.size(); ++i) fw[i] += o.fw[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    for (std::size_t i = 0; i < fw.size(); ++i) fw[i] -= o.fw[i];
    return *this;
  }
  Weight& operator*=(const Rat& c) {
    for (auto& x : fw) x *= c;
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(const Rat& c, Weight a) { return a *= c; }
  friend Weight operator-(Weight a) {
    for (auto& x : a.fw) x = -x;
    return a;
  }
  bool is_zero() const {
    return std::all_of(fw.begin(), fw.end(), [](const Rat& x) { return x == 0; });
  }
  std::string str() const {
    std::string s = "[";
    for (std::size_t i = 0; i < fw.size(); ++i) {
      if (i) s += ",";
      s += rat_str(fw[i]);
    }
    return s + "]";
  }
};

using IMat = std::vector<std::vector<long long>>;

inline IMat identity_matrix(int n) {
  IMat m(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline IMat mat_mul(const IMat& a, const IMat& b) {
  int n = static_cast<int>(a.size());
  IMat c(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      long long aik = a[i][k];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) c[i][j] += aik * b[k][j];
    }
  return c;
}

// An element of the finite Weyl group, represented by its (integer) action
// matrix on fundamental-weight coordinates.  The matrix is a faithful
// representation, so equality of matrices decides equality of elements.
class WeylElement {
 public:
  WeylElement() = default;
  explicit WeylElement(int rank) : m_(identity_matrix(rank)) {}
  explicit WeylElement(IMat m) : m_(std::move(m)) {}

  int rank() const { return static_cast<int>(m_.size()); }
  const IMat& matrix() const { return m_; }
  bool operator==(const WeylElement& o) const { return m_ == o.m_; }

  Weight apply(const Weight& x) const {
    int n = rank();
    Weight y(n);
    for (int i = 0; i < n; ++i) {
      Rat acc(0);
      for (int j = 0; j < n; ++j)
        if (m_[i][j] != 0) acc += Rat(m_[i][j]) * x.fw[j];
      y.fw[i] = acc;
    }
    return y;
  }

  friend WeylElement compose(const WeylElement& a, const WeylElement& b) {
    return WeylElement(mat_mul(a.m_, b.m_));
  }

 private:
  IMat m_;
};

// A root of the finite system, in simple-root coordinates, together with
// cached derived data.
struct Root {
  std::vector<long long> simple;   // coordinates in the simple-root basis
  std::vector<long long> wcoords;  // fundamental-weight coordinates
  std::vector<long long> coroot;   // x(alpha^vee) = sum coroot[i] * x.fw[i]
  int height = 0;
  Rat norm2;  // <alpha, alpha> under the <theta,theta> = 2 normalization
  bool is_long = false;
  Rat z_modulus;  // Z_alpha = z_modulus * Z

  Weight as_weight() const {
    Coords c(wcoords.size());
    for (std::size_t i = 0; i < wcoords.size(); ++i) c[i] = Rat(wcoords[i]);
    return Weight(std::move(c));
  }
};

namespace detail {

inline IMat cartan_matrix_for(char series, int n) {
  // Entries follow a_ij = alpha_j(alpha_i^vee), i.e. row i lists the
  // pairings against the i-th simple coroot, so that d_i a_ij = d_j a_ji.
  IMat a(n, std::vector<long long>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };  // 1-based below
  switch (series) {
    case 'A':
      for (int i = 1; i < n; ++i) link(i - 1, i);
      break;
    case 'B':  // node n is the short one
      if (n < 2) throw Error("B rank too small");
      for (int i = 1; i < n; ++i) link(i - 1, i);
      a[n - 1][n - 2] = -2;
      break;
    case 'C':  // node n is the long one
      if (n < 2) throw Error("C rank too small");
      for (int i = 1; i < n; ++i) link(i - 1, i);
      a[n - 2][n - 1] = -2;
      break;
    case 'D':
      if (n < 3) throw Error("D rank too small");
      for (int i = 1; i < n - 1; ++i) link(i - 1, i);
      link(n - 3, n - 1);
      break;
    case 'E': {
      if (n < 6 || n > 8) throw Error("E rank out of range");
      // Bourbaki numbering: chain 1-3-4-5-6(-7(-8)), node 2 hangs off node 4.
      link(0, 2);
      link(2, 3);
      link(3, 4);
      link(4, 5);
      if (n >= 7) link(5, 6);
      if (n >= 8) link(6, 7);
      link(1, 3);
      break;
    }
    case 'F':
      if (n != 4) throw Error("F rank must be 4");
      link(0, 1);
      link(1, 2);
      link(2, 3);
      a[2][1] = -2;  // nodes 3,4 short
      break;
    case 'G':
      if (n != 2) throw Error("G rank must be 2");
      a[0][1] = -1;  // node 1 long, node 2 short
      a[1][0] = -3;
      break;
    default:
      throw Error("unknown finite series");
  }
  return a;
}

inline std::vector<std::vector<Int>> hnf_rows(std::vector<std::vector<Int>> a) {
  // Row-style Hermite normal form: upper echelon, positive pivots, entries
  // above each pivot reduced into [0, pivot).
  const int rows = static_cast<int>(a.size());
  const int cols = rows ? static_cast<int>(a[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    while (true) {
      int piv = -1;
      for (int i = r; i < rows; ++i)
        if (a[i][c] != 0 && (piv == -1 || abs(a[i][c]) < abs(a[piv][c]))) piv = i;
      if (piv == -1) break;
      std::swap(a[r], a[piv]);
      bool pending = false;
      for (int i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        Int q = a[i][c] / a[r][c];
        for (int j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (a[i][c] != 0) pending = true;
      }
      if (!pending) break;
    }
    if (r < rows && a[r][c] != 0) {
      if (a[r][c] < 0)
        for (int j = 0; j < cols; ++j) a[r][j] = -a[r][j];
      for (int i = 0; i < r; ++i) {
        Int q = floor_div(a[i][c], a[r][c]);
        if (q == 0) continue;
        for (int j = 0; j < cols; ++j) a[i][j] -= q * a[r][j];
      }
      ++r;
    }
  }
  a.resize(r);
  return a;
}

}  // namespace detail

// Immutable exact data for the finite root system attached to an affine
// Cartan label.  Safe to share between threads after construction.
class RootSystem {
 public:
  explicit RootSystem(const AffineLabel& label) : label_(label) {
    std::string why;
    if (!label_is_valid(label, &why)) throw ParseError("invalid affine label " + label.str() + ": " + why);
    FiniteType ft = finite_part(label);
    series_ = ft.series;
    n_ = ft.rank;
    a0_ = a0_of(label);
    cartan_ = detail::cartan_matrix_for(series_, n_);
    build_symmetrizers();
    build_cartan_inverse();
    build_positive_roots();
    rho_ = Weight(Coords(n_, Rat(1)));
    build_simple_matrices();
    w0_word_ = fold_to_dominant(-rho_).word;
    w0_ = element_from_word(w0_word_);
    build_m_lattice();
  }

  const AffineLabel& label() const { return label_; }
  char finite_series() const { return series_; }
  int rank() const { return n_; }
  long long a0() const { return a0_; }
  bool untwisted() const { return label_.twist == 1; }
  bool simply_laced() const { return series_ == 'A' || series_ == 'D' || series_ == 'E'; }
  const IMat& cartan() const { return cartan_; }
  const std::vector<Rat>& symmetrizers() const { return d_; }
  const std::vector<Root>& positive_roots() const { return roots_; }
  const Root& theta() const { return roots_[theta_index_]; }
  const Weight& rho() const { return rho_; }
  const std::vector<int>& w0_word() const { return w0_word_; }
  const WeylElement& w0() const { return w0_; }

  // --- coordinates -------------------------------------------------------

  Coords root_coords(const Weight& x) const {
    check_weight(x);
    Coords b(n_, Rat(0));
    for (int i = 0; i < n_; ++i) {
      Rat acc(0);
      for (int j = 0; j < n_; ++j) acc += cartan_inv_[i][j] * x.fw[j];
      b[i] = acc;
    }
    return b;
  }

  Weight weight_from_root_coords(const Coords& b) const {
    Weight w(n_);
    for (int i = 0; i < n_; ++i) {
      Rat acc(0);
      for (int j = 0; j < n_; ++j)
        if (cartan_[i][j] != 0) acc += Rat(cartan_[i][j]) * b[j];
      w.fw[i] = acc;
    }
    return w;
  }

  Weight fundamental_weight(int i) const {  // 1-based
    check_index(i);
    Weight w(n_);
    w.fw[i - 1] = 1;
    return w;
  }

  Weight simple_root(int i) const {  // 1-based
    check_index(i);
    Weight w(n_);
    for (int r = 0; r < n_; ++r) w.fw[r] = cartan_[r][i - 1];
    return w;
  }

  // --- invariant form and pairings ---------------------------------------

  // <x, y> with <theta, theta> = 2.
  Rat inner(const Weight& x, const Weight& y) const {
    check_weight(x);
    Coords b = root_coords(y);
    Rat acc(0);
    for (int j = 0; j < n_; ++j) acc += d_[j] * x.fw[j] * b[j];
    return acc;
  }

  Rat pair_coroot(const Weight& x, const Root& a) const {
    check_weight(x);
    Rat acc(0);
    for (int i = 0; i < n_; ++i)
      if (a.coroot[i] != 0) acc += Rat(a.coroot[i]) * x.fw[i];
    return acc;
  }

  Rat pair_theta(const Weight& x) const { return pair_coroot(x, theta()); }

  // --- reflections and Weyl words ----------------------------------------

  void reflect_simple(int i, Weight& x) const {  // 1-based
    check_index(i);
    Rat c = x.fw[i - 1];
    if (c == 0) return;
    for (int r = 0; r < n_; ++r)
      if (cartan_[r][i - 1] != 0) x.fw[r] -= c * Rat(cartan_[r][i - 1]);
  }

  const IMat& simple_matrix(int i) const {  // 1-based
    check_index(i);
    return simple_mats_[i - 1];
  }

  WeylElement identity_element() const { return WeylElement(n_); }

  WeylElement element_from_word(const std::vector<int>& word) const {
    IMat m = identity_matrix(n_);
    for (int i : word) {
      check_index(i);
      // right-multiply by s_i: only column i-1 changes
      std::vector<long long> newcol(n_, 0);
      for (int r = 0; r < n_; ++r) {
        long long acc = m[r][i - 1];
        for (int k = 0; k < n_; ++k)
          if (cartan_[k][i - 1] != 0) acc -= m[r][k] * cartan_[k][i - 1];
        newcol[r] = acc;
      }
      for (int r = 0; r < n_; ++r) m[r][i - 1] = newcol[r];
    }
    return WeylElement(std::move(m));
  }

  // word[0] is the outermost reflection: the word [i1,...,ik] acts as
  // s_{i1}(s_{i2}(...s_{ik}(x))).
  Weight apply_word(const std::vector<int>& word, Weight x) const {
    for (auto it = word.rbegin(); it != word.rend(); ++it) reflect_simple(*it, x);
    return x;
  }

  struct DominantFold {
    WeylElement w;
    std::vector<int> word;
    Weight dominant;
  };

  // Returns (w, x+) with x+ dominant and w(x+) = x.  Deterministic: always
  // reflects at the smallest index whose coordinate is negative.
  DominantFold fold_to_dominant(Weight x) const {
    check_weight(x);
    std::vector<int> word;
    while (true) {
      int i = 0;
      for (int k = 0; k < n_; ++k)
        if (x.fw[k] < 0) {
          i = k + 1;
          break;
        }
      if (i == 0) break;
      reflect_simple(i, x);
      word.push_back(i);
    }
    return DominantFold{element_from_word(word), std::move(word), std::move(x)};
  }

  // Reduced word recovered by folding w(rho) back to rho.
  std::vector<int> reduced_word(const WeylElement& w) const {
    DominantFold f = fold_to_dominant(w.apply(rho_));
    if (!(f.w == w)) throw Error("reduced_word: matrix does not represent a Weyl element");
    return f.word;
  }

  WeylElement inverse(const WeylElement& w) const {
    std::vector<int> word = reduced_word(w);
    std::reverse(word.begin(), word.end());
    return element_from_word(word);
  }

  // --- dominance ----------------------------------------------------------

  bool is_dominant(const Weight& x) const {
    check_weight(x);
    return std::all_of(x.fw.begin(), x.fw.end(), [](const Rat& c) { return c >= 0; });
  }

  bool is_integral(const Weight& x) const {
    check_weight(x);
    return std::all_of(x.fw.begin(), x.fw.end(), [](const Rat& c) { return is_integer(c); });
  }

  bool is_dominant_integral(const Weight& x) const { return is_dominant(x) && is_integral(x); }

  // --- translation lattice M = Z-span of the Weyl orbit of theta/a0 -------

  const std::vector<Weight>& m_basis() const { return m_basis_; }
  const std::vector<Coords>& m_basis_root_coords() const { return m_basis_root_; }

  bool m_contains(const Weight& nu) const {
    Coords b = root_coords(nu);
    for (std::size_t r = 0; r < m_basis_root_.size(); ++r) {
      int p = m_pivot_[r];
      if (b[p] == 0) continue;
      Rat t = b[p] / m_basis_root_[r][p];
      if (!is_integer(t)) return false;
      for (int j = 0; j < n_; ++j) b[j] -= t * m_basis_root_[r][j];
    }
    return std::all_of(b.begin(), b.end(), [](const Rat& x) { return x == 0; });
  }

  // --- root lookup --------------------------------------------------------

  const Root* find_root(const std::vector<long long>& simple_coords) const {
    auto it = root_index_.find(simple_coords);
    if (it != root_index_.end()) return &roots_[it->second];
    std::vector<long long> neg(simple_coords.size());
    for (std::size_t i = 0; i < neg.size(); ++i) neg[i] = -simple_coords[i];
    it = root_index_.find(neg);
    if (it != root_index_.end()) return &roots_[it->second];
    return nullptr;
  }

  void check_weight(const Weight& x) const {
    if (x.rank() != n_)
      throw UsageError("weight has " + std::to_string(x.rank()) + " coordinates, expected " +
                       std::to_string(n_) + " for " + label_.str());
  }

 private:
  void check_index(int i) const {
    if (i < 1 || i > n_)
      throw UsageError("simple-reflection index " + std::to_string(i) + " out of range 1.." +
                       std::to_string(n_));
  }

  void build_symmetrizers() {
    // d_i a_ij = d_j a_ji, normalized so long roots get d = 1.
    d_.assign(n_, Rat(0));
    d_[0] = 1;
    std::vector<int> todo{0};
    while (!todo.empty()) {
      int i = todo.back();
      todo.pop_back();
      for (int j = 0; j < n_; ++j) {
        if (j == i || cartan_[i][j] == 0 || d_[j] != 0) continue;
        d_[j] = d_[i] * Rat(cartan_[i][j]) / Rat(cartan_[j][i]);
        todo.push_back(j);
      }
    }
    Rat dmax(0);
    for (const Rat& v : d_) {
      if (v == 0) throw Error("disconnected Dynkin diagram");
      dmax = std::max(dmax, v);
    }
    for (Rat& v : d_) v /= dmax;
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (d_[i] * cartan_[i][j] != d_[j] * cartan_[j][i]) throw Error("Cartan matrix not symmetrizable");
  }

  void build_cartan_inverse() {
    std::vector<std::vector<Rat>> a(n_, std::vector<Rat>(2 * n_, Rat(0)));
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) a[i][j] = cartan_[i][j];
      a[i][n_ + i] = 1;
    }
    for (int c = 0; c < n_; ++c) {
      int piv = -1;
      for (int r = c; r < n_; ++r)
        if (a[r][c] != 0) {
          piv = r;
          break;
        }
      if (piv < 0) throw Error("singular Cartan matrix");
      std::swap(a[c], a[piv]);
      Rat p = a[c][c];
      for (int j = 0; j < 2 * n_; ++j) a[c][j] /= p;
      for (int r = 0; r < n_; ++r) {
        if (r == c || a[r][c] == 0) continue;
        Rat f = a[r][c];
        for (int j = 0; j < 2 * n_; ++j) a[r][j] -= f * a[c][j];
      }
    }
    cartan_inv_.assign(n_, std::vector<Rat>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) cartan_inv_[i][j] = a[i][n_ + j];
  }

  void finish_root(Root& r) const {
    r.wcoords.assign(n_, 0);
    for (int i = 0; i < n_; ++i) {
      long long acc = 0;
      for (int j = 0; j < n_; ++j) acc += cartan_[i][j] * r.simple[j];
      r.wcoords[i] = acc;
    }
    r.height = 0;
    for (long long c : r.simple) r.height += static_cast<int>(c);
    Rat norm(0);
    for (int j = 0; j < n_; ++j) norm += d_[j] * Rat(r.wcoords[j]) * Rat(r.simple[j]);
    r.norm2 = norm;
    // coroot covector: x(alpha^vee) = 2<x,alpha>/<alpha,alpha>
    r.coroot.assign(n_, 0);
    for (int j = 0; j < n_; ++j) {
      Rat v = Rat(2) * d_[j] * Rat(r.simple[j]) / r.norm2;
      if (!is_integer(v)) throw Error("non-integral coroot covector");
      r.coroot[j] = to_ll(numerator(v));
    }
  }

  void build_positive_roots() {
    std::map<std::vector<long long>, int> index;
    std::vector<std::vector<long long>> layer;
    for (int i = 0; i < n_; ++i) {
      std::vector<long long> e(n_, 0);
      e[i] = 1;
      index[e] = static_cast<int>(index.size());
      layer.push_back(e);
    }
    std::vector<std::vector<long long>> all = layer;
    while (!layer.empty()) {
      std::vector<std::vector<long long>> next;
      for (const auto& b : layer) {
        for (int i = 0; i < n_; ++i) {
          std::vector<long long> cand = b;
          cand[i] += 1;
          if (index.count(cand)) continue;
          // root string: cand is a root iff p - <b, alpha_i^vee> > 0 where p
          // counts the steps down from b along alpha_i
          long long pair = 0;
          for (int j = 0; j < n_; ++j) pair += cartan_[i][j] * b[j];
          long long p = 0;
          std::vector<long long> down = b;
          while (true) {
            down[i] -= 1;
            bool zero = std::all_of(down.begin(), down.end(), [](long long v) { return v == 0; });
            if (zero || !index.count(down)) break;
            ++p;
          }
          if (p - pair > 0) {
            index[cand] = static_cast<int>(index.size());
            next.push_back(cand);
            all.push_back(cand);
          }
        }
      }
      layer = std::move(next);
    }
    roots_.resize(all.size());
    for (std::size_t k = 0; k < all.size(); ++k) {
      roots_[k].simple = all[k];
      finish_root(roots_[k]);
    }
    std::sort(roots_.begin(), roots_.end(), [](const Root& a, const Root& b) {
      if (a.height != b.height) return a.height < b.height;
      return a.simple < b.simple;
    });
    root_index_.clear();
    Rat maxnorm(0);
    for (std::size_t k = 0; k < roots_.size(); ++k) {
      root_index_[roots_[k].simple] = static_cast<int>(k);
      maxnorm = std::max(maxnorm, roots_[k].norm2);
    }
    if (maxnorm != 2) throw Error("normalization failure: <theta,theta> != 2");
    for (auto& r : roots_) r.is_long = (r.norm2 == 2);
    theta_index_ = static_cast<int>(roots_.size()) - 1;
    if (roots_.size() > 1 && roots_[theta_index_].height == roots_[theta_index_ - 1].height)
      throw Error("highest root is not unique");
  }

  void build_simple_matrices() {
    simple_mats_.clear();
    for (int i = 1; i <= n_; ++i) {
      IMat m = identity_matrix(n_);
      for (int r = 0; r < n_; ++r) m[r][i - 1] -= cartan_[r][i - 1];
      simple_mats_.push_back(std::move(m));
    }
  }

  void build_m_lattice() {
    // Orbit of theta/a0 under the simple reflections.
    Weight gen = theta().as_weight();
    gen *= Rat(1, a0_);
    std::map<std::string, Weight> orbit;
    std::vector<Weight> frontier{gen};
    orbit[gen.str()] = gen;
    while (!frontier.empty()) {
      std::vector<Weight> next;
      for (const auto& w : frontier) {
        for (int i = 1; i <= n_; ++i) {
          Weight y = w;
          reflect_simple(i, y);
          auto key = y.str();
          if (!orbit.count(key)) {
            orbit[key] = y;
            next.push_back(y);
          }
        }
      }
      frontier = std::move(next);
    }
    // Integerize root coordinates and reduce to a Hermite basis.
    std::vector<Coords> gens;
    Int lcm_den = 1;
    for (const auto& [k, w] : orbit) {
      (void)k;
      Coords b = root_coords(w);
      for (const Rat& x : b) lcm_den = lcm(lcm_den, denominator(x));
      gens.push_back(std::move(b));
    }
    std::vector<std::vector<Int>> m(gens.size(), std::vector<Int>(n_));
    for (std::size_t r = 0; r < gens.size(); ++r)
      for (int j = 0; j < n_; ++j) {
        Rat v = gens[r][j] * Rat(lcm_den);
        m[r][j] = numerator(v);
      }
    auto h = detail::hnf_rows(std::move(m));
    if (static_cast<int>(h.size()) != n_) throw Error("translation lattice is not full rank");
    m_basis_root_.clear();
    m_basis_.clear();
    m_pivot_.clear();
    for (const auto& row : h) {
      Coords b(n_);
      for (int j = 0; j < n_; ++j) b[j] = Rat(row[j], lcm_den);
      int p = 0;
      while (p < n_ && b[p] == 0) ++p;
      m_pivot_.push_back(p);
      m_basis_.push_back(weight_from_root_coords(b));
      m_basis_root_.push_back(std::move(b));
    }
    // Wall moduli: the reflection in H_{alpha^vee, k} is t_{k alpha} s_alpha,
    // so Z_alpha = { k : k alpha in M }.  For untwisted labels this is the
    // classical table (2Z for short roots in types B, C, F; 3Z for short
    // roots in G2; Z otherwise), and it gives 1/2 Z on long roots of
    // A_{2n}^(2).
    for (auto& root : roots_) {
      Coords t = solve_in_m_basis(root.simple);
      Rat m(0);
      for (const Rat& ti : t) {
        if (ti == 0) continue;
        Rat gen(denominator(ti), abs(numerator(ti)));  // (q/p)Z solves c*(p/q) in Z
        if (m == 0)
          m = gen;
        else
          m = Rat(lcm(numerator(m), numerator(gen)), gcd(denominator(m), denominator(gen)));
      }
      if (m == 0) throw Error("root solves to zero in the M basis");
      root.z_modulus = m;
    }
  }

  Coords solve_in_m_basis(const std::vector<long long>& simple_coords) const {
    Coords b(n_);
    for (int j = 0; j < n_; ++j) b[j] = Rat(simple_coords[j]);
    Coords t(m_basis_root_.size(), Rat(0));
    for (std::size_t r = 0; r < m_basis_root_.size(); ++r) {
      int p = m_pivot_[r];
      if (b[p] == 0) continue;
      t[r] = b[p] / m_basis_root_[r][p];
      for (int j = 0; j < n_; ++j) b[j] -= t[r] * m_basis_root_[r][j];
    }
    for (const Rat& x : b)
      if (x != 0) throw Error("vector outside the rational span of M");
    return t;
  }

  AffineLabel label_;
  char series_ = 'A';
  int n_ = 1;
  long long a0_ = 1;
  IMat cartan_;
  std::vector<Rat> d_;
  std::vector<std::vector<Rat>> cartan_inv_;
  std::vector<Root> roots_;
  int theta_index_ = 0;
  Weight rho_;
  std::vector<int> w0_word_;
  WeylElement w0_;
  std::vector<IMat> simple_mats_;
  std::map<std::vector<long long>, int> root_index_;
  std::vector<Coords> m_basis_root_;
  std::vector<Weight> m_basis_;
  std::vector<int> m_pivot_;
};

// --- spec-facing free functions ------------------------------------------

inline RootSystem build_root_system(const AffineLabel& label) { return RootSystem(label); }
inline RootSystem build_root_system(std::string_view label) {
  return RootSystem(AffineLabel::parse(label));
}

inline Rat inner_product(const RootSystem& rs, const Weight& x, const Weight& y) {
  return rs.inner(x, y);
}

inline Rat coroot_pairing(const RootSystem& rs, const Weight& x, const Root& alpha) {
  return rs.pair_coroot(x, alpha);
}

// General form: alpha given in simple-root coordinates (need not be a root,
// but must be nonzero).
inline Rat coroot_pairing(const RootSystem& rs, const Weight& x, const Coords& alpha_simple) {
  bool zero = std::all_of(alpha_simple.begin(), alpha_simple.end(), [](const Rat& v) { return v == 0; });
  if (zero) throw DomainError("coroot pairing with alpha = 0");
  Weight a = rs.weight_from_root_coords(alpha_simple);
  Rat norm = rs.inner(a, a);
  return Rat(2) * rs.inner(x, a) / norm;
}

inline Weight apply_word(const RootSystem& rs, const std::vector<int>& word, const Weight& x) {
  for (int i : word)
    if (i == 0) throw UsageError("index 0 is an affine reflection; finite words use 1..n");
  return rs.apply_word(word, x);
}

inline RootSystem::DominantFold fold_to_dominant(const RootSystem& rs, const Weight& x) {
  return rs.fold_to_dominant(x);
}

}  // namespace alcove
