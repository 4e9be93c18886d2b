#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "baslab/error.hpp"
#include "baslab/rational.hpp"

namespace baslab {

/// Square integer matrix; Weyl group elements act on lattices through these.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), data_(n * n, 0) {}

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  long long& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  long long operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw RankMismatch(a.n_, b.n_);
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        const long long aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
  friend auto operator<=>(const IntMatrix& a, const IntMatrix& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

  const std::vector<long long>& data() const noexcept { return data_; }

 private:
  std::size_t n_ = 0;
  std::vector<long long> data_;
};

/// Weight in fundamental-weight coordinates: coords[i] = <alpha_i^vee, lambda>.
struct Weight {
  std::vector<Rational> coords;

  std::size_t rank() const noexcept { return coords.size(); }
  bool integral() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return is_integer(q); });
  }
  bool dominant() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return sgn(q) >= 0; });
  }
  bool antidominant() const {
    return std::all_of(coords.begin(), coords.end(), [](const Rational& q) { return sgn(q) <= 0; });
  }

  friend bool operator==(const Weight&, const Weight&) = default;
  friend Weight operator+(Weight a, const Weight& b) {
    if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) a.coords[i] += b.coords[i];
    return a;
  }
  friend Weight operator-(Weight a, const Weight& b) {
    if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) a.coords[i] -= b.coords[i];
    return a;
  }
  friend Weight operator-(Weight a) {
    for (auto& c : a.coords) c = -c;
    return a;
  }
  friend Weight operator*(const Rational& s, Weight a) {
    for (auto& c : a.coords) c *= s;
    return a;
  }
};

/// Element of the Cartan subalgebra in simple-coroot coordinates.
struct HElement {
  std::vector<Rational> coords;

  std::size_t rank() const noexcept { return coords.size(); }
  friend bool operator==(const HElement&, const HElement&) = default;
  friend HElement operator-(HElement a, const HElement& b) {
    if (a.rank() != b.rank()) throw RankMismatch(a.rank(), b.rank());
    for (std::size_t i = 0; i < a.rank(); ++i) a.coords[i] -= b.coords[i];
    return a;
  }
};

/// Simple coroots are dual to fundamental weights, so the pairing is a dot product.
inline Rational pairing(const HElement& h, const Weight& w) {
  if (h.rank() != w.rank()) throw RankMismatch(h.rank(), w.rank());
  Rational s;
  for (std::size_t i = 0; i < h.rank(); ++i) s += h.coords[i] * w.coords[i];
  return s;
}

/// A Weyl group element: its matrix on weight coordinates (the canonical
/// form), the contragredient matrix on coroot coordinates, and a word in the
/// simple reflections (a certificate, not part of the identity).
struct WeylElement {
  IntMatrix weight_matrix;
  IntMatrix coroot_matrix;
  std::vector<int> word;

  std::size_t rank() const noexcept { return weight_matrix.size(); }
  std::size_t length() const noexcept { return word.size(); }
  bool is_identity() const { return weight_matrix == IntMatrix::identity(rank()); }

  /// "s1 s2 s1", or "e" for the empty word. Indices are 1-based.
  std::string word_string() const {
    if (word.empty()) return "e";
    std::string s;
    for (std::size_t k = 0; k < word.size(); ++k) {
      if (k) s += ' ';
      s += "s" + std::to_string(word[k] + 1);
    }
    return s;
  }

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.weight_matrix == b.weight_matrix;
  }
};

/// uv: act by v first.
inline WeylElement compose(const WeylElement& u, const WeylElement& v) {
  if (u.rank() != v.rank()) throw RankMismatch(u.rank(), v.rank());
  WeylElement w{u.weight_matrix * v.weight_matrix, u.coroot_matrix * v.coroot_matrix, u.word};
  w.word.insert(w.word.end(), v.word.begin(), v.word.end());
  return w;
}

/// The coroot matrix is the inverse transpose of the weight matrix, so the
/// inverse needs no elimination.
inline WeylElement inverse(const WeylElement& w) {
  WeylElement inv{w.coroot_matrix.transpose(), w.weight_matrix.transpose(), w.word};
  std::reverse(inv.word.begin(), inv.word.end());
  return inv;
}

inline Weight act_on_weight(const WeylElement& w, const Weight& lambda) {
  if (w.rank() != lambda.rank()) throw RankMismatch(w.rank(), lambda.rank());
  Weight out{std::vector<Rational>(lambda.rank())};
  for (std::size_t i = 0; i < lambda.rank(); ++i)
    for (std::size_t j = 0; j < lambda.rank(); ++j)
      if (w.weight_matrix(i, j) != 0) out.coords[i] += Rational(static_cast<long>(w.weight_matrix(i, j))) * lambda.coords[j];
  return out;
}

inline HElement act_on_h(const WeylElement& w, const HElement& h) {
  if (w.rank() != h.rank()) throw RankMismatch(w.rank(), h.rank());
  HElement out{std::vector<Rational>(h.rank())};
  for (std::size_t i = 0; i < h.rank(); ++i)
    for (std::size_t j = 0; j < h.rank(); ++j)
      if (w.coroot_matrix(i, j) != 0) out.coords[i] += Rational(static_cast<long>(w.coroot_matrix(i, j))) * h.coords[j];
  return out;
}

/// One irreducible component, e.g. {'B', 3}.
struct CartanType {
  char family;
  int rank;

  std::string label() const { return std::string(1, family) + std::to_string(rank); }
  friend bool operator==(const CartanType&, const CartanType&) = default;
};

namespace detail {

inline void validate_type(const CartanType& t) {
  const int n = t.rank;
  bool ok = false;
  switch (t.family) {
    case 'A': ok = n >= 1; break;
    case 'B': ok = n >= 2; break;
    case 'C': ok = n >= 3; break;
    case 'D': ok = n >= 4; break;
    case 'E': ok = n >= 6 && n <= 8; break;
    case 'F': ok = n == 4; break;
    case 'G': ok = n == 2; break;
    default: throw Error(std::string("unknown Cartan family '") + t.family + "'");
  }
  if (!ok) throw Error("invalid rank " + std::to_string(n) + " for Cartan family " + t.family);
}

// Entry (i, j) is <alpha_i^vee, alpha_j>; Bourbaki numbering.
inline std::vector<std::vector<int>> irreducible_cartan(const CartanType& t) {
  const int n = t.rank;
  std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) a[i][i] = 2;
  auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
  switch (t.family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'B':  // alpha_n short
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 1][n - 2] = -2;
      break;
    case 'C':  // alpha_n long
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
      a[n - 2][n - 1] = -2;
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
      link(n - 3, n - 1);
      break;
    case 'E':
      link(0, 2);
      link(1, 3);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1);
      break;
    case 'F':  // alpha_1, alpha_2 long
      link(0, 1);
      link(2, 3);
      a[1][2] = -1;
      a[2][1] = -2;
      break;
    case 'G':  // alpha_1 short
      a[0][1] = -3;
      a[1][0] = -1;
      break;
  }
  return a;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
    throw Error("Weyl group order overflows 64 bits");
  return a * b;
}

inline std::uint64_t irreducible_weyl_order(const CartanType& t) {
  std::uint64_t fact = 1;
  for (int k = 2; k <= t.rank; ++k) fact = checked_mul(fact, static_cast<std::uint64_t>(k));
  switch (t.family) {
    case 'A': return checked_mul(fact, static_cast<std::uint64_t>(t.rank + 1));
    case 'B':
    case 'C': return checked_mul(fact, std::uint64_t{1} << t.rank);
    case 'D': return checked_mul(fact, std::uint64_t{1} << (t.rank - 1));
    case 'E': return t.rank == 6 ? 51840 : t.rank == 7 ? 2903040 : 696729600;
    case 'F': return 1152;
    case 'G': return 12;
  }
  throw InternalError("unreachable Cartan family");
}

}  // namespace detail

/// Parses "A2", "B3", "A1xA1", ... (FAMILY RANK ("x" FAMILY RANK)*).
inline std::vector<CartanType> parse_type_spec(std::string_view spec) {
  std::vector<CartanType> out;
  std::size_t pos = 0;
  if (spec.empty()) throw ParseError("empty root-system type", 0, 1);
  while (true) {
    if (pos >= spec.size() || !std::isupper(static_cast<unsigned char>(spec[pos])))
      throw ParseError("expected Cartan family letter A-G", 0, pos + 1);
    const char family = spec[pos++];
    const std::size_t start = pos;
    while (pos < spec.size() && std::isdigit(static_cast<unsigned char>(spec[pos]))) ++pos;
    if (pos == start) throw ParseError("expected rank after family", 0, pos + 1);
    if (pos - start > 4) throw ParseError("rank too large", 0, start + 1);
    CartanType t{family, std::stoi(std::string(spec.substr(start, pos - start)))};
    try {
      detail::validate_type(t);
    } catch (const Error& e) {
      throw ParseError(e.what(), 0, start);
    }
    out.push_back(t);
    if (pos == spec.size()) break;
    if (spec[pos] != 'x') throw ParseError("expected 'x' between factors", 0, pos + 1);
    ++pos;
  }
  return out;
}

/// Cartan data of a (possibly reducible) finite root system, together with
/// the positive coroots and rho. Immutable after construction.
class RootSystem {
 public:
  explicit RootSystem(std::vector<CartanType> types) : types_(std::move(types)) {
    if (types_.empty()) throw Error("root system needs at least one factor");
    std::size_t r = 0;
    for (const auto& t : types_) {
      detail::validate_type(t);
      offsets_.push_back(r);
      r += static_cast<std::size_t>(t.rank);
    }
    cartan_.assign(r, std::vector<int>(r, 0));
    weyl_order_ = 1;
    for (std::size_t k = 0; k < types_.size(); ++k) {
      const auto block = detail::irreducible_cartan(types_[k]);
      for (std::size_t i = 0; i < block.size(); ++i)
        for (std::size_t j = 0; j < block.size(); ++j) cartan_[offsets_[k] + i][offsets_[k] + j] = block[i][j];
      weyl_order_ = detail::checked_mul(weyl_order_, detail::irreducible_weyl_order(types_[k]));
    }
    build_reflections();
    build_positive_coroots();
  }

  static RootSystem parse(std::string_view spec) { return RootSystem(parse_type_spec(spec)); }

  std::size_t rank() const noexcept { return cartan_.size(); }
  const std::vector<std::vector<int>>& cartan() const noexcept { return cartan_; }
  const std::vector<CartanType>& types() const noexcept { return types_; }
  /// First simple index of each irreducible factor.
  const std::vector<std::size_t>& offsets() const noexcept { return offsets_; }
  std::uint64_t weyl_order() const noexcept { return weyl_order_; }

  std::string label() const {
    std::string s;
    for (std::size_t k = 0; k < types_.size(); ++k) s += (k ? "x" : "") + types_[k].label();
    return s;
  }

  /// Sorted by height, then lexicographically.
  const std::vector<HElement>& positive_coroots() const noexcept { return positive_coroots_; }

  Weight rho() const { return Weight{std::vector<Rational>(rank(), Rational(1))}; }
  Weight zero_weight() const { return Weight{std::vector<Rational>(rank())}; }

  Weight fundamental_weight(std::size_t i) const {
    check_index(i);
    Weight w = zero_weight();
    w.coords[i] = 1;
    return w;
  }

  /// alpha_j = sum_i <alpha_i^vee, alpha_j> omega_i.
  Weight simple_root(std::size_t j) const {
    check_index(j);
    Weight w = zero_weight();
    for (std::size_t i = 0; i < rank(); ++i) w.coords[i] = cartan_[i][j];
    return w;
  }

  HElement simple_coroot(std::size_t i) const {
    check_index(i);
    HElement h{std::vector<Rational>(rank())};
    h.coords[i] = 1;
    return h;
  }

  WeylElement identity() const {
    return WeylElement{IntMatrix::identity(rank()), IntMatrix::identity(rank()), {}};
  }

  const WeylElement& simple_reflection(std::size_t i) const {
    check_index(i);
    return reflections_[i];
  }

  WeylElement from_word(const std::vector<int>& word) const {
    WeylElement w = identity();
    for (int i : word) {
      if (i < 0 || static_cast<std::size_t>(i) >= rank()) throw Error("reflection index out of range");
      w = compose(w, reflections_[static_cast<std::size_t>(i)]);
    }
    return w;
  }

  /// Repeatedly reflects in the smallest simple index with positive pairing.
  /// Returns (w, y) with y = w^{-1}(x) antidominant, so x = w(y).
  std::pair<WeylElement, Weight> antidominant_chamber(const Weight& x) const {
    if (x.rank() != rank()) throw RankMismatch(rank(), x.rank());
    WeylElement w = identity();
    Weight y = x;
    while (true) {
      std::size_t i = 0;
      while (i < rank() && sgn(y.coords[i]) <= 0) ++i;
      if (i == rank()) break;
      y = act_on_weight(reflections_[i], y);
      w = compose(w, reflections_[i]);
    }
    return {std::move(w), std::move(y)};
  }

  /// w0 is the unique element with w0(rho) = -rho.
  WeylElement longest_element() const { return antidominant_chamber(rho()).first; }

  /// All elements by breadth-first search, so every word is reduced.
  std::vector<WeylElement> enumerate_weyl(std::uint64_t bound = 1152) const {
    if (weyl_order_ > bound)
      throw Error("Weyl group of " + label() + " has " + std::to_string(weyl_order_) +
                  " elements, exceeding the enumeration bound " + std::to_string(bound));
    std::vector<WeylElement> elems{identity()};
    std::set<IntMatrix> seen{elems.front().weight_matrix};
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (std::size_t i = 0; i < rank(); ++i) {
        WeylElement next = compose(elems[head], reflections_[i]);
        if (seen.insert(next.weight_matrix).second) elems.push_back(std::move(next));
      }
    }
    if (elems.size() != weyl_order_) throw InternalError("enumerated Weyl group has wrong order");
    return elems;
  }

  /// lambda^vee = -w0(lambda).
  Weight dual_weight(const Weight& lambda) const { return -act_on_weight(longest_element(), lambda); }

  Rational height(const HElement& h) const {
    Rational s;
    for (const auto& c : h.coords) s += c;
    return s;
  }

 private:
  void check_index(std::size_t i) const {
    if (i >= rank()) throw Error("simple index " + std::to_string(i) + " out of range for rank " + std::to_string(rank()));
  }

  void build_reflections() {
    const std::size_t r = rank();
    for (std::size_t i = 0; i < r; ++i) {
      // s_i(lambda) = lambda - lambda_i alpha_i, alpha_i = column i of the Cartan matrix.
      IntMatrix wm = IntMatrix::identity(r);
      for (std::size_t k = 0; k < r; ++k) wm(k, i) -= cartan_[k][i];
      // s_i(h) = h - <h, alpha_i> alpha_i^vee.
      IntMatrix hm = IntMatrix::identity(r);
      for (std::size_t k = 0; k < r; ++k) hm(i, k) -= cartan_[k][i];
      reflections_.push_back(WeylElement{wm, hm, {static_cast<int>(i)}});
    }
  }

  void build_positive_coroots() {
    const std::size_t r = rank();
    std::set<std::vector<long long>> seen;
    std::vector<std::vector<long long>> queue;
    for (std::size_t i = 0; i < r; ++i) {
      std::vector<long long> v(r, 0);
      v[i] = 1;
      seen.insert(v);
      queue.push_back(v);
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (std::size_t i = 0; i < r; ++i) {
        std::vector<long long> v = queue[head];
        long long p = 0;
        for (std::size_t k = 0; k < r; ++k) p += v[k] * cartan_[k][i];
        v[i] -= p;
        if (seen.insert(v).second) queue.push_back(std::move(v));
      }
    }
    std::vector<std::vector<long long>> pos;
    for (const auto& v : seen)
      if (std::all_of(v.begin(), v.end(), [](long long c) { return c >= 0; })) pos.push_back(v);
    std::sort(pos.begin(), pos.end(), [](const auto& a, const auto& b) {
      long long ha = 0, hb = 0;
      for (auto c : a) ha += c;
      for (auto c : b) hb += c;
      if (ha != hb) return ha < hb;
      return a > b;
    });
    if (pos.size() * 2 != seen.size()) throw InternalError("coroot set is not symmetric");
    for (const auto& v : pos) {
      HElement h{std::vector<Rational>(r)};
      for (std::size_t k = 0; k < r; ++k) h.coords[k] = static_cast<long>(v[k]);
      positive_coroots_.push_back(std::move(h));
    }
  }

  std::vector<CartanType> types_;
  std::vector<std::size_t> offsets_;
  std::vector<std::vector<int>> cartan_;
  std::uint64_t weyl_order_ = 1;
  std::vector<WeylElement> reflections_;
  std::vector<HElement> positive_coroots_;
};

inline Weight parse_weight(std::string_view text, std::size_t rank) {
  Weight w{parse_rational_list(text)};
  if (w.rank() != rank) throw RankMismatch(rank, w.rank());
  return w;
}

/// The systems of rank at most 3 that the sweeps and suites range over.
inline const std::vector<std::string>& small_rank_systems() {
  static const std::vector<std::string> names{"A1", "A2", "B2", "G2", "A1xA1", "A3", "B3", "C3",
                                              "A1xA2", "A1xB2", "A1xG2", "A1xA1xA1"};
  return names;
}

}  // namespace baslab
