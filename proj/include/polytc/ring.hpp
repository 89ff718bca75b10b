#pragma once

// The mod-2 cohomology ring of the planar polygon space with n-1 unit sides
// and one side of length n-2k (2 < 2k < n), from its standard presentation:
//
//   * generated by degree-1 classes R, V_1, ..., V_{n-1};
//   * any product of k distinct V_i vanishes;
//   * for d <= n-3, all degree-d monomials R^{e_0} prod_{i in S} V_i^{e_i}
//     with every e_i > 0 coincide; the common class is written T_{S,d};
//   * for every L in {1,...,n-1} with n-k <= |L| <= d+1 the subset sum
//     sum_{S in L} T_{S,d} vanishes;
//   * degrees above n-3 (the manifold dimension) are identically zero.
//
// Graded pieces are spanned by the T_{S,d} with |S| <= min(k-1, d), ordered by
// support size then lexicographically; relation spans are cached per degree as
// reduced echelon forms, with pivots chosen so canonical representatives live
// on the earliest basis classes.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <vector>

#include "polytc/gf2.hpp"
#include "polytc/parity.hpp"

namespace polytc {

// A basis class T_{S,d} packs into one word: support mask in the high bits
// (index i at bit i-1), degree in the low 6.
using ClassKey = std::uint64_t;

inline constexpr int kMaxSides = 48;

inline ClassKey make_class(std::uint64_t support, int degree) {
  return (support << 6) | std::uint64_t(degree);
}
inline std::uint64_t class_support(ClassKey c) { return c >> 6; }
inline int class_degree(ClassKey c) { return int(c & 63); }
inline int support_size(std::uint64_t mask) { return __builtin_popcountll(mask); }

// Lexicographic order on equal-size supports: the set containing the smaller
// first-differing index comes first.
inline bool support_lex_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t x = a ^ b;
  if (!x) return false;
  return (a & (x & -x)) != 0;
}

// Homogeneous GF(2) sum of basis classes of one degree; terms are the sorted,
// duplicate-free support masks.  Empty terms = the zero element.
struct RingElement {
  int degree = 0;
  std::vector<std::uint64_t> terms;

  bool zero() const { return terms.empty(); }
  bool operator==(const RingElement&) const = default;
};

enum class Functional { Phi1, Phi2, Phi3 };

inline const char* to_string(Functional f) {
  switch (f) {
    case Functional::Phi1: return "PHI1";
    case Functional::Phi2: return "PHI2";
    case Functional::Phi3: return "PHI3";
  }
  return "?";
}

namespace detail {

// Sorts masks by (|S|, lex).
inline void sort_supports(std::vector<std::uint64_t>& v) {
  std::sort(v.begin(), v.end(), [](std::uint64_t a, std::uint64_t b) {
    const int sa = support_size(a), sb = support_size(b);
    if (sa != sb) return sa < sb;
    const std::uint64_t x = a ^ b;
    if (!x) return false;
    return (a & (x & -x)) != 0;
  });
}

// XOR-normalizes a term list: sort, then drop pairs (GF(2) cancellation).
inline void cancel_mod2(std::vector<std::uint64_t>& v) {
  sort_supports(v);
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j < v.size() && v[j] == v[i]) ++j;
    if ((j - i) & 1) v[out++] = v[i];
    i = j;
  }
  v.resize(out);
}

}  // namespace detail

class PolygonRing {
 public:
  PolygonRing(int n, int k) : params_(decompose(n, k)), n_(n), k_(k) {
    if (n > kMaxSides)
      throw std::domain_error("PolygonRing: n exceeds the supported range");
    caches_ = std::make_unique<DegreeCache[]>(std::size_t(n_ - 2));  // degrees 0..n-3
  }

  int n() const { return n_; }
  int k() const { return k_; }
  int top_degree() const { return n_ - 3; }
  const ParamDecomp& params() const { return params_; }
  std::uint64_t full_mask() const { return (std::uint64_t(1) << (n_ - 1)) - 1; }

  // T_{S,a} * T_{S',b} = T_{S u S', a+b}, zero when the union reaches k
  // distinct V's or the degree leaves the manifold range.
  std::optional<ClassKey> class_product(ClassKey x, ClassKey y) const {
    const int d = class_degree(x) + class_degree(y);
    if (d > top_degree()) return std::nullopt;
    const std::uint64_t s = class_support(x) | class_support(y);
    if (support_size(s) >= k_) return std::nullopt;
    return make_class(s, d);
  }

  // All admissible supports for degree d, sorted by (|S|, lex).
  const std::vector<std::uint64_t>& basis(int d) const {
    check_degree(d);
    const int cap = std::min(k_ - 1, d);
    return supports_up_to(cap);
  }

  int dim(int d) const {
    check_degree(d);
    return int(basis(d).size() - echelon(d).rank());
  }

  // One relation element per qualifying subset L, in (|L|, lex) order.
  std::vector<RingElement> relations(int d) const {
    check_degree(d);
    std::vector<RingElement> out;
    for_each_relation_support(d, [&](std::uint64_t L) {
      RingElement r;
      r.degree = d;
      const int cap = std::min(k_ - 1, d);
      for (std::uint64_t S = L;; S = (S - 1) & L) {
        if (support_size(S) <= cap) r.terms.push_back(S);
        if (S == 0) break;
      }
      detail::sort_supports(r.terms);
      out.push_back(std::move(r));
    });
    return out;
  }

  // Canonical representative of the coset of x modulo the relation span.
  RingElement reduce(RingElement x) const {
    check_degree(x.degree);
    detail::cancel_mod2(x.terms);
    if (x.terms.empty()) return x;
    const auto& bas = basis(x.degree);
    gf2::BitVec v(bas.size());
    for (auto s : x.terms) v.flip(std::size_t(basis_index(x.degree, s)));
    echelon(x.degree).reduce(v);
    RingElement out;
    out.degree = x.degree;
    for (std::size_t i = 0; i < bas.size(); ++i)
      if (v.test(i)) out.terms.push_back(bas[i]);
    return out;
  }

  // GF(2) sum; both sides must share a degree.
  RingElement add(const RingElement& x, const RingElement& y) const {
    if (x.degree != y.degree && !x.zero() && !y.zero())
      throw std::invalid_argument("add: degree mismatch");
    RingElement out;
    out.degree = x.zero() ? y.degree : x.degree;
    out.terms = x.terms;
    out.terms.insert(out.terms.end(), y.terms.begin(), y.terms.end());
    detail::cancel_mod2(out.terms);
    return out;
  }

  // Bilinear product of homogeneous elements, returned in canonical reduced
  // form.  Products past degree n-3 are dropped.
  RingElement multiply(const RingElement& x, const RingElement& y) const {
    RingElement out;
    out.degree = x.degree + y.degree;
    if (out.degree > top_degree()) {
      out.degree = top_degree();  // conventional home for the zero element
      return out;
    }
    for (auto sx : x.terms) {
      const ClassKey kx = make_class(sx, x.degree);
      for (auto sy : y.terms) {
        if (auto p = class_product(kx, make_class(sy, y.degree)))
          out.terms.push_back(class_support(*p));
      }
    }
    detail::cancel_mod2(out.terms);
    return reduce(std::move(out));
  }

  // ---- GF(2)-valued functionals on the top two degrees ----

  int functional_degree(Functional f) const {
    return f == Functional::Phi1 ? n_ - 3 : n_ - 4;
  }

  bool functional_available(Functional f) const {
    return f != Functional::Phi3 || params_.wcase == WitnessCase::BEvenDZero;
  }

  // Coefficient of the functional on a class with support size s.
  int functional_coeff(Functional f, int s) const {
    if (f == Functional::Phi3) return s < k_ - 1 ? 1 : 0;
    return binom_mod2(n_ - 2 - s, k_ - 1 - s);
  }

  int evaluate(Functional f, const RingElement& x) const {
    if (!functional_available(f))
      throw std::domain_error("functional PHI3 requires case B_EVEN_D_ZERO");
    if (!x.zero() && x.degree != functional_degree(f))
      throw std::invalid_argument("evaluate: element degree does not match functional");
    int acc = 0;
    for (auto s : x.terms) acc ^= functional_coeff(f, support_size(s));
    return acc;
  }

  // True iff the functional kills every relation of its degree.  The value of
  // a relation depends only on |L|, so the sweep runs per size; for the
  // binomial-coefficient functionals the closed form
  //   sum_i C(l,i) C(n-2-i,k-1-i) = C(l-n+k, k-1)  (mod 2)
  // is cross-checked as well.
  bool check_functional(Functional f) const {
    if (!functional_available(f)) return false;
    const int d = functional_degree(f);
    if (d < 0) return false;
    const int cap = std::min(k_ - 1, d);
    for (int l = n_ - k_; l <= std::min(d + 1, n_ - 1); ++l) {
      int val = 0;
      for (int i = 0; i <= cap; ++i)
        val ^= binom_mod2(l, i) & functional_coeff(f, i);
      if (val != 0) return false;
      if (f != Functional::Phi3) {
        if (val != binom_mod2(l - n_ + k_, k_ - 1)) return false;
      }
    }
    return true;
  }

  int basis_index(int d, std::uint64_t support) const {
    const int s = support_size(support);
    const int cap = std::min(k_ - 1, d);
    if (s > cap)
      throw std::invalid_argument("basis_index: support too large for degree");
    const auto& ranks = rank_map(s);
    return size_offset(cap, s) + ranks.at(support);
  }

 private:
  struct DegreeCache {
    std::once_flag once;
    std::unique_ptr<gf2::Rref> rref;
  };

  void check_degree(int d) const {
    if (d < 0 || d > top_degree())
      throw std::invalid_argument("degree out of range 0..n-3");
  }

  // Subsets of {1..n-1} of size exactly s, lex order, as masks.
  const std::vector<std::uint64_t>& supports_of_size(int s) const {
    std::call_once(size_once_[std::size_t(s)], [&] {
      auto& list = by_size_[std::size_t(s)];
      std::vector<int> idx(std::size_t(s), 0);
      for (int i = 0; i < s; ++i) idx[std::size_t(i)] = i + 1;
      if (s == 0) {
        list.push_back(0);
        return;
      }
      for (;;) {
        std::uint64_t m = 0;
        for (int v : idx) m |= std::uint64_t(1) << (v - 1);
        list.push_back(m);
        int pos = s - 1;
        while (pos >= 0 && idx[std::size_t(pos)] == n_ - 1 - (s - 1 - pos)) --pos;
        if (pos < 0) break;
        ++idx[std::size_t(pos)];
        for (int q = pos + 1; q < s; ++q)
          idx[std::size_t(q)] = idx[std::size_t(q - 1)] + 1;
      }
    });
    return by_size_[std::size_t(s)];
  }

  const std::vector<std::uint64_t>& supports_up_to(int cap) const {
    std::call_once(upto_once_[std::size_t(cap)], [&] {
      auto& list = upto_[std::size_t(cap)];
      for (int s = 0; s <= cap; ++s) {
        const auto& part = supports_of_size(s);
        list.insert(list.end(), part.begin(), part.end());
      }
    });
    return upto_[std::size_t(cap)];
  }

  const std::map<std::uint64_t, int>& rank_map(int s) const {
    std::call_once(rank_once_[std::size_t(s)], [&] {
      auto& mp = rank_[std::size_t(s)];
      const auto& part = supports_of_size(s);
      for (std::size_t i = 0; i < part.size(); ++i) mp[part[i]] = int(i);
    });
    return rank_[std::size_t(s)];
  }

  int size_offset(int cap, int s) const {
    int off = 0;
    for (int i = 0; i < s && i <= cap; ++i)
      off += int(supports_of_size(i).size());
    return off;
  }

  template <typename Fn>
  void for_each_relation_support(int d, Fn&& fn) const {
    const int lo = n_ - k_;
    const int hi = std::min(d + 1, n_ - 1);
    for (int l = lo; l <= hi; ++l)
      for (auto L : supports_of_size(l)) fn(L);
  }

  const gf2::Rref& echelon(int d) const {
    auto& cache = caches_[std::size_t(d)];
    std::call_once(cache.once, [&] {
      const auto& bas = basis(d);
      if (bas.size() > 16384)
        throw std::domain_error("PolygonRing: graded piece too large to echelonize");
      auto rr = std::make_unique<gf2::Rref>(bas.size());
      const int cap = std::min(k_ - 1, d);
      for_each_relation_support(d, [&](std::uint64_t L) {
        gf2::BitVec row(bas.size());
        for (std::uint64_t S = L;; S = (S - 1) & L) {
          if (support_size(S) <= cap)
            row.flip(std::size_t(basis_index(d, S)));
          if (S == 0) break;
        }
        rr->insert(std::move(row));
      });
      cache.rref = std::move(rr);
    });
    return *cache.rref;
  }

  ParamDecomp params_;
  int n_, k_;
  mutable std::unique_ptr<DegreeCache[]> caches_;
  mutable std::vector<std::uint64_t> by_size_[kMaxSides];
  mutable std::once_flag size_once_[kMaxSides];
  mutable std::vector<std::uint64_t> upto_[kMaxSides];
  mutable std::once_flag upto_once_[kMaxSides];
  mutable std::map<std::uint64_t, int> rank_[kMaxSides];
  mutable std::once_flag rank_once_[kMaxSides];
};

// Convenience constructors for elements.
inline RingElement ring_class(int degree, std::initializer_list<int> support) {
  RingElement e;
  e.degree = degree;
  std::uint64_t m = 0;
  for (int i : support) m |= std::uint64_t(1) << (i - 1);
  e.terms.push_back(m);
  return e;
}

inline std::uint64_t mask_of(std::initializer_list<int> support) {
  std::uint64_t m = 0;
  for (int i : support) m |= std::uint64_t(1) << (i - 1);
  return m;
}

}  // namespace polytc
