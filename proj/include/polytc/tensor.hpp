#pragma once

// GF(2) arithmetic in the tensor square H* (x) H* of the polygon-space
// cohomology ring: zero-divisor factors y(x)1 + 1(x)y for degree-1 classes y,
// bigraded products with truncation past bidegree (n-3, n-3), and evaluation
// under pairs of top-degree functionals.
//
// Components are kept as sorted duplicate-free vectors of class-key pairs, so
// GF(2) addition is symmetric difference and results are deterministic.
// Coordinates stay in T-class form (support, degree); echelon reduction
// against the relation span is applied by consumers that need coset zero
// tests, not during expansion.

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "polytc/ring.hpp"

namespace polytc {

// A degree-1 class r*R + sum_i v_i*V_i.
struct H1Vector {
  bool r = false;
  std::uint64_t v = 0;  // index i at bit i-1

  bool zero() const { return !r && v == 0; }
  bool operator==(const H1Vector&) const = default;
};

inline H1Vector h1_R() { return {true, 0}; }
inline H1Vector h1_V(int i) { return {false, std::uint64_t(1) << (i - 1)}; }

struct BiKey {
  ClassKey left = 0, right = 0;
  auto operator<=>(const BiKey&) const = default;
};

class TensorElement {
 public:
  using Bidegree = std::pair<int, int>;
  using Component = std::vector<BiKey>;  // sorted, duplicate-free

  std::map<Bidegree, Component> comps;

  static TensorElement identity() {
    TensorElement e;
    e.comps[{0, 0}] = {BiKey{make_class(0, 0), make_class(0, 0)}};
    return e;
  }

  bool zero() const {
    for (const auto& [bd, c] : comps)
      if (!c.empty()) return false;
    return true;
  }

  const Component* component(int a, int b) const {
    auto it = comps.find({a, b});
    return it == comps.end() || it->second.empty() ? nullptr : &it->second;
  }

  TensorElement swapped() const {
    TensorElement out;
    for (const auto& [bd, c] : comps) {
      Component s;
      s.reserve(c.size());
      for (auto t : c) s.push_back({t.right, t.left});
      std::sort(s.begin(), s.end());
      out.comps[{bd.second, bd.first}] = std::move(s);
    }
    return out;
  }

  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& [bd, c] : comps) n += c.size();
    return n;
  }

  bool operator==(const TensorElement& o) const {
    auto norm = [](const TensorElement& e) {
      std::vector<std::pair<Bidegree, const Component*>> v;
      for (const auto& [bd, c] : e.comps)
        if (!c.empty()) v.push_back({bd, &c});
      return v;
    };
    auto a = norm(*this), b = norm(o);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].first != b[i].first || *a[i].second != *b[i].second) return false;
    return true;
  }
};

namespace detail {

inline void cancel_pairs(std::vector<BiKey>& v) {
  std::sort(v.begin(), v.end());
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

// y(x)1 + 1(x)y.
inline TensorElement zero_divisor(const PolygonRing& ring, const H1Vector& y) {
  if (y.zero()) throw std::invalid_argument("zero_divisor: zero class rejected");
  if (y.v >> (ring.n() - 1))
    throw std::invalid_argument("zero_divisor: generator index out of range");
  TensorElement e;
  auto& left = e.comps[{1, 0}];
  auto& right = e.comps[{0, 1}];
  const ClassKey one = make_class(0, 0);
  auto emit = [&](std::uint64_t support) {
    const ClassKey c = make_class(support, 1);
    left.push_back({c, one});
    right.push_back({one, c});
  };
  if (y.r) emit(0);
  for (std::uint64_t m = y.v; m; m &= m - 1) emit(m & -m);
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  return e;
}

// Bilinear product; per-term side products follow the single-class rule of
// the ring, components past (n-3, n-3) are discarded, duplicate pairs cancel.
inline TensorElement tensor_multiply(const PolygonRing& ring,
                                     const TensorElement& u,
                                     const TensorElement& v) {
  TensorElement out;
  for (const auto& [bu, cu] : u.comps) {
    if (cu.empty()) continue;
    for (const auto& [bv, cv] : v.comps) {
      if (cv.empty()) continue;
      const int a = bu.first + bv.first, b = bu.second + bv.second;
      if (a > ring.top_degree() || b > ring.top_degree()) continue;
      auto& target = out.comps[{a, b}];
      for (const auto& tu : cu)
        for (const auto& tv : cv) {
          const auto l = ring.class_product(tu.left, tv.left);
          if (!l) continue;
          const auto r = ring.class_product(tu.right, tv.right);
          if (!r) continue;
          target.push_back({*l, *r});
        }
    }
  }
  for (auto it = out.comps.begin(); it != out.comps.end();) {
    detail::cancel_pairs(it->second);
    it = it->second.empty() ? out.comps.erase(it) : std::next(it);
  }
  return out;
}

// Char-2 squaring: (sum t_i)^2 = sum t_i^2, and T_{S,d}^2 = T_{S,2d}.
inline TensorElement tensor_square(const PolygonRing& ring, const TensorElement& f) {
  TensorElement out;
  for (const auto& [bd, c] : f.comps) {
    if (c.empty()) continue;
    const int a = 2 * bd.first, b = 2 * bd.second;
    if (a > ring.top_degree() || b > ring.top_degree()) continue;
    auto& target = out.comps[{a, b}];
    target.reserve(c.size());
    for (auto t : c)
      target.push_back({make_class(class_support(t.left), 2 * class_degree(t.left)),
                        make_class(class_support(t.right), 2 * class_degree(t.right))});
    std::sort(target.begin(), target.end());
  }
  return out;
}

// f^e by square-and-multiply; f^0 is the identity T_{0,0} (x) T_{0,0}.
inline TensorElement power(const PolygonRing& ring, TensorElement f, long long e) {
  if (e < 0) throw std::invalid_argument("power: negative exponent");
  TensorElement acc = TensorElement::identity();
  while (e > 0) {
    if (e & 1) acc = tensor_multiply(ring, acc, f);
    e >>= 1;
    if (e) f = tensor_square(ring, f);
  }
  return acc;
}

using FactorList = std::vector<std::pair<H1Vector, int>>;

namespace detail {

inline TensorElement expand_impl(const PolygonRing& ring, const FactorList& factors) {
  std::vector<TensorElement> parts;
  parts.reserve(factors.size());
  for (const auto& [y, e] : factors)
    parts.push_back(power(ring, zero_divisor(ring, y), e));
  // Accumulate small parts first; the result is order-independent, the peak
  // population is not.
  std::stable_sort(parts.begin(), parts.end(),
                   [](const TensorElement& a, const TensorElement& b) {
                     return a.term_count() < b.term_count();
                   });
  TensorElement acc = TensorElement::identity();
  for (auto& p : parts) acc = tensor_multiply(ring, acc, p);
  return acc;
}

}  // namespace detail

// Product of zero-divisor powers prod (y_i (x) 1 + 1 (x) y_i)^{e_i}.
inline TensorElement expand(const PolygonRing& ring, const FactorList& factors) {
  return detail::expand_impl(ring, factors);
}

// Applies f_left (x) f_right to the component at the functionals' bidegree.
inline int pair_evaluate(const PolygonRing& ring, Functional left, Functional right,
                         const TensorElement& x) {
  for (Functional f : {left, right})
    if (!ring.functional_available(f))
      throw std::domain_error("functional PHI3 requires case B_EVEN_D_ZERO");
  const auto* comp = x.component(ring.functional_degree(left), ring.functional_degree(right));
  if (!comp) return 0;
  int acc = 0;
  for (const auto& t : *comp)
    acc ^= ring.functional_coeff(left, support_size(class_support(t.left))) &
           ring.functional_coeff(right, support_size(class_support(t.right)));
  return acc;
}

}  // namespace polytc
