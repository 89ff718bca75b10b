#pragma once

// Dense reduced-coordinate model of the tensor square, used for bulk
// zero-divisor vanishing checks where the sparse term population would blow
// up.  Coordinates of degree d are the free columns of the relation echelon;
// multiplication by each degree-1 generator is tabulated once, and a tensor
// state is a grid of bit matrices indexed by bidegree.

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "polytc/gf2.hpp"
#include "polytc/ring.hpp"
#include "polytc/tensor.hpp"

namespace polytc {

class QuotientModel {
 public:
  explicit QuotientModel(const PolygonRing& ring) : ring_(ring), top_(ring.top_degree()) {
    const int gens = ring_.n();  // generator 0 is R, generator i is V_i
    dims_.resize(std::size_t(top_) + 1);
    coords_.resize(std::size_t(top_) + 1);
    images_.resize(std::size_t(top_) + 1);
    for (int d = 0; d <= top_; ++d) {
      build_coords(d);
      dims_[std::size_t(d)] = int(free_masks_[std::size_t(d)].size());
    }
    for (int d = 0; d < top_; ++d) {
      auto& per_gen = images_[std::size_t(d)];
      per_gen.resize(std::size_t(gens));
      const auto& masks = free_masks_[std::size_t(d)];
      for (int g = 0; g < gens; ++g) {
        auto& table = per_gen[std::size_t(g)];
        table.resize(masks.size());
        for (std::size_t i = 0; i < masks.size(); ++i) {
          const auto prod = ring_.class_product(
              make_class(masks[i], d),
              make_class(g == 0 ? 0 : std::uint64_t(1) << (g - 1), 1));
          if (!prod) continue;
          table[i] = class_coords(d + 1, class_support(*prod));
        }
      }
    }
  }

  const PolygonRing& ring() const { return ring_; }
  int dim(int d) const { return dims_[std::size_t(d)]; }

  // Reduced coordinates (at the class's own degree) of a basis class.
  const std::vector<int>& class_coords(int d, std::uint64_t mask) const {
    return coords_[std::size_t(d)].at(mask);
  }

  // True iff prod (y_i (x) 1 + 1 (x) y_i) is the zero element of H* (x) H*.
  bool product_vanishes(std::span<const H1Vector> factors) const {
    Grid state = initial_state();
    for (const auto& y : factors) {
      state = apply_factor(state, y);
      if (grid_empty(state)) return true;
    }
    return grid_empty(state);
  }

  // Coset zero test for a sparse tensor element.
  bool tensor_is_zero(const TensorElement& x) const {
    Grid state;
    for (const auto& [bd, comp] : x.comps) {
      if (comp.empty()) continue;
      auto& block = state[bd];
      block = gf2::BitMatrix(std::size_t(dim(bd.first)), std::size_t(dim(bd.second)));
      for (const auto& t : comp)
        for (int i : class_coords(bd.first, class_support(t.left)))
          for (int j : class_coords(bd.second, class_support(t.right)))
            block.flip(std::size_t(i), std::size_t(j));
    }
    return grid_empty(state);
  }

 private:
  using Grid = std::map<std::pair<int, int>, gf2::BitMatrix>;

  void build_coords(int d) {
    const auto& bas = ring_.basis(d);
    // Force the relation echelon via dim(); free columns become coordinates.
    (void)ring_.dim(d);
    auto& mp = coords_[std::size_t(d)];
    auto& free_masks = free_masks_.emplace_back();
    free_masks.clear();
    std::vector<int> col_to_coord(bas.size(), -1);
    for (std::size_t c = 0; c < bas.size(); ++c) {
      RingElement e;
      e.degree = d;
      e.terms = {bas[c]};
      const RingElement red = ring_.reduce(e);
      std::vector<int> coords;
      for (auto m : red.terms) coords.push_back(coord_of(d, m, col_to_coord, free_masks, bas));
      mp[bas[c]] = std::move(coords);
    }
  }

  int coord_of(int d, std::uint64_t mask, std::vector<int>& col_to_coord,
               std::vector<std::uint64_t>& free_masks,
               const std::vector<std::uint64_t>& bas) {
    const int col = ring_.basis_index(d, mask);
    if (col_to_coord[std::size_t(col)] < 0) {
      col_to_coord[std::size_t(col)] = int(free_masks.size());
      free_masks.push_back(bas[std::size_t(col)]);
    }
    return col_to_coord[std::size_t(col)];
  }

  Grid initial_state() const {
    Grid g;
    gf2::BitMatrix unit(1, 1);
    unit.flip(0, 0);
    g[{0, 0}] = std::move(unit);
    return g;
  }

  static bool grid_empty(const Grid& g) {
    for (const auto& [bd, m] : g)
      if (m.any()) return false;
    return true;
  }

  std::vector<int> gens_of(const H1Vector& y) const {
    std::vector<int> gens;
    if (y.r) gens.push_back(0);
    for (std::uint64_t m = y.v; m; m &= m - 1)
      gens.push_back(__builtin_ctzll(m) + 1);
    return gens;
  }

  Grid apply_factor(const Grid& state, const H1Vector& y) const {
    const auto gens = gens_of(y);
    Grid next;
    auto block = [&](int a, int b) -> gf2::BitMatrix& {
      auto it = next.find({a, b});
      if (it == next.end())
        it = next.emplace(std::pair{a, b},
                          gf2::BitMatrix(std::size_t(dim(a)), std::size_t(dim(b))))
                 .first;
      return it->second;
    };
    for (const auto& [bd, X] : state) {
      if (!X.any()) continue;
      const auto [a, b] = bd;
      if (a < top_) {
        auto& tgt = block(a + 1, b);
        for (int g : gens) {
          const auto& table = images_[std::size_t(a)][std::size_t(g)];
          for (std::size_t i = 0; i < X.rows(); ++i)
            for (int j : table[i]) tgt.xor_row_from(std::size_t(j), X, i);
        }
      }
      if (b < top_) {
        const gf2::BitMatrix Xt = X.transposed();
        gf2::BitMatrix acc(std::size_t(dim(b + 1)), std::size_t(dim(a)));
        for (int g : gens) {
          const auto& table = images_[std::size_t(b)][std::size_t(g)];
          for (std::size_t i = 0; i < Xt.rows(); ++i)
            for (int j : table[i]) acc.xor_row_from(std::size_t(j), Xt, i);
        }
        if (acc.any()) {
          auto& tgt = block(a, b + 1);
          const gf2::BitMatrix accT = acc.transposed();
          for (std::size_t r = 0; r < tgt.rows(); ++r) tgt.xor_row_from(r, accT, r);
        }
      }
    }
    return next;
  }

  const PolygonRing& ring_;
  int top_;
  std::vector<int> dims_;
  std::vector<std::map<std::uint64_t, std::vector<int>>> coords_;
  std::vector<std::vector<std::uint64_t>> free_masks_;
  // images_[d][g][coord] = coordinates of (class * generator g) in degree d+1
  std::vector<std::vector<std::vector<std::vector<int>>>> images_;
};

}  // namespace polytc
