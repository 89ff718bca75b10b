#pragma once

// Dense GF(2) row vectors, reduced row-echelon forms, and bit matrices.
//
// Rref pivots on the *highest* set column of each row.  The canonical coset
// representative produced by reduce() is therefore supported on the earliest
// free columns, which keeps quotient representatives on the smallest basis
// elements.

#include <cstdint>
#include <cstddef>
#include <vector>

namespace polytc::gf2 {

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t bits) : bits_(bits), w_((bits + 63) / 64, 0) {}

  std::size_t size() const { return bits_; }

  bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(std::size_t i) { w_[i >> 6] |= 1ULL << (i & 63); }
  void flip(std::size_t i) { w_[i >> 6] ^= 1ULL << (i & 63); }

  BitVec& operator^=(const BitVec& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
  }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }

  // Highest set bit strictly below `from`, or -1.  Pass size() to scan all.
  long highest_set_below(std::size_t from) const {
    if (from == 0) return -1;
    std::size_t word = (from - 1) >> 6;
    std::uint64_t mask =
        (from & 63) ? ((1ULL << (from & 63)) - 1) : ~0ULL;  // bits < from in `word`
    for (;;) {
      const std::uint64_t w = w_[word] & mask;
      if (w) return long(word << 6) + (63 - __builtin_clzll(w));
      if (word == 0) return -1;
      --word;
      mask = ~0ULL;
    }
  }

  long highest_set() const { return highest_set_below(bits_); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : w_) c += std::size_t(__builtin_popcountll(w));
    return c;
  }

  const std::vector<std::uint64_t>& words() const { return w_; }

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> w_;
};

class Rref {
 public:
  explicit Rref(std::size_t cols) : cols_(cols), pivot_row_(cols, -1) {}

  std::size_t cols() const { return cols_; }
  std::size_t rank() const { return rows_.size(); }

  bool is_pivot(std::size_t col) const { return pivot_row_[col] >= 0; }

  // Canonical representative: clears every pivot column from v.
  void reduce(BitVec& v) const {
    long c = v.highest_set();
    while (c >= 0) {
      if (pivot_row_[std::size_t(c)] >= 0)
        v ^= rows_[std::size_t(pivot_row_[std::size_t(c)])];
      c = v.highest_set_below(std::size_t(c));
    }
  }

  // Inserts a row, keeping the form fully reduced.  Returns true if the rank
  // grew (row independent of the current span).
  bool insert(BitVec v) {
    reduce(v);
    const long p = v.highest_set();
    if (p < 0) return false;
    for (auto& r : rows_)
      if (r.test(std::size_t(p))) r ^= v;
    pivot_row_[std::size_t(p)] = long(rows_.size());
    rows_.push_back(std::move(v));
    return true;
  }

  bool member(BitVec v) const {
    reduce(v);
    return !v.any();
  }

 private:
  std::size_t cols_;
  std::vector<BitVec> rows_;
  std::vector<long> pivot_row_;  // column -> row index, -1 if free
};

// Row-major bit matrix with a fixed word stride.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_((cols + 63) / 64), w_(rows * stride_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool test(std::size_t r, std::size_t c) const {
    return (w_[r * stride_ + (c >> 6)] >> (c & 63)) & 1;
  }
  void flip(std::size_t r, std::size_t c) { w_[r * stride_ + (c >> 6)] ^= 1ULL << (c & 63); }

  // row r ^= other.row(src)
  void xor_row_from(std::size_t r, const BitMatrix& other, std::size_t src) {
    const std::uint64_t* s = &other.w_[src * other.stride_];
    std::uint64_t* d = &w_[r * stride_];
    for (std::size_t i = 0; i < stride_; ++i) d[i] ^= s[i];
  }

  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const std::uint64_t* row = &w_[r * stride_];
      for (std::size_t wi = 0; wi < stride_; ++wi) {
        std::uint64_t w = row[wi];
        while (w) {
          const int b = __builtin_ctzll(w);
          w &= w - 1;
          t.flip((wi << 6) + std::size_t(b), r);
        }
      }
    }
    return t;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
  std::vector<std::uint64_t> w_;
};

}  // namespace polytc::gf2
