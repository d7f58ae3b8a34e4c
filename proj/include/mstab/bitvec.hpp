#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mstab/common.hpp"

namespace mstab {

/// Fixed-length binary vector over GF(2), bit-packed into 64-bit words.
/// Bit k lives in word k/64 at position k%64; tail bits are always zero.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_(words_for(n), 0) {}

  static BitVec unit(std::size_t n, std::size_t k) {
    BitVec v(n);
    v.set(k, true);
    return v;
  }

  /// Parses "0101..."; character i is bit i (leftmost = index 0).
  static BitVec from_string(std::string_view bits) {
    BitVec v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i, true);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("bit string may contain only 0 and 1");
      }
    }
    return v;
  }

  std::size_t size() const { return n_; }

  bool get(std::size_t k) const {
    check_index(k);
    return (w_[k / kWordBits] >> (k % kWordBits)) & 1;
  }

  void set(std::size_t k, bool v) {
    check_index(k);
    word_t mask = word_t{1} << (k % kWordBits);
    if (v) {
      w_[k / kWordBits] |= mask;
    } else {
      w_[k / kWordBits] &= ~mask;
    }
  }

  void flip(std::size_t k) {
    check_index(k);
    w_[k / kWordBits] ^= word_t{1} << (k % kWordBits);
  }

  void clear() { std::fill(w_.begin(), w_.end(), 0); }

  /// Toggles every bit in [first, last).
  void xor_range(std::size_t first, std::size_t last) {
    if (first >= last) return;
    check_index(last - 1);
    std::size_t wf = first / kWordBits, wl = (last - 1) / kWordBits;
    word_t head = ~word_t{0} << (first % kWordBits);
    word_t tail = ~word_t{0} >> (kWordBits - 1 - (last - 1) % kWordBits);
    if (wf == wl) {
      w_[wf] ^= head & tail;
    } else {
      w_[wf] ^= head;
      for (std::size_t i = wf + 1; i < wl; ++i) w_[i] ^= ~word_t{0};
      w_[wl] ^= tail;
    }
  }

  BitVec& operator^=(const BitVec& o) {
    check_same(o);
    gf2::xor_into(w_.data(), o.w_.data(), w_.size());
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  BitVec& operator&=(const BitVec& o) {
    check_same(o);
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }
  friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

  bool operator==(const BitVec&) const = default;

  std::size_t popcount() const { return gf2::popcount(w_.data(), w_.size()); }
  int parity() const { return gf2::parity(w_.data(), w_.size()); }
  bool none() const {
    for (word_t w : w_)
      if (w) return false;
    return true;
  }

  /// Parity of the elementwise product (GF(2) inner product).
  int dot(const BitVec& o) const {
    check_same(o);
    return gf2::dot(w_.data(), o.w_.data(), w_.size());
  }

  bool is_subset_of(const BitVec& o) const {
    check_same(o);
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  std::ptrdiff_t first_set() const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i]) return static_cast<std::ptrdiff_t>(i * kWordBits + std::countr_zero(w_[i]));
    return -1;
  }

  /// Inclusive prefix parity: result bit k = sum of bits 0..k mod 2.
  BitVec prefix_parity() const {
    BitVec r(n_);
    gf2::prefix_parity(w_.data(), r.w_.data(), w_.size());
    r.mask_tail();
    return r;
  }

  /// Bit k moves to position k+1; the top bit falls off.
  BitVec shifted_up() const {
    BitVec r(n_);
    word_t carry = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
      r.w_[i] = (w_[i] << 1) | carry;
      carry = w_[i] >> (kWordBits - 1);
    }
    r.mask_tail();
    return r;
  }

  /// Bit k+1 moves to position k; bit 0 falls off.
  BitVec shifted_down() const {
    BitVec r(n_);
    word_t borrow = 0;
    for (std::size_t i = w_.size(); i-- > 0;) {
      r.w_[i] = (w_[i] >> 1) | borrow;
      borrow = w_[i] << (kWordBits - 1);
    }
    return r;
  }

  std::string str() const {
    std::string s(n_, '0');
    for (std::size_t i = 0; i < n_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  std::span<const word_t> words() const { return {w_.data(), w_.size()}; }
  std::span<word_t> words() { return {w_.data(), w_.size()}; }

  /// Calls f(k) for every set bit, in ascending order.
  template <typename F>
  void for_each_set(F&& f) const {
    for (std::size_t i = 0; i < w_.size(); ++i) {
      word_t w = w_[i];
      while (w) {
        f(i * kWordBits + std::countr_zero(w));
        w &= w - 1;
      }
    }
  }

 private:
  void check_index(std::size_t k) const {
    if (k >= n_) throw std::out_of_range("bit index out of range");
  }
  void check_same(const BitVec& o) const {
    if (n_ != o.n_) throw DimensionMismatch("bit vectors differ in length");
  }
  void mask_tail() {
    if (n_ % kWordBits) w_.back() &= ~word_t{0} >> (kWordBits - n_ % kWordBits);
  }

  std::size_t n_ = 0;
  std::vector<word_t> w_;
};

inline BitVec prefix_parity(const BitVec& x) { return x.prefix_parity(); }
inline int parity(const BitVec& x) { return x.parity(); }

/// Square binary matrix with bit-packed rows stored contiguously.
class BitMatrix {
 public:
  BitMatrix() = default;
  explicit BitMatrix(std::size_t n) : n_(n), stride_(words_for(n)), w_(n * stride_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  std::size_t size() const { return n_; }
  std::size_t stride() const { return stride_; }

  std::span<word_t> row(std::size_t i) { return {w_.data() + i * stride_, stride_}; }
  std::span<const word_t> row(std::size_t i) const { return {w_.data() + i * stride_, stride_}; }

  bool get(std::size_t i, std::size_t j) const {
    return (w_[i * stride_ + j / kWordBits] >> (j % kWordBits)) & 1;
  }
  void set(std::size_t i, std::size_t j, bool v) {
    word_t mask = word_t{1} << (j % kWordBits);
    if (v) {
      w_[i * stride_ + j / kWordBits] |= mask;
    } else {
      w_[i * stride_ + j / kWordBits] &= ~mask;
    }
  }

  void xor_row(std::size_t dst, std::span<const word_t> src) {
    gf2::xor_into(w_.data() + dst * stride_, src.data(), stride_);
  }

  int row_dot(std::size_t i, const BitVec& v) const {
    return gf2::dot(w_.data() + i * stride_, v.words().data(), stride_);
  }

  std::size_t row_popcount(std::size_t i) const {
    return gf2::popcount(w_.data() + i * stride_, stride_);
  }

  BitVec row_vec(std::size_t i) const {
    BitVec v(n_);
    auto r = row(i);
    std::copy(r.begin(), r.end(), v.words().begin());
    return v;
  }

  void set_row(std::size_t i, const BitVec& v) {
    if (v.size() != n_) throw DimensionMismatch("row length mismatch");
    auto src = v.words();
    std::copy(src.begin(), src.end(), w_.data() + i * stride_);
  }

  bool operator==(const BitMatrix&) const = default;

  BitMatrix transposed() const {
    BitMatrix t(n_);
    std::size_t blocks = words_for(n_);
    for (std::size_t bi = 0; bi < blocks; ++bi) {
      for (std::size_t bj = 0; bj < blocks; ++bj) {
        word_t blk[kWordBits] = {};
        std::size_t rows = std::min(kWordBits, n_ - bi * kWordBits);
        for (std::size_t r = 0; r < rows; ++r)
          blk[r] = w_[(bi * kWordBits + r) * stride_ + bj];
        transpose64(blk);
        std::size_t cols = std::min(kWordBits, n_ - bj * kWordBits);
        for (std::size_t c = 0; c < cols; ++c)
          t.w_[(bj * kWordBits + c) * stride_ + bi] = blk[c];
      }
    }
    return t;
  }

  /// GF(2) matrix product, built by row combination.
  friend BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("matrix size mismatch");
    BitMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) {
      word_t* ci = c.w_.data() + i * c.stride_;
      const word_t* ai = a.w_.data() + i * a.stride_;
      for (std::size_t wi = 0; wi < a.stride_; ++wi) {
        word_t w = ai[wi];
        while (w) {
          std::size_t j = wi * kWordBits + std::countr_zero(w);
          w &= w - 1;
          gf2::xor_into(ci, b.w_.data() + j * b.stride_, b.stride_);
        }
      }
    }
    return c;
  }

 private:
  // In-place transpose of a 64x64 bit block.
  static void transpose64(word_t* a) {
    word_t m = 0x00000000FFFFFFFFull;
    for (std::size_t j = 32; j != 0; j >>= 1, m ^= m << j) {
      for (std::size_t k = 0; k < kWordBits; k = (k + j + 1) & ~j) {
        word_t t = (a[k] ^ (a[k + j] >> j)) & m;
        a[k] ^= t;
        a[k + j] ^= t << j;
      }
    }
  }

  std::size_t n_ = 0, stride_ = 0;
  std::vector<word_t> w_;
};

}  // namespace mstab
