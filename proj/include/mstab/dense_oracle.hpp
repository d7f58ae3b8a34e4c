#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "mstab/majorana_string.hpp"

namespace mstab {

inline constexpr std::size_t kMaxOracleSites = 14;

/// Brute-force statevector under the Jordan-Wigner convention. Site 0 is the
/// most significant index bit: index(s) = sum_k s_k * 2^{n-1-k}. Slow and
/// exact; this is the ground truth the fast path is checked against.
class DenseState {
 public:
  using cplx = std::complex<double>;

  explicit DenseState(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("site count must be positive");
    if (n > kMaxOracleSites)
      throw std::invalid_argument("dense oracle refuses more than 14 sites");
    amps_.assign(std::size_t{1} << n, cplx{0.0, 0.0});
    amps_[0] = 1.0;
  }

  static DenseState vacuum(std::size_t n) { return DenseState(n); }

  static DenseState basis(const BitVec& s) {
    DenseState st(s.size());
    st.amps_[0] = 0.0;
    st.amps_[index_of(s)] = 1.0;
    return st;
  }

  std::size_t sites() const { return n_; }
  std::size_t dim() const { return amps_.size(); }
  const std::vector<cplx>& amplitudes() const { return amps_; }
  std::vector<cplx>& amplitudes() { return amps_; }

  static std::size_t index_of(const BitVec& s) {
    std::size_t idx = 0;
    for (std::size_t k = 0; k < s.size(); ++k) idx = (idx << 1) | (s.get(k) ? 1 : 0);
    return idx;
  }

  static BitVec bits_of(std::size_t idx, std::size_t n) {
    BitVec s(n);
    for (std::size_t k = 0; k < n; ++k) s.set(k, (idx >> (n - 1 - k)) & 1);
    return s;
  }

  /// c_k |s> = (-1)^{s_0+...+s_{k-1}} |s + e_k>
  void apply_c(std::size_t k) {
    check_site(k);
    std::size_t mask = bit_mask(k);
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
      if (idx & mask) continue;
      double sign = jw_sign(idx, k);
      std::swap(amps_[idx], amps_[idx | mask]);
      amps_[idx] *= sign;
      amps_[idx | mask] *= sign;
    }
  }

  /// ct_k |s> = i (-1)^{s_k} (-1)^{s_0+...+s_{k-1}} |s + e_k>
  void apply_ctilde(std::size_t k) {
    check_site(k);
    std::size_t mask = bit_mask(k);
    const cplx i{0.0, 1.0};
    for (std::size_t idx = 0; idx < amps_.size(); ++idx) {
      if (idx & mask) continue;
      double sign = jw_sign(idx, k);
      cplx low = amps_[idx];           // source with s_k = 0
      cplx high = amps_[idx | mask];   // source with s_k = 1
      amps_[idx | mask] = i * sign * low;
      amps_[idx] = -i * sign * high;
    }
  }

  /// p_k |s> = (-1)^{s_k} |s>
  void apply_p(std::size_t k) {
    check_site(k);
    std::size_t mask = bit_mask(k);
    for (std::size_t idx = 0; idx < amps_.size(); ++idx)
      if (idx & mask) amps_[idx] = -amps_[idx];
  }

  /// Applies i^phase * prod p^z c^x in canonical order.
  void apply_string(const MajoranaString& g) {
    check_sites(g.sites());
    for (std::size_t k = n_; k-- > 0;)  // rightmost canonical factor acts first
      if (g.x.get(k)) apply_c(k);
    for (std::size_t k = 0; k < n_; ++k)
      if (g.z.get(k)) apply_p(k);
    static constexpr cplx kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    cplx ph = kPhases[g.phase & 3];
    if (ph != cplx{1.0, 0.0})
      for (auto& a : amps_) a *= ph;
  }

  /// exp(-i pi/4 Gamma) for sign == minus, exp(+i pi/4 Gamma) for plus.
  /// Gamma must be Hermitian so the exponential reduces to
  /// cos(pi/4) -+ i sin(pi/4) Gamma.
  void apply_rotation(const MajoranaString& g, Sign sign) {
    if (!is_hermitian(g)) throw std::invalid_argument("rotation needs a Hermitian string");
    DenseState rotated = *this;
    rotated.apply_string(g);
    const double r = 0.7071067811865475244;  // 1/sqrt(2)
    cplx factor = (sign == Sign::plus) ? cplx{0.0, r} : cplx{0.0, -r};
    for (std::size_t idx = 0; idx < amps_.size(); ++idx)
      amps_[idx] = r * amps_[idx] + factor * rotated.amps_[idx];
  }

  cplx amplitude(const BitVec& x) const {
    check_sites(x.size());
    return amps_[index_of(x)];
  }

  cplx expectation(const MajoranaString& g) const {
    DenseState acted = *this;
    acted.apply_string(g);
    return inner(*this, acted);
  }

  double norm_sq() const {
    double s = 0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
  }

  friend cplx inner(const DenseState& a, const DenseState& b) {
    if (a.n_ != b.n_) throw DimensionMismatch("states differ in site count");
    cplx s{0.0, 0.0};
    for (std::size_t idx = 0; idx < a.amps_.size(); ++idx)
      s += std::conj(a.amps_[idx]) * b.amps_[idx];
    return s;
  }

 private:
  void check_site(std::size_t k) const {
    if (k >= n_) throw std::out_of_range("site out of range");
  }
  void check_sites(std::size_t m) const {
    if (m != n_) throw DimensionMismatch("operator and state differ in site count");
  }
  std::size_t bit_mask(std::size_t k) const { return std::size_t{1} << (n_ - 1 - k); }
  double jw_sign(std::size_t idx, std::size_t k) const {
    // parity of occupations on sites 0..k-1, which sit above bit n-1-k
    return (std::popcount(idx >> (n_ - k)) & 1) ? -1.0 : 1.0;
  }

  std::size_t n_;
  std::vector<cplx> amps_;
};

}  // namespace mstab
