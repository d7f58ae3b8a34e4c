#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mstab/majorana_string.hpp"

namespace mstab {

/// Tableau form of a control-type Clifford U_C (one fixing the vacuum).
/// Row j records how U_C conjugates the local generators:
///
///     U_C^dag p_j U_C = prod_k p_k^{E_jk}
///     U_C^dag c_j U_C = i^{omega_j} prod_k p_k^{F_jk} c_k^{G_jk}
///
/// E, F, G are n x n binary matrices and omega_j is a quartic phase. The
/// rows satisfy E.G^T = E^T.G = I and F.G^T + G.F^T = I + G.G^T over GF(2),
/// and every G row has odd weight; see verify_identities().
class ControlTableau {
 public:
  explicit ControlTableau(std::size_t n)
      : n_(n),
        omega_(n, 0),
        e_(BitMatrix::identity(n)),
        f_(BitMatrix(n)),
        g_(BitMatrix::identity(n)) {
    if (n == 0) throw std::invalid_argument("site count must be positive");
  }

  static ControlTableau identity(std::size_t n) { return ControlTableau(n); }

  static ControlTableau from_parts(std::vector<std::uint8_t> omega, BitMatrix e, BitMatrix f,
                                   BitMatrix g) {
    std::size_t n = omega.size();
    if (n == 0 || e.size() != n || f.size() != n || g.size() != n)
      throw std::invalid_argument("tableau parts disagree on size");
    ControlTableau t(n);
    for (auto& w : omega) w &= 3;
    t.omega_ = std::move(omega);
    t.e_ = std::move(e);
    t.f_ = std::move(f);
    t.g_ = std::move(g);
    return t;
  }

  std::size_t sites() const { return n_; }
  std::uint8_t omega(std::size_t j) const { return omega_[j]; }
  const std::vector<std::uint8_t>& omega_row() const { return omega_; }
  const BitMatrix& e() const { return e_; }
  const BitMatrix& f() const { return f_; }
  const BitMatrix& g() const { return g_; }

  bool operator==(const ControlTableau&) const = default;

  /// U_C^dag Gamma U_C, assembled row by row in O((|z|+|x|) n) bit ops.
  MajoranaString conjugate(const MajoranaString& gam) const {
    if (gam.sites() != n_) throw DimensionMismatch("operator and tableau differ in size");
    const std::size_t nw = words_for(n_);
    MajoranaString acc = MajoranaString::identity(n_);
    word_t* az = acc.z.words().data();
    word_t* ax = acc.x.words().data();
    std::vector<word_t> xbar(nw, 0);  // prefix parity of acc.x; dirty tail is
                                      // harmless because stored rows have none
    int pix = 0;
    unsigned phase = gam.phase;
    auto zw = gam.z.words();
    auto xw = gam.x.words();
    for (std::size_t wi = 0; wi < nw; ++wi) {
      word_t w = zw[wi] | xw[wi];
      while (w) {
        std::size_t j = wi * kWordBits + static_cast<std::size_t>(std::countr_zero(w));
        w &= w - 1;
        if (gam.z.get(j)) {
          const word_t* ej = e_.row(j).data();
          phase += 2 * static_cast<unsigned>(gf2::dot(ej, ax, nw));
          gf2::xor_into(az, ej, nw);
        }
        if (gam.x.get(j)) {
          const word_t* fj = f_.row(j).data();
          const word_t* gj = g_.row(j).data();
          int pg = gf2::parity(gj, nw);
          int sw = gf2::dot(fj, ax, nw) ^ gf2::dot(gj, xbar.data(), nw) ^ (pg & pix);
          phase += omega_[j] + 2 * static_cast<unsigned>(sw);
          gf2::xor_into(az, fj, nw);
          gf2::xor_into(ax, gj, nw);
          gf2::prefix_parity(ax, xbar.data(), nw);
          pix ^= pg;
        }
      }
    }
    acc.phase = static_cast<std::uint8_t>(phase & 3);
    return acc;
  }

  bool verify_identities() const {
    for (std::size_t i = 0; i < n_; ++i)
      if ((g_.row_popcount(i) & 1) == 0) return false;
    BitMatrix et = e_.transposed();
    BitMatrix gt = g_.transposed();
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        int want = (i == j) ? 1 : 0;
        if (gf2::dot(e_.row(i).data(), g_.row(j).data(), e_.stride()) != want) return false;
        if (gf2::dot(et.row(i).data(), gt.row(j).data(), et.stride()) != want) return false;
        int lhs = gf2::dot(f_.row(i).data(), g_.row(j).data(), f_.stride()) ^
                  gf2::dot(g_.row(i).data(), f_.row(j).data(), g_.stride());
        int rhs = want ^ gf2::dot(g_.row(i).data(), g_.row(j).data(), g_.stride());
        if (lhs != rhs) return false;
      }
    }
    return true;
  }

  /// U_C <- U_C exp(-i (-1)^vartheta pi/4 (I - Gamma_p)) with Gamma_p the
  /// pure p-string given by z. Only omega and F change:
  /// omega_j -= (-1)^vartheta (G_j.z), F_j += z (G_j.z).
  void right_mult_phase_gate(const BitVec& z, int vartheta) {
    if (z.size() != n_) throw DimensionMismatch("z length mismatch");
    const std::uint8_t delta = vartheta ? 1 : 3;
    auto zw = z.words();
    for (std::size_t j = 0; j < n_; ++j) {
      if (g_.row_dot(j, z)) {
        omega_[j] = static_cast<std::uint8_t>((omega_[j] + delta) & 3);
        f_.xor_row(j, zw);
      }
    }
  }

  /// U_C <- U_C C_{g1,g2} where C_{g1,g2} = exp(-i pi/4 (I-g1)(I-g2)) is the
  /// multi-site control gate. g1 must be a pure p-string (it is the control),
  /// g2 a Hermitian even-parity string commuting with g1.
  void right_mult_control(const MajoranaString& g1, const MajoranaString& g2) {
    if (g1.sites() != n_ || g2.sites() != n_)
      throw DimensionMismatch("operator and tableau differ in size");
    if (!g1.is_p_type() || g1.phase != 0)
      throw std::invalid_argument("control operand must be a pure p-string");
    if (!is_hermitian(g2) || g2.parity() != 0)
      throw std::invalid_argument("target operand must be Hermitian and even-parity");
    if (anticommutes(g1, g2)) throw std::invalid_argument("control operands must commute");
    if (g2.is_identity()) return;

    const std::size_t nw = words_for(n_);
    for (std::size_t j = 0; j < n_; ++j)
      if (e_.row_dot(j, g2.x)) e_.xor_row(j, g1.z.words());

    // Conjugating row j by C multiplies it from the left by one of three
    // fixed strings, selected by which of g1, g2 anticommute with the row.
    struct Pref {
      unsigned phase;
      BitVec z, x, xbar;
      int pix;
    };
    auto make_pref = [](const MajoranaString& s, unsigned extra) {
      return Pref{(s.phase + extra) & 3u, s.z, s.x, s.x.prefix_parity(), s.x.parity()};
    };
    Pref pa = make_pref(g2, 0);                  // a1=1, a2=0
    Pref pb = make_pref(g1, 0);                  // a1=0, a2=1
    Pref pc = make_pref(multiply(g1, g2), 2);    // a1=1, a2=1 carries (-1)
    BitVec zax = g2.z ^ g2.x;

    for (std::size_t j = 0; j < n_; ++j) {
      const word_t* fj = f_.row(j).data();
      const word_t* gj = g_.row(j).data();
      int a1 = gf2::dot(g1.z.words().data(), gj, nw);
      int a2 = gf2::dot(zax.words().data(), gj, nw) ^ gf2::dot(g2.x.words().data(), fj, nw);
      if (!(a1 | a2)) continue;
      const Pref& p = a1 ? (a2 ? pc : pa) : pb;
      int pg = gf2::parity(gj, nw);
      int sw = gf2::dot(fj, p.x.words().data(), nw) ^ gf2::dot(gj, p.xbar.words().data(), nw) ^
               (pg & p.pix);
      omega_[j] = static_cast<std::uint8_t>((omega_[j] + p.phase + 2 * static_cast<unsigned>(sw)) & 3);
      f_.xor_row(j, p.z.words());
      g_.xor_row(j, p.x.words());
    }
  }

  /// Left-multiplies U_C by exp(sign * i pi/4 (1 - p_j)); the control factor
  /// of the single-site quarter rotation.
  void left_mult_eta(std::size_t j, int sign) {
    check_site(j);
    omega_[j] = static_cast<std::uint8_t>((omega_[j] + (sign > 0 ? 1 : 3)) & 3);
    f_.xor_row(j, e_.row(j));
  }

  /// Left-multiplies U_C by exp(sign * i pi/4 (1 - p_j p_k)).
  void left_mult_w(std::size_t j, std::size_t k, int sign) {
    check_site(j);
    check_site(k);
    if (j == k) throw std::invalid_argument("w update needs distinct sites");
    BitVec ejk = e_.row_vec(j) ^ e_.row_vec(k);
    std::uint8_t delta = sign > 0 ? 1 : 3;
    omega_[j] = static_cast<std::uint8_t>((omega_[j] + delta) & 3);
    omega_[k] = static_cast<std::uint8_t>((omega_[k] + delta) & 3);
    f_.xor_row(j, ejk.words());
    f_.xor_row(k, ejk.words());
  }

  /// Tableau of U_C^dag: E' = G^T, G' = E^T, F' = E^T F G^T, and omega'
  /// recovered by demanding U_C^dag undo U_C on each c_i. Cubic in n.
  ControlTableau dagger() const {
    BitMatrix et = e_.transposed();
    BitMatrix gt = g_.transposed();
    ControlTableau d(n_);
    d.e_ = gt;
    d.g_ = et;
    d.f_ = multiply(et, multiply(f_, gt));
    for (std::size_t i = 0; i < n_; ++i) {
      MajoranaString row(0, d.f_.row_vec(i), d.g_.row_vec(i));
      MajoranaString gi = conjugate(row);
      MSTAB_CHECK(gi.z.none() && gi.x.popcount() == 1 && gi.x.get(i),
                  "tableau inverse: conjugated row is not proportional to c_i");
      d.omega_[i] = static_cast<std::uint8_t>((4 - gi.phase) & 3);
    }
    return d;
  }

  /// U_C^dag |s> = i^theta |t>, via the conjugated occupation string acting
  /// on the vacuum. O(|s| n) after the row lookups.
  BasisAction dagger_apply_to_basis(const BitVec& s) const {
    if (s.size() != n_) throw DimensionMismatch("state and tableau differ in size");
    MajoranaString gs = conjugate(MajoranaString(0, BitVec(n_), s));
    return apply_to_basis(gs, BitVec(n_));
  }

 private:
  void check_site(std::size_t j) const {
    if (j >= n_) throw std::out_of_range("site out of range");
  }

  std::size_t n_;
  std::vector<std::uint8_t> omega_;
  BitMatrix e_, f_, g_;
};

}  // namespace mstab
