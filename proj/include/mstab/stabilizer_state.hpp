#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "mstab/control_tableau.hpp"
#include "mstab/exact_scalar.hpp"

namespace mstab {

/// U_B^dag Gamma U_B for the braid layer U_B = prod_k B_k^{b_k},
/// B_k = exp(-pi/4 c_k ct_{k+1}). Every braid that fails to commute with
/// Gamma contributes a left factor c_k ct_{k+1}; dag reverses the direction
/// and gives U_B Gamma U_B^dag. O(n).
inline MajoranaString conjugate_by_braids(const BitVec& b, const MajoranaString& g,
                                          bool dag = false) {
  std::size_t n = b.size();
  if (g.sites() != n) throw DimensionMismatch("operator and braid layer differ in size");
  if (n > 0 && b.get(n - 1))
    throw std::invalid_argument("the last braid exponent must stay zero");
  BitVec beta = b & (g.x ^ g.z ^ g.z.shifted_down());
  if (beta.none()) return g;
  std::size_t nb = beta.popcount();
  BitVec up = beta.shifted_up();
  unsigned phase = dag ? (nb & 3) : ((4 - (nb & 3)) & 3);
  return multiply(MajoranaString(phase, up, beta ^ up), g);
}

inline MajoranaString conjugate_by_braids_dag(const BitVec& b, const MajoranaString& g) {
  return conjugate_by_braids(b, g, true);
}

/// Phase-sensitive Majorana stabilizer state
///
///     |psi> = e^{i pi phi / 4} U_C U_B |s>
///
/// with U_C a control-type Clifford held as a ControlTableau, U_B a product
/// of braiding operators selected by the bits of b (b_{n-1} stays zero), and
/// s a computational basis label. The global phase is tracked exactly, so
/// amplitudes, expectation values and inner products come out as exact
/// eighth-root-of-unity multiples of powers of 2^{-1/2}.
class StabilizerState {
 public:
  explicit StabilizerState(std::size_t n) : phi_(0), tab_(n), b_(n), s_(n) {}

  static StabilizerState basis_state(const BitVec& s) {
    StabilizerState st(s.size());
    st.s_ = s;
    return st;
  }

  static StabilizerState from_parts(unsigned phi, ControlTableau tab, BitVec b, BitVec s) {
    std::size_t n = tab.sites();
    if (b.size() != n || s.size() != n) throw DimensionMismatch("state parts disagree on size");
    if (b.get(n - 1)) throw std::invalid_argument("the last braid exponent must be zero");
    StabilizerState st(n);
    st.phi_ = static_cast<std::uint8_t>(phi & 7);
    st.tab_ = std::move(tab);
    st.b_ = std::move(b);
    st.s_ = std::move(s);
    return st;
  }

  std::size_t sites() const { return s_.size(); }
  std::uint8_t phi() const { return phi_; }
  const ControlTableau& tableau() const { return tab_; }
  const BitVec& braids() const { return b_; }
  const BitVec& label() const { return s_; }

  bool operator==(const StabilizerState&) const = default;

  /// Gamma |psi>, exactly, for any Majorana string (odd parity included).
  /// Only the phase and the basis label change.
  void apply_majorana(const MajoranaString& g) {
    MajoranaString gp = conjugate_by_braids(b_, tab_.conjugate(g));
    unsigned sign = basis_sign(gp);
    add_phi(2u * gp.phase + 4u * sign);
    s_ ^= gp.x;
  }

  /// eta_j^sign = exp(-sign * i pi/4 p_j). O(n).
  void apply_eta_p(std::size_t j, Sign sign) {
    if (j >= sites()) throw std::out_of_range("site out of range");
    add_phi(sign == Sign::plus ? 7 : 1);
    tab_.left_mult_eta(j, sign == Sign::plus ? 1 : -1);
  }

  /// W_jk^sign = exp(-sign * i pi/4 p_j p_k). O(n).
  void apply_w(std::size_t j, std::size_t k, Sign sign) {
    if (j >= sites() || k >= sites()) throw std::out_of_range("site out of range");
    if (j == k) throw std::invalid_argument("w gate needs distinct sites");
    add_phi(sign == Sign::plus ? 7 : 1);
    tab_.left_mult_w(j, k, sign == Sign::plus ? 1 : -1);
  }

  /// eta_jk = exp(pi/4 c_j c_k). O(n^2).
  void apply_braid_eta(std::size_t j, std::size_t k) {
    if (j >= sites() || k >= sites()) throw std::out_of_range("site out of range");
    if (j == k) throw std::invalid_argument("braid gate needs distinct sites");
    MajoranaString cc = multiply(MajoranaString::c(sites(), j), MajoranaString::c(sites(), k));
    apply_half_turn(conjugate_by_braids(b_, tab_.conjugate(cc)));
  }

  /// exp(-sign * i pi/4 Gamma) for Hermitian, even-parity Gamma. O(n^2).
  void apply_rotation(const MajoranaString& g, Sign sign) {
    if (g.sites() != sites()) throw DimensionMismatch("operator and state differ in size");
    if (!is_hermitian(g)) throw std::invalid_argument("rotation operator must be Hermitian");
    if (g.parity() != 0) throw std::invalid_argument("rotation operator must have even parity");
    MajoranaString gp = conjugate_by_braids(b_, tab_.conjugate(g));
    gp.phase = static_cast<std::uint8_t>((gp.phase + (sign == Sign::minus ? 3 : 1)) & 3);
    apply_half_turn(std::move(gp));
  }

  /// <psi| Gamma |psi> = i^{phi'} (-1)^{z'.s} if the conjugated string is
  /// diagonal, zero otherwise. O(n^2), dominated by the conjugation.
  ExactScalar expectation(const MajoranaString& g) const {
    MajoranaString gp = conjugate_by_braids(b_, tab_.conjugate(g));
    if (!gp.x.none()) return ExactScalar::zero();
    return ExactScalar::unit(2u * gp.phase + 4u * static_cast<unsigned>(gp.z.dot(s_)));
  }

  /// <x|psi>. Writes <x| as <0| times an occupation string, pushes that
  /// string through the state, then evaluates the closed-form vacuum overlap.
  /// O((|x|+1) n).
  ExactScalar amplitude(const BitVec& x) const {
    if (x.size() != sites()) throw DimensionMismatch("bit string and state differ in size");
    MajoranaString bra(2u * ((x.popcount() / 2) & 1), BitVec(sites()), x);
    MajoranaString gp = conjugate_by_braids(b_, tab_.conjugate(bra));
    unsigned phi = (phi_ + 2u * gp.phase + 4u * basis_sign(gp)) & 7;
    BitVec t = s_ ^ gp.x;
    if (t.parity()) return ExactScalar::zero();
    BitVec tbar = t.prefix_parity();
    if (!tbar.is_subset_of(b_)) return ExactScalar::zero();
    unsigned k = phi + 2u * static_cast<unsigned>((tbar.popcount() + t.popcount()) & 3);
    return ExactScalar::make(k, static_cast<std::uint32_t>(b_.popcount()));
  }

  /// Cheap structural checks plus (optionally) the tableau identities.
  void check_invariants(bool with_tableau = true) const {
    MSTAB_CHECK(!b_.get(sites() - 1), "last braid exponent must be zero");
    if (with_tableau)
      MSTAB_CHECK(tab_.verify_identities(), "tableau identities violated");
  }

 private:
  void add_phi(unsigned d) { phi_ = static_cast<std::uint8_t>((phi_ + d) & 7); }

  unsigned basis_sign(const MajoranaString& gp) const {
    return static_cast<unsigned>((s_ ^ gp.x).dot(gp.z) ^ s_.dot(gp.x.prefix_parity()) ^
                                 (gp.x.parity() & s_.parity()));
  }

  /// Merges (1 + Gamma)/sqrt(2) |s> back into canonical form, where Gamma is
  /// already conjugated into the frame behind U_C U_B and squares to -I.
  /// The branch pair is first compressed so the two labels differ at two
  /// neighboring sites, then absorbed into the braid layer.
  void apply_half_turn(MajoranaString gamma) {
    const std::size_t n = sites();
    MSTAB_CHECK(gamma.parity() == 0, "branch operator must have even parity");
    BasisAction act = apply_to_basis(gamma, s_);
    unsigned theta = act.phase;
    if (act.t == s_) {
      // Diagonal branch: (1 + i^theta)/sqrt(2) must be a pure phase.
      MSTAB_CHECK(theta & 1, "branch operator must square to -I");
      add_phi(theta == 1 ? 1 : 7);
      return;
    }
    BitVec t = std::move(act.t);
    BitVec x = s_ ^ t;
    std::size_t w = 0;

    // Scan the segments delimited by zeros of b for one where s and t
    // differ an odd number of times.
    bool odd_segment = false;
    std::size_t seg_first = 0, seg_last = 0, zeros_before = 0;
    int xpar = 0, spar = 0;
    std::ptrdiff_t prev_zero = -1;
    for (std::size_t i = 0; i < n; ++i) {
      xpar ^= x.get(i);
      spar ^= s_.get(i);
      if (!b_.get(i)) {
        if (xpar) {
          odd_segment = true;
          seg_first = static_cast<std::size_t>(prev_zero + 1);
          seg_last = i;
          break;
        }
        prev_zero = static_cast<std::ptrdiff_t>(i);
        ++zeros_before;
        xpar = spar = 0;
      }
    }

    if (odd_segment) {
      // The p-string over this segment commutes with every braid and splits
      // the two branches. Swap them first if it fixes t rather than s.
      if (spar) {
        add_phi(2 * theta);
        theta = (4 - theta) & 3;
        std::swap(s_, t);
      }
      w = (zeros_before == 0) ? seg_last : static_cast<std::size_t>(prev_zero);
      BitVec x2 = x;
      x2.flip(w);
      x2.flip(w + 1);
      if (!x2.none()) {
        BitVec z1(n);
        z1.xor_range(seg_first, seg_last + 1);
        MajoranaString g2((x2.popcount() / 2) & 3, BitVec(n), x2);
        tab_.right_mult_control(MajoranaString(0, z1, BitVec(n)),
                                conjugate_by_braids_dag(b_, g2));
        BasisAction a2 = apply_to_basis(g2, t);
        theta = (theta + a2.phase) & 3;
        t = std::move(a2.t);
      }
    } else {
      // Every segment is even, so b is solid 1s across the difference
      // pattern. Flip with a product of braid-transparent two-site movers.
      w = static_cast<std::size_t>(x.first_set());
      MajoranaString g1 = lambda_product(x);
      if (!g1.is_identity()) {
        MajoranaString g1p = conjugate_by_braids_dag(b_, g1);
        MSTAB_CHECK(g1p.is_p_type() && g1p.phase == 0,
                    "case-2 mover must braid-transform to a pure p-string");
        MajoranaString g2(s_.get(w) ? 2u : 0u, BitVec::unit(n, w), BitVec(n));
        tab_.right_mult_control(g1p, conjugate_by_braids_dag(b_, g2));
        BasisAction a1 = apply_to_basis(g1, t);
        theta = (theta + a1.phase) & 3;
        t = std::move(a1.t);
      }
    }

    MSTAB_CHECK(w + 1 < n, "merge site w must satisfy w < n-1");
    {
      BitVec diff = s_ ^ t;
      MSTAB_CHECK(diff.popcount() == 2 && diff.get(w) && diff.get(w + 1),
                  "branches must differ exactly at sites w, w+1");
    }
    merge_branch(w, theta);
  }

  /// Absorbs (|s> + i^theta |s + e_w + e_{w+1}>)/sqrt(2) into the braid
  /// layer at position w.
  void merge_branch(std::size_t w, unsigned theta) {
    bool bw = b_.get(w);
    unsigned sww = static_cast<unsigned>(s_.get(w)) ^ static_cast<unsigned>(s_.get(w + 1));
    if ((theta & 1) == 0) {
      unsigned k = (theta >> 1) & 1;
      if (bw) {
        // B_w acts on an even-theta branch pair as a pure eigenphase;
        // extract it and consume the braid.
        add_phi(((sww ^ k) & 1) ? 1 : 7);
        b_.set(w, false);
        bw = false;
      }
      // Raise theta by a diagonal quarter rotation transparent to the
      // remaining braids, compensating U_C from the right.
      int vt = s_.parity() ^ s_.prefix_parity().get(w);
      if (vt) add_phi(6);
      BitVec ztail(sites());
      ztail.xor_range(w + 1, sites());
      tab_.right_mult_phase_gate(ztail, vt);
      theta = (theta + 1) & 3;
    }
    unsigned k = (theta >> 1) & 1;  // theta = 2k + 1
    if (((sww + k + (bw ? 1u : 0u)) & 1) == 0) {
      add_phi(2 * theta);
      s_.flip(w);
      s_.flip(w + 1);
    }
    b_.set(w, !bw);
    MSTAB_CHECK(!b_.get(sites() - 1), "last braid exponent must remain zero");
  }

  /// Case-2 mover: a product of two-site ladder operators, one per pair of
  /// difference sites (the first pair shortened by one), assembled directly
  /// in canonical form. Each odd-length factor trails a solid run of p's,
  /// accumulated as XOR stripes between consecutive factor ends. O(n).
  MajoranaString lambda_product(const BitVec& x) const {
    const std::size_t n = sites();
    std::vector<std::size_t> m;
    m.reserve(x.popcount());
    x.for_each_set([&](std::size_t i) { m.push_back(i); });
    MSTAB_CHECK(m.size() % 2 == 0, "difference pattern must have even support");
    BitVec z(n), xg(n);
    unsigned phase = 0;
    int tail_par = 0;
    std::size_t prev_end = 0;
    bool have_prev = false;
    for (std::size_t pi = 0; pi < m.size(); pi += 2) {
      std::size_t a = (pi == 0) ? m[0] + 1 : m[pi];
      std::size_t e = m[pi + 1];
      if (a == e) continue;  // the first factor may be empty
      if (have_prev && tail_par) z.xor_range(prev_end + 1, e + 1);
      for (std::size_t i = a + 2; i <= e; i += 2) z.flip(i);
      xg.set(a, true);
      xg.set(e, true);
      phase += static_cast<unsigned>(e - a);
      tail_par ^= static_cast<int>((e - a) & 1);
      prev_end = e;
      have_prev = true;
    }
    if (have_prev && tail_par && prev_end + 1 < n) z.xor_range(prev_end + 1, n);
    return {phase & 3, std::move(z), std::move(xg)};
  }

  std::uint8_t phi_;  // mod 8
  ControlTableau tab_;
  BitVec b_, s_;
};

/// <bra|ket>, exact. The bra is unfolded through the inverse of its own
/// control tableau, its braids become rotations on the ket, and the residue
/// is a single amplitude. O(n^3) worst case; when the ket carries fewer
/// braids than the bra the conjugate direction is computed instead.
inline ExactScalar inner_product(const StabilizerState& bra, const StabilizerState& ket) {
  if (bra.sites() != ket.sites()) throw DimensionMismatch("states differ in site count");
  if (ket.braids().popcount() < bra.braids().popcount())
    return inner_product(ket, bra).conj();
  const std::size_t n = bra.sites();
  ControlTableau inv = bra.tableau().dagger();
  StabilizerState psi = ket;
  bra.braids().for_each_set([&](std::size_t j) {
    MajoranaString icc =
        multiply(MajoranaString::c(n, j), MajoranaString::c_tilde(n, j + 1));
    icc.phase = static_cast<std::uint8_t>((icc.phase + 1) & 3);  // i c_j ct_{j+1}
    psi.apply_rotation(inv.conjugate(icc), Sign::minus);
  });
  BasisAction act = inv.dagger_apply_to_basis(bra.label());  // U_C' |s'> = i^theta |t>
  ExactScalar amp = psi.amplitude(act.t);
  if (amp.is_zero()) return amp;
  return amp.times_phase8(16u - bra.phi() - 2u * act.phase);
}

}  // namespace mstab
