#pragma once

#include <complex>
#include <vector>

#include "mstab/circuit.hpp"
#include "mstab/dense_oracle.hpp"
#include "mstab/state_io.hpp"

namespace mstab::testing {

using cplx = std::complex<double>;

inline BitVec random_bits(SplitMix64& rng, std::size_t n) {
  BitVec v(n);
  for (std::size_t i = 0; i < n; ++i) v.set(i, rng.coin());
  return v;
}

inline MajoranaString random_string(SplitMix64& rng, std::size_t n) {
  return {static_cast<unsigned>(rng.below(4)), random_bits(rng, n), random_bits(rng, n)};
}

inline bool approx_eq(cplx a, cplx b, double tol = 1e-10) { return std::abs(a - b) <= tol; }

/// True when the dense actions of ab and -ba agree on every basis state.
inline bool oracle_anticommute(const MajoranaString& a, const MajoranaString& b) {
  std::size_t n = a.sites();
  for (std::size_t idx = 0; idx < (std::size_t{1} << n); ++idx) {
    DenseState ab = DenseState::basis(DenseState::bits_of(idx, n));
    DenseState ba = ab;
    ab.apply_string(b);
    ab.apply_string(a);
    ba.apply_string(a);
    ba.apply_string(b);
    for (std::size_t i = 0; i < ab.dim(); ++i)
      if (!approx_eq(ab.amplitudes()[i], -ba.amplitudes()[i], 1e-12)) return false;
  }
  return true;
}

/// Dense companion for a ControlTableau built from right-multiplied gates.
/// Keeps the gate list so U_C and U_C^dag can be applied to dense states.
class DenseControl {
 public:
  explicit DenseControl(std::size_t n) : n_(n), tab(n) {}

  void right_mult_phase_gate(const BitVec& z, int vartheta) {
    tab.right_mult_phase_gate(z, vartheta);
    recs_.push_back({false, z, vartheta, {}, {}});
  }

  void right_mult_control(const MajoranaString& g1, const MajoranaString& g2) {
    tab.right_mult_control(g1, g2);
    recs_.push_back({true, {}, 0, g1, g2});
  }

  /// U_C |psi>: rightmost (most recently appended) factor acts first.
  void apply_UC(DenseState& st) const {
    for (auto it = recs_.rbegin(); it != recs_.rend(); ++it) apply_rec(st, *it, false);
  }

  /// U_C^dag |psi>: daggered factors in appended order.
  void apply_UC_dag(DenseState& st) const {
    for (const auto& r : recs_) apply_rec(st, r, true);
  }

  /// Dense evaluation of U_C^dag Gamma U_C acting on |s>.
  DenseState conjugated_action(const MajoranaString& g, const BitVec& s) const {
    DenseState st = DenseState::basis(s);
    apply_UC(st);
    st.apply_string(g);
    apply_UC_dag(st);
    return st;
  }

  ControlTableau tab;

 private:
  struct Rec {
    bool is_control;
    BitVec z;
    int vt;
    MajoranaString g1, g2;
  };

  void apply_rec(DenseState& st, const Rec& r, bool dag) const {
    if (!r.is_control) {
      // exp(-i (-1)^vt pi/4 (I - Gamma_p)) multiplies the eigenvalue-(-1)
      // sector of Gamma_p by -i(-1)^vt; the dagger flips vt.
      int vt = dag ? (r.vt ^ 1) : r.vt;
      cplx f = vt ? cplx{0, 1} : cplx{0, -1};
      auto& amps = st.amplitudes();
      for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        BitVec s = DenseState::bits_of(idx, n_);
        if (s.dot(r.z)) amps[idx] *= f;
      }
    } else {
      // The control gate is Hermitian and squares to I, so dag is a no-op.
      std::vector<cplx> out(st.dim(), cplx{0, 0});
      auto& amps = st.amplitudes();
      for (std::size_t idx = 0; idx < amps.size(); ++idx) {
        if (amps[idx] == cplx{0, 0}) continue;
        BitVec s = DenseState::bits_of(idx, n_);
        if (s.dot(r.g1.z)) {
          BasisAction act = apply_to_basis(r.g2, s);
          static constexpr cplx kI[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
          out[DenseState::index_of(act.t)] += kI[act.phase] * amps[idx];
        } else {
          out[idx] += amps[idx];
        }
      }
      amps = std::move(out);
    }
  }

  std::size_t n_;
  std::vector<Rec> recs_;
};

/// One random right-multiplication, mirrored on the dense companion.
inline void random_tableau_step(SplitMix64& rng, DenseControl& dc) {
  std::size_t n = dc.tab.sites();
  if (rng.coin()) {
    dc.right_mult_phase_gate(random_bits(rng, n), rng.coin() ? 1 : 0);
  } else {
    MajoranaString g2 = random_even_hermitian(rng, n);
    BitVec z1 = random_bits(rng, n);
    MajoranaString g1(0, z1, BitVec(n));
    if (anticommutes(g1, g2)) {
      g1.z.flip(static_cast<std::size_t>(g2.x.first_set()));
    }
    dc.right_mult_control(g1, g2);
  }
}

inline ControlTableau random_tableau(SplitMix64& rng, std::size_t n, std::size_t steps) {
  DenseControl dc(n);
  for (std::size_t i = 0; i < steps; ++i) random_tableau_step(rng, dc);
  return dc.tab;
}

/// Fast path and oracle driven by the same circuit.
struct DualState {
  StabilizerState fast;
  DenseState dense;
};

inline DualState run_both(const Circuit& c) {
  DualState d{StabilizerState(c.sites), DenseState::vacuum(c.sites)};
  apply_circuit(d.fast, c);
  apply_circuit(d.dense, c);
  return d;
}

/// Largest entrywise deviation between the fast-path amplitude vector and
/// the dense vector, global phase included.
inline double max_amp_deviation(const StabilizerState& fast, const DenseState& dense) {
  double worst = 0;
  for (std::size_t idx = 0; idx < dense.dim(); ++idx) {
    BitVec x = DenseState::bits_of(idx, fast.sites());
    worst = std::max(worst, std::abs(fast.amplitude(x).value() - dense.amplitudes()[idx]));
  }
  return worst;
}

}  // namespace mstab::testing
