#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mstab/dense_oracle.hpp"
#include "mstab/stabilizer_state.hpp"

namespace mstab {

// Gate set: the p-Clifford generators eta_j^±, W_jk^±, eta_jk, plus general
// quarter rotations and bare Majorana strings.
struct EtaPGate {
  std::size_t j;
  Sign sign;
  bool operator==(const EtaPGate&) const = default;
};
struct WGate {
  std::size_t j, k;
  Sign sign;
  bool operator==(const WGate&) const = default;
};
struct BraidGate {
  std::size_t j, k;
  bool operator==(const BraidGate&) const = default;
};
struct RotGate {
  MajoranaString gamma;
  Sign sign;  // minus: exp(-i pi/4 Gamma)
  bool operator==(const RotGate&) const = default;
};
struct OpGate {
  MajoranaString gamma;
  bool operator==(const OpGate&) const = default;
};

using GateSpec = std::variant<EtaPGate, WGate, BraidGate, RotGate, OpGate>;

struct Circuit {
  std::size_t sites = 0;
  std::vector<GateSpec> gates;
  bool operator==(const Circuit&) const = default;
};

inline void apply_gate(StabilizerState& st, const GateSpec& g) {
  std::visit(
      [&](const auto& gate) {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, EtaPGate>) {
          st.apply_eta_p(gate.j, gate.sign);
        } else if constexpr (std::is_same_v<T, WGate>) {
          st.apply_w(gate.j, gate.k, gate.sign);
        } else if constexpr (std::is_same_v<T, BraidGate>) {
          st.apply_braid_eta(gate.j, gate.k);
        } else if constexpr (std::is_same_v<T, RotGate>) {
          st.apply_rotation(gate.gamma, gate.sign);
        } else {
          st.apply_majorana(gate.gamma);
        }
      },
      g);
}

inline void apply_gate(DenseState& st, const GateSpec& g) {
  std::size_t n = st.sites();
  std::visit(
      [&](const auto& gate) {
        using T = std::decay_t<decltype(gate)>;
        if constexpr (std::is_same_v<T, EtaPGate>) {
          // eta_j^+ = exp(-i pi/4 p_j)
          st.apply_rotation(MajoranaString::p(n, gate.j),
                            gate.sign == Sign::plus ? Sign::minus : Sign::plus);
        } else if constexpr (std::is_same_v<T, WGate>) {
          MajoranaString pp =
              multiply(MajoranaString::p(n, gate.j), MajoranaString::p(n, gate.k));
          st.apply_rotation(pp, gate.sign == Sign::plus ? Sign::minus : Sign::plus);
        } else if constexpr (std::is_same_v<T, BraidGate>) {
          // eta_jk = exp(pi/4 c_j c_k) = exp(-i pi/4 (i c_j c_k))
          MajoranaString icc =
              multiply(MajoranaString::c(n, gate.j), MajoranaString::c(n, gate.k));
          icc.phase = static_cast<std::uint8_t>((icc.phase + 1) & 3);
          st.apply_rotation(icc, Sign::minus);
        } else if constexpr (std::is_same_v<T, RotGate>) {
          st.apply_rotation(gate.gamma, gate.sign);
        } else {
          st.apply_string(gate.gamma);
        }
      },
      g);
}

template <typename State>
inline void apply_circuit(State& st, const Circuit& c) {
  if (st.sites() != c.sites) throw DimensionMismatch("circuit and state differ in size");
  for (const GateSpec& g : c.gates) apply_gate(st, g);
}

// ---------------------------------------------------------------------------
// The .mst text format
//
//   # mst v1
//   n 4
//   eta+ 0            eta_0^+
//   w- 1 2            W_12^-
//   braid 0 3         eta_03
//   rot- i^3 c0 ct1   exp(-i pi/4 (-i c_0 ct_1)), i.e. the braiding gate B_0
//   op p2 c3          apply the bare string p_2 c_3
//
// '#' starts a comment; blank lines are ignored.
// ---------------------------------------------------------------------------

enum class CircuitErrorKind {
  bad_header,
  unknown_mnemonic,
  site_out_of_range,
  malformed_op_expr,
  invalid_rotation,
  malformed_line,
};

struct ParseError : std::runtime_error {
  ParseError(CircuitErrorKind k, std::size_t line, std::size_t column, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what),
        kind(k),
        line(line),
        column(column) {}
  CircuitErrorKind kind;
  std::size_t line;
  std::size_t column;
};

namespace detail {

inline std::vector<std::pair<std::string_view, std::size_t>> split_fields(std::string_view s) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    out.emplace_back(s.substr(i, j - i), i);
    i = j;
  }
  return out;
}

inline std::size_t parse_site(std::string_view tok, std::size_t n, std::size_t line,
                              std::size_t col) {
  std::size_t v = 0;
  if (tok.empty()) throw ParseError(CircuitErrorKind::malformed_line, line, col, "missing site");
  for (char ch : tok) {
    if (ch < '0' || ch > '9')
      throw ParseError(CircuitErrorKind::malformed_line, line, col,
                       "expected a site index, got '" + std::string(tok) + "'");
    v = v * 10 + static_cast<std::size_t>(ch - '0');
  }
  if (v >= n)
    throw ParseError(CircuitErrorKind::site_out_of_range, line, col,
                     "site index " + std::to_string(v) + " out of range for n=" +
                         std::to_string(n));
  return v;
}

}  // namespace detail

inline Circuit parse_circuit(std::string_view text) {
  Circuit c;
  bool have_n = false;
  std::size_t lineno = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, (eol == std::string_view::npos ? text.size() : eol) - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++lineno;
    if (auto h = line.find('#'); h != std::string_view::npos) line = line.substr(0, h);
    auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    auto [mnemonic, mcol] = fields[0];

    if (!have_n) {
      if (mnemonic != "n")
        throw ParseError(CircuitErrorKind::bad_header, lineno, mcol + 1,
                         "expected 'n <sites>' before any gate");
      if (fields.size() != 2)
        throw ParseError(CircuitErrorKind::malformed_line, lineno, mcol + 1,
                         "expected 'n <sites>'");
      std::size_t n = 0;
      for (char ch : fields[1].first) {
        if (ch < '0' || ch > '9')
          throw ParseError(CircuitErrorKind::bad_header, lineno, fields[1].second + 1,
                           "site count must be a number");
        n = n * 10 + static_cast<std::size_t>(ch - '0');
      }
      if (n == 0)
        throw ParseError(CircuitErrorKind::bad_header, lineno, fields[1].second + 1,
                         "site count must be positive");
      c.sites = n;
      have_n = true;
      continue;
    }

    auto expect_fields = [&](std::size_t want) {
      if (fields.size() != want)
        throw ParseError(CircuitErrorKind::malformed_line, lineno, mcol + 1,
                         "wrong number of arguments for '" + std::string(mnemonic) + "'");
    };
    auto op_expr_from = [&](std::size_t first_field) {
      std::size_t col = fields[first_field].second;
      std::string_view expr = line.substr(col);
      try {
        return parse_op_expr(expr, c.sites);
      } catch (const std::out_of_range& e) {
        throw ParseError(CircuitErrorKind::site_out_of_range, lineno, col + 1, e.what());
      } catch (const std::exception& e) {
        throw ParseError(CircuitErrorKind::malformed_op_expr, lineno, col + 1, e.what());
      }
    };

    if (mnemonic == "eta+" || mnemonic == "eta-") {
      expect_fields(2);
      std::size_t j = detail::parse_site(fields[1].first, c.sites, lineno, fields[1].second + 1);
      c.gates.push_back(EtaPGate{j, mnemonic[3] == '+' ? Sign::plus : Sign::minus});
    } else if (mnemonic == "w+" || mnemonic == "w-") {
      expect_fields(3);
      std::size_t j = detail::parse_site(fields[1].first, c.sites, lineno, fields[1].second + 1);
      std::size_t k = detail::parse_site(fields[2].first, c.sites, lineno, fields[2].second + 1);
      if (j == k)
        throw ParseError(CircuitErrorKind::malformed_line, lineno, fields[2].second + 1,
                         "w gate needs distinct sites");
      c.gates.push_back(WGate{j, k, mnemonic[1] == '+' ? Sign::plus : Sign::minus});
    } else if (mnemonic == "braid") {
      expect_fields(3);
      std::size_t j = detail::parse_site(fields[1].first, c.sites, lineno, fields[1].second + 1);
      std::size_t k = detail::parse_site(fields[2].first, c.sites, lineno, fields[2].second + 1);
      if (j == k)
        throw ParseError(CircuitErrorKind::malformed_line, lineno, fields[2].second + 1,
                         "braid gate needs distinct sites");
      c.gates.push_back(BraidGate{j, k});
    } else if (mnemonic == "rot+" || mnemonic == "rot-") {
      if (fields.size() < 2)
        throw ParseError(CircuitErrorKind::malformed_line, lineno, mcol + 1,
                         "rot needs an operator expression");
      MajoranaString g = op_expr_from(1);
      if (!is_hermitian(g) || g.parity() != 0)
        throw ParseError(CircuitErrorKind::invalid_rotation, lineno, fields[1].second + 1,
                         "rotation operator must be Hermitian and even-parity");
      c.gates.push_back(RotGate{std::move(g), mnemonic[3] == '+' ? Sign::plus : Sign::minus});
    } else if (mnemonic == "op") {
      if (fields.size() < 2)
        throw ParseError(CircuitErrorKind::malformed_line, lineno, mcol + 1,
                         "op needs an operator expression");
      c.gates.push_back(OpGate{op_expr_from(1)});
    } else {
      throw ParseError(CircuitErrorKind::unknown_mnemonic, lineno, mcol + 1,
                       "unknown gate mnemonic '" + std::string(mnemonic) + "'");
    }
  }
  if (!have_n) throw ParseError(CircuitErrorKind::bad_header, 1, 1, "missing 'n <sites>' line");
  return c;
}

inline std::string serialize_circuit(const Circuit& c) {
  std::string out = "# mst v1\nn " + std::to_string(c.sites) + "\n";
  for (const GateSpec& g : c.gates) {
    std::visit(
        [&](const auto& gate) {
          using T = std::decay_t<decltype(gate)>;
          if constexpr (std::is_same_v<T, EtaPGate>) {
            out += gate.sign == Sign::plus ? "eta+ " : "eta- ";
            out += std::to_string(gate.j);
          } else if constexpr (std::is_same_v<T, WGate>) {
            out += gate.sign == Sign::plus ? "w+ " : "w- ";
            out += std::to_string(gate.j) + " " + std::to_string(gate.k);
          } else if constexpr (std::is_same_v<T, BraidGate>) {
            out += "braid " + std::to_string(gate.j) + " " + std::to_string(gate.k);
          } else if constexpr (std::is_same_v<T, RotGate>) {
            out += gate.sign == Sign::plus ? "rot+ " : "rot- ";
            out += format_op_expr(gate.gamma);
          } else {
            out += "op " + format_op_expr(gate.gamma);
          }
          out += '\n';
        },
        g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Seeded random circuits for differential testing.
// ---------------------------------------------------------------------------

struct GateWeights {
  double eta = 1, w = 1, braid = 1, rot = 1, op = 1;
};

/// Small deterministic generator (splitmix64) so circuits are reproducible
/// across standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : s_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  std::size_t below(std::size_t bound) { return static_cast<std::size_t>(next() % bound); }
  bool coin() { return next() & 1; }
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t s_;
};

inline MajoranaString random_even_hermitian(SplitMix64& rng, std::size_t n) {
  BitVec z(n), x(n);
  for (std::size_t k = 0; k < n; ++k) {
    z.set(k, rng.coin());
    x.set(k, rng.coin());
  }
  if (x.parity()) x.flip(rng.below(n));
  unsigned base = static_cast<unsigned>(z.dot(x) ^ x.dot(x.prefix_parity()));
  unsigned phi = base + (rng.coin() ? 2u : 0u);
  return {phi, std::move(z), std::move(x)};
}

inline MajoranaString random_op_string(SplitMix64& rng, std::size_t n) {
  auto one = [&]() {
    std::size_t k = rng.below(n);
    return rng.coin() ? MajoranaString::c(n, k) : MajoranaString::c_tilde(n, k);
  };
  MajoranaString g = one();
  if (rng.coin()) g = multiply(g, one());
  return g;
}

inline Circuit random_circuit(std::size_t n, std::size_t depth, std::uint64_t seed,
                              const GateWeights& weights = {}) {
  if (n < 2) throw std::invalid_argument("random circuits need at least two sites");
  const double wsum = weights.eta + weights.w + weights.braid + weights.rot + weights.op;
  if (weights.eta < 0 || weights.w < 0 || weights.braid < 0 || weights.rot < 0 ||
      weights.op < 0 || wsum <= 0)
    throw std::invalid_argument("invalid gate weights");

  SplitMix64 rng(seed);
  Circuit c;
  c.sites = n;
  c.gates.reserve(depth);
  auto site_pair = [&]() {
    std::size_t j = rng.below(n);
    std::size_t k = rng.below(n - 1);
    if (k >= j) ++k;
    return std::pair{j, k};
  };
  for (std::size_t i = 0; i < depth; ++i) {
    double r = rng.unit() * wsum;
    if ((r -= weights.eta) < 0) {
      c.gates.push_back(EtaPGate{rng.below(n), rng.coin() ? Sign::plus : Sign::minus});
    } else if ((r -= weights.w) < 0) {
      auto [j, k] = site_pair();
      c.gates.push_back(WGate{j, k, rng.coin() ? Sign::plus : Sign::minus});
    } else if ((r -= weights.braid) < 0) {
      auto [j, k] = site_pair();
      c.gates.push_back(BraidGate{j, k});
    } else if ((r -= weights.rot) < 0) {
      c.gates.push_back(
          RotGate{random_even_hermitian(rng, n), rng.coin() ? Sign::plus : Sign::minus});
    } else {
      c.gates.push_back(OpGate{random_op_string(rng, n)});
    }
  }
  return c;
}

}  // namespace mstab
