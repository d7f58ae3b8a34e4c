#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace mstab {

using word_t = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t bits) {
  return (bits + kWordBits - 1) / kWordBits;
}

/// Gate superscript. For the quarter rotations the sign convention is
///   eta_j^+      = exp(-i pi/4 p_j)        (plus),
///   rotation(-)  = exp(-i pi/4 Gamma)      (minus),
/// so eta_p(j, plus) and rotation(p_j, minus) are the same operator.
enum class Sign : int { plus = 1, minus = -1 };

/// Thrown when two objects that must share a site count do not.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a representation invariant is violated. Reaching this means a
/// bug or a corrupt input, never a user mistake.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

#define MSTAB_CHECK(cond, msg)                 \
  do {                                         \
    if (!(cond)) throw ::mstab::InternalError(msg); \
  } while (0)

// Word-level GF(2) kernels. Callers keep tail bits beyond the logical length
// zeroed so popcounts and dot products stay exact.
namespace gf2 {

inline void xor_into(word_t* dst, const word_t* src, std::size_t nw) {
  for (std::size_t i = 0; i < nw; ++i) dst[i] ^= src[i];
}

inline int dot(const word_t* a, const word_t* b, std::size_t nw) {
  int p = 0;
  for (std::size_t i = 0; i < nw; ++i) p ^= std::popcount(a[i] & b[i]) & 1;
  return p;
}

inline std::size_t popcount(const word_t* a, std::size_t nw) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < nw; ++i) c += std::popcount(a[i]);
  return c;
}

inline int parity(const word_t* a, std::size_t nw) {
  word_t acc = 0;
  for (std::size_t i = 0; i < nw; ++i) acc ^= a[i];
  return std::popcount(acc) & 1;
}

// Inclusive prefix parity: bit k of dst becomes XOR of src bits 0..k.
inline void prefix_parity(const word_t* src, word_t* dst, std::size_t nw) {
  word_t carry = 0;
  for (std::size_t i = 0; i < nw; ++i) {
    word_t w = src[i];
    w ^= w << 1;
    w ^= w << 2;
    w ^= w << 4;
    w ^= w << 8;
    w ^= w << 16;
    w ^= w << 32;
    w ^= carry;
    dst[i] = w;
    carry = static_cast<word_t>(0) - (w >> (kWordBits - 1));
  }
}

}  // namespace gf2
}  // namespace mstab
