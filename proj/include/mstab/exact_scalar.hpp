#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>

namespace mstab {

/// Scalars produced by stabilizer-state queries are either zero or of the
/// form 2^{-m/2} * e^{i pi k / 4}. Keeping them in that form makes equality
/// exact; conversion to floating point happens only at the interface.
struct ExactScalar {
  bool nonzero = false;
  std::uint8_t phase8 = 0;   // k, power of e^{i pi/4}, mod 8
  std::uint32_t root2 = 0;   // m, power of 2^{-1/2}

  static ExactScalar zero() { return {}; }
  static ExactScalar unit(unsigned k) { return {true, static_cast<std::uint8_t>(k & 7), 0}; }
  static ExactScalar make(unsigned k, std::uint32_t m) {
    return {true, static_cast<std::uint8_t>(k & 7), m};
  }

  bool is_zero() const { return !nonzero; }

  ExactScalar conj() const {
    if (!nonzero) return {};
    return {true, static_cast<std::uint8_t>((8 - phase8) & 7), root2};
  }

  ExactScalar times_phase8(unsigned k) const {
    if (!nonzero) return {};
    return {true, static_cast<std::uint8_t>((phase8 + k) & 7), root2};
  }

  std::complex<double> value() const {
    if (!nonzero) return {0.0, 0.0};
    static constexpr double r = 0.7071067811865475244;  // 1/sqrt(2)
    static constexpr double re[8] = {1, r, 0, -r, -1, -r, 0, r};
    static constexpr double im[8] = {0, r, 1, r, 0, -r, -1, -r};
    double mag = std::pow(2.0, -0.5 * static_cast<double>(root2));
    return {mag * re[phase8], mag * im[phase8]};
  }

  /// Renders e.g. "2^{-1/2} * e^{i*6*pi/4}"; "1" for the trivial scalar.
  std::string exact_str() const {
    if (!nonzero) return "0";
    std::string mag = root2 ? "2^{-" + std::to_string(root2) + "/2}" : "";
    std::string ph = phase8 ? "e^{i*" + std::to_string(phase8) + "*pi/4}" : "";
    if (mag.empty() && ph.empty()) return "1";
    if (mag.empty()) return ph;
    if (ph.empty()) return mag;
    return mag + " * " + ph;
  }

  bool operator==(const ExactScalar&) const = default;
};

}  // namespace mstab
