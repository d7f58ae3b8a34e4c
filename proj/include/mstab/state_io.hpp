#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "mstab/stabilizer_state.hpp"

namespace mstab {

/// Versioned state dump:
///
/// {
///   "format": "mstab-state", "version": 1,
///   "n": 2, "phi": 0,
///   "omega": [0, 3],
///   "E": ["10", "01"], "F": ["00", "01"], "G": ["10", "01"],
///   "b": "10", "s": "00"
/// }
///
/// Matrix rows are bit strings with column 0 leftmost. Serialization is
/// canonical: dump -> load -> dump reproduces the bytes exactly.

inline constexpr int kStateFormatVersion = 1;

inline nlohmann::ordered_json to_json(const StabilizerState& st) {
  const std::size_t n = st.sites();
  nlohmann::ordered_json j;
  j["format"] = "mstab-state";
  j["version"] = kStateFormatVersion;
  j["n"] = n;
  j["phi"] = static_cast<int>(st.phi());
  j["omega"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < n; ++i) j["omega"].push_back(static_cast<int>(st.tableau().omega(i)));
  auto rows = [&](const BitMatrix& m) {
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) a.push_back(m.row_vec(i).str());
    return a;
  };
  j["E"] = rows(st.tableau().e());
  j["F"] = rows(st.tableau().f());
  j["G"] = rows(st.tableau().g());
  j["b"] = st.braids().str();
  j["s"] = st.label().str();
  return j;
}

inline std::string dump_state(const StabilizerState& st) { return to_json(st).dump(2) + "\n"; }

inline StabilizerState load_state(std::string_view text) {
  nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_object() || j.value("format", "") != "mstab-state")
    throw std::invalid_argument("not an mstab state dump");
  if (j.value("version", -1) != kStateFormatVersion)
    throw std::invalid_argument("unsupported state dump version");
  std::size_t n = j.at("n").get<std::size_t>();
  if (n == 0) throw std::invalid_argument("site count must be positive");

  std::vector<std::uint8_t> omega;
  for (const auto& v : j.at("omega")) {
    int w = v.get<int>();
    if (w < 0 || w > 3) throw std::invalid_argument("omega entries must be in 0..3");
    omega.push_back(static_cast<std::uint8_t>(w));
  }
  if (omega.size() != n) throw std::invalid_argument("omega length mismatch");

  auto matrix = [&](const char* key) {
    const auto& a = j.at(key);
    if (!a.is_array() || a.size() != n)
      throw std::invalid_argument(std::string(key) + " must hold n rows");
    BitMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
      BitVec row = BitVec::from_string(a[i].get<std::string>());
      if (row.size() != n) throw std::invalid_argument(std::string(key) + " row length mismatch");
      m.set_row(i, row);
    }
    return m;
  };
  BitMatrix e = matrix("E"), f = matrix("F"), g = matrix("G");

  BitVec b = BitVec::from_string(j.at("b").get<std::string>());
  BitVec s = BitVec::from_string(j.at("s").get<std::string>());
  if (b.size() != n || s.size() != n) throw std::invalid_argument("b or s length mismatch");

  ControlTableau tab = ControlTableau::from_parts(std::move(omega), std::move(e), std::move(f),
                                                  std::move(g));
  if (!tab.verify_identities())
    throw std::invalid_argument("state dump violates the tableau identities");
  int phi = j.at("phi").get<int>();
  if (phi < 0 || phi > 7) throw std::invalid_argument("phi must be in 0..7");
  return StabilizerState::from_parts(static_cast<unsigned>(phi), std::move(tab), std::move(b),
                                     std::move(s));
}

}  // namespace mstab
