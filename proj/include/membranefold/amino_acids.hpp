#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "membranefold/errors.hpp"

namespace membranefold {

inline constexpr int kResidueTypes = 20;

enum class Residue : std::uint8_t { A, C, D, E, F, G, H, I, K, L, M, N, P, Q, R, S, T, V, W, Y };

enum class ResidueClass { Charged, Polar, Nonpolar, Aromatic };

namespace detail {

struct ResidueInfo {
  char code;
  const char* name;
  double hydrophobicity;
  ResidueClass residue_class;
};

// Fauchere-Pliska octanol/water hydrophobicity scale.
inline constexpr std::array<ResidueInfo, kResidueTypes> kResidueInfo{{
    {'A', "ALA", 0.31, ResidueClass::Nonpolar},
    {'C', "CYS", 1.54, ResidueClass::Polar},
    {'D', "ASP", -0.77, ResidueClass::Charged},
    {'E', "GLU", -0.64, ResidueClass::Charged},
    {'F', "PHE", 1.79, ResidueClass::Aromatic},
    {'G', "GLY", 0.00, ResidueClass::Nonpolar},
    {'H', "HIS", 0.13, ResidueClass::Charged},
    {'I', "ILE", 1.80, ResidueClass::Nonpolar},
    {'K', "LYS", -0.99, ResidueClass::Charged},
    {'L', "LEU", 1.70, ResidueClass::Nonpolar},
    {'M', "MET", 1.23, ResidueClass::Nonpolar},
    {'N', "ASN", -0.60, ResidueClass::Polar},
    {'P', "PRO", 0.72, ResidueClass::Nonpolar},
    {'Q', "GLN", -0.22, ResidueClass::Polar},
    {'R', "ARG", -1.01, ResidueClass::Charged},
    {'S', "SER", 0.26, ResidueClass::Polar},
    {'T', "THR", -0.04, ResidueClass::Polar},
    {'V', "VAL", 1.22, ResidueClass::Nonpolar},
    {'W', "TRP", 2.25, ResidueClass::Aromatic},
    {'Y', "TYR", 0.96, ResidueClass::Aromatic},
}};

inline const ResidueInfo& info(Residue r) { return kResidueInfo[static_cast<std::size_t>(r)]; }

}  // namespace detail

inline constexpr std::array<Residue, kResidueTypes> kAllResidues{
    Residue::A, Residue::C, Residue::D, Residue::E, Residue::F, Residue::G, Residue::H,
    Residue::I, Residue::K, Residue::L, Residue::M, Residue::N, Residue::P, Residue::Q,
    Residue::R, Residue::S, Residue::T, Residue::V, Residue::W, Residue::Y};

inline std::size_t index_of(Residue r) { return static_cast<std::size_t>(r); }
inline char code_of(Residue r) { return detail::info(r).code; }
inline std::string_view three_letter_name(Residue r) { return detail::info(r).name; }
inline double hydrophobicity(Residue r) { return detail::info(r).hydrophobicity; }
inline ResidueClass residue_class(Residue r) { return detail::info(r).residue_class; }

inline Residue residue_from_code(char code) {
  for (std::size_t i = 0; i < detail::kResidueInfo.size(); ++i) {
    if (detail::kResidueInfo[i].code == code) return static_cast<Residue>(i);
  }
  throw LookupError(std::string("unknown residue code '") + code + "'");
}

using ResidueSequence = std::vector<Residue>;

/// Parses one-letter codes. Throws ValidationError naming the bad position.
inline ResidueSequence parse_sequence(std::string_view letters) {
  ResidueSequence seq;
  seq.reserve(letters.size());
  for (std::size_t i = 0; i < letters.size(); ++i) {
    try {
      seq.push_back(residue_from_code(letters[i]));
    } catch (const LookupError&) {
      throw ValidationError("sequence", std::string("invalid residue letter '") + letters[i] +
                                            "' at position " + std::to_string(i + 1));
    }
  }
  return seq;
}

inline std::string to_string(const ResidueSequence& seq) {
  std::string out;
  for (auto r : seq) out.push_back(code_of(r));
  return out;
}

}  // namespace membranefold
