#pragma once

// Tetrahedral (diamond) lattice geometry for a single-bead-per-residue chain.
//
// A conformation of N beads is the turn list t_1 ... t_{N-1}, each turn a code
// in {0,1,2,3} naming one of the four tetrahedral axes. Turns with odd k start
// on sublattice B and are taken with a negative sign; turns with even k start
// on sublattice A and are taken with a positive sign. Every geometric quantity
// below follows from that (-1)^k convention.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "membranefold/errors.hpp"

namespace membranefold {

inline constexpr int kAxisCount = 4;

/// One qubit value per entry; entry q is qubit q.
using BitVector = std::vector<std::uint8_t>;

inline BitVector parse_bits(std::string_view text) {
  BitVector bits;
  bits.reserve(text.size());
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw ValidationError("bits", std::string("unexpected character '") + c + "'");
    }
    bits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return bits;
}

inline std::string to_string(std::span<const std::uint8_t> bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out.push_back(b ? '1' : '0');
  return out;
}

// Basis-state index <-> bit vector. Qubit q is bit q of the index.
inline BitVector bits_from_index(std::uint64_t index, int n) {
  BitVector bits(static_cast<std::size_t>(n));
  for (int q = 0; q < n; ++q) bits[q] = static_cast<std::uint8_t>((index >> q) & 1u);
  return bits;
}

inline std::uint64_t index_from_bits(std::span<const std::uint8_t> bits) {
  std::uint64_t index = 0;
  for (std::size_t q = 0; q < bits.size(); ++q) {
    if (bits[q]) index |= (std::uint64_t{1} << q);
  }
  return index;
}

enum class Orientation : int { Positive = 1, Negative = -1 };

/// Decoded chain turns, stored 1-indexed through at().
struct TurnSequence {
  std::vector<int> turns;

  int residues() const { return static_cast<int>(turns.size()) + 1; }
  int at(int k) const { return turns[static_cast<std::size_t>(k - 1)]; }

  friend bool operator==(const TurnSequence&, const TurnSequence&) = default;
};

/// Signed step counts along each tetrahedral axis between two beads.
using LatticeVector = std::array<int, kAxisCount>;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline double norm_sq(const Vec3& v) { return v.x * v.x + v.y * v.y + v.z * v.z; }

/// Free conformation qubits for N beads. t_1, t_2 and the high bit of t_3 are
/// fixed, so N >= 4 leaves 2N-7; shorter chains have none.
inline int conformation_bit_count(int residues) { return residues >= 4 ? 2 * residues - 7 : 0; }

inline TurnSequence decode_turns(std::span<const std::uint8_t> bits, int residues) {
  if (residues < 2) throw SizeError("a chain needs at least two beads");
  const auto expected = static_cast<std::size_t>(conformation_bit_count(residues));
  if (bits.size() != expected) {
    throw LengthMismatchError("conformation bitstring has " + std::to_string(bits.size()) +
                              " bits, expected " + std::to_string(expected));
  }
  TurnSequence seq;
  seq.turns.reserve(static_cast<std::size_t>(residues - 1));
  seq.turns.push_back(1);
  if (residues >= 3) seq.turns.push_back(0);
  if (residues >= 4) {
    seq.turns.push_back(bits[0]);
    for (std::size_t p = 1; p + 1 < bits.size(); p += 2) {
      seq.turns.push_back(2 * bits[p] + bits[p + 1]);
    }
  }
  return seq;
}

/// Inverse of decode_turns. Requires the fixed prefix and t_3 in {0,1}.
inline BitVector encode_turns(const TurnSequence& seq) {
  const int n = seq.residues();
  if (seq.turns.empty() || seq.at(1) != 1 || (n >= 3 && seq.at(2) != 0)) {
    throw ValidationError("turns", "turn list must start with the fixed prefix 1, 0");
  }
  BitVector bits;
  if (n < 4) return bits;
  if (seq.at(3) > 1) throw ValidationError("turns", "third turn must be 0 or 1");
  bits.push_back(static_cast<std::uint8_t>(seq.at(3)));
  for (int k = 4; k <= n - 1; ++k) {
    const int t = seq.at(k);
    if (t < 0 || t > 3) throw ValidationError("turns", "turn codes must be in 0..3");
    bits.push_back(static_cast<std::uint8_t>(t >> 1));
    bits.push_back(static_cast<std::uint8_t>(t & 1));
  }
  return bits;
}

namespace detail {
inline int parity_sign(int k) { return (k % 2 == 0) ? 1 : -1; }

inline void check_bead(const TurnSequence& seq, int bead) {
  if (bead < 1 || bead > seq.residues()) {
    throw LookupError("bead index " + std::to_string(bead) + " outside 1.." +
                      std::to_string(seq.residues()));
  }
}
}  // namespace detail

/// Position of bead j along one axis relative to the interface plane:
/// o * sum_{k<j} (-1)^k [t_k == axis] + offset.
inline double axis_displacement(const TurnSequence& seq, int bead, int axis, double offset,
                                Orientation orientation) {
  detail::check_bead(seq, bead);
  if (axis < 0 || axis >= kAxisCount) throw LookupError("axis must be in 0..3");
  int steps = 0;
  for (int k = 1; k < bead; ++k) {
    if (seq.at(k) == axis) steps += detail::parity_sign(k);
  }
  return static_cast<int>(orientation) * steps + offset;
}

inline LatticeVector pair_axis_counts(const TurnSequence& seq, int i, int j) {
  if (i >= j) {
    throw OrderingError("pair (" + std::to_string(i) + ", " + std::to_string(j) +
                        ") must satisfy i < j");
  }
  detail::check_bead(seq, i);
  detail::check_bead(seq, j);
  LatticeVector x{};
  for (int k = i; k < j; ++k) x[static_cast<std::size_t>(seq.at(k))] += detail::parity_sign(k);
  return x;
}

/// 0 iff the beads coincide, 1 iff they are lattice neighbours.
inline int lattice_distance_sq(const TurnSequence& seq, int i, int j) {
  const auto x = pair_axis_counts(seq, i, j);
  int d2 = 0;
  for (int v : x) d2 += v * v;
  return d2;
}

/// Unit tetrahedral directions v_0..v_3 (not normalised).
inline constexpr std::array<std::array<int, 3>, kAxisCount> kTetrahedralAxes{{
    {1, 1, 1},
    {1, -1, -1},
    {-1, 1, -1},
    {-1, -1, 1},
}};

/// Bead 1 at the origin, each bond of length `scale`.
inline std::vector<Vec3> cartesian_embed(const TurnSequence& seq, double scale = 1.0) {
  std::vector<Vec3> coords;
  coords.reserve(static_cast<std::size_t>(seq.residues()));
  coords.push_back({});
  const double step = scale / std::sqrt(3.0);
  for (int k = 1; k <= static_cast<int>(seq.turns.size()); ++k) {
    const auto& v = kTetrahedralAxes[static_cast<std::size_t>(seq.at(k))];
    const double s = detail::parity_sign(k) * step;
    const Vec3& prev = coords.back();
    coords.push_back({prev.x + s * v[0], prev.y + s * v[1], prev.z + s * v[2]});
  }
  return coords;
}

/// True when no two consecutive turns repeat and no two beads coincide.
inline bool is_self_avoiding(const TurnSequence& seq) {
  const int n = seq.residues();
  for (int k = 1; k + 1 <= n - 1; ++k) {
    if (seq.at(k) == seq.at(k + 1)) return false;
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 4; j <= n; j += 2) {
      if (lattice_distance_sq(seq, i, j) == 0) return false;
    }
  }
  return true;
}

}  // namespace membranefold
