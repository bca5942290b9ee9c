#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "membranefold/hamiltonian.hpp"

namespace membranefold {

struct ExactOptions {
  int max_residues = 12;
  bool keep_energies = false;
};

struct ExactResult {
  BitVector best_bits;
  EnergyBreakdown best_breakdown;
  std::uint64_t states_scanned = 0;
  /// Minimum total per conformation, in scan order (only if requested).
  std::optional<std::vector<double>> conformation_energies;
};

/// Conformation bits in lexicographic string order for position `rank`
/// (bit 0 of the string is the most significant).
inline BitVector lexicographic_bits(std::uint64_t rank, int width) {
  BitVector bits(static_cast<std::size_t>(width));
  for (int q = 0; q < width; ++q) bits[q] = static_cast<std::uint8_t>((rank >> (width - 1 - q)) & 1u);
  return bits;
}

/// Enumerates every conformation. H is affine in each contact bit, so the
/// optimal contact bits for a fixed conformation are q = 1 exactly where the
/// bracket is negative. Ties resolve to the lexicographically smallest string.
inline ExactResult exact_ground_state(const HamiltonianConfig& cfg, const ExactOptions& options = {}) {
  const int n = static_cast<int>(cfg.sequence.size());
  if (n > options.max_residues) {
    throw SizeError("exact enumeration limited to " + std::to_string(options.max_residues) + " residues, got " +
                    std::to_string(n));
  }
  const EnergyModel model(cfg);
  const auto& layout = model.layout();
  const std::uint64_t conf_states = std::uint64_t{1} << layout.conf_bits;

  ExactResult result;
  if (options.keep_energies) result.conformation_energies.emplace().reserve(conf_states);
  double best = 0.0;
  bool have_best = false;
  BitVector bits(static_cast<std::size_t>(layout.qubit_count()));
  for (std::uint64_t rank = 0; rank < conf_states; ++rank) {
    const BitVector conf = lexicographic_bits(rank, layout.conf_bits);
    const TurnSequence seq = model.turns(conf);
    const auto s = model.s_hat(seq);
    const auto brackets = model.contact_brackets(seq, s);
    double in_e = 0.0;
    for (double b : brackets) {
      if (b < 0.0) in_e += b;
    }
    const double total = model.gc(seq) + EnergyModel::ch(seq) + in_e + model.sol(s);
    if (result.conformation_energies) result.conformation_energies->push_back(total);
    ++result.states_scanned;
    if (!have_best || total < best) {
      have_best = true;
      best = total;
      std::copy(conf.begin(), conf.end(), bits.begin());
      for (std::size_t p = 0; p < brackets.size(); ++p) {
        bits[layout.conf_bits + p] = brackets[p] < 0.0 ? 1 : 0;
      }
    }
  }
  result.best_bits = bits;
  result.best_breakdown = model.evaluate(bits);
  return result;
}

}  // namespace membranefold
