#pragma once

// The total diagonal Hamiltonian H = H_gc + H_ch + H_in + H_sol over
// conformation qubits (free turn bits) followed by interaction qubits (one per
// eligible contact pair).
//
// The primary representation is an exact evaluator over basis states; the
// Pauli-Z expansion is derived from it by a Walsh-Hadamard transform.

#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "membranefold/amino_acids.hpp"
#include "membranefold/energy.hpp"
#include "membranefold/errors.hpp"
#include "membranefold/lattice.hpp"

namespace membranefold {

struct ContactPair {
  int i = 0;
  int j = 0;

  friend bool operator==(const ContactPair&, const ContactPair&) = default;
};

struct QubitLayout {
  int residues = 0;
  int conf_bits = 0;
  std::vector<ContactPair> contact_pairs;

  int contact_bits() const { return static_cast<int>(contact_pairs.size()); }
  int qubit_count() const { return conf_bits + contact_bits(); }
};

/// Contact qubits exist for pairs with j - i odd and >= 5, ordered by i then j.
inline QubitLayout build_layout(int residues) {
  if (residues < 3) throw SizeError("a peptide needs at least 3 residues, got " + std::to_string(residues));
  QubitLayout layout;
  layout.residues = residues;
  layout.conf_bits = conformation_bit_count(residues);
  for (int i = 1; i <= residues; ++i) {
    for (int j = i + 5; j <= residues; j += 2) layout.contact_pairs.push_back({i, j});
  }
  return layout;
}

enum class MediumMode { HomogeneousPolar, HomogeneousNonpolar, VacuumMJ, Interface };

inline std::string_view to_string(MediumMode mode) {
  switch (mode) {
    case MediumMode::HomogeneousPolar: return "homogeneous-polar";
    case MediumMode::HomogeneousNonpolar: return "homogeneous-nonpolar";
    case MediumMode::VacuumMJ: return "vacuum-mj";
    case MediumMode::Interface: return "interface";
  }
  return "interface";
}

inline MediumMode parse_mode(std::string_view text) {
  for (auto m : {MediumMode::HomogeneousPolar, MediumMode::HomogeneousNonpolar, MediumMode::VacuumMJ,
                 MediumMode::Interface}) {
    if (to_string(m) == text) return m;
  }
  throw ValidationError("mode", "unknown mode '" + std::string(text) +
                                    "' (expected homogeneous-polar, homogeneous-nonpolar, vacuum-mj or interface)");
}

struct PenaltyWeights {
  double backtrack = 1000.0;
  double overlap = 1000.0;
  double contact = 1000.0;
};

struct HamiltonianConfig {
  ResidueSequence sequence;
  InterfaceParams interface;
  PenaltyWeights penalties;
  MediumMode mode = MediumMode::Interface;
  std::shared_ptr<const MJTable> table;

  void validate() const {
    if (sequence.size() < 3) throw ValidationError("sequence", "needs at least 3 residues");
    if (!(penalties.backtrack > 0.0)) throw ValidationError("penalties.backtrack", "must be positive");
    if (!(penalties.overlap > 0.0)) throw ValidationError("penalties.overlap", "must be positive");
    if (!(penalties.contact > 0.0)) throw ValidationError("penalties.contact", "must be positive");
    interface.validate();
    if (!table) throw ValidationError("mj_table", "no contact table loaded");
  }
};

/// Interface parameters after applying the medium mode. Homogeneous media use
/// one phase on both sides and no polarity difference; vacuum-mj switches the
/// solvent coupling off entirely.
inline InterfaceParams effective_interface(const HamiltonianConfig& cfg) {
  InterfaceParams ip = cfg.interface;
  switch (cfg.mode) {
    case MediumMode::HomogeneousPolar:
      ip.nonpolar = ip.polar;
      ip.delta_p = 0.0;
      break;
    case MediumMode::HomogeneousNonpolar:
      ip.polar = ip.nonpolar;
      ip.delta_p = 0.0;
      break;
    case MediumMode::VacuumMJ:
      ip.solvent_on = false;
      ip.delta_p = 0.0;
      break;
    case MediumMode::Interface:
      break;
  }
  return ip;
}

struct EnergyBreakdown {
  double gc = 0.0;
  double ch = 0.0;
  double in = 0.0;
  double sol = 0.0;
  double total = 0.0;
};

/// Precomputed evaluator for one configuration.
class EnergyModel {
 public:
  explicit EnergyModel(HamiltonianConfig cfg)
      : cfg_(std::move(cfg)), layout_(build_layout(static_cast<int>(cfg_.sequence.size()))) {
    cfg_.validate();
    ip_ = effective_interface(cfg_);
    for (std::size_t k = 0; k < cfg_.sequence.size(); ++k) {
      const Residue r = cfg_.sequence[k];
      nonpolar_phase_.push_back(phase_energy(r, ip_.nonpolar, *cfg_.table));
      polar_phase_.push_back(phase_energy(r, ip_.polar, *cfg_.table));
    }
  }

  const HamiltonianConfig& config() const { return cfg_; }
  const QubitLayout& layout() const { return layout_; }
  const InterfaceParams& interface() const { return ip_; }
  int residues() const { return layout_.residues; }

  TurnSequence turns(std::span<const std::uint8_t> conf_bits) const {
    return decode_turns(conf_bits, layout_.residues);
  }

  double displacement(const TurnSequence& seq, int bead) const {
    return axis_displacement(seq, bead, ip_.axis, ip_.offset, ip_.orientation);
  }

  /// Phase indicator S for every bead (index 0 is bead 1).
  std::vector<double> s_hat(const TurnSequence& seq) const {
    std::vector<double> s(static_cast<std::size_t>(layout_.residues));
    for (int j = 1; j <= layout_.residues; ++j) s[j - 1] = sign_poly(displacement(seq, j));
    return s;
  }

  double gc(const TurnSequence& seq) const {
    const int n = layout_.residues;
    int backtracks = 0;
    for (int k = 1; k + 1 <= n - 1; ++k) backtracks += seq.at(k) == seq.at(k + 1) ? 1 : 0;
    int overlaps = 0;
    for (int i = 1; i <= n; ++i) {
      for (int j = i + 4; j <= n; j += 2) overlaps += lattice_distance_sq(seq, i, j) == 0 ? 1 : 0;
    }
    return cfg_.penalties.backtrack * backtracks + cfg_.penalties.overlap * overlaps;
  }

  static double ch(const TurnSequence&) { return 0.0; }

  /// Phase-corrected contact energy of beads i and j.
  double pair_energy(int i, int j, std::span<const double> s) const {
    const Residue a = cfg_.sequence[i - 1];
    const Residue b = cfg_.sequence[j - 1];
    const MJTable& table = *cfg_.table;
    if (!ip_.solvent_on) return table(a, b);
    return table(a, b) - phase_at(i, s[i - 1]) - phase_at(j, s[j - 1]);
  }

  /// Energy added by setting each contact qubit: pair energy plus the
  /// penalty for claiming a contact between non-adjacent beads.
  std::vector<double> contact_brackets(const TurnSequence& seq, std::span<const double> s) const {
    std::vector<double> out;
    out.reserve(layout_.contact_pairs.size());
    for (const auto& [i, j] : layout_.contact_pairs) {
      out.push_back(pair_energy(i, j, s) + cfg_.penalties.contact * (lattice_distance_sq(seq, i, j) - 1));
    }
    return out;
  }

  double in(const TurnSequence& seq, std::span<const std::uint8_t> contact_bits) const {
    if (contact_bits.size() != layout_.contact_pairs.size()) {
      throw LengthMismatchError("expected " + std::to_string(layout_.contact_pairs.size()) + " contact bits, got " +
                                std::to_string(contact_bits.size()));
    }
    const auto s = s_hat(seq);
    const auto brackets = contact_brackets(seq, s);
    double total = 0.0;
    for (std::size_t p = 0; p < brackets.size(); ++p) {
      if (contact_bits[p]) total += brackets[p];
    }
    return total;
  }

  double sol(const TurnSequence& seq) const { return sol(s_hat(seq)); }

  double sol(std::span<const double> s) const {
    if (!ip_.solvent_on || ip_.delta_p == 0.0) return 0.0;
    double total = 0.0;
    for (std::size_t k = 0; k < cfg_.sequence.size(); ++k) total += solvent_term(cfg_.sequence[k], s[k], ip_.delta_p);
    return total;
  }

  EnergyBreakdown evaluate(std::span<const std::uint8_t> bits) const {
    if (bits.size() != static_cast<std::size_t>(layout_.qubit_count())) {
      throw LengthMismatchError("expected " + std::to_string(layout_.qubit_count()) + " bits, got " +
                                std::to_string(bits.size()));
    }
    const auto conf = bits.first(static_cast<std::size_t>(layout_.conf_bits));
    const auto contacts = bits.subspan(static_cast<std::size_t>(layout_.conf_bits));
    const TurnSequence seq = turns(conf);
    const auto s = s_hat(seq);
    const auto brackets = contact_brackets(seq, s);
    EnergyBreakdown e;
    e.gc = gc(seq);
    e.ch = ch(seq);
    for (std::size_t p = 0; p < brackets.size(); ++p) {
      if (contacts[p]) e.in += brackets[p];
    }
    e.sol = sol(s);
    e.total = e.gc + e.ch + e.in + e.sol;
    return e;
  }

  EnergyBreakdown evaluate_index(std::uint64_t index) const {
    return evaluate(bits_from_index(index, layout_.qubit_count()));
  }

  /// Total energy of every basis state, indexed by basis index (qubit q is
  /// bit q). Summation order matches evaluate() so entries are bit-identical.
  std::vector<double> energy_table(int max_qubits = 24) const {
    const int n = layout_.qubit_count();
    if (n > max_qubits) {
      throw SizeError("energy table needs 2^" + std::to_string(n) + " entries; cap is 2^" + std::to_string(max_qubits));
    }
    const std::uint64_t conf_states = std::uint64_t{1} << layout_.conf_bits;
    const std::uint64_t contact_states = std::uint64_t{1} << layout_.contact_bits();
    std::vector<double> table(static_cast<std::size_t>(conf_states * contact_states));
    for (std::uint64_t c = 0; c < conf_states; ++c) {
      const TurnSequence seq = turns(bits_from_index(c, layout_.conf_bits));
      const auto s = s_hat(seq);
      const auto brackets = contact_brackets(seq, s);
      const double gc_e = gc(seq);
      const double ch_e = ch(seq);
      const double sol_e = sol(s);
      for (std::uint64_t q = 0; q < contact_states; ++q) {
        double in_e = 0.0;
        for (std::size_t p = 0; p < brackets.size(); ++p) {
          if ((q >> p) & 1u) in_e += brackets[p];
        }
        table[static_cast<std::size_t>(c | (q << layout_.conf_bits))] = gc_e + ch_e + in_e + sol_e;
      }
    }
    return table;
  }

 private:
  double phase_at(int bead, double s) const {
    return 0.5 * ((1.0 - s) * nonpolar_phase_[bead - 1] + (1.0 + s) * polar_phase_[bead - 1]);
  }

  HamiltonianConfig cfg_;
  QubitLayout layout_;
  InterfaceParams ip_;
  std::vector<double> nonpolar_phase_;
  std::vector<double> polar_phase_;
};

inline double h_gc(const TurnSequence& seq, const HamiltonianConfig& cfg) { return EnergyModel(cfg).gc(seq); }

inline double h_ch(const TurnSequence&, const HamiltonianConfig&) { return 0.0; }

inline double h_in(const TurnSequence& seq, std::span<const std::uint8_t> contact_bits, const HamiltonianConfig& cfg) {
  return EnergyModel(cfg).in(seq, contact_bits);
}

inline double h_sol(const TurnSequence& seq, const HamiltonianConfig& cfg) { return EnergyModel(cfg).sol(seq); }

inline EnergyBreakdown energy(std::span<const std::uint8_t> bits, const HamiltonianConfig& cfg) {
  return EnergyModel(cfg).evaluate(bits);
}

/// Diagonal operator sum_S c_S prod_{q in S} Z_q; a subset S is a bit mask.
struct PauliZPolynomial {
  int n_qubits = 0;
  std::map<std::uint64_t, double> terms;

  double constant() const {
    const auto it = terms.find(0);
    return it == terms.end() ? 0.0 : it->second;
  }

  /// Value on basis state `index`, where Z_q contributes (-1)^{bit q}.
  double evaluate(std::uint64_t index) const {
    double value = 0.0;
    for (const auto& [mask, coeff] : terms) {
      value += (std::popcount(mask & index) & 1) ? -coeff : coeff;
    }
    return value;
  }

  double evaluate(std::span<const std::uint8_t> bits) const { return evaluate(index_from_bits(bits)); }

  /// Z-string such as "ZIZ" (qubit 0 first) for a mask.
  std::string label(std::uint64_t mask) const {
    std::string out(static_cast<std::size_t>(n_qubits), 'I');
    for (int q = 0; q < n_qubits; ++q) {
      if ((mask >> q) & 1u) out[q] = 'Z';
    }
    return out;
  }
};

/// In-place unnormalised Walsh-Hadamard transform; size must be a power of 2.
inline void walsh_hadamard(std::span<double> values) {
  for (std::size_t len = 1; len < values.size(); len <<= 1) {
    for (std::size_t base = 0; base < values.size(); base += 2 * len) {
      for (std::size_t k = base; k < base + len; ++k) {
        const double a = values[k];
        const double b = values[k + len];
        values[k] = a + b;
        values[k + len] = a - b;
      }
    }
  }
}

inline PauliZPolynomial pauli_expansion(const HamiltonianConfig& cfg, int max_qubits = 16) {
  const EnergyModel model(cfg);
  const int n = model.layout().qubit_count();
  if (n > max_qubits) {
    throw SizeError("Pauli expansion over " + std::to_string(n) + " qubits exceeds the cap of " +
                    std::to_string(max_qubits));
  }
  auto table = model.energy_table(max_qubits);
  walsh_hadamard(table);
  PauliZPolynomial poly;
  poly.n_qubits = n;
  const double norm = 1.0 / static_cast<double>(table.size());
  for (std::size_t mask = 0; mask < table.size(); ++mask) {
    if (table[mask] != 0.0) poly.terms.emplace(mask, table[mask] * norm);
  }
  return poly;
}

}  // namespace membranefold
