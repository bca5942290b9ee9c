#pragma once

// Scalar energy ingredients: the Miyazawa-Jernigan contact table, the smooth
// phase indicator, phase-corrected contact energies and the per-bead solvent
// term.
//
// Sign convention for the phase indicator S: S -> -1 is the nonpolar phase
// (phase 1), S -> +1 the polar phase (phase 2).

#include <array>
#include <charconv>
#include <cstdlib>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "membranefold/amino_acids.hpp"
#include "membranefold/checksum.hpp"
#include "membranefold/errors.hpp"
#include "membranefold/lattice.hpp"

#ifndef MEMBRANEFOLD_DEFAULT_DATA_DIR
#define MEMBRANEFOLD_DEFAULT_DATA_DIR "data"
#endif

namespace membranefold {

/// Seventh-degree odd polynomial approximating sign(x); close to +-1 for
/// 2 <= |x| <= 9, diverges beyond.
inline double sign_poly(double x) {
  const double x2 = x * x;
  return x * (0.48175 + x2 * (-0.0182 + x2 * (2.95e-4 + x2 * (-1.56e-6))));
}

/// Symmetric 20x20 table of dimensionless contact energies.
class MJTable {
 public:
  double operator()(Residue a, Residue b) const { return values_[index_of(a) * kResidueTypes + index_of(b)]; }

  /// Sum of the diagonal e_ii over all residue types.
  double diagonal_sum() const { return diagonal_sum_; }

  /// SHA-256 of the source bytes (empty if parsed from memory without one).
  const std::string& checksum() const { return checksum_; }

  /// Parses the CSV grid; validates completeness and symmetry.
  static MJTable parse_csv(std::string_view text, std::string checksum = {}) {
    MJTable table;
    table.checksum_ = std::move(checksum);
    std::vector<std::vector<std::string>> rows;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(pos, end - pos);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      if (!line.empty()) rows.push_back(split(line));
      pos = end + 1;
    }
    if (rows.size() != kResidueTypes + 1) {
      throw DataIntegrityError("MJ table must have a header and 20 rows, found " +
                               std::to_string(rows.size()) + " lines");
    }
    const auto& header = rows.front();
    if (header.size() != kResidueTypes + 1) throw DataIntegrityError("MJ header must list 20 residue codes");
    std::array<Residue, kResidueTypes> columns{};
    std::array<bool, kResidueTypes> seen_col{};
    for (int c = 0; c < kResidueTypes; ++c) {
      columns[c] = code_cell(header[c + 1], "header");
      if (seen_col[index_of(columns[c])]) throw DataIntegrityError("duplicate column " + header[c + 1]);
      seen_col[index_of(columns[c])] = true;
    }
    std::array<bool, kResidueTypes> seen_row{};
    for (int r = 1; r <= kResidueTypes; ++r) {
      const auto& row = rows[r];
      if (row.size() != kResidueTypes + 1) {
        throw DataIntegrityError("MJ row " + std::to_string(r) + " has " + std::to_string(row.size() - 1) +
                                 " entries, expected 20");
      }
      const Residue a = code_cell(row[0], "row label");
      if (seen_row[index_of(a)]) throw DataIntegrityError("duplicate row " + row[0]);
      seen_row[index_of(a)] = true;
      for (int c = 0; c < kResidueTypes; ++c) {
        const std::string& cell = row[c + 1];
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || ec != std::errc{} || ptr != cell.data() + cell.size()) {
          throw DataIntegrityError("missing or malformed MJ entry at row " + row[0] + ", column " +
                                   header[c + 1]);
        }
        table.values_[index_of(a) * kResidueTypes + index_of(columns[c])] = v;
      }
    }
    for (Residue a : kAllResidues) {
      for (Residue b : kAllResidues) {
        if (table(a, b) != table(b, a)) {
          throw DataIntegrityError(std::string("MJ table not symmetric at ") + code_of(a) + "/" + code_of(b));
        }
      }
    }
    table.diagonal_sum_ = 0.0;
    for (Residue a : kAllResidues) table.diagonal_sum_ += table(a, a);
    return table;
  }

  /// Loads `path`, verifying it against the hex digest stored in `path.sha256`.
  static MJTable load(const std::string& path) {
    const std::string bytes = read_file(path);
    std::string expected;
    try {
      std::istringstream in(read_file(path + ".sha256"));
      in >> expected;
    } catch (const Error&) {
      throw DataIntegrityError("checksum file '" + path + ".sha256' is missing");
    }
    const std::string actual = sha256_hex(bytes);
    if (expected != actual) {
      throw DataIntegrityError("checksum mismatch for '" + path + "': expected " + expected + ", got " + actual);
    }
    return parse_csv(bytes, actual);
  }

 private:
  static std::vector<std::string> split(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = line.find(',', pos);
      std::string_view cell = line.substr(pos, comma == std::string_view::npos ? line.npos : comma - pos);
      while (!cell.empty() && cell.front() == ' ') cell.remove_prefix(1);
      while (!cell.empty() && cell.back() == ' ') cell.remove_suffix(1);
      cells.emplace_back(cell);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    return cells;
  }

  static Residue code_cell(const std::string& cell, const char* where) {
    if (cell.size() != 1) throw DataIntegrityError(std::string("bad residue code in ") + where + ": '" + cell + "'");
    try {
      return residue_from_code(cell[0]);
    } catch (const LookupError& e) {
      throw DataIntegrityError(std::string(where) + ": " + e.what());
    }
  }

  std::array<double, kResidueTypes * kResidueTypes> values_{};
  double diagonal_sum_ = 0.0;
  std::string checksum_;
};

/// $MEMBRANEFOLD_MJ_TABLE if set, else the bundled data file.
inline std::string default_mj_table_path() {
  if (const char* env = std::getenv("MEMBRANEFOLD_MJ_TABLE"); env != nullptr && *env != '\0') return env;
  return std::string(MEMBRANEFOLD_DEFAULT_DATA_DIR) + "/mj_table.csv";
}

inline double mj_energy(Residue a, Residue b, const MJTable& table) { return table(a, b); }

/// Homogeneous-phase parameters. `contrast` > 0 favours solvent contact with
/// hydrophilic residues; `mean_interaction` < 0 is overall attraction.
struct PhaseParams {
  double contrast = 0.0;
  double mean_interaction = 0.0;

  friend bool operator==(const PhaseParams&, const PhaseParams&) = default;
};

inline PhaseParams default_polar_phase() { return {0.5, 0.0}; }
inline PhaseParams default_nonpolar_phase() { return {-0.5, 0.0}; }

struct InterfaceParams {
  int axis = 1;
  double offset = 0.0;
  Orientation orientation = Orientation::Negative;
  double delta_p = 0.0;
  PhaseParams nonpolar = default_nonpolar_phase();  // weight (1 - S)/2
  PhaseParams polar = default_polar_phase();        // weight (1 + S)/2
  bool solvent_on = true;

  void validate() const {
    if (axis < 0 || axis >= kAxisCount) throw ValidationError("axis", "must be in 0..3");
    if (!(delta_p >= 0.0)) throw ValidationError("delta_p", "must be non-negative");
  }
};

/// Interaction of residue k with a homogeneous phase.
inline double phase_energy(Residue k, const PhaseParams& p, const MJTable& table) {
  return 0.5 * (1.0 - p.contrast) * table(k, k) + p.mean_interaction +
         p.contrast / (2.0 * kResidueTypes) * table.diagonal_sum();
}

/// Phase energy interpolated by the indicator S (not clamped to [-1, 1]).
inline double interface_phase_energy(Residue k, double s_hat, const InterfaceParams& ip, const MJTable& table) {
  return 0.5 * ((1.0 - s_hat) * phase_energy(k, ip.nonpolar, table) +
                (1.0 + s_hat) * phase_energy(k, ip.polar, table));
}

inline double leonhard_pair_energy(Residue a, Residue b, double s_a, double s_b, const InterfaceParams& ip,
                                   const MJTable& table) {
  if (!ip.solvent_on) return table(a, b);
  return table(a, b) - interface_phase_energy(a, s_a, ip, table) - interface_phase_energy(b, s_b, ip, table);
}

inline double solvent_term(Residue k, double s_hat, double delta_p) { return delta_p * hydrophobicity(k) * s_hat; }

}  // namespace membranefold
