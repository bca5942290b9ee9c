#include <gtest/gtest.h>

#include <random>

#include "membranefold/exact_solver.hpp"
#include "membranefold/hamiltonian.hpp"
#include "reference_model.hpp"
#include "support.hpp"

using namespace membranefold;
using testing_support::make_config;

namespace {

const char* const kWL = "WLWLWLWWLW";
const char* const kDR = "DRDRDRDRDR";
const char* const kMixed = "WRDWGSGWDR";

reference::Params reference_params(const HamiltonianConfig& cfg) {
  reference::Params p;
  p.mode = std::string(to_string(cfg.mode));
  p.offset = cfg.interface.offset;
  p.delta_p = cfg.interface.delta_p;
  p.axis = cfg.interface.axis;
  p.orient = static_cast<int>(cfg.interface.orientation);
  p.polar_cs = cfg.interface.polar.contrast;
  p.polar_omega = cfg.interface.polar.mean_interaction;
  p.nonpolar_cs = cfg.interface.nonpolar.contrast;
  p.nonpolar_omega = cfg.interface.nonpolar.mean_interaction;
  p.solvent_on = cfg.interface.solvent_on;
  return p;
}

std::string random_bits(std::mt19937_64& rng, int n) {
  std::string s;
  for (int k = 0; k < n; ++k) s.push_back(rng() & 1 ? '1' : '0');
  return s;
}

}  // namespace

TEST(Layout, TenResidues) {
  const auto l = build_layout(10);
  EXPECT_EQ(l.conf_bits, 13);
  EXPECT_EQ(l.contact_bits(), 9);
  EXPECT_EQ(l.qubit_count(), 22);
  const std::vector<ContactPair> expected{{1, 6}, {1, 8}, {1, 10}, {2, 7}, {2, 9}, {3, 8}, {3, 10}, {4, 9}, {5, 10}};
  EXPECT_EQ(l.contact_pairs, expected);
}

TEST(Layout, SmallChains) {
  const auto six = build_layout(6);
  EXPECT_EQ(six.conf_bits, 5);
  EXPECT_EQ(six.contact_pairs, (std::vector<ContactPair>{{1, 6}}));
  EXPECT_EQ(six.qubit_count(), 6);
  EXPECT_EQ(build_layout(4).qubit_count(), 1);
  EXPECT_EQ(build_layout(3).qubit_count(), 0);
  EXPECT_THROW(build_layout(2), SizeError);
}

TEST(Layout, ContactRuleForAllLengths) {
  for (int n = 3; n <= 12; ++n) {
    const auto l = build_layout(n);
    std::size_t count = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if ((j - i) % 2 == 1 && j - i >= 5) ++count;
    EXPECT_EQ(l.contact_pairs.size(), count);
    for (const auto& p : l.contact_pairs) {
      EXPECT_EQ((p.j - p.i) % 2, 1);
      EXPECT_GE(p.j - p.i, 5);
    }
  }
}

TEST(GeometricTerm, Examples) {
  const auto cfg = make_config("WLWLWL");
  EXPECT_EQ(h_gc(TurnSequence{{1, 0, 1, 0, 1}}, cfg), 0.0);
  EXPECT_EQ(h_gc(TurnSequence{{1, 0, 0, 2, 3}}, cfg), 1000.0);
}

TEST(GeometricTerm, FourStepLoopOverlap) {
  auto cfg = make_config("WLWLWL");
  cfg.penalties.overlap = 7.0;
  const TurnSequence loop{{1, 0, 0, 1, 2}};
  EXPECT_EQ(lattice_distance_sq(loop, 1, 5), 0);
  EXPECT_EQ(h_gc(loop, cfg), 1000.0 + 7.0);
}

TEST(GeometricTerm, RingClosureWithoutBacktrack) {
  // The smallest ring on this lattice has six bonds.
  auto cfg = make_config("WLWLWLWL");
  cfg.penalties.backtrack = 1e6;
  const EnergyModel model(cfg);
  int rings = 0;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << 9); ++c) {
    const auto seq = decode_turns(bits_from_index(c, 9), 8);
    const double gc = model.gc(seq);
    if (gc > 0.0 && gc < 1e6) {
      ++rings;
      EXPECT_FALSE(is_self_avoiding(seq));
    }
  }
  EXPECT_GT(rings, 0);
}

TEST(ChiralityTerm, AlwaysZero) {
  const auto cfg = make_config(kWL);
  EXPECT_EQ(h_ch(TurnSequence{{1, 0, 1}}, cfg), 0.0);
  const EnergyModel model(cfg);
  std::mt19937_64 rng(2);
  for (int k = 0; k < 200; ++k) EXPECT_EQ(model.evaluate(parse_bits(random_bits(rng, 22))).ch, 0.0);
}

TEST(InteractionTerm, Examples) {
  const auto cfg = make_config("WLWLWLW", MediumMode::Interface, 0.0, 1.0);
  const EnergyModel model(cfg);
  ASSERT_EQ(model.layout().contact_pairs, (std::vector<ContactPair>{{1, 6}, {2, 7}}));
  const BitVector none{0, 0};
  const TurnSequence seq = model.turns(parse_bits("1000100"));
  EXPECT_EQ(h_in(seq, none, cfg), 0.0);
  const auto s = model.s_hat(seq);
  const int d2 = lattice_distance_sq(seq, 1, 6);
  const double pair = model.pair_energy(1, 6, s);
  EXPECT_NEAR(h_in(seq, BitVector{1, 0}, cfg), pair + 1000.0 * (d2 - 1), 1e-9);
  EXPECT_THROW(h_in(seq, BitVector{1}, cfg), LengthMismatchError);
}

TEST(InteractionTerm, AdjacentContactHasNoPenalty) {
  // Scan N=6 for a conformation with beads 1 and 6 adjacent.
  const auto cfg = make_config("WLDRWL", MediumMode::Interface, 0.5, 1.0);
  const EnergyModel model(cfg);
  int adjacent = 0, three = 0;
  for (std::uint64_t c = 0; c < 32; ++c) {
    const auto seq = decode_turns(bits_from_index(c, 5), 6);
    const auto s = model.s_hat(seq);
    const int d2 = lattice_distance_sq(seq, 1, 6);
    const double in = h_in(seq, BitVector{1}, cfg);
    const double pair = leonhard_pair_energy(Residue::W, Residue::L, s[0], s[5], model.interface(), *cfg.table);
    if (d2 == 1) {
      ++adjacent;
      EXPECT_NEAR(in, pair, 1e-12);
    }
    if (d2 == 3) {
      ++three;
      EXPECT_NEAR(in, pair + 2000.0, 1e-9);
    }
  }
  EXPECT_GT(adjacent, 0);
  EXPECT_GT(three, 0);
}

TEST(SolventTermSum, Switches) {
  auto cfg = make_config(kDR, MediumMode::Interface, 0.0, 10.0);
  const TurnSequence seq{{1, 0, 1, 0, 1, 0, 1, 0, 1}};
  cfg.interface.solvent_on = false;
  EXPECT_EQ(h_sol(seq, cfg), 0.0);
  cfg.interface.solvent_on = true;
  cfg.mode = MediumMode::VacuumMJ;
  EXPECT_EQ(h_sol(seq, cfg), 0.0);
}

TEST(SolventTermSum, ChargedChainOnPolarSideIsNegative) {
  const auto cfg = make_config(kDR, MediumMode::Interface, 0.0, 10.0);
  const TurnSequence extended{{1, 0, 1, 0, 1, 0, 1, 0, 1}};
  const EnergyModel model(cfg);
  for (int j = 2; j <= 10; ++j) EXPECT_GT(model.displacement(extended, j), 0.0);
  EXPECT_LT(h_sol(extended, cfg), 0.0);
  const auto p = reference_params(cfg);
  EXPECT_NEAR(h_sol(extended, cfg), reference::energy(kDR, "1000100010001000000000", p, *cfg.table).sol, 1e-12);
}

TEST(SolventTermSum, BeadOnPlaneContributesNothing) {
  const auto cfg = make_config("WLW", MediumMode::Interface, 0.0, 10.0);
  const EnergyModel model(cfg);
  const TurnSequence seq{{1, 0}};
  const auto s = model.s_hat(seq);
  EXPECT_EQ(s[0], 0.0);
  EXPECT_NEAR(model.sol(seq), 10.0 * (1.70 * s[1] + 2.25 * s[2]), 1e-12);
}

TEST(Energy, FourResidueMinimalString) {
  const auto cfg = make_config("WLWL");
  const auto e = energy(parse_bits("0"), cfg);
  EXPECT_EQ(e.in, 0.0);
  EXPECT_EQ(e.ch, 0.0);
  EXPECT_EQ(e.gc, 1000.0);
  EXPECT_THROW(energy(parse_bits("01"), cfg), LengthMismatchError);
}

TEST(Energy, TotalIsSumOfParts) {
  const auto cfg = make_config(kMixed, MediumMode::Interface, -0.5, 10.0);
  const EnergyModel model(cfg);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 500; ++k) {
    const auto e = model.evaluate(parse_bits(random_bits(rng, 22)));
    EXPECT_EQ(e.total, e.gc + e.ch + e.in + e.sol);
  }
}

// Values produced by tests/reference/oracle.py.
TEST(Energy, FrozenReferenceValues) {
  const auto cfg = make_config(kWL, MediumMode::Interface, 0.5, 10.0);
  struct Case {
    const char* bits;
    double gc, in, sol, total;
  };
  const Case cases[] = {
      {"1010101010101101010101", 12000.0, 7995.834968742433, 147.585836799375, 20143.420805541809},
      {"0110110110110000000000", 3000.0, 0.0, 142.750306766250, 3142.750306766250},
      {"1111111111111111111111", 9000.0, 15991.361991223064, 165.221299273125, 25156.583290496190},
  };
  for (const auto& c : cases) {
    const auto e = energy(parse_bits(c.bits), cfg);
    EXPECT_NEAR(e.gc, c.gc, 1e-9) << c.bits;
    EXPECT_NEAR(e.in, c.in, 1e-9) << c.bits;
    EXPECT_NEAR(e.sol, c.sol, 1e-9) << c.bits;
    EXPECT_NEAR(e.total, c.total, 1e-9) << c.bits;
  }
}

TEST(Energy, MatchesReferenceModel) {
  std::mt19937_64 rng(11);
  for (const char* seq : {kWL, kDR, kMixed}) {
    for (auto mode : {MediumMode::HomogeneousPolar, MediumMode::HomogeneousNonpolar, MediumMode::VacuumMJ,
                      MediumMode::Interface}) {
      for (double offset : {-1.0, 0.5}) {
        auto cfg = make_config(seq, mode, offset, 10.0);
        cfg.interface.polar = {0.7, -0.1};
        cfg.interface.nonpolar = {-0.3, 0.2};
        const EnergyModel model(cfg);
        const auto p = reference_params(cfg);
        for (int k = 0; k < 300; ++k) {
          const std::string bits = random_bits(rng, 22);
          const auto a = model.evaluate(parse_bits(bits));
          const auto b = reference::energy(seq, bits, p, *cfg.table);
          EXPECT_NEAR(a.gc, b.gc, 1e-9);
          EXPECT_NEAR(a.in, b.in, 1e-9);
          EXPECT_NEAR(a.sol, b.sol, 1e-9);
          EXPECT_NEAR(a.total, b.total, 1e-9);
        }
      }
    }
  }
}

TEST(Energy, OtherAxesAndOrientation) {
  std::mt19937_64 rng(12);
  for (int axis = 0; axis < 4; ++axis) {
    for (auto o : {Orientation::Positive, Orientation::Negative}) {
      auto cfg = make_config(kMixed, MediumMode::Interface, 1.0, 1.0);
      cfg.interface.axis = axis;
      cfg.interface.orientation = o;
      const EnergyModel model(cfg);
      for (int k = 0; k < 100; ++k) {
        const std::string bits = random_bits(rng, 22);
        EXPECT_NEAR(model.evaluate(parse_bits(bits)).total,
                    reference::energy(kMixed, bits, reference_params(cfg), *cfg.table).total, 1e-9);
      }
    }
  }
}

TEST(Properties, FeasibleMeansNoCoincidenceExhaustive) {
  for (int n = 4; n <= 6; ++n) {
    const auto cfg = make_config(std::string("WLDRWL").substr(0, n));
    const EnergyModel model(cfg);
    const int w = conformation_bit_count(n);
    for (std::uint64_t c = 0; c < (std::uint64_t{1} << w); ++c) {
      const auto seq = decode_turns(bits_from_index(c, w), n);
      if (model.gc(seq) != 0.0) continue;
      const auto r = cartesian_embed(seq);
      for (int k = 1; k + 1 <= n - 1; ++k) EXPECT_NE(seq.at(k), seq.at(k + 1));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) EXPECT_GT(norm_sq(r[i] - r[j]), 1e-9);
    }
  }
}

TEST(Properties, PenaltyDominanceAcrossStandardGrid) {
  for (const char* seq : {kWL, kDR, kMixed}) {
    std::vector<HamiltonianConfig> configs;
    for (auto mode : {MediumMode::HomogeneousPolar, MediumMode::HomogeneousNonpolar, MediumMode::VacuumMJ})
      configs.push_back(make_config(seq, mode, 0.0, 1.0));
    for (double off : {-1.0, -0.5, 0.0, 0.5, 1.0})
      for (double dp : {0.1, 1.0, 10.0}) configs.push_back(make_config(seq, MediumMode::Interface, off, dp));
    for (const auto& cfg : configs) {
      ExactOptions opt;
      opt.keep_energies = true;
      const auto res = exact_ground_state(cfg, opt);
      const EnergyModel model(cfg);
      EXPECT_EQ(res.best_breakdown.gc, 0.0);
      const auto& energies = *res.conformation_energies;
      for (std::size_t r = 0; r < energies.size(); ++r) {
        const auto turns = model.turns(lexicographic_bits(r, 13));
        if (model.gc(turns) > 0.0) EXPECT_GT(energies[r], res.best_breakdown.total);
      }
    }
  }
}

TEST(Properties, ContactBitsAreAffine) {
  const auto cfg = make_config(kMixed, MediumMode::Interface, 0.5, 1.0);
  const EnergyModel model(cfg);
  std::mt19937_64 rng(8);
  for (int k = 0; k < 100; ++k) {
    auto bits = parse_bits(random_bits(rng, 22));
    const auto seq = model.turns(std::span(bits).first(13));
    const auto brackets = model.contact_brackets(seq, model.s_hat(seq));
    for (int p = 0; p < 9; ++p) {
      auto on = bits, off = bits;
      on[13 + p] = 1;
      off[13 + p] = 0;
      EXPECT_NEAR(model.evaluate(on).total - model.evaluate(off).total, brackets[p], 1e-9);
    }
  }
}

TEST(Properties, VacuumModeIgnoresInterface) {
  std::mt19937_64 rng(13);
  const auto base = make_config(kMixed, MediumMode::VacuumMJ, 0.0, 0.1);
  const EnergyModel m0(base);
  for (double off : {-1.0, 0.5, 1.0}) {
    for (double dp : {1.0, 10.0}) {
      const EnergyModel m1(make_config(kMixed, MediumMode::VacuumMJ, off, dp));
      for (int k = 0; k < 50; ++k) {
        const auto bits = parse_bits(random_bits(rng, 22));
        const auto a = m0.evaluate(bits), b = m1.evaluate(bits);
        EXPECT_EQ(b.sol, 0.0);
        EXPECT_EQ(a.in, b.in);
      }
    }
  }
}

TEST(Properties, EnergyTableMatchesEvaluate) {
  const auto cfg = make_config("WRDWGSGW", MediumMode::Interface, -0.5, 10.0);
  const EnergyModel model(cfg);
  const auto table = model.energy_table();
  ASSERT_EQ(table.size(), std::size_t{1} << model.layout().qubit_count());
  for (std::size_t idx = 0; idx < table.size(); ++idx) EXPECT_EQ(table[idx], model.evaluate_index(idx).total);
}

TEST(PauliExpansion, MatchesOracleOnEveryState) {
  for (const char* seq : {"WLWLW", "WLDRWL", "DRDRDR", "WRDWGS"}) {
    for (auto mode : {MediumMode::Interface, MediumMode::HomogeneousNonpolar, MediumMode::VacuumMJ}) {
      const auto cfg = make_config(seq, mode, 0.5, 10.0);
      const auto poly = pauli_expansion(cfg);
      const auto p = reference_params(cfg);
      const int n = poly.n_qubits;
      for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
        const auto bits = bits_from_index(idx, n);
        EXPECT_NEAR(poly.evaluate(idx), energy(bits, cfg).total, 1e-9);
        EXPECT_NEAR(poly.evaluate(bits), reference::energy(seq, to_string(bits), p, *cfg.table).total, 1e-9);
      }
    }
  }
}

TEST(PauliExpansion, ConstantCoefficientIsMean) {
  const auto cfg = make_config("WLDRWLDR", MediumMode::Interface, 0.0, 1.0);
  const auto poly = pauli_expansion(cfg);
  const EnergyModel model(cfg);
  const auto table = model.energy_table();
  double mean = 0.0;
  for (double e : table) mean += e;
  mean /= static_cast<double>(table.size());
  EXPECT_NEAR(poly.constant(), mean, 1e-9);
}

TEST(PauliExpansion, ConstantHamiltonian) {
  // Three beads: no free turns, no contacts, solvent off.
  auto cfg = make_config("WLW", MediumMode::VacuumMJ);
  const auto poly = pauli_expansion(cfg);
  EXPECT_EQ(poly.n_qubits, 0);
  EXPECT_LE(poly.terms.size(), 1u);
  EXPECT_EQ(poly.constant(), 0.0);

  auto four = make_config("WLWL", MediumMode::VacuumMJ);
  const auto p4 = pauli_expansion(four);
  EXPECT_EQ(p4.terms.size(), 2u);
  EXPECT_DOUBLE_EQ(p4.constant(), 500.0);
  EXPECT_DOUBLE_EQ(p4.terms.at(1), 500.0);
  EXPECT_EQ(p4.label(1), "Z");
}

TEST(PauliExpansion, CapEnforced) {
  EXPECT_THROW(pauli_expansion(make_config(kWL)), SizeError);
  EXPECT_NO_THROW(pauli_expansion(make_config("WLWLWLWL"), 16));
}

TEST(HamiltonianConfig, Validation) {
  auto cfg = make_config(kWL);
  cfg.penalties.backtrack = 0.0;
  EXPECT_THROW(EnergyModel{cfg}, ValidationError);
  cfg = make_config(kWL);
  cfg.table.reset();
  EXPECT_THROW(EnergyModel{cfg}, ValidationError);
  EXPECT_THROW(parse_mode("vacuum"), ValidationError);
  EXPECT_EQ(parse_mode("homogeneous-polar"), MediumMode::HomogeneousPolar);
}
