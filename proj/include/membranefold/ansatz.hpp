#pragma once

// Statevector simulation of a hardware-efficient ansatz: a layer of RY
// rotations followed by `depth` blocks of [CZ chain on neighbouring qubits,
// RY layer]. Both gates are real, so amplitudes are kept as doubles.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "membranefold/errors.hpp"

namespace membranefold {

using Statevector = std::vector<double>;

struct AnsatzSpec {
  int n_qubits = 1;
  int depth = 2;

  std::size_t parameter_count() const { return static_cast<std::size_t>((depth + 1) * n_qubits); }
};

inline void apply_ry(Statevector& psi, int qubit, double theta) {
  const double c = std::cos(0.5 * theta);
  const double s = std::sin(0.5 * theta);
  const std::size_t stride = std::size_t{1} << qubit;
  for (std::size_t base = 0; base < psi.size(); base += 2 * stride) {
    for (std::size_t k = base; k < base + stride; ++k) {
      const double a0 = psi[k];
      const double a1 = psi[k + stride];
      psi[k] = c * a0 - s * a1;
      psi[k + stride] = s * a0 + c * a1;
    }
  }
}

inline void apply_cz(Statevector& psi, int a, int b) {
  const std::size_t mask = (std::size_t{1} << a) | (std::size_t{1} << b);
  for (std::size_t k = 0; k < psi.size(); ++k) {
    if ((k & mask) == mask) psi[k] = -psi[k];
  }
}

/// CZ on every (q, q+1), fused into one diagonal pass: the sign is the parity
/// of adjacent set-bit pairs.
inline void apply_cz_chain(Statevector& psi, int n_qubits) {
  if (n_qubits < 2) return;
  const std::uint64_t pair_mask = (std::uint64_t{1} << (n_qubits - 1)) - 1;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const std::uint64_t x = k;
    if (std::popcount(x & (x >> 1) & pair_mask) & 1) psi[k] = -psi[k];
  }
}

inline Statevector build_ansatz_state(const AnsatzSpec& spec, std::span<const double> theta) {
  if (theta.size() != spec.parameter_count()) {
    throw LengthMismatchError("ansatz expects " + std::to_string(spec.parameter_count()) + " parameters, got " +
                              std::to_string(theta.size()));
  }
  if (spec.n_qubits < 1 || spec.n_qubits > 30 || spec.depth < 0) throw SizeError("unsupported ansatz shape");
  Statevector psi(std::size_t{1} << spec.n_qubits, 0.0);
  psi[0] = 1.0;
  const auto n = static_cast<std::size_t>(spec.n_qubits);
  for (int q = 0; q < spec.n_qubits; ++q) apply_ry(psi, q, theta[q]);
  for (int layer = 1; layer <= spec.depth; ++layer) {
    apply_cz_chain(psi, spec.n_qubits);
    for (int q = 0; q < spec.n_qubits; ++q) apply_ry(psi, q, theta[layer * n + q]);
  }
  return psi;
}

inline double norm_sq(std::span<const double> psi) {
  double total = 0.0;
  for (double a : psi) total += a * a;
  return total;
}

/// Lowest index among the most probable basis states.
inline std::uint64_t most_probable_state(std::span<const double> psi) {
  std::uint64_t best = 0;
  double best_p = -1.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    const double p = psi[k] * psi[k];
    if (p > best_p) {
      best_p = p;
      best = k;
    }
  }
  return best;
}

/// How energies are aggregated over the measurement distribution.
struct Aggregation {
  enum class Kind { Mean, CVaR };
  Kind kind = Kind::Mean;
  double alpha = 1.0;

  static Aggregation mean() { return {}; }
  static Aggregation cvar(double alpha) {
    if (!(alpha > 0.0 && alpha <= 1.0)) throw ValidationError("alpha", "CVaR alpha must lie in (0, 1]");
    return {Kind::CVaR, alpha};
  }
};

/// Basis-state energies plus their ascending order (ties by index).
struct EnergyLandscape {
  std::vector<double> energies;
  std::vector<std::uint64_t> ascending;

  explicit EnergyLandscape(std::vector<double> e) : energies(std::move(e)), ascending(energies.size()) {
    for (std::size_t k = 0; k < ascending.size(); ++k) ascending[k] = k;
    std::stable_sort(ascending.begin(), ascending.end(),
                     [this](std::uint64_t a, std::uint64_t b) { return energies[a] < energies[b]; });
  }
};

inline double expectation(std::span<const double> psi, const EnergyLandscape& landscape, Aggregation agg) {
  if (psi.size() != landscape.energies.size()) throw LengthMismatchError("statevector and energy table differ in size");
  if (agg.kind == Aggregation::Kind::CVaR && !(agg.alpha > 0.0 && agg.alpha <= 1.0)) {
    throw ValidationError("alpha", "CVaR alpha must lie in (0, 1]");
  }
  if (agg.kind == Aggregation::Kind::Mean || agg.alpha == 1.0) {
    double total = 0.0;
    for (std::size_t k = 0; k < psi.size(); ++k) total += psi[k] * psi[k] * landscape.energies[k];
    return total;
  }
  double mass = 0.0;
  double total = 0.0;
  for (std::uint64_t k : landscape.ascending) {
    const double p = psi[k] * psi[k];
    const double take = std::min(p, agg.alpha - mass);
    total += take * landscape.energies[k];
    mass += take;
    if (mass >= agg.alpha) break;
  }
  return total / agg.alpha;
}

/// Same aggregation applied to an empirical sample of basis states.
inline double sample_expectation(std::span<const std::uint64_t> samples, const EnergyLandscape& landscape,
                                 Aggregation agg) {
  if (samples.empty()) throw SizeError("no samples");
  std::vector<double> e;
  e.reserve(samples.size());
  for (auto s : samples) e.push_back(landscape.energies[s]);
  if (agg.kind == Aggregation::Kind::CVaR && agg.alpha < 1.0) {
    std::sort(e.begin(), e.end());
    const double keep = agg.alpha * static_cast<double>(e.size());
    double total = 0.0;
    double mass = 0.0;
    for (double v : e) {
      const double take = std::min(1.0, keep - mass);
      total += take * v;
      mass += take;
      if (mass >= keep) break;
    }
    return total / keep;
  }
  double total = 0.0;
  for (double v : e) total += v;
  return total / static_cast<double>(e.size());
}

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
inline double uniform_unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// i.i.d. basis-state draws from |psi|^2 using `rng`.
inline std::vector<std::uint64_t> sample_bitstrings(std::span<const double> psi, int shots, std::mt19937_64& rng) {
  if (shots < 1) throw SizeError("shots must be at least 1");
  std::vector<double> cdf(psi.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    acc += psi[k] * psi[k];
    cdf[k] = acc;
  }
  std::vector<std::uint64_t> out;
  out.reserve(static_cast<std::size_t>(shots));
  for (int s = 0; s < shots; ++s) {
    const double u = uniform_unit(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    if (it == cdf.end()) --it;
    out.push_back(static_cast<std::uint64_t>(it - cdf.begin()));
  }
  return out;
}

inline std::vector<std::uint64_t> sample_bitstrings(std::span<const double> psi, int shots, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return sample_bitstrings(psi, shots, rng);
}

}  // namespace membranefold
