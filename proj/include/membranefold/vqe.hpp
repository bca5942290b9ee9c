#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include "membranefold/ansatz.hpp"
#include "membranefold/hamiltonian.hpp"
#include "membranefold/nelder_mead.hpp"

namespace membranefold {

struct VqeOptions {
  int max_iters = 500;
  int restarts = 10;
  std::uint64_t seed = 7;
  Aggregation aggregation = Aggregation::mean();
  /// 0 evaluates the objective exactly from the statevector.
  int shots = 0;
  double initial_step = 0.5 * std::numbers::pi;
};

struct VqeResult {
  BitVector best_bits;
  double best_energy = 0.0;
  EnergyBreakdown best_breakdown;
  double best_objective = std::numeric_limits<double>::infinity();
  std::vector<double> best_parameters;
  /// Best simplex objective per iteration, one list per restart.
  std::vector<std::vector<double>> traces;
  std::uint64_t seed = 0;
  int evaluations = 0;
  /// Evaluation count at which best_bits was first observed.
  int first_hit_evaluation = 0;
  AnsatzSpec ansatz;
  Aggregation aggregation;
  int shots = 0;
};

/// Seed for restart i of a run with master seed `master`.
inline std::uint64_t restart_seed(std::uint64_t master, int restart) {
  return master ^ static_cast<std::uint64_t>(restart);
}

inline VqeResult vqe_minimize(const HamiltonianConfig& cfg, const AnsatzSpec& spec, const VqeOptions& options) {
  const EnergyModel model(cfg);
  const int n = model.layout().qubit_count();
  if (spec.n_qubits != n) {
    throw LengthMismatchError("ansatz has " + std::to_string(spec.n_qubits) + " qubits, Hamiltonian needs " +
                              std::to_string(n));
  }
  if (options.restarts < 1 || options.max_iters < 1) throw ValidationError("vqe", "restarts and max_iters must be >= 1");
  const EnergyLandscape landscape(model.energy_table());

  VqeResult result;
  result.seed = options.seed;
  result.ansatz = spec;
  result.aggregation = options.aggregation;
  result.shots = options.shots;

  std::uint64_t best_state = 0;
  double best_state_energy = std::numeric_limits<double>::infinity();
  auto observe = [&](std::uint64_t state) {
    const double e = landscape.energies[state];
    if (e < best_state_energy || (e == best_state_energy && state < best_state)) {
      if (e < best_state_energy) result.first_hit_evaluation = result.evaluations;
      best_state_energy = e;
      best_state = state;
    }
  };

  for (int r = 0; r < options.restarts; ++r) {
    std::mt19937_64 rng(restart_seed(options.seed, r));
    std::vector<double> theta(spec.parameter_count());
    for (double& t : theta) t = 2.0 * std::numbers::pi * uniform_unit(rng);

    auto objective = [&](const std::vector<double>& x) {
      ++result.evaluations;
      const Statevector psi = build_ansatz_state(spec, x);
      observe(most_probable_state(psi));
      double value = 0.0;
      if (options.shots > 0) {
        const auto samples = sample_bitstrings(psi, options.shots, rng);
        for (auto s : samples) observe(s);
        value = sample_expectation(samples, landscape, options.aggregation);
      } else {
        value = expectation(psi, landscape, options.aggregation);
      }
      if (value < result.best_objective) {
        result.best_objective = value;
        result.best_parameters = x;
      }
      return value;
    };

    NelderMeadOptions nm;
    nm.max_iterations = options.max_iters;
    nm.initial_step = options.initial_step;
    auto run = nelder_mead(objective, theta, nm);
    result.traces.push_back(std::move(run.trace));
  }

  result.best_bits = bits_from_index(best_state, n);
  result.best_breakdown = model.evaluate(result.best_bits);
  result.best_energy = result.best_breakdown.total;
  return result;
}

}  // namespace membranefold
