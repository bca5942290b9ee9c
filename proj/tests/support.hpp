#pragma once

#include <memory>
#include <string>

#include "membranefold/energy.hpp"
#include "membranefold/hamiltonian.hpp"

namespace testing_support {

inline std::shared_ptr<const membranefold::MJTable> table() {
  static const auto t =
      std::make_shared<const membranefold::MJTable>(membranefold::MJTable::load(membranefold::default_mj_table_path()));
  return t;
}

inline membranefold::HamiltonianConfig make_config(const std::string& seq,
                                                   membranefold::MediumMode mode = membranefold::MediumMode::Interface,
                                                   double offset = 0.0, double delta_p = 1.0) {
  membranefold::HamiltonianConfig cfg;
  cfg.sequence = membranefold::parse_sequence(seq);
  cfg.mode = mode;
  cfg.interface.offset = offset;
  cfg.interface.delta_p = delta_p;
  cfg.table = table();
  return cfg;
}

inline std::string mode_name(membranefold::MediumMode m) { return std::string(membranefold::to_string(m)); }

}  // namespace testing_support
