#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "membranefold/harness.hpp"

namespace mf = membranefold;

namespace {

struct Overrides {
  std::string solver;
  std::optional<std::uint64_t> seed;
  std::string out;
};

mf::ExperimentConfig load_with_overrides(const std::string& path, const Overrides& o) {
  mf::ExperimentConfig cfg = mf::load_config(path);
  if (!o.solver.empty()) cfg.solver = mf::parse_solver(o.solver);
  if (o.seed) cfg.seed = *o.seed;
  if (!o.out.empty()) cfg.output_dir = o.out;
  cfg.validate();
  return cfg;
}

void report(const mf::RunRecord& r) {
  if (r.ok()) {
    std::printf("%s %s mode=%s offset=%g delta_p=%g total=%.9f bits=%s d2=%d -> %s\n", r.config_hash.substr(0, 12).c_str(),
                r.config.sequence.c_str(), std::string(mf::to_string(r.config.mode)).c_str(), r.config.offset,
                r.config.delta_p, r.breakdown.total, mf::to_string(r.best_bits).c_str(), r.metrics.end_to_end_d2,
                r.run_dir.string().c_str());
  } else {
    std::printf("%s %s error: %s\n", r.config_hash.substr(0, 12).c_str(), r.config.sequence.c_str(), r.message.c_str());
  }
}

int report_all(const std::vector<mf::RunRecord>& records) {
  int failed = 0;
  for (const auto& r : records) {
    report(r);
    failed += r.ok() ? 0 : 1;
  }
  std::printf("%zu runs, %d failed\n", records.size(), failed);
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice protein folding at a membrane interface"};
  app.require_subcommand(1);

  std::string config_path;
  Overrides overrides;
  std::uint64_t seed_value = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "experiment JSON")->required()->check(CLI::ExistingFile);
    sub->add_option("--solver", overrides.solver, "exact, vqe or both")
        ->check(CLI::IsMember({"exact", "vqe", "both"}));
    sub->add_option("--seed", seed_value, "master seed")->each([&](const std::string&) { overrides.seed = seed_value; });
    sub->add_option("--out", overrides.out, "output directory");
  };

  auto* run_cmd = app.add_subcommand("run", "solve one configuration");
  add_common(run_cmd);

  std::vector<double> offsets = mf::standard_offsets();
  std::vector<double> delta_ps = mf::standard_delta_ps();
  auto* sweep_cmd = app.add_subcommand("sweep", "offset x delta_p grid");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--offsets", offsets, "comma-separated interface offsets")->delimiter(',')->allow_extra_args(false);
  sweep_cmd->add_option("--delta-p", delta_ps, "comma-separated pressure differences")->delimiter(',')->allow_extra_args(false);

  auto* grid_cmd = app.add_subcommand("grid", "homogeneous, vacuum and interface runs for one sequence");
  add_common(grid_cmd);

  auto* validate_cmd = app.add_subcommand("validate", "check a configuration without solving");
  validate_cmd->add_option("--config", config_path, "experiment JSON")->required()->check(CLI::ExistingFile);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) {
      const auto cfg = mf::load_config(config_path);
      const auto layout = mf::build_layout(static_cast<int>(cfg.sequence.size()));
      auto table = mf::load_table_for(cfg);
      std::printf("ok: %s N=%zu qubits=%d (conformation %d, contact %d) mode=%s mj_sha256=%s hash=%s\n",
                  cfg.sequence.c_str(), cfg.sequence.size(), layout.qubit_count(), layout.conf_bits,
                  layout.contact_bits(), std::string(mf::to_string(cfg.mode)).c_str(), table->checksum().c_str(),
                  mf::config_hash(cfg).c_str());
      return 0;
    }
    const auto cfg = load_with_overrides(config_path, overrides);
    const std::filesystem::path out = cfg.output_dir;
    if (*run_cmd) {
      const auto rec = mf::run(cfg, out);
      report(rec);
      return rec.ok() ? 0 : 1;
    }
    if (*sweep_cmd) return report_all(mf::sweep(cfg, offsets, delta_ps, out));
    if (*grid_cmd) return report_all(mf::standard_grid(cfg, out));
  } catch (const mf::ValidationError& e) {
    std::fprintf(stderr, "invalid configuration: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
