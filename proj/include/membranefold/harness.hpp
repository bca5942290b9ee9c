#pragma once

// Experiment runner: JSON configuration, solver dispatch, per-run artifacts
// (result.json, structure.xyz) and the shared summary.csv.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "membranefold/amino_acids.hpp"
#include "membranefold/checksum.hpp"
#include "membranefold/energy.hpp"
#include "membranefold/exact_solver.hpp"
#include "membranefold/hamiltonian.hpp"
#include "membranefold/lattice.hpp"
#include "membranefold/vqe.hpp"

namespace membranefold {

inline constexpr const char* kToolVersion = "0.1.0";

enum class SolverChoice { Exact, Vqe, Both };

inline std::string_view to_string(SolverChoice s) {
  switch (s) {
    case SolverChoice::Exact: return "exact";
    case SolverChoice::Vqe: return "vqe";
    case SolverChoice::Both: return "both";
  }
  return "exact";
}

inline SolverChoice parse_solver(std::string_view text) {
  if (text == "exact") return SolverChoice::Exact;
  if (text == "vqe") return SolverChoice::Vqe;
  if (text == "both") return SolverChoice::Both;
  throw ValidationError("solver", "unknown solver '" + std::string(text) + "' (expected exact, vqe or both)");
}

struct VqeSettings {
  int depth = 2;
  int restarts = 10;
  int max_iters = 500;
  std::string aggregation = "mean";
  double alpha = 0.1;
  int shots = 0;
};

struct ExperimentConfig {
  std::string sequence;
  MediumMode mode = MediumMode::Interface;
  double offset = 0.0;
  double delta_p = 1.0;
  int axis = 1;
  int orientation = -1;
  bool solvent_on = true;
  PhaseParams polar = default_polar_phase();
  PhaseParams nonpolar = default_nonpolar_phase();
  PenaltyWeights penalties;
  SolverChoice solver = SolverChoice::Exact;
  std::uint64_t seed = 7;
  VqeSettings vqe;
  double phase_threshold = 0.2;
  double scale = 1.0;
  std::string mj_table;  // empty: MEMBRANEFOLD_MJ_TABLE or the bundled file
  std::string output_dir = "runs";

  void validate() const {
    const auto residues = parse_sequence(sequence);
    if (residues.size() < 3 || residues.size() > 12) {
      throw ValidationError("sequence", "length must be between 3 and 12, got " + std::to_string(residues.size()));
    }
    if (axis < 0 || axis >= kAxisCount) throw ValidationError("axis", "must be in 0..3");
    if (orientation != 1 && orientation != -1) throw ValidationError("orientation", "must be +1 or -1");
    if (!(delta_p >= 0.0) || !std::isfinite(delta_p)) throw ValidationError("delta_p", "must be finite and non-negative");
    if (!std::isfinite(offset)) throw ValidationError("offset", "must be finite");
    if (!(penalties.backtrack > 0.0)) throw ValidationError("penalties.backtrack", "must be positive");
    if (!(penalties.overlap > 0.0)) throw ValidationError("penalties.overlap", "must be positive");
    if (!(penalties.contact > 0.0)) throw ValidationError("penalties.contact", "must be positive");
    if (vqe.depth < 0) throw ValidationError("vqe.depth", "must be >= 0");
    if (vqe.restarts < 1) throw ValidationError("vqe.restarts", "must be >= 1");
    if (vqe.max_iters < 1) throw ValidationError("vqe.max_iters", "must be >= 1");
    if (vqe.shots < 0) throw ValidationError("vqe.shots", "must be >= 0");
    if (vqe.aggregation != "mean" && vqe.aggregation != "cvar") {
      throw ValidationError("vqe.aggregation", "expected 'mean' or 'cvar'");
    }
    if (!(vqe.alpha > 0.0 && vqe.alpha <= 1.0)) throw ValidationError("vqe.alpha", "must lie in (0, 1]");
    if (!(phase_threshold >= 0.0)) throw ValidationError("phase_threshold", "must be non-negative");
    if (!(scale > 0.0)) throw ValidationError("scale", "must be positive");
  }

  Aggregation aggregation() const {
    return vqe.aggregation == "cvar" ? Aggregation::cvar(vqe.alpha) : Aggregation::mean();
  }
};

namespace detail {

using ordered_json = nlohmann::ordered_json;

template <class T>
T get_field(const nlohmann::json& obj, const std::string& key, const std::string& path, T fallback) {
  const auto it = obj.find(key);
  if (it == obj.end()) return fallback;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ValidationError(path + key, "has the wrong type");
  }
}

inline void reject_unknown(const nlohmann::json& obj, std::initializer_list<const char*> known, const std::string& path) {
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(known.begin(), known.end(), [&](const char* k) { return key == k; })) {
      throw ValidationError(path + key, "unknown field");
    }
  }
}

inline const nlohmann::json& sub_object(const nlohmann::json& obj, const std::string& key, const std::string& path) {
  static const nlohmann::json empty = nlohmann::json::object();
  const auto it = obj.find(key);
  if (it == obj.end()) return empty;
  if (!it->is_object()) throw ValidationError(path + key, "must be an object");
  return *it;
}

inline PhaseParams phase_from_json(const nlohmann::json& obj, const std::string& path, PhaseParams fallback) {
  reject_unknown(obj, {"c_s", "omega"}, path);
  return {get_field(obj, "c_s", path, fallback.contrast), get_field(obj, "omega", path, fallback.mean_interaction)};
}

inline ordered_json phase_to_json(const PhaseParams& p) { return {{"c_s", p.contrast}, {"omega", p.mean_interaction}}; }

}  // namespace detail

/// Parses and validates a configuration document. Errors name the field (or
/// the line/column for malformed JSON).
inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config", e.what());
  }
  if (!doc.is_object()) throw ValidationError("config", "top level must be an object");
  using detail::get_field;
  detail::reject_unknown(doc,
                         {"sequence", "mode", "offset", "delta_p", "axis", "orientation", "solvent_on", "polar_phase",
                          "nonpolar_phase", "penalties", "solver", "seed", "vqe", "phase_threshold", "scale", "mj_table",
                          "output_dir"},
                         "");
  ExperimentConfig cfg;
  if (!doc.contains("sequence")) throw ValidationError("sequence", "is required");
  cfg.sequence = get_field<std::string>(doc, "sequence", "", "");
  cfg.mode = parse_mode(get_field<std::string>(doc, "mode", "", std::string(to_string(cfg.mode))));
  cfg.offset = get_field(doc, "offset", "", cfg.offset);
  cfg.delta_p = get_field(doc, "delta_p", "", cfg.delta_p);
  cfg.axis = get_field(doc, "axis", "", cfg.axis);
  cfg.orientation = get_field(doc, "orientation", "", cfg.orientation);
  cfg.solvent_on = get_field(doc, "solvent_on", "", cfg.solvent_on);
  cfg.polar = detail::phase_from_json(detail::sub_object(doc, "polar_phase", ""), "polar_phase.", cfg.polar);
  cfg.nonpolar = detail::phase_from_json(detail::sub_object(doc, "nonpolar_phase", ""), "nonpolar_phase.", cfg.nonpolar);
  const auto& pen = detail::sub_object(doc, "penalties", "");
  detail::reject_unknown(pen, {"backtrack", "overlap", "contact"}, "penalties.");
  cfg.penalties.backtrack = get_field(pen, "backtrack", "penalties.", cfg.penalties.backtrack);
  cfg.penalties.overlap = get_field(pen, "overlap", "penalties.", cfg.penalties.overlap);
  cfg.penalties.contact = get_field(pen, "contact", "penalties.", cfg.penalties.contact);
  cfg.solver = parse_solver(get_field<std::string>(doc, "solver", "", std::string(to_string(cfg.solver))));
  cfg.seed = get_field(doc, "seed", "", cfg.seed);
  const auto& vqe = detail::sub_object(doc, "vqe", "");
  detail::reject_unknown(vqe, {"depth", "restarts", "max_iters", "aggregation", "alpha", "shots"}, "vqe.");
  cfg.vqe.depth = get_field(vqe, "depth", "vqe.", cfg.vqe.depth);
  cfg.vqe.restarts = get_field(vqe, "restarts", "vqe.", cfg.vqe.restarts);
  cfg.vqe.max_iters = get_field(vqe, "max_iters", "vqe.", cfg.vqe.max_iters);
  cfg.vqe.aggregation = get_field(vqe, "aggregation", "vqe.", cfg.vqe.aggregation);
  cfg.vqe.alpha = get_field(vqe, "alpha", "vqe.", cfg.vqe.alpha);
  cfg.vqe.shots = get_field(vqe, "shots", "vqe.", cfg.vqe.shots);
  cfg.phase_threshold = get_field(doc, "phase_threshold", "", cfg.phase_threshold);
  cfg.scale = get_field(doc, "scale", "", cfg.scale);
  cfg.mj_table = get_field(doc, "mj_table", "", cfg.mj_table);
  cfg.output_dir = get_field(doc, "output_dir", "", cfg.output_dir);
  cfg.validate();
  return cfg;
}

inline ExperimentConfig load_config(const std::string& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ValidationError("config", e.what());
  }
  return parse_config(text);
}

/// Snapshot of everything that determines a run's result. The output
/// directory is deliberately absent.
inline nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
  return {
      {"sequence", cfg.sequence},
      {"mode", to_string(cfg.mode)},
      {"offset", cfg.offset},
      {"delta_p", cfg.delta_p},
      {"axis", cfg.axis},
      {"orientation", cfg.orientation},
      {"solvent_on", cfg.solvent_on},
      {"polar_phase", detail::phase_to_json(cfg.polar)},
      {"nonpolar_phase", detail::phase_to_json(cfg.nonpolar)},
      {"penalties",
       {{"backtrack", cfg.penalties.backtrack}, {"overlap", cfg.penalties.overlap}, {"contact", cfg.penalties.contact}}},
      {"solver", to_string(cfg.solver)},
      {"seed", cfg.seed},
      {"vqe",
       {{"depth", cfg.vqe.depth},
        {"restarts", cfg.vqe.restarts},
        {"max_iters", cfg.vqe.max_iters},
        {"aggregation", cfg.vqe.aggregation},
        {"alpha", cfg.vqe.alpha},
        {"shots", cfg.vqe.shots}}},
      {"phase_threshold", cfg.phase_threshold},
      {"scale", cfg.scale},
      {"mj_table", cfg.mj_table},
  };
}

inline std::string config_hash(const ExperimentConfig& cfg) { return sha256_hex(config_to_json(cfg).dump()); }

inline std::shared_ptr<const MJTable> load_table_for(const ExperimentConfig& cfg) {
  static std::mutex mutex;
  static std::map<std::string, std::shared_ptr<const MJTable>> cache;
  const std::string path = cfg.mj_table.empty() ? default_mj_table_path() : cfg.mj_table;
  std::lock_guard lock(mutex);
  auto& slot = cache[path];
  if (!slot) slot = std::make_shared<const MJTable>(MJTable::load(path));
  return slot;
}

inline HamiltonianConfig hamiltonian_config(const ExperimentConfig& cfg, std::shared_ptr<const MJTable> table) {
  HamiltonianConfig h;
  h.sequence = parse_sequence(cfg.sequence);
  h.interface.axis = cfg.axis;
  h.interface.offset = cfg.offset;
  h.interface.orientation = static_cast<Orientation>(cfg.orientation);
  h.interface.delta_p = cfg.delta_p;
  h.interface.polar = cfg.polar;
  h.interface.nonpolar = cfg.nonpolar;
  h.interface.solvent_on = cfg.solvent_on;
  h.penalties = cfg.penalties;
  h.mode = cfg.mode;
  h.table = std::move(table);
  return h;
}

/// Largest end-to-end lattice d^2 over all self-avoiding conformations.
inline int max_feasible_end_to_end_d2(int residues) {
  static std::mutex mutex;
  static std::map<int, int> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(residues); it != cache.end()) return it->second;
  const int width = conformation_bit_count(residues);
  int best = 0;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << width); ++c) {
    const TurnSequence seq = decode_turns(bits_from_index(c, width), residues);
    if (!is_self_avoiding(seq)) continue;
    best = std::max(best, lattice_distance_sq(seq, 1, residues));
  }
  cache[residues] = best;
  return best;
}

enum class PhaseLabel { Nonpolar, Interfacial, Polar };

inline std::string_view to_string(PhaseLabel p) {
  switch (p) {
    case PhaseLabel::Nonpolar: return "nonpolar";
    case PhaseLabel::Interfacial: return "interfacial";
    case PhaseLabel::Polar: return "polar";
  }
  return "interfacial";
}

inline PhaseLabel phase_label(double s_hat, double threshold) {
  if (s_hat < -threshold) return PhaseLabel::Nonpolar;
  if (s_hat > threshold) return PhaseLabel::Polar;
  return PhaseLabel::Interfacial;
}

struct ConformationMetrics {
  int end_to_end_d2 = 0;
  int max_end_to_end_d2 = 0;
  bool extended = false;
  double radius_of_gyration = 0.0;
  std::vector<double> displacement;
  std::vector<double> s_hat;
  std::vector<PhaseLabel> phase;
  int nonpolar = 0;
  int interfacial = 0;
  int polar = 0;
};

inline double radius_of_gyration(const std::vector<Vec3>& coords) {
  Vec3 centre;
  for (const auto& r : coords) {
    centre.x += r.x;
    centre.y += r.y;
    centre.z += r.z;
  }
  const double n = static_cast<double>(coords.size());
  centre = {centre.x / n, centre.y / n, centre.z / n};
  double total = 0.0;
  for (const auto& r : coords) total += norm_sq(r - centre);
  return std::sqrt(total / n);
}

inline ConformationMetrics classify(const TurnSequence& seq, const InterfaceParams& ip, double threshold = 0.2) {
  ConformationMetrics m;
  const int n = seq.residues();
  m.end_to_end_d2 = lattice_distance_sq(seq, 1, n);
  m.max_end_to_end_d2 = max_feasible_end_to_end_d2(n);
  m.extended = m.end_to_end_d2 == m.max_end_to_end_d2;
  m.radius_of_gyration = radius_of_gyration(cartesian_embed(seq, 1.0));
  for (int j = 1; j <= n; ++j) {
    const double dn = axis_displacement(seq, j, ip.axis, ip.offset, ip.orientation);
    const double s = sign_poly(dn);
    const PhaseLabel label = phase_label(s, threshold);
    m.displacement.push_back(dn);
    m.s_hat.push_back(s);
    m.phase.push_back(label);
    switch (label) {
      case PhaseLabel::Nonpolar: ++m.nonpolar; break;
      case PhaseLabel::Interfacial: ++m.interfacial; break;
      case PhaseLabel::Polar: ++m.polar; break;
    }
  }
  return m;
}

namespace detail {
inline std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v == 0.0 ? 0.0 : v);
  std::string s(buf);
  return s == "-0.000000" ? "0.000000" : s;
}
}  // namespace detail

/// Standard XYZ text: count, comment, then `C x y z # <letter> <index>`.
inline std::string export_xyz(const std::vector<Vec3>& coords, const ResidueSequence& labels, const std::string& comment) {
  if (labels.size() != coords.size()) throw LengthMismatchError("one label per bead required");
  std::string out = std::to_string(coords.size()) + "\n" + comment + "\n";
  for (std::size_t k = 0; k < coords.size(); ++k) {
    out += "C " + detail::fixed6(coords[k].x) + " " + detail::fixed6(coords[k].y) + " " + detail::fixed6(coords[k].z) +
           " # " + code_of(labels[k]) + " " + std::to_string(k + 1) + "\n";
  }
  return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error("write failed for '" + path.string() + "'");
}

struct RunRecord {
  ExperimentConfig config;
  std::string config_hash;
  std::string status = "ok";
  std::string message;
  QubitLayout layout;
  BitVector best_bits;
  EnergyBreakdown breakdown;
  ConformationMetrics metrics;
  std::optional<ExactResult> exact;
  std::optional<VqeResult> vqe;
  std::string mj_checksum;
  double wall_time_s = 0.0;
  std::string timestamp;
  std::filesystem::path run_dir;
  std::string xyz;

  bool ok() const { return status == "ok"; }

  /// result.json content. Everything except "timing" is a pure function of
  /// the configuration.
  nlohmann::ordered_json to_json() const {
    using detail::ordered_json;
    ordered_json j;
    j["tool_version"] = kToolVersion;
    j["config_hash"] = config_hash;
    j["config"] = config_to_json(config);
    j["status"] = status;
    if (!message.empty()) j["message"] = message;
    j["mj_table_sha256"] = mj_checksum;
    ordered_json pairs = ordered_json::array();
    for (const auto& p : layout.contact_pairs) pairs.push_back({p.i, p.j});
    j["layout"] = {{"n_q", layout.qubit_count()}, {"conf_bits", layout.conf_bits}, {"contact_pairs", pairs}};
    if (ok()) {
      j["best_bits"] = to_string(best_bits);
      const TurnSequence seq = decode_turns(std::span(best_bits).first(layout.conf_bits), layout.residues);
      j["turns"] = seq.turns;
      j["breakdown"] = {{"gc", breakdown.gc},
                        {"ch", breakdown.ch},
                        {"in", breakdown.in},
                        {"sol", breakdown.sol},
                        {"total", breakdown.total}};
      std::vector<std::string> phases;
      for (auto p : metrics.phase) phases.emplace_back(to_string(p));
      j["per_bead"] = {{"dn", metrics.displacement}, {"s_hat", metrics.s_hat}, {"phase", phases}};
      j["metrics"] = {{"end_to_end_d2", metrics.end_to_end_d2},
                      {"max_end_to_end_d2", metrics.max_end_to_end_d2},
                      {"extended", metrics.extended},
                      {"radius_of_gyration", metrics.radius_of_gyration},
                      {"n_nonpolar", metrics.nonpolar},
                      {"n_interfacial", metrics.interfacial},
                      {"n_polar", metrics.polar},
                      {"phase_threshold", config.phase_threshold}};
      ordered_json trace = ordered_json::object();
      if (exact) {
        trace["exact"] = {{"states_scanned", exact->states_scanned},
                          {"best_bits", to_string(exact->best_bits)},
                          {"best_total", exact->best_breakdown.total}};
      }
      if (vqe) {
        trace["vqe"] = {{"ansatz", {{"kind", "ry-cz-linear"}, {"depth", vqe->ansatz.depth}, {"n_qubits", vqe->ansatz.n_qubits}}},
                        {"optimizer", "nelder-mead"},
                        {"aggregation", vqe->aggregation.kind == Aggregation::Kind::CVaR ? "cvar" : "mean"},
                        {"alpha", vqe->aggregation.alpha},
                        {"shots", vqe->shots},
                        {"seed", vqe->seed},
                        {"evaluations", vqe->evaluations},
                        {"first_hit_evaluation", vqe->first_hit_evaluation},
                        {"best_bits", to_string(vqe->best_bits)},
                        {"best_energy", vqe->best_energy},
                        {"best_objective", vqe->best_objective},
                        {"restart_traces", vqe->traces}};
      }
      j["solver_trace"] = trace;
    }
    j["timing"] = {{"wall_time_s", wall_time_s}, {"timestamp", timestamp}};
    return j;
  }
};

inline const std::vector<std::string>& summary_columns() {
  static const std::vector<std::string> cols{
      "config_hash", "sequence",      "mode",        "offset",       "delta_p",       "solver",
      "status",      "best_bits",     "e_gc",        "e_ch",         "e_in",          "e_sol",
      "total",       "end_to_end_d2", "extended",    "radius_of_gyration", "n_nonpolar", "n_interfacial",
      "n_polar",     "vqe_best_energy", "message"};
  return cols;
}

namespace detail {
inline std::string csv_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline std::string csv_text(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}
}  // namespace detail

inline std::string summary_row(const RunRecord& r) {
  using detail::csv_number;
  std::vector<std::string> f{r.config_hash,
                             r.config.sequence,
                             std::string(to_string(r.config.mode)),
                             csv_number(r.config.offset),
                             csv_number(r.config.delta_p),
                             std::string(to_string(r.config.solver)),
                             r.status};
  if (r.ok()) {
    f.insert(f.end(), {to_string(r.best_bits), csv_number(r.breakdown.gc), csv_number(r.breakdown.ch),
                       csv_number(r.breakdown.in), csv_number(r.breakdown.sol), csv_number(r.breakdown.total),
                       std::to_string(r.metrics.end_to_end_d2), r.metrics.extended ? "1" : "0",
                       csv_number(r.metrics.radius_of_gyration), std::to_string(r.metrics.nonpolar),
                       std::to_string(r.metrics.interfacial), std::to_string(r.metrics.polar),
                       r.vqe ? csv_number(r.vqe->best_energy) : ""});
  } else {
    f.insert(f.end(), 13, "");
  }
  f.push_back(detail::csv_text(r.message));
  std::string line;
  for (std::size_t k = 0; k < f.size(); ++k) line += (k ? "," : "") + f[k];
  return line;
}

/// Appends one row, writing the header first if the file is new.
inline void append_summary(const std::filesystem::path& csv, const RunRecord& record) {
  static std::mutex mutex;
  std::lock_guard lock(mutex);
  const bool fresh = !std::filesystem::exists(csv) || std::filesystem::file_size(csv) == 0;
  std::ofstream out(csv, std::ios::app | std::ios::binary);
  if (!out) throw Error("cannot append to '" + csv.string() + "'");
  if (fresh) {
    const auto& cols = summary_columns();
    for (std::size_t k = 0; k < cols.size(); ++k) out << (k ? "," : "") << cols[k];
    out << "\n";
  }
  out << summary_row(record) << "\n";
}

inline std::string run_directory_name(const std::string& hash) { return "run-" + hash.substr(0, 12); }

/// Solves one configuration and fills the record; never touches the disk.
inline RunRecord solve(const ExperimentConfig& cfg) {
  RunRecord rec;
  rec.config = cfg;
  rec.config_hash = config_hash(cfg);
  const auto start = std::chrono::steady_clock::now();
  {
    const std::time_t now = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    rec.timestamp = buf;
  }
  try {
    cfg.validate();
    auto table = load_table_for(cfg);
    rec.mj_checksum = table->checksum();
    const HamiltonianConfig hcfg = hamiltonian_config(cfg, table);
    const EnergyModel model(hcfg);
    rec.layout = model.layout();

    if (cfg.solver != SolverChoice::Vqe) rec.exact = exact_ground_state(hcfg);
    if (cfg.solver != SolverChoice::Exact) {
      VqeOptions opt;
      opt.max_iters = cfg.vqe.max_iters;
      opt.restarts = cfg.vqe.restarts;
      opt.seed = cfg.seed;
      opt.aggregation = cfg.aggregation();
      opt.shots = cfg.vqe.shots;
      rec.vqe = vqe_minimize(hcfg, AnsatzSpec{rec.layout.qubit_count(), cfg.vqe.depth}, opt);
    }
    if (rec.exact && rec.vqe && rec.exact->best_breakdown.total > rec.vqe->best_energy) {
      throw Error("VQE energy " + std::to_string(rec.vqe->best_energy) + " is below the exact minimum " +
                  std::to_string(rec.exact->best_breakdown.total));
    }
    rec.best_bits = rec.exact ? rec.exact->best_bits : rec.vqe->best_bits;
    rec.breakdown = model.evaluate(rec.best_bits);
    const TurnSequence seq = model.turns(std::span(rec.best_bits).first(rec.layout.conf_bits));
    rec.metrics = classify(seq, model.interface(), cfg.phase_threshold);
    const auto& ip = model.interface();
    const auto& v = kTetrahedralAxes[static_cast<std::size_t>(ip.axis)];
    std::ostringstream comment;
    comment << "config_hash=" << rec.config_hash << " interface_axis=" << ip.axis << " normal=(" << v[0] << ","
            << v[1] << "," << v[2] << ")/sqrt(3) bead1_offset=" << ip.offset
            << " orientation=" << static_cast<int>(ip.orientation) << " scale=" << cfg.scale;
    rec.xyz = export_xyz(cartesian_embed(seq, cfg.scale), hcfg.sequence, comment.str());
  } catch (const Error& e) {
    rec.status = "error";
    rec.message = e.what();
  }
  rec.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

/// Writes result.json and structure.xyz into `dir`.
inline void write_artifacts(RunRecord& rec, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  rec.run_dir = dir;
  write_text(dir / "result.json", rec.to_json().dump(2) + "\n");
  if (rec.ok()) write_text(dir / "structure.xyz", rec.xyz);
}

/// Runs one configuration under `out_dir`/run-<hash>/ and appends to
/// `out_dir`/summary.csv.
inline RunRecord run(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
  RunRecord rec = solve(cfg);
  write_artifacts(rec, out_dir / run_directory_name(rec.config_hash));
  append_summary(out_dir / "summary.csv", rec);
  return rec;
}

inline RunRecord run(const ExperimentConfig& cfg) { return run(cfg, cfg.output_dir); }

/// Cartesian product offsets x delta_p, offsets outermost. Failed runs are
/// recorded with status "error" and the sweep continues.
inline std::vector<RunRecord> sweep(const ExperimentConfig& base, const std::vector<double>& offsets,
                                    const std::vector<double>& delta_ps, const std::filesystem::path& out_dir) {
  if (offsets.empty() || delta_ps.empty()) throw ValidationError("sweep", "offset and delta_p lists must be non-empty");
  std::vector<RunRecord> records;
  for (double offset : offsets) {
    for (double dp : delta_ps) {
      ExperimentConfig cfg = base;
      cfg.offset = offset;
      cfg.delta_p = dp;
      records.push_back(run(cfg, out_dir));
    }
  }
  return records;
}

inline const std::vector<double>& standard_offsets() {
  static const std::vector<double> v{-1.0, -0.5, 0.0, 0.5, 1.0};
  return v;
}

inline const std::vector<double>& standard_delta_ps() {
  static const std::vector<double> v{0.1, 1.0, 10.0};
  return v;
}

/// Hydrophobic, charged and mixed 10-residue test peptides.
inline const std::vector<std::string>& standard_sequences() {
  static const std::vector<std::string> v{"WLWLWLWWLW", "DRDRDRDRDR", "WRDWGSGWDR"};
  return v;
}

/// The three homogeneous/vacuum runs plus the interface offset x delta_p
/// sweep for the base sequence.
inline std::vector<RunRecord> standard_grid(const ExperimentConfig& base, const std::filesystem::path& out_dir) {
  std::vector<RunRecord> records;
  for (auto mode : {MediumMode::HomogeneousPolar, MediumMode::HomogeneousNonpolar, MediumMode::VacuumMJ}) {
    ExperimentConfig cfg = base;
    cfg.mode = mode;
    cfg.offset = 0.0;
    records.push_back(run(cfg, out_dir));
  }
  ExperimentConfig iface = base;
  iface.mode = MediumMode::Interface;
  for (auto& r : sweep(iface, standard_offsets(), standard_delta_ps(), out_dir)) records.push_back(std::move(r));
  return records;
}

}  // namespace membranefold
