#pragma once

#include "triores/csm.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace triores {

// A scan walks the mass ratio grid and tracks the discrete states of the
// requested families.  "prime" scans keep one fixed pair depth; "tilde"
// scans re-tune the depth at every beta so the anchored pair level stays at
// the same tilde-scaled energy, and report all energies in tilde units.

struct ScanConfig {
    Dimension dim = Dimension::D3;
    ScalingKind scaling = ScalingKind::Prime;
    std::optional<double> v0;        // prime scans; defaults by dimension
    int anchor_level = 2;            // s-type pair level pinned in tilde scans
    double anchor_energy = -0.1;     // in the scan's own scaling
    std::vector<double> betas;
    int refine_levels = 0;           // rounds of bisection around width minima
    CsmOptions csm{};
    int n_per_coord = 0;             // 0 = production basis
    int set = 2;
    std::vector<std::string> families;   // empty = dimension defaults
    int workers = 0;                 // 0 = TRIORES_WORKERS env, then hardware
    bool dump_spectra = false;       // carry raw eigenvalue clouds into the output
    std::string output_prefix = "scan";
};

double default_depth(Dimension d);
std::vector<std::string> default_families(Dimension d);

// 80 log-spaced mass ratios over [0.05, 20]; used when a config omits the
// grid, together with three refinement rounds.
std::vector<double> default_beta_grid();

ScanConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ScanConfig& c);
ScanConfig load_config(const std::string& path);

// Stable content key of everything that affects the numbers; used to
// validate resume data.
std::string config_key(const ScanConfig& c);

struct PointOutcome {
    double beta = 0.0;
    std::optional<PointResult> result;
    std::string error;               // nonempty when the point failed
};

struct ScanResult {
    ScanConfig config;
    std::vector<PointOutcome> points;   // one per beta, in grid order

    bool all_ok() const;
};

nlohmann::json point_to_json(const PointResult& pr);
PointResult point_from_json(const nlohmann::json& j);

// Runs the grid on a small thread pool, appending each finished point to
// <prefix>.partial.jsonl.  With resume = true, points already present
// there (matching config_key) are not recomputed.
ScanResult run_scan(const ScanConfig& cfg, bool resume = false,
                    std::ostream* log = nullptr);

// <prefix>.csv (tracked families, %.16e) and <prefix>.json (full record).
void write_outputs(const ScanResult& r);

// Reads a scan .json and writes plot-ready text next to it.  Kinds:
//   fig2: eigenvalue clouds per angle plus threshold rays of slope tan(-2 theta)
//   fig3: width of the deepest state of each family against beta
//   fig4: lifetime (log-scale ready) and the resonance trajectory
//   all:  every kind above
// Files carry '#' comment headers; an empty scan still yields the headers.
// Returns the number of files written.
int write_plot_data(const std::string& json_path, const std::string& kind = "all");

} // namespace triores
