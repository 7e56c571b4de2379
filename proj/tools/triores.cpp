#include "triores/scan.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace {

using namespace triores;

Dimension parse_dim(int d) {
    if (d == 1) return Dimension::D1;
    if (d == 3) return Dimension::D3;
    throw DomainError("dimension must be 1 or 3");
}

Sector parse_sector(Dimension d, const std::string& s) {
    if (s == "s" || s == "even") return sector_from_ell(d, 0);
    if (s == "p" || s == "odd") return sector_from_ell(d, 1);
    throw DomainError("sector must be one of: s, p, even, odd");
}

void print_levels(const std::vector<double>& levels, bool bound_only) {
    int i = 1;
    for (double e : levels) {
        if (bound_only && e >= 0.0) continue;
        std::printf("%4d  %+.12e\n", i++, e);
    }
}

int cmd_twobody(int dim_arg, const std::string& sector_arg, double v0, int nmax,
                double first, double last, bool bound_only, bool tune, int level,
                double target) {
    const Dimension d = parse_dim(dim_arg);
    const Sector sec = parse_sector(d, sector_arg);
    GaussBasisSpec spec = two_body_default_basis(d, sec);
    if (nmax > 0) spec.n_max = nmax;
    if (first > 0.0) spec.first = first;
    if (last > 0.0) spec.last = last;

    if (tune) {
        const double depth = tune_depth(d, sec, level - 1, target, spec);
        std::printf("%.12f\n", depth);
        return 0;
    }
    print_levels(bound_only ? bound_levels(spec, sec, v0, d)
                            : solve_two_body(spec, sec, v0, d),
                 false);
    return 0;
}

int cmd_thresholds(int dim_arg, double v0, bool model_only) {
    const Dimension d = parse_dim(dim_arg);
    const auto list = model_only
                          ? model_thresholds(d, v0)
                          : thresholds(v0, d,
                                       two_body_default_basis(d, sector_from_ell(d, 0)),
                                       two_body_default_basis(d, sector_from_ell(d, 1)));
    for (const auto& t : list)
        std::printf("%-4s  %+.12e\n", t.label.c_str(), t.energy);
    return 0;
}

int cmd_spectrum(int dim_arg, double beta, double v0, bool v0_set,
                 const std::vector<double>& thetas, int n_per_coord, int set,
                 const std::string& json_out) {
    const Dimension d = parse_dim(dim_arg);
    const double depth = v0_set ? v0 : default_depth(d);
    CsmOptions opt;
    if (!thetas.empty()) opt.thetas_deg = thetas;

    const ThreeBodySpace space = default_space(d, n_per_coord, set);
    const PointResult pr = analyze_point(space, beta, depth, opt);

    std::printf("# thresholds\n");
    for (const auto& t : pr.analysis.thresholds)
        std::printf("%-4s  %+.12e\n", t.label.c_str(), t.energy);
    std::printf("# discrete states (beta = %g, v0 = %g, basis %d)\n", beta, depth,
                space.size());
    std::printf("%-13s %-6s %22s %22s %12s %12s\n", "kind", "family", "Re E", "Im E",
                "Gamma", "accuracy");
    for (const auto& s : pr.analysis.states) {
        if (s.kind == StateKind::Unidentified) continue;
        std::printf("%-13s %-6s %+22.14e %+22.14e %12.4e %12.4e\n",
                    kind_name(s.kind).c_str(), s.family.empty() ? "-" : s.family.c_str(),
                    s.energy.real(), s.energy.imag(), s.gamma, s.accuracy);
    }
    if (!json_out.empty()) {
        nlohmann::json j = point_to_json(pr);
        j["dimension"] = dim_value(d);
        std::ofstream out(json_out);
        if (!out) throw Error("cannot write " + json_out);
        out << j.dump(1) << "\n";
    }
    return 0;
}

int cmd_scan(const std::string& config_path, bool resume, bool force_tilde, bool quiet) {
    ScanConfig cfg = load_config(config_path);
    if (force_tilde) cfg.scaling = ScalingKind::Tilde;
    const ScanResult r = run_scan(cfg, resume, quiet ? nullptr : &std::cerr);
    write_outputs(r);
    if (!quiet)
        std::cerr << "wrote " << r.config.output_prefix << ".csv and .json\n";
    return r.all_ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bound states and resonances of the BBX three-body system"};
    app.require_subcommand(1);

    // twobody
    auto* two = app.add_subcommand("twobody", "pair levels and depth tuning");
    int tb_dim = 3, tb_nmax = 0, tb_level = 2;
    std::string tb_sector = "s";
    double tb_v0 = 0.0, tb_first = 0.0, tb_last = 0.0, tb_target = -0.1;
    bool tb_bound = false, tb_tune = false;
    two->add_option("--dim", tb_dim, "1 or 3");
    two->add_option("--sector", tb_sector, "s|p (3D), even|odd (1D)");
    two->add_option("--v0", tb_v0, "Gaussian depth (negative)");
    two->add_option("--nmax", tb_nmax, "basis size override");
    two->add_option("--first", tb_first, "largest Gaussian range");
    two->add_option("--last", tb_last, "smallest Gaussian range");
    two->add_flag("--bound-only", tb_bound, "print bound levels only");
    two->add_flag("--tune", tb_tune, "solve for the depth instead");
    two->add_option("--level", tb_level, "1-based level pinned by --tune");
    two->add_option("--target", tb_target, "energy the tuned level must take");

    // thresholds
    auto* thr = app.add_subcommand("thresholds", "bound pair levels / break-up thresholds");
    int th_dim = 3;
    double th_v0 = 0.0;
    bool th_model = false;
    thr->add_option("--dim", th_dim, "1 or 3");
    thr->add_option("--v0", th_v0, "Gaussian depth")->required();
    thr->add_flag("--model", th_model, "restrict to thresholds visible to the model space");

    // spectrum
    auto* spc = app.add_subcommand("spectrum", "classified spectrum at one mass ratio");
    int sp_dim = 3, sp_n = 0, sp_set = 2;
    double sp_beta = 1.0, sp_v0 = 0.0;
    std::vector<double> sp_thetas;
    std::string sp_json;
    spc->add_option("--dim", sp_dim, "1 or 3");
    spc->add_option("--beta", sp_beta, "mass ratio m_b/m_x")->required();
    auto* sp_v0_opt = spc->add_option("--v0", sp_v0, "Gaussian depth (default by dimension)");
    spc->add_option("--theta", sp_thetas, "rotation angles in degrees");
    spc->add_option("--n", sp_n, "basis functions per coordinate (0 = production)");
    spc->add_option("--set", sp_set, "Jacobi set of the basis (2 or 3)");
    spc->add_option("--json", sp_json, "also dump the full point record");

    // scan / tilde-scan
    auto* scn = app.add_subcommand("scan", "mass-ratio scan from a JSON config");
    std::string scan_cfg;
    bool scan_resume = false, scan_quiet = false;
    scn->add_option("--config", scan_cfg, "JSON config path")->required();
    scn->add_flag("--resume", scan_resume, "reuse finished points from .partial.jsonl");
    scn->add_flag("--quiet", scan_quiet, "suppress progress output");

    auto* tld = app.add_subcommand("tilde-scan",
                                   "scan with the pair level re-tuned at every beta");
    std::string tilde_cfg;
    bool tilde_resume = false, tilde_quiet = false;
    tld->add_option("--config", tilde_cfg, "JSON config path")->required();
    tld->add_flag("--resume", tilde_resume, "reuse finished points");
    tld->add_flag("--quiet", tilde_quiet, "suppress progress output");

    // plotdata
    auto* pld = app.add_subcommand("plotdata", "plot-ready text files from a scan .json");
    std::string plot_input, plot_kind = "all";
    pld->add_option("--input", plot_input, "scan .json path")->required();
    pld->add_option("--kind", plot_kind, "fig2|fig3|fig4|all")
        ->check(CLI::IsMember({"fig2", "fig3", "fig4", "all"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (two->parsed())
            return cmd_twobody(tb_dim, tb_sector, tb_v0, tb_nmax, tb_first, tb_last,
                               tb_bound, tb_tune, tb_level, tb_target);
        if (thr->parsed()) return cmd_thresholds(th_dim, th_v0, th_model);
        if (spc->parsed())
            return cmd_spectrum(sp_dim, sp_beta, sp_v0, sp_v0_opt->count() > 0, sp_thetas,
                                sp_n, sp_set, sp_json);
        if (scn->parsed()) return cmd_scan(scan_cfg, scan_resume, false, scan_quiet);
        if (tld->parsed()) return cmd_scan(tilde_cfg, tilde_resume, true, tilde_quiet);
        if (pld->parsed()) {
            const int n = write_plot_data(plot_input, plot_kind);
            std::cerr << "wrote " << n << " files\n";
            return 0;
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const AnalyticityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ConditioningError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const SolverError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NoRootError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
