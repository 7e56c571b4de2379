#include "triores/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace triores {

namespace fs = std::filesystem;
using nlohmann::json;

double default_depth(Dimension d) { return d == Dimension::D3 ? -19.77 : -5.44; }

std::vector<std::string> default_families(Dimension d) {
    if (d == Dimension::D3) return {"2s"};
    return {"1p", "2s"};
}

std::vector<double> default_beta_grid() {
    const int count = 80;
    const double lo = 0.05, hi = 20.0;
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    return out;
}

namespace {

std::string fmt16(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

std::vector<double> parse_betas(const json& j) {
    if (j.is_array()) {
        std::vector<double> out;
        for (const auto& v : j) out.push_back(v.get<double>());
        if (out.empty()) throw DomainError("empty beta grid");
        return out;
    }
    if (!j.is_object()) throw DomainError("betas must be an array or a grid object");
    const double lo = j.at("min").get<double>();
    const double hi = j.at("max").get<double>();
    const int count = j.at("count").get<int>();
    const std::string spacing = j.value("spacing", "log");
    if (count < 1 || !(lo > 0.0) || !(hi >= lo))
        throw DomainError("invalid beta grid specification");
    std::vector<double> out(count);
    if (count == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < count; ++i) {
        const double t = static_cast<double>(i) / (count - 1);
        out[i] = spacing == "linear" ? lo + t * (hi - lo)
                                     : lo * std::pow(hi / lo, t);
    }
    return out;
}

int resolve_workers(int cfg) {
    if (cfg > 0) return cfg;
    if (const char* env = std::getenv("TRIORES_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned h = std::thread::hardware_concurrency();
    return h > 0 ? static_cast<int>(h) : 1;
}

StateKind kind_from_name(const std::string& s) {
    if (s == "bound") return StateKind::Bound;
    if (s == "resonance") return StateKind::Resonance;
    if (s == "continuum") return StateKind::Continuum;
    return StateKind::Unidentified;
}

json state_to_json(const CsmState& s) {
    json j;
    j["kind"] = kind_name(s.kind);
    j["family"] = s.family;
    j["e_re"] = s.energy.real();
    j["e_im"] = s.energy.imag();
    j["gamma"] = s.gamma;
    if (std::isinf(s.tau))
        j["tau"] = nullptr;
    else
        j["tau"] = s.tau;
    j["accuracy"] = s.accuracy;
    json mem = json::array();
    for (cplx e : s.members) mem.push_back({e.real(), e.imag()});
    j["members"] = mem;
    return j;
}

CsmState state_from_json(const json& j) {
    CsmState s;
    s.kind = kind_from_name(j.at("kind").get<std::string>());
    s.family = j.at("family").get<std::string>();
    s.energy = cplx(j.at("e_re").get<double>(), j.at("e_im").get<double>());
    s.gamma = j.at("gamma").get<double>();
    s.tau = j.at("tau").is_null() ? std::numeric_limits<double>::infinity()
                                  : j.at("tau").get<double>();
    s.accuracy = j.at("accuracy").get<double>();
    for (const auto& m : j.at("members"))
        s.members.push_back(cplx(m.at(0).get<double>(), m.at(1).get<double>()));
    return s;
}

// Presentation of one state in the configured scaling.
struct Presented {
    double re, im, gamma, tau, acc;
};

Presented present(const CsmState& s, double beta, ScalingKind sc, Dimension d) {
    const double f = sc == ScalingKind::Tilde ? tilde_factor(beta, d) : 1.0;
    Presented p;
    p.re = f * s.energy.real();
    p.im = f * s.energy.imag();
    p.gamma = f * s.gamma;
    p.acc = f * s.accuracy;
    p.tau = s.kind == StateKind::Bound ? std::numeric_limits<double>::infinity()
                                       : lifetime_from_width(p.gamma, p.acc);
    return p;
}

} // namespace

ScanConfig config_from_json(const json& j) {
    ScanConfig c;
    const int dim = j.value("dimension", 3);
    if (dim != 1 && dim != 3) throw DomainError("dimension must be 1 or 3");
    c.dim = dim == 3 ? Dimension::D3 : Dimension::D1;
    const std::string sc = j.value("scaling", "prime");
    if (sc != "prime" && sc != "tilde")
        throw DomainError("scaling must be 'prime' or 'tilde'");
    c.scaling = sc == "prime" ? ScalingKind::Prime : ScalingKind::Tilde;
    if (j.contains("v0") && !j.at("v0").is_null()) c.v0 = j.at("v0").get<double>();
    if (j.contains("anchor")) {
        c.anchor_level = j.at("anchor").value("level", 2);
        c.anchor_energy = j.at("anchor").value("energy", -0.1);
    }
    if (j.contains("betas") && !j.at("betas").is_null()) {
        c.betas = parse_betas(j.at("betas"));
        c.refine_levels = 0;
    } else {
        c.betas = default_beta_grid();
        c.refine_levels = 3;
    }
    c.refine_levels = j.value("refine_levels", c.refine_levels);
    if (c.refine_levels < 0 || c.refine_levels > 8)
        throw DomainError("refine_levels outside [0, 8]");
    for (double b : c.betas) check_beta(b);
    if (j.contains("thetas_deg"))
        c.csm.thetas_deg = j.at("thetas_deg").get<std::vector<double>>();
    c.csm.resonance_tol = j.value("resonance_tol", c.csm.resonance_tol);
    c.csm.bound_tol = j.value("bound_tol", c.csm.bound_tol);
    c.csm.corridor_deg = j.value("corridor_deg", c.csm.corridor_deg);
    c.csm.re_max = j.value("re_max", c.csm.re_max);
    c.csm.eig.sigma_cut = j.value("sigma_cut", c.csm.eig.sigma_cut);
    c.csm.eig.max_drop_fraction = j.value("max_drop_fraction", c.csm.eig.max_drop_fraction);
    c.csm.basis_variation = j.value("basis_variation", false);
    c.n_per_coord = j.value("n_per_coord", 0);
    c.set = j.value("set", 2);
    if (j.contains("families"))
        c.families = j.at("families").get<std::vector<std::string>>();
    c.workers = j.value("workers", 0);
    c.dump_spectra = j.value("dump_spectra", false);
    c.output_prefix = j.value("output_prefix", std::string("scan"));
    return c;
}

json config_to_json(const ScanConfig& c) {
    json j;
    j["dimension"] = dim_value(c.dim);
    j["scaling"] = c.scaling == ScalingKind::Prime ? "prime" : "tilde";
    if (c.v0)
        j["v0"] = *c.v0;
    else
        j["v0"] = nullptr;
    j["anchor"] = {{"level", c.anchor_level}, {"energy", c.anchor_energy}};
    j["betas"] = c.betas;
    j["refine_levels"] = c.refine_levels;
    j["thetas_deg"] = c.csm.thetas_deg;
    j["resonance_tol"] = c.csm.resonance_tol;
    j["bound_tol"] = c.csm.bound_tol;
    j["corridor_deg"] = c.csm.corridor_deg;
    j["re_max"] = c.csm.re_max;
    j["sigma_cut"] = c.csm.eig.sigma_cut;
    j["max_drop_fraction"] = c.csm.eig.max_drop_fraction;
    j["basis_variation"] = c.csm.basis_variation;
    j["n_per_coord"] = c.n_per_coord;
    j["set"] = c.set;
    j["families"] = c.families.empty() ? default_families(c.dim) : c.families;
    j["workers"] = c.workers;
    j["dump_spectra"] = c.dump_spectra;
    j["output_prefix"] = c.output_prefix;
    return j;
}

ScanConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DomainError("config parse error: " + std::string(e.what()));
    }
    return config_from_json(j);
}

std::string config_key(const ScanConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << dim_value(c.dim) << "|" << (c.scaling == ScalingKind::Prime ? "p" : "t") << "|";
    if (c.v0)
        os << *c.v0;
    else
        os << "auto";
    os << "|" << c.anchor_level << "," << c.anchor_energy << "|b:";
    for (double b : c.betas) os << b << ",";
    os << "|r" << c.refine_levels << "|t:";
    for (double t : c.csm.thetas_deg) os << t << ",";
    os << "|" << c.csm.resonance_tol << "," << c.csm.bound_tol << ","
       << c.csm.corridor_deg << "," << c.csm.re_max << "," << c.csm.eig.sigma_cut << ","
       << c.csm.eig.max_drop_fraction << "|v" << (c.csm.basis_variation ? 1 : 0)
       << "|d" << (c.dump_spectra ? 1 : 0) << "|n" << c.n_per_coord << "|s" << c.set;
    os << "|f:";
    for (const auto& f : c.families) os << f << ",";
    const size_t h = std::hash<std::string>{}(os.str());
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016zx", h);
    return buf;
}

bool ScanResult::all_ok() const {
    for (const auto& p : points)
        if (!p.error.empty() || !p.result) return false;
    return true;
}

json point_to_json(const PointResult& pr) {
    json j;
    j["beta"] = pr.beta;
    j["v0"] = pr.v0;
    j["thetas_deg"] = pr.analysis.thetas_deg;
    j["n_continuum"] = pr.analysis.n_continuum;
    json th = json::array();
    for (const auto& t : pr.analysis.thresholds)
        th.push_back({{"label", t.label},
                      {"energy", t.energy},
                      {"ell", sector_ell(t.sector)},
                      {"n", t.n}});
    j["thresholds"] = th;
    json st = json::array();
    for (const auto& s : pr.analysis.states) st.push_back(state_to_json(s));
    j["states"] = st;
    if (!pr.spectra.empty()) {
        json sp = json::array();
        for (const auto& list : pr.spectra) {
            json one = json::array();
            for (cplx e : list) one.push_back({e.real(), e.imag()});
            sp.push_back(one);
        }
        j["spectra"] = sp;
    }
    return j;
}

PointResult point_from_json(const json& j) {
    PointResult pr;
    pr.beta = j.at("beta").get<double>();
    pr.v0 = j.at("v0").get<double>();
    pr.analysis.thetas_deg = j.at("thetas_deg").get<std::vector<double>>();
    pr.analysis.n_continuum = j.value("n_continuum", 0);
    Dimension d = Dimension::D3;   // sector reconstruction needs the dimension
    if (j.contains("dimension")) d = j.at("dimension").get<int>() == 1 ? Dimension::D1 : Dimension::D3;
    for (const auto& t : j.at("thresholds")) {
        Threshold th;
        th.label = t.at("label").get<std::string>();
        th.energy = t.at("energy").get<double>();
        th.n = t.at("n").get<int>();
        th.sector = sector_from_ell(d, t.at("ell").get<int>());
        pr.analysis.thresholds.push_back(th);
    }
    for (const auto& s : j.at("states"))
        pr.analysis.states.push_back(state_from_json(s));
    if (j.contains("spectra")) {
        for (const auto& list : j.at("spectra")) {
            std::vector<cplx> one;
            for (const auto& e : list)
                one.push_back(cplx(e.at(0).get<double>(), e.at(1).get<double>()));
            pr.spectra.push_back(std::move(one));
        }
    }
    return pr;
}

namespace {

// Geometric midpoints flanking every interior local minimum of the tracked
// widths.  Peak lifetimes live exactly where the width dips, so those are
// the stretches worth sampling more densely.
std::vector<double> refine_candidates(const ScanResult& res, const ScanConfig& c) {
    std::vector<double> present;
    for (const auto& p : res.points) present.push_back(p.beta);
    auto have = [&](double b) {
        for (double x : present)
            if (std::abs(x - b) <= 1e-9 * b) return true;
        return false;
    };

    std::vector<const PointOutcome*> rows;
    for (const auto& p : res.points)
        if (p.result) rows.push_back(&p);
    std::sort(rows.begin(), rows.end(), [](const PointOutcome* a, const PointOutcome* b) {
        return a->beta < b->beta;
    });

    std::vector<double> out;
    for (const auto& fam : c.families) {
        std::vector<std::pair<double, double>> curve;   // (beta, width)
        for (const auto* p : rows) {
            const auto st = deepest_state(p->result->analysis, fam);
            if (st) curve.push_back({p->beta, st->gamma});
        }
        for (size_t i = 1; i + 1 < curve.size(); ++i) {
            if (!(curve[i].second < curve[i - 1].second) ||
                !(curve[i].second <= curve[i + 1].second))
                continue;
            for (double mid : {std::sqrt(curve[i - 1].first * curve[i].first),
                               std::sqrt(curve[i].first * curve[i + 1].first)}) {
                if (!have(mid)) {
                    out.push_back(mid);
                    present.push_back(mid);
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

ScanResult run_scan(const ScanConfig& cfg, bool resume, std::ostream* log) {
    ScanConfig c = cfg;
    if (c.families.empty()) c.families = default_families(c.dim);
    if (c.scaling == ScalingKind::Prime && !c.v0) c.v0 = default_depth(c.dim);
    c.csm.keep_spectra = c.dump_spectra;

    const std::string key = config_key(c);
    const fs::path prefix(c.output_prefix);
    if (prefix.has_parent_path()) fs::create_directories(prefix.parent_path());
    const fs::path partial = prefix.string() + ".partial.jsonl";

    ScanResult res;
    res.config = c;
    res.points.resize(c.betas.size());
    for (size_t i = 0; i < c.betas.size(); ++i) res.points[i].beta = c.betas[i];

    // Pick up finished points from an earlier run (refined betas included).
    std::map<double, PointResult> done;
    if (resume && fs::exists(partial)) {
        std::ifstream in(partial);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j;
            try {
                j = json::parse(line);
            } catch (const json::exception&) {
                continue;
            }
            if (j.value("key", "") != key || !j.contains("point")) continue;
            json pj = j.at("point");
            pj["dimension"] = dim_value(c.dim);
            done[j.value("beta", -1.0)] = point_from_json(pj);
        }
    } else if (fs::exists(partial)) {
        fs::remove(partial);
    }

    const ThreeBodySpace space = default_space(c.dim, c.n_per_coord, c.set);
    const GaussBasisSpec anchor_basis =
        two_body_default_basis(c.dim, sector_from_ell(c.dim, 0));

    std::mutex io;
    std::ofstream part(partial, std::ios::app);

    auto run_range = [&](size_t first) {
        std::atomic<size_t> next{first};
        auto work = [&]() {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= res.points.size()) return;
                PointOutcome& out = res.points[i];
                const auto it = done.find(out.beta);
                if (it != done.end()) {
                    out.result = it->second;
                    out.error.clear();
                    if (log) {
                        std::lock_guard<std::mutex> lk(io);
                        *log << "beta " << out.beta << ": resumed\n";
                    }
                    continue;
                }
                try {
                    double v0;
                    if (c.scaling == ScalingKind::Prime) {
                        v0 = *c.v0;
                    } else {
                        const double target =
                            tilde_to_prime(c.anchor_energy, out.beta, c.dim);
                        v0 = tune_depth(c.dim, sector_from_ell(c.dim, 0),
                                        c.anchor_level - 1, target, anchor_basis);
                    }
                    out.result = analyze_point(space, out.beta, v0, c.csm);
                    std::lock_guard<std::mutex> lk(io);
                    json line;
                    line["key"] = key;
                    line["beta"] = out.beta;
                    line["point"] = point_to_json(*out.result);
                    part << line.dump() << "\n";
                    part.flush();
                    if (log)
                        *log << "beta " << out.beta << ": "
                             << out.result->analysis.states.size()
                             << " discrete states\n";
                } catch (const std::exception& e) {
                    out.error = e.what();
                    std::lock_guard<std::mutex> lk(io);
                    if (log) *log << "beta " << out.beta << ": FAILED: " << e.what() << "\n";
                }
            }
        };
        const int nw = std::min<int>(resolve_workers(c.workers),
                                     static_cast<int>(res.points.size() - first));
        if (nw <= 1) {
            work();
        } else {
            std::vector<std::thread> pool;
            for (int t = 0; t < nw; ++t) pool.emplace_back(work);
            for (auto& t : pool) t.join();
        }
    };

    run_range(0);

    for (int round = 0; round < c.refine_levels; ++round) {
        const std::vector<double> extra = refine_candidates(res, c);
        if (extra.empty()) break;
        const size_t first = res.points.size();
        for (double b : extra) {
            PointOutcome p;
            p.beta = b;
            res.points.push_back(std::move(p));
        }
        if (log) *log << "refinement round " << round + 1 << ": " << extra.size()
                      << " extra points\n";
        run_range(first);
    }

    std::sort(res.points.begin(), res.points.end(),
              [](const PointOutcome& a, const PointOutcome& b) { return a.beta < b.beta; });
    return res;
}

void write_outputs(const ScanResult& r) {
    const ScanConfig& c = r.config;
    const std::vector<std::string> fams =
        c.families.empty() ? default_families(c.dim) : c.families;

    json j;
    j["config"] = config_to_json(c);
    j["key"] = config_key(c);
    json pts = json::array();
    for (const auto& p : r.points) {
        if (p.result) {
            json pj = point_to_json(*p.result);
            pj["dimension"] = dim_value(c.dim);
            pts.push_back(pj);
        } else {
            pts.push_back({{"beta", p.beta}, {"error", p.error}});
        }
    }
    j["points"] = pts;
    std::ofstream jout(c.output_prefix + ".json");
    jout << j.dump(1) << "\n";

    std::ofstream csv(c.output_prefix + ".csv");
    csv << "beta,family,idx,kind,e_re,e_im,gamma,tau,accuracy,v0\n";
    for (const auto& p : r.points) {
        if (!p.result) continue;
        for (const auto& fam : fams) {
            const auto states = family_states(p.result->analysis, fam);
            for (size_t k = 0; k < states.size(); ++k) {
                const Presented pres = present(states[k], p.beta, c.scaling, c.dim);
                csv << fmt16(p.beta) << "," << fam << "," << k << ","
                    << kind_name(states[k].kind) << "," << fmt16(pres.re) << ","
                    << fmt16(pres.im) << "," << fmt16(pres.gamma) << ","
                    << fmt16(pres.tau) << "," << fmt16(pres.acc) << ","
                    << fmt16(p.result->v0) << "\n";
            }
        }
    }
}

namespace {

std::vector<PointResult> load_points(const json& j, Dimension d) {
    std::vector<PointResult> out;
    for (const auto& pj : j.at("points")) {
        if (pj.contains("error")) continue;
        json pjc = pj;
        pjc["dimension"] = dim_value(d);
        out.push_back(point_from_json(pjc));
    }
    return out;
}

void write_fig2(std::ostream& os, const std::vector<PointResult>& pts, ScalingKind sc,
                Dimension d) {
    os << "# eigenvalue clouds per rotation angle, with break-up threshold rays\n"
          "# series: eigenvalue = raw spectrum point; ray = threshold anchor, slope\n"
          "#         ray_slope = tan(-2 theta); state = member of a discrete state\n"
          "beta,theta_deg,series,label,e_re,e_im,ray_slope\n";
    for (const auto& pr : pts) {
        const double f = sc == ScalingKind::Tilde ? tilde_factor(pr.beta, d) : 1.0;
        for (size_t i = 0; i < pr.spectra.size(); ++i) {
            for (cplx e : pr.spectra[i])
                os << fmt16(pr.beta) << "," << fmt16(pr.analysis.thetas_deg[i])
                   << ",eigenvalue,," << fmt16(f * e.real()) << ","
                   << fmt16(f * e.imag()) << ",\n";
        }
        for (size_t i = 0; i < pr.analysis.thetas_deg.size(); ++i) {
            const double th = pr.analysis.thetas_deg[i];
            const double slope = std::tan(-2.0 * deg2rad(th));
            for (const auto& t : pr.analysis.thresholds)
                os << fmt16(pr.beta) << "," << fmt16(th) << ",ray," << t.label << ","
                   << fmt16(f * t.energy) << "," << fmt16(0.0) << "," << fmt16(slope)
                   << "\n";
        }
        for (const auto& st : pr.analysis.states) {
            if (st.kind != StateKind::Bound && st.kind != StateKind::Resonance) continue;
            const std::string label = st.family.empty() ? kind_name(st.kind) : st.family;
            for (size_t i = 0; i < st.members.size() &&
                               i < pr.analysis.thetas_deg.size(); ++i)
                os << fmt16(pr.beta) << "," << fmt16(pr.analysis.thetas_deg[i])
                   << ",state," << label << "," << fmt16(f * st.members[i].real()) << ","
                   << fmt16(f * st.members[i].imag()) << ",\n";
        }
    }
}

void write_fig3(std::ostream& os, const std::vector<PointResult>& pts, ScalingKind sc,
                Dimension d, const std::vector<std::string>& fams) {
    os << "# width of the deepest tracked state of each family against mass ratio\n"
          "beta,family,kind,gamma,accuracy\n";
    for (const auto& pr : pts) {
        for (const auto& fam : fams) {
            const auto st = deepest_state(pr.analysis, fam);
            if (!st) continue;
            const Presented p = present(*st, pr.beta, sc, d);
            os << fmt16(pr.beta) << "," << fam << "," << kind_name(st->kind) << ","
               << fmt16(p.gamma) << "," << fmt16(p.acc) << "\n";
        }
    }
}

void write_fig4(std::ostream& os, const std::vector<PointResult>& pts, ScalingKind sc,
                Dimension d, const std::vector<std::string>& fams) {
    os << "# lifetime of the deepest tracked state (log-scale ready) and its\n"
          "# trajectory in the complex energy plane\n"
          "beta,family,kind,tau,e_re,e_im\n";
    for (const auto& pr : pts) {
        for (const auto& fam : fams) {
            const auto st = deepest_state(pr.analysis, fam);
            if (!st) continue;
            const Presented p = present(*st, pr.beta, sc, d);
            os << fmt16(pr.beta) << "," << fam << "," << kind_name(st->kind) << ","
               << fmt16(p.tau) << "," << fmt16(p.re) << "," << fmt16(p.im) << "\n";
        }
    }
}

} // namespace

int write_plot_data(const std::string& json_path, const std::string& kind) {
    if (kind != "fig2" && kind != "fig3" && kind != "fig4" && kind != "all")
        throw DomainError("plot kind must be one of fig2, fig3, fig4, all");
    std::ifstream in(json_path);
    if (!in) throw Error("cannot open scan output: " + json_path);
    json j;
    in >> j;
    const ScanConfig c = config_from_json(j.at("config"));
    const std::vector<std::string> fams =
        c.families.empty() ? default_families(c.dim) : c.families;
    const std::vector<PointResult> pts = load_points(j, c.dim);

    std::string prefix = json_path;
    if (prefix.size() > 5 && prefix.substr(prefix.size() - 5) == ".json")
        prefix.resize(prefix.size() - 5);

    int written = 0;
    const auto emit = [&](const std::string& k, auto&& fn) {
        if (kind != k && kind != "all") return;
        std::ofstream os(prefix + "." + k + ".csv");
        fn(os);
        ++written;
    };
    emit("fig2", [&](std::ostream& os) { write_fig2(os, pts, c.scaling, c.dim); });
    emit("fig3", [&](std::ostream& os) { write_fig3(os, pts, c.scaling, c.dim, fams); });
    emit("fig4", [&](std::ostream& os) { write_fig4(os, pts, c.scaling, c.dim, fams); });
    return written;
}

} // namespace triores
