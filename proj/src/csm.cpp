#include "triores/csm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace triores {

double deg2rad(double deg) { return deg * std::numbers::pi / 180.0; }

std::string kind_name(StateKind k) {
    switch (k) {
    case StateKind::Bound: return "bound";
    case StateKind::Resonance: return "resonance";
    case StateKind::Continuum: return "continuum";
    case StateKind::Unidentified: return "unidentified";
    }
    return "unidentified";
}

std::vector<Threshold> model_thresholds(Dimension d, double v0) {
    const auto b0 = two_body_default_basis(d, sector_from_ell(d, 0));
    const auto b1 = two_body_default_basis(d, sector_from_ell(d, 1));
    if (d == Dimension::D3) {
        std::vector<Threshold> out;
        const auto levels = bound_levels(b0, Sector::SWave, v0, d);
        for (size_t i = 0; i < levels.size(); ++i)
            out.push_back({level_label(static_cast<int>(i) + 1, Sector::SWave), levels[i],
                           Sector::SWave, static_cast<int>(i) + 1});
        return out;
    }
    return thresholds(v0, d, b0, b1);
}

namespace {

// Angular distance of (e - anchor) from the ray at -2 theta, with points
// closer to the anchor than `near` always counted as on-ray.
bool in_corridor(cplx e, double anchor, double theta_deg, double corridor_deg,
                 double near_radius) {
    const cplx rel = e - anchor;
    if (std::abs(rel) < near_radius) return true;
    const double ang = std::atan2(rel.imag(), rel.real()) * 180.0 / std::numbers::pi;
    return std::abs(ang + 2.0 * theta_deg) <= corridor_deg;
}

std::vector<double> anchor_energies(const std::vector<Threshold>& th) {
    std::vector<double> a;
    for (const auto& t : th) a.push_back(t.energy);
    a.push_back(0.0);   // three-body break-up
    return a;
}

double cluster_spread(const std::vector<cplx>& m) {
    double s = 0.0;
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = i + 1; j < m.size(); ++j)
            s = std::max(s, std::abs(m[i] - m[j]));
    return s;
}

} // namespace

CsmAnalysis classify_spectra(const std::vector<std::vector<cplx>>& spectra,
                             const std::vector<double>& thetas_deg,
                             const std::vector<Threshold>& thresholds,
                             const CsmOptions& opt) {
    if (spectra.size() != thetas_deg.size() || spectra.empty())
        throw DomainError("one spectrum per rotation angle required");
    const size_t nth = spectra.size();

    CsmAnalysis out;
    out.thresholds = thresholds;
    std::sort(out.thresholds.begin(), out.thresholds.end(),
              [](const Threshold& a, const Threshold& b) { return a.energy < b.energy; });
    out.thetas_deg = thetas_deg;

    std::vector<std::vector<cplx>> lists(nth);
    for (size_t i = 0; i < nth; ++i)
        for (cplx e : spectra[i])
            if (e.real() < opt.re_max) lists[i].push_back(e);

    const auto anchors = anchor_energies(out.thresholds);
    const double lowest =
        out.thresholds.empty() ? 0.0 : out.thresholds.front().energy;

    for (cplx seed : lists[0]) {
        std::vector<cplx> chain{seed};
        cplx cur = seed;
        bool broken = false;
        bool ambiguous = false;
        for (size_t i = 1; i < nth; ++i) {
            if (lists[i].empty()) {
                broken = true;
                break;
            }
            double d1 = std::numeric_limits<double>::infinity(), d2 = d1;
            cplx best = lists[i][0];
            for (cplx cand : lists[i]) {
                const double dist = std::abs(cand - cur);
                if (dist < d1) {
                    d2 = d1;
                    d1 = dist;
                    best = cand;
                } else if (dist < d2) {
                    d2 = dist;
                }
            }
            // Two partners inside the discreteness tolerance cannot be told
            // apart; such a chain must not be promoted to a state silently.
            if (d2 < opt.resonance_tol) ambiguous = true;
            cur = best;
            chain.push_back(cur);
        }
        if (broken) continue;

        // Continuum first: anchor points are theta stable too, but only a
        // rotating state can sit in the rotating corridor at every angle.
        bool continuum = true;
        for (size_t i = 0; i < nth && continuum; ++i) {
            bool any = false;
            for (double a : anchors)
                if (in_corridor(chain[i], a, thetas_deg[i], opt.corridor_deg,
                                opt.resonance_tol)) {
                    any = true;
                    break;
                }
            continuum = any;
        }
        if (continuum) {
            ++out.n_continuum;
            continue;
        }

        CsmState st;
        st.members = chain;
        st.accuracy = cluster_spread(chain);
        cplx mean = 0.0;
        for (cplx e : chain) mean += e;
        mean /= static_cast<double>(chain.size());
        st.energy = mean;

        // The first discretized point of a continuum hugs its threshold and
        // can slip past the corridor test, but it still orbits the anchor as
        // theta varies: over the angle span it sweeps an arc of length
        // |E - anchor| * d(2 theta).  A dispersion on the order of that arc
        // is the kinematic fingerprint of a rotating state; genuine discrete
        // states stay put no matter how close to a threshold they sit.
        if (st.accuracy < opt.resonance_tol && !ambiguous && mean.real() > lowest) {
            const auto [tmin, tmax] =
                std::minmax_element(thetas_deg.begin(), thetas_deg.end());
            double rho = std::numeric_limits<double>::infinity();
            for (double a : anchors) rho = std::min(rho, std::abs(mean - a));
            const double arc = rho * 2.0 * deg2rad(*tmax - *tmin);
            if (st.accuracy > opt.arc_fraction * arc) {
                ++out.n_continuum;
                continue;
            }
        }

        if (st.accuracy < opt.resonance_tol && !ambiguous) {
            if (mean.real() < lowest && std::abs(mean.imag()) <= opt.bound_tol) {
                st.kind = StateKind::Bound;
                st.energy = cplx(mean.real(), 0.0);
                st.gamma = 0.0;
                st.tau = lifetime_from_width(0.0, st.accuracy);
                for (const auto& t : out.thresholds)
                    if (mean.real() < t.energy) {
                        st.family = t.label;
                        break;
                    }
            } else if (mean.imag() > st.accuracy + opt.bound_tol) {
                // Decidedly positive imaginary part is outside the physical
                // half plane; refuse to call it anything.
                st.kind = StateKind::Unidentified;
            } else {
                st.kind = StateKind::Resonance;
                if (mean.imag() > 0.0) st.energy = cplx(mean.real(), 0.0);
                st.gamma = width_from_energy(st.energy);
                st.tau = lifetime_from_width(st.gamma, st.accuracy);
                for (const auto& t : out.thresholds)
                    if (mean.real() < t.energy) {
                        st.family = t.label;
                        break;
                    }
            }
        } else {
            st.kind = StateKind::Unidentified;
        }

        // Several seeds can settle on one stable point; keep the tightest.
        bool dup = false;
        for (auto& prev : out.states) {
            if (prev.kind == StateKind::Unidentified || st.kind == StateKind::Unidentified)
                continue;
            if (std::abs(prev.energy - st.energy) < opt.resonance_tol) {
                if (st.accuracy < prev.accuracy) prev = st;
                dup = true;
                break;
            }
        }
        if (!dup) out.states.push_back(st);
    }

    std::sort(out.states.begin(), out.states.end(), [](const CsmState& a, const CsmState& b) {
        if (a.energy.real() != b.energy.real()) return a.energy.real() < b.energy.real();
        return a.energy.imag() < b.energy.imag();
    });
    return out;
}

std::vector<RaySlope> continuum_ray_slopes(const std::vector<cplx>& spectrum,
                                           double theta_deg,
                                           const std::vector<Threshold>& thresholds,
                                           double corridor_deg) {
    std::vector<RaySlope> out;
    for (const auto& th : thresholds) {
        std::vector<double> angles;
        for (cplx e : spectrum) {
            const cplx rel = e - th.energy;
            if (std::abs(rel) < 1e-3) continue;   // too close to resolve an angle
            const double ang =
                std::atan2(rel.imag(), rel.real()) * 180.0 / std::numbers::pi;
            if (std::abs(ang + 2.0 * theta_deg) <= corridor_deg) angles.push_back(ang);
        }
        RaySlope rs;
        rs.anchor = th.label;
        rs.count = static_cast<int>(angles.size());
        if (!angles.empty()) {
            std::sort(angles.begin(), angles.end());
            rs.slope_deg = angles[angles.size() / 2];
        }
        out.push_back(rs);
    }
    return out;
}

namespace {

std::vector<std::vector<cplx>> rotated_spectra(const ThreeBodySpace& space,
                                               const MassConfig& mc, double v0,
                                               const CsmOptions& opt) {
    std::vector<std::vector<cplx>> spectra;
    Eigen::MatrixXd x;   // canonical factor, shared across angles
    for (size_t i = 0; i < opt.thetas_deg.size(); ++i) {
        const AssembledProblem ap =
            assemble(space, mc, v0, deg2rad(opt.thetas_deg[i]));
        if (i == 0) x = canonical_basis(ap.s, opt.eig);
        const EigenResult er =
            solve_with_basis(ap.h, x, ap.s.cast<cplx>(), opt.eig);
        spectra.push_back(er.values);
    }
    return spectra;
}

ThreeBodySpace reduced_space(const ThreeBodySpace& space) {
    std::vector<ChannelSpec> chs = space.channels;
    for (auto& ch : chs) {
        ch.pair.n_max = std::max(2, ch.pair.n_max - std::max(1, ch.pair.n_max / 8));
        ch.spect.n_max = std::max(2, ch.spect.n_max - std::max(1, ch.spect.n_max / 8));
    }
    return build_space(space.dim, chs, space.set);
}

} // namespace

PointResult analyze_point(const ThreeBodySpace& space, double beta, double v0,
                          const CsmOptions& opt) {
    if (opt.thetas_deg.size() < 2)
        throw DomainError("at least two rotation angles are needed to classify");
    for (double t : opt.thetas_deg)
        if (!(t > 0.0) || !(t < 45.0))
            throw DomainError("rotation angles must lie in (0, 45) degrees");

    const MassConfig mc = mass_config(beta);
    PointResult pr;
    pr.beta = beta;
    pr.v0 = v0;

    const auto spectra = rotated_spectra(space, mc, v0, opt);
    const auto th = model_thresholds(space.dim, v0);
    pr.analysis = classify_spectra(spectra, opt.thetas_deg, th, opt);

    if (opt.basis_variation) {
        // Redo the point in a trimmed space; the shift of each discrete state
        // widens its accuracy estimate.
        const auto alt =
            classify_spectra(rotated_spectra(reduced_space(space), mc, v0, opt),
                             opt.thetas_deg, th, opt);
        for (auto& st : pr.analysis.states) {
            if (st.kind != StateKind::Bound && st.kind != StateKind::Resonance) continue;
            double shift = opt.resonance_tol;   // nothing matched: assume the worst
            for (const auto& other : alt.states) {
                if (other.kind != st.kind) continue;
                shift = std::min(shift, std::abs(other.energy - st.energy));
            }
            st.accuracy += shift;
            if (st.kind == StateKind::Resonance)
                st.tau = lifetime_from_width(st.gamma, st.accuracy);
        }
    }

    if (opt.keep_spectra) pr.spectra = spectra;
    return pr;
}

std::vector<CsmState> family_states(const CsmAnalysis& an, const std::string& family) {
    std::vector<CsmState> out;
    for (const auto& s : an.states)
        if (s.family == family &&
            (s.kind == StateKind::Resonance || s.kind == StateKind::Bound))
            out.push_back(s);
    return out;
}

std::optional<CsmState> deepest_state(const CsmAnalysis& an, const std::string& family) {
    const auto fs = family_states(an, family);
    if (fs.empty()) return std::nullopt;
    return fs.front();
}

} // namespace triores
