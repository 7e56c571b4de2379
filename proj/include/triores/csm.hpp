#pragma once

#include "triores/eigensolver.hpp"
#include "triores/threebody.hpp"
#include "triores/twobody.hpp"

#include <optional>
#include <string>
#include <vector>

namespace triores {

double deg2rad(double deg);

// The rotation angle enters the Hamiltonian analytically, so the overlap
// matrix and its canonical factor are shared by all angles of one point.
// Discrete eigenvalues stay put as theta varies while continuum eigenvalues
// ride rays of slope -2 theta hanging off each break-up threshold; the
// classifier links eigenvalues across angles and sorts them by behavior.

struct CsmOptions {
    std::vector<double> thetas_deg{4.0, 7.0, 10.0};
    double resonance_tol = 1e-3;   // max cluster spread of a discrete state
    double bound_tol = 1e-6;       // |Im E| below which a sub-threshold state is bound
    double corridor_deg = 1.0;     // half width of the continuum ray corridor
    double arc_fraction = 0.25;    // dispersion above this fraction of the
                                   // anchor-orbit arc marks a rotating state
    double re_max = 1.0;           // ignore eigenvalues with Re E above this
    bool keep_spectra = false;     // retain raw eigenvalue lists per angle
    bool basis_variation = false;  // fold a reduced-basis shift into accuracy
    EigenOptions eig{};
};

enum class StateKind { Bound, Resonance, Continuum, Unidentified };

std::string kind_name(StateKind k);

struct CsmState {
    cplx energy;                // cluster mean for discrete states
    StateKind kind = StateKind::Unidentified;
    double accuracy = 0.0;      // max spread of the cluster across angles
    std::string family;         // label of the nearest threshold above, "" if none applies
    double gamma = 0.0;         // -2 Im E, clamped at 0
    double tau = 0.0;           // 1/gamma, inf below the accuracy floor
    std::vector<cplx> members;  // the per-angle eigenvalues behind this state
};

struct CsmAnalysis {
    std::vector<CsmState> states;       // discrete and unidentified chains
    std::vector<Threshold> thresholds;  // model-space thresholds, ascending
    std::vector<double> thetas_deg;
    int n_continuum = 0;                // chains recognized as rotated continua
};

// Break-up thresholds visible to the model space: only s-wave pair levels
// in 3D (the basis carries l = L = 0), both parities in 1D.
std::vector<Threshold> model_thresholds(Dimension d, double v0);

CsmAnalysis classify_spectra(const std::vector<std::vector<cplx>>& spectra,
                             const std::vector<double>& thetas_deg,
                             const std::vector<Threshold>& thresholds,
                             const CsmOptions& opt);

// Median angle (degrees, measured from each anchor) of the eigenvalues in a
// generous corridor around the expected ray; verifies the -2 theta rule.
struct RaySlope {
    std::string anchor;
    double slope_deg = 0.0;
    int count = 0;
};
std::vector<RaySlope> continuum_ray_slopes(const std::vector<cplx>& spectrum,
                                           double theta_deg,
                                           const std::vector<Threshold>& thresholds,
                                           double corridor_deg = 3.0);

struct PointResult {
    double beta = 0.0;
    double v0 = 0.0;
    CsmAnalysis analysis;
    std::vector<std::vector<cplx>> spectra;   // per angle, only when requested
};

// Full pipeline for one mass ratio: thresholds, assembly at every angle
// (one canonical factor), classification.
PointResult analyze_point(const ThreeBodySpace& space, double beta, double v0,
                          const CsmOptions& opt);

// Discrete states assigned to a family, ascending in Re E.
std::vector<CsmState> family_states(const CsmAnalysis& an, const std::string& family);

std::optional<CsmState> deepest_state(const CsmAnalysis& an, const std::string& family);

} // namespace triores
