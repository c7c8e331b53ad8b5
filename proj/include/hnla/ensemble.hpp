#pragma once

#include <string>
#include <vector>

#include "hnla/amplifier.hpp"
#include "hnla/fock.hpp"

namespace hnla::ensemble {

/// EPR pair, i.e. two-mode vacuum squeezed state of parameter s > 0.
struct EprSpec {
    double s;

    explicit EprSpec(double s_);
    double lambda(int n) const; // Schmidt coefficient (tanh s)^n / cosh s
    fock::TwoModeSchmidtState schmidt(int n_max) const;
};

/// Thermal state bookkeeping: nu = sinh^2 s, quadrature variance cosh 2s.
struct ThermalSpec {
    double s;
    double nu;

    static ThermalSpec from_s(double s);
    double variance() const; // cosh 2s, both quadratures
    fock::DensityMatrix density(int n_max) const;
};

enum class GridKind { gauss_hermite, uniform, radial };

/// Discretization of a continuous preparation variable. points is the node
/// count (radial count for GridKind::radial, per-axis count for a 2-D
/// Gauss-Hermite grid); sigmas bounds the covered range in standard
/// deviations for the kinds with a finite range; angular_points applies to
/// GridKind::radial only.
struct GridSpec {
    GridKind kind = GridKind::gauss_hermite;
    int points = 201;
    int angular_points = 64;
    double sigmas = 6.0;
};

std::string to_string(GridKind kind);

struct GridMeta {
    GridSpec spec;
    std::string variable; // "x", "p" or "alpha"
    double sigma = 0.0;   // std deviation of the discretized Gaussian
};

struct WeightedComponent {
    double weight = 0.0;
    fock::SqueezedCoherentParams params;
};

/// Finite discretization of a continuous preparation ensemble. Weights are
/// normalized to sum to 1 on construction; normalization_residual records
/// |raw quadrature mass - 1| before that step.
struct WeightedEnsemble {
    std::vector<WeightedComponent> components;
    GridMeta grid_meta;
    double normalization_residual = 0.0;
};

enum class Quadrature { x, p };

/// s' = artanh(g tanh s): the two-mode squeezing after filtering one arm.
/// Throws unphysical_gain_error when g tanh s >= 1.
double amplify_epr(double s, double g);

/// Single-mode squeezing r of the states prepared by homodyning one arm of
/// an EPR(s) pair: e^{2r} = cosh 2s, equivalently tanh r = tanh^2 s.
double homodyne_component_squeezing(double s);

/// Variance of the prepared displacement: sigma^2 = e^{2r} - e^{-2r}
///                                                = 4 tanh r / (1 - tanh^2 r).
double homodyne_displacement_variance(double r);

/// Photon-number measurement scenario: distribution of Bob's component
/// before filtering and after Bayes conditioning on success. p_conditioned
/// is the geometric distribution of the amplified thermal state.
struct PhotonNumberScenario {
    std::vector<double> p_before;
    std::vector<double> p_conditioned;
    double mean_before = 0.0;
    double mean_conditioned = 0.0;
};
PhotonNumberScenario photon_number_scenario(double s, double g, int n_max);

/// Ensemble of x-squeezed (or p-squeezed) states prepared by a homodyne
/// measurement on the far arm: components centered on (x, 0) (resp. (0, p))
/// with fixed squeezing r, displacement drawn from N(0, sigma^2).
WeightedEnsemble homodyne_ensemble(double s, Quadrature quadrature, const GridSpec &grid);

/// Coherent-state ensemble p_alpha = e^{-|alpha|^2/nu} / (pi nu) prepared
/// by a heterodyne measurement, discretized on a 2-D grid.
WeightedEnsemble heterodyne_ensemble(double s, const GridSpec &grid);

/// Bayes conditioning on amplifier success: every component's parameters
/// are mapped through the closed-form transformation, its weight picks up
/// the component success weight, and the list is renormalized once at the
/// end (a single global denominator). An unphysical component aborts with
/// its index and parameters in the message.
WeightedEnsemble condition_ensemble(const WeightedEnsemble &ens, double g);

/// sum_i w_i |psi_i><psi_i| over a fixed-topology pairwise tree.
fock::DensityMatrix ensemble_to_density(const WeightedEnsemble &ens, int n_max);

/// Largest auto_cutoff over all components.
int ensemble_auto_cutoff(const WeightedEnsemble &ens, double tail_eps);

/// Cutoff for a thermal target: exact geometric tail (tanh s)^{2(N+1)}.
int thermal_auto_cutoff(double s, double tail_eps);

struct HeterodyneReport {
    double s = 0.0;
    double g = 0.0;
    double s_prime = 0.0;
    GridSpec grid;
    int n_max = 0;
    double distance_to_thermal = 0.0;
    double mean_photon = 0.0;
    double mean_photon_expected = 0.0; // sinh^2 s'
    double weight_residual = 0.0;
    double cutoff_tail_bound = 0.0; // see NoSignalReport
    double runtime_ms = 0.0;
};

/// Conditioned coherent mixture versus the amplified thermal state.
/// n_max <= 0 selects the automatic cutoff.
HeterodyneReport heterodyne_scenario(double s, double g, const GridSpec &grid, int n_max = 0);

struct NoSignalReport {
    double s = 0.0;
    double g = 0.0;
    double s_prime = 0.0;
    GridSpec grid;
    int n_max = 0;
    double d_xp = 0.0;
    double d_x_thermal = 0.0;
    double d_p_thermal = 0.0;
    double identity_residual_max = 0.0;
    double runtime_ms = 0.0;
    // diagnostics (not part of the wire format)
    double weight_residual_x = 0.0;
    double weight_residual_p = 0.0;
    int component_count = 0;
    // largest bounded tail mass any state in play leaks past n_max; a manual
    // cutoff override that cannot certify the reported distances shows up here
    double cutoff_tail_bound = 0.0;
};

/// The full no-signaling comparison: prepare both homodyne ensembles,
/// condition them on success, mix, and measure how far Bob's two states are
/// from each other and from the amplified thermal state. Also checks the
/// scalar cancellation identity
///   (1 + tanh r)^2 / tanh r * x^2 = (1 + tanh r')^2 / tanh r' * x'^2
/// on every grid node (relative residual reported).
NoSignalReport no_signaling_check(double s, double g, const GridSpec &grid, int n_max = 0);

} // namespace hnla::ensemble
