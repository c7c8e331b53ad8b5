#include "hnla/ensemble.hpp"

#include <chrono>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hnla/quadrature.hpp"

namespace hnla::ensemble {

namespace {

constexpr double default_tail_eps = 1e-12;

using clock = std::chrono::steady_clock;

double elapsed_ms(clock::time_point start) {
    return std::chrono::duration<double, std::milli>(clock::now() - start).count();
}

void check_grid(const GridSpec &grid) {
    if (grid.points < 1)
        throw std::invalid_argument("grid: points must be >= 1");
    if (grid.kind == GridKind::radial && grid.angular_points < 1)
        throw std::invalid_argument("grid: angular_points must be >= 1");
    if ((grid.kind == GridKind::uniform || grid.kind == GridKind::radial) && !(grid.sigmas > 0.0))
        throw std::invalid_argument("grid: sigmas must be > 0");
}

// Nodes and normalized weights discretizing N(0, sigma^2).
quad::Rule gaussian_rule(double sigma, const GridSpec &grid) {
    check_grid(grid);
    quad::Rule rule;
    switch (grid.kind) {
    case GridKind::gauss_hermite: {
        rule = quad::gauss_hermite(grid.points);
        const double scale = std::numbers::sqrt2 * sigma;
        for (auto &t : rule.nodes)
            t *= scale;
        for (auto &w : rule.weights)
            w /= std::sqrt(std::numbers::pi);
        break;
    }
    case GridKind::uniform: {
        const double half_range = grid.sigmas * sigma;
        const double h = 2.0 * half_range / grid.points;
        rule.nodes.resize(static_cast<size_t>(grid.points));
        rule.weights.resize(static_cast<size_t>(grid.points));
        const double norm = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
        for (int i = 0; i < grid.points; ++i) {
            const double x = -half_range + (i + 0.5) * h;
            rule.nodes[static_cast<size_t>(i)] = x;
            rule.weights[static_cast<size_t>(i)] =
                norm * std::exp(-0.5 * x * x / (sigma * sigma)) * h;
        }
        break;
    }
    case GridKind::radial:
        throw std::invalid_argument("grid: radial kind applies to 2-D ensembles only");
    }
    return rule;
}

double renormalize(std::vector<WeightedComponent> &components) {
    double total = 0.0;
    for (const auto &c : components)
        total += c.weight;
    if (!(total > 0.0) || !std::isfinite(total))
        throw std::invalid_argument("ensemble: weights must sum to a positive finite value");
    for (auto &c : components)
        c.weight /= total;
    return std::abs(total - 1.0);
}

Eigen::MatrixXcd density_tree(const std::vector<WeightedComponent> &comps, size_t lo, size_t hi,
                              int n_max) {
    if (hi - lo == 1) {
        const fock::FockVector psi = fock::coherent_squeezed_coeffs(comps[lo].params, n_max);
        const Eigen::Map<const Eigen::VectorXcd> v(psi.amps.data(),
                                                   static_cast<Eigen::Index>(psi.amps.size()));
        return comps[lo].weight * (v * v.adjoint());
    }
    const size_t mid = lo + (hi - lo) / 2;
    return density_tree(comps, lo, mid, n_max) + density_tree(comps, mid, hi, n_max);
}

} // namespace

std::string to_string(GridKind kind) {
    switch (kind) {
    case GridKind::gauss_hermite:
        return "gauss-hermite";
    case GridKind::uniform:
        return "uniform";
    case GridKind::radial:
        return "radial";
    }
    return "unknown";
}

EprSpec::EprSpec(double s_) : s(s_) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("EprSpec: two-mode squeezing s must be finite and > 0");
}

double EprSpec::lambda(int n) const {
    if (n < 0)
        throw std::invalid_argument("EprSpec::lambda: n must be >= 0");
    return std::pow(std::tanh(s), n) / std::cosh(s);
}

fock::TwoModeSchmidtState EprSpec::schmidt(int n_max) const {
    return fock::TwoModeSchmidtState::epr(s, n_max);
}

ThermalSpec ThermalSpec::from_s(double s) {
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("ThermalSpec: s must be finite and >= 0");
    return {s, std::sinh(s) * std::sinh(s)};
}

double ThermalSpec::variance() const { return std::cosh(2.0 * s); }

fock::DensityMatrix ThermalSpec::density(int n_max) const {
    return fock::DensityMatrix::thermal(s, n_max);
}

double amplify_epr(double s, double g) {
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("amplify_epr: s must be finite and >= 0");
    if (!(g > 0.0) || !std::isfinite(g))
        throw std::invalid_argument("amplify_epr: g must be finite and > 0");
    const double x = g * std::tanh(s);
    if (x >= 1.0) {
        std::ostringstream msg;
        msg << "unphysical gain: g tanh s = " << x << " >= 1 (s = " << s << ", g = " << g << ")";
        throw unphysical_gain_error(msg.str());
    }
    return std::atanh(x);
}

double homodyne_component_squeezing(double s) {
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("homodyne_component_squeezing: s must be finite and > 0");
    // e^{2r} = cosh 2s
    return 0.5 * std::log(std::cosh(2.0 * s));
}

double homodyne_displacement_variance(double r) {
    if (!(r > 0.0))
        throw std::invalid_argument("homodyne_displacement_variance: r must be > 0");
    return std::exp(2.0 * r) - std::exp(-2.0 * r);
}

PhotonNumberScenario photon_number_scenario(double s, double g, int n_max) {
    const double sp = amplify_epr(s, g); // also validates s, g
    (void)sp;
    if (n_max < 0)
        throw std::invalid_argument("photon_number_scenario: n_max must be >= 0");
    const double gt = g * std::tanh(s);
    if (std::pow(gt, 2.0 * n_max) >= 1e-14)
        throw std::invalid_argument(
            "photon_number_scenario: n_max too small, (g tanh s)^{2 n_max} must be < 1e-14");

    PhotonNumberScenario out;
    out.p_before.resize(static_cast<size_t>(n_max) + 1);
    out.p_conditioned.resize(static_cast<size_t>(n_max) + 1);
    const double q = std::tanh(s) * std::tanh(s);
    const double g2 = g * g;
    double before = 1.0;
    double cond = 1.0;
    double sum_before = 0.0;
    double sum_cond = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        out.p_before[static_cast<size_t>(n)] = before;
        out.p_conditioned[static_cast<size_t>(n)] = cond;
        sum_before += before;
        sum_cond += cond;
        before *= q;
        cond *= q * g2;
    }
    for (int n = 0; n <= n_max; ++n) {
        out.p_before[static_cast<size_t>(n)] /= sum_before;
        out.p_conditioned[static_cast<size_t>(n)] /= sum_cond;
        out.mean_before += n * out.p_before[static_cast<size_t>(n)];
        out.mean_conditioned += n * out.p_conditioned[static_cast<size_t>(n)];
    }
    return out;
}

WeightedEnsemble homodyne_ensemble(double s, Quadrature quadrature, const GridSpec &grid) {
    const double r = homodyne_component_squeezing(s);
    const double sigma = std::sqrt(homodyne_displacement_variance(r));
    const quad::Rule rule = gaussian_rule(sigma, grid);

    WeightedEnsemble ens;
    ens.components.reserve(rule.nodes.size());
    for (size_t i = 0; i < rule.nodes.size(); ++i) {
        if (rule.weights[i] == 0.0)
            continue; // underflowed far node, contributes nothing
        const double value = rule.nodes[i];
        const complexd alpha = quadrature == Quadrature::x ? complexd(0.5 * value, 0.0)
                                                           : complexd(0.0, 0.5 * value);
        const double phi = quadrature == Quadrature::x ? 0.0 : std::numbers::pi;
        ens.components.push_back(
            {rule.weights[i], fock::SqueezedCoherentParams(alpha, r, phi)});
    }
    ens.normalization_residual = renormalize(ens.components);
    ens.grid_meta = {grid, quadrature == Quadrature::x ? "x" : "p", sigma};
    return ens;
}

WeightedEnsemble heterodyne_ensemble(double s, const GridSpec &grid) {
    check_grid(grid);
    if (!(s > 0.0) || !std::isfinite(s))
        throw std::invalid_argument("heterodyne_ensemble: s must be finite and > 0");
    const double nu = std::sinh(s) * std::sinh(s);

    WeightedEnsemble ens;
    switch (grid.kind) {
    case GridKind::gauss_hermite: {
        // p_alpha = e^{-|alpha|^2/nu}/(pi nu) factorizes over Re/Im alpha.
        quad::Rule axis = quad::gauss_hermite(grid.points);
        const double scale = std::sqrt(nu);
        ens.components.reserve(axis.nodes.size() * axis.nodes.size());
        for (size_t i = 0; i < axis.nodes.size(); ++i)
            for (size_t j = 0; j < axis.nodes.size(); ++j) {
                const complexd alpha(scale * axis.nodes[i], scale * axis.nodes[j]);
                const double w = axis.weights[i] * axis.weights[j] / std::numbers::pi;
                if (w == 0.0)
                    continue;
                ens.components.push_back({w, fock::SqueezedCoherentParams(alpha, 0.0, 0.0)});
            }
        break;
    }
    case GridKind::radial: {
        const double radius = grid.sigmas * std::sqrt(nu);
        const quad::Rule radial = quad::gauss_legendre(grid.points);
        const int m = grid.angular_points;
        const double w_theta = 2.0 * std::numbers::pi / m;
        ens.components.reserve(static_cast<size_t>(grid.points) * static_cast<size_t>(m));
        for (int i = 0; i < grid.points; ++i) {
            const double rho = 0.5 * radius * (radial.nodes[static_cast<size_t>(i)] + 1.0);
            const double w_rho = 0.5 * radius * radial.weights[static_cast<size_t>(i)];
            const double w_common =
                rho * std::exp(-rho * rho / nu) / (std::numbers::pi * nu) * w_rho * w_theta;
            if (w_common == 0.0)
                continue;
            for (int j = 0; j < m; ++j) {
                const complexd alpha = std::polar(rho, w_theta * j);
                ens.components.push_back({w_common, fock::SqueezedCoherentParams(alpha, 0.0, 0.0)});
            }
        }
        break;
    }
    case GridKind::uniform: {
        // Cartesian midpoint grid, for convergence diagnostics.
        const double sigma_axis = std::sqrt(0.5 * nu);
        const double half_range = grid.sigmas * sigma_axis;
        const double h = 2.0 * half_range / grid.points;
        ens.components.reserve(static_cast<size_t>(grid.points) * static_cast<size_t>(grid.points));
        for (int i = 0; i < grid.points; ++i)
            for (int j = 0; j < grid.points; ++j) {
                const complexd alpha(-half_range + (i + 0.5) * h, -half_range + (j + 0.5) * h);
                const double w =
                    std::exp(-std::norm(alpha) / nu) / (std::numbers::pi * nu) * h * h;
                if (w == 0.0)
                    continue;
                ens.components.push_back({w, fock::SqueezedCoherentParams(alpha, 0.0, 0.0)});
            }
        break;
    }
    }
    ens.normalization_residual = renormalize(ens.components);
    ens.grid_meta = {grid, "alpha", std::sqrt(nu)};
    return ens;
}

WeightedEnsemble condition_ensemble(const WeightedEnsemble &ens, double g) {
    WeightedEnsemble out;
    out.grid_meta = ens.grid_meta;
    out.components.reserve(ens.components.size());
    for (size_t i = 0; i < ens.components.size(); ++i) {
        const auto &comp = ens.components[i];
        try {
            const amp::TransformResult tr = amp::transform_params(comp.params, g);
            out.components.push_back({comp.weight * tr.rel_success_weight, tr.params_out});
        } catch (const unphysical_gain_error &err) {
            std::ostringstream msg;
            msg << "condition_ensemble: component " << i << " (alpha = " << comp.params.alpha
                << ", r = " << comp.params.r << ", phi = " << comp.params.phi << "): "
                << err.what();
            throw unphysical_gain_error(msg.str());
        }
    }
    // Bayes rule with a single global denominator.
    out.normalization_residual = renormalize(out.components);
    return out;
}

fock::DensityMatrix ensemble_to_density(const WeightedEnsemble &ens, int n_max) {
    if (ens.components.empty())
        throw std::invalid_argument("ensemble_to_density: empty ensemble");
    if (n_max < 0)
        throw std::invalid_argument("ensemble_to_density: n_max must be >= 0");
    return fock::DensityMatrix(density_tree(ens.components, 0, ens.components.size(), n_max));
}

int ensemble_auto_cutoff(const WeightedEnsemble &ens, double tail_eps) {
    int best = 0;
    for (const auto &comp : ens.components)
        best = std::max(best, amp::auto_cutoff(comp.params, tail_eps));
    return best;
}

int thermal_auto_cutoff(double s, double tail_eps) {
    if (!(tail_eps > 0.0) || !(tail_eps < 1.0))
        throw std::invalid_argument("thermal_auto_cutoff: tail_eps must lie in (0, 1)");
    const double q = std::tanh(s) * std::tanh(s);
    if (q <= 0.0)
        return 0;
    // exact tail: sum_{n > N} (1-q) q^n = q^{N+1}
    return static_cast<int>(std::max(0.0, std::ceil(std::log(tail_eps) / std::log(q)) - 1.0));
}

namespace {

// Worst bounded tail mass leaked past n_max by any ensemble component or by
// the thermal comparison state.
double cutoff_tail(std::initializer_list<const WeightedEnsemble *> ensembles, double s_thermal,
                   int n_max) {
    double worst = std::pow(std::tanh(s_thermal), 2.0 * (n_max + 1));
    for (const WeightedEnsemble *ens : ensembles)
        for (const auto &comp : ens->components)
            worst = std::max(worst, amp::tail_bound(comp.params, n_max));
    return std::min(worst, 1.0); // tail mass of a normalized state
}

} // namespace

HeterodyneReport heterodyne_scenario(double s, double g, const GridSpec &grid, int n_max) {
    const auto start = clock::now();
    HeterodyneReport report;
    report.s = s;
    report.g = g;
    report.grid = grid;
    report.s_prime = amplify_epr(s, g);

    const WeightedEnsemble prepared = heterodyne_ensemble(s, grid);
    const WeightedEnsemble conditioned = condition_ensemble(prepared, g);
    report.weight_residual = prepared.normalization_residual;

    report.n_max = n_max > 0 ? n_max
                             : std::max(ensemble_auto_cutoff(conditioned, default_tail_eps),
                                        thermal_auto_cutoff(report.s_prime, default_tail_eps));
    report.cutoff_tail_bound = cutoff_tail({&conditioned}, report.s_prime, report.n_max);

    const fock::DensityMatrix rho =
        ensemble_to_density(conditioned, report.n_max).normalized();
    const fock::DensityMatrix target =
        fock::DensityMatrix::thermal(report.s_prime, report.n_max).normalized();
    report.distance_to_thermal = fock::trace_distance(rho, target);

    for (int n = 0; n <= report.n_max; ++n)
        report.mean_photon += n * rho.elems(n, n).real();
    report.mean_photon_expected = std::sinh(report.s_prime) * std::sinh(report.s_prime);
    report.runtime_ms = elapsed_ms(start);
    return report;
}

NoSignalReport no_signaling_check(double s, double g, const GridSpec &grid, int n_max) {
    const auto start = clock::now();
    NoSignalReport report;
    report.s = s;
    report.g = g;
    report.grid = grid;
    report.s_prime = amplify_epr(s, g);

    const WeightedEnsemble ens_x = homodyne_ensemble(s, Quadrature::x, grid);
    const WeightedEnsemble ens_p = homodyne_ensemble(s, Quadrature::p, grid);
    const WeightedEnsemble cond_x = condition_ensemble(ens_x, g);
    const WeightedEnsemble cond_p = condition_ensemble(ens_p, g);
    // quadrature-quality diagnostic: how far the discretized Gaussian mass
    // was from 1 before any renormalization (conditioning changes the raw
    // mass by the average success weight, which is not an error)
    report.weight_residual_x = ens_x.normalization_residual;
    report.weight_residual_p = ens_p.normalization_residual;
    report.component_count = static_cast<int>(ens_x.components.size());

    // Scalar cancellation identity on every grid node:
    // (1+t)^2/t x^2 = (1+t')^2/t' x'^2 with x' the squeezed-axis mean map.
    const double r = homodyne_component_squeezing(s);
    const double t = std::tanh(r);
    const double tp = std::tanh(amp::transform_squeezing(r, g));
    const double gain_sq = g * (1.0 + t) / (1.0 + tp);
    for (const auto &comp : ens_x.components) {
        const double x = comp.params.x();
        const double xp = gain_sq * x;
        const double lhs = (1.0 + t) * (1.0 + t) / t * x * x;
        const double rhs = (1.0 + tp) * (1.0 + tp) / tp * xp * xp;
        const double denom = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        report.identity_residual_max =
            std::max(report.identity_residual_max, std::abs(lhs - rhs) / denom);
    }

    report.n_max = n_max > 0 ? n_max
                             : std::max({ensemble_auto_cutoff(cond_x, default_tail_eps),
                                         ensemble_auto_cutoff(cond_p, default_tail_eps),
                                         thermal_auto_cutoff(report.s_prime, default_tail_eps)});
    report.cutoff_tail_bound = cutoff_tail({&cond_x, &cond_p}, report.s_prime, report.n_max);

    const fock::DensityMatrix rho_x = ensemble_to_density(cond_x, report.n_max).normalized();
    const fock::DensityMatrix rho_p = ensemble_to_density(cond_p, report.n_max).normalized();
    const fock::DensityMatrix target =
        fock::DensityMatrix::thermal(report.s_prime, report.n_max).normalized();

    report.d_xp = fock::trace_distance(rho_x, rho_p);
    report.d_x_thermal = fock::trace_distance(rho_x, target);
    report.d_p_thermal = fock::trace_distance(rho_p, target);
    report.runtime_ms = elapsed_ms(start);
    return report;
}

} // namespace hnla::ensemble
