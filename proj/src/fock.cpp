#include "hnla/fock.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hnla::fock {

namespace {

constexpr double coherent_limit_r = 1e-12; // below this, use the r = 0 branch
constexpr double rescale_threshold = 1e100;
constexpr double log_budget = 700.0; // ~ log(DBL_MAX)
constexpr double two_pi = 6.283185307179586476925286766559;

double log_cosh(double r) {
    r = std::abs(r);
    if (r > 20.0)
        return r + std::log1p(std::exp(-2.0 * r)) - std::log(2.0);
    return std::log(std::cosh(r));
}

// u * exp(k_log + log_scale) evaluated in the log domain.
complexd exp_scaled(complexd u, complexd k_log, double log_scale) {
    if (u == complexd(0.0, 0.0))
        return {0.0, 0.0};
    const double log_mag = std::log(std::abs(u)) + k_log.real() + log_scale;
    if (!(log_mag < log_budget))
        throw cutoff_too_large_error("coherent_squeezed_coeffs: amplitude magnitude exceeds the "
                                     "double exponent budget; reduce the cutoff or displacement");
    return std::polar(std::exp(log_mag), std::arg(u) + k_log.imag());
}

Eigen::Map<const Eigen::VectorXcd> as_eigen(const FockVector &v) {
    return {v.amps.data(), static_cast<Eigen::Index>(v.amps.size())};
}

} // namespace

FockVector FockVector::basis(int n, int n_max) {
    if (n < 0 || n_max < 0 || n > n_max)
        throw std::invalid_argument("FockVector::basis: need 0 <= n <= n_max");
    std::vector<complexd> amps(static_cast<size_t>(n_max) + 1, complexd(0.0, 0.0));
    amps[static_cast<size_t>(n)] = 1.0;
    return FockVector(std::move(amps));
}

bool FockVector::finite() const {
    return std::all_of(amps.begin(), amps.end(), [](complexd c) {
        return std::isfinite(c.real()) && std::isfinite(c.imag());
    });
}

SqueezedCoherentParams::SqueezedCoherentParams(complexd alpha_, double r_, double phi_)
    : alpha(alpha_), r(r_), phi(phi_) {
    if (!(std::isfinite(alpha.real()) && std::isfinite(alpha.imag()) && std::isfinite(r) &&
          std::isfinite(phi)))
        throw std::invalid_argument("SqueezedCoherentParams: parameters must be finite");
    if (r < 0.0)
        throw std::invalid_argument("SqueezedCoherentParams: squeezing strength r must be >= 0");
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0)
        phi += two_pi;
}

complexd hermite(int n, complexd z) {
    if (n < 0 || n > 10000)
        throw std::invalid_argument("hermite: order must lie in [0, 10000]");
    if (n == 0)
        return {1.0, 0.0};
    complexd h_prev{1.0, 0.0};
    complexd h = 2.0 * z;
    for (int k = 1; k < n; ++k) {
        const complexd h_next = 2.0 * z * h - 2.0 * static_cast<double>(k) * h_prev;
        h_prev = h;
        h = h_next;
    }
    return h;
}

FockVector vacuum_squeezed_coeffs(double r, double phi, int n_max) {
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("vacuum_squeezed_coeffs: r must be finite and >= 0");
    if (n_max < 0)
        throw std::invalid_argument("vacuum_squeezed_coeffs: n_max must be >= 0");
    std::vector<complexd> amps(static_cast<size_t>(n_max) + 1, complexd(0.0, 0.0));
    const complexd neg_tau = -std::polar(std::tanh(r), phi);
    complexd c = std::exp(complexd(-0.5 * log_cosh(r), 0.0));
    amps[0] = c;
    // ratio of successive even amplitudes: -tau sqrt((2m+1)/(2m+2))
    for (int m = 0; 2 * m + 2 <= n_max; ++m) {
        c *= neg_tau * std::sqrt((2.0 * m + 1.0) / (2.0 * m + 2.0));
        amps[static_cast<size_t>(2 * m + 2)] = c;
    }
    return FockVector(std::move(amps));
}

FockVector coherent_squeezed_coeffs(const SqueezedCoherentParams &params, int n_max) {
    if (n_max < 0)
        throw std::invalid_argument("coherent_squeezed_coeffs: n_max must be >= 0");
    if (!(params.r >= 0.0))
        throw std::invalid_argument("coherent_squeezed_coeffs: r must be >= 0");
    const complexd a = params.alpha;
    if (!(std::isfinite(a.real()) && std::isfinite(a.imag())))
        throw std::invalid_argument("coherent_squeezed_coeffs: alpha must be finite");

    std::vector<complexd> amps(static_cast<size_t>(n_max) + 1, complexd(0.0, 0.0));

    if (params.r < coherent_limit_r) {
        // Coherent-state branch: c_n = e^{-|a|^2/2} a^n / sqrt(n!).
        const double a2 = std::norm(a);
        if (a2 < 1200.0) {
            complexd c = std::exp(complexd(-0.5 * a2, 0.0));
            for (int n = 0; n <= n_max; ++n) {
                amps[static_cast<size_t>(n)] = c;
                if (n < n_max)
                    c *= a / std::sqrt(static_cast<double>(n + 1));
            }
        } else {
            const double log_abs_a = 0.5 * std::log(a2);
            const double arg_a = std::arg(a);
            for (int n = 0; n <= n_max; ++n) {
                const double lm =
                    -0.5 * a2 + n * log_abs_a - 0.5 * std::lgamma(static_cast<double>(n) + 1.0);
                if (!(lm < log_budget))
                    throw cutoff_too_large_error(
                        "coherent_squeezed_coeffs: coherent branch exceeds the exponent budget");
                amps[static_cast<size_t>(n)] = std::polar(std::exp(lm), n * arg_a);
            }
        }
        return FockVector(std::move(amps));
    }

    const complexd phase = std::polar(1.0, params.phi);
    const complexd tau = std::tanh(params.r) * phase;
    const complexd beta = a + std::conj(a) * tau;
    const complexd k_log =
        -0.5 * (complexd(std::norm(a), 0.0) + std::conj(a) * std::conj(a) * tau) -
        complexd(0.5 * log_cosh(params.r), 0.0);

    const bool pref_in_range = std::abs(k_log.real()) < 600.0;
    const complexd pref = pref_in_range ? std::exp(k_log) : complexd(0.0, 0.0);

    complexd u_prev{0.0, 0.0};
    complexd u{1.0, 0.0};
    double log_scale = 0.0;
    for (int n = 0; n <= n_max; ++n) {
        if (pref_in_range && log_scale == 0.0)
            amps[static_cast<size_t>(n)] = pref * u;
        else
            amps[static_cast<size_t>(n)] = exp_scaled(u, k_log, log_scale);
        if (n == n_max)
            break;
        const complexd u_next =
            (beta * u - tau * std::sqrt(static_cast<double>(n)) * u_prev) /
            std::sqrt(static_cast<double>(n) + 1.0);
        u_prev = u;
        u = u_next;
        const double mag = std::max(std::abs(u), std::abs(u_prev));
        if (mag > rescale_threshold) {
            u /= mag;
            u_prev /= mag;
            log_scale += std::log(mag);
        }
    }
    return FockVector(std::move(amps));
}

complexd inner_product(const FockVector &a, const FockVector &b) {
    const size_t n = std::min(a.amps.size(), b.amps.size());
    complexd acc{0.0, 0.0};
    for (size_t i = 0; i < n; ++i)
        acc += std::conj(a.amps[i]) * b.amps[i];
    return acc;
}

double norm2(const FockVector &v) {
    double acc = 0.0;
    for (const complexd &c : v.amps)
        acc += std::norm(c);
    return acc;
}

FockVector normalized(const FockVector &v) {
    const double n2 = norm2(v);
    if (!(n2 > 0.0) || !std::isfinite(n2))
        throw std::invalid_argument("normalized: vector has zero or non-finite norm");
    FockVector out = v;
    const double inv = 1.0 / std::sqrt(n2);
    for (complexd &c : out.amps)
        c *= inv;
    return out;
}

double overlap_fidelity(const FockVector &a, const FockVector &b) {
    const double na = norm2(a);
    const double nb = norm2(b);
    if (!(na > 0.0) || !(nb > 0.0))
        throw std::invalid_argument("overlap_fidelity: zero-norm state");
    return std::norm(inner_product(a, b)) / (na * nb);
}

FockVector rotated(const FockVector &v, double theta) {
    FockVector out = v;
    for (size_t n = 0; n < out.amps.size(); ++n)
        out.amps[n] *= std::polar(1.0, theta * static_cast<double>(n));
    return out;
}

QuadratureStats quadrature_stats(const FockVector &v) {
    const double n2 = norm2(v);
    if (std::abs(n2 - 1.0) > 1e-10)
        throw std::invalid_argument("quadrature_stats: state must be normalized to 1e-10");
    const auto &c = v.amps;
    const size_t len = c.size();

    complexd mean_a{0.0, 0.0};
    complexd mean_a2{0.0, 0.0};
    double mean_n = 0.0;
    for (size_t n = 0; n < len; ++n) {
        mean_n += static_cast<double>(n) * std::norm(c[n]);
        if (n + 1 < len)
            mean_a += std::conj(c[n]) * c[n + 1] * std::sqrt(static_cast<double>(n) + 1.0);
        if (n + 2 < len)
            mean_a2 += std::conj(c[n]) * c[n + 2] *
                       std::sqrt((static_cast<double>(n) + 1.0) * (static_cast<double>(n) + 2.0));
    }

    QuadratureStats stats;
    stats.mean_x = 2.0 * mean_a.real();
    stats.mean_p = 2.0 * mean_a.imag();
    // <x^2> = 2 Re<a^2> + 1 + 2<n>,  <p^2> = -2 Re<a^2> + 1 + 2<n>
    stats.var_x = 2.0 * mean_a2.real() + 1.0 + 2.0 * mean_n - stats.mean_x * stats.mean_x;
    stats.var_p = -2.0 * mean_a2.real() + 1.0 + 2.0 * mean_n - stats.mean_p * stats.mean_p;
    stats.tail_estimate = std::norm(c[len - 1]) + (len >= 2 ? std::norm(c[len - 2]) : 0.0);
    stats.tail_warning = stats.tail_estimate > 1e-8;
    return stats;
}

DensityMatrix DensityMatrix::thermal(double s, int n_max) {
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("DensityMatrix::thermal: s must be finite and >= 0");
    if (n_max < 0)
        throw std::invalid_argument("DensityMatrix::thermal: n_max must be >= 0");
    const double q = std::tanh(s) * std::tanh(s);
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_max + 1, n_max + 1);
    double p = 1.0 - q;
    for (int n = 0; n <= n_max; ++n) {
        m(n, n) = p;
        p *= q;
    }
    return DensityMatrix(std::move(m));
}

double DensityMatrix::hermiticity_residual() const {
    return (elems - elems.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(elems, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::normalized() const {
    const double tr = trace().real();
    if (!(tr > 0.0) || !std::isfinite(tr))
        throw std::invalid_argument("DensityMatrix::normalized: trace must be positive");
    return DensityMatrix(elems / tr);
}

TwoModeSchmidtState TwoModeSchmidtState::epr(double s, int n_max) {
    if (!(s >= 0.0) || !std::isfinite(s))
        throw std::invalid_argument("TwoModeSchmidtState::epr: s must be finite and >= 0");
    if (n_max < 0)
        throw std::invalid_argument("TwoModeSchmidtState::epr: n_max must be >= 0");
    TwoModeSchmidtState state;
    state.lambdas.resize(static_cast<size_t>(n_max) + 1);
    const double t = std::tanh(s);
    double l = 1.0 / std::cosh(s);
    for (int n = 0; n <= n_max; ++n) {
        state.lambdas[static_cast<size_t>(n)] = l;
        l *= t;
    }
    return state;
}

double TwoModeSchmidtState::norm2() const {
    double acc = 0.0;
    for (double l : lambdas)
        acc += l * l;
    return acc;
}

DensityMatrix TwoModeSchmidtState::reduced() const {
    const auto dim = static_cast<Eigen::Index>(lambdas.size());
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index n = 0; n < dim; ++n)
        m(n, n) = lambdas[static_cast<size_t>(n)] * lambdas[static_cast<size_t>(n)];
    return DensityMatrix(std::move(m));
}

DensityMatrix pure_to_density(const FockVector &v) {
    if (!v.finite() || v.amps.empty())
        throw std::invalid_argument("pure_to_density: state must be nonempty and finite");
    const auto vec = as_eigen(v);
    return DensityMatrix(vec * vec.adjoint());
}

namespace {

Eigen::MatrixXcd mix_tree(const std::vector<std::pair<double, DensityMatrix>> &parts, size_t lo,
                          size_t hi) {
    if (hi - lo == 1)
        return parts[lo].first * parts[lo].second.elems;
    const size_t mid = lo + (hi - lo) / 2;
    return mix_tree(parts, lo, mid) + mix_tree(parts, mid, hi);
}

} // namespace

DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>> &parts) {
    if (parts.empty())
        throw std::invalid_argument("mix: empty ensemble");
    const Eigen::Index dim = parts.front().second.elems.rows();
    for (const auto &[w, rho] : parts) {
        if (!(w >= 0.0) || !std::isfinite(w))
            throw std::invalid_argument("mix: weights must be finite and >= 0");
        if (rho.elems.rows() != dim || rho.elems.cols() != dim)
            throw std::invalid_argument("mix: dimension mismatch between components");
    }
    return DensityMatrix(mix_tree(parts, 0, parts.size()));
}

double trace_distance(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.elems.rows() != b.elems.rows() || a.elems.cols() != b.elems.cols())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    if (std::abs(a.trace().real() - 1.0) > 1e-8 || std::abs(b.trace().real() - 1.0) > 1e-8)
        throw std::invalid_argument("trace_distance: both states must be normalized to 1e-8");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.elems - b.elems,
                                                           Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace hnla::fock
