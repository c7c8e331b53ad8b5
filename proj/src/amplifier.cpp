#include "hnla/amplifier.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace hnla::amp {

namespace {

constexpr double log_budget = 690.0; // keep g^{2 n_max} * norm inside a double
constexpr double ln10 = 2.302585092994045684017991454684;

void check_gain(double g) {
    if (!(g > 0.0) || !std::isfinite(g))
        throw std::invalid_argument("gain must be finite and > 0");
}

// tanh of the transformed squeezing, g^2 tanh r, with the physicality check.
double transformed_tanh(double r, double g) {
    check_gain(g);
    if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument("squeezing strength r must be finite and >= 0");
    const double x = g * g * std::tanh(r);
    if (x >= 1.0) {
        std::ostringstream msg;
        msg << "unphysical gain: g^2 tanh r = " << x << " >= 1 (r = " << r << ", g = " << g << ")";
        throw unphysical_gain_error(msg.str());
    }
    return x;
}

double log_cosh_from_tanh(double t) { return -0.5 * std::log1p(-t * t); }

// candidate q range for the Chernoff tail bound: 1 < q, q tanh r < 1
std::pair<double, double> chernoff_q_range(double t) {
    const double q_top = t > 0.0 ? 1.0 + 0.9 * (1.0 / t - 1.0) : 1e9;
    const double q_bot = 1.0 + std::min(0.02, 0.1 * (q_top - 1.0));
    return {q_bot, q_top};
}

} // namespace

HnlaConfig::HnlaConfig(double g_, int n_trunc_) : g(g_), n_trunc(n_trunc_) {
    if (!(g > 1.0) || !std::isfinite(g))
        throw std::invalid_argument("HnlaConfig: amplitude gain must be > 1");
    if (n_trunc < 0)
        throw std::invalid_argument("HnlaConfig: truncation photon number must be >= 0");
}

HnlaConfig HnlaConfig::unchecked(double g_, int n_trunc_) {
    check_gain(g_);
    if (n_trunc_ < 0)
        throw std::invalid_argument("HnlaConfig: truncation photon number must be >= 0");
    HnlaConfig cfg;
    cfg.g = g_;
    cfg.n_trunc = n_trunc_;
    return cfg;
}

double squeezing_from_db(double db) { return db / 20.0 * ln10; }

double squeezing_to_db(double r) { return 20.0 * r / ln10; }

FiltrationResult apply_filtration_bruteforce(const fock::FockVector &v, double g) {
    check_gain(g);
    if (!v.finite() || v.amps.empty())
        throw std::invalid_argument("apply_filtration_bruteforce: state must be nonempty, finite");
    const double n2 = fock::norm2(v);
    if (2.0 * v.n_max() * std::log(g) + std::log(n2 + std::numeric_limits<double>::min()) >
        log_budget)
        throw cutoff_too_large_error(
            "apply_filtration_bruteforce: g^{2 n_max} exceeds the exponent budget");

    FiltrationResult out;
    out.state.amps.resize(v.amps.size());
    double gn = 1.0;
    for (size_t n = 0; n < v.amps.size(); ++n) {
        out.state.amps[n] = gn * v.amps[n];
        out.rel_weight += std::norm(out.state.amps[n]);
        gn *= g;
    }
    return out;
}

double transform_squeezing(double r, double g) { return std::atanh(transformed_tanh(r, g)); }

complexd transform_displacement(const fock::SqueezedCoherentParams &params, double g) {
    const double tp = transformed_tanh(params.r, g);
    const double t = std::tanh(params.r);
    const double c = std::cos(params.phi);
    const double s = std::sin(params.phi);
    const complexd gamma = g * (params.alpha + std::conj(params.alpha) * std::polar(t, params.phi));
    // (1 + t'c) a + t's b = Re gamma;  t's a + (1 - t'c) b = Im gamma
    const double det = 1.0 - tp * tp;
    const double re = ((1.0 - tp * c) * gamma.real() - tp * s * gamma.imag()) / det;
    const double im = (-tp * s * gamma.real() + (1.0 + tp * c) * gamma.imag()) / det;
    return {re, im};
}

QuadratureGains quadrature_gains(double r, double g) {
    const double tp = transformed_tanh(r, g);
    const double t = std::tanh(r);
    return {g * (1.0 + t) / (1.0 + tp), g * (1.0 - t) / (1.0 - tp)};
}

double log_success_weight_closed_form(const fock::SqueezedCoherentParams &params, double g) {
    const double tp = transformed_tanh(params.r, g);
    const double t = std::tanh(params.r);
    const complexd ap = transform_displacement(params, g);
    const complexd tau = std::polar(t, params.phi);
    const complexd taup = std::polar(tp, params.phi);
    const double in_term =
        (std::conj(params.alpha) * (params.alpha + std::conj(params.alpha) * tau)).real();
    const double out_term = (std::conj(ap) * (ap + std::conj(ap) * taup)).real();
    return log_cosh_from_tanh(tp) - log_cosh_from_tanh(t) + out_term - in_term;
}

double success_weight_closed_form(const fock::SqueezedCoherentParams &params, double g) {
    const double lw = log_success_weight_closed_form(params, g);
    if (lw > log_budget)
        throw cutoff_too_large_error(
            "success_weight_closed_form: weight exceeds the exponent budget");
    return std::exp(lw);
}

TransformResult transform_params(const fock::SqueezedCoherentParams &params, double g) {
    TransformResult out;
    const double rp = transform_squeezing(params.r, g);
    out.params_out = fock::SqueezedCoherentParams(transform_displacement(params, g), rp,
                                                  params.phi);
    out.rel_success_weight = success_weight_closed_form(params, g);
    return out;
}

TruncatedSqueezerResult truncated_squeezer(double r, double phi, double g, int n_trunc) {
    check_gain(g);
    if (n_trunc < 0)
        throw std::invalid_argument("truncated_squeezer: n_trunc must be >= 0");
    if (std::abs(n_trunc * std::log(g)) > log_budget)
        throw cutoff_too_large_error("truncated_squeezer: g^{n_trunc} exceeds the exponent budget");
    const double rp = transform_squeezing(r, g);

    // Renormalized truncated input, then T = g^{n - N} on it.
    const fock::FockVector input_tr = fock::vacuum_squeezed_coeffs(r, phi, n_trunc);
    const double f_in = fock::norm2(input_tr);
    fock::FockVector out;
    out.amps.resize(input_tr.amps.size());
    double p_succ = 0.0;
    const double inv_norm = 1.0 / std::sqrt(f_in);
    for (int n = 0; n <= n_trunc; ++n) {
        const double scale = std::exp(static_cast<double>(n - n_trunc) * std::log(g));
        out.amps[static_cast<size_t>(n)] = scale * inv_norm * input_tr.amps[static_cast<size_t>(n)];
        p_succ += std::norm(out.amps[static_cast<size_t>(n)]);
    }

    // Ideal output at a cutoff wide enough that its own tail is negligible.
    const int n_ideal =
        std::max(n_trunc, auto_cutoff(fock::SqueezedCoherentParams({0.0, 0.0}, rp, phi), 1e-13));
    const fock::FockVector ideal = fock::vacuum_squeezed_coeffs(rp, phi, n_ideal);

    TruncatedSqueezerResult res;
    res.fidelity = std::norm(fock::inner_product(ideal, out)) / p_succ;
    res.p_succ = p_succ;

    // Truncated-norm-ratio formula, evaluated in the log domain so large N
    // cannot overflow g^{2N}.
    double f_out = 0.0;
    for (int n = 0; n <= n_trunc; ++n)
        f_out += std::norm(ideal.amps[static_cast<size_t>(n)]);
    res.p_succ_norm_ratio =
        std::exp(std::log(f_out) - 2.0 * n_trunc * std::log(g) - std::log(f_in));
    return res;
}

TruncatedSqueezerResult truncated_squeezer(double r, double phi, const HnlaConfig &config) {
    return truncated_squeezer(r, phi, config.g, config.n_trunc);
}

double tail_bound(const fock::SqueezedCoherentParams &params, int n_cut) {
    if (n_cut < 0)
        throw std::invalid_argument("tail_bound: n_cut must be >= 0");
    const auto [q_bot, q_top] = chernoff_q_range(std::tanh(params.r));
    double best = std::numeric_limits<double>::infinity();
    const int steps = 80;
    const double lo = std::log(q_bot);
    const double hi = std::log(q_top);
    for (int k = 0; k < steps; ++k) {
        const double q = std::exp(lo + (hi - lo) * k / (steps - 1));
        const double lw = log_success_weight_closed_form(params, std::sqrt(q));
        const double log_tail = lw - (n_cut + 1.0) * std::log(q);
        best = std::min(best, log_tail);
    }
    return best > log_budget ? std::numeric_limits<double>::infinity() : std::exp(best);
}

int auto_cutoff(const fock::SqueezedCoherentParams &params, double tail_eps) {
    if (!(tail_eps > 0.0) || !(tail_eps < 1.0))
        throw std::invalid_argument("auto_cutoff: tail_eps must lie in (0, 1)");
    const auto [q_bot, q_top] = chernoff_q_range(std::tanh(params.r));
    const double log_eps = std::log(tail_eps);
    long best = std::numeric_limits<long>::max();
    const int steps = 80;
    const double lo = std::log(q_bot);
    const double hi = std::log(q_top);
    for (int k = 0; k < steps; ++k) {
        const double q = std::exp(lo + (hi - lo) * k / (steps - 1));
        const double lw = log_success_weight_closed_form(params, std::sqrt(q));
        // tail(N) <= exp(lw - (N+1) log q) <= eps
        const double needed = std::ceil((lw - log_eps) / std::log(q)) - 1.0;
        best = std::min(best, static_cast<long>(std::max(0.0, needed)));
    }
    if (best > 2000000L)
        throw cutoff_too_large_error("auto_cutoff: required cutoff is impractically large");
    return static_cast<int>(best);
}

} // namespace hnla::amp
