#pragma once

// Test-only oracles, independent of the library's evaluation paths, plus
// reference values frozen from a 40-digit mpmath evaluation of the same
// formulas. Oracles here favor directness over stability: they compute
// factorials/binomials explicitly and are only trusted for the moderate
// orders used in tests.

#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using complexd = std::complex<double>;

// H_n(z) by the explicit finite sum n! sum_m (-1)^m (2z)^{n-2m} / (m! (n-2m)!).
inline complexd hermite_sum(int n, complexd z) {
    complexd acc{0.0, 0.0};
    for (int m = 0; 2 * m <= n; ++m) {
        const double log_coeff = std::lgamma(n + 1.0) - std::lgamma(m + 1.0) -
                                 std::lgamma(n - 2.0 * m + 1.0);
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;
        acc += sign * std::exp(log_coeff) * std::pow(2.0 * z, static_cast<double>(n - 2 * m));
    }
    return acc;
}

// Squeezed-vacuum amplitude c_{2m} straight from the closed form, one
// coefficient at a time (binomial via lgamma).
inline complexd vacuum_squeezed_direct(double r, double phi, int n) {
    if (n % 2 != 0)
        return {0.0, 0.0};
    const int m = n / 2;
    const double log_binom =
        std::lgamma(2.0 * m + 1.0) - 2.0 * std::lgamma(static_cast<double>(m) + 1.0);
    const complexd base = -0.5 * std::polar(std::tanh(r), phi);
    return std::pow(base, m) * std::exp(0.5 * log_binom) / std::sqrt(std::cosh(r));
}

// Truncated squared norm of the squeezed vacuum, f_N(r), by direct summation.
inline double truncated_norm_direct(double r, int n_max) {
    double acc = 0.0;
    for (int n = 0; n <= n_max; n += 2)
        acc += std::norm(vacuum_squeezed_direct(r, 0.0, n));
    return acc;
}

// Trace distance of two diagonal (thermal) states: 1/2 sum |p_n - q_n|.
inline double thermal_diagonal_distance(double s1, double s2, int n_max) {
    const double q1 = std::tanh(s1) * std::tanh(s1);
    const double q2 = std::tanh(s2) * std::tanh(s2);
    double acc = 0.0;
    double p1 = 1.0 - q1;
    double p2 = 1.0 - q2;
    for (int n = 0; n <= n_max; ++n) {
        acc += std::abs(p1 - p2);
        p1 *= q1;
        p2 *= q2;
    }
    return 0.5 * acc;
}

// ---- constants frozen from the mpmath evaluation ----

// 4 dB of squeezing: r = (4/20) ln 10.
inline constexpr double r_4db = 0.4605170185988091;

// truncated norm of the squeezed vacuum at r = 0.46052, n_max = 2
inline constexpr double vac_norm2_r046052_n2 = 0.9862281942130743;

// transformation at r = 0.46052, g = 1.1
inline constexpr double tanh_r_046052 = 0.4305079309385186;
inline constexpr double tanh_rp_046052_g11 = 0.5209145964356076;
inline constexpr double rp_046052_g11 = 0.5775941320040879;
inline constexpr double gain_x_046052_g11 = 1.0346134672651173;
inline constexpr double gain_p_046052_g11 = 1.3075774617780259;
inline constexpr double xprime_x2_046052_g11 = 2.0692269345302345;
inline constexpr double weight_vac_046052_g11 = 1.0573775651328081; // cosh r'/cosh r
inline constexpr double fid_n0_046052_g11 = 0.8536087998728271;     // 1/cosh r'

// truncated device at the (g = 1.1, 4 dB, N = 2) operating point
inline constexpr double fig1_fidelity = 0.9694237645479631;
inline constexpr double fig1_p_succ_operational = 0.7098966094702003;
inline constexpr double fig1_p_succ_norm_ratio = 0.6713753092813861;

// EPR amplification at s = 0.5, g = 1.1
inline constexpr double epr_tanh_s_prime = 0.5083288729860107;
inline constexpr double epr_s_prime = 0.5604737791838387;
inline constexpr double epr_nu_prime = 0.3484326199485841; // sinh^2 s'

// homodyne preparation at s = 0.5
inline constexpr double homodyne_r_s05 = 0.21689041524151359;
inline constexpr double homodyne_tanh_r_s05 = 0.21355226703407259;
inline constexpr double homodyne_sigma2_s05 = 0.8950263611513584;

// overlap of squeezed vacua r = 0.3 and r = 0.7 (same angle):
// <0,r|0,r'> = 1/sqrt(cosh(r - r'))
inline constexpr double overlap_vac_03_07 = 0.9617730771370942;

} // namespace oracle
