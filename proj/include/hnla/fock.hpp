#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "hnla/errors.hpp"

namespace hnla {

using complexd = std::complex<double>;

namespace fock {

/// Single-mode pure state as complex amplitudes over |0>, ..., |n_max>.
struct FockVector {
    std::vector<complexd> amps;

    FockVector() = default;
    explicit FockVector(std::vector<complexd> a) : amps(std::move(a)) {}

    /// Basis state |n> embedded in a space with cutoff n_max.
    static FockVector basis(int n, int n_max);

    int n_max() const { return static_cast<int>(amps.size()) - 1; }
    bool finite() const;
};

/// Displacement alpha = (x + i p)/2 and squeezing xi = r e^{i phi} of a
/// Gaussian pure state. phi is stored normalized to [0, 2*pi).
struct SqueezedCoherentParams {
    complexd alpha{0.0, 0.0};
    double r = 0.0;
    double phi = 0.0;

    SqueezedCoherentParams() = default;
    SqueezedCoherentParams(complexd alpha_, double r_, double phi_);

    double x() const { return 2.0 * alpha.real(); }
    double p() const { return 2.0 * alpha.imag(); }
    complexd xi() const { return std::polar(r, phi); }
};

/// Hermitian operator on the truncated Fock space. Trace is kept explicit:
/// mixtures are not renormalized unless the caller asks for it.
struct DensityMatrix {
    Eigen::MatrixXcd elems;

    DensityMatrix() = default;
    explicit DensityMatrix(Eigen::MatrixXcd m) : elems(std::move(m)) {}

    /// Thermal state of two-mode squeezing parameter s: geometric photon
    /// distribution (tanh s)^{2n} (1 - tanh^2 s), mean photon sinh^2 s,
    /// truncated at n_max (trace < 1 by the truncated tail).
    static DensityMatrix thermal(double s, int n_max);

    int n_max() const { return static_cast<int>(elems.rows()) - 1; }
    complexd trace() const { return elems.trace(); }
    double hermiticity_residual() const;
    double min_eigenvalue() const;
    DensityMatrix normalized() const;
};

/// Two-mode state sum_n lambda_n |n>|n> held by its Schmidt coefficients.
struct TwoModeSchmidtState {
    std::vector<double> lambdas;

    /// Two-mode vacuum squeezed state: lambda_n = (tanh s)^n / cosh s.
    static TwoModeSchmidtState epr(double s, int n_max);

    double norm2() const;
    /// Partial trace over either mode: diag(lambda_n^2).
    DensityMatrix reduced() const;
};

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence
/// H_{k+1} = 2 z H_k - 2 k H_{k-1}. Guarded at n <= 10000.
complexd hermite(int n, complexd z);

/// Fock amplitudes of the squeezed vacuum |0, r e^{i phi}>:
///   c_{2n} = (cosh r)^{-1/2} sqrt(C(2n, n)) (-e^{i phi} tanh r / 2)^n,
/// odd amplitudes exactly zero. Amplitudes of the untruncated normalized
/// state cut at n_max, so the truncated squared norm is < 1 for r > 0.
FockVector vacuum_squeezed_coeffs(double r, double phi, int n_max);

/// Fock amplitudes of the coherent squeezed state |alpha, r e^{i phi}>.
///
/// The textbook expansion multiplies H_n by (tanh r / 2)^{n/2} / sqrt(n!);
/// both factors overflow separately near n ~ 170 while the amplitude stays
/// bounded. We therefore carry the amplitude itself through the two-term
/// recurrence implied by the Hermite one,
///   u_{n+1} = (beta u_n - tau sqrt(n) u_{n-1}) / sqrt(n+1),
/// with beta = alpha + conj(alpha) tau, tau = e^{i phi} tanh r, and track
/// the prefactor exp{-(|alpha|^2 + conj(alpha)^2 tau)/2} / sqrt(cosh r) in
/// the log domain. At r below 1e-12 the Hermite argument is singular and
/// the Poissonian coherent-state branch is used instead.
FockVector coherent_squeezed_coeffs(const SqueezedCoherentParams &params, int n_max);

/// <a|b> = sum_n conj(a_n) b_n; the shorter vector is zero-padded.
complexd inner_product(const FockVector &a, const FockVector &b);

double norm2(const FockVector &v);
FockVector normalized(const FockVector &v);

/// |<a|b>|^2 / (<a|a> <b|b>).
double overlap_fidelity(const FockVector &a, const FockVector &b);

/// Phase-space rotation e^{i theta n}: c_n -> e^{i n theta} c_n.
FockVector rotated(const FockVector &v, double theta);

/// First and second moments of x = a + a^dag and p = -i(a - a^dag)
/// (vacuum variance 1). Moments are cutoff-sensitive, so a truncation-tail
/// estimate is reported and tail_warning is set (never thrown) when it
/// exceeds 1e-8.
struct QuadratureStats {
    double mean_x = 0.0;
    double mean_p = 0.0;
    double var_x = 0.0;
    double var_p = 0.0;
    double tail_estimate = 0.0;
    bool tail_warning = false;
};
QuadratureStats quadrature_stats(const FockVector &v);

DensityMatrix pure_to_density(const FockVector &v);

/// rho = sum_i w_i rho_i with trace sum_i w_i tr(rho_i); not renormalized.
/// Summation runs over a fixed-topology pairwise tree so the result is
/// bit-stable regardless of how callers partition the work.
DensityMatrix mix(const std::vector<std::pair<double, DensityMatrix>> &parts);

/// D(a, b) = 1/2 sum |eigenvalues of a - b|. Requires equal cutoffs and
/// traces within 1e-8 of 1.
double trace_distance(const DensityMatrix &a, const DensityMatrix &b);

} // namespace fock
} // namespace hnla
