#pragma once

#include <complex>

#include "hnla/fock.hpp"

namespace hnla::amp {

/// Operating point of the heralded amplifier: amplitude gain g > 1 and the
/// photon-number truncation N of the physical (approximate) device. The
/// derived setup parameter eta satisfies g = sqrt((1 - eta)/eta).
struct HnlaConfig {
    double g;
    int n_trunc;

    HnlaConfig(double g_, int n_trunc_);

    /// Test fixtures may need g <= 1 (identity and attenuation corners);
    /// production code must go through the checked constructor.
    static HnlaConfig unchecked(double g_, int n_trunc_);

    double eta() const { return 1.0 / (1.0 + g * g); }

  private:
    HnlaConfig() = default;
};

/// Closed-form image of a squeezed coherent state under the ideal heralded
/// amplifier, with its relative success weight.
struct TransformResult {
    fock::SqueezedCoherentParams params_out;
    double rel_success_weight = 0.0;
};

struct FiltrationResult {
    fock::FockVector state; // unnormalized, amplitude n scaled by g^n
    double rel_weight = 0.0;
};

/// Brute-force filtration g^{n} on each amplitude. rel_weight is
/// sum_n g^{2n} |v_n|^2 -- a *relative* success weight: the ideal device's
/// absolute probability carries a vanishing normalization, so only ratios
/// between inputs at the same gain are physical.
FiltrationResult apply_filtration_bruteforce(const fock::FockVector &v, double g);

/// r' = artanh(g^2 tanh r). Throws unphysical_gain_error when
/// g^2 tanh r >= 1 (the output squeezing would diverge).
double transform_squeezing(double r, double g);

/// Displacement map alpha' solving
///   alpha' + conj(alpha') e^{i phi} tanh r' = g (alpha + conj(alpha) e^{i phi} tanh r)
/// as a 2x2 real linear system (determinant 1 - tanh^2 r' > 0, so the
/// solution is unique and well conditioned).
complexd transform_displacement(const fock::SqueezedCoherentParams &params, double g);

/// Mean-field gains for an x-squeezed input (phi = 0):
///   gain_x = g (1 + tanh r)/(1 + tanh r'),  gain_p = g (1 - tanh r)/(1 - tanh r').
/// For r > 0 the squeezed quadrature is amplified sublinearly (gain_x < g)
/// and the antisqueezed one superlinearly (gain_p > g).
struct QuadratureGains {
    double gain_x = 0.0;
    double gain_p = 0.0;
};
QuadratureGains quadrature_gains(double r, double g);

/// log of success_weight_closed_form; safe for exponents far outside the
/// double range (used by the tail bound).
double log_success_weight_closed_form(const fock::SqueezedCoherentParams &params, double g);

/// Relative success weight of the ideal device on |alpha, xi>:
///   (cosh r'/cosh r) exp{ Re[conj(a')(a' + conj(a') e^{i phi} tanh r')]
///                        - Re[conj(a)(a + conj(a) e^{i phi} tanh r)] }.
/// Matches apply_filtration_bruteforce on a unit-norm input.
double success_weight_closed_form(const fock::SqueezedCoherentParams &params, double g);

/// Squeezing, displacement and weight in one call.
TransformResult transform_params(const fock::SqueezedCoherentParams &params, double g);

/// Physical device truncated at N: T = g^{n}/g^N applied to the input cut
/// at N and renormalized.
///   fidelity      -- |<ideal output | truncated output>|^2,
///   p_succ        -- ||T psi_tr||^2 with psi_tr the renormalized truncated
///                    input (the operational success probability),
///   p_succ_norm_ratio -- the truncated-norm-ratio formula
///                    f_N(r')/(g^{2N} f_N(r)), reported alongside because it
///                    differs from p_succ by the factor cosh r'/cosh r.
struct TruncatedSqueezerResult {
    double fidelity = 0.0;
    double p_succ = 0.0;
    double p_succ_norm_ratio = 0.0;
};
TruncatedSqueezerResult truncated_squeezer(double r, double phi, double g, int n_trunc);
TruncatedSqueezerResult truncated_squeezer(double r, double phi, const HnlaConfig &config);

/// Chernoff-style tail bound: for any q in (1, 1/tanh r),
///   sum_{n > N} |c_n|^2 <= <q^{n}> / q^{N+1},
/// with <q^{n}> evaluated by the success-weight closed form at gain sqrt(q).
/// Always an over-estimate of the true tail mass beyond n_cut.
double tail_bound(const fock::SqueezedCoherentParams &params, int n_cut);

/// Smallest cutoff whose bounded tail mass is below tail_eps. Every
/// consumer accepts a manual override; this is only the default policy.
int auto_cutoff(const fock::SqueezedCoherentParams &params, double tail_eps);

/// Squeezing strength r of a "d dB" squeezer: e^{-2r} = 10^{-d/10}.
double squeezing_from_db(double db);
double squeezing_to_db(double r);

} // namespace hnla::amp
