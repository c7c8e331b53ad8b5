#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hnla/fock.hpp"
#include "oracles.hpp"

using namespace hnla;
using namespace hnla::fock;

namespace {

constexpr double pi = std::numbers::pi;

std::mt19937 rng_for(const char *tag) {
    std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
    return std::mt19937(seq);
}

} // namespace

TEST_CASE("hermite: base cases and known values") {
    CHECK(hermite(0, {3.7, -1.2}) == complexd(1.0, 0.0));
    CHECK(hermite(1, {0.5, 0.0}) == complexd(1.0, 0.0));
    // even-order value at zero: (-1)^{n/2} n!/(n/2)!
    CHECK(hermite(2, {0.0, 0.0}).real() == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(hermite(3, {1.5, 0.0}).real() == doctest::Approx(9.0).epsilon(1e-14));
    CHECK(hermite(3, {1.5, 0.0}).imag() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("hermite: matches the explicit finite sum") {
    auto rng = rng_for("hermite-oracle");
    std::uniform_real_distribution<double> unit(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = static_cast<int>(rng() % 13);
        const complexd z{unit(rng), unit(rng)};
        const complexd got = hermite(n, z);
        const complexd want = oracle::hermite_sum(n, z);
        CHECK(std::abs(got - want) <= 1e-9 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("hermite: order guard") {
    CHECK_THROWS_AS(hermite(-1, {0.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(hermite(10001, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("vacuum_squeezed_coeffs: vacuum limit") {
    const FockVector v = vacuum_squeezed_coeffs(0.0, 0.0, 10);
    CHECK(v.amps[0] == complexd(1.0, 0.0));
    for (int n = 1; n <= 10; ++n)
        CHECK(v.amps[static_cast<size_t>(n)] == complexd(0.0, 0.0));
}

TEST_CASE("vacuum_squeezed_coeffs: odd amplitudes are exactly zero") {
    auto rng = rng_for("parity");
    std::uniform_real_distribution<double> rdist(0.0, 1.5);
    std::uniform_real_distribution<double> phidist(0.0, 2.0 * pi);
    for (int trial = 0; trial < 20; ++trial) {
        const FockVector v = vacuum_squeezed_coeffs(rdist(rng), phidist(rng), 41);
        for (size_t n = 1; n < v.amps.size(); n += 2)
            CHECK(v.amps[n] == complexd(0.0, 0.0));
    }
}

TEST_CASE("vacuum_squeezed_coeffs: truncated norm at r = 0.46052") {
    // oracle first: the direct per-coefficient summation reproduces the
    // frozen reference, then the recurrence path must agree with both
    const double direct = oracle::truncated_norm_direct(0.46052, 2);
    CHECK(direct == doctest::Approx(oracle::vac_norm2_r046052_n2).epsilon(1e-13));
    const FockVector v = vacuum_squeezed_coeffs(0.46052, 0.0, 2);
    CHECK(norm2(v) == doctest::Approx(oracle::vac_norm2_r046052_n2).epsilon(1e-13));
}

TEST_CASE("vacuum_squeezed_coeffs: entrywise against the direct closed form") {
    auto rng = rng_for("vacsq-direct");
    std::uniform_real_distribution<double> rdist(0.0, 1.2);
    std::uniform_real_distribution<double> phidist(0.0, 2.0 * pi);
    for (int trial = 0; trial < 10; ++trial) {
        const double r = rdist(rng);
        const double phi = phidist(rng);
        const FockVector v = vacuum_squeezed_coeffs(r, phi, 60);
        for (int n = 0; n <= 60; ++n) {
            const complexd want = oracle::vacuum_squeezed_direct(r, phi, n);
            CHECK(std::abs(v.amps[static_cast<size_t>(n)] - want) < 1e-13);
        }
    }
}

TEST_CASE("coherent_squeezed_coeffs: alpha = 0 reduces to the squeezed vacuum") {
    const SqueezedCoherentParams params({0.0, 0.0}, 0.3, pi / 4.0);
    const FockVector a = coherent_squeezed_coeffs(params, 40);
    const FockVector b = vacuum_squeezed_coeffs(0.3, pi / 4.0, 40);
    for (size_t n = 0; n < a.amps.size(); ++n)
        CHECK(std::abs(a.amps[n] - b.amps[n]) < 1e-12);
}

TEST_CASE("coherent_squeezed_coeffs: r = 0 gives Poissonian amplitudes") {
    const SqueezedCoherentParams params({1.0, 0.0}, 0.0, 0.0);
    const FockVector v = coherent_squeezed_coeffs(params, 60);
    for (int n = 0; n <= 60; ++n) {
        const double want = std::exp(-0.5 - 0.5 * std::lgamma(n + 1.0));
        CHECK(v.amps[static_cast<size_t>(n)].real() == doctest::Approx(want).epsilon(1e-12));
        CHECK(v.amps[static_cast<size_t>(n)].imag() == 0.0);
    }
}

TEST_CASE("coherent_squeezed_coeffs: normalized to 1e-10 at a wide cutoff") {
    const SqueezedCoherentParams params({0.7, 0.2}, 0.5, 1.0);
    CHECK(std::abs(norm2(coherent_squeezed_coeffs(params, 80)) - 1.0) < 1e-10);
}

TEST_CASE("coherent_squeezed_coeffs: phase covariance") {
    // rotating alpha by theta and phi by 2 theta multiplies c_n by e^{i n theta}
    auto rng = rng_for("phase-covariance");
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * pi);
    for (int trial = 0; trial < 10; ++trial) {
        const complexd alpha{unit(rng), unit(rng)};
        const double r = 0.1 + 0.6 * std::abs(unit(rng));
        const double phi = angle(rng);
        const double theta = angle(rng);
        const FockVector base = coherent_squeezed_coeffs({alpha, r, phi}, 50);
        const FockVector moved = coherent_squeezed_coeffs(
            {alpha * std::polar(1.0, theta), r, phi + 2.0 * theta}, 50);
        const FockVector want = rotated(base, theta);
        for (size_t n = 0; n < want.amps.size(); ++n)
            CHECK(std::abs(moved.amps[n] - want.amps[n]) < 1e-10);
    }
}

TEST_CASE("coherent_squeezed_coeffs: truncated norm is nondecreasing and converges to 1") {
    const SqueezedCoherentParams params({0.9, -0.4}, 0.6, 2.1);
    double prev = 0.0;
    for (int n_max : {5, 10, 20, 40, 80, 120}) {
        const double n2 = norm2(coherent_squeezed_coeffs(params, n_max));
        CHECK(n2 >= prev - 1e-15);
        prev = n2;
    }
    CHECK(prev == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("coherent_squeezed_coeffs: stays bounded far beyond the factorial overflow point") {
    const SqueezedCoherentParams params({2.0, 1.0}, 0.8, 0.7);
    const FockVector v = coherent_squeezed_coeffs(params, 400);
    CHECK(v.finite());
    CHECK(std::abs(norm2(v) - 1.0) < 1e-10);
}

TEST_CASE("inner_product: orthogonality and zero padding") {
    CHECK(inner_product(FockVector::basis(0, 5), FockVector::basis(1, 5)) == complexd(0.0, 0.0));
    const FockVector psi = coherent_squeezed_coeffs({{0.4, 0.1}, 0.2, 0.3}, 30);
    CHECK(inner_product(psi, psi).real() == doctest::Approx(norm2(psi)).epsilon(1e-14));
    CHECK(inner_product(psi, psi).imag() == doctest::Approx(0.0).epsilon(1e-16));
    // shorter vector is zero padded
    const FockVector low = FockVector::basis(1, 1);
    CHECK(inner_product(low, psi) == psi.amps[1]);
}

TEST_CASE("inner_product: squeezed-vacuum overlap closed form") {
    const FockVector a = vacuum_squeezed_coeffs(0.3, 0.0, 200);
    const FockVector b = vacuum_squeezed_coeffs(0.7, 0.0, 200);
    const complexd got = inner_product(a, b);
    CHECK(got.real() == doctest::Approx(oracle::overlap_vac_03_07).epsilon(1e-10));
    CHECK(std::abs(got.imag()) < 1e-14);
}

TEST_CASE("quadrature_stats: vacuum, coherent and squeezed moments") {
    const QuadratureStats vac = quadrature_stats(FockVector::basis(0, 10));
    CHECK(vac.mean_x == 0.0);
    CHECK(vac.mean_p == 0.0);
    CHECK(vac.var_x == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(vac.var_p == doctest::Approx(1.0).epsilon(1e-14));

    const complexd alpha{0.45, -0.3};
    const QuadratureStats coh =
        quadrature_stats(coherent_squeezed_coeffs({alpha, 0.0, 0.0}, 50));
    CHECK(coh.mean_x == doctest::Approx(2.0 * alpha.real()).epsilon(1e-11));
    CHECK(coh.mean_p == doctest::Approx(2.0 * alpha.imag()).epsilon(1e-11));
    CHECK(coh.var_x == doctest::Approx(1.0).epsilon(1e-11));
    CHECK(coh.var_p == doctest::Approx(1.0).epsilon(1e-11));

    const double r = 0.6;
    const QuadratureStats sq = quadrature_stats(vacuum_squeezed_coeffs(r, 0.0, 80));
    CHECK(sq.mean_x == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(sq.var_x == doctest::Approx(std::exp(-2.0 * r)).epsilon(1e-8));
    CHECK(sq.var_p == doctest::Approx(std::exp(2.0 * r)).epsilon(1e-8));
    CHECK_FALSE(sq.tail_warning);
}

TEST_CASE("quadrature_stats: minimum uncertainty for pure Gaussian states") {
    auto rng = rng_for("min-uncertainty");
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        const SqueezedCoherentParams params({unit(rng), unit(rng)},
                                            0.7 * std::abs(unit(rng)), 0.0);
        const QuadratureStats st = quadrature_stats(coherent_squeezed_coeffs(params, 120));
        CHECK(st.var_x * st.var_p == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("quadrature_stats: requires normalization, warns on fat tails") {
    FockVector unnorm = FockVector::basis(0, 3);
    unnorm.amps[0] = 2.0;
    CHECK_THROWS_AS(quadrature_stats(unnorm), std::invalid_argument);

    // heavily squeezed state chopped at a low cutoff, renormalized: the
    // truncation tail is no longer negligible and must be flagged
    const FockVector chopped = normalized(vacuum_squeezed_coeffs(1.2, 0.0, 6));
    const QuadratureStats st = quadrature_stats(chopped);
    CHECK(st.tail_warning);
}

TEST_CASE("pure_to_density and mix") {
    const FockVector psi = coherent_squeezed_coeffs({{0.3, 0.2}, 0.4, 1.1}, 40);
    const DensityMatrix proj = pure_to_density(psi);
    CHECK(proj.trace().real() == doctest::Approx(norm2(psi)).epsilon(1e-13));
    CHECK(proj.hermiticity_residual() < 1e-14);

    const DensityMatrix half_half = mix({{0.5, pure_to_density(FockVector::basis(0, 1))},
                                         {0.5, pure_to_density(FockVector::basis(1, 1))}});
    CHECK(half_half.elems(0, 0).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(half_half.elems(1, 1).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(std::abs(half_half.elems(0, 1)) == 0.0);

    CHECK_THROWS_AS(mix({{-0.1, pure_to_density(FockVector::basis(0, 1))}}),
                    std::invalid_argument);
}

TEST_CASE("mix: geometric mixture of Fock projectors is the thermal state") {
    const double s = 0.5;
    const int n_max = 60;
    const double q = std::tanh(s) * std::tanh(s);
    std::vector<std::pair<double, DensityMatrix>> parts;
    double w = 1.0 - q;
    for (int n = 0; n <= n_max; ++n) {
        parts.emplace_back(w, pure_to_density(FockVector::basis(n, n_max)));
        w *= q;
    }
    const DensityMatrix got = mix(parts);
    const DensityMatrix want = DensityMatrix::thermal(s, n_max);
    CHECK((got.elems - want.elems).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("trace_distance: extremes and the diagonal oracle") {
    const DensityMatrix rho = pure_to_density(
        normalized(coherent_squeezed_coeffs({{0.2, 0.1}, 0.3, 0.0}, 30)));
    CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));

    const DensityMatrix zero = pure_to_density(FockVector::basis(0, 5));
    const DensityMatrix one = pure_to_density(FockVector::basis(1, 5));
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0).epsilon(1e-12));

    const double s = 0.5;
    const double s2 = std::atanh(1.1 * std::tanh(s));
    const int n_max = 80;
    const DensityMatrix a = DensityMatrix::thermal(s, n_max).normalized();
    const DensityMatrix b = DensityMatrix::thermal(s2, n_max).normalized();
    const double got = trace_distance(a, b);
    CHECK(got > 0.0);
    // diagonal matrices: eigenvalues are the entries, so the halved l1 norm
    // of renormalized geometric distributions is an independent route
    double l1 = 0.0;
    double qa = std::tanh(s) * std::tanh(s);
    double qb = std::tanh(s2) * std::tanh(s2);
    const double norm_a = 1.0 - std::pow(qa, n_max + 1.0);
    const double norm_b = 1.0 - std::pow(qb, n_max + 1.0);
    double pa = (1.0 - qa) / norm_a;
    double pb = (1.0 - qb) / norm_b;
    for (int n = 0; n <= n_max; ++n) {
        l1 += std::abs(pa - pb);
        pa *= qa;
        pb *= qb;
    }
    CHECK(got == doctest::Approx(0.5 * l1).epsilon(1e-12));

    CHECK_THROWS_AS(trace_distance(zero, DensityMatrix::thermal(0.4, 9).normalized()),
                    std::invalid_argument);
    CHECK_THROWS_AS(trace_distance(DensityMatrix(Eigen::MatrixXcd::Zero(6, 6)), zero),
                    std::invalid_argument);
}

TEST_CASE("trace_distance: metric axioms on random mixed states") {
    auto rng = rng_for("metric-axioms");
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const int n_max = 18;
    auto random_density = [&] {
        std::vector<std::pair<double, DensityMatrix>> parts;
        double total = 0.0;
        for (int k = 0; k < 3; ++k) {
            const SqueezedCoherentParams params({0.6 * unit(rng), 0.6 * unit(rng)},
                                                0.3 * std::abs(unit(rng)),
                                                pi * (unit(rng) + 1.0));
            const double w = 0.1 + std::abs(unit(rng));
            total += w;
            parts.emplace_back(w,
                               pure_to_density(normalized(
                                   coherent_squeezed_coeffs(params, n_max))));
        }
        for (auto &p : parts)
            p.first /= total;
        return mix(parts);
    };
    for (int trial = 0; trial < 8; ++trial) {
        const DensityMatrix a = random_density();
        const DensityMatrix b = random_density();
        const DensityMatrix c = random_density();
        const double dab = trace_distance(a, b);
        const double dba = trace_distance(b, a);
        const double dac = trace_distance(a, c);
        const double dcb = trace_distance(c, b);
        CHECK(dab == doctest::Approx(dba).epsilon(1e-12));
        CHECK(dab <= dac + dcb + 1e-12);
        CHECK(dab >= 0.0);
        CHECK(dab <= 1.0 + 1e-10);
        // D = 0 iff the entries agree
        const double max_entry_diff = (a.elems - b.elems).cwiseAbs().maxCoeff();
        if (dab < 1e-14)
            CHECK(max_entry_diff < 1e-10);
        if (max_entry_diff < 1e-14)
            CHECK(dab < 1e-10);
    }
}

TEST_CASE("DensityMatrix: thermal invariants") {
    const DensityMatrix th = DensityMatrix::thermal(0.5, 40);
    CHECK(th.hermiticity_residual() == 0.0);
    CHECK(th.min_eigenvalue() >= -1e-10);
    CHECK(th.trace().real() == doctest::Approx(1.0).epsilon(1e-12)); // tiny truncated tail
    double mean = 0.0;
    for (int n = 0; n <= 40; ++n)
        mean += n * th.elems(n, n).real();
    CHECK(mean == doctest::Approx(std::sinh(0.5) * std::sinh(0.5)).epsilon(1e-10));
}

TEST_CASE("TwoModeSchmidtState: EPR coefficients and reduction") {
    const auto epr = TwoModeSchmidtState::epr(0.5, 50);
    CHECK(epr.norm2() <= 1.0 + 1e-12);
    const double ratio = std::tanh(0.5);
    for (size_t n = 0; n + 1 < epr.lambdas.size(); ++n) {
        CHECK(epr.lambdas[n] >= 0.0);
        CHECK(epr.lambdas[n + 1] / epr.lambdas[n] == doctest::Approx(ratio).epsilon(1e-13));
    }
    const DensityMatrix reduced = epr.reduced();
    const DensityMatrix thermal = DensityMatrix::thermal(0.5, 50);
    CHECK((reduced.elems - thermal.elems).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("SqueezedCoherentParams: validation and quadrature accessors") {
    CHECK_THROWS_AS(SqueezedCoherentParams({0.0, 0.0}, -0.1, 0.0), std::invalid_argument);
    const SqueezedCoherentParams wrapped({0.5, -0.25}, 0.3, -pi);
    CHECK(wrapped.phi == doctest::Approx(pi).epsilon(1e-15));
    CHECK(wrapped.x() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(wrapped.p() == doctest::Approx(-0.5).epsilon(1e-15));
}
