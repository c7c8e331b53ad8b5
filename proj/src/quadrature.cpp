#include "hnla/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace hnla::quad {

namespace {

// Eigenvalues of the symmetric tridiagonal Jacobi matrix with zero diagonal
// and the given off-diagonal entries. These seed the Newton polish below.
std::vector<double> jacobi_eigenvalues(const std::vector<double> &offdiag) {
    const auto n = static_cast<Eigen::Index>(offdiag.size()) + 1;
    Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        jacobi(k, k + 1) = offdiag[static_cast<size_t>(k)];
        jacobi(k + 1, k) = offdiag[static_cast<size_t>(k)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi, Eigen::EigenvaluesOnly);
    const auto &ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

// Orthonormal Hermite functions psi_k(t) = p_k(t) e^{-t^2/2} with p_k the
// polynomials orthonormal for weight e^{-t^2}. Bounded for all t, unlike
// the bare polynomials.
void hermite_functions(int n, double t, std::vector<double> &psi) {
    psi.resize(static_cast<size_t>(n) + 1);
    psi[0] = std::exp(-0.5 * t * t) / std::pow(M_PI, 0.25);
    if (n == 0)
        return;
    psi[1] = std::sqrt(2.0) * t * psi[0];
    for (int k = 1; k < n; ++k)
        psi[static_cast<size_t>(k) + 1] =
            t * std::sqrt(2.0 / (k + 1.0)) * psi[static_cast<size_t>(k)] -
            std::sqrt(k / (k + 1.0)) * psi[static_cast<size_t>(k) - 1];
}

} // namespace

Rule gauss_hermite(int n) {
    if (n < 1)
        throw std::invalid_argument("gauss_hermite: need at least one node");
    std::vector<double> offdiag(static_cast<size_t>(n) - 1);
    for (int k = 1; k < n; ++k)
        offdiag[static_cast<size_t>(k) - 1] = std::sqrt(k / 2.0);
    Rule rule;
    rule.nodes = jacobi_eigenvalues(offdiag);
    rule.weights.resize(static_cast<size_t>(n));

    std::vector<double> psi;
    for (int i = 0; i < n; ++i) {
        double t = rule.nodes[static_cast<size_t>(i)];
        for (int iter = 0; iter < 3; ++iter) {
            hermite_functions(n, t, psi);
            // psi_n' = sqrt(2n) psi_{n-1} - t psi_n
            const double deriv = std::sqrt(2.0 * n) * psi[static_cast<size_t>(n) - 1] -
                                 t * psi[static_cast<size_t>(n)];
            if (deriv == 0.0)
                break;
            t -= psi[static_cast<size_t>(n)] / deriv;
        }
        rule.nodes[static_cast<size_t>(i)] = t;
        hermite_functions(n - 1, t, psi);
        double christoffel = 0.0;
        for (int k = 0; k < n; ++k)
            christoffel += psi[static_cast<size_t>(k)] * psi[static_cast<size_t>(k)];
        rule.weights[static_cast<size_t>(i)] = std::exp(-t * t) / christoffel;
    }
    return rule;
}

namespace {

// Legendre P_0..P_n at x, |P_k| <= 1 on [-1, 1].
void legendre_values(int n, double x, std::vector<double> &pk) {
    pk.resize(static_cast<size_t>(n) + 1);
    pk[0] = 1.0;
    if (n == 0)
        return;
    pk[1] = x;
    for (int k = 1; k < n; ++k)
        pk[static_cast<size_t>(k) + 1] = ((2.0 * k + 1.0) * x * pk[static_cast<size_t>(k)] -
                                          k * pk[static_cast<size_t>(k) - 1]) /
                                         (k + 1.0);
}

} // namespace

Rule gauss_legendre(int n) {
    if (n < 1)
        throw std::invalid_argument("gauss_legendre: need at least one node");
    std::vector<double> offdiag(static_cast<size_t>(n) - 1);
    for (int k = 1; k < n; ++k)
        offdiag[static_cast<size_t>(k) - 1] = k / std::sqrt(4.0 * k * k - 1.0);
    Rule rule;
    rule.nodes = jacobi_eigenvalues(offdiag);
    rule.weights.resize(static_cast<size_t>(n));

    std::vector<double> pk;
    for (int i = 0; i < n; ++i) {
        double x = rule.nodes[static_cast<size_t>(i)];
        for (int iter = 0; iter < 3; ++iter) {
            legendre_values(n, x, pk);
            const double deriv =
                n * (x * pk[static_cast<size_t>(n)] - pk[static_cast<size_t>(n) - 1]) /
                (x * x - 1.0);
            if (deriv == 0.0)
                break;
            x -= pk[static_cast<size_t>(n)] / deriv;
        }
        rule.nodes[static_cast<size_t>(i)] = x;
        legendre_values(n, x, pk);
        double christoffel = 0.0;
        for (int k = 0; k < n; ++k)
            christoffel += (k + 0.5) * pk[static_cast<size_t>(k)] * pk[static_cast<size_t>(k)];
        rule.weights[static_cast<size_t>(i)] = 1.0 / christoffel;
    }
    return rule;
}

} // namespace hnla::quad
