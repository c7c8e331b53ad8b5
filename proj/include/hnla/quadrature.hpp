#pragma once

#include <vector>

namespace hnla::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Hermite rule for weight e^{-t^2} on the real line. Nodes are
/// Jacobi-matrix eigenvalues polished by Newton steps on the orthonormal
/// Hermite *functions*, and weights come from the Christoffel sum in the
/// same scaled basis, so the rule stays accurate out to the extreme nodes
/// where the bare polynomials would overflow.
Rule gauss_hermite(int n);

/// Gauss-Legendre rule for weight 1 on [-1, 1].
Rule gauss_legendre(int n);

} // namespace hnla::quad
