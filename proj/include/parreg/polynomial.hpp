#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <complex>
#include <vector>

#include "parreg/errors.hpp"

namespace parreg {

using Complex = std::complex<double>;

// Dense univariate polynomial with complex coefficients, ascending order:
// p(z) = c[0] + c[1] z + ... + c[d] z^d.
using Polynomial = Eigen::VectorXcd;

inline int poly_degree(const Polynomial& p, double tol = 0.0) {
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k)
        if (std::abs(p[k]) > tol) return k;
    return -1;  // zero polynomial
}

template <typename Scalar>
Complex poly_eval(const Polynomial& p, const Scalar& z) {
    Complex acc(0.0, 0.0);
    for (int k = static_cast<int>(p.size()) - 1; k >= 0; --k) acc = acc * z + p[k];
    return acc;
}

inline Polynomial poly_trim(const Polynomial& p, double tol = 0.0) {
    int d = poly_degree(p, tol);
    if (d < 0) return Polynomial::Zero(1);
    return p.head(d + 1);
}

inline Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
    Polynomial c = Polynomial::Zero(a.size() + b.size() - 1);
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// Monic polynomial with the given roots.
inline Polynomial poly_from_roots(const std::vector<Complex>& roots) {
    Polynomial p = Polynomial::Ones(1);
    for (const Complex& r : roots) {
        Polynomial factor(2);
        factor << -r, Complex(1.0, 0.0);
        p = poly_mul(p, factor);
    }
    return p;
}

// Long division: returns {quotient, remainder} with b normalized by its
// true leading coefficient. Division by the zero polynomial is rejected.
inline std::pair<Polynomial, Polynomial> poly_divmod(const Polynomial& a, const Polynomial& b) {
    int db = poly_degree(b);
    if (db < 0) throw config_error("polynomial division by zero");
    Polynomial rem = a;
    int da = poly_degree(rem);
    if (da < db) return {Polynomial::Zero(1), poly_trim(rem)};
    Polynomial quot = Polynomial::Zero(da - db + 1);
    for (int k = da; k >= db; --k) {
        Complex f = rem[k] / b[db];
        quot[k - db] = f;
        for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b[j];
        rem[k] = Complex(0.0, 0.0);
    }
    return {quot, rem.head(db)};
}

// All roots via the companion-matrix eigenvalues of the monic normalization.
inline std::vector<Complex> poly_roots(const Polynomial& p) {
    int d = poly_degree(p);
    if (d < 0) throw config_error("root finding on the zero polynomial");
    if (d == 0) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = Complex(1.0, 0.0);
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -p[i] / p[d];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw accuracy_error("companion eigensolver failed");
    std::vector<Complex> roots(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) roots[static_cast<std::size_t>(i)] = solver.eigenvalues()[i];
    return roots;
}

}  // namespace parreg
