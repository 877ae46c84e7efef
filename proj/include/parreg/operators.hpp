#pragma once

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

#include "parreg/multiindex.hpp"
#include "parreg/polynomial.hpp"

namespace parreg {

// Matrix-coefficient differential operator A(D) = sum_{|alpha| <= 2m} a_alpha D^alpha
// with constant N x N coefficients, D = -i d/dx. Its symbol is
// a(xi) = sum a_alpha xi^alpha.
struct DifferentialOperator {
    int dim_n = 0;
    int order_2m = 0;
    int system_size_N = 1;
    std::map<MultiIndex, Eigen::MatrixXcd> terms;

    DifferentialOperator() = default;
    DifferentialOperator(int n, int two_m, int N, std::map<MultiIndex, Eigen::MatrixXcd> t);

    // Scalar convenience constructor (N = 1).
    static DifferentialOperator scalar(int n, int two_m, const std::map<MultiIndex, Complex>& t);

    int half_order_m() const { return order_2m / 2; }
    bool is_scalar() const { return system_size_N == 1; }
    Complex scalar_coeff(const MultiIndex& alpha) const;
};

DifferentialOperator operator+(const DifferentialOperator& a, const DifferentialOperator& b);

// Scalar boundary operator B(D) = sum_{|beta| <= m_j} b_beta D^beta applied at x_n = 0.
struct BoundaryOperator {
    int dim_n = 0;
    int order_mj = 0;
    std::map<MultiIndex, Complex> terms;

    BoundaryOperator() = default;
    BoundaryOperator(int n, int mj, std::map<MultiIndex, Complex> t);
};

// A point (xi, lambda) in frequency/spectral space. xi may be a full frequency
// or a tangential frequency xi', depending on the consumer.
struct FrequencyPoint {
    Eigen::VectorXd xi;
    Complex lambda{0.0, 0.0};

    FrequencyPoint() = default;
    FrequencyPoint(Eigen::VectorXd xi_, Complex lambda_) : xi(std::move(xi_)), lambda(lambda_) {}
};

// Full symbol a(xi) = sum over all terms.
Eigen::MatrixXcd evaluate_symbol(const DifferentialOperator& op, const Eigen::VectorXd& xi);

// Principal symbol a_0(xi): only |alpha| = 2m terms.
Eigen::MatrixXcd evaluate_principal_symbol(const DifferentialOperator& op, const Eigen::VectorXd& xi);

// The polynomial tau -> a_0(xi', tau) - lambda obtained by substituting the
// last frequency slot by the indeterminate. Scalar operators only.
Polynomial normal_symbol_polynomial(const DifferentialOperator& op, const Eigen::VectorXd& xi_prime,
                                    Complex lambda);

// Matrix-coefficient version: coefficient matrices of tau^k, k = 0..2m.
std::vector<Eigen::MatrixXcd> normal_symbol_matrix_polynomial(const DifferentialOperator& op,
                                                              const Eigen::VectorXd& xi_prime,
                                                              Complex lambda);

// Principal boundary symbol b_0(xi', tau) = sum_{|beta| = m_j} b_beta xi'^{beta'} tau^{beta_n}
// as a polynomial in the normal frequency.
Polynomial boundary_principal_polynomial(const BoundaryOperator& bop, const Eigen::VectorXd& xi_prime);

// (rho xi, rho^{2m} lambda): the scaling under which det(a_0 - lambda) is
// homogeneous of degree 2mN.
FrequencyPoint quasi_homogeneous_scale(const FrequencyPoint& pt, double rho, int order_2m);

}  // namespace parreg
