#include "parreg/operators.hpp"

#include <cmath>

namespace parreg {

DifferentialOperator::DifferentialOperator(int n, int two_m, int N,
                                           std::map<MultiIndex, Eigen::MatrixXcd> t)
    : dim_n(n), order_2m(two_m), system_size_N(N), terms(std::move(t)) {
    if (n < 1) throw config_error("operator dimension must be >= 1");
    if (two_m < 2 || two_m % 2 != 0) throw config_error("operator order must be even and >= 2");
    if (N < 1) throw config_error("system size must be >= 1");
    bool principal_nonempty = false;
    for (const auto& [alpha, coeff] : terms) {
        if (alpha.dim() != n) throw config_error("multi-index length does not match dimension");
        if (alpha.order() > two_m) throw config_error("term order exceeds operator order");
        if (coeff.rows() != N || coeff.cols() != N)
            throw config_error("coefficient matrix size does not match system size");
        if (alpha.order() == two_m && coeff.norm() > 0.0) principal_nonempty = true;
    }
    if (!principal_nonempty) throw config_error("principal part is empty");
}

DifferentialOperator DifferentialOperator::scalar(int n, int two_m,
                                                  const std::map<MultiIndex, Complex>& t) {
    std::map<MultiIndex, Eigen::MatrixXcd> terms;
    for (const auto& [alpha, c] : t) {
        Eigen::MatrixXcd m(1, 1);
        m(0, 0) = c;
        terms.emplace(alpha, std::move(m));
    }
    return DifferentialOperator(n, two_m, 1, std::move(terms));
}

Complex DifferentialOperator::scalar_coeff(const MultiIndex& alpha) const {
    auto it = terms.find(alpha);
    return it == terms.end() ? Complex(0.0, 0.0) : it->second(0, 0);
}

DifferentialOperator operator+(const DifferentialOperator& a, const DifferentialOperator& b) {
    if (a.dim_n != b.dim_n || a.system_size_N != b.system_size_N)
        throw config_error("operator sum: incompatible shapes");
    DifferentialOperator sum = a;
    sum.order_2m = std::max(a.order_2m, b.order_2m);
    for (const auto& [alpha, coeff] : b.terms) {
        auto it = sum.terms.find(alpha);
        if (it == sum.terms.end())
            sum.terms.emplace(alpha, coeff);
        else
            it->second += coeff;
    }
    return sum;
}

BoundaryOperator::BoundaryOperator(int n, int mj, std::map<MultiIndex, Complex> t)
    : dim_n(n), order_mj(mj), terms(std::move(t)) {
    if (mj < 0) throw config_error("boundary operator order must be >= 0");
    bool principal_nonempty = false;
    for (const auto& [beta, c] : terms) {
        if (beta.dim() != n) throw config_error("boundary multi-index length does not match dimension");
        if (beta.order() > mj) throw config_error("boundary term order exceeds declared order");
        if (beta.order() == mj && std::abs(c) > 0.0) principal_nonempty = true;
    }
    if (!principal_nonempty) throw config_error("boundary principal part is empty");
}

namespace {

Eigen::MatrixXcd symbol_sum(const DifferentialOperator& op, const Eigen::VectorXd& xi,
                            bool principal_only) {
    if (xi.size() != op.dim_n) throw config_error("frequency dimension mismatch");
    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(op.system_size_N, op.system_size_N);
    for (const auto& [alpha, coeff] : op.terms) {
        if (principal_only && alpha.order() != op.order_2m) continue;
        acc += coeff * monomial(xi, alpha);
    }
    return acc;
}

}  // namespace

Eigen::MatrixXcd evaluate_symbol(const DifferentialOperator& op, const Eigen::VectorXd& xi) {
    return symbol_sum(op, xi, false);
}

Eigen::MatrixXcd evaluate_principal_symbol(const DifferentialOperator& op, const Eigen::VectorXd& xi) {
    return symbol_sum(op, xi, true);
}

std::vector<Eigen::MatrixXcd> normal_symbol_matrix_polynomial(const DifferentialOperator& op,
                                                              const Eigen::VectorXd& xi_prime,
                                                              Complex lambda) {
    if (xi_prime.size() != op.dim_n - 1) throw config_error("tangential frequency dimension mismatch");
    const int N = op.system_size_N;
    std::vector<Eigen::MatrixXcd> coeffs(static_cast<std::size_t>(op.order_2m) + 1,
                                         Eigen::MatrixXcd::Zero(N, N));
    for (const auto& [alpha, coeff] : op.terms) {
        if (alpha.order() != op.order_2m) continue;
        double tangential = 1.0;
        for (int i = 0; i < op.dim_n - 1; ++i)
            for (int k = 0; k < alpha[i]; ++k) tangential *= xi_prime[i];
        coeffs[static_cast<std::size_t>(alpha[op.dim_n - 1])] += coeff * tangential;
    }
    coeffs[0] -= lambda * Eigen::MatrixXcd::Identity(N, N);
    return coeffs;
}

Polynomial normal_symbol_polynomial(const DifferentialOperator& op, const Eigen::VectorXd& xi_prime,
                                    Complex lambda) {
    if (!op.is_scalar())
        throw config_error("scalar normal polynomial requested for an N > 1 system");
    auto coeffs = normal_symbol_matrix_polynomial(op, xi_prime, lambda);
    Polynomial p(coeffs.size());
    for (std::size_t k = 0; k < coeffs.size(); ++k) p[static_cast<int>(k)] = coeffs[k](0, 0);
    return p;
}

Polynomial boundary_principal_polynomial(const BoundaryOperator& bop, const Eigen::VectorXd& xi_prime) {
    if (xi_prime.size() != bop.dim_n - 1)
        throw config_error("tangential frequency dimension mismatch");
    Polynomial p = Polynomial::Zero(bop.order_mj + 1);
    for (const auto& [beta, c] : bop.terms) {
        if (beta.order() != bop.order_mj) continue;
        double tangential = 1.0;
        for (int i = 0; i < bop.dim_n - 1; ++i)
            for (int k = 0; k < beta[i]; ++k) tangential *= xi_prime[i];
        p[beta[bop.dim_n - 1]] += c * tangential;
    }
    return p;
}

FrequencyPoint quasi_homogeneous_scale(const FrequencyPoint& pt, double rho, int order_2m) {
    if (!(rho > 0.0)) throw config_error("scaling factor must be positive");
    return FrequencyPoint(rho * pt.xi, std::pow(rho, order_2m) * pt.lambda);
}

}  // namespace parreg
