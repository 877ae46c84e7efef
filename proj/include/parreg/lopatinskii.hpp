#pragma once

#include <vector>

#include "parreg/ellipticity.hpp"
#include "parreg/operators.hpp"

namespace parreg {

struct LopatinskiiReport {
    bool passed = false;
    double min_abs_det = 0.0;
    FrequencyPoint worst_point;       // (xi', lambda) on the reduced compact set
    Eigen::MatrixXcd matrix_at_worst; // the Lopatinskii matrix there
    long samples_used = 0;
};

// <xi'>_lambda = |xi'| + |lambda|^{1/2m}, the anisotropic scale of a point.
double anisotropic_scale(const FrequencyPoint& pt, int order_2m);

// Coefficients of b mod a_plus in the basis (1, tau, ..., tau^{m-1}).
Eigen::VectorXcd reduce_mod_a_plus(const Polynomial& b, const RootSplit& split);

// Row j holds the reduction of the principal boundary symbol b_{j0}(xi', .).
Eigen::MatrixXcd lopatinskii_matrix(const DifferentialOperator& op,
                                    const std::vector<BoundaryOperator>& boundary_ops,
                                    const FrequencyPoint& pt);

LopatinskiiReport check_shapiro_lopatinskii(const DifferentialOperator& op,
                                            const std::vector<BoundaryOperator>& boundary_ops,
                                            double angle_phi, int resolution, double tol = 1e-8);

// Solution w_k of the stable half-line ODE with b_{j0}(D_n) w_k |_{x_n=0} =
// delta_{jk}, realized as contour quadrature around the stable roots.
struct PoissonSymbol {
    FrequencyPoint point;
    int k = 0;  // 1-based dual index
    Complex contour_center{0.0, 0.0};
    double contour_radius = 0.0;
    double decay_rate = 0.0;  // fitted from log |w_k| samples

    // value = (1/2pi i) oint M_k(tau)/a_plus(tau) e^{i x_n tau} d tau, evaluated
    // by trapezoidal quadrature; nodes and weights are frozen at build time.
    Eigen::VectorXcd nodes;       // contour points tau_q
    Eigen::VectorXcd weights;     // (1/2pi i) * M_k(tau_q)/a_plus(tau_q) * dtau_q

    Complex value(double x_n) const;
    // D_n^order derivative via differentiation under the integral sign.
    Complex derivative(int order, double x_n) const;
};

struct PoissonOptions {
    int quadrature_nodes = 256;   // doubled until the boundary check passes
    int max_quadrature_nodes = 1 << 14;
    double bc_tol = 1e-8;
    double contour_gap = 1e-6;    // minimal stable/unstable separation, relative
};

std::vector<PoissonSymbol> build_poisson_symbols(const DifferentialOperator& op,
                                                 const std::vector<BoundaryOperator>& boundary_ops,
                                                 const FrequencyPoint& pt,
                                                 const PoissonOptions& opts = {});

}  // namespace parreg
