#pragma once

#include <vector>

#include "parreg/grid.hpp"
#include "parreg/lopatinskii.hpp"

namespace parreg {

// Finite-difference weights for the m-th derivative at x0 from arbitrary
// nodes (Fornberg's recursion).
Eigen::VectorXd fd_weights(int deriv_order, const Eigen::VectorXd& nodes, double x0);

// Model problem (A_0(D) - lambda) u = f in the half space, B_j u = 0 on the
// boundary. The rhs lives on tangential torus axes (all but the last) times
// the truncated normal ray [0, x_max) sampled at x_j = j h, h = x_max / K.
struct HalfSpaceProblem {
    DifferentialOperator op;  // scalar, constant coefficients; principal part is used
    std::vector<BoundaryOperator> boundary_ops;
    Complex lambda{1.0, 0.0};
    GridFunction rhs;  // space domain

    double residual_threshold = 0.1;  // relative; above -> accuracy error
    int max_pad_factor = 4;           // extension length cap, in units of K
    PoissonOptions poisson;
};

struct HalfSpaceModeSolution {
    Eigen::VectorXd xi_prime;
    Eigen::VectorXcd u1_extended;  // whole-line part on the extended grid
    int zero_index = 0;            // index of x_n = 0 within the extended grid
    double h = 0.0;
    Eigen::VectorXcd u_total;      // u1 + u2 restricted to the input normal grid
    Eigen::VectorXcd h_coeffs;     // h_k = -b_k0(D_n) u1 |_0
    std::vector<PoissonSymbol> symbols;
};

struct HalfSpaceReport {
    double pde_residual_abs = 0.0;
    double pde_residual_rel = 0.0;
    double boundary_residual_max = 0.0;
    double rhs_norm = 0.0;
    long modes = 0;
};

struct HalfSpaceSolution {
    GridFunction u;  // same grid as the rhs
    HalfSpaceReport report;
};

// Single tangential mode: rhs_hat are the normal samples of the mode.
HalfSpaceModeSolution solve_halfspace_mode(const HalfSpaceProblem& problem,
                                           const Eigen::VectorXd& xi_prime,
                                           const Eigen::VectorXcd& rhs_hat);

HalfSpaceSolution solve_halfspace_model(const HalfSpaceProblem& problem);

// One-sided Hilbert transform (Hf)(x) = int_0^inf f(y)/(x+y) dy by composite
// midpoint quadrature. Samples live at midpoints y_j = (j + 1/2) h.
Eigen::VectorXcd one_sided_hilbert(const Eigen::VectorXcd& f, double h);
Complex one_sided_hilbert_at(const Eigen::VectorXcd& f, double h, double x);
// || Hf ||_p / || f ||_p on the midpoint grid.
double one_sided_hilbert_norm_ratio(const Eigen::VectorXcd& f, double h, double p);

}  // namespace parreg
