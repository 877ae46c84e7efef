#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "parreg/grid.hpp"

namespace parreg {

// Smooth dyadic partition of unity on the frequency grid:
// supp phi_0 in {|xi| < 2}, supp phi_k in {2^{k-1} < |xi| < 2^{k+1}},
// phi_k >= 0, sum_k phi_k = 1.
struct DyadicSystem {
    int levels = 0;                       // blocks are phi_0 .. phi_levels
    std::vector<int> dims;
    std::vector<double> box_length;
    std::vector<Eigen::VectorXd> blocks;  // sampled on the frequency grid

    bool matches(const GridFunction& u) const {
        return dims == u.dims && box_length == u.box_length;
    }
};

// The scaled profile phi_1(2^{1-k} xi) used for every level k >= 1; exposed
// so tests can probe supports and derivative bounds off the grid.
double dyadic_profile(double radius, int level);

DyadicSystem build_dyadic_system(const std::vector<int>& dims, const std::vector<double>& box,
                                 int levels);

// One Littlewood-Paley block op[phi_k] u (space-domain output).
GridFunction apply_block(const DyadicSystem& sys, int k, const GridFunction& u);

double besov_norm(const GridFunction& u, double s, double p, double q, const DyadicSystem& sys);
double triebel_lizorkin_norm(const GridFunction& u, double s, double p, double q,
                             const DyadicSystem& sys);
// Bessel potential norm: || op[<xi>^s] u ||_p.
double bessel_norm(const GridFunction& u, double s, double p);

// Frequency multiplier application op[m] u = F^{-1} m F u.
GridFunction apply_multiplier(const std::function<Complex(const Eigen::VectorXd&)>& symbol,
                              const GridFunction& u);

enum class MikhlinVariant { classical, lizorkin };  // |xi|^{|b|} d^b m  vs  xi^b d^b m

struct MikhlinReport {
    bool passed = false;
    double c_m = 0.0;           // grid max of the Mikhlin quantity on the base radii
    Eigen::VectorXd worst_xi;   // where the base-stage max was attained
    double growth_ratio = 0.0;  // max stage-to-stage ratio under range extension
};

// Samples the Mikhlin/Lizorkin quantities on a logarithmic radial grid
// (radii 2^-8 .. 2^8) with central finite differences, then extends the radii
// range twice; passes iff the estimate is finite and stable (ratio < 1.2).
MikhlinReport mikhlin_check(const std::function<Complex(const Eigen::VectorXd&)>& symbol, int dim,
                            MikhlinVariant variant = MikhlinVariant::classical,
                            int directions = 24);

// Lattice-square partition phi with sum over translates of phi^2 = 1.
struct SquarePartition {
    double spacing = 1.0;
    int dim = 1;
    double operator()(const std::vector<double>& x) const;
    double translate(const std::vector<double>& x, const std::vector<int>& lattice_index) const;
    // Sum of squared translates at x (should be 1; exposed for validation).
    double sum_of_squares(const std::vector<double>& x) const;
};

SquarePartition partition_of_unity(double spacing, int dim);

}  // namespace parreg
