#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "parreg/grid.hpp"

namespace parreg {

// r_n(t) = sign sin(2^n pi t); +1 at the dyadic zeros by convention.
int rademacher_eval(int n, double t);

struct RademacherSampler {
    enum class Mode { exact_enumeration, monte_carlo };
    Mode mode = Mode::exact_enumeration;
    std::uint64_t seed = 0;
    int trials = 0;

    static RademacherSampler exact() { return {Mode::exact_enumeration, 0, 0}; }
    static RademacherSampler monte_carlo(std::uint64_t seed, int trials) {
        return {Mode::monte_carlo, seed, trials};
    }
};

// Operator families acting on 1-d sample vectors (sequences with counting
// measure when box_length equals the point count).
struct TranslationFamily {
    int max_shift = 0;  // members: shift by 0 .. max_shift with zero fill
};
struct ScalarMultiplierFamily {
    double bound = 1.0;  // members: multiplication by |a| <= bound
};
struct FourierMultiplierFamily {
    std::vector<Eigen::VectorXcd> symbols;  // mode-aligned samples
};
struct ExplicitMatrixFamily {
    std::vector<Eigen::MatrixXcd> members;
};
using OperatorFamilySpec =
    std::variant<TranslationFamily, ScalarMultiplierFamily, FourierMultiplierFamily,
                 ExplicitMatrixFamily>;

struct RBoundEstimate {
    double p = 2.0;
    double ratio_max = 0.0;  // certified lower bound for R_p; not an upper bound
    long trials = 0;
    std::vector<int> witness_members;       // maximizing member index per slot
    std::vector<Complex> witness_scalars;   // maximizing draws (scalar multipliers)
};

struct RBoundOptions {
    int subset_trials = 64;   // random family assignments tried
    bool pair_in_order = false;  // use the j-th member for the j-th vector only
};

RBoundEstimate estimate_rbound(const OperatorFamilySpec& family,
                               const std::vector<GridFunction>& vectors, double p,
                               const RademacherSampler& sampler, const RBoundOptions& opts = {});

// Exact square-function quotient of the translation family on a discrete
// line with f_n = indicator: one (N, ratio) pair per requested N.
std::vector<std::pair<int, double>> translation_counterexample_curve(double p,
                                                                     const std::vector<int>& n_values);

// || (sum |T_n f_n|^2)^{1/2} ||_q / || (sum |f_n|^2)^{1/2} ||_q with T_n the
// given frequency multipliers.
double square_function_ratio(const std::vector<Eigen::VectorXcd>& multipliers,
                             const std::vector<GridFunction>& fs, double q);

struct ContractionCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;  // lhs <= 2 rhs
};

// Both sides of the contraction inequality |sum a_j r_j x_j| <= 2 |sum b_j r_j x_j|
// in exact enumeration; requires |a_j| <= |b_j|.
ContractionCheck kahane_contraction_check(const std::vector<Complex>& a,
                                          const std::vector<Complex>& b,
                                          const std::vector<GridFunction>& x, double p);

}  // namespace parreg
