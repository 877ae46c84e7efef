#pragma once

#include <optional>
#include <vector>

#include "parreg/operators.hpp"

namespace parreg {

// Result of sampling |det(a_0(xi) - lambda)| on the compact set
// { |xi|^{2m} + |lambda| = 1, lambda in closure(Sigma_phi) }.
// The verdict is sampled, not certified.
struct EllipticityVerdict {
    bool passed = false;
    double c_p_estimate = 0.0;
    double angle_phi = 0.0;
    FrequencyPoint worst_point;
    long samples_used = 0;
};

struct RootSplit {
    std::vector<Complex> roots_plus;   // Im > 0, must number exactly m
    std::vector<Complex> roots_minus;  // the rest
    Polynomial a_plus;                 // monic product over roots_plus, ascending coeffs
};

// Sectoriality / R-sectoriality constants supplied by the caller plus the
// perturbation budget |Bx| <= a|Ax| + b|x|.
struct PerturbationBudget {
    double a = 0.0;
    double b = 0.0;
    double m_theta = 0.0;        // sup |lambda (lambda-A)^{-1}|
    double m_tilde_theta = 0.0;  // sup |A (lambda-A)^{-1}|
    double r_theta = 0.0;        // R-bound of lambda (lambda-A)^{-1}
    double r_tilde_theta = 0.0;  // R-bound of A (lambda-A)^{-1}
};

struct PerturbationResult {
    bool admissible = false;
    double r_bound_new = 0.0;  // meaningful when b = 0
    double mu_min = 0.0;       // meaningful when b > 0
    double a_threshold = 0.0;  // strict upper bound the relative constant must satisfy
};

struct EllipticityOptions {
    double tol = 1e-8;        // pass iff the sampled infimum exceeds this
    int refine_stages = 1;    // local refinement passes around the minimizer
};

EllipticityVerdict check_parameter_ellipticity(const DifferentialOperator& op, double angle_phi,
                                               int resolution,
                                               const EllipticityOptions& opts = {});

// Bisects for the largest angle in (0, pi] at which the sampled check passes,
// to within 1e-3. Empty when the operator fails at every tested angle. The
// pass/fail probe refines deeply around candidate zeros so near-critical
// angles are classified correctly.
std::optional<double> estimate_parabolicity_angle(const DifferentialOperator& op, int resolution);

// Roots of tau -> a_0(xi', tau) - lambda split by the sign of the imaginary
// part. Throws analytic_error unless exactly m roots lie strictly above the
// real axis and none within tolerance of it.
RootSplit split_normal_roots(const DifferentialOperator& op, const FrequencyPoint& pt);

PerturbationResult perturbed_rbound(const PerturbationBudget& budget);

}  // namespace parreg
