#include "parreg/ellipticity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parreg {

namespace {

// Parameterization of the compact set: continuous coordinates are the sphere
// angles of the xi-direction (none for n = 1), then t = |lambda| in [0, 1],
// then theta = arg lambda in [-phi, phi]. For n = 1 the two xi-directions are
// enumerated discretely.
struct CompactSetChart {
    const DifferentialOperator* op;
    double phi;
    int direction_sign = +1;  // n = 1 only

    int continuous_dims() const {
        int angle = op->dim_n == 1 ? 0 : op->dim_n - 1;
        return angle + 2;
    }

    Eigen::VectorXd lower() const {
        Eigen::VectorXd lo(continuous_dims());
        int a = 0;
        if (op->dim_n == 2) lo[a++] = 0.0;
        if (op->dim_n == 3) {
            lo[a++] = 0.0;  // polar
            lo[a++] = 0.0;  // azimuth
        }
        lo[a++] = 0.0;   // t
        lo[a++] = -phi;  // theta
        return lo;
    }

    Eigen::VectorXd upper() const {
        Eigen::VectorXd hi(continuous_dims());
        int a = 0;
        if (op->dim_n == 2) hi[a++] = 2.0 * M_PI;
        if (op->dim_n == 3) {
            hi[a++] = M_PI;
            hi[a++] = 2.0 * M_PI;
        }
        hi[a++] = 1.0;
        hi[a++] = phi;
        return hi;
    }

    FrequencyPoint point(const Eigen::VectorXd& params) const {
        int a = 0;
        Eigen::VectorXd dir(op->dim_n);
        if (op->dim_n == 1) {
            dir[0] = direction_sign;
        } else if (op->dim_n == 2) {
            double psi = params[a++];
            dir << std::cos(psi), std::sin(psi);
        } else {
            double polar = params[a++];
            double az = params[a++];
            dir << std::sin(polar) * std::cos(az), std::sin(polar) * std::sin(az), std::cos(polar);
        }
        double t = params[a++];
        double theta = params[a++];
        double radius = std::pow(1.0 - t, 1.0 / op->order_2m);
        Complex lambda = t * Complex(std::cos(theta), std::sin(theta));
        return FrequencyPoint(radius * dir, lambda);
    }

    double objective(const Eigen::VectorXd& params) const {
        FrequencyPoint pt = point(params);
        Eigen::MatrixXcd sym = evaluate_principal_symbol(*op, pt.xi);
        sym -= pt.lambda * Eigen::MatrixXcd::Identity(op->system_size_N, op->system_size_N);
        return std::abs(sym.determinant());
    }
};

struct ScanResult {
    double minimum = std::numeric_limits<double>::infinity();
    Eigen::VectorXd arg;
    long samples = 0;
};

void grid_scan(const CompactSetChart& chart, int resolution, ScanResult& best) {
    Eigen::VectorXd lo = chart.lower(), hi = chart.upper();
    int d = chart.continuous_dims();
    // Angle axes get `resolution` cells, t and theta get resolution+1 points
    // including both endpoints (the minimizers often sit on the sector rays).
    std::vector<int> counts(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) counts[static_cast<std::size_t>(i)] = resolution + 1;

    std::vector<int> idx(static_cast<std::size_t>(d), 0);
    Eigen::VectorXd params(d);
    while (true) {
        for (int i = 0; i < d; ++i) {
            double frac = static_cast<double>(idx[static_cast<std::size_t>(i)]) / resolution;
            params[i] = lo[i] + (hi[i] - lo[i]) * frac;
        }
        double v = chart.objective(params);
        ++best.samples;
        if (v < best.minimum) {
            best.minimum = v;
            best.arg = params;
        }
        int axis = d - 1;
        while (axis >= 0) {
            if (++idx[static_cast<std::size_t>(axis)] < counts[static_cast<std::size_t>(axis)]) break;
            idx[static_cast<std::size_t>(axis)] = 0;
            --axis;
        }
        if (axis < 0) break;
    }
}

// Pattern refinement: around the current minimizer, sample a 5-point local
// grid per axis within +-step, keep the minimum, halve the steps.
void refine(const CompactSetChart& chart, Eigen::VectorXd steps, int stages, ScanResult& best) {
    Eigen::VectorXd lo = chart.lower(), hi = chart.upper();
    int d = chart.continuous_dims();
    for (int stage = 0; stage < stages; ++stage) {
        Eigen::VectorXd center = best.arg;
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        Eigen::VectorXd params(d);
        while (true) {
            for (int i = 0; i < d; ++i) {
                double off = (idx[static_cast<std::size_t>(i)] - 2) * 0.5 * steps[i];
                params[i] = std::clamp(center[i] + off, lo[i], hi[i]);
            }
            double v = chart.objective(params);
            ++best.samples;
            if (v < best.minimum) {
                best.minimum = v;
                best.arg = params;
            }
            int axis = d - 1;
            while (axis >= 0) {
                if (++idx[static_cast<std::size_t>(axis)] < 5) break;
                idx[static_cast<std::size_t>(axis)] = 0;
                --axis;
            }
            if (axis < 0) break;
        }
        steps *= 0.5;
    }
}

EllipticityVerdict run_check(const DifferentialOperator& op, double angle_phi, int resolution,
                             const EllipticityOptions& opts) {
    if (!(angle_phi > 0.0 && angle_phi <= M_PI)) throw config_error("sector angle must lie in (0, pi]");
    if (resolution < 2) throw config_error("resolution must be >= 2");
    if (op.dim_n > 3) throw config_error("ellipticity scan supports dimensions 1-3");

    ScanResult best;
    std::vector<int> signs = op.dim_n == 1 ? std::vector<int>{+1, -1} : std::vector<int>{+1};
    CompactSetChart best_chart{&op, angle_phi, +1};
    for (int sign : signs) {
        CompactSetChart chart{&op, angle_phi, sign};
        ScanResult local;
        grid_scan(chart, resolution, local);
        Eigen::VectorXd steps = (chart.upper() - chart.lower()) / resolution;
        refine(chart, steps, opts.refine_stages, local);
        best.samples += local.samples;
        if (local.minimum < best.minimum) {
            best.minimum = local.minimum;
            best.arg = local.arg;
            best_chart = chart;
        }
    }

    EllipticityVerdict verdict;
    verdict.c_p_estimate = best.minimum;
    verdict.angle_phi = angle_phi;
    verdict.worst_point = best_chart.point(best.arg);
    verdict.samples_used = best.samples;
    verdict.passed = best.minimum > opts.tol;
    return verdict;
}

}  // namespace

EllipticityVerdict check_parameter_ellipticity(const DifferentialOperator& op, double angle_phi,
                                               int resolution, const EllipticityOptions& opts) {
    return run_check(op, angle_phi, resolution, opts);
}

std::optional<double> estimate_parabolicity_angle(const DifferentialOperator& op, int resolution) {
    // Deep refinement drives the sampled minimum to an actual zero when the
    // sector touches the determinant's zero set, so near-critical angles are
    // rejected even though the coarse grid misses the zero.
    EllipticityOptions probe_opts;
    probe_opts.refine_stages = 60;
    auto passes = [&](double phi) {
        return run_check(op, phi, resolution, probe_opts).passed;
    };

    double lo = 1e-3;
    if (!passes(lo)) return std::nullopt;
    double hi = M_PI;
    if (passes(hi)) return M_PI;
    while (hi - lo > 1e-3) {
        double mid = 0.5 * (lo + hi);
        (passes(mid) ? lo : hi) = mid;
    }
    return lo;
}

RootSplit split_normal_roots(const DifferentialOperator& op, const FrequencyPoint& pt) {
    if (!op.is_scalar()) throw config_error("normal root split is defined for scalar operators");
    if (pt.xi.norm() == 0.0 && std::abs(pt.lambda) == 0.0)
        throw config_error("(xi', lambda) must not vanish jointly");

    Polynomial p = normal_symbol_polynomial(op, pt.xi, pt.lambda);
    if (poly_degree(p) != op.order_2m)
        throw analytic_error("normal polynomial degenerates: leading coefficient vanishes");

    const int m = op.half_order_m();
    RootSplit split;
    for (const Complex& r : poly_roots(p)) {
        if (std::abs(r.imag()) < 1e-9 * (1.0 + std::abs(r)))
            throw analytic_error(
                "improper split: root within tolerance of the real axis; operator is not "
                "properly parameter-elliptic at this point");
        (r.imag() > 0.0 ? split.roots_plus : split.roots_minus).push_back(r);
    }
    if (static_cast<int>(split.roots_plus.size()) != m)
        throw analytic_error("improper split: expected " + std::to_string(m) +
                             " stable roots, found " + std::to_string(split.roots_plus.size()));
    split.a_plus = poly_from_roots(split.roots_plus);
    return split;
}

PerturbationResult perturbed_rbound(const PerturbationBudget& budget) {
    for (double v : {budget.a, budget.b, budget.m_theta, budget.m_tilde_theta, budget.r_theta,
                     budget.r_tilde_theta})
        if (!(v >= 0.0) || !std::isfinite(v)) throw config_error("budget fields must be finite and >= 0");

    PerturbationResult res;
    const double inf = std::numeric_limits<double>::infinity();
    if (budget.b == 0.0) {
        res.a_threshold = budget.r_tilde_theta > 0.0 ? 1.0 / budget.r_tilde_theta : inf;
        res.admissible = budget.a < res.a_threshold;
        if (res.admissible) res.r_bound_new = budget.r_theta / (1.0 - budget.a * budget.r_tilde_theta);
    } else {
        double mr = budget.m_tilde_theta * budget.r_tilde_theta;
        res.a_threshold = mr > 0.0 ? 1.0 / mr : inf;
        res.admissible = budget.a < res.a_threshold;
        if (res.admissible)
            res.mu_min = budget.b * budget.m_theta * budget.r_tilde_theta / (1.0 - budget.a * mr);
    }
    return res;
}

}  // namespace parreg
