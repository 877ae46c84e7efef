#include "parreg/lopatinskii.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace parreg {

double anisotropic_scale(const FrequencyPoint& pt, int order_2m) {
    return pt.xi.norm() + std::pow(std::abs(pt.lambda), 1.0 / order_2m);
}

Eigen::VectorXcd reduce_mod_a_plus(const Polynomial& b, const RootSplit& split) {
    int m = poly_degree(split.a_plus);
    if (m < 1) throw config_error("a_plus must have degree >= 1");
    auto [quot, rem] = poly_divmod(b, split.a_plus);
    (void)quot;
    Eigen::VectorXcd coeffs = Eigen::VectorXcd::Zero(m);
    coeffs.head(rem.size()) = rem;
    return coeffs;
}

namespace {

void check_boundary_problem(const DifferentialOperator& op,
                            const std::vector<BoundaryOperator>& boundary_ops) {
    if (!op.is_scalar()) throw config_error("boundary machinery is restricted to scalar operators");
    if (static_cast<int>(boundary_ops.size()) != op.half_order_m())
        throw config_error("need exactly m = order/2 boundary operators");
    for (const auto& bop : boundary_ops) {
        if (bop.dim_n != op.dim_n) throw config_error("boundary operator dimension mismatch");
        if (bop.order_mj >= op.order_2m)
            throw config_error("boundary operator order must be below the interior order");
    }
}

}  // namespace

Eigen::MatrixXcd lopatinskii_matrix(const DifferentialOperator& op,
                                    const std::vector<BoundaryOperator>& boundary_ops,
                                    const FrequencyPoint& pt) {
    check_boundary_problem(op, boundary_ops);
    RootSplit split = split_normal_roots(op, pt);
    const int m = op.half_order_m();
    Eigen::MatrixXcd L(m, m);
    for (int j = 0; j < m; ++j) {
        Polynomial bj = boundary_principal_polynomial(boundary_ops[static_cast<std::size_t>(j)], pt.xi);
        L.row(j) = reduce_mod_a_plus(bj, split).transpose();
    }
    return L;
}

LopatinskiiReport check_shapiro_lopatinskii(const DifferentialOperator& op,
                                            const std::vector<BoundaryOperator>& boundary_ops,
                                            double angle_phi, int resolution, double tol) {
    check_boundary_problem(op, boundary_ops);
    if (!(angle_phi > 0.0 && angle_phi <= M_PI)) throw config_error("sector angle must lie in (0, pi]");
    if (resolution < 2) throw config_error("resolution must be >= 2");
    const int tangential_dim = op.dim_n - 1;
    if (tangential_dim > 2) throw config_error("lopatinskii scan supports dimensions up to 3");

    // Directions of xi' on the unit sphere of R^{n-1}.
    std::vector<Eigen::VectorXd> dirs;
    if (tangential_dim == 0) {
        dirs.emplace_back(Eigen::VectorXd::Zero(0));
    } else if (tangential_dim == 1) {
        Eigen::VectorXd d(1);
        d << 1.0;
        dirs.push_back(d);
        d << -1.0;
        dirs.push_back(d);
    } else {
        for (int i = 0; i < 2 * resolution; ++i) {
            double a = 2.0 * M_PI * i / (2.0 * resolution);
            Eigen::VectorXd d(2);
            d << std::cos(a), std::sin(a);
            dirs.push_back(d);
        }
    }

    LopatinskiiReport rep;
    rep.min_abs_det = std::numeric_limits<double>::infinity();
    // Scan { |xi'|^{2m} + |lambda| = 1, lambda in closure(Sigma_phi) }, with
    // the poles t = 0 (lambda = 0) and t = 1 (xi' = 0) included; the scan is
    // quasi-homogeneously sufficient because det L is positively homogeneous
    // in (xi', lambda^{1/2m}).
    for (const auto& dir : dirs) {
        for (int it = 0; it <= resolution; ++it) {
            double t = static_cast<double>(it) / resolution;
            double radius = std::pow(1.0 - t, 1.0 / op.order_2m);
            // lambda = 0 is admissible only with xi' != 0; skip the joint origin.
            if (tangential_dim == 0 && it == 0) continue;
            for (int ith = 0; ith <= resolution; ++ith) {
                double theta = -angle_phi + 2.0 * angle_phi * ith / resolution;
                if (it == 0 && ith != 0) continue;  // lambda = 0: theta is moot
                FrequencyPoint pt(radius * dir, t * Complex(std::cos(theta), std::sin(theta)));
                Eigen::MatrixXcd L = lopatinskii_matrix(op, boundary_ops, pt);
                double det = std::abs(L.determinant());
                ++rep.samples_used;
                if (det < rep.min_abs_det) {
                    rep.min_abs_det = det;
                    rep.worst_point = pt;
                    rep.matrix_at_worst = L;
                }
            }
        }
    }
    rep.passed = rep.min_abs_det > tol;
    return rep;
}

Complex PoissonSymbol::value(double x_n) const {
    Complex acc(0.0, 0.0);
    for (Eigen::Index q = 0; q < nodes.size(); ++q)
        acc += weights[q] * std::exp(Complex(0.0, x_n) * nodes[q]);
    return acc;
}

Complex PoissonSymbol::derivative(int order, double x_n) const {
    Complex acc(0.0, 0.0);
    for (Eigen::Index q = 0; q < nodes.size(); ++q) {
        Complex tau_pow = std::pow(nodes[q], order);
        acc += weights[q] * tau_pow * std::exp(Complex(0.0, x_n) * nodes[q]);
    }
    return acc;
}

namespace {

// N_k(tau) = sum_{l=0}^{m-k} p_l tau^{m-k-l} with a_+ = sum_l p_l tau^{m-l}.
Polynomial dual_basis_polynomial(const Polynomial& a_plus, int m, int k) {
    Polynomial nk = Polynomial::Zero(m - k + 1);
    for (int l = 0; l <= m - k; ++l) {
        Complex p_l = a_plus[m - l];  // ascending storage: p_l multiplies tau^{m-l}
        nk[m - k - l] = p_l;
    }
    return nk;
}

struct Contour {
    Complex center;
    double radius;
};

Contour choose_contour(const RootSplit& split, double scale, double gap) {
    Complex center(0.0, 0.0);
    for (const Complex& r : split.roots_plus) center += r;
    center /= static_cast<double>(split.roots_plus.size());
    double r_plus = 0.0;
    for (const Complex& r : split.roots_plus) r_plus = std::max(r_plus, std::abs(r - center));
    double d_minus = std::numeric_limits<double>::infinity();
    for (const Complex& r : split.roots_minus) d_minus = std::min(d_minus, std::abs(r - center));

    double radius = std::max(1.5 * r_plus, 0.25 * scale);
    if (radius >= 0.9 * d_minus) radius = 0.5 * (r_plus + d_minus);
    if (!(radius > r_plus + gap * scale) || !(radius < d_minus - gap * scale))
        throw geometry_error("no valid contour: stable and unstable roots too close");
    return {center, radius};
}

}  // namespace

std::vector<PoissonSymbol> build_poisson_symbols(const DifferentialOperator& op,
                                                 const std::vector<BoundaryOperator>& boundary_ops,
                                                 const FrequencyPoint& pt,
                                                 const PoissonOptions& opts) {
    check_boundary_problem(op, boundary_ops);
    const int m = op.half_order_m();
    RootSplit split = split_normal_roots(op, pt);
    Eigen::MatrixXcd L = lopatinskii_matrix(op, boundary_ops, pt);
    if (std::abs(L.determinant()) == 0.0)
        throw analytic_error("Lopatinskii determinant vanishes: no dual basis");

    double scale = anisotropic_scale(pt, op.order_2m);
    Contour contour = choose_contour(split, scale, opts.contour_gap);

    // M_k = sum_j N_j (L^{-1})_{jk}.
    Eigen::MatrixXcd L_inv = L.inverse();
    std::vector<Polynomial> n_polys, m_polys;
    for (int k = 1; k <= m; ++k) n_polys.push_back(dual_basis_polynomial(split.a_plus, m, k));
    for (int k = 0; k < m; ++k) {
        Polynomial mk = Polynomial::Zero(m);
        for (int j = 0; j < m; ++j) {
            const Polynomial& nj = n_polys[static_cast<std::size_t>(j)];
            for (int c = 0; c < nj.size(); ++c) mk[c] += L_inv(j, k) * nj[c];
        }
        m_polys.push_back(poly_trim(mk));
    }

    std::vector<Polynomial> b_polys;
    for (const auto& bop : boundary_ops) b_polys.push_back(boundary_principal_polynomial(bop, pt.xi));

    for (int q_count = opts.quadrature_nodes; q_count <= opts.max_quadrature_nodes; q_count *= 2) {
        std::vector<PoissonSymbol> symbols;
        symbols.reserve(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k) {
            PoissonSymbol ws;
            ws.point = pt;
            ws.k = k + 1;
            ws.contour_center = contour.center;
            ws.contour_radius = contour.radius;
            ws.nodes.resize(q_count);
            ws.weights.resize(q_count);
            for (int q = 0; q < q_count; ++q) {
                double ang = 2.0 * M_PI * q / q_count;
                Complex offset = contour.radius * Complex(std::cos(ang), std::sin(ang));
                Complex tau = contour.center + offset;
                Complex dtau = Complex(0.0, 1.0) * offset * (2.0 * M_PI / q_count);
                ws.nodes[q] = tau;
                ws.weights[q] = poly_eval(m_polys[static_cast<std::size_t>(k)], tau) /
                                poly_eval(split.a_plus, tau) * dtau /
                                Complex(0.0, 2.0 * M_PI);
            }
            symbols.push_back(std::move(ws));
        }

        // Dual boundary normalization b_{j0}(D_n) w_k |_0 = delta_jk.
        double residual = 0.0;
        for (int j = 0; j < m; ++j) {
            for (int k = 0; k < m; ++k) {
                Complex bc(0.0, 0.0);
                const PoissonSymbol& ws = symbols[static_cast<std::size_t>(k)];
                for (Eigen::Index q = 0; q < ws.nodes.size(); ++q)
                    bc += ws.weights[q] * poly_eval(b_polys[static_cast<std::size_t>(j)], ws.nodes[q]);
                double target = (j == k) ? 1.0 : 0.0;
                residual = std::max(residual, std::abs(bc - target));
            }
        }
        if (residual >= opts.bc_tol) {
            if (2 * q_count > opts.max_quadrature_nodes)
                throw accuracy_error("poisson symbol boundary check failed; residual " +
                                     std::to_string(residual));
            continue;
        }

        // Fit the decay rate from log |w_k| on [0, 12/scale].
        for (auto& ws : symbols) {
            double xmax = 12.0 / scale;
            int samples = 48;
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            int used = 0;
            for (int i = 0; i < samples; ++i) {
                double x = xmax * (i + 0.5) / samples;
                double mag = std::abs(ws.value(x));
                if (mag <= 0.0) continue;
                double y = std::log(mag);
                sx += x;
                sy += y;
                sxx += x * x;
                sxy += x * y;
                ++used;
            }
            if (used >= 2) {
                double denom = used * sxx - sx * sx;
                ws.decay_rate = denom != 0.0 ? -(used * sxy - sx * sy) / denom : 0.0;
            }
        }
        return symbols;
    }
    throw accuracy_error("poisson symbol quadrature did not converge");
}

}  // namespace parreg
