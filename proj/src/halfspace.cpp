#include "parreg/halfspace.hpp"

#include <Eigen/Sparse>
#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>

namespace parreg {

Eigen::VectorXd fd_weights(int deriv_order, const Eigen::VectorXd& nodes, double x0) {
    const int n = static_cast<int>(nodes.size());
    if (deriv_order >= n) throw config_error("not enough nodes for the requested derivative");
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, deriv_order + 1);
    double c1 = 1.0;
    double c4 = nodes[0] - x0;
    c(0, 0) = 1.0;
    for (int i = 1; i < n; ++i) {
        int mn = std::min(i, deriv_order);
        double c2 = 1.0;
        double c5 = c4;
        c4 = nodes[i] - x0;
        for (int j = 0; j < i; ++j) {
            double c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c(i, k) = c1 * (k * c(i - 1, k - 1) - c5 * c(i - 1, k)) / c2;
                c(i, 0) = -c1 * c5 * c(i - 1, 0) / c2;
            }
            for (int k = mn; k >= 1; --k) c(j, k) = (c4 * c(j, k) - k * c(j, k - 1)) / c3;
            c(j, 0) = c4 * c(j, 0) / c3;
        }
        c1 = c2;
    }
    return c.col(deriv_order);
}

namespace {

// Centered stencil for D_n^k = (-i d/dx)^k with the requested accuracy order.
struct Stencil {
    int half_width = 0;
    Eigen::VectorXcd weights;  // index offset -half_width .. half_width
};

Stencil normal_derivative_stencil(int k, double h, int accuracy) {
    if (k == 0) {
        Stencil s;
        s.half_width = 0;
        s.weights = Eigen::VectorXcd::Ones(1);
        return s;
    }
    int hw = (k % 2 == 0) ? k / 2 : (k + 1) / 2;  // symmetric stencil: 2nd order
    if (accuracy > 2) hw += 1;                    // one extra node pair: 4th order
    Eigen::VectorXd nodes(2 * hw + 1);
    for (int i = -hw; i <= hw; ++i) nodes[i + hw] = i * h;
    Eigen::VectorXd w = fd_weights(k, nodes, 0.0);
    Stencil s;
    s.half_width = hw;
    s.weights = std::pow(Complex(0.0, -1.0), k) * w.cast<Complex>();
    return s;
}

// Coefficients c_k of the principal normal symbol a_0(xi', tau) - lambda as a
// polynomial in tau.
Polynomial normal_coefficients(const DifferentialOperator& op, const Eigen::VectorXd& xi_prime,
                               Complex lambda) {
    return normal_symbol_polynomial(op, xi_prime, lambda);
}

Complex apply_boundary_symbol(const Polynomial& b, const std::vector<Stencil>& stencils,
                              const Eigen::VectorXcd& u, int at) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < b.size(); ++j) {
        if (b[j] == Complex(0.0, 0.0)) continue;
        const Stencil& s = stencils[static_cast<std::size_t>(j)];
        Complex d(0.0, 0.0);
        for (int o = -s.half_width; o <= s.half_width; ++o) d += s.weights[o + s.half_width] * u[at + o];
        acc += b[j] * d;
    }
    return acc;
}

}  // namespace

HalfSpaceModeSolution solve_halfspace_mode(const HalfSpaceProblem& problem,
                                           const Eigen::VectorXd& xi_prime,
                                           const Eigen::VectorXcd& rhs_hat) {
    const DifferentialOperator& op = problem.op;
    const int two_m = op.order_2m;
    const int K = static_cast<int>(rhs_hat.size());
    const double x_max = problem.rhs.box_length.back();
    const double h = x_max / K;

    FrequencyPoint pt(xi_prime, problem.lambda);
    double scale = anisotropic_scale(pt, two_m);

    // Extension pads sized by the slowest plausible decay at this mode,
    // capped to keep degenerate modes affordable.
    int pad = static_cast<int>(std::ceil(56.0 / (scale * h)));
    pad = std::clamp(pad, K / 2 + 8, problem.max_pad_factor * K + 8);
    const int zero_index = pad;
    const int total = pad + K + pad;

    Polynomial coeffs = normal_coefficients(op, xi_prime, problem.lambda);
    std::vector<Stencil> stencils;
    for (int k = 0; k <= two_m; ++k) stencils.push_back(normal_derivative_stencil(k, h, 2));
    int band = 0;
    for (const auto& s : stencils) band = std::max(band, s.half_width);

    // Assemble (a_0(xi', D_n) - lambda) with homogeneous far-field rows.
    Eigen::SparseMatrix<Complex> mat(total, total);
    std::vector<Eigen::Triplet<Complex>> trips;
    trips.reserve(static_cast<std::size_t>(total) * (2 * band + 1));
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(total);
    for (int i = 0; i < total; ++i) {
        if (i < band || i >= total - band) {
            trips.emplace_back(i, i, Complex(1.0, 0.0));
            continue;
        }
        for (int o = -band; o <= band; ++o) {
            Complex v(0.0, 0.0);
            for (int k = 0; k <= two_m; ++k) {
                const Stencil& s = stencils[static_cast<std::size_t>(k)];
                if (std::abs(o) <= s.half_width) v += coeffs[k] * s.weights[o + s.half_width];
            }
            if (v != Complex(0.0, 0.0)) trips.emplace_back(i, i + o, v);
        }
        int j = i - zero_index;
        if (j >= 0 && j < K) rhs[i] = rhs_hat[j];
    }
    mat.setFromTriplets(trips.begin(), trips.end());
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu(mat);
    if (lu.info() != Eigen::Success) throw accuracy_error("half-space normal solve failed to factorize");

    HalfSpaceModeSolution mode;
    mode.xi_prime = xi_prime;
    mode.h = h;
    mode.zero_index = zero_index;
    mode.u1_extended = lu.solve(rhs);

    // Boundary corrector: u2 = sum_k w_k h_k with h_k = -b_k0(D_n) u1 |_0.
    mode.symbols = build_poisson_symbols(op, problem.boundary_ops, pt, problem.poisson);
    const int m = op.half_order_m();
    mode.h_coeffs = Eigen::VectorXcd::Zero(m);
    for (int k = 0; k < m; ++k) {
        Polynomial bk = boundary_principal_polynomial(problem.boundary_ops[static_cast<std::size_t>(k)],
                                                      xi_prime);
        mode.h_coeffs[k] = -apply_boundary_symbol(bk, stencils, mode.u1_extended, zero_index);
    }

    mode.u_total = Eigen::VectorXcd::Zero(K);
    for (int j = 0; j < K; ++j) {
        Complex u = mode.u1_extended[zero_index + j];
        for (int k = 0; k < m; ++k)
            u += mode.h_coeffs[k] * mode.symbols[static_cast<std::size_t>(k)].value(j * h);
        mode.u_total[j] = u;
    }
    return mode;
}

namespace {

// Tangential FFT helpers on the row-major layout: the normal axis is last.
void tangential_fft(Eigen::VectorXcd& data, const std::vector<int>& dims, bool forward) {
    Eigen::FFT<double> fft;
    const int rank = static_cast<int>(dims.size());
    for (int axis = 0; axis < rank - 1; ++axis) {
        const int msize = dims[static_cast<std::size_t>(axis)];
        Eigen::Index stride = 1;
        for (int i = axis + 1; i < rank; ++i) stride *= dims[static_cast<std::size_t>(i)];
        Eigen::Index outer = data.size() / (static_cast<Eigen::Index>(msize) * stride);
        std::vector<Complex> line(static_cast<std::size_t>(msize)), out(static_cast<std::size_t>(msize));
        for (Eigen::Index o = 0; o < outer; ++o)
            for (Eigen::Index s = 0; s < stride; ++s) {
                Eigen::Index base = o * msize * stride + s;
                for (int k = 0; k < msize; ++k)
                    line[static_cast<std::size_t>(k)] = data[base + k * stride];
                if (forward)
                    fft.fwd(out, line);
                else
                    fft.inv(out, line);
                for (int k = 0; k < msize; ++k)
                    data[base + k * stride] = out[static_cast<std::size_t>(k)];
            }
        if (forward) data /= static_cast<double>(msize);
        // Eigen's inverse already divides by msize; undo it to invert c/m scaling.
        if (!forward) data *= static_cast<double>(msize);
    }
}

}  // namespace

HalfSpaceSolution solve_halfspace_model(const HalfSpaceProblem& problem) {
    if (std::abs(problem.lambda) == 0.0) throw config_error("lambda = 0 is not admissible");
    if (problem.lambda.real() < 0.0)
        throw config_error("lambda must lie in the closed right half-plane");
    if (problem.rhs.domain_tag != Domain::space) throw config_error("rhs must be in the space domain");
    if (problem.rhs.rank() != problem.op.dim_n)
        throw config_error("rhs rank must match the operator dimension");

    const GridFunction& f = problem.rhs;
    const int rank = f.rank();
    const int K = f.dims.back();
    const double h = f.box_length.back() / K;

    // Tangential frequency transform.
    GridFunction fhat = f;
    tangential_fft(fhat.values, fhat.dims, true);

    Eigen::Index tangential_count = f.size() / K;
    GridFunction uhat = fhat;

    const int two_m = problem.op.order_2m;
    const int m = problem.op.half_order_m();

    // Residual stencils (4th order) are independent of the solve stencils.
    std::vector<Stencil> res_stencils;
    for (int k = 0; k <= two_m; ++k) res_stencils.push_back(normal_derivative_stencil(k, h, 4));
    int res_band = 0;
    for (const auto& s : res_stencils) res_band = std::max(res_band, s.half_width);

    double res_sq = 0.0, rhs_sq = 0.0, boundary_res = 0.0;
    long counted = 0;

    for (Eigen::Index tmode = 0; tmode < tangential_count; ++tmode) {
        // Decode the tangential multi-index of this mode.
        std::vector<int> tidx(static_cast<std::size_t>(rank - 1), 0);
        Eigen::Index rem = tmode;
        for (int a = rank - 2; a >= 0; --a) {
            tidx[static_cast<std::size_t>(a)] = static_cast<int>(rem % f.dims[static_cast<std::size_t>(a)]);
            rem /= f.dims[static_cast<std::size_t>(a)];
        }
        Eigen::VectorXd xi_prime(rank - 1);
        for (int a = 0; a < rank - 1; ++a) {
            int k = tidx[static_cast<std::size_t>(a)];
            int dim = f.dims[static_cast<std::size_t>(a)];
            int kappa = (k <= dim / 2) ? k : k - dim;
            xi_prime[a] = 2.0 * M_PI * kappa / f.box_length[static_cast<std::size_t>(a)];
        }

        Eigen::VectorXcd rhs_line(K);
        for (int j = 0; j < K; ++j) rhs_line[j] = fhat.values[tmode * K + j];

        HalfSpaceModeSolution mode = solve_halfspace_mode(problem, xi_prime, rhs_line);
        for (int j = 0; j < K; ++j) uhat.values[tmode * K + j] = mode.u_total[j];

        // Interior residual of this mode with the higher-order stencils.
        Polynomial coeffs = normal_symbol_polynomial(problem.op, xi_prime, problem.lambda);
        for (int j = res_band; j < K - res_band; ++j) {
            Complex lhs(0.0, 0.0);
            for (int k = 0; k <= two_m; ++k) {
                const Stencil& s = res_stencils[static_cast<std::size_t>(k)];
                Complex d(0.0, 0.0);
                for (int o = -s.half_width; o <= s.half_width; ++o)
                    d += s.weights[o + s.half_width] * mode.u_total[j + o];
                lhs += coeffs[k] * d;
            }
            res_sq += std::norm(lhs - rhs_line[j]);
            rhs_sq += std::norm(rhs_line[j]);
            ++counted;
        }

        // Boundary residual with one-sided 4th-order stencils on the returned grid.
        for (int jb = 0; jb < m; ++jb) {
            Polynomial bj = boundary_principal_polynomial(
                problem.boundary_ops[static_cast<std::size_t>(jb)], xi_prime);
            Complex bc(0.0, 0.0);
            for (int d = 0; d < bj.size(); ++d) {
                if (bj[d] == Complex(0.0, 0.0)) continue;
                int nn = d + 5;
                Eigen::VectorXd nodes(nn);
                for (int i = 0; i < nn; ++i) nodes[i] = i * h;
                Eigen::VectorXd w = fd_weights(d, nodes, 0.0);
                Complex der(0.0, 0.0);
                for (int i = 0; i < nn; ++i) der += w[i] * mode.u_total[i];
                bc += bj[d] * std::pow(Complex(0.0, -1.0), d) * der;
            }
            boundary_res = std::max(boundary_res, std::abs(bc));
        }
    }

    HalfSpaceSolution sol;
    sol.u = f;
    sol.u.values = uhat.values;
    tangential_fft(sol.u.values, sol.u.dims, false);
    sol.report.modes = tangential_count;
    (void)counted;
    sol.report.pde_residual_abs = std::sqrt(res_sq * h);
    sol.report.rhs_norm = std::sqrt(rhs_sq * h);
    sol.report.pde_residual_rel =
        sol.report.rhs_norm > 0.0 ? sol.report.pde_residual_abs / sol.report.rhs_norm : 0.0;
    sol.report.boundary_residual_max = boundary_res;
    if (sol.report.pde_residual_rel > problem.residual_threshold)
        throw accuracy_error("half-space normal grid under-resolved: relative residual " +
                             std::to_string(sol.report.pde_residual_rel));
    return sol;
}

Eigen::VectorXcd one_sided_hilbert(const Eigen::VectorXcd& f, double h) {
    if (!(h > 0.0)) throw config_error("grid spacing must be positive");
    const Eigen::Index n = f.size();
    Eigen::VectorXcd out(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double x = (i + 0.5) * h;
        Complex acc(0.0, 0.0);
        for (Eigen::Index j = 0; j < n; ++j) acc += f[j] / (x + (j + 0.5) * h);
        out[i] = acc * h;
    }
    return out;
}

Complex one_sided_hilbert_at(const Eigen::VectorXcd& f, double h, double x) {
    Complex acc(0.0, 0.0);
    for (Eigen::Index j = 0; j < f.size(); ++j) acc += f[j] / (x + (j + 0.5) * h);
    return acc * h;
}

double one_sided_hilbert_norm_ratio(const Eigen::VectorXcd& f, double h, double p) {
    double num = 0.0, den = 0.0;
    Eigen::VectorXcd hf = one_sided_hilbert(f, h);
    for (Eigen::Index i = 0; i < f.size(); ++i) {
        num += std::pow(std::abs(hf[i]), p);
        den += std::pow(std::abs(f[i]), p);
    }
    if (den == 0.0) throw config_error("norm ratio of the zero function");
    return std::pow(num / den, 1.0 / p);
}

}  // namespace parreg
