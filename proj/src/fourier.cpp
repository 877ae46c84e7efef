#include "parreg/fourier.hpp"

#include <algorithm>
#include <cmath>

namespace parreg {

namespace {

// exp(-1/t) glue and the smooth 0 -> 1 step on (0, 1).
double glue(double t) { return t > 0.0 ? std::exp(-1.0 / t) : 0.0; }

double smooth_step(double t) {
    double a = glue(t);
    double b = glue(1.0 - t);
    return a / (a + b);
}

// Transition profile in log2 radius: eta(s) = step(s) - step(s - 1), a bump
// supported on (0, 2) whose integer translates sum to 1.
double eta(double s) { return smooth_step(s) - smooth_step(s - 1.0); }

}  // namespace

double dyadic_profile(double radius, int level) {
    if (radius <= 0.0) return level == 0 ? 1.0 : 0.0;
    double s = std::log2(radius);
    if (level == 0) return 1.0 - smooth_step(s);
    return eta(s - (level - 1));
}

DyadicSystem build_dyadic_system(const std::vector<int>& dims, const std::vector<double>& box,
                                 int levels) {
    if (levels < 1) throw config_error("dyadic system needs at least one annulus level");
    GridFunction probe(dims, box, Domain::frequency);
    double nyquist = 0.0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        double r = M_PI * dims[i] / box[i];
        nyquist += r * r;
    }
    nyquist = std::sqrt(nyquist);
    // The scaled family phi_1(2^{1-k} xi) only sums to 1 inside |xi| <= 2^K;
    // beyond that the truncated tail would leave a partition defect.
    if (std::pow(2.0, levels) < nyquist * (1.0 - 1e-12))
        throw config_error("dyadic levels too few for the grid's frequency range");

    DyadicSystem sys;
    sys.levels = levels;
    sys.dims = dims;
    sys.box_length = box;
    sys.blocks.assign(static_cast<std::size_t>(levels) + 1,
                      Eigen::VectorXd::Zero(probe.size()));
    for (Eigen::Index i = 0; i < probe.size(); ++i) {
        double r = probe.mode_frequency(probe.unflatten(i)).norm();
        double sum = 0.0;
        for (int k = 0; k <= levels; ++k) {
            double v = dyadic_profile(r, k);
            sys.blocks[static_cast<std::size_t>(k)][i] = v;
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw accuracy_error("dyadic partition defect above 1e-12");
    }
    return sys;
}

GridFunction apply_block(const DyadicSystem& sys, int k, const GridFunction& u) {
    if (!sys.matches(u)) throw config_error("dyadic system grid mismatch");
    if (k < 0 || k > sys.levels) throw config_error("dyadic level out of range");
    GridFunction hat = to_frequency(u);
    hat.values.array() *= sys.blocks[static_cast<std::size_t>(k)].array();
    return to_space(hat);
}

namespace {

double lq_over_levels(const std::vector<double>& terms, double q) {
    if (std::isinf(q)) return *std::max_element(terms.begin(), terms.end());
    double acc = 0.0;
    for (double t : terms) acc += std::pow(t, q);
    return std::pow(acc, 1.0 / q);
}

}  // namespace

double besov_norm(const GridFunction& u, double s, double p, double q, const DyadicSystem& sys) {
    if (u.domain_tag != Domain::space) throw config_error("besov norm expects a space-domain input");
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(sys.levels) + 1);
    for (int k = 0; k <= sys.levels; ++k)
        terms.push_back(std::pow(2.0, s * k) * lp_norm(apply_block(sys, k, u), p));
    return lq_over_levels(terms, q);
}

double triebel_lizorkin_norm(const GridFunction& u, double s, double p, double q,
                             const DyadicSystem& sys) {
    if (u.domain_tag != Domain::space)
        throw config_error("triebel-lizorkin norm expects a space-domain input");
    std::vector<GridFunction> blocks;
    blocks.reserve(static_cast<std::size_t>(sys.levels) + 1);
    for (int k = 0; k <= sys.levels; ++k) blocks.push_back(apply_block(sys, k, u));
    double acc = 0.0;
    double maxacc = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        double inner;
        if (std::isinf(q)) {
            inner = 0.0;
            for (int k = 0; k <= sys.levels; ++k)
                inner = std::max(inner, std::pow(2.0, s * k) *
                                            std::abs(blocks[static_cast<std::size_t>(k)].values[i]));
        } else {
            inner = 0.0;
            for (int k = 0; k <= sys.levels; ++k)
                inner += std::pow(std::pow(2.0, s * k) *
                                      std::abs(blocks[static_cast<std::size_t>(k)].values[i]),
                                  q);
            inner = std::pow(inner, 1.0 / q);
        }
        if (std::isinf(p))
            maxacc = std::max(maxacc, inner);
        else
            acc += std::pow(inner, p);
    }
    if (std::isinf(p)) return maxacc;
    return std::pow(acc * u.cell_volume(), 1.0 / p);
}

double bessel_norm(const GridFunction& u, double s, double p) {
    GridFunction v = map_modes(u, [s](const Eigen::VectorXd& xi) {
        return Complex(std::pow(1.0 + xi.squaredNorm(), s / 2.0), 0.0);
    });
    return lp_norm(v, p);
}

GridFunction apply_multiplier(const std::function<Complex(const Eigen::VectorXd&)>& symbol,
                              const GridFunction& u) {
    if (u.domain_tag != Domain::space) throw config_error("multiplier expects a space-domain input");
    return map_modes(u, symbol);
}

namespace {

// Central finite difference of order |beta| <= 3 in the direction pattern
// beta (one partial per axis occurrence), relative step.
Complex mixed_partial(const std::function<Complex(const Eigen::VectorXd&)>& f,
                      const Eigen::VectorXd& xi, const std::vector<int>& beta, double h) {
    // Recursive nesting: d/dxi_axis of the remaining pattern.
    if (beta.empty()) return f(xi);
    std::vector<int> rest(beta.begin() + 1, beta.end());
    Eigen::VectorXd xp = xi, xm = xi;
    xp[beta[0]] += h;
    xm[beta[0]] -= h;
    return (mixed_partial(f, xp, rest, h) - mixed_partial(f, xm, rest, h)) / (2.0 * h);
}

std::vector<std::vector<int>> derivative_patterns(int dim, MikhlinVariant variant) {
    std::vector<std::vector<int>> pats;
    pats.push_back({});  // beta = 0
    if (variant == MikhlinVariant::lizorkin) {
        // beta in {0,1}^n: all subsets of axes.
        for (int mask = 1; mask < (1 << dim); ++mask) {
            std::vector<int> p;
            for (int a = 0; a < dim; ++a)
                if (mask & (1 << a)) p.push_back(a);
            pats.push_back(p);
        }
    } else {
        // |beta| <= floor(n/2) + 1, all multi-indices enumerated as axis patterns.
        int maxord = dim / 2 + 1;
        std::vector<std::vector<int>> frontier = {{}};
        for (int ord = 1; ord <= maxord; ++ord) {
            std::vector<std::vector<int>> next;
            for (const auto& p : frontier) {
                int start = p.empty() ? 0 : p.back();  // non-decreasing: unordered partials
                for (int a = start; a < dim; ++a) {
                    auto q = p;
                    q.push_back(a);
                    next.push_back(q);
                    pats.push_back(q);
                }
            }
            frontier = std::move(next);
        }
    }
    return pats;
}

std::vector<Eigen::VectorXd> sphere_directions(int dim, int count) {
    std::vector<Eigen::VectorXd> dirs;
    if (dim == 1) {
        Eigen::VectorXd d(1);
        d << 1.0;
        dirs.push_back(d);
        d << -1.0;
        dirs.push_back(d);
        return dirs;
    }
    if (dim == 2) {
        for (int i = 0; i < count; ++i) {
            double a = 2.0 * M_PI * (i + 0.13) / count;
            Eigen::VectorXd d(2);
            d << std::cos(a), std::sin(a);
            dirs.push_back(d);
        }
        return dirs;
    }
    // Deterministic spiral on S^2.
    for (int i = 0; i < count; ++i) {
        double z = -1.0 + 2.0 * (i + 0.5) / count;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        double a = 2.39996322972865332 * i;  // golden angle
        Eigen::VectorXd d(3);
        d << r * std::cos(a), r * std::sin(a), z;
        dirs.push_back(d);
    }
    return dirs;
}

double mikhlin_stage_max(const std::function<Complex(const Eigen::VectorXd&)>& symbol, int dim,
                         MikhlinVariant variant, int directions, double log2_lo, double log2_hi,
                         int radii, Eigen::VectorXd* worst) {
    auto pats = derivative_patterns(dim, variant);
    auto dirs = sphere_directions(dim, directions);
    double cm = 0.0;
    for (int ir = 0; ir < radii; ++ir) {
        double r = std::pow(2.0, log2_lo + (log2_hi - log2_lo) * ir / (radii - 1));
        double h = 5e-3 * r;  // relative step keeps scale-invariant quantities stable
        for (const auto& d : dirs) {
            Eigen::VectorXd xi = r * d;
            for (const auto& beta : pats) {
                Complex dv = mixed_partial(symbol, xi, beta, h);
                double quantity;
                if (variant == MikhlinVariant::classical) {
                    quantity = std::pow(xi.norm(), static_cast<double>(beta.size())) * std::abs(dv);
                } else {
                    double mono = 1.0;
                    for (int a : beta) mono *= xi[a];
                    quantity = std::abs(mono * dv);
                }
                if (!std::isfinite(quantity))
                    throw accuracy_error("symbol evaluation failed on the radial grid");
                if (quantity > cm) {
                    cm = quantity;
                    if (worst) *worst = xi;
                }
            }
        }
    }
    return cm;
}

}  // namespace

MikhlinReport mikhlin_check(const std::function<Complex(const Eigen::VectorXd&)>& symbol, int dim,
                            MikhlinVariant variant, int directions) {
    if (dim < 1 || dim > 3) throw config_error("mikhlin check supports dimensions 1-3");
    MikhlinReport rep;
    rep.worst_xi = Eigen::VectorXd::Zero(dim);
    // Base stage on radii 2^-8 .. 2^8, then two range extensions; an estimate
    // that keeps growing as the range widens signals an unbounded quantity.
    double c0 = mikhlin_stage_max(symbol, dim, variant, directions, -8.0, 8.0, 33, &rep.worst_xi);
    double c1 = mikhlin_stage_max(symbol, dim, variant, directions, -9.0, 9.0, 37, nullptr);
    double c2 = mikhlin_stage_max(symbol, dim, variant, directions, -10.0, 10.0, 41, nullptr);
    rep.c_m = c0;
    double eps = 1e-300;
    rep.growth_ratio = std::max(c1 / (c0 + eps), c2 / (c1 + eps));
    rep.passed = std::isfinite(c0) && rep.growth_ratio < 1.2;
    return rep;
}

namespace {

// 1-d bump with support exactly [-3/4, 3/4], even and positive inside.
double bump34(double x) {
    double t = 1.0 - std::pow(4.0 * x / 3.0, 2);
    return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
}

// Blend on [0, 3/4] from the construction phi^2(x) + phi^2(1-x) = 1.
double blend(double x) {
    x = std::abs(x);
    if (x >= 0.75) return 0.0;
    double a = bump34(x);
    double b = bump34(1.0 - x);
    return std::sqrt(a * a / (a * a + b * b));
}

}  // namespace

double SquarePartition::operator()(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim) throw config_error("partition point dimension mismatch");
    double v = 1.0;
    for (double c : x) v *= blend(c / spacing);
    return v;
}

double SquarePartition::translate(const std::vector<double>& x,
                                  const std::vector<int>& lattice_index) const {
    std::vector<double> y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] - spacing * lattice_index[i];
    return (*this)(y);
}

double SquarePartition::sum_of_squares(const std::vector<double>& x) const {
    // Per axis only the two nearest lattice cells can contribute.
    double total = 1.0;
    for (int a = 0; a < dim; ++a) {
        double s = x[static_cast<std::size_t>(a)] / spacing;
        double axis_sum = 0.0;
        long base = std::lround(std::floor(s));
        for (long l = base - 1; l <= base + 2; ++l) {
            double v = blend(s - static_cast<double>(l));
            axis_sum += v * v;
        }
        total *= axis_sum;
    }
    return total;
}

SquarePartition partition_of_unity(double spacing, int dim) {
    if (!(spacing > 0.0)) throw config_error("partition spacing must be positive");
    if (dim < 1) throw config_error("partition dimension must be >= 1");
    return SquarePartition{spacing, dim};
}

}  // namespace parreg
