#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "parreg/errors.hpp"

namespace parreg {

using Complex = std::complex<double>;

enum class Domain { space, frequency };

// Complex samples on a uniform periodic grid in 1-3 dimensions, row-major.
// In the frequency domain, values[k] is the coefficient c_kappa such that
// u(x) = sum_kappa c_kappa exp(i xi_kappa . x) with xi_kappa = 2 pi kappa / L.
struct GridFunction {
    std::vector<int> dims;
    std::vector<double> box_length;
    Eigen::VectorXcd values;
    Domain domain_tag = Domain::space;

    GridFunction() = default;
    GridFunction(std::vector<int> dims_, std::vector<double> box_, Domain tag = Domain::space);

    int rank() const { return static_cast<int>(dims.size()); }
    Eigen::Index size() const { return values.size(); }
    double cell_volume() const;
    double box_volume() const;

    // Row-major flattening.
    Eigen::Index flat_index(const std::vector<int>& idx) const;
    std::vector<int> unflatten(Eigen::Index flat) const;

    // Physical coordinate of a grid node / frequency of a mode index.
    std::vector<double> node_coords(const std::vector<int>& idx) const;
    Eigen::VectorXd mode_frequency(const std::vector<int>& idx) const;

    bool same_grid(const GridFunction& other) const;
};

GridFunction to_frequency(const GridFunction& u);
GridFunction to_space(const GridFunction& u);

// L^p norm with the grid volume element (space domain); p = inf -> max norm.
double lp_norm(const GridFunction& u, double p);

// Fill a space-domain grid from a pointwise function of the coordinates.
GridFunction sample_on_grid(std::vector<int> dims, std::vector<double> box,
                            const std::function<Complex(const std::vector<double>&)>& f);

// Map over all frequency modes: values[k] *= f(xi_k). Input in either domain,
// output in the input's domain.
GridFunction map_modes(const GridFunction& u, const std::function<Complex(const Eigen::VectorXd&)>& f);

// Spectral partial derivative d/dx_axis (i xi_axis multiplier).
GridFunction spectral_derivative(const GridFunction& u, int axis, int order = 1);

// Binary container IO. Layout (little-endian):
//   magic "PRGF", u32 version, u32 ndims, u64 dims[], f64 box[], u8 domain,
//   then size interleaved (re, im) f64 pairs.
void write_grid(std::ostream& os, const GridFunction& u);
GridFunction read_grid(std::istream& is);
void save_grid(const std::string& path, const GridFunction& u);
GridFunction load_grid(const std::string& path);

}  // namespace parreg
