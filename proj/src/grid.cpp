#include "parreg/grid.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numeric>

namespace parreg {

GridFunction::GridFunction(std::vector<int> dims_, std::vector<double> box_, Domain tag)
    : dims(std::move(dims_)), box_length(std::move(box_)), domain_tag(tag) {
    if (dims.empty() || dims.size() > 3) throw config_error("grid rank must be 1, 2, or 3");
    if (box_length.size() != dims.size()) throw config_error("box length per axis required");
    Eigen::Index total = 1;
    for (std::size_t i = 0; i < dims.size(); ++i) {
        if (dims[i] < 2) throw config_error("grid axis needs at least 2 points");
        if (!(box_length[i] > 0.0)) throw config_error("box length must be positive");
        total *= dims[i];
    }
    values = Eigen::VectorXcd::Zero(total);
}

double GridFunction::cell_volume() const {
    double v = 1.0;
    for (std::size_t i = 0; i < dims.size(); ++i) v *= box_length[i] / dims[i];
    return v;
}

double GridFunction::box_volume() const {
    double v = 1.0;
    for (double l : box_length) v *= l;
    return v;
}

Eigen::Index GridFunction::flat_index(const std::vector<int>& idx) const {
    Eigen::Index flat = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) flat = flat * dims[i] + idx[i];
    return flat;
}

std::vector<int> GridFunction::unflatten(Eigen::Index flat) const {
    std::vector<int> idx(dims.size());
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
        idx[static_cast<std::size_t>(i)] = static_cast<int>(flat % dims[static_cast<std::size_t>(i)]);
        flat /= dims[static_cast<std::size_t>(i)];
    }
    return idx;
}

std::vector<double> GridFunction::node_coords(const std::vector<int>& idx) const {
    std::vector<double> x(dims.size());
    for (std::size_t i = 0; i < dims.size(); ++i) x[i] = box_length[i] * idx[i] / dims[i];
    return x;
}

Eigen::VectorXd GridFunction::mode_frequency(const std::vector<int>& idx) const {
    Eigen::VectorXd xi(static_cast<Eigen::Index>(dims.size()));
    for (std::size_t i = 0; i < dims.size(); ++i) {
        int k = idx[i];
        int kappa = (k <= dims[i] / 2) ? k : k - dims[i];
        xi[static_cast<Eigen::Index>(i)] = 2.0 * M_PI * kappa / box_length[i];
    }
    return xi;
}

bool GridFunction::same_grid(const GridFunction& other) const {
    return dims == other.dims && box_length == other.box_length;
}

namespace {

// In-place FFT along one axis of the row-major array.
void fft_axis(Eigen::VectorXcd& data, const std::vector<int>& dims, std::size_t axis, bool forward) {
    Eigen::FFT<double> fft;
    const int m = dims[axis];
    Eigen::Index stride = 1;
    for (std::size_t i = axis + 1; i < dims.size(); ++i) stride *= dims[i];
    Eigen::Index outer = data.size() / (static_cast<Eigen::Index>(m) * stride);

    std::vector<Complex> line(static_cast<std::size_t>(m)), out(static_cast<std::size_t>(m));
    for (Eigen::Index o = 0; o < outer; ++o) {
        for (Eigen::Index s = 0; s < stride; ++s) {
            Eigen::Index base = o * m * stride + s;
            for (int k = 0; k < m; ++k) line[static_cast<std::size_t>(k)] = data[base + k * stride];
            if (forward)
                fft.fwd(out, line);
            else
                fft.inv(out, line);
            for (int k = 0; k < m; ++k) data[base + k * stride] = out[static_cast<std::size_t>(k)];
        }
    }
}

}  // namespace

GridFunction to_frequency(const GridFunction& u) {
    if (u.domain_tag == Domain::frequency) return u;
    GridFunction v = u;
    for (std::size_t axis = 0; axis < u.dims.size(); ++axis) fft_axis(v.values, v.dims, axis, true);
    v.values /= static_cast<double>(v.size());
    v.domain_tag = Domain::frequency;
    return v;
}

GridFunction to_space(const GridFunction& u) {
    if (u.domain_tag == Domain::space) return u;
    GridFunction v = u;
    for (std::size_t axis = 0; axis < u.dims.size(); ++axis) fft_axis(v.values, v.dims, axis, false);
    // Eigen's inverse transform divides by the axis length; undo to realize
    // u(x) = sum c_kappa exp(i xi . x).
    v.values *= static_cast<double>(v.size());
    v.domain_tag = Domain::space;
    return v;
}

double lp_norm(const GridFunction& u, double p) {
    const GridFunction& s = u.domain_tag == Domain::space ? u : to_space(u);
    if (std::isinf(p)) {
        double m = 0.0;
        for (Eigen::Index i = 0; i < s.size(); ++i) m = std::max(m, std::abs(s.values[i]));
        return m;
    }
    if (!(p >= 1.0)) throw config_error("norm exponent must satisfy p >= 1");
    double acc = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(std::abs(s.values[i]), p);
    return std::pow(acc * s.cell_volume(), 1.0 / p);
}

GridFunction sample_on_grid(std::vector<int> dims, std::vector<double> box,
                            const std::function<Complex(const std::vector<double>&)>& f) {
    GridFunction u(std::move(dims), std::move(box), Domain::space);
    for (Eigen::Index i = 0; i < u.size(); ++i) u.values[i] = f(u.node_coords(u.unflatten(i)));
    return u;
}

GridFunction map_modes(const GridFunction& u, const std::function<Complex(const Eigen::VectorXd&)>& f) {
    GridFunction hat = to_frequency(u);
    for (Eigen::Index i = 0; i < hat.size(); ++i) hat.values[i] *= f(hat.mode_frequency(hat.unflatten(i)));
    return u.domain_tag == Domain::space ? to_space(hat) : hat;
}

GridFunction spectral_derivative(const GridFunction& u, int axis, int order) {
    if (axis < 0 || axis >= u.rank()) throw config_error("derivative axis out of range");
    GridFunction out = map_modes(u, [axis, order](const Eigen::VectorXd& xi) {
        return std::pow(Complex(0.0, 1.0) * xi[axis], order);
    });
    return out;
}

namespace {

template <typename T>
void write_raw(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_raw(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!is) throw config_error("truncated grid container");
    return v;
}

constexpr char kMagic[4] = {'P', 'R', 'G', 'F'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void write_grid(std::ostream& os, const GridFunction& u) {
    os.write(kMagic, 4);
    write_raw<std::uint32_t>(os, kVersion);
    write_raw<std::uint32_t>(os, static_cast<std::uint32_t>(u.dims.size()));
    for (int d : u.dims) write_raw<std::uint64_t>(os, static_cast<std::uint64_t>(d));
    for (double l : u.box_length) write_raw<double>(os, l);
    write_raw<std::uint8_t>(os, u.domain_tag == Domain::space ? 0 : 1);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        write_raw<double>(os, u.values[i].real());
        write_raw<double>(os, u.values[i].imag());
    }
}

GridFunction read_grid(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0) throw config_error("bad grid container magic");
    auto version = read_raw<std::uint32_t>(is);
    if (version != kVersion) throw config_error("unsupported grid container version");
    auto ndims = read_raw<std::uint32_t>(is);
    if (ndims < 1 || ndims > 3) throw config_error("bad grid container rank");
    std::vector<int> dims(ndims);
    for (auto& d : dims) d = static_cast<int>(read_raw<std::uint64_t>(is));
    std::vector<double> box(ndims);
    for (auto& l : box) l = read_raw<double>(is);
    auto tag = read_raw<std::uint8_t>(is);
    GridFunction u(dims, box, tag == 0 ? Domain::space : Domain::frequency);
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        double re = read_raw<double>(is);
        double im = read_raw<double>(is);
        u.values[i] = Complex(re, im);
    }
    return u;
}

void save_grid(const std::string& path, const GridFunction& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open for writing: " + path);
    write_grid(os, u);
}

GridFunction load_grid(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open for reading: " + path);
    return read_grid(is);
}

}  // namespace parreg
