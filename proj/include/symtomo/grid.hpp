#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "symtomo/fft.hpp"

namespace symtomo {

/// Uniform lattice start + i*step, i < size.
struct Axis {
    double start = 0.0;
    double step = 1.0;
    std::size_t size = 0;

    double operator[](std::size_t i) const { return start + static_cast<double>(i) * step; }
    double back() const { return (*this)[size - 1]; }
    bool operator==(const Axis&) const = default;
};

/**
 * Uniform position grid x_j = x_min + j*dx, j < n, dx = (x_max - x_min)/n.
 * x_max itself is excluded, so index n/2 sits exactly on the center
 * (x_min + x_max)/2 and a grid symmetric about 0 is mapped onto itself by
 * x -> -x (except index 0, whose mirror is x_max).
 */
class Grid1D {
public:
    /// Throws ConfigError unless n is a power of two >= 8, x_max > x_min and hbar > 0.
    Grid1D(double x_min, double x_max, std::size_t n, double hbar = 1.0);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    double dx() const { return dx_; }
    double hbar() const { return hbar_; }
    std::size_t size() const { return n_; }
    double center() const { return 0.5 * (x_min_ + x_max_); }
    double x(std::size_t j) const { return x_min_ + static_cast<double>(j) * dx_; }

    /// DFT-dual momentum spacing 2 pi hbar / (n dx).
    double dp() const;
    Axis position_axis() const { return {x_min_, dx_, n_}; }
    /// DFT-dual momentum lattice, monotone and centered: p_k = (k - n/2) dp.
    Axis momentum_axis() const;

    bool operator==(const Grid1D&) const = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    double hbar_;
    double dx_;
};

Grid1D make_grid(double x_min, double x_max, std::size_t n_points, double hbar = 1.0);

/// Complex samples of a pure state on a Grid1D.
class SampledWavefunction {
public:
    SampledWavefunction(Grid1D grid, std::vector<cplx> values);

    static SampledWavefunction from_function(const Grid1D& grid,
                                             const std::function<cplx(double)>& f);

    const Grid1D& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    cplx operator[](std::size_t j) const { return values_[j]; }
    std::size_t size() const { return values_.size(); }
    double hbar() const { return grid_.hbar(); }

    /// dx * sum |psi_j|^2
    double norm_squared() const;
    double norm() const;
    SampledWavefunction normalized() const;

    /// True when |psi| at both ends is below rel_tol * max |psi|.
    bool edge_decayed(double rel_tol = 1e-12) const;

private:
    Grid1D grid_;
    std::vector<cplx> values_;
};

/// dx * sum conj(a_j) b_j on a common grid.
cplx inner_product(const SampledWavefunction& a, const SampledWavefunction& b);

enum class FourierDirection { forward, inverse };

/**
 * (2 pi hbar)^{-1/2} * dx * sum_k exp(-+ i x_k p / hbar) psi_k for every p
 * of the lattice `out` (minus sign for forward). This is the Riemann sum of
 * the continuum kernel, spectrally accurate for band-limited, edge-decayed
 * states while |p| stays below pi hbar / dx.
 */
std::vector<cplx> fourier_on_lattice(const SampledWavefunction& psi, const Axis& out,
                                     FourierDirection direction);

/// Unitary hbar-Fourier transform, the output sampled on the input's own axis.
SampledWavefunction hbar_fourier(const SampledWavefunction& psi,
                                 FourierDirection direction = FourierDirection::forward);

/// Multiplication by exp(i c x^2 / (2 hbar)).
SampledWavefunction chirp_multiply(const SampledWavefunction& psi, double c);

/**
 * Band-limited (trigonometric) interpolant of psi evaluated on an arbitrary
 * uniform lattice. Points outside [x_0, x_{n-1}] evaluate to 0 rather than
 * to the periodic image.
 */
std::vector<cplx> bandlimited_sample(const SampledWavefunction& psi, const Axis& points);

/// sqrt(|s|) psi(s x) on the original grid. Throws DomainError for s == 0.
SampledWavefunction scale(const SampledWavefunction& psi, double s);

/// Same state on a grid with `factor` times as many points over the same extent.
SampledWavefunction upsample(const SampledWavefunction& psi, std::size_t factor);

}  // namespace symtomo
