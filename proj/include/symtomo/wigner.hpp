#pragma once

#include <cstddef>
#include <vector>

#include "symtomo/grid.hpp"

namespace symtomo {

/// Interpolation used when reading a phase-space map between its nodes.
enum class Interpolation {
    bilinear,
    lagrange6,  ///< tensor-product quintic Lagrange on a 6x6 stencil
};

/// Real phase-space samples W(x_i, p_k), stored row-major (x outer, p inner).
class WignerMap {
public:
    WignerMap(Grid1D x_grid, Axis p_axis, std::vector<double> values);

    const Grid1D& x_grid() const { return x_grid_; }
    const Axis& p_axis() const { return p_axis_; }
    double hbar() const { return x_grid_.hbar(); }
    std::size_t nx() const { return x_grid_.size(); }
    std::size_t np() const { return p_axis_.size; }
    const std::vector<double>& values() const { return values_; }

    double operator()(std::size_t i, std::size_t k) const { return values_[i * p_axis_.size + k]; }

    /// dx * dp * sum W
    double total_mass() const;

    /// W at an arbitrary point; 0 outside the sampled box.
    double sample(double x, double p, Interpolation method = Interpolation::bilinear) const;

    /// Largest |W| on the outer frame of the box, relative to max |W|.
    double boundary_level() const;

    /// |Im| left over by the transform (0 for maps built another way).
    double max_imag_residue = 0.0;
    /// Set when the source state was not decayed at the grid edges.
    bool accuracy_warning = false;

private:
    Grid1D x_grid_;
    Axis p_axis_;
    std::vector<double> values_;
};

/**
 * Wigner transform of a pure state, with the y-integral written as
 * y = 2u so the autocorrelation psi(x+u) conj(psi(x-u)) lives on the native
 * grid; samples beyond the grid count as 0. Each row is an hbar-Fourier sum
 * evaluated directly on `p_axis`.
 */
WignerMap wigner_transform(const SampledWavefunction& psi, const Axis& p_axis);

/// Same, with the momentum axis equal to the position axis (square phase-space grid).
WignerMap wigner_transform(const SampledWavefunction& psi);

struct Marginals {
    std::vector<double> position;  ///< dp-weighted row sums, ~ |psi(x)|^2
    std::vector<double> momentum;  ///< dx-weighted column sums, ~ |psi_hat(p)|^2
};

Marginals marginals(const WignerMap& w);

}  // namespace symtomo
