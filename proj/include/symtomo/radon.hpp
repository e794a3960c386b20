#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "symtomo/grid.hpp"
#include "symtomo/metaplectic.hpp"
#include "symtomo/wigner.hpp"

namespace symtomo {

enum class RadonRoute { metaplectic, chirp_fft, line_integral };

std::string to_string(RadonRoute route);
/// Accepts "metaplectic", "chirp-fft", "line-integral". Throws ConfigError otherwise.
RadonRoute parse_route(std::string_view name);

/// One slice R(X; mu, nu): the probability density of mu x + nu p.
class Tomogram {
public:
    /// Values below zero are clipped; the most negative raw value is kept in
    /// `negativity` and sets `accuracy_warning` when it exceeds 1e-10.
    Tomogram(RotationParams params, Axis x_axis, std::vector<double> values, double hbar,
             RadonRoute route);

    const RotationParams& params() const { return params_; }
    const Axis& x_axis() const { return x_axis_; }
    const std::vector<double>& values() const { return values_; }
    double hbar() const { return hbar_; }
    RadonRoute route() const { return route_; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::size_t size() const { return values_.size(); }

    double mass() const;
    double mean() const;
    /// Central second moment, integrated over mean +- `sigmas` standard
    /// deviations of a first full-grid pass (sigmas <= 0 disables truncation).
    double variance(double sigmas = 6.0) const;

    double negativity = 0.0;
    bool accuracy_warning = false;

private:
    RotationParams params_;
    Axis x_axis_;
    std::vector<double> values_;
    double hbar_;
    RadonRoute route_;
};

/// R(X) = lambda^{-1} |U psi(X / lambda)|^2 on the state's own grid.
Tomogram radon_metaplectic(const SampledWavefunction& psi, double mu, double nu);

/**
 * R(X) = |nu|^{-1} |F[exp(i mu x^2 / (2 hbar nu)) psi](X / nu)|^2.
 * The state is oversampled (power-of-two factor up to 64) until the chirped
 * spectrum fits below 80% of the Nyquist momentum; if the cap is reached the
 * tomogram carries accuracy_warning. Throws UnsupportedError for nu == 0.
 */
Tomogram radon_chirp_fft(const SampledWavefunction& psi, double mu, double nu);

/**
 * lambda^{-1} times the unit-speed line integral of W along mu x + nu p = X,
 * composite trapezoid with step min(dx, dp). Bilinear sampling carries a bias
 * of about (dx^2 / 12) R''(X), up to ~1e-3 for squeezed states on 1024^2
 * grids; the default samples W with the 6-point stencil. Sets accuracy_warning when W has not
 * decayed at the box boundary.
 */
Tomogram radon_line_integral(const WignerMap& w, double mu, double nu, const Axis& x_axis,
                            Interpolation method = Interpolation::lagrange6);

/// Dispatch by route; the line-integral route computes the Wigner map first.
Tomogram radon(const SampledWavefunction& psi, double mu, double nu, RadonRoute route);

/// Tomograms at theta_k = theta_0 + k pi / K, (mu, nu) = (cos, sin), on a common X axis.
class TomogramSet {
public:
    /// Throws DomainError for an empty list, mismatched axes or hbar.
    explicit TomogramSet(std::vector<Tomogram> tomograms);

    const std::vector<Tomogram>& tomograms() const { return tomograms_; }
    const Axis& x_axis() const { return tomograms_.front().x_axis(); }
    double hbar() const { return tomograms_.front().hbar(); }
    std::size_t size() const { return tomograms_.size(); }
    std::vector<double> angles() const;

    /// Throws DomainError unless there are >= 8 unit-circle angles, strictly
    /// increasing with spacing pi / K.
    void require_inversion_ready() const;

private:
    std::vector<Tomogram> tomograms_;
};

/**
 * K equispaced angles on [0, pi). The chirp route falls back to the
 * metaplectic route at nu == 0; the line-integral route shares one Wigner map.
 */
TomogramSet make_tomogram_set(const SampledWavefunction& psi, std::size_t n_angles, RadonRoute route);

struct InverseRadonOptions {
    std::size_t pad_factor = 4;   ///< zero padding of each projection before filtering
    std::size_t upsample = 4;     ///< band-limited refinement before linear back-projection
    double taper_start = 0.8;     ///< raised-cosine roll-off starts at this fraction of Nyquist
    double constant_scale = 1.0;  ///< multiplies the reconstruction; != 1 only for negative controls
};

/**
 * Filtered back-projection:
 *
 *   W(x, p) = (1/2pi) int_0^pi (|k| R_theta)(x cos theta + p sin theta) dtheta,
 *
 * the ramp applied in the Fourier domain of X. Output on x_grid x p_axis.
 */
WignerMap inverse_radon(const TomogramSet& set, const Grid1D& x_grid, const Axis& p_axis,
                        const InverseRadonOptions& options = {});

/// Output on the square grid spanned by the tomograms' X axis.
WignerMap inverse_radon(const TomogramSet& set, const InverseRadonOptions& options = {});

/// Convex combination of tomograms sharing (mu, nu) and X axis; weights >= 0 summing to 1.
Tomogram mix_tomograms(std::span<const double> weights, std::span<const Tomogram> tomograms);

}  // namespace symtomo
