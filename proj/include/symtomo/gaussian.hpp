#pragma once

#include <Eigen/Dense>

#include "symtomo/grid.hpp"
#include "symtomo/radon.hpp"
#include "symtomo/wigner.hpp"

namespace symtomo {

/**
 * Covariances of a pure one-dimensional Gaussian. Purity means the
 * Robertson-Schroedinger bound is saturated: sxx spp - sxp^2 = hbar^2 / 4.
 */
class GaussianState {
public:
    /// Full triple, checked against saturation to 1e-10 relative. Below the
    /// bound throws DomainError (unphysical); above it throws ModelMismatch (mixed).
    GaussianState(double sigma_xx, double sigma_pp, double sigma_xp, double hbar = 1.0);

    /// sigma_pp fixed by saturation.
    static GaussianState pure(double sigma_xx, double sigma_xp, double hbar = 1.0);

    double sigma_xx() const { return sxx_; }
    double sigma_pp() const { return spp_; }
    double sigma_xp() const { return sxp_; }
    double hbar() const { return hbar_; }
    Eigen::Matrix2d covariance() const;

    /// Variance of mu x + nu p: mu^2 sxx + 2 mu nu sxp + nu^2 spp.
    double tomogram_variance(double mu, double nu) const;

private:
    double sxx_;
    double spp_;
    double sxp_;
    double hbar_;
};

/// Phase-space displacement applied to the closed forms (default: centered).
struct PhaseSpacePoint {
    double x = 0.0;
    double p = 0.0;
};

/**
 * (2 pi sxx)^{-1/4} exp(-y^2 / (4 sxx)) exp(i sxp y^2 / (2 hbar sxx)) exp(i p0 x / hbar),
 * y = x - x0. Uses the grid's hbar, which must match the state's.
 */
SampledWavefunction gaussian_wavefunction(const GaussianState& state, const Grid1D& grid,
                                          PhaseSpacePoint center = {});

/// True when the grid spans at least 8 sqrt(sxx) on each side of the center.
bool grid_covers(const GaussianState& state, const Grid1D& grid, PhaseSpacePoint center = {});

/// Normal density of mu x + nu p at X.
double gaussian_tomogram_density(const GaussianState& state, double mu, double nu, double X,
                                 PhaseSpacePoint center = {});

/// Closed-form tomogram on an X axis. Throws DomainError for (0, 0).
Tomogram gaussian_tomogram(const GaussianState& state, double mu, double nu, const Axis& x_axis,
                           PhaseSpacePoint center = {});

/// Bivariate normal with covariance matrix Sigma; peak 1 / (pi hbar).
double gaussian_wigner_value(const GaussianState& state, double x, double p, PhaseSpacePoint center = {});
WignerMap gaussian_wigner(const GaussianState& state, const Grid1D& x_grid, const Axis& p_axis,
                          PhaseSpacePoint center = {});

/// Fourier transform of exp(-(a + i b) x^2 / hbar): (2(a + ib))^{-1/2} exp(-p^2 / (4 hbar (a + ib))).
cplx chirped_gaussian_fourier(double a, double b, double p, double hbar);

/// a, b such that the chirped state of the explicit tomogram formula is c exp(-(a + ib) x^2 / hbar).
struct ChirpCoefficients {
    double a;
    double b;
    /// a / (a^2 + b^2) == hbar / (spp + 4 eps^2 sxx + 4 eps sxp), eps = mu / (2 nu)
    double ratio() const { return a / (a * a + b * b); }
};
ChirpCoefficients chirp_coefficients(const GaussianState& state, double mu, double nu);

/// Tomogram density from the (a, b) route:
/// (2 pi sxx)^{-1/2} / (2 |nu| sqrt(a^2 + b^2)) exp(-ratio (X / nu)^2 / (2 hbar)). Needs nu != 0.
double tomogram_density_from_chirp(const GaussianState& state, double mu, double nu, double X);

/// 1/2 z^T Sigma^{-1} z
double ellipse_form(const GaussianState& state, double x, double p);

enum class ChordVariable { x, p };

/// Intersection of the covariance ellipse with the line mu x + nu p = 0.
struct EllipseChord {
    double mu;
    double nu;
    ChordVariable variable;  ///< x when nu != 0, p on the vertical line (nu == 0)
    double coefficient;      ///< the chord reads coefficient * variable^2 <= hbar^2 / 2
    double half_width;       ///< hbar / sqrt(2 coefficient)
};

/// Throws DomainError for (0, 0), InternalError if the coefficient is not positive.
EllipseChord ellipse_chord(const GaussianState& state, double mu, double nu);

/// For nu != 0 the chord coefficient equals tomogram_variance(mu, nu) / nu^2.
bool chord_matches_tomogram_variance(const GaussianState& state, double mu, double nu, double tol = 1e-12);

/// Central second moment with 6-sigma truncation, corrected for the Gaussian
/// tail mass removed by the truncation.
double gaussian_variance_estimate(const Tomogram& t);

struct PauliOptions {
    double saturation_tol = 1e-6;  ///< relative slack below hbar^2 / 4 before ModelMismatch
    double fit_tol = 1e-3;         ///< relative misfit of the extra tomogram before ModelMismatch
    double ambiguity_tol = 1e-9;   ///< relative sign separation below which the sign is moot
};

struct PauliResult {
    GaussianState state;
    double measured_sigma_pp;     ///< from the momentum tomogram (state.sigma_pp() is re-derived)
    double extra_variance;        ///< measured variance of the extra tomogram
    double predicted_plus;        ///< predicted with +|sxp|
    double predicted_minus;       ///< predicted with -|sxp|
    double residual;              ///< relative misfit of the chosen sign
    double sign_margin;           ///< (misfit of rejected sign - misfit of chosen sign), relative
    bool sign_moot;               ///< |sxp| indistinguishable from 0
};

/**
 * Recovers (sxx, spp, sxp) from tomograms at (mu, 0), (0, nu) and one
 * (mu, nu) with mu nu != 0: variances from second moments, |sxp| from
 * saturation, the sign from whichever of +-|sxp| predicts the extra
 * tomogram's variance better.
 */
PauliResult pauli_reconstruct(const Tomogram& t_x, const Tomogram& t_p, const Tomogram& t_extra,
                              const PauliOptions& options = {});

}  // namespace symtomo
