#include "symtomo/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "symtomo/error.hpp"

namespace symtomo {

namespace {

constexpr double kPi = std::numbers::pi;

double normal_density(double x, double variance)
{
    return std::exp(-0.5 * x * x / variance) / std::sqrt(2.0 * kPi * variance);
}

}  // namespace

GaussianState::GaussianState(double sigma_xx, double sigma_pp, double sigma_xp, double hbar)
    : sxx_(sigma_xx), spp_(sigma_pp), sxp_(sigma_xp), hbar_(hbar)
{
    if (!(hbar > 0.0)) throw ConfigError("gaussian: hbar must be positive");
    if (!(sigma_xx > 0.0) || !(sigma_pp > 0.0) || !std::isfinite(sigma_xp))
        throw DomainError("gaussian: variances must be positive");
    const double bound = 0.25 * hbar * hbar;
    const double gap = (sigma_xx * sigma_pp - sigma_xp * sigma_xp - bound) / bound;
    if (gap < -1e-10) {
        std::ostringstream msg;
        msg << "gaussian: sxx spp - sxp^2 below hbar^2/4 (relative gap " << gap << "), unphysical";
        throw DomainError(msg.str());
    }
    if (gap > 1e-10) throw ModelMismatch("gaussian: covariances do not saturate the uncertainty bound (mixed state)");
}

GaussianState GaussianState::pure(double sigma_xx, double sigma_xp, double hbar)
{
    if (!(sigma_xx > 0.0)) throw DomainError("gaussian: sigma_xx must be positive");
    const double spp = (0.25 * hbar * hbar + sigma_xp * sigma_xp) / sigma_xx;
    return {sigma_xx, spp, sigma_xp, hbar};
}

Eigen::Matrix2d GaussianState::covariance() const
{
    Eigen::Matrix2d s;
    s << sxx_, sxp_, sxp_, spp_;
    return s;
}

double GaussianState::tomogram_variance(double mu, double nu) const
{
    return mu * mu * sxx_ + 2.0 * mu * nu * sxp_ + nu * nu * spp_;
}

SampledWavefunction gaussian_wavefunction(const GaussianState& state, const Grid1D& grid, PhaseSpacePoint center)
{
    if (std::abs(grid.hbar() - state.hbar()) > 1e-15 * state.hbar())
        throw ConfigError("gaussian_wavefunction: grid and state disagree on hbar");
    const double sxx = state.sigma_xx();
    const double hbar = state.hbar();
    const double amp = std::pow(2.0 * kPi * sxx, -0.25);
    const double chirp = state.sigma_xp() / (2.0 * hbar * sxx);
    return SampledWavefunction::from_function(grid, [&](double x) {
        const double y = x - center.x;
        return amp * std::exp(-y * y / (4.0 * sxx)) * std::polar(1.0, chirp * y * y + center.p * x / hbar);
    });
}

bool grid_covers(const GaussianState& state, const Grid1D& grid, PhaseSpacePoint center)
{
    const double reach = 8.0 * std::sqrt(state.sigma_xx());
    return grid.x_min() <= center.x - reach && grid.x(grid.size() - 1) >= center.x + reach;
}

double gaussian_tomogram_density(const GaussianState& state, double mu, double nu, double X, PhaseSpacePoint center)
{
    RotationParams::make(mu, nu);
    return normal_density(X - mu * center.x - nu * center.p, state.tomogram_variance(mu, nu));
}

Tomogram gaussian_tomogram(const GaussianState& state, double mu, double nu, const Axis& x_axis, PhaseSpacePoint center)
{
    const auto params = RotationParams::make(mu, nu);
    std::vector<double> r(x_axis.size);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = gaussian_tomogram_density(state, mu, nu, x_axis[i], center);
    return Tomogram(params, x_axis, std::move(r), state.hbar(), RadonRoute::metaplectic);
}

double gaussian_wigner_value(const GaussianState& state, double x, double p, PhaseSpacePoint center)
{
    const double dx = x - center.x;
    const double dp = p - center.p;
    const double det = state.sigma_xx() * state.sigma_pp() - state.sigma_xp() * state.sigma_xp();
    const double form = (state.sigma_pp() * dx * dx - 2.0 * state.sigma_xp() * dx * dp + state.sigma_xx() * dp * dp) / det;
    return std::exp(-0.5 * form) / (2.0 * kPi * std::sqrt(det));
}

WignerMap gaussian_wigner(const GaussianState& state, const Grid1D& x_grid, const Axis& p_axis, PhaseSpacePoint center)
{
    std::vector<double> v(x_grid.size() * p_axis.size);
    for (std::size_t i = 0; i < x_grid.size(); ++i)
        for (std::size_t k = 0; k < p_axis.size; ++k)
            v[i * p_axis.size + k] = gaussian_wigner_value(state, x_grid.x(i), p_axis[k], center);
    return WignerMap(x_grid, p_axis, std::move(v));
}

cplx chirped_gaussian_fourier(double a, double b, double p, double hbar)
{
    const cplx z(a, b);
    return std::exp(-p * p / (4.0 * hbar * z)) / std::sqrt(2.0 * z);
}

ChirpCoefficients chirp_coefficients(const GaussianState& state, double mu, double nu)
{
    if (nu == 0.0) throw DomainError("chirp_coefficients: nu must be nonzero");
    return {state.hbar() / (4.0 * state.sigma_xx()), mu / (2.0 * nu) + state.sigma_xp() / (2.0 * state.sigma_xx())};
}

double tomogram_density_from_chirp(const GaussianState& state, double mu, double nu, double X)
{
    const auto ab = chirp_coefficients(state, mu, nu);
    const double modulus = std::sqrt(ab.a * ab.a + ab.b * ab.b);
    const double y = X / nu;
    return std::exp(-ab.ratio() * y * y / (2.0 * state.hbar()))
           / (std::sqrt(2.0 * kPi * state.sigma_xx()) * 2.0 * std::abs(nu) * modulus);
}

double ellipse_form(const GaussianState& state, double x, double p)
{
    const double det = state.sigma_xx() * state.sigma_pp() - state.sigma_xp() * state.sigma_xp();
    return 0.5 * (state.sigma_pp() * x * x - 2.0 * state.sigma_xp() * x * p + state.sigma_xx() * p * p) / det;
}

EllipseChord ellipse_chord(const GaussianState& state, double mu, double nu)
{
    RotationParams::make(mu, nu);
    EllipseChord chord{mu, nu, ChordVariable::x, 0.0, 0.0};
    if (nu != 0.0) {
        const double r = mu / nu;
        chord.coefficient = state.sigma_pp() + 2.0 * r * state.sigma_xp() + r * r * state.sigma_xx();
    } else {
        // x = 0: the p axis, parametrized by p.
        chord.variable = ChordVariable::p;
        chord.coefficient = state.sigma_xx();
    }
    if (!(chord.coefficient > 0.0)) throw InternalError("ellipse_chord: non-positive chord coefficient");
    chord.half_width = state.hbar() / std::sqrt(2.0 * chord.coefficient);
    return chord;
}

bool chord_matches_tomogram_variance(const GaussianState& state, double mu, double nu, double tol)
{
    if (nu == 0.0) throw DomainError("chord/variance link needs nu != 0");
    const double coefficient = ellipse_chord(state, mu, nu).coefficient;
    const double from_variance = state.tomogram_variance(mu, nu) / (nu * nu);
    return std::abs(coefficient - from_variance) <= tol * std::max(1.0, std::abs(coefficient));
}

double gaussian_variance_estimate(const Tomogram& t)
{
    constexpr double k = 6.0;
    // E[Z^2; |Z| <= k] for a standard normal Z.
    const double tail = k * std::exp(-0.5 * k * k) / std::sqrt(2.0 * kPi) + 0.5 * std::erfc(k / std::sqrt(2.0));
    const double kept = 1.0 - 2.0 * tail;
    return t.variance(k) / kept;
}

PauliResult pauli_reconstruct(const Tomogram& t_x, const Tomogram& t_p, const Tomogram& t_extra,
                              const PauliOptions& options)
{
    const auto& px = t_x.params();
    const auto& pp = t_p.params();
    const auto& pe = t_extra.params();
    if (px.nu != 0.0 || px.mu == 0.0) throw DomainError("pauli: first tomogram must be at (mu, 0)");
    if (pp.mu != 0.0 || pp.nu == 0.0) throw DomainError("pauli: second tomogram must be at (0, nu)");
    if (pe.mu * pe.nu == 0.0) throw DomainError("pauli: extra tomogram needs mu nu != 0");
    if (t_x.hbar() != t_p.hbar() || t_x.hbar() != t_extra.hbar())
        throw DomainError("pauli: tomograms disagree on hbar");
    const double hbar = t_x.hbar();

    const double sxx = gaussian_variance_estimate(t_x) / (px.mu * px.mu);
    const double spp = gaussian_variance_estimate(t_p) / (pp.nu * pp.nu);
    const double bound = 0.25 * hbar * hbar;
    const double gap = sxx * spp - bound;
    if (gap < -options.saturation_tol * bound) {
        std::ostringstream msg;
        msg << "pauli: sxx spp = " << sxx * spp << " below hbar^2/4; not a pure Gaussian";
        throw ModelMismatch(msg.str());
    }
    const double magnitude = std::sqrt(std::max(gap, 0.0));

    const double v = gaussian_variance_estimate(t_extra);
    const double base = pe.mu * pe.mu * sxx + pe.nu * pe.nu * spp;
    const double cross = 2.0 * pe.mu * pe.nu * magnitude;
    const double plus = base + cross;
    const double minus = base - cross;
    const double r_plus = std::abs(v - plus) / v;
    const double r_minus = std::abs(v - minus) / v;

    const bool moot = std::abs(plus - minus) <= options.ambiguity_tol * v;
    const bool choose_plus = r_plus <= r_minus;
    const double chosen = choose_plus ? r_plus : r_minus;
    const double rejected = choose_plus ? r_minus : r_plus;
    if (chosen > options.fit_tol) {
        std::ostringstream msg;
        msg << "pauli: extra tomogram variance " << v << " fits neither sign (" << plus << ", " << minus << ")";
        throw ModelMismatch(msg.str());
    }
    if (moot && magnitude > std::sqrt(options.ambiguity_tol) * std::sqrt(bound))
        throw AmbiguousError("pauli: both covariance signs fit the extra tomogram");

    const double sxp = moot ? 0.0 : (choose_plus ? magnitude : -magnitude);
    return PauliResult{GaussianState::pure(sxx, sxp, hbar), spp, v, plus, minus, chosen, rejected - chosen, moot};
}

}  // namespace symtomo
