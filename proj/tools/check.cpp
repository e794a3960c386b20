#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>

#include "cli.hpp"

#include "symtomo/error.hpp"
#include "symtomo/gaussian.hpp"
#include "symtomo/lagrangian.hpp"
#include "symtomo/metaplectic.hpp"
#include "symtomo/radon.hpp"
#include "symtomo/wigner.hpp"

namespace symtomo::cli {

namespace {

constexpr double pi = std::numbers::pi;

struct Context {
    Grid1D grid;
    std::mt19937_64 rng;

    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

    /// Gaussian whose covariance fits comfortably inside the grid.
    GaussianState random_state()
    {
        const double h = grid.hbar();
        return GaussianState::pure(uniform(0.5, 2.0) * h, uniform(-0.8, 0.8) * h, h);
    }

    /// Direction with lambda in [0.5, 1.5] and nu bounded away from 0.
    std::pair<double, double> random_direction()
    {
        const double lambda = uniform(0.5, 1.5);
        double theta = uniform(0.1, pi - 0.1);
        if (uniform(0.0, 1.0) < 0.5) theta = -theta;
        return {lambda * std::cos(theta), lambda * std::sin(theta)};
    }
};

template <class A, class B>
double linf(const A& a, const B& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

std::vector<double> abs2(std::span<const cplx> v)
{
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::norm(v[i]);
    return out;
}

/// Plain O(N^2) Riemann sum of the forward hbar-Fourier kernel on the state's own axis.
std::vector<cplx> direct_fourier(const SampledWavefunction& psi)
{
    const Grid1D& g = psi.grid();
    const double h = g.hbar();
    const double pref = g.dx() / std::sqrt(2.0 * pi * h);
    std::vector<cplx> out(g.size());
    for (std::size_t m = 0; m < g.size(); ++m) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) acc += psi[k] * std::polar(1.0, -g.x(k) * g.x(m) / h);
        out[m] = pref * acc;
    }
    return out;
}

Matrix random_symmetric(Context& ctx, std::size_t n, double scale)
{
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = ctx.uniform(-scale, scale);
    return m;
}

/// Product of shears and a block-diagonal GL factor: symplectic by construction.
Matrix random_symplectic(Context& ctx, std::size_t n)
{
    const auto I = Matrix::Identity(n, n);
    Matrix upper = Matrix::Identity(2 * n, 2 * n);
    upper.topRightCorner(n, n) = random_symmetric(ctx, n, 1.0);
    Matrix lower = Matrix::Identity(2 * n, 2 * n);
    lower.bottomLeftCorner(n, n) = random_symmetric(ctx, n, 1.0);
    Matrix m = I;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) += ctx.uniform(-0.3, 0.3);
    Matrix diag = Matrix::Zero(2 * n, 2 * n);
    diag.topLeftCorner(n, n) = m;
    diag.bottomRightCorner(n, n) = m.inverse().transpose();
    return upper * diag * lower;
}

/// Oracle for a top frame: the top-left block of S J S^T is A B^T - B A^T, and
/// the rows are independent iff det([A B][A B]^T) is clearly nonzero.
bool frame_oracle(const Matrix& s)
{
    const auto n = s.rows() / 2;
    const Matrix sj = s * standard_symplectic(static_cast<std::size_t>(n)) * s.transpose();
    const Matrix top = s.topRows(n);
    const double scale = std::max(1.0, top.cwiseAbs().maxCoeff());
    const bool isotropic = sj.topLeftCorner(n, n).cwiseAbs().maxCoeff() <= 1e-9 * scale * scale;
    const double gram = (top * top.transpose()).determinant();
    return isotropic && std::abs(gram) > 1e-8 * std::pow(scale, 4.0 * static_cast<double>(n));
}

}  // namespace

std::vector<CheckRow> run_checks(const CheckConfig& config)
{
    Context ctx{Grid1D(config.x_min, config.x_max, config.n_points, config.hbar), std::mt19937_64(config.seed)};
    const Grid1D& g = ctx.grid;
    const double h = g.hbar();
    std::vector<CheckRow> rows;
    auto add = [&](const char* name, double value, double tol) {
        rows.push_back({name, value, tol, std::isfinite(value) && value <= tol});
    };

    const GaussianState ground = GaussianState::pure(h / 2.0, 0.0, h);
    const SampledWavefunction phi0 = gaussian_wavefunction(ground, g);
    const GaussianState st = ctx.random_state();
    const PhaseSpacePoint shift{ctx.uniform(-1.0, 1.0), ctx.uniform(-1.0, 1.0)};
    const SampledWavefunction psi = gaussian_wavefunction(st, g, shift);
    const SampledWavefunction psi_hat = hbar_fourier(psi);

    add("fourier_gaussian_fixed_point", linf(hbar_fourier(phi0).values(), phi0.values()), 1e-10);
    {
        const SampledWavefunction back = hbar_fourier(psi_hat, FourierDirection::inverse);
        double l2 = 0.0;
        for (std::size_t j = 0; j < g.size(); ++j) l2 += std::norm(back[j] - psi[j]);
        add("fourier_round_trip", std::sqrt(l2 * g.dx()), 1e-10);
    }
    {
        const auto chirped = SampledWavefunction::from_function(
            g, [&](double x) { return std::exp(-cplx(0.25, 1.0 / 3.0) * x * x / h); });
        add("fourier_direct_quadrature", linf(hbar_fourier(chirped).values(), direct_fourier(chirped)), 1e-8);
    }
    add("scale_unitarity", std::abs(scale(psi, ctx.uniform(0.5, 2.0)).norm() - psi.norm()), 1e-8);

    const WignerMap w = wigner_transform(psi);
    add("wigner_reality", w.max_imag_residue, 1e-10);
    {
        const Marginals m = marginals(w);
        add("wigner_marginals",
            std::max(linf(m.position, abs2(psi.values())), linf(m.momentum, abs2(psi_hat.values()))), 1e-7);
    }
    add("wigner_mass", std::abs(w.total_mass() - psi.norm_squared()), 1e-8);
    {
        const auto [mu, nu] = ctx.random_direction();
        const auto params = RotationParams::make(mu, nu);
        const WignerMap wr = wigner_transform(metaplectic_rotation(psi, params));
        const double c = mu / params.lambda, s = nu / params.lambda;
        double err = 0.0;
        for (std::size_t i = 0; i < wr.nx(); ++i)
            for (std::size_t k = 0; k < wr.np(); ++k) {
                const double x = g.x(i), p = wr.p_axis()[k];
                err = std::max(err, std::abs(wr(i, k) - w.sample(c * x - s * p, s * x + c * p, Interpolation::lagrange6)));
            }
        add("symplectic_covariance", err, 1e-6);
    }
    {
        double chirp_err = 0.0, line_err = 0.0, mass_err = 0.0;
        for (int r = 0; r < 3; ++r) {
            const auto [mu, nu] = ctx.random_direction();
            const Tomogram tm = radon_metaplectic(psi, mu, nu);
            chirp_err = std::max(chirp_err, linf(tm.values(), radon_chirp_fft(psi, mu, nu).values()));
            line_err = std::max(line_err, linf(tm.values(), radon_line_integral(w, mu, nu, g.position_axis()).values()));
            mass_err = std::max(mass_err, std::abs(tm.mass() - 1.0));
        }
        add("route_metaplectic_vs_chirp", chirp_err, 1e-7);
        add("route_metaplectic_vs_line", line_err, 5e-4);
        add("tomogram_normalization", mass_err, 1e-7);
    }
    {
        const double ex = linf(radon_metaplectic(psi, 1.0, 0.0).values(), abs2(psi.values()));
        const double ep = linf(radon_metaplectic(psi, 0.0, 1.0).values(), abs2(psi_hat.values()));
        add("tomogram_axis_marginals", std::max(ex, ep), 1e-7);
    }
    {
        const auto [mu, nu] = ctx.random_direction();
        const Tomogram base = radon_metaplectic(psi, mu, nu);
        const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(g.size() / 2);
        double err = 0.0;
        for (double s : {0.5, 2.0, 3.0}) {
            const Tomogram scaled = radon_metaplectic(psi, s * mu, s * nu);
            for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(g.size()); ++j) {
                const double target = s * static_cast<double>(j - half);
                if (target != std::round(target)) continue;
                const std::ptrdiff_t i = half + static_cast<std::ptrdiff_t>(target);
                if (i < 0 || i >= static_cast<std::ptrdiff_t>(g.size())) continue;
                err = std::max(err, std::abs(scaled[static_cast<std::size_t>(i)] - base[static_cast<std::size_t>(j)] / s));
            }
        }
        add("tomogram_homogeneity", err, 1e-7);
    }
    {
        const GaussianState fs = ctx.random_state();
        const SampledWavefunction f = gaussian_wavefunction(fs, g);
        InverseRadonOptions options;
        if (config.inject_fbp_error) options.constant_scale = 2.0 * pi * h;
        const WignerMap rec = inverse_radon(make_tomogram_set(f, config.fbp_angles, RadonRoute::metaplectic), options);
        double err = 0.0;
        for (std::size_t i = 0; i < rec.nx(); ++i)
            for (std::size_t k = 0; k < rec.np(); ++k)
                err = std::max(err, std::abs(rec(i, k) - gaussian_wigner_value(fs, g.x(i), rec.p_axis()[k])));
        add("fbp_round_trip", err, 1e-3);
    }
    {
        double err = 0.0;
        for (int r = 0; r < 3; ++r) {
            const GaussianState s = ctx.random_state();
            const auto [mu, nu] = ctx.random_direction();
            const double v = gaussian_variance_estimate(radon_chirp_fft(gaussian_wavefunction(s, g), mu, nu));
            const double exact = s.tomogram_variance(mu, nu);
            err = std::max(err, std::abs(v - exact) / exact);
        }
        add("gaussian_variance_closed_form", err, 1e-6);
    }
    {
        double err = 0.0, twin = 0.0;
        for (int r = 0; r < 3; ++r) {
            const GaussianState s = ctx.random_state();
            const GaussianState s_twin(s.sigma_xx(), s.sigma_pp(), -s.sigma_xp(), h);
            const auto [mu, nu] = ctx.random_direction();
            const SampledWavefunction f = gaussian_wavefunction(s, g);
            const SampledWavefunction f_twin = gaussian_wavefunction(s_twin, g);
            const Tomogram tx = radon_metaplectic(f, 1.0, 0.0);
            const Tomogram tp = radon_metaplectic(f, 0.0, 1.0);
            const PauliResult res = pauli_reconstruct(tx, tp, radon_chirp_fft(f, mu, nu));
            err = std::max({err, std::abs(res.state.sigma_xx() - s.sigma_xx()),
                            std::abs(res.state.sigma_pp() - s.sigma_pp()),
                            std::abs(res.state.sigma_xp() - s.sigma_xp())});
            twin = std::max({twin, linf(tx.values(), radon_metaplectic(f_twin, 1.0, 0.0).values()),
                             linf(tp.values(), radon_metaplectic(f_twin, 0.0, 1.0).values())});
        }
        add("pauli_reconstruction", err, 1e-4);
        add("pauli_twin_marginals", twin, 1e-10);
    }
    {
        double err = 0.0;
        for (int r = 0; r < 20; ++r) {
            const GaussianState s = ctx.random_state();
            const auto [mu, nu] = ctx.random_direction();
            const EllipseChord chord = ellipse_chord(s, mu, nu);
            err = std::max(err, std::abs(chord.coefficient - s.tomogram_variance(mu, nu) / (nu * nu)) /
                                    std::max(1.0, chord.coefficient));
        }
        add("chord_variance_link", err, 1e-12);
    }
    {
        double unitarity = 0.0, composition = 0.0;
        for (int r = 0; r < 3; ++r) {
            auto draw = [&] {
                for (;;) {
                    Matrix m = random_symplectic(ctx, 1);
                    if (std::abs(m(0, 1)) >= 0.3 && m.cwiseAbs().maxCoeff() <= 1.6) return SymplecticMatrix(m, 1e-10);
                }
            };
            const SymplecticMatrix s1 = draw();
            const SymplecticMatrix s2 = draw();
            const SymplecticMatrix prod = s1 * s2;
            if (std::abs(prod.B()(0, 0)) < 0.3) continue;
            const SampledWavefunction a = quadratic_fourier(quadratic_fourier(phi0, FreeSymplectic(s2)), FreeSymplectic(s1));
            const SampledWavefunction b = quadratic_fourier(phi0, FreeSymplectic(prod));
            unitarity = std::max(unitarity, std::abs(b.norm() - phi0.norm()));
            composition = std::max(composition, std::abs(std::abs(inner_product(a, b)) - 1.0));
        }
        add("metaplectic_unitarity", unitarity, 1e-8);
        add("metaplectic_composition", composition, 1e-7);
    }
    {
        double disagreements = 0.0;
        for (int r = 0; r < 30; ++r) {
            const std::size_t n = 1 + static_cast<std::size_t>(r % 3);
            Matrix s = random_symplectic(ctx, n);
            if (r % 2 == 1)
                for (Eigen::Index i = 0; i < s.rows(); ++i)
                    for (Eigen::Index j = 0; j < s.cols(); ++j) s(i, j) += ctx.uniform(-0.2, 0.2);
            if (bool(is_lagrangian_frame(top_frame(s))) != frame_oracle(s)) disagreements += 1.0;
        }
        add("lagrangian_frame_oracle", disagreements, 0.0);
    }
    return rows;
}

std::string format_check_table(const std::vector<CheckRow>& rows)
{
    std::string out;
    char line[160];
    std::snprintf(line, sizeof line, "%-32s %-6s %12s %12s\n", "check", "result", "value", "tolerance");
    out += line;
    std::size_t passed = 0;
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%-32s %-6s %12.4e %12.4e\n", r.name.c_str(), r.passed ? "PASS" : "FAIL",
                      r.value, r.tolerance);
        out += line;
        passed += r.passed ? 1 : 0;
    }
    std::snprintf(line, sizeof line, "%zu/%zu checks passed\n", passed, rows.size());
    out += line;
    return out;
}

}  // namespace symtomo::cli
