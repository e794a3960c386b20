#include "symtomo/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "symtomo/error.hpp"

namespace symtomo {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

Grid1D::Grid1D(double x_min, double x_max, std::size_t n, double hbar)
    : x_min_(x_min), x_max_(x_max), n_(n), hbar_(hbar), dx_(0.0)
{
    if (!(std::isfinite(x_min) && std::isfinite(x_max)) || !(x_max > x_min))
        throw ConfigError("grid: x_max must exceed x_min");
    if (n < 8 || !is_pow2(n))
        throw ConfigError("grid: n_points must be a power of two >= 8, got " + std::to_string(n));
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        throw ConfigError("grid: hbar must be positive");
    dx_ = (x_max - x_min) / static_cast<double>(n);
}

double Grid1D::dp() const
{
    return 2.0 * std::numbers::pi * hbar_ / (static_cast<double>(n_) * dx_);
}

Axis Grid1D::momentum_axis() const
{
    const double step = dp();
    return {-static_cast<double>(n_ / 2) * step, step, n_};
}

Grid1D make_grid(double x_min, double x_max, std::size_t n_points, double hbar)
{
    return Grid1D(x_min, x_max, n_points, hbar);
}

SampledWavefunction::SampledWavefunction(Grid1D grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values))
{
    if (values_.size() != grid_.size())
        throw ConfigError("wavefunction: value count does not match grid size");
}

SampledWavefunction SampledWavefunction::from_function(const Grid1D& grid,
                                                       const std::function<cplx(double)>& f)
{
    std::vector<cplx> v(grid.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = f(grid.x(j));
    return {grid, std::move(v)};
}

double SampledWavefunction::norm_squared() const
{
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s * grid_.dx();
}

double SampledWavefunction::norm() const { return std::sqrt(norm_squared()); }

SampledWavefunction SampledWavefunction::normalized() const
{
    const double n = norm();
    if (!(n > 0.0)) throw DomainError("cannot normalize the zero state");
    std::vector<cplx> v(values_);
    for (auto& x : v) x /= n;
    return {grid_, std::move(v)};
}

bool SampledWavefunction::edge_decayed(double rel_tol) const
{
    double peak = 0.0;
    for (const auto& v : values_) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return true;
    const double edge = std::max(std::abs(values_.front()), std::abs(values_.back()));
    return edge <= rel_tol * peak;
}

cplx inner_product(const SampledWavefunction& a, const SampledWavefunction& b)
{
    if (!(a.grid() == b.grid())) throw DomainError("inner_product: grids differ");
    cplx s{};
    for (std::size_t j = 0; j < a.size(); ++j) s += std::conj(a[j]) * b[j];
    return s * a.grid().dx();
}

std::vector<cplx> fourier_on_lattice(const SampledWavefunction& psi, const Axis& out,
                                     FourierDirection direction)
{
    const Grid1D& g = psi.grid();
    const double sign = direction == FourierDirection::forward ? 1.0 : -1.0;
    const ChirpZ czt(g.size(), g.x_min(), g.dx(), out.size, out.start, out.step,
                     sign / g.hbar());
    auto result = czt(psi.values());
    const double factor = g.dx() / std::sqrt(2.0 * std::numbers::pi * g.hbar());
    for (auto& v : result) v *= factor;
    return result;
}

SampledWavefunction hbar_fourier(const SampledWavefunction& psi, FourierDirection direction)
{
    return {psi.grid(), fourier_on_lattice(psi, psi.grid().position_axis(), direction)};
}

SampledWavefunction chirp_multiply(const SampledWavefunction& psi, double c)
{
    const Grid1D& g = psi.grid();
    std::vector<cplx> v(psi.values().begin(), psi.values().end());
    if (c == 0.0) return {g, std::move(v)};
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double x = g.x(j);
        v[j] *= std::polar(1.0, c * x * x / (2.0 * g.hbar()));
    }
    return {g, std::move(v)};
}

std::vector<cplx> bandlimited_sample(const SampledWavefunction& psi, const Axis& points)
{
    const Grid1D& g = psi.grid();
    const std::size_t n = g.size();
    const double period = static_cast<double>(n) * g.dx();

    std::vector<cplx> spectrum(psi.values().begin(), psi.values().end());
    fft::forward(spectrum);

    // Coefficients for frequencies f = -n/2 .. n/2; the Nyquist term is split.
    std::vector<cplx> coeff(n + 1);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) {
        const long f = static_cast<long>(i) - static_cast<long>(n / 2);
        const std::size_t idx = static_cast<std::size_t>((f % static_cast<long>(n) + static_cast<long>(n))
                                                         % static_cast<long>(n));
        coeff[i] = spectrum[idx] * inv_n;
    }
    coeff.front() *= 0.5;
    coeff.back() *= 0.5;

    const ChirpZ czt(n + 1, -static_cast<double>(n / 2), 1.0, points.size,
                     points.start - g.x_min(), points.step, -2.0 * std::numbers::pi / period);
    auto result = czt(coeff);

    const double eps = 1e-9 * g.dx();
    const double lo = g.x_min() - eps;
    const double hi = g.x(n - 1) + eps;
    for (std::size_t m = 0; m < points.size; ++m) {
        const double y = points[m];
        if (y < lo || y > hi) result[m] = 0.0;
    }
    return result;
}

SampledWavefunction scale(const SampledWavefunction& psi, double s)
{
    if (s == 0.0 || !std::isfinite(s)) throw DomainError("scale: factor must be nonzero");
    const Grid1D& g = psi.grid();
    if (s == 1.0) return psi;
    auto v = bandlimited_sample(psi, {s * g.x_min(), s * g.dx(), g.size()});
    const double amp = std::sqrt(std::abs(s));
    for (auto& x : v) x *= amp;
    return {g, std::move(v)};
}

SampledWavefunction upsample(const SampledWavefunction& psi, std::size_t factor)
{
    if (factor == 0) throw DomainError("upsample: factor must be positive");
    if (factor == 1) return psi;
    const Grid1D& g = psi.grid();
    Grid1D fine(g.x_min(), g.x_max(), g.size() * factor, g.hbar());
    return {fine, bandlimited_sample(psi, fine.position_axis())};
}

}  // namespace symtomo
