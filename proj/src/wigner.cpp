#include "symtomo/wigner.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "symtomo/error.hpp"
#include "symtomo/parallel.hpp"

namespace symtomo {

WignerMap::WignerMap(Grid1D x_grid, Axis p_axis, std::vector<double> values)
    : x_grid_(x_grid), p_axis_(p_axis), values_(std::move(values))
{
    if (p_axis_.size < 2 || !(p_axis_.step > 0.0))
        throw ConfigError("wigner map: momentum axis needs >= 2 increasing points");
    if (values_.size() != x_grid_.size() * p_axis_.size)
        throw ConfigError("wigner map: value count does not match the axes");
}

double WignerMap::total_mass() const
{
    double s = 0.0;
    for (double v : values_) s += v;
    return s * x_grid_.dx() * p_axis_.step;
}

namespace {

// Lagrange weights on nodes -2..3 at offset t in [0, 1).
std::array<double, 6> lagrange6_weights(double t)
{
    std::array<double, 6> w{};
    for (int a = 0; a < 6; ++a) {
        const double xa = a - 2;
        double num = 1.0;
        double den = 1.0;
        for (int b = 0; b < 6; ++b) {
            if (b == a) continue;
            const double xb = b - 2;
            num *= t - xb;
            den *= xa - xb;
        }
        w[a] = num / den;
    }
    return w;
}

}  // namespace

double WignerMap::sample(double x, double p, Interpolation method) const
{
    const double u = (x - x_grid_.x_min()) / x_grid_.dx();
    const double v = (p - p_axis_.start) / p_axis_.step;
    const double nx_last = static_cast<double>(nx() - 1);
    const double np_last = static_cast<double>(np() - 1);
    if (!(u >= 0.0 && u <= nx_last && v >= 0.0 && v <= np_last)) return 0.0;

    const long i0 = std::min(static_cast<long>(u), static_cast<long>(nx()) - 2);
    const long k0 = std::min(static_cast<long>(v), static_cast<long>(np()) - 2);
    const double tu = u - static_cast<double>(i0);
    const double tv = v - static_cast<double>(k0);

    if (method == Interpolation::bilinear) {
        const auto i = static_cast<std::size_t>(i0);
        const auto k = static_cast<std::size_t>(k0);
        return (1 - tu) * (1 - tv) * (*this)(i, k) + tu * (1 - tv) * (*this)(i + 1, k)
               + (1 - tu) * tv * (*this)(i, k + 1) + tu * tv * (*this)(i + 1, k + 1);
    }

    const auto wu = lagrange6_weights(tu);
    const auto wv = lagrange6_weights(tv);
    double acc = 0.0;
    for (int a = 0; a < 6; ++a) {
        const long i = i0 + a - 2;
        if (i < 0 || i >= static_cast<long>(nx())) continue;
        double row = 0.0;
        for (int b = 0; b < 6; ++b) {
            const long k = k0 + b - 2;
            if (k < 0 || k >= static_cast<long>(np())) continue;
            row += wv[b] * (*this)(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
        }
        acc += wu[a] * row;
    }
    return acc;
}

double WignerMap::boundary_level() const
{
    double peak = 0.0;
    for (double v : values_) peak = std::max(peak, std::abs(v));
    if (peak == 0.0) return 0.0;
    double edge = 0.0;
    for (std::size_t k = 0; k < np(); ++k)
        edge = std::max({edge, std::abs((*this)(0, k)), std::abs((*this)(nx() - 1, k))});
    for (std::size_t i = 0; i < nx(); ++i)
        edge = std::max({edge, std::abs((*this)(i, 0)), std::abs((*this)(i, np() - 1))});
    return edge / peak;
}

WignerMap wigner_transform(const SampledWavefunction& psi, const Axis& p_axis)
{
    const Grid1D& g = psi.grid();
    const std::size_t n = g.size();
    const long half = static_cast<long>(n / 2);
    const double hbar = g.hbar();

    // Lag lattice u_k = (k - n/2) dx, coupling exp(-2 i p u / hbar).
    const ChirpZ czt(n, -static_cast<double>(half) * g.dx(), g.dx(), p_axis.size, p_axis.start,
                     p_axis.step, 2.0 / hbar);
    const double factor = g.dx() / (std::numbers::pi * hbar);

    std::vector<double> values(n * p_axis.size);
    std::vector<double> row_imag(n, 0.0);
    const auto psi_v = psi.values();

    parallel_for(n, [&](std::size_t j) {
        std::vector<cplx> corr(n, cplx{});
        const long jj = static_cast<long>(j);
        const long reach = std::min(jj, static_cast<long>(n) - 1 - jj);
        for (long k = -std::min(reach, half); k <= std::min(reach, half - 1); ++k)
            corr[static_cast<std::size_t>(k + half)] =
                psi_v[static_cast<std::size_t>(jj + k)] * std::conj(psi_v[static_cast<std::size_t>(jj - k)]);
        const auto row = czt(corr);
        double imag = 0.0;
        for (std::size_t m = 0; m < p_axis.size; ++m) {
            values[j * p_axis.size + m] = factor * row[m].real();
            imag = std::max(imag, std::abs(factor * row[m].imag()));
        }
        row_imag[j] = imag;
    });

    WignerMap w(g, p_axis, std::move(values));
    w.max_imag_residue = *std::max_element(row_imag.begin(), row_imag.end());
    w.accuracy_warning = !psi.edge_decayed();
    return w;
}

WignerMap wigner_transform(const SampledWavefunction& psi)
{
    return wigner_transform(psi, psi.grid().position_axis());
}

Marginals marginals(const WignerMap& w)
{
    Marginals m{std::vector<double>(w.nx(), 0.0), std::vector<double>(w.np(), 0.0)};
    const double dx = w.x_grid().dx();
    const double dp = w.p_axis().step;
    for (std::size_t i = 0; i < w.nx(); ++i) {
        double row = 0.0;
        for (std::size_t k = 0; k < w.np(); ++k) {
            row += w(i, k);
            m.momentum[k] += w(i, k);
        }
        m.position[i] = row * dp;
    }
    for (auto& v : m.momentum) v *= dx;
    return m;
}

}  // namespace symtomo
