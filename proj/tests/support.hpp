// Shared helpers and independent oracles for the test binaries.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "symtomo/gaussian.hpp"
#include "symtomo/grid.hpp"
#include "symtomo/metaplectic.hpp"

namespace testing {

using symtomo::cplx;
using symtomo::Grid1D;
using symtomo::Matrix;
using symtomo::SampledWavefunction;

constexpr double pi = std::numbers::pi;

inline Grid1D standard_grid(double hbar = 1.0)
{
    const double half = 16.0 * std::sqrt(hbar);
    return Grid1D(-half, half, 1024, hbar);
}

template <class A, class B>
double linf(const A& a, const B& b)
{
    double m = 0.0;
    for (std::size_t i = 0; i < std::size(a); ++i) m = std::max(m, static_cast<double>(std::abs(a[i] - b[i])));
    return m;
}

inline std::vector<double> abs2(std::span<const cplx> v)
{
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::norm(v[i]);
    return out;
}

/// Ground state (pi hbar)^{-1/4} exp(-x^2 / 2 hbar).
inline cplx ground(double x, double hbar = 1.0)
{
    return std::pow(pi * hbar, -0.25) * std::exp(-x * x / (2.0 * hbar));
}

/// Chirped Gaussian written out by hand, optionally displaced.
inline cplx chirped_gaussian(double x, double sxx, double sxp, double hbar, double x0 = 0.0, double p0 = 0.0)
{
    const double y = x - x0;
    return std::pow(2.0 * pi * sxx, -0.25) * std::exp(-y * y / (4.0 * sxx)) *
           std::polar(1.0, sxp * y * y / (2.0 * hbar * sxx) + p0 * x / hbar);
}

/// O(N^2) Riemann sum of (2 pi hbar)^{-1/2} int exp(-i x p / hbar) psi(x) dx at each p of `ps`.
inline std::vector<cplx> direct_fourier(const SampledWavefunction& psi, std::span<const double> ps)
{
    const Grid1D& g = psi.grid();
    const double h = g.hbar();
    std::vector<cplx> out(ps.size());
    for (std::size_t m = 0; m < ps.size(); ++m) {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) acc += psi[k] * std::polar(1.0, -g.x(k) * ps[m] / h);
        out[m] = acc * g.dx() / std::sqrt(2.0 * pi * h);
    }
    return out;
}

/// Direct quadrature of the quadratic Fourier integral for a free 2x2 S = [[a, b], [c, d]]:
/// i^{m - 1/2} |b|^{-1/2} (2 pi hbar)^{-1/2} int exp(i/hbar (d x^2 / 2b - x x' / b + a x'^2 / 2b)) psi(x') dx'.
inline std::vector<cplx> direct_quadratic_fourier(const SampledWavefunction& psi, const Matrix& s, int maslov,
                                                  std::span<const double> xs)
{
    const double a = s(0, 0), b = s(0, 1), d = s(1, 1);
    const Grid1D& g = psi.grid();
    const double h = g.hbar();
    const cplx phase = std::pow(cplx(0.0, 1.0), static_cast<double>(maslov) - 0.5);
    std::vector<cplx> out(xs.size());
    for (std::size_t m = 0; m < xs.size(); ++m) {
        const double x = xs[m];
        cplx acc = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double xp = g.x(k);
            acc += psi[k] * std::polar(1.0, (d * x * x / (2.0 * b) - x * xp / b + a * xp * xp / (2.0 * b)) / h);
        }
        out[m] = phase * acc * g.dx() / std::sqrt(2.0 * pi * h * std::abs(b));
    }
    return out;
}

inline Matrix J(std::size_t n)
{
    Matrix j = Matrix::Zero(2 * n, 2 * n);
    j.topRightCorner(n, n) = Matrix::Identity(n, n);
    j.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    return j;
}

/// S J S^T = J and S^T J S = J, judged directly.
inline bool symplectic_oracle(const Matrix& s, double tol = 1e-9)
{
    const auto n = static_cast<std::size_t>(s.rows() / 2);
    const double scale = std::max(1.0, s.cwiseAbs().maxCoeff());
    const double r1 = (s * J(n) * s.transpose() - J(n)).cwiseAbs().maxCoeff();
    const double r2 = (s.transpose() * J(n) * s - J(n)).cwiseAbs().maxCoeff();
    return std::max(r1, r2) <= tol * scale * scale;
}

struct Rng {
    std::mt19937_64 engine;
    explicit Rng(std::uint64_t seed) : engine(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(engine); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(engine); }

    /// Pure Gaussian that fits well inside a +-16 sqrt(hbar) grid.
    symtomo::GaussianState state(double hbar = 1.0)
    {
        return symtomo::GaussianState::pure(uniform(0.5, 2.0) * hbar, uniform(-0.8, 0.8) * hbar, hbar);
    }

    /// (mu, nu) with lambda in [lo, hi] and |nu| / lambda >= sin(0.1).
    std::pair<double, double> direction(double lo = 0.5, double hi = 1.5)
    {
        const double lambda = uniform(lo, hi);
        double theta = uniform(0.1, pi - 0.1);
        if (uniform(0.0, 1.0) < 0.5) theta = -theta;
        return {lambda * std::cos(theta), lambda * std::sin(theta)};
    }

    Matrix symmetric(std::size_t n, double scale)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j) m(i, j) = m(j, i) = uniform(-scale, scale);
        return m;
    }

    /// Shear * block-diagonal * shear, symplectic by construction.
    Matrix symplectic(std::size_t n)
    {
        Matrix upper = Matrix::Identity(2 * n, 2 * n);
        upper.topRightCorner(n, n) = symmetric(n, 1.0);
        Matrix lower = Matrix::Identity(2 * n, 2 * n);
        lower.bottomLeftCorner(n, n) = symmetric(n, 1.0);
        Matrix g = Matrix::Identity(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) += uniform(-0.3, 0.3);
        Matrix diag = Matrix::Zero(2 * n, 2 * n);
        diag.topLeftCorner(n, n) = g;
        diag.bottomRightCorner(n, n) = g.inverse().transpose();
        return upper * diag * lower;
    }

    /// R(t1) diag(r, 1/r) R(t2) with |B| >= 0.3: free and mild enough for a +-16 grid.
    Matrix free_2x2()
    {
        for (;;) {
            auto rot = [](double t) {
                Matrix r(2, 2);
                r << std::cos(t), std::sin(t), -std::sin(t), std::cos(t);
                return r;
            };
            const double r = uniform(0.7, 1.4);
            Matrix d = Matrix::Zero(2, 2);
            d(0, 0) = r;
            d(1, 1) = 1.0 / r;
            Matrix s = rot(uniform(-pi, pi)) * d * rot(uniform(-pi, pi));
            if (std::abs(s(0, 1)) >= 0.3) return s;
        }
    }
};

}  // namespace testing
