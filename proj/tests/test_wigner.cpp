#include "doctest.h"
#include "support.hpp"

#include "symtomo/error.hpp"
#include "symtomo/gaussian.hpp"
#include "symtomo/wigner.hpp"

using namespace symtomo;
using namespace testing;

namespace {

double second_moment(const std::vector<double>& density, const Axis& axis)
{
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        m0 += density[i];
        m1 += density[i] * axis[i];
        m2 += density[i] * axis[i] * axis[i];
    }
    const double mean = m1 / m0;
    return m2 / m0 - mean * mean;
}

}  // namespace

TEST_CASE("Wigner map of the ground state")
{
    for (double h : {1.0, 0.5}) {
        const Grid1D g = standard_grid(h);
        const auto phi0 = SampledWavefunction::from_function(g, [h](double x) { return ground(x, h); });
        const WignerMap w = wigner_transform(phi0);
        REQUIRE(w.nx() == 1024);
        REQUIRE(w.p_axis() == g.position_axis());

        double err = 0.0;
        for (std::size_t i = 0; i < w.nx(); ++i)
            for (std::size_t k = 0; k < w.np(); ++k) {
                const double x = g.x(i), p = w.p_axis()[k];
                err = std::max(err, std::abs(w(i, k) - std::exp(-(x * x + p * p) / h) / (pi * h)));
            }
        CHECK(err <= 1e-7);
        CHECK(w.max_imag_residue <= 1e-10);
        CHECK(std::abs(w.total_mass() - 1.0) <= 1e-8);
        CHECK_FALSE(w.accuracy_warning);
    }
}

TEST_CASE("Wigner map of a chirped Gaussian against pointwise quadrature")
{
    const Grid1D g = standard_grid();
    const auto psi = SampledWavefunction::from_function(g, [](double x) { return chirped_gaussian(x, 1.0, 0.3, 1.0); });
    const WignerMap w = wigner_transform(psi);
    const GaussianState st = GaussianState::pure(1.0, 0.3);

    // y-integral of psi(x + y/2) conj(psi(x - y/2)) exp(-i p y) / 2 pi, to 20 digits.
    const struct {
        double x, p, value;
    } frozen[] = {
        {0.0, 0.0, 0.31830988618379067154},
        {0.5, 0.25, 0.27534514766652167297},
        {-1.0, 0.75, 0.021285485172682498653},
        {1.5, -1.0, 0.0015419153742652822429},
        {0.25, 1.25, 0.019502163207456644896},
    };
    for (const auto& row : frozen) {
        const auto i = static_cast<std::size_t>(std::lround((row.x - g.x_min()) / g.dx()));
        const auto k = static_cast<std::size_t>(std::lround((row.p - g.x_min()) / g.dx()));
        CHECK(std::abs(w(i, k) - row.value) <= 1e-6);
        CHECK(std::abs(gaussian_wigner_value(st, row.x, row.p) - row.value) <= 1e-12);
    }
    CHECK(w.max_imag_residue <= 1e-10);
}

TEST_CASE("marginals of the ground state")
{
    const Grid1D g = standard_grid();
    const auto phi0 = SampledWavefunction::from_function(g, [](double x) { return ground(x); });
    const Marginals m = marginals(wigner_transform(phi0));
    std::vector<double> expected(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) expected[j] = std::exp(-g.x(j) * g.x(j)) / std::sqrt(pi);
    CHECK(linf(m.position, expected) <= 1e-7);
    CHECK(linf(m.momentum, expected) <= 1e-7);
}

TEST_CASE("marginals of a chirped Gaussian")
{
    const Grid1D g = standard_grid();
    const auto psi = SampledWavefunction::from_function(g, [](double x) { return chirped_gaussian(x, 1.0, 0.5, 1.0); });
    const Marginals m = marginals(wigner_transform(psi));

    std::vector<double> expected(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) expected[j] = std::exp(-g.x(j) * g.x(j) / 2.0) / std::sqrt(2.0 * pi);
    CHECK(linf(m.position, expected) <= 1e-7);

    // momentum side against |hbar_fourier psi|^2 and its variance (1/4 + 1/4) / 1
    const auto momentum = abs2(hbar_fourier(psi).values());
    CHECK(linf(m.momentum, momentum) <= 1e-7);
    CHECK(std::abs(second_moment(momentum, g.position_axis()) - 0.5) <= 1e-8);
    CHECK(std::abs(second_moment(m.momentum, g.position_axis()) - 0.5) <= 1e-8);
}

TEST_CASE("parity maps W(x, p) to W(-x, -p)")
{
    const Grid1D g = standard_grid();
    const auto psi = SampledWavefunction::from_function(
        g, [](double x) { return chirped_gaussian(x, 0.9, -0.35, 1.0, 1.2, 0.6); });
    std::vector<cplx> mirrored(g.size());
    for (std::size_t j = 1; j < g.size(); ++j) mirrored[j] = psi[g.size() - j];
    mirrored[0] = 0.0;
    const WignerMap w = wigner_transform(psi);
    const WignerMap wm = wigner_transform(SampledWavefunction(g, mirrored));
    double err = 0.0;
    for (std::size_t i = 1; i < g.size(); ++i)
        for (std::size_t k = 1; k < g.size(); ++k) err = std::max(err, std::abs(wm(i, k) - w(g.size() - i, g.size() - k)));
    CHECK(err <= 1e-14);
}

TEST_CASE("edge-decay precondition raises the accuracy flag")
{
    const Grid1D g(-4.0, 4.0, 256);
    const auto wide = SampledWavefunction::from_function(g, [](double x) { return std::exp(-x * x / 8.0); });
    CHECK(wigner_transform(wide).accuracy_warning);
}

TEST_CASE("custom momentum axis and sampling")
{
    const Grid1D g = standard_grid();
    const auto psi = SampledWavefunction::from_function(g, [](double x) { return chirped_gaussian(x, 1.2, 0.2, 1.0); });
    const Axis p{-6.0, 0.05, 240};
    const WignerMap w = wigner_transform(psi, p);
    const GaussianState st = GaussianState::pure(1.2, 0.2);
    REQUIRE(w.np() == 240);
    double err = 0.0;
    for (std::size_t i = 0; i < w.nx(); i += 7)
        for (std::size_t k = 0; k < w.np(); ++k) err = std::max(err, std::abs(w(i, k) - gaussian_wigner_value(st, g.x(i), p[k])));
    CHECK(err <= 1e-7);

    // interpolants reproduce nodes, vanish outside, and the 6-point one is accurate off-node
    CHECK(w.sample(g.x(500), p[100]) == doctest::Approx(w(500, 100)).epsilon(1e-14));
    CHECK(w.sample(g.x(500), p[100], Interpolation::lagrange6) == doctest::Approx(w(500, 100)).epsilon(1e-14));
    CHECK(w.sample(100.0, 0.0) == 0.0);
    CHECK(w.sample(0.0, 7.0, Interpolation::lagrange6) == 0.0);
    CHECK(std::abs(w.sample(0.3217, -0.4123, Interpolation::lagrange6) - gaussian_wigner_value(st, 0.3217, -0.4123)) <= 5e-8);
    CHECK(std::abs(w.sample(0.3217, -0.4123) - gaussian_wigner_value(st, 0.3217, -0.4123)) <= 1e-3);

    CHECK_THROWS_AS(WignerMap(g, Axis{0.0, 1.0, 1}, std::vector<double>(g.size())), ConfigError);
    CHECK_THROWS_AS(WignerMap(g, p, std::vector<double>(3)), ConfigError);
}
