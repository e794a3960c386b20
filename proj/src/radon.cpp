#include "symtomo/radon.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include "symtomo/error.hpp"
#include "symtomo/parallel.hpp"

namespace symtomo {

std::string to_string(RadonRoute route)
{
    switch (route) {
    case RadonRoute::metaplectic: return "metaplectic";
    case RadonRoute::chirp_fft: return "chirp-fft";
    case RadonRoute::line_integral: return "line-integral";
    }
    return "unknown";
}

RadonRoute parse_route(std::string_view name)
{
    if (name == "metaplectic") return RadonRoute::metaplectic;
    if (name == "chirp-fft") return RadonRoute::chirp_fft;
    if (name == "line-integral") return RadonRoute::line_integral;
    throw ConfigError("unknown route '" + std::string(name) + "'");
}

Tomogram::Tomogram(RotationParams params, Axis x_axis, std::vector<double> values, double hbar,
                   RadonRoute route)
    : params_(params), x_axis_(x_axis), values_(std::move(values)), hbar_(hbar), route_(route)
{
    if (values_.size() != x_axis_.size) throw ConfigError("tomogram: value count does not match X axis");
    double lowest = 0.0;
    for (auto& v : values_) {
        lowest = std::min(lowest, v);
        if (v < 0.0) v = 0.0;
    }
    negativity = -lowest;
    accuracy_warning = negativity > 1e-10;
}

double Tomogram::mass() const
{
    double s = 0.0;
    for (double v : values_) s += v;
    return s * x_axis_.step;
}

double Tomogram::mean() const
{
    double s0 = 0.0;
    double s1 = 0.0;
    for (std::size_t i = 0; i < values_.size(); ++i) {
        s0 += values_[i];
        s1 += values_[i] * x_axis_[i];
    }
    return s1 / s0;
}

double Tomogram::variance(double sigmas) const
{
    auto central = [&](double center, double half_width) {
        double s0 = 0.0;
        double s2 = 0.0;
        for (std::size_t i = 0; i < values_.size(); ++i) {
            const double d = x_axis_[i] - center;
            s0 += values_[i];
            if (std::abs(d) <= half_width) s2 += values_[i] * d * d;
        }
        return s2 / s0;
    };
    const double m = mean();
    const double full = central(m, std::numeric_limits<double>::infinity());
    if (sigmas <= 0.0) return full;
    return central(m, sigmas * std::sqrt(full));
}

Tomogram radon_metaplectic(const SampledWavefunction& psi, double mu, double nu)
{
    const auto params = RotationParams::make(mu, nu);
    auto rotated = metaplectic_rotation(psi, params);
    if (params.lambda != 1.0) rotated = scale(rotated, 1.0 / params.lambda);
    std::vector<double> r(rotated.size());
    for (std::size_t j = 0; j < r.size(); ++j) r[j] = std::norm(rotated[j]);
    Tomogram t(params, psi.grid().position_axis(), std::move(r), psi.hbar(), RadonRoute::metaplectic);
    t.accuracy_warning = t.accuracy_warning || !psi.edge_decayed();
    return t;
}

namespace {

constexpr double kSupportLevel = 1e-13;

// Largest |x| where |psi| exceeds kSupportLevel * max |psi|.
double support_radius(const SampledWavefunction& psi)
{
    double peak = 0.0;
    for (const auto& v : psi.values()) peak = std::max(peak, std::abs(v));
    double radius = 0.0;
    for (std::size_t j = 0; j < psi.size(); ++j)
        if (std::abs(psi[j]) > kSupportLevel * peak) radius = std::max(radius, std::abs(psi.grid().x(j)));
    return radius;
}

// Largest |p| carried by the DFT spectrum of psi above kSupportLevel.
double spectral_radius(const SampledWavefunction& psi)
{
    const Grid1D& g = psi.grid();
    std::vector<cplx> spec(psi.values().begin(), psi.values().end());
    fft::forward(spec);
    double peak = 0.0;
    for (const auto& v : spec) peak = std::max(peak, std::abs(v));
    const auto n = static_cast<long>(g.size());
    long widest = 0;
    for (long i = 0; i < n; ++i) {
        const long f = i < n / 2 ? i : i - n;
        if (std::abs(spec[static_cast<std::size_t>(i)]) > kSupportLevel * peak) widest = std::max(widest, std::abs(f));
    }
    return static_cast<double>(widest) * g.dp();
}

}  // namespace

Tomogram radon_chirp_fft(const SampledWavefunction& psi, double mu, double nu)
{
    const auto params = RotationParams::make(mu, nu);
    if (nu == 0.0) throw UnsupportedError("chirp-fft route needs nu != 0; use the metaplectic route");
    const Grid1D& g = psi.grid();
    const double c = mu / nu;

    const double bandwidth = std::abs(c) * support_radius(psi) + spectral_radius(psi);
    const double nyquist = std::numbers::pi * g.hbar() / g.dx();
    std::size_t factor = 1;
    constexpr std::size_t kMaxFactor = 64;
    while (bandwidth > 0.8 * nyquist * static_cast<double>(factor) && factor < kMaxFactor) factor *= 2;
    const bool saturated = bandwidth > 0.8 * nyquist * static_cast<double>(factor);

    const auto chirped = chirp_multiply(upsample(psi, factor), c);
    const Axis momenta{g.x_min() / nu, g.dx() / nu, g.size()};
    const auto f = fourier_on_lattice(chirped, momenta, FourierDirection::forward);

    const double fine_nyquist = nyquist * static_cast<double>(factor);
    std::vector<double> r(g.size());
    for (std::size_t j = 0; j < r.size(); ++j)
        r[j] = std::abs(momenta[j]) > fine_nyquist ? 0.0 : std::norm(f[j]) / std::abs(nu);

    Tomogram t(params, g.position_axis(), std::move(r), g.hbar(), RadonRoute::chirp_fft);
    t.accuracy_warning = t.accuracy_warning || saturated || !psi.edge_decayed();
    return t;
}

Tomogram radon_line_integral(const WignerMap& w, double mu, double nu, const Axis& x_axis,
                            Interpolation method)
{
    const auto params = RotationParams::make(mu, nu);
    const double lambda = params.lambda;
    const double nx = mu / lambda;
    const double ny = nu / lambda;
    const double x_lo = w.x_grid().x_min();
    const double x_hi = w.x_grid().x(w.nx() - 1);
    const double p_lo = w.p_axis().start;
    const double p_hi = w.p_axis().back();
    const double step = std::min(w.x_grid().dx(), w.p_axis().step);

    std::vector<double> r(x_axis.size, 0.0);
    parallel_for(x_axis.size, [&](std::size_t i) {
        // z(s) = (X / lambda) n + s n_perp, n_perp = (-ny, nx)
        const double t = x_axis[i] / lambda;
        const double x0 = t * nx;
        const double p0 = t * ny;
        double s_lo = -std::numeric_limits<double>::infinity();
        double s_hi = std::numeric_limits<double>::infinity();
        bool empty = false;
        auto clip = [&](double origin, double dir, double lo, double hi) {
            if (dir == 0.0) {
                if (origin < lo || origin > hi) empty = true;
                return;
            }
            double a = (lo - origin) / dir;
            double b = (hi - origin) / dir;
            if (a > b) std::swap(a, b);
            s_lo = std::max(s_lo, a);
            s_hi = std::min(s_hi, b);
        };
        clip(x0, -ny, x_lo, x_hi);
        clip(p0, nx, p_lo, p_hi);
        if (empty || !(s_hi > s_lo)) return;
        const auto segments = static_cast<std::size_t>(std::ceil((s_hi - s_lo) / step));
        const double h = (s_hi - s_lo) / static_cast<double>(segments);
        double acc = 0.0;
        for (std::size_t k = 0; k <= segments; ++k) {
            const double s = s_lo + static_cast<double>(k) * h;
            const double weight = (k == 0 || k == segments) ? 0.5 : 1.0;
            acc += weight * w.sample(x0 - s * ny, p0 + s * nx, method);
        }
        r[i] = acc * h / lambda;
    });

    Tomogram t(params, x_axis, std::move(r), w.hbar(), RadonRoute::line_integral);
    t.accuracy_warning = t.accuracy_warning || w.boundary_level() > 1e-8 || w.accuracy_warning;
    return t;
}

Tomogram radon(const SampledWavefunction& psi, double mu, double nu, RadonRoute route)
{
    switch (route) {
    case RadonRoute::metaplectic: return radon_metaplectic(psi, mu, nu);
    case RadonRoute::chirp_fft: return radon_chirp_fft(psi, mu, nu);
    case RadonRoute::line_integral:
        return radon_line_integral(wigner_transform(psi), mu, nu, psi.grid().position_axis());
    }
    throw InternalError("unhandled route");
}

TomogramSet::TomogramSet(std::vector<Tomogram> tomograms) : tomograms_(std::move(tomograms))
{
    if (tomograms_.empty()) throw DomainError("tomogram set: no tomograms");
    for (const auto& t : tomograms_) {
        if (!(t.x_axis() == tomograms_.front().x_axis()))
            throw DomainError("tomogram set: tomograms do not share an X axis");
        if (t.hbar() != tomograms_.front().hbar()) throw DomainError("tomogram set: mixed hbar");
    }
}

std::vector<double> TomogramSet::angles() const
{
    std::vector<double> out;
    out.reserve(tomograms_.size());
    for (const auto& t : tomograms_) out.push_back(t.params().angle());
    return out;
}

void TomogramSet::require_inversion_ready() const
{
    const std::size_t k = tomograms_.size();
    if (k < 8) throw DomainError("inverse radon: need at least 8 angles, got " + std::to_string(k));
    const double spacing = std::numbers::pi / static_cast<double>(k);
    const auto theta = angles();
    for (std::size_t i = 0; i < k; ++i) {
        const auto& p = tomograms_[i].params();
        if (std::abs(p.lambda - 1.0) > 1e-9)
            throw DomainError("inverse radon: (mu, nu) must lie on the unit circle");
        if (theta[i] < -1e-12 || theta[i] >= std::numbers::pi)
            throw DomainError("inverse radon: angles must lie in [0, pi)");
        if (i > 0 && std::abs(theta[i] - theta[i - 1] - spacing) > 1e-9)
            throw DomainError("inverse radon: angles must be strictly increasing with spacing pi/K");
    }
}

TomogramSet make_tomogram_set(const SampledWavefunction& psi, std::size_t n_angles, RadonRoute route)
{
    if (n_angles == 0) throw DomainError("tomogram set: need at least one angle");
    std::optional<WignerMap> w;
    if (route == RadonRoute::line_integral) w = wigner_transform(psi);

    std::vector<std::optional<Tomogram>> slots(n_angles);
    parallel_for(n_angles, [&](std::size_t k) {
        const double theta = std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_angles);
        const double mu = k == 0 ? 1.0 : std::cos(theta);
        const double nu = k == 0 ? 0.0 : std::sin(theta);
        if (route == RadonRoute::line_integral)
            slots[k] = radon_line_integral(*w, mu, nu, psi.grid().position_axis());
        else if (route == RadonRoute::chirp_fft && nu != 0.0)
            slots[k] = radon_chirp_fft(psi, mu, nu);
        else
            slots[k] = radon_metaplectic(psi, mu, nu);
    });
    std::vector<Tomogram> out;
    out.reserve(n_angles);
    for (auto& s : slots) out.push_back(std::move(*s));
    return TomogramSet(std::move(out));
}

namespace {

double raised_cosine_taper(double fraction, double start)
{
    if (fraction <= start) return 1.0;
    if (fraction >= 1.0) return 0.0;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * (fraction - start) / (1.0 - start)));
}

// Spatial kernel of the tapered ramp, h(X) = (1/pi) int_0^{k_N} k T(k) cos(k X) dk,
// sampled at X = n dX and transformed back. Sampling |k| directly in frequency
// misses the cusp at k = 0 and leaves a constant offset in the reconstruction.
std::vector<double> ramp_gain(std::size_t padded, double dX, double taper_start)
{
    const double k_n = std::numbers::pi / dX;
    const double k0 = taper_start * k_n;
    constexpr std::size_t band_points = 8192;  // even, composite Simpson over the taper band
    const double hk = (k_n - k0) / static_cast<double>(band_points);
    std::vector<double> band_weight(band_points + 1);
    for (std::size_t j = 0; j <= band_points; ++j) {
        const double k = k0 + static_cast<double>(j) * hk;
        const double simpson = (j == 0 || j == band_points) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        band_weight[j] = simpson * hk / 3.0 * k * raised_cosine_taper(k / k_n, taper_start);
    }

    const std::size_t half = padded / 2;
    std::vector<double> h(half + 1);
    for (std::size_t n = 0; n <= half; ++n) {
        const double X = static_cast<double>(n) * dX;
        double flat = 0.5 * k0 * k0;
        if (n > 0) flat = k0 * std::sin(k0 * X) / X + (std::cos(k0 * X) - 1.0) / (X * X);
        double band = 0.0;
        if (taper_start < 1.0)
            for (std::size_t j = 0; j <= band_points; ++j) band += band_weight[j] * std::cos((k0 + static_cast<double>(j) * hk) * X);
        h[n] = (flat + band) / std::numbers::pi;
    }

    std::vector<cplx> kernel(padded, cplx{});
    for (std::size_t n = 0; n <= half; ++n) {
        kernel[n] = h[n] * dX;
        if (n > 0 && n < half) kernel[padded - n] = h[n] * dX;
    }
    fft::forward(kernel);
    std::vector<double> gain(padded);
    for (std::size_t m = 0; m < padded; ++m) gain[m] = kernel[m].real();
    return gain;
}

// Ramp-filtered projection on the lattice X0 + i dX / upsample, periodic with
// period pad_factor * N * dX.
std::vector<double> filter_projection(const Tomogram& t, const std::vector<double>& gain, const InverseRadonOptions& opt)
{
    const std::size_t n = t.size();
    const std::size_t padded = gain.size();
    const std::size_t fine = padded * opt.upsample;

    std::vector<cplx> spec(padded, cplx{});
    for (std::size_t i = 0; i < n; ++i) spec[i] = t[i];
    fft::forward(spec);

    std::vector<cplx> fine_spec(fine, cplx{});
    const long half = static_cast<long>(padded / 2);
    for (long m = -half; m <= half; ++m) {
        const std::size_t src = static_cast<std::size_t>(m < 0 ? m + static_cast<long>(padded)
                                                               : m % static_cast<long>(padded));
        double g = gain[src];
        if (std::abs(m) == half) g *= 0.5;
        const std::size_t dst = static_cast<std::size_t>(m < 0 ? m + static_cast<long>(fine) : m);
        fine_spec[dst] += spec[src] * g;
    }
    fft::backward(fine_spec);
    std::vector<double> g(fine);
    const double norm = 1.0 / static_cast<double>(padded);
    for (std::size_t i = 0; i < fine; ++i) g[i] = fine_spec[i].real() * norm;
    return g;
}

}  // namespace

WignerMap inverse_radon(const TomogramSet& set, const Grid1D& x_grid, const Axis& p_axis,
                        const InverseRadonOptions& options)
{
    set.require_inversion_ready();
    if (options.pad_factor < 2 || options.upsample < 1)
        throw ConfigError("inverse radon: pad_factor >= 2 and upsample >= 1 required");
    if (!(options.taper_start >= 0.0 && options.taper_start <= 1.0))
        throw ConfigError("inverse radon: taper_start must lie in [0, 1]");
    const std::size_t k_angles = set.size();
    const Axis& xa = set.x_axis();

    const std::vector<double> gain = ramp_gain(fft::next_pow2(xa.size * options.pad_factor), xa.step, options.taper_start);
    std::vector<std::vector<double>> filtered(k_angles);
    parallel_for(k_angles, [&](std::size_t k) { filtered[k] = filter_projection(set.tomograms()[k], gain, options); });

    const std::size_t fine = filtered.front().size();
    const double fine_step = xa.step / static_cast<double>(options.upsample);
    const double origin = xa.start;
    const auto theta = set.angles();
    std::vector<double> cos_t(k_angles);
    std::vector<double> sin_t(k_angles);
    for (std::size_t k = 0; k < k_angles; ++k) {
        cos_t[k] = std::cos(theta[k]);
        sin_t[k] = std::sin(theta[k]);
    }
    const double weight = options.constant_scale * (std::numbers::pi / static_cast<double>(k_angles))
                          / (2.0 * std::numbers::pi);
    const auto period = static_cast<long>(fine);

    std::vector<double> values(x_grid.size() * p_axis.size, 0.0);
    parallel_for(x_grid.size(), [&](std::size_t a) {
        const double x = x_grid.x(a);
        double* row = values.data() + a * p_axis.size;
        for (std::size_t k = 0; k < k_angles; ++k) {
            const auto& g = filtered[k];
            const double u0 = (x * cos_t[k] + p_axis.start * sin_t[k] - origin) / fine_step;
            const double du = p_axis.step * sin_t[k] / fine_step;
            for (std::size_t b = 0; b < p_axis.size; ++b) {
                const double u = u0 + static_cast<double>(b) * du;
                const double fl = std::floor(u);
                const double frac = u - fl;
                long i0 = static_cast<long>(fl) % period;
                if (i0 < 0) i0 += period;
                const long i1 = i0 + 1 == period ? 0 : i0 + 1;
                row[b] += (1.0 - frac) * g[static_cast<std::size_t>(i0)] + frac * g[static_cast<std::size_t>(i1)];
            }
        }
        for (std::size_t b = 0; b < p_axis.size; ++b) row[b] *= weight;
    });
    return WignerMap(x_grid, p_axis, std::move(values));
}

WignerMap inverse_radon(const TomogramSet& set, const InverseRadonOptions& options)
{
    const Axis& xa = set.x_axis();
    const Grid1D grid(xa.start, xa.start + static_cast<double>(xa.size) * xa.step, xa.size, set.hbar());
    return inverse_radon(set, grid, grid.position_axis(), options);
}

Tomogram mix_tomograms(std::span<const double> weights, std::span<const Tomogram> tomograms)
{
    if (weights.size() != tomograms.size() || tomograms.empty())
        throw DomainError("mix_tomograms: need one weight per tomogram");
    double total = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw DomainError("mix_tomograms: weights must be non-negative");
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-12) throw DomainError("mix_tomograms: weights must sum to 1");

    const Tomogram& first = tomograms.front();
    std::vector<double> mixed(first.size(), 0.0);
    for (std::size_t i = 0; i < tomograms.size(); ++i) {
        const Tomogram& t = tomograms[i];
        if (!(t.x_axis() == first.x_axis())) throw DomainError("mix_tomograms: X axes differ");
        if (std::abs(t.params().mu - first.params().mu) > 1e-12
            || std::abs(t.params().nu - first.params().nu) > 1e-12)
            throw DomainError("mix_tomograms: (mu, nu) differ");
        if (t.hbar() != first.hbar()) throw DomainError("mix_tomograms: hbar differs");
        for (std::size_t j = 0; j < mixed.size(); ++j) mixed[j] += weights[i] * t[j];
    }
    return Tomogram(first.params(), first.x_axis(), std::move(mixed), first.hbar(), first.route());
}

}  // namespace symtomo
