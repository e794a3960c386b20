#include "symtomo/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace symtomo {
namespace fft {
namespace {

class PlanCache {
public:
    ~PlanCache()
    {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::size_t n, int sign)
    {
        std::lock_guard lock(mutex_);
        auto it = plans_.find({n, sign});
        if (it != plans_.end()) return it->second;
        // Planner calls are not thread-safe; execution with fftw_execute_dft is.
        std::vector<cplx> scratch(n);
        auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), buf, buf, sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw planning failed");
        plans_.emplace(std::make_pair(n, sign), plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache instance;
    return instance;
}

void execute(std::span<cplx> data, int sign)
{
    if (data.empty()) return;
    fftw_plan plan = cache().get(data.size(), sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void forward(std::span<cplx> data) { execute(data, FFTW_FORWARD); }
void backward(std::span<cplx> data) { execute(data, FFTW_BACKWARD); }

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace fft

namespace {

// exp(-i * phase) with the phase reduced modulo 2 pi in extended precision;
// Bluestein phases grow quadratically with the lattice index.
cplx unit_phase(long double phase)
{
    constexpr long double two_pi = 2.0L * std::numbers::pi_v<long double>;
    const long double reduced = std::fmod(phase, two_pi);
    return std::polar(1.0, -static_cast<double>(reduced));
}

}  // namespace

ChirpZ::ChirpZ(std::size_t n_in, double a0, double da,
               std::size_t n_out, double b0, double db, double kappa)
    : n_in_(n_in), n_out_(n_out), fft_size_(fft::next_pow2(n_in + n_out - 1)),
      pre_(n_in), post_(n_out), kernel_spectrum_(fft_size_)
{
    if (n_in == 0 || n_out == 0) throw std::invalid_argument("ChirpZ: empty lattice");
    const long double K = kappa;
    const long double alpha = K * da * db;
    for (std::size_t k = 0; k < n_in; ++k) {
        const long double kk = static_cast<long double>(k);
        pre_[k] = unit_phase(K * b0 * da * kk + 0.5L * alpha * kk * kk);
    }
    for (std::size_t m = 0; m < n_out; ++m) {
        const long double mm = static_cast<long double>(m);
        post_[m] = unit_phase(K * a0 * b0 + K * a0 * db * mm + 0.5L * alpha * mm * mm);
    }
    // h[d] = exp(+i alpha d^2 / 2) for d in [-(n_in-1), n_out-1], stored circularly.
    for (std::size_t d = 0; d < n_out; ++d) {
        const long double dd = static_cast<long double>(d);
        kernel_spectrum_[d] = unit_phase(-0.5L * alpha * dd * dd);
    }
    for (std::size_t d = 1; d < n_in; ++d) {
        const long double dd = static_cast<long double>(d);
        kernel_spectrum_[fft_size_ - d] = unit_phase(-0.5L * alpha * dd * dd);
    }
    fft::forward(kernel_spectrum_);
}

void ChirpZ::apply(std::span<const cplx> in, std::span<cplx> out) const
{
    if (in.size() != n_in_ || out.size() != n_out_)
        throw std::invalid_argument("ChirpZ::apply: size mismatch");
    std::vector<cplx> work(fft_size_, cplx{});
    for (std::size_t k = 0; k < n_in_; ++k) work[k] = in[k] * pre_[k];
    fft::forward(work);
    for (std::size_t i = 0; i < fft_size_; ++i) work[i] *= kernel_spectrum_[i];
    fft::backward(work);
    const double scale = 1.0 / static_cast<double>(fft_size_);
    for (std::size_t m = 0; m < n_out_; ++m) out[m] = work[m] * post_[m] * scale;
}

std::vector<cplx> ChirpZ::operator()(std::span<const cplx> in) const
{
    std::vector<cplx> out(n_out_);
    apply(in, out);
    return out;
}

}  // namespace symtomo
