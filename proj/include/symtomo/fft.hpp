#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace symtomo {

using cplx = std::complex<double>;

namespace fft {

/// In-place unnormalized DFT, kernel exp(-2 pi i j k / n).
void forward(std::span<cplx> data);

/// In-place unnormalized inverse DFT, kernel exp(+2 pi i j k / n).
void backward(std::span<cplx> data);

std::size_t next_pow2(std::size_t n);

}  // namespace fft

/**
 * Fourier-type sum between two uniform lattices, evaluated with Bluestein's
 * algorithm in O((n_in + n_out) log(n_in + n_out)):
 *
 *   out[m] = sum_k in[k] * exp(-i * kappa * (a0 + k*da) * (b0 + m*db))
 *
 * for k < n_in, m < n_out. Both lattices and the coupling kappa are
 * arbitrary reals, so this realizes a Riemann sum of a continuum Fourier
 * kernel on any pair of grids (not just the DFT-dual pair). Construction
 * precomputes the chirps and kernel spectrum; apply() is const and may be
 * called concurrently.
 */
class ChirpZ {
public:
    ChirpZ(std::size_t n_in, double a0, double da,
           std::size_t n_out, double b0, double db, double kappa);

    void apply(std::span<const cplx> in, std::span<cplx> out) const;
    std::vector<cplx> operator()(std::span<const cplx> in) const;

    std::size_t input_size() const { return n_in_; }
    std::size_t output_size() const { return n_out_; }

private:
    std::size_t n_in_;
    std::size_t n_out_;
    std::size_t fft_size_;
    std::vector<cplx> pre_;
    std::vector<cplx> post_;
    std::vector<cplx> kernel_spectrum_;
};

}  // namespace symtomo
