#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace wpl {

using Complex = std::complex<double>;
using VectorXcd = Eigen::VectorXcd;

// In-place radix-2 FFT, sign = -1 forward, +1 inverse (inverse is unscaled;
// callers divide by n where needed). n must be a power of two.
void fft_pow2(Complex* data, std::size_t n, int sign);

inline bool is_pow2(std::size_t n) { return n >= 1 && (n & (n - 1)) == 0; }
std::size_t next_pow2(std::size_t n);

inline void fft_forward(VectorXcd& v) { fft_pow2(v.data(), static_cast<std::size_t>(v.size()), -1); }
inline void fft_inverse_unscaled(VectorXcd& v) { fft_pow2(v.data(), static_cast<std::size_t>(v.size()), +1); }

// Chirp-Z evaluation of   X_k = sum_{j=0}^{m-1} a_j exp(i (alpha j + phi j k)),
// k = 0..count-1, for arbitrary real angle steps. Bluestein's reduction to a
// linear convolution, so the result equals the direct sum to rounding error.
// The kernel depends only on (phi, m, count); a plan caches its FFT so a batch
// of transforms (e.g. the t-slices of a field evaluation) pays one setup.
class ChirpZPlan {
public:
    ChirpZPlan(std::size_t m, std::size_t count, double phi);

    std::size_t input_size() const { return m_; }
    std::size_t output_size() const { return count_; }

    // out must have room for output_size() values.
    void run(const Complex* a, double alpha, Complex* out) const;

private:
    std::size_t m_ = 0, count_ = 0, pad_ = 0;
    double phi_ = 0.0;
    std::vector<Complex> chirp_j_;      // exp(+i phi j^2 / 2), j = 0..m-1
    std::vector<Complex> chirp_k_;      // exp(+i phi k^2 / 2), k = 0..count-1
    std::vector<Complex> kernel_fft_;   // FFT of exp(-i phi m^2 / 2) kernel
};

// exp(i theta) with the argument reduced before the trig call; theta may be
// large (chirp phases reach ~1e6 rad).
inline Complex unit_phase(double theta) {
    theta = std::remainder(theta, 6.283185307179586476925286766559);
    return Complex(std::cos(theta), std::sin(theta));
}

} // namespace wpl
