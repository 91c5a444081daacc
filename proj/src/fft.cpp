#include "wpl/fft.hpp"

#include <cmath>
#include <stdexcept>

namespace wpl {

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

void fft_pow2(Complex* data, std::size_t n, int sign) {
    if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: size must be a power of two");
    // bit-reversal permutation
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = sign * 6.283185307179586476925286766559 / static_cast<double>(len);
        const Complex wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            Complex w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                Complex u = data[i + k];
                Complex v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

ChirpZPlan::ChirpZPlan(std::size_t m, std::size_t count, double phi)
    : m_(m), count_(count), phi_(phi) {
    if (m == 0 || count == 0) throw std::invalid_argument("ChirpZPlan: empty transform");
    pad_ = next_pow2(m + count - 1);
    chirp_j_.resize(m);
    for (std::size_t j = 0; j < m; ++j)
        chirp_j_[j] = unit_phase(0.5 * phi * static_cast<double>(j) * static_cast<double>(j));
    chirp_k_.resize(count);
    for (std::size_t k = 0; k < count; ++k)
        chirp_k_[k] = unit_phase(0.5 * phi * static_cast<double>(k) * static_cast<double>(k));
    // kernel h[d] = exp(-i phi d^2 / 2) for d in (-(m-1) .. count-1), laid out circularly
    kernel_fft_.assign(pad_, Complex(0.0, 0.0));
    for (std::size_t k = 0; k < count; ++k)
        kernel_fft_[k] = std::conj(chirp_k_[k]);
    for (std::size_t j = 1; j < m; ++j)
        kernel_fft_[pad_ - j] = std::conj(chirp_j_[j]);
    fft_pow2(kernel_fft_.data(), pad_, -1);
}

void ChirpZPlan::run(const Complex* a, double alpha, Complex* out) const {
    std::vector<Complex> work(pad_, Complex(0.0, 0.0));
    for (std::size_t j = 0; j < m_; ++j)
        work[j] = a[j] * unit_phase(alpha * static_cast<double>(j)) * chirp_j_[j];
    fft_pow2(work.data(), pad_, -1);
    for (std::size_t i = 0; i < pad_; ++i) work[i] *= kernel_fft_[i];
    fft_pow2(work.data(), pad_, +1);
    const double scale = 1.0 / static_cast<double>(pad_);
    for (std::size_t k = 0; k < count_; ++k)
        out[k] = work[k] * chirp_k_[k] * scale;
}

} // namespace wpl
