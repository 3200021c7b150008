#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "segc/raster.hpp"

namespace segc {

using Complex = std::complex<double>;

/// Width x height grid of Fourier coefficients, row-major, unshifted layout
/// (frequency index 0 first on both axes).
struct ComplexGrid {
    int width = 0;
    int height = 0;
    std::vector<Complex> data;

    Complex at(int u, int v) const { return data[static_cast<std::size_t>(v) * width + u]; }
    Complex& at(int u, int v) { return data[static_cast<std::size_t>(v) * width + u]; }
};

namespace fftdetail {

constexpr double kPi = 3.141592653589793238462643383279502884;

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

// One-dimensional transform plan for a fixed length. Power-of-two lengths run
// a radix-2 pass directly; everything else goes through Bluestein's chirp-z
// reduction to a power-of-two convolution.
class Plan {
public:
    explicit Plan(std::size_t n) : n_(n) {
        if (n_ <= 1) return;
        if (is_pow2(n_)) {
            build_tables(n_);
            return;
        }
        m_ = next_pow2(2 * n_ - 1);
        build_tables(m_);
        // chirp_[j] = exp(-i*pi*j^2/n); j^2 is reduced mod 2n to keep the
        // angle argument small for large lengths.
        chirp_.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) {
            std::uint64_t q = (static_cast<std::uint64_t>(j) * j) % (2 * n_);
            double ang = -kPi * static_cast<double>(q) / static_cast<double>(n_);
            chirp_[j] = Complex(std::cos(ang), std::sin(ang));
        }
        kernel_fft_.assign(m_, Complex(0.0, 0.0));
        kernel_fft_[0] = std::conj(chirp_[0]);
        for (std::size_t j = 1; j < n_; ++j) {
            kernel_fft_[j] = std::conj(chirp_[j]);
            kernel_fft_[m_ - j] = std::conj(chirp_[j]);
        }
        pow2_transform(kernel_fft_.data());
    }

    std::size_t length() const { return n_; }

    /// Unnormalized forward DFT: X_k = sum_j x_j exp(-2*pi*i*jk/n).
    void forward(Complex* a) const {
        if (n_ <= 1) return;
        if (is_pow2(n_)) {
            pow2_transform(a);
            return;
        }
        std::vector<Complex> buf(m_, Complex(0.0, 0.0));
        for (std::size_t j = 0; j < n_; ++j) buf[j] = a[j] * chirp_[j];
        pow2_transform(buf.data());
        for (std::size_t k = 0; k < m_; ++k) buf[k] *= kernel_fft_[k];
        // inverse of the internal power-of-two FFT via conjugation
        for (auto& z : buf) z = std::conj(z);
        pow2_transform(buf.data());
        const double inv_m = 1.0 / static_cast<double>(m_);
        for (std::size_t k = 0; k < n_; ++k) a[k] = std::conj(buf[k]) * inv_m * chirp_[k];
    }

    /// Unnormalized inverse DFT: x_j = sum_k X_k exp(+2*pi*i*jk/n).
    void inverse(Complex* a) const {
        for (std::size_t j = 0; j < n_; ++j) a[j] = std::conj(a[j]);
        forward(a);
        for (std::size_t j = 0; j < n_; ++j) a[j] = std::conj(a[j]);
    }

private:
    void build_tables(std::size_t len) {
        twiddle_.resize(len / 2);
        for (std::size_t k = 0; k < len / 2; ++k) {
            double ang = -2.0 * kPi * static_cast<double>(k) / static_cast<double>(len);
            twiddle_[k] = Complex(std::cos(ang), std::sin(ang));
        }
        rev_.resize(len);
        rev_[0] = 0;
        std::size_t bits = 0;
        while ((std::size_t{1} << bits) < len) ++bits;
        for (std::size_t i = 1; i < len; ++i)
            rev_[i] = (rev_[i >> 1] >> 1) | ((i & 1) << (bits - 1));
    }

    // Iterative radix-2 over the table length (n_ when a power of two, else m_).
    void pow2_transform(Complex* a) const {
        const std::size_t len = rev_.size();
        for (std::size_t i = 0; i < len; ++i)
            if (i < rev_[i]) std::swap(a[i], a[rev_[i]]);
        for (std::size_t half = 1; half < len; half <<= 1) {
            const std::size_t step = len / (2 * half);
            for (std::size_t block = 0; block < len; block += 2 * half) {
                for (std::size_t j = 0; j < half; ++j) {
                    Complex w = twiddle_[j * step];
                    Complex u = a[block + j];
                    Complex t = a[block + j + half] * w;
                    a[block + j] = u + t;
                    a[block + j + half] = u - t;
                }
            }
        }
    }

    std::size_t n_ = 0;
    std::size_t m_ = 0;
    std::vector<Complex> twiddle_;
    std::vector<std::size_t> rev_;
    std::vector<Complex> chirp_;
    std::vector<Complex> kernel_fft_;
};

}  // namespace fftdetail

/// Unnormalized forward 2-D DFT of an image. idft2_real composes to the
/// identity; Parseval holds as sum|pixel|^2 = sum|coef|^2 / (W*H).
inline ComplexGrid dft2(const GrayImage& img) {
    ComplexGrid grid;
    grid.width = img.width;
    grid.height = img.height;
    grid.data.assign(img.size(), Complex(0.0, 0.0));
    for (std::size_t i = 0; i < img.size(); ++i) grid.data[i] = Complex(img.data[i], 0.0);

    fftdetail::Plan row_plan(static_cast<std::size_t>(img.width));
    for (int y = 0; y < img.height; ++y)
        row_plan.forward(grid.data.data() + static_cast<std::size_t>(y) * img.width);

    fftdetail::Plan col_plan(static_cast<std::size_t>(img.height));
    std::vector<Complex> col(img.height);
    for (int x = 0; x < img.width; ++x) {
        for (int y = 0; y < img.height; ++y) col[y] = grid.at(x, y);
        col_plan.forward(col.data());
        for (int y = 0; y < img.height; ++y) grid.at(x, y) = col[y];
    }
    return grid;
}

/// Inverse 2-D transform scaled by 1/(W*H); returns the real part, unclamped.
/// Takes the grid by value so callers can move it in and avoid a second
/// full-size allocation on large rasters.
inline std::vector<double> idft2_real(ComplexGrid grid) {
    fftdetail::Plan row_plan(static_cast<std::size_t>(grid.width));
    for (int y = 0; y < grid.height; ++y)
        row_plan.inverse(grid.data.data() + static_cast<std::size_t>(y) * grid.width);

    fftdetail::Plan col_plan(static_cast<std::size_t>(grid.height));
    std::vector<Complex> col(grid.height);
    for (int x = 0; x < grid.width; ++x) {
        for (int y = 0; y < grid.height; ++y) col[y] = grid.at(x, y);
        col_plan.inverse(col.data());
        for (int y = 0; y < grid.height; ++y) grid.at(x, y) = col[y];
    }
    const double scale = 1.0 / (static_cast<double>(grid.width) * grid.height);
    std::vector<double> out(grid.data.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = grid.data[i].real() * scale;
    return out;
}

}  // namespace segc
