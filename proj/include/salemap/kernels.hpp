#pragma once

// Hot loops used by the spectral and counting modules. Each kernel exists in a
// plain serial form (the reference kept for tests and benchmarks) and an
// OpenMP form used by the library. Both produce the same values up to
// floating-point reassociation; integer kernels agree exactly.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace salemap::kernels {

using Complex = std::complex<double>;
using Int = std::int64_t;

// Table of e^{-2 pi i m / N} for m in [0, N). Indexing with (k*n mod N)
// avoids the phase error of evaluating large angles directly.
std::vector<Complex> twiddles(Int modulus);

namespace serial {

// coeffs[k] = (1/N) sum_n values[n] e^{-2 pi i k n / N}
std::vector<Complex> dft_direct(std::span<const Complex> values);

// coeffs[k] = (1/N) sum_{a in elements} e^{-2 pi i k a / N}
std::vector<Complex> indicator_dft_direct(std::span<const Int> elements, Int modulus);

// (1/N^2) sum_{x,r} f(x) g(x+r) h(x+2r), indices mod N.
Complex lambda3_direct(std::span<const Complex> f, std::span<const Complex> g,
                       std::span<const Complex> h);

// Ordered (x, y, z) in A^3 with x + y == 2z (mod N).
std::uint64_t congruence_count(std::span<const Int> elements, std::span<const std::uint8_t> mask);

// Pairs (x, r), r >= 1, with x, x+r, x+2r in A (no wrap-around).
std::uint64_t genuine_count(std::span<const Int> elements, std::span<const std::uint8_t> mask);

}  // namespace serial

namespace parallel {

std::vector<Complex> dft_direct(std::span<const Complex> values);
std::vector<Complex> indicator_dft_direct(std::span<const Int> elements, Int modulus);
Complex lambda3_direct(std::span<const Complex> f, std::span<const Complex> g,
                       std::span<const Complex> h);
std::uint64_t congruence_count(std::span<const Int> elements, std::span<const std::uint8_t> mask);
std::uint64_t genuine_count(std::span<const Int> elements, std::span<const std::uint8_t> mask);

}  // namespace parallel

}  // namespace salemap::kernels
