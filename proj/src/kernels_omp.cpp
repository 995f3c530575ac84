#include "salemap/kernels.hpp"

#include <cstddef>

namespace salemap::kernels::parallel {

std::vector<Complex> dft_direct(std::span<const Complex> values) {
    const auto n = static_cast<Int>(values.size());
    std::vector<Complex> out(values.size());
    if (n == 0) return out;
    const auto w = twiddles(n);
    const double scale = 1.0 / static_cast<double>(n);
#pragma omp parallel for schedule(static)
    for (Int k = 0; k < n; ++k) {
        Complex acc{};
        for (Int x = 0; x < n; ++x) {
            acc += values[static_cast<std::size_t>(x)] * w[static_cast<std::size_t>((k * x) % n)];
        }
        out[static_cast<std::size_t>(k)] = acc * scale;
    }
    return out;
}

std::vector<Complex> indicator_dft_direct(std::span<const Int> elements, Int modulus) {
    std::vector<Complex> out(static_cast<std::size_t>(modulus));
    const auto w = twiddles(modulus);
    const double scale = 1.0 / static_cast<double>(modulus);
    const auto m = static_cast<std::ptrdiff_t>(elements.size());
#pragma omp parallel for schedule(static)
    for (Int k = 0; k < modulus; ++k) {
        Complex acc{};
        for (std::ptrdiff_t i = 0; i < m; ++i) {
            acc += w[static_cast<std::size_t>((k * elements[static_cast<std::size_t>(i)]) % modulus)];
        }
        out[static_cast<std::size_t>(k)] = acc * scale;
    }
    return out;
}

Complex lambda3_direct(std::span<const Complex> f, std::span<const Complex> g,
                       std::span<const Complex> h) {
    const auto n = static_cast<Int>(f.size());
    double re = 0.0;
    double im = 0.0;
#pragma omp parallel for schedule(static) reduction(+ : re, im)
    for (Int x = 0; x < n; ++x) {
        const Complex fx = f[static_cast<std::size_t>(x)];
        if (fx == Complex{}) continue;
        Complex acc{};
        for (Int r = 0; r < n; ++r) {
            acc += g[static_cast<std::size_t>((x + r) % n)] * h[static_cast<std::size_t>((x + 2 * r) % n)];
        }
        acc *= fx;
        re += acc.real();
        im += acc.imag();
    }
    const double nn = static_cast<double>(n);
    return Complex{re, im} / (nn * nn);
}

std::uint64_t congruence_count(std::span<const Int> elements, std::span<const std::uint8_t> mask) {
    const auto n = static_cast<Int>(mask.size());
    const auto m = static_cast<std::ptrdiff_t>(elements.size());
    const bool odd = n % 2 == 1;
    const Int inv2 = (n + 1) / 2;
    std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : count)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        const Int x = elements[static_cast<std::size_t>(i)];
        std::uint64_t local = 0;
        for (Int y : elements) {
            const Int s = (x + y) % n;
            if (odd) {
                local += mask[static_cast<std::size_t>(s * inv2 % n)];
            } else if (s % 2 == 0) {
                local += mask[static_cast<std::size_t>(s / 2)];
                local += mask[static_cast<std::size_t>(s / 2 + n / 2)];
            }
        }
        count += local;
    }
    return count;
}

std::uint64_t genuine_count(std::span<const Int> elements, std::span<const std::uint8_t> mask) {
    const auto n = static_cast<Int>(mask.size());
    const auto m = static_cast<std::ptrdiff_t>(elements.size());
    std::uint64_t count = 0;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : count)
    for (std::ptrdiff_t i = 0; i < m; ++i) {
        const Int a = elements[static_cast<std::size_t>(i)];
        for (std::ptrdiff_t j = i + 1; j < m; ++j) {
            const Int c = 2 * elements[static_cast<std::size_t>(j)] - a;
            if (c >= n) break;
            count += mask[static_cast<std::size_t>(c)];
        }
    }
    return count;
}

}  // namespace salemap::kernels::parallel
