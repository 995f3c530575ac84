#include "salemap/kernels.hpp"

#include <numbers>

namespace salemap::kernels {

std::vector<Complex> twiddles(Int modulus) {
    std::vector<Complex> table(static_cast<std::size_t>(modulus));
    const double step = -2.0 * std::numbers::pi / static_cast<double>(modulus);
    for (Int m = 0; m < modulus; ++m) {
        table[static_cast<std::size_t>(m)] = std::polar(1.0, step * static_cast<double>(m));
    }
    return table;
}

namespace serial {

std::vector<Complex> dft_direct(std::span<const Complex> values) {
    const auto n = static_cast<Int>(values.size());
    std::vector<Complex> out(values.size());
    if (n == 0) return out;
    const auto w = twiddles(n);
    const double scale = 1.0 / static_cast<double>(n);
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
    for (Int k = 0; k < modulus; ++k) {
        Complex acc{};
        for (Int a : elements) acc += w[static_cast<std::size_t>((k * a) % modulus)];
        out[static_cast<std::size_t>(k)] = acc * scale;
    }
    return out;
}

Complex lambda3_direct(std::span<const Complex> f, std::span<const Complex> g,
                       std::span<const Complex> h) {
    const auto n = static_cast<Int>(f.size());
    Complex acc{};
    for (Int x = 0; x < n; ++x) {
        const Complex fx = f[static_cast<std::size_t>(x)];
        if (fx == Complex{}) continue;
        for (Int r = 0; r < n; ++r) {
            acc += fx * g[static_cast<std::size_t>((x + r) % n)] *
                   h[static_cast<std::size_t>((x + 2 * r) % n)];
        }
    }
    const double nn = static_cast<double>(n);
    return acc / (nn * nn);
}

std::uint64_t congruence_count(std::span<const Int> elements, std::span<const std::uint8_t> mask) {
    const auto n = static_cast<Int>(mask.size());
    std::uint64_t count = 0;
    if (n % 2 == 1) {
        const Int inv2 = (n + 1) / 2;
        for (Int x : elements) {
            for (Int y : elements) {
                const Int z = ((x + y) % n) * inv2 % n;
                count += mask[static_cast<std::size_t>(z)];
            }
        }
    } else {
        for (Int x : elements) {
            for (Int y : elements) {
                const Int s = (x + y) % n;
                if (s % 2 != 0) continue;
                count += mask[static_cast<std::size_t>(s / 2)];
                count += mask[static_cast<std::size_t>(s / 2 + n / 2)];
            }
        }
    }
    return count;
}

std::uint64_t genuine_count(std::span<const Int> elements, std::span<const std::uint8_t> mask) {
    const auto n = static_cast<Int>(mask.size());
    std::uint64_t count = 0;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (std::size_t j = i + 1; j < elements.size(); ++j) {
            const Int c = 2 * elements[j] - elements[i];
            if (c >= n) break;
            count += mask[static_cast<std::size_t>(c)];
        }
    }
    return count;
}

}  // namespace serial
}  // namespace salemap::kernels
