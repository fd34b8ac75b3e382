#pragma once

// Seeded random sampling. All transforms are written out explicitly on top
// of mt19937_64 so that a given seed produces the same stream on every
// platform and standard library.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace qcoh {

// splitmix64 finalizer; derives well-separated stream seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
    return mix_seed(mix_seed(a) ^ (b + 0x9e3779b97f4a7c15ull));
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
    return mix_seed(mix_seed(a, b), c);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Unbiased uniform integer in [0, n), n >= 1.
    std::uint64_t uniform_int(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v = gen_();
        while (v >= limit) v = gen_();
        return v % n;
    }

    bool coin() { return (gen_() >> 63) != 0; }

    // Standard normal via Box-Muller; the paired draw is cached.
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log1p(-u1));
        const double theta = 2.0 * kPi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    std::complex<double> gauss_complex() {
        const double re = gauss();
        const double im = gauss();
        return {re, im};
    }

    // Flat Dirichlet over the (k-1)-simplex.
    std::vector<double> dirichlet(std::size_t k) {
        std::vector<double> w(k);
        double sum = 0.0;
        for (auto& wi : w) {
            wi = -std::log1p(-uniform());
            sum += wi;
        }
        if (sum <= 0.0) {
            for (auto& wi : w) wi = 1.0 / static_cast<double>(k);
            return w;
        }
        for (auto& wi : w) wi /= sum;
        return w;
    }

    // In-place Fisher-Yates shuffle.
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(uniform_int(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static constexpr double kPi = 3.14159265358979323846;

    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qcoh
