#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace noether {

// Exact rational coefficient type. No floating point anywhere in the library.
using Rat = mpq_class;
using Int = mpz_class;

inline Int binomial(long n, long k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(k));
    return r;
}

// dim S_d for S = k[x0..x_{n-1}]: number of monomials of degree d.
inline long monomial_count(int nvars, int d) {
    if (d < 0) return 0;
    Int c = binomial(d + nvars - 1, nvars - 1);
    if (!c.fits_slong_p()) throw std::overflow_error("monomial_count overflow");
    return c.get_si();
}

inline std::string rat_to_string(const Rat& q) { return q.get_str(); }

// Counter-mode deterministic generator; identical (seed, counter) streams
// on every platform.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on {-5,...,5} \ {0}.
    int small_coeff() {
        int v = static_cast<int>(next_u64() % 10);  // 0..9
        return v < 5 ? v - 5 : v - 4;
    }

    // Derive an independent child stream (used by retry loops).
    SeededRng child(std::uint64_t salt) {
        return SeededRng(next_u64() ^ (salt * 0x9e3779b97f4a7c15ULL));
    }

  private:
    std::uint64_t state_;
};

}  // namespace noether
