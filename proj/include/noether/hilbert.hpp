#pragma once

#include <vector>

#include "ideal.hpp"

namespace noether {

namespace detail {

// Numerator N(t) of the Hilbert series N(t)/(1-t)^n of S/I, computed from
// the lead-term ideal by the classical splitting recursion
//   N(G + m) = N(G) - t^{deg m} N(G : m).
inline std::vector<Monomial> minimal_monomials(std::vector<Monomial> g) {
    std::vector<Monomial> out;
    for (size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < g.size() && !redundant; ++j)
            if (j != i && g[j].divides(g[i]) && !(g[i].divides(g[j]) && j > i))
                redundant = true;
        if (!redundant) out.push_back(g[i]);
    }
    return out;
}

inline std::vector<Int> hilbert_numerator(std::vector<Monomial> gens) {
    gens = minimal_monomials(std::move(gens));
    if (gens.empty()) return {Int(1)};
    for (const auto& m : gens)
        if (m.degree() == 0) return {Int(0)};  // unit ideal

    Monomial m = gens.back();
    gens.pop_back();
    std::vector<Int> rest = hilbert_numerator(gens);

    std::vector<Monomial> colon;
    for (const auto& g : gens) colon.push_back(g / g.gcd(m));
    std::vector<Int> quot = hilbert_numerator(std::move(colon));

    int d = m.degree();
    std::vector<Int> out(std::max(rest.size(), quot.size() + d), Int(0));
    for (size_t i = 0; i < rest.size(); ++i) out[i] = rest[i];
    for (size_t i = 0; i < quot.size(); ++i) out[i + d] -= quot[i];
    while (out.size() > 1 && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace detail

// Hilbert polynomial of S/I, recovered from the Hilbert function on a
// window starting at the regularity of S/I (where function and polynomial
// agree).  Coefficients are exact rationals: P(t) = sum coeffs[i] * t^i.
struct HilbertData {
    int window_start = 0;
    std::vector<long> window;   // H(window_start), H(window_start+1), ...
    std::vector<Rat> coeffs;    // Hilbert polynomial, constant term first
    int poly_degree = 0;        // degree of P = dim of the scheme

    Rat eval(long t) const {
        Rat v(0), p(1);
        for (const Rat& c : coeffs) {
            v += c * p;
            p *= t;
        }
        return v;
    }
};

inline HilbertData hilbert_data(const Ideal& I) {
    int n = I.ring().nvars();
    // The Hilbert series of S/I is N(t)/(1-t)^n with N from the lead-term
    // ideal; function and polynomial agree from deg N - n + 1 onward.
    std::vector<Int> num = detail::hilbert_numerator(I.lead_monomials());
    int start = std::max(static_cast<int>(num.size()) - n, 0);

    HilbertData h;
    h.window_start = start;
    int points = n + 2;  // enough for degree <= n-1 plus a consistency check
    for (int i = 0; i < points; ++i) h.window.push_back(I.hilbert_fn(start + i));

    // Newton forward differences at t = start.
    std::vector<std::vector<Rat>> diff{std::vector<Rat>()};
    for (long v : h.window) diff[0].push_back(Rat(v));
    while (diff.back().size() > 1) {
        std::vector<Rat> next;
        for (size_t i = 0; i + 1 < diff.back().size(); ++i)
            next.push_back(diff.back()[i + 1] - diff.back()[i]);
        diff.push_back(std::move(next));
    }
    int deg = 0;
    for (size_t k = 0; k < diff.size(); ++k)
        for (const Rat& v : diff[k])
            if (v != 0) deg = static_cast<int>(k);
    if (deg >= n) throw std::logic_error("hilbert polynomial degree exceeds ring dimension");
    h.poly_degree = deg;

    // P(t) = sum_k diff[k][0] * C(t - start, k); expand in the monomial basis.
    std::vector<Rat> poly(deg + 1, Rat(0));
    std::vector<Rat> basis{Rat(1)};  // C(t-start, 0) = 1
    for (int k = 0; k <= deg; ++k) {
        for (int j = 0; j <= k; ++j) poly[j] += diff[k][0] * basis[j];
        // C(t-start, k+1) = C(t-start, k) * (t - start - k) / (k + 1)
        std::vector<Rat> nb(basis.size() + 1, Rat(0));
        for (size_t j = 0; j < basis.size(); ++j) {
            nb[j + 1] += basis[j];
            nb[j] += basis[j] * Rat(-(start + k));
        }
        for (auto& c : nb) c /= Rat(k + 1);
        basis = std::move(nb);
    }
    h.coeffs = std::move(poly);

    // every window point must match the interpolated polynomial
    for (int i = 0; i < points; ++i)
        if (h.eval(start + i) != Rat(h.window[i]))
            throw std::logic_error("hilbert window not polynomial: regularity bound violated");
    return h;
}

// For a 1-dimensional projective scheme (a curve in P^3):
// P(t) = deg * t + (1 - genus).
struct CurveInvariants {
    long degree = 0;
    long arithmetic_genus = 0;
};

inline CurveInvariants curve_invariants(const HilbertData& h) {
    if (h.poly_degree != 1)
        throw std::invalid_argument("hilbert polynomial is not that of a curve");
    Rat d = h.coeffs[1];
    Rat one_minus_g = h.coeffs[0];
    if (d.get_den() != 1 || one_minus_g.get_den() != 1)
        throw std::logic_error("non-integral curve invariants");
    CurveInvariants c;
    c.degree = d.get_num().get_si();
    c.arithmetic_genus = 1 - one_minus_g.get_num().get_si();
    return c;
}

}  // namespace noether
