#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "polynomial.hpp"

namespace noether {

// Minimal dense-coefficient Groebner engine over a prime field.  Used only
// to certify finite colength: if S/(J mod p) is finite dimensional then so
// is S/J over the rationals (mod-p ranks never exceed rational ranks), so a
// positive answer here is an exact certificate.
namespace modp {

constexpr std::uint64_t P = 2147483647ULL;  // 2^31 - 1

inline std::uint64_t mulp(std::uint64_t a, std::uint64_t b) { return a * b % P; }

inline std::uint64_t powp(std::uint64_t a, std::uint64_t e) {
    std::uint64_t r = 1;
    while (e) {
        if (e & 1) r = mulp(r, a);
        a = mulp(a, a);
        e >>= 1;
    }
    return r;
}

inline std::uint64_t invp(std::uint64_t a) { return powp(a % P, P - 2); }

struct Poly {
    // terms sorted descending grevlex, coefficients nonzero mod P
    std::vector<std::pair<Monomial, std::uint64_t>> t;

    bool zero() const { return t.empty(); }
    const Monomial& lead() const { return t.front().first; }
    std::uint64_t lead_c() const { return t.front().second; }
};

// Reduce a rational-coefficient polynomial mod P; nullopt if a denominator
// vanishes mod P (bad prime).
inline std::optional<Poly> reduce(const Polynomial& f) {
    Poly r;
    for (const auto& term : f.terms()) {
        Int num = term.c.get_num() % static_cast<long>(P);
        Int den = term.c.get_den() % static_cast<long>(P);
        std::uint64_t d = den.get_ui();
        if (num < 0) num += static_cast<long>(P);
        if (d == 0) return std::nullopt;
        std::uint64_t c = mulp(num.get_ui(), invp(d));
        if (c) r.t.push_back({term.m, c});
    }
    return r;
}

inline Poly sub_mul(const Poly& f, const Poly& g, const Monomial& m, std::uint64_t c) {
    // f - c * m * g, both sorted descending grevlex
    static const MonomialOrder glex = MonomialOrder::grevlex();
    Poly r;
    r.t.reserve(f.t.size() + g.t.size());
    size_t i = 0, j = 0;
    while (i < f.t.size() && j < g.t.size()) {
        Monomial gm = g.t[j].first * m;
        int cmp = glex.cmp(f.t[i].first, gm);
        if (cmp > 0) {
            r.t.push_back(f.t[i++]);
        } else if (cmp < 0) {
            r.t.push_back({gm, P - mulp(c, g.t[j].second)});
            ++j;
        } else {
            std::uint64_t v = (f.t[i].second + P - mulp(c, g.t[j].second)) % P;
            if (v) r.t.push_back({f.t[i].first, v});
            ++i;
            ++j;
        }
    }
    for (; i < f.t.size(); ++i) r.t.push_back(f.t[i]);
    for (; j < g.t.size(); ++j) r.t.push_back({g.t[j].first * m, P - mulp(c, g.t[j].second)});
    return r;
}

inline Poly normal_form(Poly f, const std::vector<Poly>& basis) {
    Poly rem;
    while (!f.zero()) {
        bool reduced = false;
        for (const auto& g : basis) {
            if (!g.lead().divides(f.lead())) continue;
            f = sub_mul(f, g, f.lead() / g.lead(), mulp(f.lead_c(), invp(g.lead_c())));
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.t.push_back(f.t.front());
            f.t.erase(f.t.begin());
        }
    }
    return rem;
}

inline std::vector<Poly> buchberger(std::vector<Poly> gens) {
    std::vector<Poly> g;
    for (auto& p : gens)
        if (!p.zero()) g.push_back(std::move(p));

    struct Pair { size_t i, j; Monomial lcm; int deg; };
    std::deque<Pair> pairs;
    std::set<std::pair<size_t, size_t>> done;
    auto add_pairs = [&](size_t jn) {
        for (size_t i = 0; i < jn; ++i) {
            if (g[i].lead().coprime(g[jn].lead())) continue;  // product criterion
            Monomial l = g[i].lead().lcm(g[jn].lead());
            pairs.push_back({i, jn, l, l.degree()});
        }
    };
    for (size_t j = 1; j < g.size(); ++j) add_pairs(j);

    while (!pairs.empty()) {
        size_t best = 0;
        for (size_t k = 1; k < pairs.size(); ++k)
            if (pairs[k].deg < pairs[best].deg) best = k;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + best);
        done.insert({pr.i, pr.j});

        bool chained = false;
        for (size_t k = 0; k < g.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j || !g[k].lead().divides(pr.lcm)) continue;
            auto key = [](size_t a, size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (done.count(key(pr.i, k)) && done.count(key(pr.j, k))) chained = true;
        }
        if (chained) continue;

        // (lcm/lm_i)(1/lc_i) g_i - (lcm/lm_j)(1/lc_j) g_j
        Poly spoly = sub_mul(sub_mul(Poly{}, g[pr.i], pr.lcm / g[pr.i].lead(),
                                     P - invp(g[pr.i].lead_c())),
                             g[pr.j], pr.lcm / g[pr.j].lead(), invp(g[pr.j].lead_c()));
        Poly nf = normal_form(std::move(spoly), g);
        if (nf.zero()) continue;
        g.push_back(std::move(nf));
        add_pairs(g.size() - 1);
    }
    return g;
}

// True when the quotient by the reduction of the given ideal generators is
// finite dimensional over F_P; implies finite colength over Q.
inline bool certifies_finite_colength(const std::vector<Polynomial>& gens, int nvars) {
    std::vector<Poly> in;
    for (const auto& f : gens) {
        auto r = reduce(f);
        if (!r) return false;  // bad prime: no certificate
        if (!r->zero()) in.push_back(std::move(*r));
    }
    std::vector<Poly> gb = buchberger(std::move(in));
    for (const auto& p : gb)
        if (p.lead().degree() == 0) return true;  // unit ideal, quotient is zero
    for (int i = 0; i < nvars; ++i) {
        bool found = false;
        for (const auto& p : gb) {
            const Monomial& l = p.lead();
            bool pure = l.e[i] > 0;
            for (int j = 0; j < nvars && pure; ++j)
                if (j != i && l.e[j] != 0) pure = false;
            if (pure) { found = true; break; }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace modp
}  // namespace noether
