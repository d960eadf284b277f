#pragma once

#include <deque>
#include <set>
#include <stdexcept>
#include <vector>

#include "ideal.hpp"
#include "linalg.hpp"
#include "polynomial.hpp"
#include "slices.hpp"

namespace noether {

// Twisted graded free module  ⊕_i S(-twists[i]).
struct FreeModule {
    std::vector<int> twists;

    int rank() const { return static_cast<int>(twists.size()); }
    bool operator==(const FreeModule&) const = default;

    long slice_dim(int d, int nvars) const {
        long s = 0;
        for (int a : twists) s += monomial_count(nvars, d - a);
        return s;
    }
};

// Element of a free module: one polynomial per component.
struct MVec {
    std::vector<Polynomial> c;

    static MVec zero(const RingDescriptor& ring, int rank) {
        return MVec{std::vector<Polynomial>(rank, Polynomial::zero(ring))};
    }

    int rank() const { return static_cast<int>(c.size()); }

    bool is_zero() const {
        for (const auto& p : c)
            if (!p.is_zero()) return false;
        return true;
    }

    MVec operator+(const MVec& o) const {
        MVec r = *this;
        for (int i = 0; i < rank(); ++i) r.c[i] = r.c[i] + o.c[i];
        return r;
    }
    MVec operator-(const MVec& o) const {
        MVec r = *this;
        for (int i = 0; i < rank(); ++i) r.c[i] = r.c[i] - o.c[i];
        return r;
    }
    MVec times_term(const Monomial& m, const Rat& q) const {
        MVec r = *this;
        for (auto& p : r.c) p = p.times_term(m, q);
        return r;
    }
    MVec operator*(const Rat& q) const {
        MVec r = *this;
        for (auto& p : r.c) p = p * q;
        return r;
    }

    bool operator==(const MVec& o) const { return c == o.c; }

    // Scale to integer content 1, positive leading sign of the first
    // nonzero component.
    MVec primitive_part() const {
        Int den(1), g(0);
        for (const auto& p : c)
            for (const auto& t : p.terms())
                mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den().get_mpz_t());
        for (const auto& p : c)
            for (const auto& t : p.terms()) {
                Int num = t.c.get_num() * (den / t.c.get_den());
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
            }
        if (g == 0) return *this;
        Rat s = Rat(den) / Rat(g);
        for (const auto& p : c)
            if (!p.is_zero()) {
                if (p.terms().front().c * s < 0) s = -s;
                break;
            }
        return *this * s;
    }

    // Homogeneous as an element of the twisted module: every component i
    // homogeneous of degree deg - twists[i].
    bool is_homogeneous(const FreeModule& f) const {
        int deg = degree_in(f);
        for (int i = 0; i < rank(); ++i) {
            if (c[i].is_zero()) continue;
            if (!c[i].is_homogeneous() || c[i].degree() + f.twists[i] != deg) return false;
        }
        return true;
    }

    // Degree as a homogeneous module element (twist-corrected); -1 when zero.
    int degree_in(const FreeModule& f) const {
        for (int i = 0; i < rank(); ++i)
            if (!c[i].is_zero()) return c[i].degree() + f.twists[i];
        return -1;
    }
};

struct ModTerm {
    int comp = -1;
    Monomial m;
    Rat coeff;
};

// Module monomial order: block elimination first (lower block id wins),
// then twist-corrected degree, then grevlex, then position.
struct ModuleOrder {
    std::vector<int> twists;
    std::vector<int> block;  // same length as twists; 0 = eliminated block

    static ModuleOrder plain(const FreeModule& f) {
        return ModuleOrder{f.twists, std::vector<int>(f.twists.size(), 0)};
    }

    // cmp > 0 means (ca,ma) is larger.
    int cmp(int ca, const Monomial& ma, int cb, const Monomial& mb) const {
        if (block[ca] != block[cb]) return block[ca] < block[cb] ? 1 : -1;
        int da = ma.degree() + twists[ca];
        int db = mb.degree() + twists[cb];
        if (da != db) return da > db ? 1 : -1;
        static const MonomialOrder glex = MonomialOrder::grevlex();
        int c = glex.cmp(ma, mb);
        if (c != 0) return c;
        if (ca != cb) return ca < cb ? 1 : -1;
        return 0;
    }
};

inline ModTerm module_lead(const MVec& v, const ModuleOrder& o) {
    ModTerm best;
    for (int i = 0; i < v.rank(); ++i) {
        if (v.c[i].is_zero()) continue;
        const Term& t = v.c[i].terms().front();  // grevlex lead of the component
        if (best.comp < 0 || o.cmp(i, t.m, best.comp, best.m) > 0)
            best = ModTerm{i, t.m, t.c};
    }
    return best;
}

// Full normal form of a module element against a (partial) basis.
inline MVec module_normal_form(const MVec& f, const std::vector<MVec>& basis,
                               const std::vector<ModTerm>& leads, const ModuleOrder& o) {
    const RingDescriptor& ring = f.c.at(0).ring();
    MVec p = f;
    MVec r = MVec::zero(ring, f.rank());
    while (!p.is_zero()) {
        ModTerm lt = module_lead(p, o);
        bool reduced = false;
        for (size_t i = 0; i < basis.size(); ++i) {
            if (leads[i].comp != lt.comp || !leads[i].m.divides(lt.m)) continue;
            p = p - basis[i].times_term(lt.m / leads[i].m, lt.coeff / leads[i].coeff);
            reduced = true;
            break;
        }
        if (!reduced) {
            Polynomial t = Polynomial::monomial(ring, lt.m, lt.coeff);
            r.c[lt.comp] = r.c[lt.comp] + t;
            p.c[lt.comp] = p.c[lt.comp] - t;
        }
    }
    return r;
}

// Buchberger for submodules of graded free modules.  S-pairs only between
// elements whose leads share a component; chain criterion applied.
inline std::vector<MVec> module_groebner(std::vector<MVec> gens, const ModuleOrder& order) {
    std::vector<MVec> g;
    std::vector<ModTerm> leads;
    auto push = [&](MVec v) {
        v = v.primitive_part();
        leads.push_back(module_lead(v, order));
        g.push_back(std::move(v));
    };
    for (auto& v : gens)
        if (!v.is_zero()) push(std::move(v));

    struct Pair { size_t i, j; Monomial lcm; int comp; int deg; };
    auto make_pair = [&](size_t i, size_t j) -> std::optional<Pair> {
        if (leads[i].comp != leads[j].comp) return std::nullopt;
        Monomial l = leads[i].m.lcm(leads[j].m);
        return Pair{i, j, l, leads[i].comp, l.degree()};
    };
    std::deque<Pair> pairs;
    std::set<std::pair<size_t, size_t>> done;
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = i + 1; j < g.size(); ++j)
            if (auto p = make_pair(i, j)) pairs.push_back(*p);

    while (!pairs.empty()) {
        size_t best = 0;
        for (size_t k = 1; k < pairs.size(); ++k)
            if (pairs[k].deg < pairs[best].deg) best = k;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + best);
        done.insert({pr.i, pr.j});

        bool chained = false;
        for (size_t k = 0; k < g.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (leads[k].comp != pr.comp || !leads[k].m.divides(pr.lcm)) continue;
            auto key = [](size_t a, size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (done.count(key(pr.i, k)) && done.count(key(pr.j, k))) chained = true;
        }
        if (chained) continue;

        MVec s = g[pr.i].times_term(pr.lcm / leads[pr.i].m, Rat(1) / leads[pr.i].coeff) -
                 g[pr.j].times_term(pr.lcm / leads[pr.j].m, Rat(1) / leads[pr.j].coeff);
        s = module_normal_form(s, g, leads, order);
        if (s.is_zero()) continue;
        push(std::move(s));
        for (size_t i = 0; i + 1 < g.size(); ++i)
            if (auto p = make_pair(i, g.size() - 1)) pairs.push_back(*p);
    }
    return g;
}

// Degree-compatible map of graded free modules, given by a matrix of
// homogeneous polynomials: entries[i][j] has degree
// source.twists[j] - target.twists[i] when nonzero.
struct GradedMap {
    RingDescriptor ring;
    FreeModule source, target;
    std::vector<std::vector<Polynomial>> entries;  // target.rank x source.rank

    static GradedMap zero(const RingDescriptor& r, FreeModule src, FreeModule tgt) {
        GradedMap m{r, std::move(src), std::move(tgt), {}};
        m.entries.assign(m.target.rank(),
                         std::vector<Polynomial>(m.source.rank(), Polynomial::zero(r)));
        return m;
    }

    bool degree_compatible() const {
        for (int i = 0; i < target.rank(); ++i)
            for (int j = 0; j < source.rank(); ++j) {
                const Polynomial& p = entries[i][j];
                if (p.is_zero()) continue;
                if (!p.is_homogeneous()) return false;
                if (p.degree() != source.twists[j] - target.twists[i]) return false;
            }
        return true;
    }

    MVec column(int j) const {
        MVec v = MVec::zero(ring, target.rank());
        for (int i = 0; i < target.rank(); ++i) v.c[i] = entries[i][j];
        return v;
    }

    MVec apply(const MVec& v) const {
        MVec r = MVec::zero(ring, target.rank());
        for (int j = 0; j < source.rank(); ++j) {
            if (v.c[j].is_zero()) continue;
            for (int i = 0; i < target.rank(); ++i)
                r.c[i] = r.c[i] + entries[i][j] * v.c[j];
        }
        return r;
    }

    bool is_zero_map() const {
        for (const auto& row : entries)
            for (const auto& p : row)
                if (!p.is_zero()) return false;
        return true;
    }

    // Matrix of the degree-d slice map (monomial bases on both sides).
    QMat slice_matrix(int d) const {
        std::vector<SliceBasis> tb;
        std::vector<long> toff;
        long trows = 0;
        for (int i = 0; i < target.rank(); ++i) {
            tb.emplace_back(ring.nvars(), d - target.twists[i]);
            toff.push_back(trows);
            trows += tb.back().dim();
        }
        long cols = 0;
        std::vector<std::pair<int, Monomial>> src_basis;
        for (int j = 0; j < source.rank(); ++j)
            for (const auto& m : monomials_of_degree(ring.nvars(), d - source.twists[j])) {
                src_basis.push_back({j, m});
                ++cols;
            }
        QMat a = qmat(trows, cols);
        for (long cidx = 0; cidx < cols; ++cidx) {
            auto [j, m] = src_basis[cidx];
            for (int i = 0; i < target.rank(); ++i) {
                const Polynomial& e = entries[i][j];
                if (e.is_zero()) continue;
                Polynomial img = e.times_term(m, Rat(1));
                QVec coords = tb[i].coords(img);
                for (size_t k = 0; k < coords.size(); ++k)
                    if (coords[k] != 0) a[toff[i] + k][cidx] = coords[k];
            }
        }
        return a;
    }

    long slice_rank(int d) const {
        QMat m = slice_matrix(d);
        return m.empty() ? 0 : rank(std::move(m));
    }

    GradedMap transpose_dual() const {
        // Hom(-, S): swap and negate twists, transpose entries.
        FreeModule src{std::vector<int>()}, tgt{std::vector<int>()};
        for (int a : target.twists) src.twists.push_back(-a);
        for (int a : source.twists) tgt.twists.push_back(-a);
        GradedMap m = zero(ring, src, tgt);
        for (int i = 0; i < target.rank(); ++i)
            for (int j = 0; j < source.rank(); ++j) m.entries[j][i] = entries[i][j];
        return m;
    }
};

// Generators of ker(phi) for a map of graded free modules, via a module GB
// with the target block eliminated.
inline std::vector<MVec> free_kernel(const GradedMap& phi) {
    if (!phi.degree_compatible())
        throw std::invalid_argument("free_kernel: map not degree-compatible");
    int g = phi.target.rank(), f = phi.source.rank();
    if (f == 0) return {};
    ModuleOrder order;
    order.twists = phi.target.twists;
    order.twists.insert(order.twists.end(), phi.source.twists.begin(), phi.source.twists.end());
    order.block.assign(g, 0);
    order.block.insert(order.block.end(), f, 1);

    std::vector<MVec> gens;
    for (int j = 0; j < f; ++j) {
        MVec v = MVec::zero(phi.ring, g + f);
        for (int i = 0; i < g; ++i) v.c[i] = phi.entries[i][j];
        v.c[g + j] = Polynomial::constant(phi.ring, 1);
        gens.push_back(std::move(v));
    }
    std::vector<MVec> gb = module_groebner(std::move(gens), order);
    std::vector<MVec> kernel;
    for (const auto& v : gb) {
        bool top_zero = true;
        for (int i = 0; i < g && top_zero; ++i)
            if (!v.c[i].is_zero()) top_zero = false;
        if (!top_zero) continue;
        MVec k = MVec::zero(phi.ring, f);
        for (int j = 0; j < f; ++j) k.c[j] = v.c[g + j];
        if (!k.is_zero()) kernel.push_back(std::move(k));
    }
    return kernel;
}

// Syzygies of a list of polynomials (kernel of ⊕ S(-deg g_i) -> S).
inline std::vector<MVec> syzygies(const std::vector<Polynomial>& gens,
                                  const RingDescriptor& ring) {
    FreeModule src{{}}, tgt{{0}};
    for (const auto& p : gens) src.twists.push_back(p.degree());
    GradedMap phi = GradedMap::zero(ring, src, tgt);
    for (size_t j = 0; j < gens.size(); ++j) phi.entries[0][j] = gens[j];
    return free_kernel(phi);
}

}  // namespace noether
