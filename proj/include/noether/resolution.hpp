#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>
#include <vector>

#include "module.hpp"

namespace noether {

// Finitely presented graded module  coker(rel : F1 -> F0).
// A free module has an empty relation matrix (source rank 0).
struct GradedModulePresentation {
    RingDescriptor ring;
    FreeModule f0;
    GradedMap rel;  // rel.target == f0

    static GradedModulePresentation free_module(const RingDescriptor& r, FreeModule f) {
        GradedMap m = GradedMap::zero(r, FreeModule{{}}, f);
        return {r, std::move(f), std::move(m)};
    }

    // S/I with its natural presentation by the generators of I.
    static GradedModulePresentation quotient_ring(const Ideal& I) {
        FreeModule f0{{0}};
        FreeModule f1{{}};
        for (const auto& g : I.generators()) f1.twists.push_back(g.degree());
        GradedMap rel = GradedMap::zero(I.ring(), f1, f0);
        for (size_t j = 0; j < I.generators().size(); ++j) rel.entries[0][j] = I.generators()[j];
        return {I.ring(), f0, std::move(rel)};
    }

    // The ideal I itself, presented by its generators and their syzygies.
    static GradedModulePresentation ideal_module(const Ideal& I) {
        FreeModule f0{{}};
        for (const auto& g : I.generators()) f0.twists.push_back(g.degree());
        std::vector<MVec> syz = syzygies(I.generators(), I.ring());
        FreeModule f1{{}};
        GradedMap rel = GradedMap::zero(I.ring(), FreeModule{{}}, f0);
        for (const auto& s : syz) {
            f1.twists.push_back(s.degree_in(f0));
            for (int i = 0; i < f0.rank(); ++i) rel.entries[i].push_back(s.c[i]);
        }
        rel.source = f1;
        return {I.ring(), f0, std::move(rel)};
    }

    GradedModulePresentation twist(int a) const {
        GradedModulePresentation m = *this;
        for (auto& t : m.f0.twists) t += a;
        for (auto& t : m.rel.source.twists) t += a;
        for (auto& t : m.rel.target.twists) t += a;
        return m;
    }

    long slice_dim(int d) const {
        return f0.slice_dim(d, ring.nvars()) - rel.slice_rank(d);
    }
};

struct BettiTable {
    // betti[i] = multiset of twists of the i-th free module.
    std::vector<std::vector<int>> twists;

    int length() const { return static_cast<int>(twists.size()) - 1; }

    int regularity() const {
        int r = std::numeric_limits<int>::min();
        for (size_t i = 0; i < twists.size(); ++i)
            for (int a : twists[i]) r = std::max(r, a - static_cast<int>(i));
        return r;
    }

    std::map<std::pair<int, int>, int> graded_betti() const {
        std::map<std::pair<int, int>, int> b;
        for (size_t i = 0; i < twists.size(); ++i)
            for (int a : twists[i]) b[{static_cast<int>(i), a}] += 1;
        return b;
    }
};

// Chain  F_len -> ... -> F_1 -> F_0  with diffs[i] : F_{i+1} -> F_i.
struct FreeResolution {
    RingDescriptor ring;
    FreeModule f0;
    std::vector<GradedMap> diffs;

    int length() const { return static_cast<int>(diffs.size()); }

    const FreeModule& module_at(int i) const {
        return i == 0 ? f0 : diffs[i - 1].source;
    }

    BettiTable betti() const {
        BettiTable b;
        b.twists.push_back(f0.twists);
        for (const auto& d : diffs) b.twists.push_back(d.source.twists);
        while (b.twists.size() > 1 && b.twists.back().empty()) b.twists.pop_back();
        return b;
    }

    int regularity() const { return betti().regularity(); }

    bool is_complex() const {
        for (size_t i = 0; i + 1 < diffs.size(); ++i)
            for (int j = 0; j < diffs[i + 1].source.rank(); ++j)
                if (!diffs[i].apply(diffs[i + 1].column(j)).is_zero()) return false;
        return true;
    }
};

namespace detail {

inline void erase_row(GradedMap& m, int r) {
    m.entries.erase(m.entries.begin() + r);
    m.target.twists.erase(m.target.twists.begin() + r);
}

inline void erase_col(GradedMap& m, int c) {
    for (auto& row : m.entries) row.erase(row.begin() + c);
    m.source.twists.erase(m.source.twists.begin() + c);
}

// Remove one unit entry at (r, c) of diffs[t] via a change of basis.  The
// pivot differential takes a Schur complement; the adjacent differentials
// only lose a row / column (their affected row and column become zero after
// the same change of basis, since the composites vanish).
inline void prune_unit(FreeResolution& res, size_t t, int r, int c) {
    GradedMap& d = res.diffs[t];
    Rat u = d.entries[r][c].constant_value();
    for (int a = 0; a < d.target.rank(); ++a) {
        if (a == r) continue;
        for (int b = 0; b < d.source.rank(); ++b) {
            if (b == c) continue;
            d.entries[a][b] =
                d.entries[a][b] - d.entries[a][c] * d.entries[r][b] * (Rat(1) / u);
        }
    }
    erase_row(d, r);
    erase_col(d, c);
    if (t == 0) {
        res.f0 = d.target;
    } else {
        erase_col(res.diffs[t - 1], r);
        res.diffs[t - 1].source = res.diffs[t].target;
    }
    if (t + 1 < res.diffs.size()) {
        erase_row(res.diffs[t + 1], c);
        res.diffs[t + 1].target = res.diffs[t].source;
    }
}

inline bool minimize_once(FreeResolution& res) {
    for (size_t t = 0; t < res.diffs.size(); ++t) {
        GradedMap& d = res.diffs[t];
        for (int r = 0; r < d.target.rank(); ++r)
            for (int c = 0; c < d.source.rank(); ++c) {
                const Polynomial& p = d.entries[r][c];
                if (!p.is_zero() && p.is_constant()) {
                    prune_unit(res, t, r, c);
                    return true;
                }
            }
    }
    return false;
}

}  // namespace detail

// Minimal free resolution of the presented module, computed by iterated
// kernels of free maps and then pruned of unit entries.
inline FreeResolution minimal_free_resolution(const GradedModulePresentation& m,
                                              int max_length = 8) {
    FreeResolution res{m.ring, m.f0, {}};
    if (!m.rel.is_zero_map()) {
        res.diffs.push_back(m.rel);
        while (static_cast<int>(res.diffs.size()) < max_length) {
            std::vector<MVec> ker = free_kernel(res.diffs.back());
            if (ker.empty()) break;
            const FreeModule& src = res.diffs.back().source;
            FreeModule next{{}};
            GradedMap d = GradedMap::zero(m.ring, FreeModule{{}}, src);
            for (const auto& k : ker) {
                next.twists.push_back(k.degree_in(src));
                for (int i = 0; i < src.rank(); ++i) d.entries[i].push_back(k.c[i]);
            }
            d.source = next;
            res.diffs.push_back(std::move(d));
        }
        if (static_cast<int>(res.diffs.size()) == max_length &&
            !free_kernel(res.diffs.back()).empty())
            throw std::runtime_error("resolution did not terminate within max_length");
    }
    while (detail::minimize_once(res)) {}
    while (!res.diffs.empty() && res.diffs.back().source.rank() == 0) res.diffs.pop_back();
    return res;
}

// Presentation of (gens + J)/J as a graded S-module.
inline GradedModulePresentation subquotient_module(const std::vector<Polynomial>& gens,
                                                   const Ideal& J) {
    const RingDescriptor& R = J.ring();
    FreeModule f0{{}};
    for (const auto& g : gens) f0.twists.push_back(g.degree());
    int r = f0.rank();
    FreeModule big{{}};
    big.twists = f0.twists;
    for (const auto& h : J.generators()) big.twists.push_back(h.degree());
    GradedMap phi = GradedMap::zero(R, big, FreeModule{{0}});
    for (int j = 0; j < r; ++j) phi.entries[0][j] = gens[j];
    for (size_t j = 0; j < J.generators().size(); ++j)
        phi.entries[0][r + j] = J.generators()[j];
    std::vector<MVec> ker = free_kernel(phi);
    FreeModule f1{{}};
    GradedMap rel = GradedMap::zero(R, FreeModule{{}}, f0);
    for (const auto& v : ker) {
        MVec c = MVec::zero(R, r);
        for (int j = 0; j < r; ++j) c.c[j] = v.c[j];
        if (c.is_zero()) continue;
        f1.twists.push_back(c.degree_in(f0));
        for (int i = 0; i < r; ++i) rel.entries[i].push_back(c.c[i]);
    }
    rel.source = f1;
    return {R, f0, std::move(rel)};
}

inline GradedModulePresentation direct_sum(
    const std::vector<GradedModulePresentation>& parts, const RingDescriptor& R) {
    FreeModule f0{{}}, f1{{}};
    for (const auto& p : parts) {
        f0.twists.insert(f0.twists.end(), p.f0.twists.begin(), p.f0.twists.end());
        f1.twists.insert(f1.twists.end(), p.rel.source.twists.begin(),
                         p.rel.source.twists.end());
    }
    GradedMap rel = GradedMap::zero(R, f1, f0);
    int ro = 0, co = 0;
    for (const auto& p : parts) {
        for (int i = 0; i < p.f0.rank(); ++i)
            for (int j = 0; j < p.rel.source.rank(); ++j)
                rel.entries[ro + i][co + j] = p.rel.entries[i][j];
        ro += p.f0.rank();
        co += p.rel.source.rank();
    }
    return {R, f0, std::move(rel)};
}

inline GradedModulePresentation kernel_presentation(const GradedMap& psi,
                                                    const GradedModulePresentation& m,
                                                    const GradedModulePresentation& n,
                                                    std::vector<MVec>* gens_out = nullptr);

// Graded Hom(M, N) as a presented module:
//   Hom(M, N) = ker( Hom(F0, N) -> Hom(F1, N) ),  phi |-> phi o rel_M,
// with Hom(S(-a), N) = N(a).
inline GradedModulePresentation hom_module(const GradedModulePresentation& m,
                                           const GradedModulePresentation& n) {
    const RingDescriptor& R = m.ring;
    std::vector<GradedModulePresentation> p0_parts, p1_parts;
    for (int a : m.f0.twists) p0_parts.push_back(n.twist(-a));
    for (int b : m.rel.source.twists) p1_parts.push_back(n.twist(-b));
    GradedModulePresentation p0 = direct_sum(p0_parts, R);
    if (p1_parts.empty()) return p0;
    GradedModulePresentation p1 = direct_sum(p1_parts, R);

    int nr = n.f0.rank();
    GradedMap psi = GradedMap::zero(R, p0.f0, p1.f0);
    for (int s = 0; s < m.rel.source.rank(); ++s)
        for (int i = 0; i < m.f0.rank(); ++i) {
            const Polynomial& e = m.rel.entries[i][s];
            if (e.is_zero()) continue;
            for (int c = 0; c < nr; ++c) psi.entries[s * nr + c][i * nr + c] = e;
        }
    return kernel_presentation(psi, p0, p1);
}

// dim_k Ext^i(M, S) from a minimal free resolution of M, by slice ranks of
// the dualized complex  Hom(F_i, S).
inline long ext_dim(const FreeResolution& res, int i, int k) {
    if (i < 0 || i > res.length()) return 0;
    auto dual_rank = [&](int t) {  // rank of Hom(F_{t-1},S)_k -> Hom(F_t,S)_k
        if (t < 1 || t > res.length()) return 0L;
        return res.diffs[t - 1].transpose_dual().slice_rank(k);
    };
    long dim_i = 0;
    for (int a : res.module_at(i).twists) dim_i += monomial_count(res.ring.nvars(), k + a);
    return dim_i - dual_rank(i) - dual_rank(i + 1);
}

// dim_k H^j_m(M) by graded local duality over S = k[x0..x_{n-1}]:
//   H^j_m(M)_k  =  Ext^{n-j}(M, S)_{-k-n}.
inline long local_cohomology_dim(const FreeResolution& res, int j, int k) {
    int n = res.ring.nvars();
    return ext_dim(res, n - j, -k - n);
}

// dim H^i(P^{n-1}, sheaf(M)(k)) from the truncation exact sequence
//   0 -> H^0_m(M)_k -> M_k -> H^0(sheaf(k)) -> H^1_m(M)_k -> 0
// and H^i(sheaf(k)) = H^{i+1}_m(M)_k for i >= 1.
inline long sheaf_cohomology_dim(const GradedModulePresentation& m,
                                 const FreeResolution& res, int i, int k) {
    if (i < 0) throw std::invalid_argument("negative cohomology index");
    if (i == 0)
        return m.slice_dim(k) - local_cohomology_dim(res, 0, k) +
               local_cohomology_dim(res, 1, k);
    return local_cohomology_dim(res, i + 1, k);
}

// Castelnuovo-Mumford regularity of sheaf(M): least r with
// H^i(sheaf(r - i)) = 0 for all i >= 1 (vanishing persists above r).
inline int sheaf_regularity(const GradedModulePresentation& m, const FreeResolution& res,
                            int lo = -20, int hi = 40) {
    int n = m.ring.nvars();
    auto ok = [&](int r) {
        for (int i = 1; i <= n - 1; ++i)
            if (sheaf_cohomology_dim(m, res, i, r - i) != 0) return false;
        return true;
    };
    // The Betti regularity bounds the sheaf regularity, so vanishing holds
    // there; walking down keeps every Ext slice at small degree.  (A forward
    // scan from lo hits huge dual slices on modules with big resolutions.)
    int r = std::min(std::max(res.regularity(), lo), hi);
    while (r <= hi && !ok(r)) ++r;
    if (r > hi) throw std::runtime_error("sheaf regularity not found in search window");
    while (r > lo && ok(r - 1)) --r;
    return r;
}

// dim_k Hom(M, N) for presented modules: maps phi : F0(M) -> N with
// phi(rel_M) = 0 in N, modulo the maps that are zero into N.
// Unknowns are the coordinates of each phi(e_i) in the ambient slice of
// F0(N); the relation conditions land in im(rel_N) slices.
struct HomSlice {
    // block structure of the unknown vector
    std::vector<long> offset;                 // per generator of F0(M)
    std::vector<std::vector<Monomial>> basis; // ambient monomials per (gen, comp of F0(N))
    std::vector<QVec> solutions;              // basis incl. the trivial maps
    long trivial_dim = 0;

    long dim() const { return static_cast<long>(solutions.size()) - trivial_dim; }
};

inline HomSlice hom_slice(const GradedModulePresentation& m,
                          const GradedModulePresentation& n, int k) {
    const RingDescriptor& R = m.ring;
    int nv = R.nvars();

    // Unknown layout: for each generator i of F0(M) (twist a_i), the image
    // lives in F0(N)_{k + a_i}; coordinates indexed by (component, monomial).
    HomSlice hs;
    long total = 0;
    struct Block { int gen; int deg; long off; std::vector<SliceBasis> sb; };
    std::vector<Block> blocks;
    for (int i = 0; i < m.f0.rank(); ++i) {
        Block b{i, k + m.f0.twists[i], total, {}};
        hs.offset.push_back(total);
        for (int c = 0; c < n.f0.rank(); ++c) {
            b.sb.emplace_back(nv, b.deg - n.f0.twists[c]);
            total += b.sb.back().dim();
        }
        blocks.push_back(std::move(b));
    }

    auto vec_coords = [&](const Block& b, const MVec& v) {
        QVec out;
        for (int c = 0; c < n.f0.rank(); ++c) {
            QVec part = b.sb[c].coords(v.c[c]);
            out.insert(out.end(), part.begin(), part.end());
        }
        return out;
    };

    // Conditions: for each relation column s of M (degree d_s as an element
    // of F0(M)),  sum_i rel[i][s] * phi(e_i)  must lie in im(rel_N) at degree
    // k + d_s.  Stack all conditions; the allowed span is block diagonal.
    long cond_rows = 0;
    std::vector<long> cond_off;
    std::vector<std::vector<SliceBasis>> cond_sb;
    for (int s = 0; s < m.rel.source.rank(); ++s) {
        int d = k + m.rel.source.twists[s];
        cond_off.push_back(cond_rows);
        std::vector<SliceBasis> sb;
        for (int c = 0; c < n.f0.rank(); ++c) {
            sb.emplace_back(nv, d - n.f0.twists[c]);
            cond_rows += sb.back().dim();
        }
        cond_sb.push_back(std::move(sb));
    }

    QMat a = qmat(cond_rows, total);
    for (int s = 0; s < m.rel.source.rank(); ++s) {
        for (int i = 0; i < m.f0.rank(); ++i) {
            const Polynomial& r = m.rel.entries[i][s];
            if (r.is_zero()) continue;
            const Block& b = blocks[i];
            long col = b.off;
            for (int c = 0; c < n.f0.rank(); ++c) {
                for (const auto& mono : b.sb[c].monomials()) {
                    Polynomial img = r.times_term(mono, Rat(1));
                    QVec coords = cond_sb[s][c].coords(img);
                    long row0 = cond_off[s];
                    for (int cc = 0; cc < c; ++cc) row0 += cond_sb[s][cc].dim();
                    for (size_t rr = 0; rr < coords.size(); ++rr)
                        if (coords[rr] != 0) a[row0 + rr][col] = coords[rr];
                    ++col;
                }
            }
        }
    }

    // Allowed targets: im(rel_N) in each condition block.
    std::vector<QVec> allowed;
    for (int s = 0; s < m.rel.source.rank(); ++s) {
        int d = k + m.rel.source.twists[s];
        for (int j = 0; j < n.rel.source.rank(); ++j) {
            MVec colv = n.rel.column(j);
            int cd = d - n.rel.source.twists[j];
            for (const auto& mono : monomials_of_degree(nv, cd)) {
                QVec full(cond_rows, Rat(0));
                long row0 = cond_off[s];
                for (int c = 0; c < n.f0.rank(); ++c) {
                    QVec part = cond_sb[s][c].coords(colv.c[c].times_term(mono, Rat(1)));
                    for (size_t rr = 0; rr < part.size(); ++rr) full[row0 + rr] = part[rr];
                    row0 += cond_sb[s][c].dim();
                }
                allowed.push_back(std::move(full));
            }
        }
    }

    if (cond_rows == 0) {
        // no relations in M: every tuple of images is a map
        hs.solutions.clear();
        for (long i = 0; i < total; ++i) {
            QVec v(total, Rat(0));
            v[i] = 1;
            hs.solutions.push_back(std::move(v));
        }
    } else {
        hs.solutions = preimage_of_span(a, allowed);
    }

    // Trivial maps: each phi(e_i) separately in im(rel_N).
    long triv = 0;
    for (const Block& b : blocks) {
        std::vector<QVec> gens;
        for (int j = 0; j < n.rel.source.rank(); ++j) {
            MVec colv = n.rel.column(j);
            int cd = b.deg - n.rel.source.twists[j];
            for (const auto& mono : monomials_of_degree(nv, cd))
                gens.push_back(vec_coords(b, colv.times_term(mono, Rat(1))));
        }
        triv += rank_of_span(gens);
    }
    hs.trivial_dim = triv;
    for (const Block& b : blocks)
        hs.basis.push_back([&] {
            std::vector<Monomial> ms;
            for (int c = 0; c < n.f0.rank(); ++c)
                for (const auto& mono : b.sb[c].monomials()) ms.push_back(mono);
            return ms;
        }());
    return hs;
}

inline long hom_dim(const GradedModulePresentation& m,
                    const GradedModulePresentation& n, int k) {
    return hom_slice(m, n, k).dim();
}

// Presentation of ker(psi : M -> N) where psi is given on generators by a
// degree-compatible matrix F0(M) <- nothing... psi.entries : F0(N) x F0(M).
// Generators: projections of ker[psi | rel_N]; relations: syzygies of those
// generators modulo rel_M.
inline GradedModulePresentation kernel_presentation(const GradedMap& psi,
                                                    const GradedModulePresentation& m,
                                                    const GradedModulePresentation& n,
                                                    std::vector<MVec>* gens_out) {
    if (!(psi.source == m.f0) || !(psi.target == n.f0))
        throw std::invalid_argument("kernel_presentation: shape mismatch");
    const RingDescriptor& R = m.ring;

    // Step 1: a in F0(M) with psi(a) in im(rel_N).
    FreeModule big{{}};
    big.twists = psi.source.twists;
    big.twists.insert(big.twists.end(), n.rel.source.twists.begin(),
                      n.rel.source.twists.end());
    GradedMap combo = GradedMap::zero(R, big, n.f0);
    for (int i = 0; i < n.f0.rank(); ++i) {
        for (int j = 0; j < m.f0.rank(); ++j) combo.entries[i][j] = psi.entries[i][j];
        for (int j = 0; j < n.rel.source.rank(); ++j)
            combo.entries[i][m.f0.rank() + j] = n.rel.entries[i][j];
    }
    std::vector<MVec> ker = free_kernel(combo);
    std::vector<MVec> kgens;
    for (const auto& v : ker) {
        MVec a = MVec::zero(R, m.f0.rank());
        for (int j = 0; j < m.f0.rank(); ++j) a.c[j] = v.c[j];
        if (!a.is_zero()) kgens.push_back(std::move(a));
    }
    // Also every relation of M lies in the kernel's generator lattice; they
    // are needed so the presentation below captures elements that are zero
    // in M.  (They may be redundant; pruning is left to later minimization.)

    if (gens_out) *gens_out = kgens;

    FreeModule kf0{{}};
    for (const auto& g : kgens) kf0.twists.push_back(g.degree_in(m.f0));

    // Step 2: relations among kgens modulo rel_M:  c with K c in im(rel_M).
    FreeModule big2{{}};
    big2.twists = kf0.twists;
    big2.twists.insert(big2.twists.end(), m.rel.source.twists.begin(),
                       m.rel.source.twists.end());
    GradedMap combo2 = GradedMap::zero(R, big2, m.f0);
    for (int i = 0; i < m.f0.rank(); ++i) {
        for (size_t j = 0; j < kgens.size(); ++j) combo2.entries[i][j] = kgens[j].c[i];
        for (int j = 0; j < m.rel.source.rank(); ++j)
            combo2.entries[i][kgens.size() + j] = m.rel.entries[i][j];
    }
    std::vector<MVec> rels = free_kernel(combo2);
    FreeModule kf1{{}};
    GradedMap krel = GradedMap::zero(R, FreeModule{{}}, kf0);
    for (const auto& v : rels) {
        MVec c = MVec::zero(R, kf0.rank());
        for (int j = 0; j < kf0.rank(); ++j) c.c[j] = v.c[j];
        if (c.is_zero()) continue;
        kf1.twists.push_back(c.degree_in(kf0));
        for (int i = 0; i < kf0.rank(); ++i) krel.entries[i].push_back(c.c[i]);
    }
    krel.source = kf1;
    return {R, kf0, std::move(krel)};
}

}  // namespace noether
