#pragma once

#include <functional>
#include <map>
#include <vector>

#include "linalg.hpp"
#include "polynomial.hpp"

namespace noether {

// All monomials of total degree d in n variables, in descending grevlex order.
inline std::vector<Monomial> monomials_of_degree(int nvars, int d) {
    std::vector<Monomial> out;
    if (d < 0) return out;
    Monomial cur = Monomial::one(nvars);
    std::function<void(int, int)> rec = [&](int var, int rem) {
        if (var == nvars - 1) {
            cur.e[var] = rem;
            out.push_back(cur);
            cur.e[var] = 0;
            return;
        }
        for (int k = rem; k >= 0; --k) {
            cur.e[var] = k;
            rec(var + 1, rem - k);
        }
        cur.e[var] = 0;
    };
    rec(0, d);
    static const MonomialOrder glex = MonomialOrder::grevlex();
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return glex.greater(a, b); });
    return out;
}

// Coordinate chart for the degree-d slice S_d with a fixed monomial basis.
class SliceBasis {
  public:
    SliceBasis(int nvars, int d) : monomials_(monomials_of_degree(nvars, d)) {
        for (size_t i = 0; i < monomials_.size(); ++i) index_[monomials_[i]] = i;
    }

    size_t dim() const { return monomials_.size(); }
    const std::vector<Monomial>& monomials() const { return monomials_; }

    // Coordinates of a homogeneous polynomial of degree d.
    QVec coords(const Polynomial& p) const {
        QVec v(dim(), Rat(0));
        for (const auto& t : p.terms()) {
            auto it = index_.find(t.m);
            if (it == index_.end()) throw std::logic_error("polynomial outside slice");
            v[it->second] = t.c;
        }
        return v;
    }

    Polynomial from_coords(const RingDescriptor& ring, const QVec& v) const {
        std::vector<Term> terms;
        for (size_t i = 0; i < dim(); ++i)
            if (v[i] != 0) terms.push_back({monomials_[i], v[i]});
        return Polynomial(ring, std::move(terms));
    }

  private:
    std::vector<Monomial> monomials_;
    std::map<Monomial, size_t> index_;
};

struct GradedPiece {
    long dim = 0;
    std::vector<Polynomial> basis;  // reduced basis of the slice
};

// Degree-d slice of the homogeneous ideal spanned by the given generators:
// the span of all m*g with deg(m*g) = d.  Exact linear algebra, no GB needed.
inline GradedPiece graded_piece(const std::vector<Polynomial>& gens,
                                int d, const RingDescriptor& ring) {
    if (d < 0) return {};
    SliceBasis sb(ring.nvars(), d);
    std::vector<QVec> rows;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        int dg = g.degree();
        if (!g.is_homogeneous()) throw std::invalid_argument("graded_piece: inhomogeneous generator");
        if (dg > d) continue;
        for (const auto& m : monomials_of_degree(ring.nvars(), d - dg))
            rows.push_back(sb.coords(g.times_term(m, Rat(1))));
    }
    QMat mat(rows.begin(), rows.end());
    std::vector<int> piv = rref(mat);
    GradedPiece out;
    out.dim = static_cast<long>(piv.size());
    for (size_t i = 0; i < piv.size(); ++i)
        out.basis.push_back(sb.from_coords(ring, mat[i]));
    return out;
}

}  // namespace noether
