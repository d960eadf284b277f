#pragma once

#include <optional>
#include <vector>

#include "numeric.hpp"

namespace noether {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row-major

inline QMat qmat(size_t rows, size_t cols) { return QMat(rows, QVec(cols, Rat(0))); }

// In-place reduced row echelon form; returns pivot column indices.
inline std::vector<int> rref(QMat& a) {
    std::vector<int> pivots;
    if (a.empty()) return pivots;
    size_t rows = a.size(), cols = a[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t p = r;
        while (p < rows && a[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        Rat inv = Rat(1) / a[r][c];
        for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rat f = a[i][c];
            for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    return pivots;
}

inline long rank(QMat a) { return static_cast<long>(rref(a).size()); }

// Basis of the nullspace {x : A x = 0}; each returned vector has length cols.
inline std::vector<QVec> nullspace(QMat a) {
    if (a.empty()) return {};
    size_t cols = a[0].size();
    std::vector<int> pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<QVec> basis;
    for (size_t fc = 0; fc < cols; ++fc) {
        if (is_pivot[fc]) continue;
        QVec v(cols, Rat(0));
        v[fc] = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            v[pivots[pi]] = -a[pi][fc];
        basis.push_back(std::move(v));
    }
    return basis;
}

// Rank of the column span of the concatenation [A | B] given as two
// sets of column vectors of equal length.
inline long rank_of_span(const std::vector<QVec>& cols) {
    if (cols.empty()) return 0;
    QMat a(cols.size());
    for (size_t i = 0; i < cols.size(); ++i) a[i] = cols[i];  // rows = vectors
    return rank(std::move(a));
}

inline long dim_span_union(const std::vector<QVec>& u, const std::vector<QVec>& v) {
    std::vector<QVec> all = u;
    all.insert(all.end(), v.begin(), v.end());
    return rank_of_span(all);
}

// dim(span u  ∩  span v) = dim u + dim v - dim(u + v).
inline long dim_span_intersection(const std::vector<QVec>& u, const std::vector<QVec>& v) {
    return rank_of_span(u) + rank_of_span(v) - dim_span_union(u, v);
}

// Basis of {x : A x ∈ span(cols of B)}.  A is rows x n, B given as a list of
// column vectors of length rows.
inline std::vector<QVec> preimage_of_span(const QMat& a, const std::vector<QVec>& bcols) {
    size_t rows = a.size();
    size_t n = rows ? a[0].size() : 0;
    size_t k = bcols.size();
    QMat sys = qmat(rows, n + k);
    for (size_t i = 0; i < rows; ++i) {
        for (size_t j = 0; j < n; ++j) sys[i][j] = a[i][j];
        for (size_t j = 0; j < k; ++j) sys[i][n + j] = -bcols[j][i];
    }
    std::vector<QVec> ns = nullspace(std::move(sys));
    // project to the x-block and re-extract a basis
    std::vector<QVec> proj;
    proj.reserve(ns.size());
    for (auto& v : ns) proj.emplace_back(v.begin(), v.begin() + n);
    // The projection spans the preimage; reduce to an independent set.
    QMat m(proj.size());
    for (size_t i = 0; i < proj.size(); ++i) m[i] = proj[i];
    std::vector<int> piv = rref(m);
    std::vector<QVec> out;
    for (size_t i = 0; i < piv.size(); ++i) out.push_back(m[i]);
    return out;
}

// Membership of v in the span of the given vectors.
inline bool in_span(const std::vector<QVec>& span, const QVec& v) {
    std::vector<QVec> all = span;
    all.push_back(v);
    return rank_of_span(all) == rank_of_span(span);
}

}  // namespace noether
