#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace noether {

// Descriptor of a standard-graded polynomial ring k[x0..x_{n-1}],
// every variable of degree 1.
struct RingDescriptor {
    std::vector<std::string> vars;

    int nvars() const { return static_cast<int>(vars.size()); }

    bool operator==(const RingDescriptor&) const = default;

    // The coordinate ring of projective 3-space, variables x0..x3.
    static const RingDescriptor& p3() {
        static const RingDescriptor r{{"x0", "x1", "x2", "x3"}};
        return r;
    }

    static RingDescriptor standard(int n) {
        RingDescriptor r;
        for (int i = 0; i < n; ++i) r.vars.push_back("x" + std::to_string(i));
        return r;
    }

    // Same ring with one auxiliary variable prepended (used for elimination).
    RingDescriptor with_aux(const std::string& name = "t@") const {
        RingDescriptor r;
        r.vars.reserve(vars.size() + 1);
        r.vars.push_back(name);
        r.vars.insert(r.vars.end(), vars.begin(), vars.end());
        return r;
    }

    int var_index(const std::string& name) const {
        for (int i = 0; i < nvars(); ++i)
            if (vars[i] == name) return i;
        return -1;
    }
};

struct Monomial {
    std::vector<std::int32_t> e;

    static Monomial one(int nvars) { return Monomial{std::vector<std::int32_t>(nvars, 0)}; }

    static Monomial var(int i, int nvars, int exp = 1) {
        Monomial m = one(nvars);
        m.e[i] = exp;
        return m;
    }

    int nvars() const { return static_cast<int>(e.size()); }

    int degree() const { return std::accumulate(e.begin(), e.end(), 0); }

    bool is_one() const {
        return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    }

    bool divides(const Monomial& m) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > m.e[i]) return false;
        return true;
    }

    Monomial operator*(const Monomial& m) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] += m.e[i];
        return r;
    }

    // Exact quotient; caller guarantees divisibility.
    Monomial operator/(const Monomial& m) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] -= m.e[i];
        return r;
    }

    Monomial lcm(const Monomial& m) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] = std::max(r.e[i], m.e[i]);
        return r;
    }

    Monomial gcd(const Monomial& m) const {
        Monomial r = *this;
        for (size_t i = 0; i < e.size(); ++i) r.e[i] = std::min(r.e[i], m.e[i]);
        return r;
    }

    bool coprime(const Monomial& m) const {
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] > 0 && m.e[i] > 0) return false;
        return true;
    }

    auto operator<=>(const Monomial&) const = default;
};

enum class OrderKind { grevlex, lex, elim1 };

// Total, multiplicative monomial orders. elim1 is the block order that
// eliminates the first variable: compare its exponent first, break ties
// by grevlex on the remaining variables.
struct MonomialOrder {
    OrderKind kind = OrderKind::grevlex;

    static MonomialOrder grevlex() { return {OrderKind::grevlex}; }
    static MonomialOrder lex() { return {OrderKind::lex}; }
    static MonomialOrder elim_first() { return {OrderKind::elim1}; }

    // Returns >0 if a > b, 0 if equal, <0 if a < b.
    int cmp(const Monomial& a, const Monomial& b) const {
        switch (kind) {
            case OrderKind::grevlex:
                return cmp_grevlex(a.e.data(), b.e.data(), a.nvars());
            case OrderKind::lex:
                for (int i = 0; i < a.nvars(); ++i)
                    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
                return 0;
            case OrderKind::elim1:
                if (a.e[0] != b.e[0]) return a.e[0] > b.e[0] ? 1 : -1;
                return cmp_grevlex(a.e.data() + 1, b.e.data() + 1, a.nvars() - 1);
        }
        return 0;
    }

    bool less(const Monomial& a, const Monomial& b) const { return cmp(a, b) < 0; }
    bool greater(const Monomial& a, const Monomial& b) const { return cmp(a, b) > 0; }

  private:
    static int cmp_grevlex(const std::int32_t* a, const std::int32_t* b, int n) {
        int da = 0, db = 0;
        for (int i = 0; i < n; ++i) { da += a[i]; db += b[i]; }
        if (da != db) return da > db ? 1 : -1;
        for (int i = n - 1; i >= 0; --i) {
            int d = a[i] - b[i];
            if (d != 0) return d < 0 ? 1 : -1;
        }
        return 0;
    }
};

}  // namespace noether
