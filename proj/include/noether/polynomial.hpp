#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "numeric.hpp"
#include "ring.hpp"

namespace noether {

struct Term {
    Monomial m;
    Rat c;
};

struct RingMismatch : std::invalid_argument {
    RingMismatch() : std::invalid_argument("polynomials from different rings") {}
};

// Sparse multivariate polynomial with exact rational coefficients.
// Terms are kept in descending grevlex order; no zero coefficient is stored.
// Immutable in practice: all operations return new values.
class Polynomial {
  public:
    Polynomial() : ring_(RingDescriptor::p3()) {}

    explicit Polynomial(RingDescriptor ring) : ring_(std::move(ring)) {}

    Polynomial(RingDescriptor ring, std::vector<Term> terms)
        : ring_(std::move(ring)), terms_(std::move(terms)) {
        normalize();
    }

    static Polynomial zero(const RingDescriptor& r) { return Polynomial(r); }

    static Polynomial constant(const RingDescriptor& r, const Rat& c) {
        Polynomial p(r);
        if (c != 0) p.terms_.push_back({Monomial::one(r.nvars()), c});
        return p;
    }

    static Polynomial variable(const RingDescriptor& r, int i) {
        Polynomial p(r);
        p.terms_.push_back({Monomial::var(i, r.nvars()), Rat(1)});
        return p;
    }

    static Polynomial monomial(const RingDescriptor& r, Monomial m, Rat c = Rat(1)) {
        Polynomial p(r);
        if (c != 0) p.terms_.push_back({std::move(m), std::move(c)});
        return p;
    }

    const RingDescriptor& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one());
    }

    Rat constant_value() const {
        return terms_.empty() ? Rat(0) : terms_[0].c;
    }

    // Total degree; -1 for the zero polynomial.
    int degree() const {
        int d = -1;
        for (const auto& t : terms_) d = std::max(d, t.m.degree());
        return d;
    }

    bool is_homogeneous() const {
        if (terms_.empty()) return true;
        int d = terms_[0].m.degree();
        for (const auto& t : terms_)
            if (t.m.degree() != d) return false;
        return true;
    }

    // Leading term under an arbitrary order (front() when grevlex, since
    // storage is canonical grevlex-descending).
    const Term& leading_term(const MonomialOrder& o = MonomialOrder::grevlex()) const {
        if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
        if (o.kind == OrderKind::grevlex) return terms_.front();
        size_t best = 0;
        for (size_t i = 1; i < terms_.size(); ++i)
            if (o.greater(terms_[i].m, terms_[best].m)) best = i;
        return terms_[best];
    }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& t : r.terms_) t.c = -t.c;
        return r;
    }

    Polynomial operator+(const Polynomial& q) const {
        check_ring(q);
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size() + q.terms_.size());
        static const MonomialOrder glex = MonomialOrder::grevlex();
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < q.terms_.size()) {
            int c = glex.cmp(terms_[i].m, q.terms_[j].m);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(q.terms_[j++]);
            } else {
                Rat s = terms_[i].c + q.terms_[j].c;
                if (s != 0) r.terms_.push_back({terms_[i].m, std::move(s)});
                ++i; ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < q.terms_.size(); ++j) r.terms_.push_back(q.terms_[j]);
        return r;
    }

    Polynomial operator-(const Polynomial& q) const { return *this + (-q); }

    Polynomial operator*(const Polynomial& q) const {
        check_ring(q);
        if (is_zero() || q.is_zero()) return Polynomial(ring_);
        std::map<Monomial, Rat> acc;
        for (const auto& a : terms_)
            for (const auto& b : q.terms_) acc[a.m * b.m] += a.c * b.c;
        Polynomial r(ring_);
        r.terms_.reserve(acc.size());
        for (auto& [m, c] : acc)
            if (c != 0) r.terms_.push_back({m, std::move(c)});
        r.sort_terms();
        return r;
    }

    Polynomial operator*(const Rat& c) const {
        if (c == 0) return Polynomial(ring_);
        Polynomial r = *this;
        for (auto& t : r.terms_) t.c *= c;
        return r;
    }

    // Multiply by a single term (fast path used by division and GB).
    Polynomial times_term(const Monomial& m, const Rat& c) const {
        if (c == 0) return Polynomial(ring_);
        Polynomial r = *this;
        for (auto& t : r.terms_) { t.m = t.m * m; t.c *= c; }
        return r;  // monomial multiplication preserves grevlex order
    }

    Polynomial pow(int n) const {
        if (n < 0) throw std::invalid_argument("negative power");
        Polynomial r = constant(ring_, 1);
        Polynomial b = *this;
        while (n > 0) {
            if (n & 1) r = r * b;
            b = n > 1 ? b * b : b;
            n >>= 1;
        }
        return r;
    }

    Polynomial derivative(int var) const {
        Polynomial r(ring_);
        for (const auto& t : terms_) {
            if (t.m.e[var] == 0) continue;
            Term s = t;
            s.c *= t.m.e[var];
            s.m.e[var] -= 1;
            r.terms_.push_back(std::move(s));
        }
        r.sort_terms();
        return r;
    }

    bool operator==(const Polynomial& q) const {
        if (ring_ != q.ring_ || terms_.size() != q.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].m != q.terms_[i].m || terms_[i].c != q.terms_[i].c) return false;
        return true;
    }
    bool operator!=(const Polynomial& q) const { return !(*this == q); }

    // Lift to the ring with one auxiliary variable prepended.
    Polynomial extend_aux(const RingDescriptor& ext) const {
        Polynomial r(ext);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            Monomial m = Monomial::one(ext.nvars());
            for (int i = 0; i < ring_.nvars(); ++i) m.e[i + 1] = t.m.e[i];
            r.terms_.push_back({std::move(m), t.c});
        }
        r.sort_terms();
        return r;
    }

    // Drop the auxiliary first variable; caller guarantees it does not occur.
    Polynomial contract_aux(const RingDescriptor& base) const {
        Polynomial r(base);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (t.m.e[0] != 0) throw std::logic_error("contract_aux: variable present");
            Monomial m = Monomial::one(base.nvars());
            for (int i = 0; i < base.nvars(); ++i) m.e[i] = t.m.e[i + 1];
            r.terms_.push_back({std::move(m), t.c});
        }
        r.sort_terms();
        return r;
    }

    bool involves_var(int i) const {
        for (const auto& t : terms_)
            if (t.m.e[i] != 0) return true;
        return false;
    }

    // Scale to integer coefficients with content 1 and positive grevlex lead.
    Polynomial primitive_part() const {
        if (is_zero()) return *this;
        Int den(1);
        for (const auto& t : terms_) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.c.get_den().get_mpz_t());
        Int g(0);
        for (const auto& t : terms_) {
            Int num = t.c.get_num() * (den / t.c.get_den());
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
        }
        Rat s = Rat(den) / Rat(g);
        if (terms_.front().c * s < 0) s = -s;
        return *this * s;
    }

    // Lead coefficient 1 under grevlex.
    Polynomial monic() const {
        if (is_zero()) return *this;
        return *this * (Rat(1) / terms_.front().c);
    }

    void check_ring(const Polynomial& q) const {
        if (ring_ != q.ring_) throw RingMismatch();
    }

    std::string str() const;  // canonical printer, defined in parser.hpp

  private:
    void sort_terms() {
        static const MonomialOrder glex = MonomialOrder::grevlex();
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return glex.greater(a.m, b.m); });
    }

    void normalize() {
        for (auto& t : terms_) t.c.canonicalize();
        sort_terms();
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!out.empty() && out.back().m == t.m) {
                out.back().c += t.c;
                if (out.back().c == 0) out.pop_back();
            } else if (t.c != 0) {
                out.push_back(std::move(t));
            }
        }
        terms_ = std::move(out);
    }

    RingDescriptor ring_;
    std::vector<Term> terms_;
};

inline Polynomial operator*(const Rat& c, const Polynomial& p) { return p * c; }

// Canonical printer: terms in descending grevlex order, explicit '*' and '^'.
// parse(str(p)) == p and str(parse(t)) is the canonical form of t.
inline std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        Rat a = t.c;
        if (first) {
            if (a < 0) { os << "-"; a = -a; }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        bool printed_coeff = false;
        if (t.m.is_one() || a != 1) {
            os << rat_to_string(a);
            printed_coeff = true;
        }
        bool need_star = printed_coeff;
        for (int i = 0; i < ring_.nvars(); ++i) {
            if (t.m.e[i] == 0) continue;
            if (need_star) os << "*";
            os << ring_.vars[i];
            if (t.m.e[i] > 1) os << "^" << t.m.e[i];
            need_star = true;
        }
    }
    return os.str();
}

}  // namespace noether
