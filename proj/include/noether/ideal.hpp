#pragma once

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "parser.hpp"
#include "polynomial.hpp"
#include "slices.hpp"

namespace noether {

struct DivisionResult {
    std::vector<Polynomial> quotients;
    Polynomial remainder;
};

// Multivariate division: f = sum q_i g_i + r, no monomial of r divisible by
// any lead monomial of a divisor.  First matching divisor wins.
inline DivisionResult divide_with_remainder(const Polynomial& f,
                                            const std::vector<Polynomial>& divisors,
                                            const MonomialOrder& order = MonomialOrder::grevlex()) {
    for (const auto& g : divisors) {
        f.check_ring(g);
        if (g.is_zero()) throw std::invalid_argument("zero divisor in division");
    }
    DivisionResult res;
    res.quotients.assign(divisors.size(), Polynomial::zero(f.ring()));
    res.remainder = Polynomial::zero(f.ring());
    Polynomial p = f;
    std::vector<Term> leads;
    leads.reserve(divisors.size());
    for (const auto& g : divisors) leads.push_back(g.leading_term(order));
    while (!p.is_zero()) {
        const Term& lt = p.leading_term(order);
        bool reduced = false;
        for (size_t i = 0; i < divisors.size(); ++i) {
            if (!leads[i].m.divides(lt.m)) continue;
            Monomial q = lt.m / leads[i].m;
            Rat c = lt.c / leads[i].c;
            res.quotients[i] = res.quotients[i] + Polynomial::monomial(f.ring(), q, c);
            p = p - divisors[i].times_term(q, c);
            reduced = true;
            break;
        }
        if (!reduced) {
            Polynomial t = Polynomial::monomial(f.ring(), lt.m, lt.c);
            res.remainder = res.remainder + t;
            p = p - t;
        }
    }
    return res;
}

inline Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& basis,
                              const MonomialOrder& order = MonomialOrder::grevlex()) {
    return divide_with_remainder(f, basis, order).remainder;
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g,
                               const MonomialOrder& order) {
    const Term& lf = f.leading_term(order);
    const Term& lg = g.leading_term(order);
    Monomial l = lf.m.lcm(lg.m);
    return f.times_term(l / lf.m, Rat(1) / lf.c) - g.times_term(l / lg.m, Rat(1) / lg.c);
}

// Buchberger with normal selection (smallest lcm degree first), the coprime
// lead criterion and a chain criterion.  Returns the unique reduced monic GB.
inline std::vector<Polynomial> buchberger(std::vector<Polynomial> gens,
                                          const MonomialOrder& order = MonomialOrder::grevlex()) {
    std::vector<Polynomial> g;
    for (auto& p : gens)
        if (!p.is_zero()) g.push_back(p.primitive_part());
    if (g.empty()) return g;

    struct Pair { size_t i, j; Monomial lcm; int deg; };
    auto make_pair = [&](size_t i, size_t j) {
        Monomial l = g[i].leading_term(order).m.lcm(g[j].leading_term(order).m);
        return Pair{i, j, l, l.degree()};
    };
    std::deque<Pair> pairs;
    std::set<std::pair<size_t, size_t>> done;
    for (size_t i = 0; i < g.size(); ++i)
        for (size_t j = i + 1; j < g.size(); ++j) pairs.push_back(make_pair(i, j));

    while (!pairs.empty()) {
        size_t best = 0;
        for (size_t k = 1; k < pairs.size(); ++k)
            if (pairs[k].deg < pairs[best].deg) best = k;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + best);
        done.insert({pr.i, pr.j});

        const Monomial& li = g[pr.i].leading_term(order).m;
        const Monomial& lj = g[pr.j].leading_term(order).m;
        if (li.coprime(lj)) continue;  // product criterion
        bool chained = false;
        for (size_t k = 0; k < g.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!g[k].leading_term(order).m.divides(pr.lcm)) continue;
            auto key = [&](size_t a, size_t b) {
                return std::make_pair(std::min(a, b), std::max(a, b));
            };
            if (done.count(key(pr.i, k)) && done.count(key(pr.j, k))) chained = true;
        }
        if (chained) continue;

        Polynomial s = normal_form(s_polynomial(g[pr.i], g[pr.j], order), g, order);
        if (s.is_zero()) continue;
        g.push_back(s.primitive_part());
        for (size_t i = 0; i + 1 < g.size(); ++i) pairs.push_back(make_pair(i, g.size() - 1));
    }

    // Interreduce: minimal lead terms, then fully reduced tails, monic.
    std::vector<Polynomial> minimal;
    for (size_t i = 0; i < g.size(); ++i) {
        bool redundant = false;
        for (size_t j = 0; j < g.size() && !redundant; ++j) {
            if (i == j) continue;
            const Monomial& li = g[i].leading_term(order).m;
            const Monomial& lj = g[j].leading_term(order).m;
            if (lj.divides(li) && (li != lj || j < i)) redundant = true;
        }
        if (!redundant) minimal.push_back(g[i]);
    }
    std::vector<Polynomial> reduced;
    for (size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        Polynomial r = normal_form(minimal[i], others, order);
        if (!r.is_zero()) reduced.push_back(r.monic());
    }
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return order.greater(a.leading_term(order).m, b.leading_term(order).m);
    });
    return reduced;
}

// Homogeneous ideal with a write-once reduced GB cache per monomial order.
class Ideal {
  public:
    Ideal() : ring_(RingDescriptor::p3()) {}

    Ideal(RingDescriptor ring, std::vector<Polynomial> gens)
        : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
        for (auto& g : gens) {
            if (g.ring() != ring_) throw RingMismatch();
            if (!g.is_zero()) gens_.push_back(std::move(g));
        }
    }

    static Ideal from_strings(const std::vector<std::string>& texts,
                              const RingDescriptor& ring = RingDescriptor::p3()) {
        std::vector<Polynomial> g;
        for (const auto& t : texts) g.push_back(parse_polynomial(t, ring));
        return Ideal(ring, std::move(g));
    }

    const RingDescriptor& ring() const { return ring_; }
    const std::vector<Polynomial>& generators() const { return gens_; }
    bool is_zero_ideal() const { return gens_.empty(); }

    const std::vector<Polynomial>& groebner(const MonomialOrder& order = MonomialOrder::grevlex()) const {
        auto it = cache_->gb.find(order.kind);
        if (it != cache_->gb.end()) return it->second;
        auto gb = buchberger(gens_, order);
        return cache_->gb.emplace(order.kind, std::move(gb)).first->second;
    }

    bool contains(const Polynomial& f) const {
        if (f.is_zero()) return true;
        return normal_form(f, groebner()).is_zero();
    }

    bool contains_ideal(const Ideal& j) const {
        for (const auto& g : j.gens_)
            if (!contains(g)) return false;
        return true;
    }

    bool is_unit() const {
        const auto& gb = groebner();
        return gb.size() == 1 && gb[0].is_constant();
    }

    // Ideals are equal iff their reduced grevlex GBs coincide (uniqueness).
    bool operator==(const Ideal& j) const {
        if (ring_ != j.ring_) return false;
        return groebner() == j.groebner();
    }
    bool operator!=(const Ideal& j) const { return !(*this == j); }

    Ideal sum(const Ideal& j) const {
        check(j);
        std::vector<Polynomial> g = gens_;
        g.insert(g.end(), j.gens_.begin(), j.gens_.end());
        return Ideal(ring_, std::move(g));
    }

    Ideal product(const Ideal& j) const {
        check(j);
        std::vector<Polynomial> g;
        for (const auto& a : gens_)
            for (const auto& b : j.gens_) g.push_back(a * b);
        return Ideal(ring_, std::move(g));
    }

    Ideal power(int n) const {
        Ideal r(ring_, {Polynomial::constant(ring_, 1)});
        for (int i = 0; i < n; ++i) r = r.product(*this);
        return r;
    }

    // Intersection via one auxiliary elimination variable:
    // I ∩ J = (t·I + (1-t)·J) ∩ S.
    Ideal intersect(const Ideal& j) const {
        check(j);
        if (gens_.empty() || j.gens_.empty()) return Ideal(ring_, {});
        RingDescriptor ext = ring_.with_aux();
        Polynomial t = Polynomial::variable(ext, 0);
        Polynomial omt = Polynomial::constant(ext, 1) - t;
        std::vector<Polynomial> g;
        for (const auto& a : gens_) g.push_back(t * a.extend_aux(ext));
        for (const auto& b : j.gens_) g.push_back(omt * b.extend_aux(ext));
        auto gb = buchberger(g, MonomialOrder::elim_first());
        std::vector<Polynomial> kept;
        for (const auto& p : gb)
            if (!p.involves_var(0)) kept.push_back(p.contract_aux(ring_));
        return Ideal(ring_, std::move(kept));
    }

    // (I : f) = (1/f) (I ∩ (f)).
    Ideal quotient_by(const Polynomial& f) const {
        if (f.is_zero()) throw std::invalid_argument("quotient by zero");
        Ideal inter = intersect(Ideal(ring_, {f}));
        std::vector<Polynomial> g;
        for (const auto& p : inter.generators()) {
            DivisionResult d = divide_with_remainder(p, {f});
            if (!d.remainder.is_zero())
                throw std::logic_error("quotient_by: inexact division");
            g.push_back(d.quotients[0]);
        }
        return Ideal(ring_, std::move(g));
    }

    Ideal quotient(const Ideal& j) const {
        check(j);
        if (j.gens_.empty()) throw std::invalid_argument("quotient by zero ideal");
        std::optional<Ideal> acc;
        for (const auto& f : j.gens_) {
            Ideal q = quotient_by(f);
            acc = acc ? acc->intersect(q) : q;
        }
        return *acc;
    }

    // I : J^infinity, iterated quotient until stable (capped).
    Ideal saturate(const Ideal& j, int cap = 50) const {
        Ideal cur = *this;
        for (int it = 0; it < cap; ++it) {
            Ideal next = cur.quotient(j);
            if (next == cur) {
                if (j == irrelevant(ring_)) cur.saturated_ = true;
                return cur;
            }
            cur = next;
        }
        throw std::logic_error("saturation did not stabilize within cap");
    }

    Ideal saturate_irrelevant() const { return saturate(irrelevant(ring_)); }

    static Ideal irrelevant(const RingDescriptor& ring) {
        std::vector<Polynomial> g;
        for (int i = 0; i < ring.nvars(); ++i) g.push_back(Polynomial::variable(ring, i));
        return Ideal(ring, std::move(g));
    }

    std::optional<bool> saturated_flag() const { return saturated_; }
    void mark_saturated() { saturated_ = true; }

    // dim (I)_d as a vector subspace of S_d.
    long slice_dim(int d) const { return graded_piece(gens_, d, ring_).dim; }

    // Lead monomials of the reduced grevlex GB (minimal generators of in(I)).
    std::vector<Monomial> lead_monomials() const {
        std::vector<Monomial> out;
        for (const auto& p : groebner()) out.push_back(p.leading_term().m);
        return out;
    }

    // Hilbert function of S/I at degree d via standard monomial count.
    long hilbert_fn(int d) const {
        if (d < 0) return 0;
        auto leads = lead_monomials();
        long cnt = 0;
        for (const auto& m : monomials_of_degree(ring_.nvars(), d)) {
            bool divisible = false;
            for (const auto& l : leads)
                if (l.divides(m)) { divisible = true; break; }
            if (!divisible) ++cnt;
        }
        return cnt;
    }

    // True when S/I is finite-dimensional over the field, i.e. V(I) is empty
    // in projective space: some pure power of every variable appears among
    // the lead monomials of a Groebner basis.
    bool has_finite_colength() const {
        auto leads = lead_monomials();
        for (const auto& l : leads)
            if (l.degree() == 0) return true;  // unit ideal, quotient is zero
        for (int i = 0; i < ring_.nvars(); ++i) {
            bool found = false;
            for (const auto& l : leads) {
                bool pure = l.e[i] > 0;
                for (int j = 0; j < ring_.nvars() && pure; ++j)
                    if (j != i && l.e[j] != 0) pure = false;
                if (pure) { found = true; break; }
            }
            if (!found) return false;
        }
        return true;
    }

    int max_generator_degree() const {
        int d = 0;
        for (const auto& g : gens_) d = std::max(d, g.degree());
        return d;
    }

    int min_generator_degree() const {
        int d = gens_.empty() ? 0 : gens_[0].degree();
        for (const auto& g : gens_) d = std::min(d, g.degree());
        return d;
    }

  private:
    void check(const Ideal& j) const {
        if (ring_ != j.ring_) throw RingMismatch();
    }

    struct Cache {
        std::map<OrderKind, std::vector<Polynomial>> gb;
    };

    RingDescriptor ring_;
    std::vector<Polynomial> gens_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
    std::optional<bool> saturated_;
};

}  // namespace noether
