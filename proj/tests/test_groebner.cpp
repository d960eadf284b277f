#include <catch2/catch_amalgamated.hpp>

#include "noether/ideal.hpp"

using namespace noether;

namespace {

Ideal twisted_cubic() {
    return Ideal::from_strings({"x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"});
}

// Buchberger certificate: every S-polynomial of the basis reduces to zero.
void check_gb_certificate(const std::vector<Polynomial>& gb,
                          const MonomialOrder& order = MonomialOrder::grevlex()) {
    for (size_t i = 0; i < gb.size(); ++i)
        for (size_t j = i + 1; j < gb.size(); ++j)
            CHECK(normal_form(s_polynomial(gb[i], gb[j], order), gb, order).is_zero());
}

}  // namespace

TEST_CASE("already-reduced basis is returned as-is") {
    Ideal I = Ideal::from_strings({"x0", "x1"});
    auto gb = I.groebner();
    REQUIRE(gb.size() == 2);
    CHECK(gb[0] == pp("x0"));
    CHECK(gb[1] == pp("x1"));
}

TEST_CASE("twisted cubic minors are a grevlex GB") {
    Ideal I = twisted_cubic();
    auto gb = I.groebner();
    REQUIRE(gb.size() == 3);
    check_gb_certificate(gb);
    // the three minors themselves, up to sign normalization
    for (const auto& s : {"x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"})
        CHECK(I.contains(pp(s)));
    for (const auto& g : gb) CHECK(g.term_count() == 2);
}

TEST_CASE("S-pair chain produces x1^3") {
    Ideal I = Ideal::from_strings({"x0^2", "x0*x1 - x1^2"});
    auto gb = I.groebner();
    bool found = false;
    for (const auto& g : gb)
        if (g == pp("x1^3")) found = true;
    CHECK(found);
    check_gb_certificate(gb);
}

TEST_CASE("ideal membership") {
    CHECK(Ideal::from_strings({"x0"}).contains(pp("x0^2")));
    CHECK_FALSE(Ideal::from_strings({"x0", "x1"}).contains(pp("x2")));
    // explicit combination of twisted cubic generators
    Ideal I = twisted_cubic();
    Polynomial f = pp("x3^2") * I.generators()[0] + pp("x0*x1 - 7*x2^2") * I.generators()[2];
    CHECK(I.contains(f));
}

TEST_CASE("membership agrees with slice linear algebra on random combinations") {
    SeededRng rng(5);
    Ideal I = twisted_cubic();
    for (int trial = 0; trial < 10; ++trial) {
        // random homogeneous degree-4 element of I
        Polynomial f = Polynomial::zero(I.ring());
        for (const auto& g : I.generators())
            for (const auto& m : monomials_of_degree(4, 2))
                f = f + g.times_term(m, Rat(rng.small_coeff()));
        REQUIRE(I.contains(f));
    }
    // low-degree polynomials outside the ideal slice
    for (int trial = 0; trial < 10; ++trial) {
        Polynomial f = Polynomial::zero(I.ring());
        for (const auto& m : monomials_of_degree(4, 2))
            f = f + Polynomial::monomial(I.ring(), m, Rat(rng.small_coeff()));
        GradedPiece slice = graded_piece(I.generators(), 2, I.ring());
        SliceBasis sb(4, 2);
        std::vector<QVec> span;
        for (const auto& b : slice.basis) span.push_back(sb.coords(b));
        bool in_slice = in_span(span, sb.coords(f));
        CHECK(I.contains(f) == in_slice);
    }
}

TEST_CASE("sum and product") {
    Ideal a = Ideal::from_strings({"x0"});
    Ideal b = Ideal::from_strings({"x1"});
    Ideal s = a.sum(b);
    CHECK(s == Ideal::from_strings({"x0", "x1"}));
    Ideal xy = Ideal::from_strings({"x0", "x1"});
    Ideal p = xy.product(xy);
    CHECK(p == Ideal::from_strings({"x0^2", "x0*x1", "x1^2"}));
    CHECK(p.generators().size() == 4);  // pairwise products before reduction
}

TEST_CASE("intersection of monomial ideals via lcm oracle") {
    Ideal a = Ideal::from_strings({"x0"});
    Ideal b = Ideal::from_strings({"x1"});
    CHECK(a.intersect(b) == Ideal::from_strings({"x0*x1"}));

    Ideal c = Ideal::from_strings({"x0", "x1"});
    Ideal d = Ideal::from_strings({"x2", "x3"});
    CHECK(c.intersect(d) ==
          Ideal::from_strings({"x0*x2", "x0*x3", "x1*x2", "x1*x3"}));
}

TEST_CASE("union of coplanar lines") {
    Ideal l1 = Ideal::from_strings({"x0", "x1"});
    Ideal l2 = Ideal::from_strings({"x0", "x2"});
    Ideal u = l1.intersect(l2);
    Ideal expect = Ideal::from_strings({"x0", "x1*x2"});
    CHECK(u.contains_ideal(expect));
    CHECK(expect.contains_ideal(u));
}

TEST_CASE("quotient and saturation") {
    Ideal I = Ideal::from_strings({"x0^2"});
    CHECK(I.quotient(Ideal::from_strings({"x0"})) == Ideal::from_strings({"x0"}));

    // (x0^2, x0*x1) = (x0) ∩ (x0^2, x1) has no irrelevant component: saturated.
    Ideal J = Ideal::from_strings({"x0^2", "x0*x1"});
    CHECK(J.saturate_irrelevant() == J);

    // x0 * (x0,x1,x2,x3) saturates to (x0)
    Ideal K = Ideal::from_strings({"x0^2", "x0*x1", "x0*x2", "x0*x3"});
    Ideal sat = K.saturate_irrelevant();
    CHECK(sat == Ideal::from_strings({"x0"}));
    CHECK(sat.saturated_flag().value_or(false));
}

TEST_CASE("Fermat quintic Jacobian ideal saturates to the unit ideal") {
    Ideal J = Ideal::from_strings({"x0^4", "x1^4", "x2^4", "x3^4"});
    Ideal sat = J.saturate_irrelevant();
    CHECK(sat.is_unit());
}

TEST_CASE("containment and duality spot-checks") {
    SeededRng rng(23);
    Ideal I = twisted_cubic();
    Ideal J = Ideal::from_strings({"x0", "x1"});
    Ideal inter = I.intersect(J);
    CHECK(I.contains_ideal(inter));
    CHECK(J.contains_ideal(inter));
    Ideal prod = I.product(J);
    CHECK(inter.contains_ideal(prod));
    // saturation idempotence
    Ideal s1 = prod.saturate_irrelevant();
    CHECK(s1.saturate_irrelevant() == s1);
}

TEST_CASE("hilbert function counts standard monomials") {
    Ideal line = Ideal::from_strings({"x0", "x1"});
    for (int d = 0; d <= 6; ++d) CHECK(line.hilbert_fn(d) == d + 1);

    Ideal tc = twisted_cubic();
    for (int d = 2; d <= 6; ++d) CHECK(tc.hilbert_fn(d) == 3 * d + 1);

    // hilbert function of S/I = C(d+3,3) - dim I_d on a window
    SeededRng rng(9);
    for (int d = 0; d <= 6; ++d) {
        long full = monomial_count(4, d);
        CHECK(tc.hilbert_fn(d) == full - graded_piece(tc.groebner(), d, tc.ring()).dim);
    }
}
