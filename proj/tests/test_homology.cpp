#include <catch2/catch_amalgamated.hpp>

#include "noether/hilbert.hpp"
#include "noether/resolution.hpp"

using namespace noether;

namespace {

Ideal twisted_cubic() {
    return Ideal::from_strings({"x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"});
}

std::vector<int> sorted_twists(const std::vector<int>& v) {
    std::vector<int> s = v;
    std::sort(s.begin(), s.end());
    return s;
}

}  // namespace

TEST_CASE("syzygy of a regular sequence is the Koszul relation") {
    const RingDescriptor& R = RingDescriptor::p3();
    auto syz = syzygies({pp("x0"), pp("x1")}, R);
    REQUIRE(syz.size() == 1);
    // (x1, -x0) up to sign normalization
    MVec s = syz[0];
    bool plus = s.c[0] == pp("x1") && s.c[1] == pp("-x0");
    bool minus = s.c[0] == pp("-x1") && s.c[1] == pp("x0");
    CHECK((plus || minus));
}

TEST_CASE("free kernel elements actually map to zero") {
    const RingDescriptor& R = RingDescriptor::p3();
    Ideal I = twisted_cubic();
    auto syz = syzygies(I.generators(), R);
    REQUIRE(!syz.empty());
    for (const auto& s : syz) {
        Polynomial acc = Polynomial::zero(R);
        for (size_t i = 0; i < 3; ++i) acc = acc + s.c[i] * I.generators()[i];
        CHECK(acc.is_zero());
    }
}

TEST_CASE("minimal resolution of the residue field is the Koszul complex") {
    Ideal m = Ideal::irrelevant(RingDescriptor::p3());
    FreeResolution res = minimal_free_resolution(GradedModulePresentation::quotient_ring(m));
    BettiTable b = res.betti();
    REQUIRE(b.length() == 4);
    CHECK(b.twists[0] == std::vector<int>{0});
    CHECK(sorted_twists(b.twists[1]) == std::vector<int>{1, 1, 1, 1});
    CHECK(sorted_twists(b.twists[2]) == std::vector<int>{2, 2, 2, 2, 2, 2});
    CHECK(sorted_twists(b.twists[3]) == std::vector<int>{3, 3, 3, 3});
    CHECK(sorted_twists(b.twists[4]) == std::vector<int>{4});
    CHECK(b.regularity() == 0);
    CHECK(res.is_complex());
}

TEST_CASE("resolution of S mod a line ideal") {
    Ideal I = Ideal::from_strings({"x0", "x1"});
    FreeResolution res = minimal_free_resolution(GradedModulePresentation::quotient_ring(I));
    BettiTable b = res.betti();
    REQUIRE(b.length() == 2);
    CHECK(sorted_twists(b.twists[1]) == std::vector<int>{1, 1});
    CHECK(sorted_twists(b.twists[2]) == std::vector<int>{2});
    CHECK(b.regularity() == 0);
}

TEST_CASE("twisted cubic ideal has the Hilbert-Burch resolution") {
    Ideal I = twisted_cubic();
    FreeResolution res = minimal_free_resolution(GradedModulePresentation::ideal_module(I));
    BettiTable b = res.betti();
    REQUIRE(b.length() == 1);
    CHECK(sorted_twists(b.twists[0]) == std::vector<int>{2, 2, 2});
    CHECK(sorted_twists(b.twists[1]) == std::vector<int>{3, 3});
    CHECK(b.regularity() == 2);

    // and as a quotient: reg(S/I) = 1
    FreeResolution q = minimal_free_resolution(GradedModulePresentation::quotient_ring(I));
    CHECK(q.regularity() == 1);
    CHECK(q.is_complex());
}

TEST_CASE("minimal resolutions contain no unit entries") {
    for (Ideal I : {twisted_cubic(), Ideal::from_strings({"x0^2", "x0*x1", "x1^3"}),
                    Ideal::from_strings({"x0*x1 - x2*x3", "x0^3 + x1^3"})}) {
        FreeResolution res = minimal_free_resolution(GradedModulePresentation::quotient_ring(I));
        CHECK(res.is_complex());
        for (const auto& d : res.diffs)
            for (const auto& row : d.entries)
                for (const auto& p : row)
                    CHECK_FALSE((!p.is_zero() && p.is_constant()));
    }
}

TEST_CASE("alternating sum of free slice dims recovers the Hilbert function") {
    Ideal I = twisted_cubic();
    FreeResolution res = minimal_free_resolution(GradedModulePresentation::quotient_ring(I));
    for (int d = 0; d <= 6; ++d) {
        long chi = 0;
        int sign = 1;
        for (int i = 0; i <= res.length(); ++i) {
            chi += sign * res.module_at(i).slice_dim(d, 4);
            sign = -sign;
        }
        CHECK(chi == I.hilbert_fn(d));
    }
}

TEST_CASE("presentation slice dims match standard monomial counts") {
    Ideal I = twisted_cubic();
    auto q = GradedModulePresentation::quotient_ring(I);
    auto im = GradedModulePresentation::ideal_module(I);
    for (int d = 0; d <= 6; ++d) {
        CHECK(q.slice_dim(d) == I.hilbert_fn(d));
        CHECK(im.slice_dim(d) == monomial_count(4, d) - I.hilbert_fn(d));
    }
}

TEST_CASE("hom into the structure sheaf of a line counts normal directions") {
    Ideal I = Ideal::from_strings({"x0", "x1"});
    auto M = GradedModulePresentation::ideal_module(I);
    auto N = GradedModulePresentation::quotient_ring(I);
    // global sections of the normal bundle of a line: O(1)^2, so 4
    CHECK(hom_dim(M, N, 0) == 4);
}

TEST_CASE("hom into the structure sheaf of a conic") {
    Ideal I = Ideal::from_strings({"x0", "x1^2 - x2*x3"});
    auto M = GradedModulePresentation::ideal_module(I);
    auto N = GradedModulePresentation::quotient_ring(I);
    // N = O_C(1) + O_C(2) on a rational curve of degree 2: 3 + 5
    CHECK(hom_dim(M, N, 0) == 8);
}

TEST_CASE("endomorphisms of integral quotients are scalars in degree 0") {
    for (Ideal I : {Ideal::from_strings({"x0", "x1"}), twisted_cubic()}) {
        auto N = GradedModulePresentation::quotient_ring(I);
        CHECK(hom_dim(N, N, 0) == 1);
    }
}

TEST_CASE("hom from the free module recovers slice dimensions") {
    const RingDescriptor& R = RingDescriptor::p3();
    auto S = GradedModulePresentation::free_module(R, FreeModule{{0}});
    Ideal I = twisted_cubic();
    auto N = GradedModulePresentation::quotient_ring(I);
    for (int k = 0; k <= 4; ++k) CHECK(hom_dim(S, N, k) == I.hilbert_fn(k));
}

TEST_CASE("top ext of the residue field is one-dimensional in degree -4") {
    Ideal m = Ideal::irrelevant(RingDescriptor::p3());
    FreeResolution res = minimal_free_resolution(GradedModulePresentation::quotient_ring(m));
    CHECK(ext_dim(res, 4, -4) == 1);
    for (int k : {-6, -5, -3, -2, 0, 2}) CHECK(ext_dim(res, 4, k) == 0);
    for (int i = 0; i <= 3; ++i)
        for (int k = -6; k <= 2; ++k) CHECK(ext_dim(res, i, k) == 0);
    // local duality: H^0_m(k) is k itself, concentrated in degree 0
    CHECK(local_cohomology_dim(res, 0, 0) == 1);
    CHECK(local_cohomology_dim(res, 0, 1) == 0);
    CHECK(local_cohomology_dim(res, 1, 0) == 0);
}

TEST_CASE("cohomology of twists of the structure sheaf of P^3") {
    const RingDescriptor& R = RingDescriptor::p3();
    auto S = GradedModulePresentation::free_module(R, FreeModule{{0}});
    FreeResolution res = minimal_free_resolution(S);
    for (int k = -8; k <= 6; ++k) {
        CHECK(sheaf_cohomology_dim(S, res, 0, k) == monomial_count(4, k));
        CHECK(sheaf_cohomology_dim(S, res, 1, k) == 0);
        CHECK(sheaf_cohomology_dim(S, res, 2, k) == 0);
        // Serre duality: h^3(O(k)) = h^0(O(-k-4))
        CHECK(sheaf_cohomology_dim(S, res, 3, k) == monomial_count(4, -k - 4));
    }
    CHECK(sheaf_cohomology_dim(S, res, 3, -4) == 1);
    CHECK(sheaf_regularity(S, res) == 0);
}

TEST_CASE("cohomology of the ideal sheaf of a line") {
    Ideal I = Ideal::from_strings({"x0", "x1"});
    auto M = GradedModulePresentation::ideal_module(I);
    FreeResolution res = minimal_free_resolution(M);
    for (int k = 1; k <= 6; ++k) {
        CHECK(sheaf_cohomology_dim(M, res, 1, k) == 0);
        // h^0(I(k)) = dim I_k for a saturated ideal
        CHECK(sheaf_cohomology_dim(M, res, 0, k) == monomial_count(4, k) - I.hilbert_fn(k));
    }
    // h^2(I(k)) = h^1(O_line(k)) = 0 for k >= -1
    for (int k = -1; k <= 4; ++k) CHECK(sheaf_cohomology_dim(M, res, 2, k) == 0);
    CHECK(sheaf_regularity(M, res) == 1);
}

TEST_CASE("structure sheaf cohomology of curves via quotient modules") {
    // line: h^0(O_L(k)) = k+1, h^1 = 0 for k >= 0
    Ideal L = Ideal::from_strings({"x0", "x1"});
    auto ML = GradedModulePresentation::quotient_ring(L);
    FreeResolution rL = minimal_free_resolution(ML);
    for (int k = 0; k <= 5; ++k) {
        CHECK(sheaf_cohomology_dim(ML, rL, 0, k) == k + 1);
        CHECK(sheaf_cohomology_dim(ML, rL, 1, k) == 0);
    }
    // plane quintic: genus 6, so h^1(O_C) = 6
    Ideal Q = Ideal::from_strings({"x0", "x1^5 + x2^5 + x3^5"});
    auto MQ = GradedModulePresentation::quotient_ring(Q);
    FreeResolution rQ = minimal_free_resolution(MQ);
    CHECK(sheaf_cohomology_dim(MQ, rQ, 0, 0) == 1);
    CHECK(sheaf_cohomology_dim(MQ, rQ, 1, 0) == 6);
}

TEST_CASE("kernel of a quotient map between cyclic modules") {
    // ker(S/(x0) -> S/(x0,x1)) is (x0,x1)/(x0), a shifted copy of S/(x0)
    Ideal A = Ideal::from_strings({"x0"});
    Ideal B = Ideal::from_strings({"x0", "x1"});
    auto M = GradedModulePresentation::quotient_ring(A);
    auto N = GradedModulePresentation::quotient_ring(B);
    GradedMap psi = GradedMap::zero(M.ring, M.f0, N.f0);
    psi.entries[0][0] = pp("1");
    auto K = kernel_presentation(psi, M, N);
    for (int k = 0; k <= 5; ++k)
        CHECK(K.slice_dim(k) == monomial_count(3, k - 1));  // (S/(x0))(-1)
}

TEST_CASE("hilbert polynomials of standard curves") {
    HilbertData line = hilbert_data(Ideal::from_strings({"x0", "x1"}));
    CHECK(line.poly_degree == 1);
    auto cl = curve_invariants(line);
    CHECK(cl.degree == 1);
    CHECK(cl.arithmetic_genus == 0);

    HilbertData tc = hilbert_data(twisted_cubic());
    auto ct = curve_invariants(tc);
    CHECK(ct.degree == 3);
    CHECK(ct.arithmetic_genus == 0);

    HilbertData q5 = hilbert_data(Ideal::from_strings({"x0", "x1^5 + x2^5 + x3^5"}));
    auto cq = curve_invariants(q5);
    CHECK(cq.degree == 5);
    CHECK(cq.arithmetic_genus == 6);

    // complete intersection of a quadric and a cubic: degree 6, genus 4
    HilbertData ci = hilbert_data(Ideal::from_strings(
        {"x0^2 + x1^2 + x2^2 + x3^2", "x0^3 + x1^3 + x2^3 + x3^3"}));
    auto cc = curve_invariants(ci);
    CHECK(cc.degree == 6);
    CHECK(cc.arithmetic_genus == 4);
}

TEST_CASE("hilbert polynomial of a surface is quadratic") {
    HilbertData h = hilbert_data(Ideal::from_strings({"x0^2 + x1^2 + x2^2 + x3^2"}));
    CHECK(h.poly_degree == 2);
    CHECK(h.eval(10) == Rat(monomial_count(4, 10) - monomial_count(4, 8)));
    CHECK_THROWS_AS(curve_invariants(h), std::invalid_argument);
}
