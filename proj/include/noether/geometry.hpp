#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "hilbert.hpp"
#include "modp.hpp"
#include "parser.hpp"
#include "resolution.hpp"

namespace noether {

struct GeometryError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Saturated subscheme of P^3 with cached Hilbert data.
struct ProjectiveScheme {
    Ideal ideal;  // saturated
    HilbertData hilbert;
    int dimension = 0;

    static ProjectiveScheme from_ideal(const Ideal& raw) {
        Ideal sat = raw.saturate_irrelevant();
        HilbertData h = hilbert_data(sat);
        return {sat, h, h.poly_degree};
    }

    // deg = (leading coefficient of the Hilbert polynomial) * dim!
    long degree() const {
        Rat d = hilbert.coeffs.back();
        for (int k = 2; k <= hilbert.poly_degree; ++k) d *= k;
        if (d.get_den() != 1) throw std::logic_error("non-integral scheme degree");
        return d.get_num().get_si();
    }
};

inline std::pair<long, long> degree_genus(const ProjectiveScheme& c) {
    if (c.dimension != 1) throw GeometryError("degree_genus: not a curve");
    CurveInvariants ci = curve_invariants(c.hilbert);
    return {ci.degree, ci.arithmetic_genus};
}

// --- curve constructors ---------------------------------------------------

struct CurveSpec {
    enum class Kind { line, plane_curve, twisted_cubic, union_of, explicit_ideal };
    Kind kind = Kind::line;
    std::vector<std::string> forms;       // line: 2 linear; plane_curve: l, G
    std::vector<CurveSpec> parts;         // union_of
    std::vector<std::string> generators;  // explicit_ideal

    static CurveSpec line(std::string l1, std::string l2) {
        CurveSpec s;
        s.kind = Kind::line;
        s.forms = {std::move(l1), std::move(l2)};
        return s;
    }
    static CurveSpec plane_curve(std::string l, std::string g) {
        CurveSpec s;
        s.kind = Kind::plane_curve;
        s.forms = {std::move(l), std::move(g)};
        return s;
    }
    static CurveSpec twisted_cubic() {
        CurveSpec s;
        s.kind = Kind::twisted_cubic;
        return s;
    }
    static CurveSpec union_of(std::vector<CurveSpec> parts) {
        CurveSpec s;
        s.kind = Kind::union_of;
        s.parts = std::move(parts);
        return s;
    }
    static CurveSpec explicit_ideal(std::vector<std::string> gens) {
        CurveSpec s;
        s.kind = Kind::explicit_ideal;
        s.generators = std::move(gens);
        return s;
    }
};

namespace detail {

inline bool linear_forms_independent(const Polynomial& a, const Polynomial& b) {
    QMat m = qmat(2, a.ring().nvars());
    for (const auto& t : a.terms())
        for (int i = 0; i < a.ring().nvars(); ++i)
            if (t.m.e[i] == 1) m[0][i] = t.c;
    for (const auto& t : b.terms())
        for (int i = 0; i < b.ring().nvars(); ++i)
            if (t.m.e[i] == 1) m[1][i] = t.c;
    return rank(std::move(m)) == 2;
}

}  // namespace detail

inline Ideal curve_ideal(const CurveSpec& spec, const RingDescriptor& R = RingDescriptor::p3()) {
    switch (spec.kind) {
        case CurveSpec::Kind::line: {
            Polynomial l1 = parse_polynomial(spec.forms.at(0), R);
            Polynomial l2 = parse_polynomial(spec.forms.at(1), R);
            if (l1.degree() != 1 || l2.degree() != 1 || !l1.is_homogeneous() ||
                !l2.is_homogeneous())
                throw GeometryError("line: forms must be linear");
            if (!detail::linear_forms_independent(l1, l2))
                throw GeometryError("line: dependent linear forms");
            return Ideal(R, {l1, l2});
        }
        case CurveSpec::Kind::plane_curve: {
            Polynomial l = parse_polynomial(spec.forms.at(0), R);
            Polynomial g = parse_polynomial(spec.forms.at(1), R);
            if (l.degree() != 1 || !l.is_homogeneous())
                throw GeometryError("plane_curve: first form must be linear");
            if (!g.is_homogeneous() || g.degree() < 1)
                throw GeometryError("plane_curve: second form must be homogeneous positive degree");
            if (divide_with_remainder(g, {l}).remainder.is_zero())
                throw GeometryError("plane_curve: plane divides the curve form");
            return Ideal(R, {l, g});
        }
        case CurveSpec::Kind::twisted_cubic:
            return Ideal::from_strings({"x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"}, R);
        case CurveSpec::Kind::union_of: {
            if (spec.parts.empty()) throw GeometryError("union: no components");
            Ideal acc = curve_ideal(spec.parts[0], R);
            for (size_t i = 1; i < spec.parts.size(); ++i)
                acc = acc.intersect(curve_ideal(spec.parts[i], R));
            return acc;
        }
        case CurveSpec::Kind::explicit_ideal: {
            if (spec.generators.empty()) throw GeometryError("explicit: no generators");
            return Ideal::from_strings(spec.generators, R);
        }
    }
    throw GeometryError("unknown curve spec");
}

inline ProjectiveScheme construct_curve(const CurveSpec& spec,
                                        const RingDescriptor& R = RingDescriptor::p3()) {
    ProjectiveScheme s = ProjectiveScheme::from_ideal(curve_ideal(spec, R));
    if (s.dimension != 1) throw GeometryError("curve spec does not define a 1-dimensional scheme");
    return s;
}

// --- smoothness -----------------------------------------------------------

struct JacobianReport {
    Ideal jacobian;
    bool smooth = false;
    long dim_jd = 0;  // degree-d slice dimension of the Jacobian ideal
};

// With exact_fallback, a failed mod-p certificate is rechecked with a
// rational Groebner basis (authoritative).  Retry loops pass false: there a
// missing certificate just means another random draw, and the rational
// fallback on dense high-degree forms is very expensive.
inline JacobianReport jacobian_ideal_and_smoothness(const Polynomial& f,
                                                    bool exact_fallback = true) {
    if (f.is_zero() || !f.is_homogeneous() || f.degree() < 1)
        throw GeometryError("jacobian: need a homogeneous form of positive degree");
    const RingDescriptor& R = f.ring();
    std::vector<Polynomial> partials;
    for (int i = 0; i < R.nvars(); ++i) partials.push_back(f.derivative(i));
    Ideal j(R, partials);
    JacobianReport rep;
    // Equivalent to the Jacobian ideal saturating to the unit ideal: the
    // singular locus of the cone is the origin exactly when the quotient by
    // J has finite length.  Certified mod p first (sound and much cheaper);
    // the rational Groebner basis is the fallback for unlucky primes.
    rep.smooth = modp::certifies_finite_colength(partials, R.nvars()) ||
                 (exact_fallback && j.has_finite_colength());
    rep.dim_jd = graded_piece(partials, f.degree(), R).dim;
    rep.jacobian = std::move(j);
    return rep;
}

// --- curve-on-surface scenarios --------------------------------------------

struct CurveSurfaceScenario {
    ProjectiveScheme curve;
    Polynomial surface_form;  // F, homogeneous of degree d
    int d = 0;
    std::uint64_t seed = 0;
    bool containment_certified = false;  // F in I_C
    bool smoothness_certified = false;   // sat(Jacobian(F)) = (1)
    long dim_jd = 0;

    // Optional small presentation with sheaf(model) = O_X(-C)(model_shift),
    // recorded when the construction realizes C as the zero scheme of a
    // section of a known line bundle.  Lets the analysis compute cohomology
    // of O_X(-C) twists without resolving the (possibly large) ideal of C.
    std::optional<GradedModulePresentation> oxmc_model;
    int oxmc_model_shift = 0;
};

// Deterministic random element of I_C in degree d:
// sum of r_i * m_i * g_i over all degree-d monomial multiples of generators.
inline Polynomial random_surface_form(const Ideal& ic, int d, SeededRng& rng) {
    const RingDescriptor& R = ic.ring();
    Polynomial f = Polynomial::zero(R);
    for (const auto& g : ic.generators()) {
        if (g.degree() > d) continue;
        for (const auto& m : monomials_of_degree(R.nvars(), d - g.degree()))
            f = f + g.times_term(m, Rat(rng.small_coeff()));
    }
    return f;
}

inline CurveSurfaceScenario random_surface_containing(const ProjectiveScheme& c, int d,
                                                      std::uint64_t seed,
                                                      int max_attempts = 100) {
    if (d < 1) throw GeometryError("surface degree must be positive");
    if (c.ideal.min_generator_degree() > d)
        throw GeometryError("no elements of the curve ideal in the requested degree");
    SeededRng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        SeededRng r = rng.child(attempt);
        Polynomial f = random_surface_form(c.ideal, d, r);
        if (f.is_zero() || f.degree() != d) continue;
        JacobianReport jac = jacobian_ideal_and_smoothness(f, false);
        if (!jac.smooth) continue;
        CurveSurfaceScenario s;
        s.curve = c;
        s.surface_form = std::move(f);
        s.d = d;
        s.seed = seed;
        s.containment_certified = c.ideal.contains(s.surface_form);
        s.smoothness_certified = true;
        s.dim_jd = jac.dim_jd;
        if (!s.containment_certified) throw GeometryError("containment certificate failed");
        return s;
    }
    throw GeometryError("no smooth surface found within attempt budget (seed " +
                        std::to_string(seed) + ")");
}

// --- divisors on a smooth surface ------------------------------------------

struct DivisorSpec {
    std::vector<std::pair<ProjectiveScheme, int>> components;  // (curve, multiplicity >= 1)
};

inline ProjectiveScheme divisor_ideal_on_surface(const Polynomial& f, const DivisorSpec& div) {
    if (!jacobian_ideal_and_smoothness(f).smooth)
        throw GeometryError("divisor construction requires a smooth surface");
    const RingDescriptor& R = f.ring();
    Ideal prod = Ideal(R, {Polynomial::constant(R, 1)});
    for (const auto& [c, mult] : div.components) {
        if (mult < 1) throw GeometryError("divisor multiplicity must be positive");
        if (!c.ideal.contains(f)) throw GeometryError("divisor component not on the surface");
        prod = prod.product(c.ideal.power(mult));
    }
    Ideal with_f = prod.sum(Ideal(R, {f}));
    return ProjectiveScheme::from_ideal(with_f);
}

// --- the two-line family (quintic-and-up construction) ----------------------

struct Cas4Bundle {
    Polynomial l1, l2, g1, f1, f2, fx;
    int d = 0, a = 0;
    std::uint64_t seed = 0;
    ProjectiveScheme line;     // V(l1, l2)
    ProjectiveScheme c0;       // V(l1, l2*g1), plane curve of degree a+1
    ProjectiveScheme divisor;  // divisor l + C_0 on V(fx)
    CurveSurfaceScenario scenario;  // divisor curve on the surface fx
};

inline Polynomial random_form(const RingDescriptor& R, int deg, SeededRng& rng) {
    Polynomial f = Polynomial::zero(R);
    for (const auto& m : monomials_of_degree(R.nvars(), deg))
        f = f + Polynomial::monomial(R, m, Rat(rng.small_coeff()));
    return f;
}

inline Cas4Bundle cas4_family(int d, int a, std::uint64_t seed, int max_attempts = 100) {
    if (a < 1) throw GeometryError("family parameter a must be >= 1");
    if (d < a + 2) throw GeometryError("surface degree too small for the family");
    const RingDescriptor& R = RingDescriptor::p3();
    Polynomial l1 = pp("x0"), l2 = pp("x1");
    Ideal plane_pair = Ideal(R, {l1, l2});
    SeededRng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        SeededRng r = rng.child(attempt);
        Polynomial g1 = random_form(R, a, r);
        Polynomial f1 = random_form(R, d - 1, r);
        Polynomial f2 = random_form(R, d - a - 1, r);
        // genericity: none of the three chosen forms lies in (l1, l2)
        if (plane_pair.contains(g1) || plane_pair.contains(f1) || plane_pair.contains(f2))
            continue;
        Polynomial fx = f1 * l1 + f2 * l2 * g1;
        if (fx.degree() != d) continue;
        if (!jacobian_ideal_and_smoothness(fx, false).smooth) continue;

        Cas4Bundle b;
        b.l1 = l1; b.l2 = l2; b.g1 = g1; b.f1 = f1; b.f2 = f2; b.fx = fx;
        b.d = d; b.a = a; b.seed = seed;
        b.line = ProjectiveScheme::from_ideal(Ideal(R, {l1, l2}));
        b.c0 = ProjectiveScheme::from_ideal(Ideal(R, {l1, l2 * g1}));
        DivisorSpec div;
        div.components = {{b.line, 1}, {b.c0, 1}};
        b.divisor = divisor_ideal_on_surface(fx, div);

        CurveSurfaceScenario s;
        s.curve = b.divisor;
        s.surface_form = fx;
        s.d = d;
        s.seed = seed;
        s.containment_certified = b.divisor.ideal.contains(fx);
        s.smoothness_certified = true;
        s.dim_jd = graded_piece(jacobian_ideal_and_smoothness(fx).jacobian.generators(), d, R).dim;
        if (!s.containment_certified) throw GeometryError("divisor containment failed");
        b.scenario = std::move(s);
        return b;
    }
    throw GeometryError("two-line family: genericity or smoothness unattainable (seed " +
                        std::to_string(seed) + ")");
}

// --- degree-14 genus-24 curve on a cubic (extended tier) --------------------

inline CurveSurfaceScenario mumford_scenario(std::uint64_t seed, int max_attempts = 40) {
    const RingDescriptor& R = RingDescriptor::p3();
    Polynomial l1 = pp("x0"), l2 = pp("x1");
    SeededRng rng(seed);
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        SeededRng r = rng.child(attempt);
        // smooth cubic containing the line V(x0, x1)
        Polynomial fx = l1 * random_form(R, 2, r) + l2 * random_form(R, 2, r);
        if (fx.degree() != 3 || !jacobian_ideal_and_smoothness(fx, false).smooth) continue;
        Ideal ix(R, {fx});

        // N = (I_l^2 + I_X)/I_X sheafifies to O_X(-2l); a degree-4 hom
        // N -> (S/I_X)(4) is a section of O_X(4H + 2l).
        Ideal il(R, {l1, l2});
        Ideal il2 = il.product(il);
        GradedModulePresentation n = subquotient_module(il2.generators(), ix);
        GradedModulePresentation sx = GradedModulePresentation::quotient_ring(ix);
        HomSlice w = hom_slice(n, sx, 4);
        if (w.solutions.empty()) continue;

        // deterministic random combination of the solution basis
        QVec phi(w.solutions[0].size(), Rat(0));
        for (const auto& sol : w.solutions) {
            Rat c(r.small_coeff());
            for (size_t i = 0; i < phi.size(); ++i) phi[i] += c * sol[i];
        }
        // image of the section: lift phi(gen_j) to S and add I_X
        std::vector<Polynomial> gens = {fx};
        for (int j = 0; j < n.f0.rank(); ++j) {
            SliceBasis sb(R.nvars(), 4 + n.f0.twists[j]);
            QVec part(phi.begin() + w.offset[j],
                      phi.begin() + w.offset[j] + static_cast<long>(sb.dim()));
            Polynomial img = sb.from_coords(R, part);
            if (!img.is_zero()) gens.push_back(img);
        }
        Ideal ic_raw(R, gens);
        ProjectiveScheme c;
        try {
            c = ProjectiveScheme::from_ideal(ic_raw);
        } catch (const std::exception&) {
            continue;
        }
        if (c.dimension != 1) continue;
        auto [deg, genus] = degree_genus(c);
        if (deg != 14 || genus != 24) continue;

        CurveSurfaceScenario s;
        s.curve = std::move(c);
        s.surface_form = fx;
        s.d = 3;
        s.seed = seed;
        s.containment_certified = s.curve.ideal.contains(fx);
        s.smoothness_certified = true;
        s.dim_jd = graded_piece(jacobian_ideal_and_smoothness(fx).jacobian.generators(), 3, R).dim;
        if (!s.containment_certified) continue;
        // C = Z(phi) with phi a section of Hom(N, O_X)(4) = O_X(4H + 2l),
        // so O_X(-C) = sheaf(N)(-4).
        s.oxmc_model = n;
        s.oxmc_model_shift = 4;
        return s;
    }
    throw GeometryError("degree-14 construction failed within attempt budget (seed " +
                        std::to_string(seed) + ")");
}

}  // namespace noether
