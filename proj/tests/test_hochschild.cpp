#include "doctest.h"
#include "helpers.hpp"

#include "dg/examples.hpp"

using namespace dg;

TEST_CASE("generated algebras and resolutions all validate and certify") {
    for (auto& g : certified_examples<Rat>()) {
        CAPTURE(g.name);
        CHECK(validate_algebra(*g.alg).ok);
        CHECK(validate_twisted(g.pa).ok);
        auto out = certify_smooth(g.alg, g.pa, g.eps);
        REQUIRE_MESSAGE(out.ok(), g.name, ": ", out.detail.issues.empty() ? "" : out.detail.issues.front());
    }
}

TEST_CASE("certify_smooth rejects broken inputs with the right diagnostics") {
    auto g = standard_resolution<Rat>(linear_quiver(2));

    // wrong Maurer-Cartan data
    auto bad_mc = g.pa;
    bad_mc.alpha[{0, 1}] = bad_mc.alg->basis_elem(0);  // wrong degree entry
    CHECK(certify_smooth(g.alg, bad_mc, g.eps).code == "MC_VIOLATION");

    // eps with the wrong degree is not closed
    auto bad_eps = g.eps;
    bad_eps.back() = g.alg->basis_elem(0);
    CHECK(certify_smooth(g.alg, g.pa, bad_eps).code == "EPS_NOT_CLOSED");

    // eps that is not a quasi-isomorphism: drop a vertex image
    auto zero_eps = g.eps;
    zero_eps[0] = g.alg->zero_elem();
    auto out = certify_smooth(g.alg, g.pa, zero_eps);
    CHECK((out.code == "NOT_QUASI_ISO" || out.code == "EPS_NOT_CLOSED"));

    // the naive free resolutions of the non-smooth controls fail
    auto dn = make_dual_numbers<Rat>();
    auto r1 = certify_smooth(dn.alg, dn.pa, dn.eps);
    CHECK(r1.code == "NOT_QUASI_ISO");
    auto ex = make_exterior<Rat>();
    auto r2 = certify_smooth(ex.alg, ex.pa, ex.eps);
    CHECK(r2.code == "NOT_QUASI_ISO");
}

TEST_CASE("Hochschild dimensions of the certified examples") {
    // base field: HH = k in degree 0
    {
        auto g = make_base_field<Rat>();
        auto hh = hh_resolution(*certify_smooth(g.alg, g.pa, g.eps).cert);
        CHECK(hh.dims == std::map<int, int>{{0, 1}});
    }
    // k x k: two-dimensional, degree 0
    {
        auto g = make_product_fields<Rat>(2);
        auto hh = hh_resolution(*certify_smooth(g.alg, g.pa, g.eps).cert);
        CHECK(hh.dims == std::map<int, int>{{0, 2}});
        CHECK(commutator_quotient_dim0(*g.alg) == 2);
    }
    // path algebras: HH_0 = A / [A, A], one dimension per vertex
    {
        auto g = standard_resolution<Rat>(linear_quiver(2));
        CHECK(g.alg->dim() == 3);
        auto hh = hh_resolution(*certify_smooth(g.alg, g.pa, g.eps).cert);
        CHECK(hh.dims == std::map<int, int>{{0, 2}});
        CHECK(commutator_quotient_dim0(*g.alg) == 2);
    }
    {
        auto g = standard_resolution<Rat>(linear_quiver(3));
        CHECK(g.alg->dim() == 6);
        auto hh = hh_resolution(*certify_smooth(g.alg, g.pa, g.eps).cert);
        CHECK(hh.dims == std::map<int, int>{{0, 3}});
        CHECK(commutator_quotient_dim0(*g.alg) == 3);
    }
    // the genuinely DG case: arrow in degree -1, still concentrated in degree 0
    {
        auto g = standard_resolution<Rat>(linear_quiver(2, -1));
        auto hh = hh_resolution(*certify_smooth(g.alg, g.pa, g.eps).cert);
        CHECK(hh.dims == std::map<int, int>{{0, 2}});
    }
}

TEST_CASE("resolution independence: two certificates for k x k agree") {
    auto g1 = make_product_fields<Rat>(2);
    auto g2 = make_product_fields_two_term<Rat>();
    auto c1 = certify_smooth(g1.alg, g1.pa, g1.eps);
    auto c2 = certify_smooth(g2.alg, g2.pa, g2.eps);
    REQUIRE(c1.ok());
    REQUIRE(c2.ok());
    auto h1 = hh_resolution(*c1.cert);
    auto h2 = hh_resolution(*c2.cert);
    CHECK(h1.dims == h2.dims);
    auto p1 = hh_pairing(*c1.cert);
    auto p2 = hh_pairing(*c2.cert);
    CHECK(p1.found == p2.found);
    CHECK(p1.nondegenerate == p2.nondegenerate);
}

TEST_CASE("bar resolution satisfies Maurer-Cartan, including a DG algebra") {
    auto a2 = dgtest::make_a2_alg<Rat>();
    CHECK(validate_twisted(bar_resolution_truncated<Rat>(a2, enveloping(*a2), 4)).ok);
    auto sqz = dgtest::make_sqz_alg<Rat>();  // d(x) = y exercises the internal term
    CHECK(validate_twisted(bar_resolution_truncated<Rat>(sqz, enveloping(*sqz), 4)).ok);
    auto kk = make_product_fields<Rat>(2).alg;
    CHECK(validate_twisted(bar_resolution_truncated<Rat>(kk, enveloping(*kk), 5)).ok);
}

TEST_CASE("bar oracle on the base field and the stability window") {
    auto g = make_base_field<Rat>();
    BarResult<Rat> b = hh_bar<Rat>(g.alg, -3, 0, 5, true);
    CHECK(b.dims == std::map<int, int>{{-3, 0}, {-2, 0}, {-1, 0}, {0, 1}});
    CHECK(b.unstable.empty());

    // window degrees outside the stable range are flagged, not reported
    BarResult<Rat> s = hh_bar<Rat>(g.alg, -6, 0, 3);
    CHECK(s.unstable == std::vector<int>{-6, -5, -4, -3, -2});
    CHECK(s.dims.count(-1) == 1);

    // positive-degree reduced part is rejected
    auto bad = std::make_shared<DGAlgebra<Rat>>(std::vector<std::string>{"one", "z"},
                                                std::vector<int>{0, 2});
    bad->set_product(0, 0, {{0, Rat(1)}});
    bad->set_product(0, 1, {{1, Rat(1)}});
    bad->set_product(1, 0, {{1, Rat(1)}});
    bad->set_unit(0);
    CHECK_THROWS_WITH_AS(hh_bar<Rat>(bad, -1, 0, 3), "PRECONDITION_POSITIVE_PART", std::domain_error);
}

TEST_CASE("bar oracle reproduces the certified dimensions") {
    for (auto& g : certified_examples<Rat>()) {
        CAPTURE(g.name);
        auto cert = certify_smooth(g.alg, g.pa, g.eps);
        REQUIRE(cert.ok());
        auto hh = hh_resolution(*cert.cert);
        int columns = g.alg->dim() > 4 ? 3 : 6;
        int lo = 2 - columns;
        BarResult<Rat> bar = hh_bar<Rat>(g.alg, lo, 0, columns);
        for (auto& [w, d] : bar.dims)
            CHECK(d == hh.coh.dim(w));
    }
}

TEST_CASE("bar oracle on the dual numbers matches the classical answer") {
    // HH of k[x]/(x^2) over a field of characteristic 0: dimension 2 in
    // degree 0 and dimension 1 in every negative degree.
    auto dn = make_dual_numbers<Rat>();
    BarResult<Rat> bar = hh_bar<Rat>(dn.alg, -6, 0, 8);
    REQUIRE(bar.unstable.empty());
    CHECK(bar.dims.at(0) == 2);
    for (int w = -6; w < 0; ++w)
        CHECK(bar.dims.at(w) == 1);
}

TEST_CASE("bar oracle on the exterior algebra: nonzero in every stable degree") {
    auto ex = make_exterior<Rat>();
    BarResult<Rat> bar = hh_bar<Rat>(ex.alg, -6, 0, 8);
    REQUIRE(bar.unstable.empty());
    int nonzero = 0;
    for (auto& [w, d] : bar.dims)
        if (d > 0)
            ++nonzero;
    CHECK(nonzero >= 4);
}

TEST_CASE("pairing: witness found, nondegenerate, dimension-symmetric") {
    for (auto& g : certified_examples<Rat>()) {
        CAPTURE(g.name);
        auto cert = certify_smooth(g.alg, g.pa, g.eps);
        REQUIRE(cert.ok());
        PairingResult<Rat> p = hh_pairing(*cert.cert);
        CHECK(p.found);
        CHECK(p.dim_symmetric);
        for (auto& [n, ok] : p.nondegenerate)
            CHECK(ok);
        REQUIRE(p.theta.has_value());
        CHECK(is_quasi_iso(*p.theta).yes);
    }
    // the 1x1 matrix over the base field is a nonzero scalar
    auto g = make_base_field<Rat>();
    auto p = hh_pairing(*certify_smooth(g.alg, g.pa, g.eps).cert);
    REQUIRE(p.matrices.count(0) == 1);
    CHECK(p.matrices.at(0)(0, 0) != Rat(0));
}

TEST_CASE("dim_symmetry_check is a literal table comparison") {
    CHECK(dim_symmetry_check<Rat>({{0, 2}}));
    CHECK(dim_symmetry_check<Rat>({{-1, 1}, {0, 3}, {1, 1}}));
    CHECK_FALSE(dim_symmetry_check<Rat>({{-1, 1}, {0, 3}, {1, 2}}));
    CHECK_FALSE(dim_symmetry_check<Rat>({{2, 1}}));
}

TEST_CASE("nonpositive corollary: all certified examples pass") {
    for (auto& g : certified_examples<Rat>()) {
        CAPTURE(g.name);
        auto cert = certify_smooth(g.alg, g.pa, g.eps);
        REQUIRE(cert.ok());
        auto rep = nonpositive_corollary_check(*cert.cert);
        CHECK_MESSAGE(rep.pass, g.name, ": ", rep.issues.empty() ? "" : rep.issues.front());
    }
}

namespace {

// Generators emit field-agnostic constants; bind them all to F_p.
GeneratedExample<Fp> bind_example(GeneratedExample<Fp> g, std::uint64_t p) {
    auto bound = std::make_shared<DGAlgebra<Fp>>(g.alg->names(), g.alg->degrees());
    for (int i = 0; i < g.alg->dim(); ++i) {
        for (int j = 0; j < g.alg->dim(); ++j) {
            TermList<Fp> t = g.alg->product(i, j);
            for (auto& term : t)
                term.coeff = term.coeff.bound_to(p);
            bound->set_product(i, j, std::move(t));
        }
        TermList<Fp> d = g.alg->diff(i);
        for (auto& term : d)
            term.coeff = term.coeff.bound_to(p);
        bound->set_diff(i, std::move(d));
    }
    if (g.alg->unit_index() >= 0)
        bound->set_unit(g.alg->unit_index());
    g.alg = bound;
    auto env = enveloping(*bound);
    g.pa.alg = env;
    auto bind_vec = [p](Vec<Fp>& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            v(i) = v(i).bound_to(p);
    };
    for (auto& [ij, v] : g.pa.alpha)
        bind_vec(v);
    if (g.pa.idem)
        for (auto& [ij, v] : *g.pa.idem)
            bind_vec(v);
    for (auto& v : g.eps)
        bind_vec(v);
    return g;
}

}  // namespace

TEST_CASE("certification and homology work over a prime field") {
    auto g = bind_example(standard_resolution<Fp>(linear_quiver(2)), 5);
    CHECK(validate_algebra(*g.alg).ok);
    auto cert = certify_smooth(g.alg, g.pa, g.eps);
    REQUIRE(cert.ok());
    auto hh = hh_resolution(*cert.cert);
    CHECK(hh.dims == std::map<int, int>{{0, 2}});
    auto p = hh_pairing(*cert.cert);
    CHECK(p.found);
    CHECK(p.dim_symmetric);
    BarResult<Fp> bar = hh_bar<Fp>(g.alg, -2, 0, 4);
    CHECK(bar.dims.at(0) == 2);
    CHECK(bar.dims.at(-1) == 0);
}
