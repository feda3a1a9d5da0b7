#include "doctest.h"
#include "helpers.hpp"

#include "dg/duality.hpp"
#include "dg/examples.hpp"

using namespace dg;
using dgtest::Rng;

namespace {

template <class K>
SmoothCertificate<K> certified(const GeneratedExample<K>& g) {
    auto out = certify_smooth(g.alg, g.pa, g.eps);
    REQUIRE(out.ok());
    return *out.cert;
}

}  // namespace

TEST_CASE("a_star: module axioms and reflected dimensions") {
    for (auto& g : certified_examples<Rat>()) {
        CAPTURE(g.name);
        auto env = enveloping(*g.alg);
        DualizingBimodule<Rat> ds = a_star(g.alg, env);
        CHECK(validate_module(ds.mod).ok);
        Complex<Rat> ca = as_complex(*g.alg);
        for (auto& [n, d] : ca.space.dims())
            CHECK(ds.mod.cx.space.dim(-n) == d);
    }
    // degree-0 algebra: the action has no signs and fixes the dual basis of
    // the center elementwise; sanity check one value for A2.
    auto a2 = dgtest::make_a2_alg<Rat>();
    auto env = enveloping(*a2);
    DualizingBimodule<Rat> ds = a_star(a2, env);
    CHECK(ds.mod.cx.space.dim(0) == 3);
}

TEST_CASE("a_shriek: valid dual resolution with one-sided restrictions") {
    for (auto& g : certified_examples<Rat>()) {
        CAPTURE(g.name);
        auto cert = certified(g);
        InverseDualizing<Rat> ad = a_shriek(cert);
        CHECK(validate_twisted(ad.twisted).ok);
        CHECK(validate_module(ad.real.mod).ok);
        CHECK(validate_module(ad.as_right_a).ok);
        CHECK(validate_module(ad.as_right_aop).ok);
    }
    // base field: A^! = k
    auto cert = certified(make_base_field<Rat>());
    InverseDualizing<Rat> ad = a_shriek(cert);
    CHECK(ad.real.mod.cx.space.total_dim() == 1);
    CHECK(cohomology(ad.real.mod.cx).dim(0) == 1);
    // k x k: the inverse dualizing bimodule of a semisimple algebra has the
    // cohomology of the algebra itself
    auto cert2 = certified(make_product_fields<Rat>(2));
    InverseDualizing<Rat> ad2 = a_shriek(cert2);
    CHECK(cohomology(ad2.real.mod.cx).dims() == std::map<int, int>{{0, 2}});
}

TEST_CASE("nakayama: base field, dimensions, and agreement of both routes") {
    auto k = dgtest::make_k_alg<Rat>();
    ModuleComplex<Rat> sk = nakayama(TwistedModule<Rat>::free_rank_one(k));
    CHECK(sk.cx.space.total_dim() == 1);
    CHECK(validate_module(sk).ok);

    auto a2 = dgtest::make_a2_alg<Rat>();
    auto opa = opposite(*a2);
    Rng rng(97);
    for (int t = 0; t < 5; ++t) {
        auto n = dgtest::random_twisted<Rat>(rng, a2);
        ModuleComplex<Rat> sn = nakayama(n);
        CHECK(validate_module(sn).ok);
        // dims: S(N)^d = (realize N^v)^{-d}
        Realization<Rat> rv = realize(dual_vee(n, opa));
        for (auto& [d, v] : sn.cx.space.dims())
            CHECK(rv.mod.cx.space.dim(-d) == v);
        // the module-level Nakayama agrees on cohomology
        ModuleComplex<Rat> sn2 = nakayama_module(realize(n).mod, a2, opa);
        CHECK(validate_module(sn2).ok);
        CHECK(cohomology(sn.cx).dims() == cohomology(sn2.cx).dims());
    }
}

TEST_CASE("serre_inverse_apply: unit module and the round trip") {
    // A = k: the functor is the identity
    auto certk = certified(make_base_field<Rat>());
    InverseDualizing<Rat> adk = a_shriek(certk);
    ModuleComplex<Rat> unitk = serre_inverse_apply(TwistedModule<Rat>::free_rank_one(certk.alg), adk);
    CHECK(cohomology(unitk.cx).dims() == std::map<int, int>{{0, 1}});

    // n = (A, 0): the output is A^! as a right module
    auto g = standard_resolution<Rat>(linear_quiver(2));
    auto cert = certified(g);
    InverseDualizing<Rat> ad = a_shriek(cert);
    ModuleComplex<Rat> out = serre_inverse_apply(TwistedModule<Rat>::free_rank_one(cert.alg), ad);
    CHECK(validate_module(out).ok);
    CHECK(cohomology(out.cx).dims() == cohomology(ad.real.mod.cx).dims());

    // round trip on A2: S_A(N (x) A^!) has the cohomology of N
    auto opa = opposite(*cert.alg);
    Rng rng(101);
    for (int t = 0; t < 4; ++t) {
        auto n = dgtest::random_twisted<Rat>(rng, cert.alg);
        ModuleComplex<Rat> x = serre_inverse_apply(n, ad);
        REQUIRE(validate_module(x).ok);
        ModuleComplex<Rat> sx = nakayama_module(x, cert.alg, opa);
        CHECK(cohomology(sx.cx).dims() == cohomology(realize(n).mod.cx).dims());
    }
}

TEST_CASE("serre_check on the stated examples and random pairs") {
    // A = k, n = m = (A, 0): both sides are one-dimensional in degree 0
    auto k = dgtest::make_k_alg<Rat>();
    auto f = TwistedModule<Rat>::free_rank_one(k);
    SerreReport rk = serre_check(f, f);
    CHECK(rk.pass);
    CHECK(rk.table.at(0) == std::pair<int, int>{1, 1});

    // k x k: the two idempotent summands pair off-diagonally to zero
    auto kk = make_product_fields<Rat>(2).alg;
    auto env = enveloping(*kk);
    TwistedModule<Rat> p1 = TwistedModule<Rat>::free_rank_one(kk);
    TwEntries<Rat> e1;
    e1[{0, 0}] = kk->basis_elem(1);
    p1.idem = e1;
    TwistedModule<Rat> p2 = TwistedModule<Rat>::free_rank_one(kk);
    Vec<Rat> other = kk->unit() - kk->basis_elem(1);
    TwEntries<Rat> e2;
    e2[{0, 0}] = other;
    p2.idem = e2;
    SerreReport r12 = serre_check(p1, p2);
    CHECK(r12.pass);
    for (auto& [t, pr] : r12.table)
        CHECK(pr.first == 0);
    SerreReport r11 = serre_check(p1, p1);
    CHECK(r11.pass);
    CHECK(r11.table.at(0) == std::pair<int, int>{1, 1});

    // random twisted pairs over A2
    auto a2 = dgtest::make_a2_alg<Rat>();
    Rng rng(103);
    for (int t = 0; t < 8; ++t) {
        auto n = dgtest::random_twisted<Rat>(rng, a2);
        auto m = dgtest::random_twisted<Rat>(rng, a2);
        SerreReport rep = serre_check(n, m);
        CHECK(rep.pass);
        // swapping the arguments reflects the table
        SerreReport rep2 = serre_check(m, n);
        CHECK(rep2.pass);
    }
}

TEST_CASE("invert_check: dimension tables match H(A), witnesses for k and kxk") {
    for (auto& g : certified_examples<Rat>()) {
        CAPTURE(g.name);
        auto cert = certified(g);
        bool small = g.alg->dim() <= 2;
        InvertReport rep = invert_check(cert, /*search_witness=*/small);
        CHECK(rep.dims_ok);
        if (small) {
            CHECK(rep.witness_left);
            CHECK(rep.witness_right);
        }
    }
}
