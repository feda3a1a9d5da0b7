// Shared test utilities: a deterministic RNG and random-but-valid builders
// for complexes and chain data. Random complexes are made by conjugating a
// sum of interval complexes with a random change of basis, so d^2 = 0 holds
// exactly while the matrices stay generic.

#ifndef DG_TESTS_HELPERS_HPP
#define DG_TESTS_HELPERS_HPP

#include "dg/twisted.hpp"

#include <cstdint>

namespace dgtest {

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed ? seed : 0x9e3779b97f4a7c15ull) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    int uniform(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1));
    }
};

template <class K>
dg::Mat<K> random_matrix(Rng& rng, int rows, int cols, int lo = -3, int hi = 3) {
    dg::Mat<K> m = dg::zeros<K>(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = K(rng.uniform(lo, hi));
    return m;
}

template <class K>
dg::Mat<K> random_invertible(Rng& rng, int n) {
    while (true) {
        dg::Mat<K> m = random_matrix<K>(rng, n, n, -2, 2);
        if (dg::rank(m) == n)
            return m;
    }
}

/**
 * Random complex with exact d^2 = 0: a direct sum of points and intervals
 * (k -> k), conjugated by random invertible degreewise changes of basis.
 */
template <class K>
dg::Complex<K> random_complex(Rng& rng, int min_deg = -2, int max_deg = 2, int max_pieces = 4) {
    std::map<int, int> dims;
    std::map<int, std::vector<std::pair<int, int>>> arrows;  // degree n -> (src idx, tgt idx)
    int pieces = rng.uniform(1, max_pieces);
    for (int p = 0; p < pieces; ++p) {
        int n = rng.uniform(min_deg, max_deg - 1);
        if (rng.uniform(0, 2) == 0) {
            dims[n] += 1;  // point
        } else {
            int s = dims[n]++;
            int t = dims[n + 1]++;
            arrows[n].push_back({s, t});
        }
    }
    dg::Complex<K> c;
    for (auto& [n, d] : dims)
        if (d > 0)
            c.space.set_dim(n, d);
    c.d = dg::GradedMap<K>(c.space, c.space, 1);
    for (auto& [n, as] : arrows) {
        dg::Mat<K> b = dg::zeros<K>(c.space.dim(n + 1), c.space.dim(n));
        for (auto& [s, t] : as)
            b(t, s) = K(rng.uniform(1, 3));
        c.d.set_block(n, b);
    }
    // conjugate by a random change of basis
    std::map<int, dg::Mat<K>> g, ginv;
    for (auto& [n, d] : c.space.dims()) {
        g[n] = random_invertible<K>(rng, d);
        ginv[n] = dg::solve_all<K>(g[n], dg::identity<K>(d));
    }
    dg::GradedMap<K> nd(c.space, c.space, 1);
    for (auto& [n, d] : c.space.dims()) {
        (void)d;
        if (c.space.dim(n + 1) == 0)
            continue;
        nd.set_block(n, g[n + 1] * c.d.block(n) * ginv[n]);
    }
    c.d = nd;
    return c;
}

/**
 * Random twisted module over an algebra with zero differential: entries are
 * sampled degreewise and resampled until the Maurer-Cartan equation holds
 * (it constrains products of earlier entries only when d = 0).
 */
template <class K>
dg::TwistedModule<K> random_twisted(Rng& rng, dg::AlgebraPtr<K> a, int max_gens = 3) {
    for (int attempt = 0; attempt < 16; ++attempt) {
        dg::TwistedModule<K> t;
        t.alg = a;
        int n = rng.uniform(1, max_gens);
        for (int i = 0; i < n; ++i)
            t.shifts.push_back(rng.uniform(-1, 1));
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i) {
                int want = 1 + t.shifts[static_cast<size_t>(i)] - t.shifts[static_cast<size_t>(j)];
                dg::Vec<K> v = a->zero_elem();
                bool nonzero = false;
                for (int b = 0; b < a->dim(); ++b)
                    if (a->degree(b) == want && rng.uniform(0, 1) == 0) {
                        v(b) = K(rng.uniform(-2, 2));
                        nonzero = nonzero || v(b) != K(0);
                    }
                if (nonzero)
                    t.alpha[{i, j}] = v;
            }
        if (dg::validate_twisted(t).ok)
            return t;
    }
    // fallback: a plain sum of shifted free modules always satisfies MC
    dg::TwistedModule<K> t;
    t.alg = a;
    t.shifts = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
    return t;
}

/** The base field as a one-dimensional algebra. */
template <class K>
dg::AlgebraPtr<K> make_k_alg() {
    auto a = std::make_shared<dg::DGAlgebra<K>>(std::vector<std::string>{"one"}, std::vector<int>{1 - 1});
    a->set_product(0, 0, {{0, K(1)}});
    a->set_unit(0);
    return a;
}

/** Path algebra of the two-vertex quiver, basis {one, e1, a}, e2 = one - e1. */
template <class K>
dg::AlgebraPtr<K> make_a2_alg(int arrow_degree = 0) {
    auto a = std::make_shared<dg::DGAlgebra<K>>(std::vector<std::string>{"one", "e1", "a"},
                                                std::vector<int>{0, 0, arrow_degree});
    auto one = [&](int i, int j, int k) { a->set_product(i, j, {{k, K(1)}}); };
    one(0, 0, 0);
    one(0, 1, 1);
    one(0, 2, 2);
    one(1, 0, 1);
    one(1, 1, 1);
    one(2, 0, 2);
    one(2, 1, 2);  // a e1 = a; e1 a = 0; a a = 0
    a->set_unit(0);
    return a;
}

/** Square-zero extension with a genuine differential: |x| = -1, d(x) = y. */
template <class K>
dg::AlgebraPtr<K> make_sqz_alg() {
    auto a = std::make_shared<dg::DGAlgebra<K>>(std::vector<std::string>{"one", "x", "y"},
                                                std::vector<int>{0, -1, 0});
    a->set_product(0, 0, {{0, K(1)}});
    a->set_product(0, 1, {{1, K(1)}});
    a->set_product(0, 2, {{2, K(1)}});
    a->set_product(1, 0, {{1, K(1)}});
    a->set_product(2, 0, {{2, K(1)}});
    a->set_diff(1, {{2, K(1)}});
    a->set_unit(0);
    return a;
}

}  // namespace dgtest

#endif
