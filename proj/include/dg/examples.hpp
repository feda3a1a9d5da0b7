// Built-in generators: the base field, products of fields with their
// separability-idempotent resolutions, acyclic quiver path algebras with the
// two-term hereditary bimodule resolution, and the two non-smooth controls
// (dual numbers and the exterior algebra on one odd generator).
//
// Path algebras are presented with the unit as a basis element: the basis is
// {one, e_1, ..., e_{k-1}, paths of length >= 1}, the last vertex idempotent
// being one - e_1 - ... - e_{k-1}. The normalized bar construction needs that
// presentation, and it costs only some -1 structure constants.
//
// Every resolution shipped here is data: it is handed to certify_smooth and
// verified, never trusted.

#ifndef DG_EXAMPLES_HPP
#define DG_EXAMPLES_HPP

#include "dg/hochschild.hpp"

namespace dg {

template <class K>
struct GeneratedExample {
    std::string name;
    AlgebraPtr<K> alg;
    TwistedModule<K> pa;       // proposed resolution over enveloping(alg)
    std::vector<Vec<K>> eps;   // generator images in A
    bool expect_certified = true;
};

/** A = k with pA = (A^e, 0) and eps the multiplication (the identity of k). */
template <class K>
GeneratedExample<K> make_base_field() {
    GeneratedExample<K> g;
    g.name = "k";
    auto a = std::make_shared<DGAlgebra<K>>(std::vector<std::string>{"one"}, std::vector<int>{0});
    a->set_product(0, 0, {{0, K(1)}});
    a->set_unit(0);
    g.alg = a;
    g.pa = TwistedModule<K>::free_rank_one(enveloping(*a));
    g.eps = {a->unit()};
    return g;
}

namespace exdetail {

/** Coordinates of x (x) y inside the enveloping algebra. */
template <class K>
Vec<K> env_tensor(const DGAlgebra<K>& a, const AlgebraPtr<K>& env, const Vec<K>& x, const Vec<K>& y) {
    Vec<K> v = env->zero_elem();
    for (int i = 0; i < a.dim(); ++i) {
        if (x(i) == K(0))
            continue;
        for (int j = 0; j < a.dim(); ++j)
            if (y(j) != K(0))
                v(i * a.dim() + j) += x(i) * y(j);
    }
    return v;
}

}  // namespace exdetail

/**
 * A = k^n presented on {one, e_1, .., e_{n-1}}, resolved by the summand of
 * (A^e, 0) cut by the separability idempotent sum_i e_i (x) e_i.
 */
template <class K>
GeneratedExample<K> make_product_fields(int n) {
    if (n < 1)
        throw std::invalid_argument("make_product_fields: n >= 1 required");
    if (n == 1) {
        auto g = make_base_field<K>();
        g.name = "kxk1";
        return g;
    }
    GeneratedExample<K> g;
    g.name = n == 2 ? "kxk" : "kx" + std::to_string(n);
    std::vector<std::string> names{"one"};
    std::vector<int> degs{0};
    for (int i = 1; i < n; ++i) {
        names.push_back("e" + std::to_string(i));
        degs.push_back(0);
    }
    auto a = std::make_shared<DGAlgebra<K>>(names, degs);
    a->set_product(0, 0, {{0, K(1)}});
    for (int i = 1; i < n; ++i) {
        a->set_product(0, i, {{i, K(1)}});
        a->set_product(i, 0, {{i, K(1)}});
        for (int j = 1; j < n; ++j)
            if (i == j)
                a->set_product(i, j, {{i, K(1)}});
            else
                a->set_product(i, j, {});
    }
    a->set_unit(0);
    g.alg = a;

    AlgebraPtr<K> env = enveloping(*a);
    g.pa = TwistedModule<K>::free_rank_one(env);
    // separability idempotent: sum of e_i (x) e_i with e_n = one - sum e_i
    Vec<K> idem = env->zero_elem();
    Vec<K> last = a->unit();
    for (int i = 1; i < n; ++i) {
        idem += exdetail::env_tensor(*a, env, a->basis_elem(i), a->basis_elem(i));
        last -= a->basis_elem(i);
    }
    idem += exdetail::env_tensor(*a, env, last, last);
    TwEntries<K> e;
    e[{0, 0}] = idem;
    g.pa.idem = e;
    g.eps = {a->unit()};
    return g;
}

/**
 * The second certificate for k x k: the two-term resolution with the free
 * module in degree 0 and the complementary summand of A^e in degree -1.
 */
template <class K>
GeneratedExample<K> make_product_fields_two_term() {
    GeneratedExample<K> base = make_product_fields<K>(2);
    GeneratedExample<K> g;
    g.name = "kxk-two-term";
    g.alg = base.alg;
    const DGAlgebra<K>& a = *g.alg;
    AlgebraPtr<K> env = enveloping(a);
    Vec<K> e1 = a.basis_elem(1);
    Vec<K> e2 = a.unit() - e1;
    Vec<K> eps_prime =
        exdetail::env_tensor(a, env, e1, e2) + exdetail::env_tensor(a, env, e2, e1);
    g.pa.alg = env;
    g.pa.shifts = {0, 1};
    g.pa.alpha[{0, 1}] = eps_prime;
    TwEntries<K> e;
    e[{0, 0}] = env->unit();
    e[{1, 1}] = eps_prime;
    g.pa.idem = e;
    g.eps = {a.unit(), a.zero_elem()};
    return g;
}

// ---------------------------------------------------------------------------
// Quiver path algebras
// ---------------------------------------------------------------------------

struct QuiverSpec {
    struct Arrow {
        int src = 0, tgt = 0;  // 1-based vertices
        int degree = 0;
    };
    int vertices = 0;
    std::vector<Arrow> arrows;
    std::string name = "quiver";
};

inline QuiverSpec linear_quiver(int vertices, int arrow_degree = 0) {
    QuiverSpec q;
    q.vertices = vertices;
    for (int i = 1; i < vertices; ++i)
        q.arrows.push_back({i, i + 1, arrow_degree});
    q.name = "a" + std::to_string(vertices) + (arrow_degree ? "deg" + std::to_string(arrow_degree) : "");
    return q;
}

/**
 * Finite-dimensional path algebra of an acyclic quiver on the unit-in-basis
 * presentation. Paths compose like functions: p * q requires t(q) = s(p).
 */
template <class K>
AlgebraPtr<K> make_path_algebra(const QuiverSpec& q) {
    if (q.vertices < 1)
        throw std::invalid_argument("make_path_algebra: at least one vertex");
    // reject oriented cycles so the path algebra is finite dimensional
    {
        std::vector<int> indeg(static_cast<size_t>(q.vertices) + 1, 0);
        for (auto& ar : q.arrows) {
            if (ar.src < 1 || ar.src > q.vertices || ar.tgt < 1 || ar.tgt > q.vertices)
                throw std::invalid_argument("make_path_algebra: arrow endpoint out of range");
            ++indeg[static_cast<size_t>(ar.tgt)];
        }
        std::vector<int> order;
        std::vector<int> deg = indeg;
        for (int v = 1; v <= q.vertices; ++v)
            if (deg[static_cast<size_t>(v)] == 0)
                order.push_back(v);
        for (size_t h = 0; h < order.size(); ++h)
            for (auto& ar : q.arrows)
                if (ar.src == order[h] && --deg[static_cast<size_t>(ar.tgt)] == 0)
                    order.push_back(ar.tgt);
        if (static_cast<int>(order.size()) != q.vertices)
            throw std::invalid_argument("make_path_algebra: quiver has an oriented cycle");
    }

    // enumerate paths by (length, lexicographic on arrow indices)
    struct Path {
        std::vector<int> arrows;  // arrow indices, applied right to left
        int src, tgt, degree;
    };
    std::vector<Path> paths;
    for (size_t ai = 0; ai < q.arrows.size(); ++ai)
        paths.push_back({{static_cast<int>(ai)}, q.arrows[ai].src, q.arrows[ai].tgt, q.arrows[ai].degree});
    {
        size_t lo = 0, hi = paths.size();
        while (lo < hi) {
            for (size_t p = lo; p < hi; ++p)
                for (size_t ai = 0; ai < q.arrows.size(); ++ai)
                    if (q.arrows[ai].src == paths[p].tgt) {
                        Path ext = paths[p];
                        ext.arrows.push_back(static_cast<int>(ai));  // longer path: ai after p
                        ext.tgt = q.arrows[ai].tgt;
                        ext.degree += q.arrows[ai].degree;
                        paths.push_back(std::move(ext));
                    }
            lo = hi;
            hi = paths.size();
        }
    }

    std::vector<std::string> names{"one"};
    std::vector<int> degs{0};
    for (int v = 1; v < q.vertices; ++v) {
        names.push_back("e" + std::to_string(v));
        degs.push_back(0);
    }
    auto path_name = [&](const Path& p) {
        std::string s;
        for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
            s += "a" + std::to_string(*it + 1);
        return s;
    };
    for (auto& p : paths) {
        names.push_back(path_name(p));
        degs.push_back(p.degree);
    }
    auto alg = std::make_shared<DGAlgebra<K>>(names, degs);
    const int nv = q.vertices;
    const int dim = static_cast<int>(names.size());

    // pure-path expansion: basis index -> list of (vertex-path or path index, coeff)
    // pure index: 0..nv-1 = trivial path at vertex v+1; nv+i = path i
    auto pure_of_basis = [&](int b) {
        std::vector<std::pair<int, K>> terms;
        if (b == 0) {
            for (int v = 0; v < nv; ++v)
                terms.push_back({v, K(1)});
        } else if (b < nv) {
            terms.push_back({b - 1, K(1)});
        } else {
            terms.push_back({nv + (b - nv), K(1)});
        }
        return terms;
    };
    auto basis_of_pure = [&](int pure) {
        // trivial path at vertex v: e_v for v < nv, one - sum e_i for v = nv-1 index nv-1
        std::vector<std::pair<int, K>> terms;
        if (pure < nv) {
            if (pure < nv - 1 || nv == 1) {
                terms.push_back({pure == nv - 1 && nv == 1 ? 0 : pure + 1, K(1)});
                if (nv == 1)
                    return terms;  // one vertex: trivial path is the unit
            } else {
                terms.push_back({0, K(1)});
                for (int v = 1; v < nv; ++v)
                    terms.push_back({v, K(-1)});
            }
        } else {
            terms.push_back({nv + (pure - nv), K(1)});
        }
        return terms;
    };
    auto mul_pure = [&](int p1, int p2) -> std::optional<int> {  // p1 * p2, p2 first
        auto src_of = [&](int p) { return p < nv ? p + 1 : paths[static_cast<size_t>(p - nv)].src; };
        auto tgt_of = [&](int p) { return p < nv ? p + 1 : paths[static_cast<size_t>(p - nv)].tgt; };
        if (tgt_of(p2) != src_of(p1))
            return std::nullopt;
        if (p1 < nv)
            return p2;
        if (p2 < nv)
            return p1;
        Path joined = paths[static_cast<size_t>(p2 - nv)];
        const Path& left = paths[static_cast<size_t>(p1 - nv)];
        joined.arrows.insert(joined.arrows.end(), left.arrows.begin(), left.arrows.end());
        joined.tgt = left.tgt;
        joined.degree += left.degree;
        for (size_t i = 0; i < paths.size(); ++i)
            if (paths[i].arrows == joined.arrows)
                return nv + static_cast<int>(i);
        return std::nullopt;  // unreachable for composable paths
    };

    for (int b1 = 0; b1 < dim; ++b1)
        for (int b2 = 0; b2 < dim; ++b2) {
            std::map<int, K> acc;  // pure index -> coeff
            for (auto& [p1, c1] : pure_of_basis(b1))
                for (auto& [p2, c2] : pure_of_basis(b2)) {
                    auto pr = mul_pure(p1, p2);
                    if (pr)
                        acc[*pr] += c1 * c2;
                }
            TermList<K> terms;
            for (auto& [pure, c] : acc) {
                if (c == K(0))
                    continue;
                for (auto& [b, cb] : basis_of_pure(pure))
                    terms.push_back({b, c * cb});
            }
            alg->set_product(b1, b2, std::move(terms));
        }
    alg->set_unit(0);
    return alg;
}

/**
 * The hereditary two-term bimodule resolution of an acyclic path algebra:
 * one degree-0 generator per vertex cut by e_v (x) e_v, one generator of
 * shift 1 - |a| per arrow cut by e_{t(a)} (x) e_{s(a)}, with the alpha column
 * a (x) e_{s(a)} - e_{t(a)} (x) a.
 */
template <class K>
GeneratedExample<K> standard_resolution(const QuiverSpec& q) {
    GeneratedExample<K> g;
    g.name = q.name;
    g.alg = make_path_algebra<K>(q);
    const DGAlgebra<K>& a = *g.alg;
    AlgebraPtr<K> env = enveloping(a);
    const int nv = q.vertices;

    auto vertex_elem = [&](int v) {  // 1-based
        if (v < nv)
            return Vec<K>(a.basis_elem(v));
        Vec<K> last = a.unit();
        for (int i = 1; i < nv; ++i)
            last -= a.basis_elem(i);
        return last;
    };
    auto arrow_elem = [&](int ai) { return Vec<K>(a.basis_elem(nv + ai)); };

    g.pa.alg = env;
    for (int v = 1; v <= nv; ++v)
        g.pa.shifts.push_back(0);
    for (auto& ar : q.arrows)
        g.pa.shifts.push_back(1 - ar.degree);

    TwEntries<K> idem;
    for (int v = 1; v <= nv; ++v)
        idem[{v - 1, v - 1}] = exdetail::env_tensor(a, env, vertex_elem(v), vertex_elem(v));
    for (size_t ai = 0; ai < q.arrows.size(); ++ai) {
        int col = nv + static_cast<int>(ai);
        const auto& ar = q.arrows[ai];
        idem[{col, col}] = exdetail::env_tensor(a, env, vertex_elem(ar.tgt), vertex_elem(ar.src));
        g.pa.alpha[{ar.src - 1, col}] =
            exdetail::env_tensor(a, env, arrow_elem(static_cast<int>(ai)), vertex_elem(ar.src));
        Vec<K> other = exdetail::env_tensor(a, env, vertex_elem(ar.tgt), arrow_elem(static_cast<int>(ai)));
        twdetail::add_entry(g.pa.alpha, ar.tgt - 1, col, Vec<K>(other * K(-1)), *env);
    }
    g.pa.idem = idem;

    for (int v = 1; v <= nv; ++v)
        g.eps.push_back(vertex_elem(v));
    for (size_t ai = 0; ai < q.arrows.size(); ++ai)
        g.eps.push_back(a.zero_elem());
    return g;
}

// ---------------------------------------------------------------------------
// Negative controls (compact but not smooth; shipped without certificates)
// ---------------------------------------------------------------------------

/** k[x]/(x^2) with |x| = 0, and the naive free resolution attempt. */
template <class K>
GeneratedExample<K> make_dual_numbers() {
    GeneratedExample<K> g;
    g.name = "dual";
    auto a = std::make_shared<DGAlgebra<K>>(std::vector<std::string>{"one", "x"}, std::vector<int>{0, 0});
    a->set_product(0, 0, {{0, K(1)}});
    a->set_product(0, 1, {{1, K(1)}});
    a->set_product(1, 0, {{1, K(1)}});
    a->set_product(1, 1, {});
    a->set_unit(0);
    g.alg = a;
    g.pa = TwistedModule<K>::free_rank_one(enveloping(*a));
    g.eps = {a->unit()};
    g.expect_certified = false;
    return g;
}

/** The exterior algebra on one generator of degree -1, zero differential. */
template <class K>
GeneratedExample<K> make_exterior() {
    GeneratedExample<K> g;
    g.name = "exterior";
    auto a = std::make_shared<DGAlgebra<K>>(std::vector<std::string>{"one", "xi"}, std::vector<int>{0, -1});
    a->set_product(0, 0, {{0, K(1)}});
    a->set_product(0, 1, {{1, K(1)}});
    a->set_product(1, 0, {{1, K(1)}});
    a->set_product(1, 1, {});
    a->set_unit(0);
    g.alg = a;
    g.pa = TwistedModule<K>::free_rank_one(enveloping(*a));
    g.eps = {a->unit()};
    g.expect_certified = false;
    return g;
}

/** The certified examples, in report order. */
template <class K>
std::vector<GeneratedExample<K>> certified_examples() {
    return {make_base_field<K>(), make_product_fields<K>(2), standard_resolution<K>(linear_quiver(2)),
            standard_resolution<K>(linear_quiver(3)), standard_resolution<K>(linear_quiver(2, -1))};
}

/**
 * Independent count for HH_0 of an algebra with zero differential: the
 * degree-0 part of A modulo the graded commutator span.
 */
template <class K>
int commutator_quotient_dim0(const DGAlgebra<K>& a) {
    const int n = a.dim();
    std::vector<int> deg0;
    for (int i = 0; i < n; ++i)
        if (a.degree(i) == 0)
            deg0.push_back(i);
    Mat<K> span = zeros<K>(static_cast<int>(deg0.size()), n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (a.degree(i) + a.degree(j) != 0)
                continue;
            Vec<K> comm = a.mul(a.basis_elem(i), a.basis_elem(j)) -
                          a.mul(a.basis_elem(j), a.basis_elem(i)) *
                              K((a.degree(i) * a.degree(j)) % 2 ? -1 : 1);
            for (size_t r = 0; r < deg0.size(); ++r)
                span(static_cast<int>(r), i * n + j) = comm(deg0[r]);
        }
    return static_cast<int>(deg0.size()) - rank(span);
}

}  // namespace dg

#endif
