// Right DG modules presented as complexes with explicit action matrices, and
// the module-level functors: linear-dual (with transported action), Hom of
// modules, tensor over the algebra, restriction along an algebra embedding,
// and idempotent cuts.
//
// Left modules never get their own notion: a left B-module is carried as a
// right B^op-module, and tensor-over-B consumes an explicit left action
// assembled from one (b.m := (-1)^{|b||m|} m.b with the product taken in
// B^op). The two diagonal actions of the enveloping algebra on the algebra
// itself live here as well.

#ifndef DG_MODULES_HPP
#define DG_MODULES_HPP

#include "dg/dgalg.hpp"

namespace dg {

/** Right DG module: a complex plus one action map per algebra basis element. */
template <class K>
struct ModuleComplex {
    AlgebraPtr<K> alg;
    Complex<K> cx;
    std::vector<GradedMap<K>> act;  // act[b] has degree deg(x_b)

    GradedMap<K> act_of(const Vec<K>& x) const {
        auto deg = alg->homogeneous_degree(x);
        if (!deg)
            throw std::invalid_argument("act_of: element is not homogeneous");
        GradedMap<K> m(cx.space, cx.space, *deg);
        for (int b = 0; b < alg->dim(); ++b)
            if (x(b) != K(0))
                m = m + act[static_cast<size_t>(b)] * x(b);
        return m;
    }
};

/** Left action data for tensoring over the algebra. */
template <class K>
struct LeftAction {
    AlgebraPtr<K> alg;
    Complex<K> cx;
    std::vector<GradedMap<K>> act;  // act[b] has degree deg(x_b)
};

/** Left B-action carried by a right B^op-module. */
template <class K>
LeftAction<K> left_action_from_op(const ModuleComplex<K>& m_over_op, const AlgebraPtr<K>& b) {
    LeftAction<K> l;
    l.alg = b;
    l.cx = m_over_op.cx;
    for (int i = 0; i < b->dim(); ++i) {
        auto f = [deg = b->degree(i)](int n) { return (deg * n) % 2 ? -1 : 1; };
        l.act.push_back(m_over_op.act[static_cast<size_t>(i)].twist(f));
    }
    return l;
}

template <class K>
ValidationReport validate_module(const ModuleComplex<K>& m) {
    ValidationReport rep;
    auto cxrep = validate_complex(m.cx);
    if (!cxrep.ok) {
        rep.fail("underlying complex invalid: " + cxrep.issues.front());
        return rep;
    }
    const auto& a = *m.alg;
    if (static_cast<int>(m.act.size()) != a.dim()) {
        rep.fail("action matrix count does not match the algebra dimension");
        return rep;
    }
    GradedMap<K> unit_act(m.cx.space, m.cx.space, 0);
    for (int b = 0; b < a.dim(); ++b)
        if (a.unit()(b) != K(0))
            unit_act = unit_act + m.act[static_cast<size_t>(b)] * a.unit()(b);
    if (!(unit_act == GradedMap<K>::identity_on(m.cx.space)))
        rep.fail("unit does not act as the identity");
    for (int b = 0; b < a.dim() && rep.ok; ++b)
        for (int b2 = 0; b2 < a.dim(); ++b2) {
            // m.(x_b x_{b2}) = (m.x_b).x_{b2}
            GradedMap<K> lhs(m.cx.space, m.cx.space, a.degree(b) + a.degree(b2));
            for (auto& t : a.product(b, b2))
                lhs = lhs + m.act[static_cast<size_t>(t.idx)] * t.coeff;
            GradedMap<K> rhs = m.act[static_cast<size_t>(b2)].compose_after(m.act[static_cast<size_t>(b)]);
            if (!(lhs == rhs)) {
                rep.fail("action not associative on (" + a.name(b) + ", " + a.name(b2) + ")");
                break;
            }
        }
    for (int b = 0; b < a.dim() && rep.ok; ++b) {
        // d(m.x_b) = d(m).x_b + (-1)^{|m|} m.d(x_b)
        GradedMap<K> db(m.cx.space, m.cx.space, a.degree(b) + 1);
        for (auto& t : a.diff(b))
            db = db + m.act[static_cast<size_t>(t.idx)] * t.coeff;
        GradedMap<K> lhs = m.cx.d.compose_after(m.act[static_cast<size_t>(b)]);
        GradedMap<K> rhs =
            m.act[static_cast<size_t>(b)].compose_after(m.cx.d) + db.twist([](int n) { return n % 2 ? -1 : 1; });
        if (!(lhs == rhs))
            rep.fail("action does not satisfy the Leibniz rule for " + a.name(b));
    }
    return rep;
}

template <class K>
ValidationReport validate_left_action(const LeftAction<K>& m) {
    ValidationReport rep;
    const auto& a = *m.alg;
    GradedMap<K> unit_act(m.cx.space, m.cx.space, 0);
    for (int b = 0; b < a.dim(); ++b)
        if (a.unit()(b) != K(0))
            unit_act = unit_act + m.act[static_cast<size_t>(b)] * a.unit()(b);
    if (!(unit_act == GradedMap<K>::identity_on(m.cx.space)))
        rep.fail("unit does not act as the identity");
    for (int b = 0; b < a.dim() && rep.ok; ++b)
        for (int b2 = 0; b2 < a.dim(); ++b2) {
            // (x_b x_{b2}).m = x_b.(x_{b2}.m)
            GradedMap<K> lhs(m.cx.space, m.cx.space, a.degree(b) + a.degree(b2));
            for (auto& t : a.product(b, b2))
                lhs = lhs + m.act[static_cast<size_t>(t.idx)] * t.coeff;
            GradedMap<K> rhs = m.act[static_cast<size_t>(b)].compose_after(m.act[static_cast<size_t>(b2)]);
            if (!(lhs == rhs)) {
                rep.fail("left action not associative on (" + a.name(b) + ", " + a.name(b2) + ")");
                break;
            }
        }
    for (int b = 0; b < a.dim() && rep.ok; ++b) {
        GradedMap<K> db(m.cx.space, m.cx.space, a.degree(b) + 1);
        for (auto& t : a.diff(b))
            db = db + m.act[static_cast<size_t>(t.idx)] * t.coeff;
        GradedMap<K> lhs = m.cx.d.compose_after(m.act[static_cast<size_t>(b)]);
        K sgn = K(a.degree(b) % 2 ? -1 : 1);
        GradedMap<K> rhs = db + m.act[static_cast<size_t>(b)].compose_after(m.cx.d) * sgn;
        if (!(lhs == rhs))
            rep.fail("left action does not satisfy the Leibniz rule for " + a.name(b));
    }
    return rep;
}

/** True when f (any degree) strictly commutes with the right actions. */
template <class K>
bool is_module_map(const GradedMap<K>& f, const ModuleComplex<K>& n, const ModuleComplex<K>& m) {
    for (int b = 0; b < n.alg->dim(); ++b) {
        GradedMap<K> lhs = f.compose_after(n.act[static_cast<size_t>(b)]);
        GradedMap<K> rhs = m.act[static_cast<size_t>(b)].compose_after(f);
        if (!(lhs == rhs))
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Diagonal actions of A^e on A
// ---------------------------------------------------------------------------

template <class K, class SignFn>
void assemble_degreewise(const DGAlgebra<K>& a, const Complex<K>& cx, const Mat<K>& full, int opdeg,
                         SignFn sign, GradedMap<K>& out);

/**
 * A as a right A^e-module: a.(x (x) y) = (-1)^{|a||x|} x a y. This is the
 * structure against which bimodule resolutions of the diagonal map to A.
 */
template <class K>
ModuleComplex<K> diagonal_right_action(const AlgebraPtr<K>& a, const AlgebraPtr<K>& env) {
    ModuleComplex<K> m;
    m.alg = env;
    m.cx = as_complex(*a);
    const int n = a->dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat<K> full = a->left_mult(a->basis_elem(i)) * a->right_mult(a->basis_elem(j));
            GradedMap<K> g(m.cx.space, m.cx.space, a->degree(i) + a->degree(j));
            assemble_degreewise(*a, m.cx, full, a->degree(i) + a->degree(j), [&](int deg) {
                return K((a->degree(i) * deg) % 2 ? -1 : 1);
            }, g);
            m.act.push_back(std::move(g));
        }
    return m;
}

/**
 * A as a left A^e-module: (x (x) y).a = (-1)^{|x|(|a|+|y|)} y a x. The tensor
 * A (x)^L_{A^e} A is formed against this action.
 */
template <class K>
LeftAction<K> diagonal_left_action(const AlgebraPtr<K>& a, const AlgebraPtr<K>& env) {
    LeftAction<K> m;
    m.alg = env;
    m.cx = as_complex(*a);
    const int n = a->dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Mat<K> full = a->left_mult(a->basis_elem(j)) * a->right_mult(a->basis_elem(i));
            GradedMap<K> g(m.cx.space, m.cx.space, a->degree(i) + a->degree(j));
            assemble_degreewise(*a, m.cx, full, a->degree(i) + a->degree(j), [&](int deg) {
                return K((a->degree(i) * (deg + a->degree(j))) % 2 ? -1 : 1);
            }, g);
            m.act.push_back(std::move(g));
        }
    return m;
}

/** Scatter a full algebra-coordinates operator into degreewise blocks. */
template <class K, class SignFn>
void assemble_degreewise(const DGAlgebra<K>& a, const Complex<K>& cx, const Mat<K>& full, int opdeg,
                         SignFn sign, GradedMap<K>& out) {
    auto pos = complex_positions(a);
    std::map<int, Mat<K>> blocks;
    for (int src = 0; src < a.dim(); ++src) {
        int ns = a.degree(src);
        for (int dst = 0; dst < a.dim(); ++dst) {
            if (full(dst, src) == K(0))
                continue;
            if (a.degree(dst) != ns + opdeg)
                throw std::logic_error("assemble_degreewise: operator is not homogeneous of stated degree");
            auto it = blocks.find(ns);
            if (it == blocks.end())
                it = blocks.emplace(ns, zeros<K>(cx.space.dim(ns + opdeg), cx.space.dim(ns))).first;
            it->second(pos[static_cast<size_t>(dst)].second, pos[static_cast<size_t>(src)].second) +=
                sign(ns) * full(dst, src);
        }
    }
    for (auto& [n, b] : blocks)
        out.set_block(n, std::move(b));
}

/** Right-module map E -> A, u -> 1.u; the multiplication map x(x)y -> xy. */
template <class K>
GradedMap<K> multiplication_map(const AlgebraPtr<K>& a, const Complex<K>& env_cx, const AlgebraPtr<K>& env,
                                const Complex<K>& a_cx) {
    GradedMap<K> mu(env_cx.space, a_cx.space, 0);
    auto pos_env = complex_positions(*env);
    auto pos_a = complex_positions(*a);
    std::map<int, Mat<K>> blocks;
    const int n = a->dim();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int u = i * n + j;
            Vec<K> prod = a->mul(a->basis_elem(i), a->basis_elem(j));
            int nd = env->degree(u);
            for (int c = 0; c < n; ++c) {
                if (prod(c) == K(0))
                    continue;
                auto it = blocks.find(nd);
                if (it == blocks.end())
                    it = blocks.emplace(nd, zeros<K>(a_cx.space.dim(nd), env_cx.space.dim(nd))).first;
                it->second(pos_a[static_cast<size_t>(c)].second, pos_env[static_cast<size_t>(u)].second) +=
                    prod(c);
            }
        }
    for (auto& [nd, b] : blocks)
        mu.set_block(nd, std::move(b));
    return mu;
}

// ---------------------------------------------------------------------------
// Dual module, restriction, idempotent cut
// ---------------------------------------------------------------------------

/**
 * Linear dual as a right module over the opposite algebra:
 * (nu.b)(m) = (-1)^{|b||m|} nu(m.b).
 */
template <class K>
ModuleComplex<K> dual_module(const ModuleComplex<K>& m, const AlgebraPtr<K>& op_alg) {
    ModuleComplex<K> r;
    r.alg = op_alg;
    r.cx = dual(m.cx);
    for (int b = 0; b < m.alg->dim(); ++b) {
        int bd = m.alg->degree(b);
        GradedMap<K> g(r.cx.space, r.cx.space, bd);
        for (auto& [n, dim] : r.cx.space.dims()) {
            (void)dim;
            if (r.cx.space.dim(n + bd) == 0)
                continue;
            K sgn = K((bd * (n + 1)) % 2 ? -1 : 1);
            g.set_block(n, Mat<K>(m.act[static_cast<size_t>(b)].block(-n - bd).transpose()) * sgn);
        }
        r.act.push_back(std::move(g));
    }
    return r;
}

/** Restrict along an algebra map C -> B given by images of C's basis. */
template <class K>
ModuleComplex<K> restrict_action(const ModuleComplex<K>& m, const AlgebraPtr<K>& c,
                                 const std::vector<Vec<K>>& images) {
    ModuleComplex<K> r;
    r.alg = c;
    r.cx = m.cx;
    for (int i = 0; i < c->dim(); ++i) {
        const Vec<K>& img = images[static_cast<size_t>(i)];
        auto deg = m.alg->homogeneous_degree(img);
        if (!deg || *deg != c->degree(i))
            throw std::invalid_argument("restrict_action: embedding image has wrong degree");
        r.act.push_back(m.act_of(img));
    }
    return r;
}

template <class K>
struct CutModule {
    ModuleComplex<K> mod;
    GradedMap<K> incl;  // mod -> carrier
    GradedMap<K> proj;  // carrier -> mod
};

/** Image of a closed idempotent module endomorphism, with transported action. */
template <class K>
CutModule<K> cut_by_idempotent(const ModuleComplex<K>& m, const GradedMap<K>& e) {
    CutModule<K> out;
    SubcomplexPresentation<K> sub = image_subcomplex(m.cx, e);
    out.mod.alg = m.alg;
    out.mod.cx = sub.sub;
    out.incl = sub.incl;
    out.proj = sub.proj;
    for (int b = 0; b < m.alg->dim(); ++b)
        out.mod.act.push_back(
            sub.proj.compose_after(m.act[static_cast<size_t>(b)].compose_after(sub.incl)));
    return out;
}

// ---------------------------------------------------------------------------
// Hom of modules
// ---------------------------------------------------------------------------

/**
 * The complex of strictly action-linear maps N -> M, presented inside the
 * plain Hom complex of the underlying complexes. `basis[p]` columns are the
 * chosen hom-vector coordinates of the degree-p module maps.
 */
template <class K>
struct ModuleHom {
    Complex<K> hc;               // the Hom-of-modules complex in its own coordinates
    Complex<K> ambient;          // Hom of underlying complexes
    HomLayout layout;            // layout of the ambient Hom
    std::map<int, Mat<K>> basis; // degree -> ambient columns spanning the module maps

    /** Express an ambient hom-vector known to be action-linear in hc coordinates. */
    Vec<K> coords(int p, const Vec<K>& ambient_vec) const {
        auto it = basis.find(p);
        if (it == basis.end()) {
            if (!is_zero_vec(ambient_vec))
                throw std::domain_error("ModuleHom::coords: nonzero vector outside the module-map space");
            return Vec<K>::Constant(0, K(0));
        }
        auto sol = solve<K>(it->second, ambient_vec);
        if (!sol)
            throw std::domain_error("ModuleHom::coords: vector is not action-linear");
        return *sol;
    }

  private:
    static bool is_zero_vec(const Vec<K>& v) {
        for (Eigen::Index i = 0; i < v.size(); ++i)
            if (v(i) != K(0))
                return false;
        return true;
    }
};

template <class K>
ModuleHom<K> module_hom(const ModuleComplex<K>& n, const ModuleComplex<K>& m) {
    if (!(*n.alg == *m.alg))
        throw std::invalid_argument("module_hom: modules live over different algebras");
    ModuleHom<K> out;
    out.ambient = hom_complex(n.cx, m.cx, &out.layout);

    // Cut out the action-linear maps degree by degree.
    for (auto& [p, dimp] : out.ambient.space.dims()) {
        std::vector<Mat<K>> constraint_rows;
        Eigen::Index total_rows = 0;
        for (int b = 0; b < n.alg->dim(); ++b) {
            int bd = n.alg->degree(b);
            // g = f o rho_N(b) - rho_M(b) o f has hom-degree p + bd.
            auto git = out.layout.offset.find(p + bd);
            int gdim = out.ambient.space.dim(p + bd);
            if (gdim == 0)
                continue;
            Mat<K> c = zeros<K>(gdim, dimp);
            auto fit = out.layout.offset.find(p);
            for (auto& [msrc, off] : fit->second) {
                int dn = n.cx.space.dim(msrc), dm = m.cx.space.dim(msrc + p);
                // f o rho_N(b): component at source degree msrc - bd
                if (git->second.count(msrc - bd)) {
                    Mat<K> rn = n.act[static_cast<size_t>(b)].block(msrc - bd);
                    int goff = git->second.at(msrc - bd);
                    for (int a = 0; a < dn; ++a)
                        for (int a2 = 0; a2 < n.cx.space.dim(msrc - bd); ++a2) {
                            if (rn(a, a2) == K(0))
                                continue;
                            for (int rr = 0; rr < dm; ++rr)
                                c(goff + a2 * dm + rr, off + a * dm + rr) += rn(a, a2);
                        }
                }
                // -rho_M(b) o f: component at source degree msrc
                if (git->second.count(msrc) && m.cx.space.dim(msrc + p + bd) > 0) {
                    Mat<K> rm = m.act[static_cast<size_t>(b)].block(msrc + p);
                    int goff = git->second.at(msrc);
                    int dm2 = m.cx.space.dim(msrc + p + bd);
                    for (int a = 0; a < dn; ++a)
                        for (int s = 0; s < dm2; ++s)
                            for (int rr = 0; rr < dm; ++rr) {
                                if (rm(s, rr) == K(0))
                                    continue;
                                c(goff + a * dm2 + s, off + a * dm + rr) -= rm(s, rr);
                            }
                }
            }
            constraint_rows.push_back(std::move(c));
            total_rows += constraint_rows.back().rows();
        }
        Mat<K> sys = zeros<K>(total_rows, dimp);
        Eigen::Index row = 0;
        for (auto& c : constraint_rows) {
            sys.middleRows(row, c.rows()) = c;
            row += c.rows();
        }
        Mat<K> z = kernel_basis(sys);
        if (z.cols() > 0) {
            out.basis[p] = z;
            out.hc.space.set_dim(p, static_cast<int>(z.cols()));
        }
    }
    out.hc.d = GradedMap<K>(out.hc.space, out.hc.space, 1);
    for (auto& [p, z] : out.basis) {
        if (out.hc.space.dim(p + 1) == 0)
            continue;
        Mat<K> dz = out.ambient.d.block(p) * z;
        out.hc.d.set_block(p, solve_all<K>(out.basis.at(p + 1), dz));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor over the algebra
// ---------------------------------------------------------------------------

/**
 * N (x)_B M for a right module N and a left action on M: the quotient of
 * N (x)_k M by (n.b)(x)m - n(x)(b.m). Carries projection and section between
 * ambient and quotient coordinates.
 */
template <class K>
struct TensorOver {
    Complex<K> quot;
    Complex<K> ambient;
    TensorLayout layout;
    GradedMap<K> proj;                 // ambient -> quot
    GradedMap<K> lift;                 // quot -> ambient
    std::map<int, Mat<K>> relations;   // degreewise span of the quotiented relations

    /** Transport an ambient endo-operator that descends to the quotient. */
    GradedMap<K> induce(const GradedMap<K>& ambient_op) const {
        return proj.compose_after(ambient_op.compose_after(lift));
    }
};

template <class K>
TensorOver<K> tensor_over(const ModuleComplex<K>& n, const LeftAction<K>& m) {
    if (!(*n.alg == *m.alg))
        throw std::invalid_argument("tensor_over: right and left structures over different algebras");
    TensorOver<K> out;
    out.ambient = tensor(n.cx, m.cx, &out.layout);

    std::map<int, std::vector<Vec<K>>> rel;
    for (int b = 0; b < n.alg->dim(); ++b) {
        int bd = n.alg->degree(b);
        const GradedMap<K>& rho = n.act[static_cast<size_t>(b)];
        const GradedMap<K>& lam = m.act[static_cast<size_t>(b)];
        for (auto& [u, dn] : n.cx.space.dims())
            for (auto& [w, dm] : m.cx.space.dims()) {
                int ndeg = u + bd + w;
                if (out.ambient.space.dim(ndeg) == 0)
                    continue;
                Mat<K> rb = rho.block(u);   // N^u -> N^{u+bd}
                Mat<K> lb = lam.block(w);   // M^w -> M^{w+bd}
                for (int a = 0; a < dn; ++a)
                    for (int x = 0; x < dm; ++x) {
                        Vec<K> v = Vec<K>::Constant(out.ambient.space.dim(ndeg), K(0));
                        bool nonzero = false;
                        if (n.cx.space.dim(u + bd) > 0 && out.layout.offset.at(ndeg).count(u + bd)) {
                            int off = out.layout.offset.at(ndeg).at(u + bd);
                            for (int a2 = 0; a2 < n.cx.space.dim(u + bd); ++a2) {
                                if (rb(a2, a) == K(0))
                                    continue;
                                v(off + a2 * dm + x) += rb(a2, a);
                                nonzero = true;
                            }
                        }
                        if (m.cx.space.dim(w + bd) > 0 && out.layout.offset.at(ndeg).count(u)) {
                            int off = out.layout.offset.at(ndeg).at(u);
                            int dm2 = m.cx.space.dim(w + bd);
                            for (int x2 = 0; x2 < dm2; ++x2) {
                                if (lb(x2, x) == K(0))
                                    continue;
                                v(off + a * dm2 + x2) -= lb(x2, x);
                                nonzero = true;
                            }
                        }
                        if (nonzero)
                            rel[ndeg].push_back(std::move(v));
                    }
            }
    }
    std::map<int, Mat<K>> span;
    for (auto& [ndeg, vecs] : rel) {
        Mat<K> w = zeros<K>(out.ambient.space.dim(ndeg), static_cast<Eigen::Index>(vecs.size()));
        for (size_t j = 0; j < vecs.size(); ++j)
            w.col(static_cast<Eigen::Index>(j)) = vecs[j];
        span[ndeg] = std::move(w);
    }
    out.relations = span;
    QuotientPresentation<K> q = quotient_complex(out.ambient, span);
    out.quot = std::move(q.quot);
    out.proj = std::move(q.proj);
    out.lift = std::move(q.lift);
    return out;
}

/** Right action on N (x) M through the first factor: (n (x) m).c = +-(n.c)(x)m. */
template <class K>
GradedMap<K> tensor_act_first(const TensorLayout& lay, const Complex<K>& ambient, const Complex<K>& ncx,
                              const Complex<K>& mcx, const GradedMap<K>& rho_c, int cdeg) {
    GradedMap<K> g(ambient.space, ambient.space, cdeg);
    std::map<int, Mat<K>> blocks;
    for (auto& [ndeg, offs] : lay.offset) {
        if (ambient.space.dim(ndeg + cdeg) == 0 || ambient.space.dim(ndeg) == 0)
            continue;
        Mat<K> b = zeros<K>(ambient.space.dim(ndeg + cdeg), ambient.space.dim(ndeg));
        bool nonzero = false;
        for (auto& [u, off] : offs) {
            int dn = ncx.space.dim(u), dm = mcx.space.dim(ndeg - u);
            if (ncx.space.dim(u + cdeg) == 0 || !lay.offset.at(ndeg + cdeg).count(u + cdeg))
                continue;
            Mat<K> rb = rho_c.block(u);
            int off1 = lay.offset.at(ndeg + cdeg).at(u + cdeg);
            K sgn = K((cdeg * (ndeg - u)) % 2 ? -1 : 1);  // c crosses m
            for (int a = 0; a < dn; ++a)
                for (int a2 = 0; a2 < ncx.space.dim(u + cdeg); ++a2) {
                    if (rb(a2, a) == K(0))
                        continue;
                    nonzero = true;
                    for (int x = 0; x < dm; ++x)
                        b(off1 + a2 * dm + x, off + a * dm + x) += sgn * rb(a2, a);
                }
        }
        if (nonzero)
            blocks[ndeg] = std::move(b);
    }
    for (auto& [ndeg, b] : blocks)
        g.set_block(ndeg, std::move(b));
    return g;
}

/** Right action on N (x) M through the second factor: (n (x) m).c = n(x)(m.c). */
template <class K>
GradedMap<K> tensor_act_second(const TensorLayout& lay, const Complex<K>& ambient, const Complex<K>& ncx,
                               const Complex<K>& mcx, const GradedMap<K>& rho_c, int cdeg) {
    GradedMap<K> g(ambient.space, ambient.space, cdeg);
    std::map<int, Mat<K>> blocks;
    for (auto& [ndeg, offs] : lay.offset) {
        if (ambient.space.dim(ndeg + cdeg) == 0 || ambient.space.dim(ndeg) == 0)
            continue;
        Mat<K> b = zeros<K>(ambient.space.dim(ndeg + cdeg), ambient.space.dim(ndeg));
        bool nonzero = false;
        for (auto& [u, off] : offs) {
            int dn = ncx.space.dim(u), dm = mcx.space.dim(ndeg - u);
            int dm2 = mcx.space.dim(ndeg - u + cdeg);
            if (dm2 == 0 || !lay.offset.at(ndeg + cdeg).count(u))
                continue;
            Mat<K> rb = rho_c.block(ndeg - u);
            int off1 = lay.offset.at(ndeg + cdeg).at(u);
            for (int a = 0; a < dn; ++a)
                for (int x2 = 0; x2 < dm2; ++x2)
                    for (int x = 0; x < dm; ++x) {
                        if (rb(x2, x) == K(0))
                            continue;
                        nonzero = true;
                        b(off1 + a * dm2 + x2, off + a * dm + x) += rb(x2, x);
                    }
        }
        if (nonzero)
            blocks[ndeg] = std::move(b);
    }
    for (auto& [ndeg, b] : blocks)
        g.set_block(ndeg, std::move(b));
    return g;
}

}  // namespace dg

#endif
