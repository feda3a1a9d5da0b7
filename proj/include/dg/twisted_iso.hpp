// The explicit structural chain maps attached to twisted modules:
//
//   map_F          M (x)_A N^v  ->  Hom_A(N, M),      m (x) f |-> (z |-> m f(z))
//   map_G          N (x)_A M^*  ->  Hom_A(N, M)^*,    n (x) v |-> (f |-> (-1)^{|n|(|v|+|f|)} v(f(n)))
//   rearrange      N (x)_A X (x)_A M  ->  (N (x)_k M) (x)_{A^e} X
//
// Each construction returns the induced map between the presented complexes;
// callers assert closedness and per-degree invertibility. Construction
// asserts that the ambient map annihilates the tensor relations, so a wrong
// sign cannot slip through silently.
//
// The identification between the realized dual N^v and Hom_A(N, A) twists
// slot j by (-1)^{r_j p} in degree p; map_F routes through that twist, so its
// formula stays literally m f(z).

#ifndef DG_TWISTED_ISO_HPP
#define DG_TWISTED_ISO_HPP

#include "dg/twisted.hpp"

namespace dg {

namespace twdetail {

template <class K>
void assert_kills_relations(const std::map<int, Mat<K>>& rel, int p, const Mat<K>& fhat, const char* who) {
    auto it = rel.find(p);
    if (it == rel.end())
        return;
    if (!is_zero_mat(Mat<K>(fhat * it->second)))
        throw std::logic_error(std::string(who) + ": ambient map does not descend to the tensor quotient");
}

}  // namespace twdetail

/**
 * F : M (x)_A N^v -> Hom_A(N, M) for a twisted module N (idempotent summands
 * included) and any right module complex M over the same algebra.
 */
template <class K>
ChainMap<K> map_F(const TwistedModule<K>& n, const ModuleComplex<K>& m) {
    if (!(*n.alg == *m.alg))
        throw std::invalid_argument("map_F: module lives over a different algebra");
    const DGAlgebra<K>& a = *n.alg;
    const int ngen = n.gens();
    AlgebraPtr<K> opa = opposite(a);
    TwistedModule<K> nv = dual_vee(n, opa);
    Realization<K> rn = realize(n);
    Realization<K> rnv = realize(nv);
    LeftAction<K> lnv = left_action_from_op(rnv.mod, n.alg);
    TensorOver<K> t = tensor_over(m, lnv);
    ModuleHom<K> h = module_hom(rn.mod, m);

    ChainMap<K> out;
    out.source = t.quot;
    out.target = h.hc;
    out.degree = 0;
    out.map = GradedMap<K>(t.quot.space, h.hc.space, 0);

    for (auto& [p, qdim] : t.quot.space.dims()) {
        (void)qdim;
        Mat<K> fhat = zeros<K>(h.ambient.space.dim(p), t.ambient.space.dim(p));
        for (auto& [u, off] : t.layout.offset.at(p)) {
            int dmu = m.cx.space.dim(u);
            int w = p - u;
            int dq = rnv.mod.cx.space.dim(w);
            for (int xm = 0; xm < dmu; ++xm)
                for (int q = 0; q < dq; ++q) {
                    Vec<K> y = rnv.incl.block(w).col(q);  // carrier coordinates of the dual element
                    // assemble the module map z -> m_x . f(z)
                    GradedMap<K> g(rn.mod.cx.space, m.cx.space, p);
                    for (auto& [v, dv] : rn.mod.cx.space.dims()) {
                        if (m.cx.space.dim(v + p) == 0)
                            continue;
                        Mat<K> blk = zeros<K>(m.cx.space.dim(v + p), dv);
                        for (int z = 0; z < dv; ++z) {
                            Vec<K> zc = rn.incl.block(v).col(z);
                            Vec<K> fval = a.zero_elem();
                            for (Eigen::Index yc = 0; yc < y.size(); ++yc) {
                                if (y(yc) == K(0))
                                    continue;
                                auto [jhat, b] = rnv.slots.at(w)[static_cast<size_t>(yc)];
                                int j = ngen - 1 - jhat;  // dual reverses generator order
                                K eps = K((n.shifts[static_cast<size_t>(j)] * w) % 2 ? -1 : 1);
                                for (Eigen::Index cc = 0; cc < zc.size(); ++cc) {
                                    if (zc(cc) == K(0))
                                        continue;
                                    auto [l, c] = rn.slots.at(v)[static_cast<size_t>(cc)];
                                    if (l != j)
                                        continue;
                                    fval += a.mul(a.basis_elem(b), a.basis_elem(c)) * (eps * y(yc) * zc(cc));
                                }
                            }
                            if (a.is_zero_elem(fval))
                                continue;
                            for (int k = 0; k < a.dim(); ++k) {
                                if (fval(k) == K(0))
                                    continue;
                                blk.col(z) += m.act[static_cast<size_t>(k)].block(u).col(xm) * fval(k);
                            }
                        }
                        g.set_block(v, std::move(blk));
                    }
                    fhat.col(off + xm * dq + q) = map_to_hom_vector(h.layout, h.ambient.space, p, g);
                }
        }
        twdetail::assert_kills_relations(t.relations, p, fhat, "map_F");
        int hdim = h.hc.space.dim(p);
        Mat<K> blk = zeros<K>(hdim, t.quot.space.dim(p));
        for (int col = 0; col < t.quot.space.dim(p); ++col) {
            Vec<K> hv = fhat * t.lift.block(p).col(col);
            Vec<K> coords = h.coords(p, hv);
            for (int r = 0; r < hdim; ++r)
                blk(r, col) = coords(r);
        }
        out.map.set_block(p, std::move(blk));
    }
    return out;
}

/**
 * G : N (x)_A M^* -> Hom_A(N, M)^* on realizations; bijective for twisted N.
 */
template <class K>
ChainMap<K> map_G(const TwistedModule<K>& n, const ModuleComplex<K>& m) {
    if (!(*n.alg == *m.alg))
        throw std::invalid_argument("map_G: module lives over a different algebra");
    AlgebraPtr<K> opa = opposite(*n.alg);
    Realization<K> rn = realize(n);
    ModuleComplex<K> mdual = dual_module(m, opa);
    TensorOver<K> t = tensor_over(rn.mod, left_action_from_op(mdual, n.alg));
    ModuleHom<K> h = module_hom(rn.mod, m);
    Complex<K> target = dual(h.hc);

    ChainMap<K> out;
    out.source = t.quot;
    out.target = target;
    out.degree = 0;
    out.map = GradedMap<K>(t.quot.space, target.space, 0);

    for (auto& [p, qdim] : t.quot.space.dims()) {
        (void)qdim;
        int hdim = h.hc.space.dim(-p);
        Mat<K> ghat = zeros<K>(hdim, t.ambient.space.dim(p));
        if (hdim > 0) {
            std::vector<GradedMap<K>> fs;
            for (int k = 0; k < hdim; ++k)
                fs.push_back(
                    hom_vector_to_map<K>(h.layout, rn.mod.cx.space, m.cx.space, -p, h.basis.at(-p).col(k)));
            for (auto& [u, off] : t.layout.offset.at(p)) {
                int dz = rn.mod.cx.space.dim(u);
                int w = p - u;
                int dv = mdual.cx.space.dim(w);
                K sgn = K(u % 2 ? -1 : 1);  // (-1)^{|n|(|v|+|f|)} with |v|+|f| = -|n|
                for (int z = 0; z < dz; ++z)
                    for (int k = 0; k < hdim; ++k) {
                        Vec<K> img = fs[static_cast<size_t>(k)].block(u).col(z);  // in M^{-w}
                        for (int vi = 0; vi < dv; ++vi)
                            if (img(vi) != K(0))
                                ghat(k, off + z * dv + vi) += sgn * img(vi);
                    }
            }
        }
        twdetail::assert_kills_relations(t.relations, p, ghat, "map_G");
        Mat<K> blk = zeros<K>(target.space.dim(p), t.quot.space.dim(p));
        for (int col = 0; col < t.quot.space.dim(p); ++col)
            blk.col(col) = ghat * t.lift.block(p).col(col);
        out.map.set_block(p, std::move(blk));
    }
    return out;
}

/**
 * The rearrangement N (x)_A X (x)_A M -> (N (x)_k M) (x)_{A^e} X for a right
 * A-module N, a right A^e-module X, and a right A^op-module M, through
 * n (x) xi (x) mu |-> (-1)^{|mu||xi|} (n (x) mu) (x) xi.
 */
template <class K>
ChainMap<K> rearrange_twoten(const ModuleComplex<K>& n, const ModuleComplex<K>& x,
                             const ModuleComplex<K>& m, const AlgebraPtr<K>& a, const AlgebraPtr<K>& opa,
                             const AlgebraPtr<K>& env) {
    if (!(*n.alg == *a) || !(*m.alg == *opa) || !(*x.alg == *env))
        throw std::invalid_argument("rearrange_twoten: module/algebra mismatch");
    const int adim = a->dim();
    const int u0 = a->unit_index();
    if (u0 < 0)
        throw std::invalid_argument("rearrange_twoten: unit must be a basis element");

    // left side: (N (x)_A X) (x)_A M, using X's two one-sided structures
    std::vector<Vec<K>> first_factor;
    for (int i = 0; i < adim; ++i)
        first_factor.push_back(env->basis_elem(i * adim + u0));
    ModuleComplex<K> x_as_op = restrict_action(x, opa, first_factor);
    TensorOver<K> t1 = tensor_over(n, left_action_from_op(x_as_op, a));
    ModuleComplex<K> t1m;
    t1m.alg = a;
    t1m.cx = t1.quot;
    for (int c = 0; c < adim; ++c) {
        GradedMap<K> amb = tensor_act_second(t1.layout, t1.ambient, n.cx, x.cx,
                                             x.act[static_cast<size_t>(u0 * adim + c)], a->degree(c));
        t1m.act.push_back(t1.induce(amb));
    }
    TensorOver<K> tl = tensor_over(t1m, left_action_from_op(m, a));

    // right side: (N (x)_k M) over A^e, tensored against X's left structure
    TensorLayout lnm;
    Complex<K> nm = tensor(n.cx, m.cx, &lnm);
    ModuleComplex<K> nmmod;
    nmmod.alg = env;
    nmmod.cx = nm;
    for (int i = 0; i < adim; ++i)
        for (int j = 0; j < adim; ++j) {
            GradedMap<K> a2 =
                tensor_act_second(lnm, nm, n.cx, m.cx, m.act[static_cast<size_t>(i)], a->degree(i));
            GradedMap<K> a1 =
                tensor_act_first(lnm, nm, n.cx, m.cx, n.act[static_cast<size_t>(j)], a->degree(j));
            nmmod.act.push_back(a1.compose_after(a2));
        }
    LeftAction<K> lx;
    lx.alg = env;
    lx.cx = x.cx;
    for (int i = 0; i < adim; ++i)
        for (int j = 0; j < adim; ++j) {
            GradedMap<K> comp = x.act[static_cast<size_t>(j * adim + u0)].compose_after(
                x.act[static_cast<size_t>(u0 * adim + i)]);
            int udeg = a->degree(i) + a->degree(j);
            lx.act.push_back(comp.twist([udeg](int nn) { return (udeg * nn) % 2 ? -1 : 1; }));
        }
    TensorOver<K> tr = tensor_over(nmmod, lx);

    // the comparison map through triple coordinates
    ChainMap<K> out;
    out.source = tl.quot;
    out.target = tr.quot;
    out.degree = 0;
    out.map = GradedMap<K>(tl.quot.space, tr.quot.space, 0);
    for (auto& [bigdeg, qdim] : tl.quot.space.dims()) {
        (void)qdim;
        Mat<K> phat = zeros<K>(tr.ambient.space.dim(bigdeg), tl.ambient.space.dim(bigdeg));
        for (auto& [c1, off] : tl.layout.offset.at(bigdeg)) {
            int d1 = t1.quot.space.dim(c1);
            int w = bigdeg - c1;
            int dmw = m.cx.space.dim(w);
            for (int t1i = 0; t1i < d1; ++t1i) {
                Vec<K> vv = t1.lift.block(c1).col(t1i);
                for (int mi = 0; mi < dmw; ++mi) {
                    int src = off + t1i * dmw + mi;
                    for (auto& [u, off1] : t1.layout.offset.at(c1)) {
                        int dn = n.cx.space.dim(u);
                        int v = c1 - u;
                        int dx = x.cx.space.dim(v);
                        K sgn = K((w * v) % 2 ? -1 : 1);
                        for (int zi = 0; zi < dn; ++zi)
                            for (int xi = 0; xi < dx; ++xi) {
                                K coeff = vv(off1 + zi * dx + xi);
                                if (coeff == K(0))
                                    continue;
                                int nmidx = lnm.offset.at(u + w).at(u) + zi * dmw + mi;
                                int tgt = tr.layout.offset.at(bigdeg).at(u + w) + nmidx * dx + xi;
                                phat(tgt, src) += sgn * coeff;
                            }
                    }
                }
            }
        }
        // the composite must send left relations into right relations
        auto it = tl.relations.find(bigdeg);
        if (it != tl.relations.end() && tr.quot.space.dim(bigdeg) > 0) {
            Mat<K> img = tr.proj.block(bigdeg) * phat * it->second;
            if (!is_zero_mat(img))
                throw std::logic_error("rearrange_twoten: map does not descend to the quotients");
        }
        out.map.set_block(bigdeg, Mat<K>(tr.proj.block(bigdeg) * phat * tl.lift.block(bigdeg)));
    }
    return out;
}

}  // namespace dg

#endif
