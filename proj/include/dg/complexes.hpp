// Cochain complexes of finite-dimensional graded spaces and the functorial
// constructions on them: shift, cone, dual, tensor, Hom, cohomology with
// chosen representatives, quasi-isomorphism testing and witness search, and
// presentations of subcomplexes and quotient complexes.
//
// Sign conventions, fixed once for the whole library:
//   shift:   c[t]^n = c^{n+t},  d_{c[t]} = (-1)^t d_c
//   cone:    Cone(f)^n = target^n + source^{n+1},  d = (d_tgt, f; 0, -d_src)
//   dual:    (c^*)^n = (c^{-n})^*,  (d nu) = -(-1)^{|nu|} nu o d
//   tensor:  d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy
//   hom:     d(f) = d_tgt o f - (-1)^{|f|} f o d_src
// A randomized d^2 = 0 self-test over composite constructions guards this
// regime (see the test suite).

#ifndef DG_COMPLEXES_HPP
#define DG_COMPLEXES_HPP

#include "dg/exactlin.hpp"

#include <functional>
#include <numeric>
#include <optional>
#include <sstream>

namespace dg {

struct ValidationReport {
    bool ok = true;
    std::vector<std::string> issues;
    void fail(const std::string& msg) {
        ok = false;
        issues.push_back(msg);
    }
};

template <class K>
struct Complex {
    GradedSpace space;
    GradedMap<K> d;  // degree +1, source = target = space

    static Complex zero() {
        Complex c;
        c.d = GradedMap<K>(c.space, c.space, 1);
        return c;
    }

    static Complex point(int degree, int dim = 1) {
        Complex c;
        c.space = GradedSpace::point(degree, dim);
        c.d = GradedMap<K>(c.space, c.space, 1);
        return c;
    }
};

template <class K>
ValidationReport validate_complex(const Complex<K>& c) {
    ValidationReport rep;
    if (c.d.degree() != 1)
        rep.fail("differential has degree " + std::to_string(c.d.degree()) + ", expected +1");
    if (!(c.d.source() == c.space) || !(c.d.target() == c.space))
        rep.fail("differential source/target does not match the underlying space");
    if (!rep.ok)
        return rep;
    for (auto& [n, dim] : c.space.dims()) {
        (void)dim;
        if (c.space.dim(n + 2) == 0)
            continue;
        Mat<K> sq = c.d.block(n + 1) * c.d.block(n);
        if (!is_zero_mat(sq)) {
            rep.fail("d o d != 0 at degree " + std::to_string(n));
            return rep;
        }
    }
    return rep;
}

/** Degree-t chain map; closedness means d_tgt o f = (-1)^t f o d_src. */
template <class K>
struct ChainMap {
    Complex<K> source, target;
    int degree = 0;
    GradedMap<K> map;

    static ChainMap identity_on(const Complex<K>& c) {
        ChainMap f;
        f.source = c;
        f.target = c;
        f.map = GradedMap<K>::identity_on(c.space);
        return f;
    }

    bool is_closed() const {
        GradedMap<K> lhs = target.d.compose_after(map);
        GradedMap<K> rhs = map.compose_after(source.d) * K(degree % 2 ? -1 : 1);
        return lhs == rhs;
    }
};

template <class K>
ChainMap<K> compose(const ChainMap<K>& g, const ChainMap<K>& f) {
    ChainMap<K> r;
    r.source = f.source;
    r.target = g.target;
    r.degree = f.degree + g.degree;
    r.map = g.map.compose_after(f.map);
    return r;
}

// ---------------------------------------------------------------------------
// Cohomology
// ---------------------------------------------------------------------------

/**
 * Degreewise cohomology with deterministic representatives: boundaries are
 * the first independent columns of the incoming differential, and the
 * representatives extend them to the cocycle space.
 */
template <class K>
class CohomologySummary {
  public:
    const std::map<int, int>& dims() const { return dims_; }
    int dim(int n) const {
        auto it = dims_.find(n);
        return it == dims_.end() ? 0 : it->second;
    }
    int total_dim() const {
        int t = 0;
        for (auto& [n, d] : dims_)
            t += d;
        return t;
    }
    bool is_acyclic() const { return dims_.empty(); }

    /** Columns are the chosen cocycle representatives in C^n coordinates. */
    Mat<K> representatives(int n) const {
        auto it = reps_.find(n);
        if (it != reps_.end())
            return it->second;
        return zeros<K>(ambient_dim(n), 0);
    }

    /** Class coordinates of a cocycle z in C^n; errors if z is not a cocycle. */
    Vec<K> class_coords(int n, const Vec<K>& z) const {
        int h = dim(n);
        auto bit = bounds_.find(n);
        Mat<K> b = bit == bounds_.end() ? zeros<K>(z.size(), 0) : bit->second;
        Mat<K> sys = zeros<K>(z.size(), b.cols() + h);
        sys.leftCols(b.cols()) = b;
        if (h > 0)
            sys.rightCols(h) = reps_.at(n);
        auto sol = solve<K>(sys, z);
        if (!sol)
            throw std::domain_error("class_coords: vector is not a cocycle at degree " + std::to_string(n));
        Vec<K> cls = Vec<K>::Constant(h, K(0));
        for (int i = 0; i < h; ++i)
            cls(i) = (*sol)(b.cols() + i);
        return cls;
    }

    template <class KK>
    friend CohomologySummary<KK> cohomology(const Complex<KK>& c);

  private:
    int ambient_dim(int n) const {
        auto it = ambient_.find(n);
        return it == ambient_.end() ? 0 : it->second;
    }
    std::map<int, int> dims_;
    std::map<int, int> ambient_;
    std::map<int, Mat<K>> reps_;    // ambient x h
    std::map<int, Mat<K>> bounds_;  // basis of the boundary space
};

template <class K>
CohomologySummary<K> cohomology(const Complex<K>& c) {
    CohomologySummary<K> s;
    for (auto& [n, dimn] : c.space.dims()) {
        s.ambient_[n] = dimn;
        Mat<K> z = kernel_basis(c.d.block(n));
        Mat<K> b = image_basis(c.d.block(n - 1));
        Mat<K> r = relative_complement(b, z);
        if (b.cols() > 0)
            s.bounds_[n] = b;
        if (r.cols() > 0) {
            s.dims_[n] = static_cast<int>(r.cols());
            s.reps_[n] = r;
        }
    }
    return s;
}

// ---------------------------------------------------------------------------
// Shift, cone, dual
// ---------------------------------------------------------------------------

/** Shift so that H^n(c[t]) = H^{n+t}(c); the differential picks up (-1)^t. */
template <class K>
Complex<K> shift(const Complex<K>& c, int t) {
    Complex<K> r;
    for (auto& [n, d] : c.space.dims())
        r.space.set_dim(n - t, d);
    r.d = GradedMap<K>(r.space, r.space, 1);
    K sgn = K(t % 2 ? -1 : 1);
    for (auto& [n, b] : c.d.blocks())
        r.d.set_block(n - t, b * sgn);
    return r;
}

namespace detail {
template <class K>
GradedSpace cone_space(const Complex<K>& tgt, const Complex<K>& src) {
    GradedSpace s;
    for (int n = std::min(tgt.space.min_degree(), src.space.min_degree() - 1);
         n <= std::max(tgt.space.max_degree(), src.space.max_degree() - 1); ++n) {
        int d = tgt.space.dim(n) + src.space.dim(n + 1);
        if (d > 0)
            s.set_dim(n, d);
    }
    return s;
}
}  // namespace detail

/** Cone of a closed degree-0 chain map. */
template <class K>
Complex<K> cone(const ChainMap<K>& f) {
    if (f.degree != 0)
        throw std::invalid_argument("cone: chain map must have degree 0");
    if (!f.is_closed())
        throw std::invalid_argument("cone: chain map is not closed");
    const Complex<K>&tgt = f.target, &src = f.source;
    Complex<K> r;
    r.space = detail::cone_space(tgt, src);
    r.d = GradedMap<K>(r.space, r.space, 1);
    for (auto& [n, dim] : r.space.dims()) {
        (void)dim;
        if (r.space.dim(n + 1) == 0)
            continue;
        int t0 = tgt.space.dim(n), s0 = src.space.dim(n + 1);
        int t1 = tgt.space.dim(n + 1), s1 = src.space.dim(n + 2);
        Mat<K> b = zeros<K>(t1 + s1, t0 + s0);
        if (t1 > 0 && t0 > 0)
            b.topLeftCorner(t1, t0) = tgt.d.block(n);
        if (t1 > 0 && s0 > 0)
            b.topRightCorner(t1, s0) = f.map.block(n + 1);
        if (s1 > 0 && s0 > 0)
            b.bottomRightCorner(s1, s0) = src.d.block(n + 1) * K(-1);
        r.d.set_block(n, std::move(b));
    }
    return r;
}

/** Linear dual: (c^*)^n = (c^{-n})^*, (d nu) = -(-1)^{|nu|} nu o d. */
template <class K>
Complex<K> dual(const Complex<K>& c) {
    Complex<K> r;
    for (auto& [n, d] : c.space.dims())
        r.space.set_dim(-n, d);
    r.d = GradedMap<K>(r.space, r.space, 1);
    for (auto& [n, dim] : r.space.dims()) {
        (void)dim;
        if (r.space.dim(n + 1) == 0)
            continue;
        K sgn = K(n % 2 ? 1 : -1);  // -(-1)^n
        r.d.set_block(n, Mat<K>(c.d.block(-n - 1).transpose()) * sgn);
    }
    return r;
}

/** Canonical evaluation c -> c**, a chain isomorphism on finite complexes. */
template <class K>
ChainMap<K> double_dual_embedding(const Complex<K>& c) {
    ChainMap<K> f;
    f.source = c;
    f.target = dual(dual(c));
    f.map = GradedMap<K>(f.source.space, f.target.space, 0);
    for (auto& [n, dim] : c.space.dims())
        f.map.set_block(n, identity<K>(dim) * K(n % 2 ? -1 : 1));
    return f;
}

// ---------------------------------------------------------------------------
// Tensor and Hom of complexes, with frozen basis layouts
// ---------------------------------------------------------------------------

/** Index layout of (c (x) e)^n: blocks by first-factor degree i ascending,
 *  then pairs (a, b) with a in c^i outer and b in e^{n-i} inner. */
struct TensorLayout {
    std::map<int, std::map<int, int>> offset;  // degree n -> first-factor degree i -> offset
    GradedSpace space;

    int index(int n, int i, int a, int dim_e_part, int b) const {
        return offset.at(n).at(i) + a * dim_e_part + b;
    }
};

inline TensorLayout tensor_layout(const GradedSpace& c, const GradedSpace& e) {
    TensorLayout lay;
    for (auto& [i, dc] : c.dims())
        for (auto& [j, de] : e.dims()) {
            int n = i + j;
            auto& off = lay.offset[n];
            (void)off;
            (void)dc;
            (void)de;
        }
    for (auto& [n, offs] : lay.offset) {
        int run = 0;
        for (auto& [i, dc] : c.dims()) {
            int de = e.dim(n - i);
            if (dc == 0 || de == 0)
                continue;
            offs[i] = run;
            run += dc * de;
        }
        if (run > 0)
            lay.space.set_dim(n, run);
    }
    return lay;
}

template <class K>
Complex<K> tensor(const Complex<K>& c, const Complex<K>& e, TensorLayout* layout_out = nullptr) {
    TensorLayout lay = tensor_layout(c.space, e.space);
    Complex<K> r;
    r.space = lay.space;
    r.d = GradedMap<K>(r.space, r.space, 1);
    for (auto& [n, offs] : lay.offset) {
        if (r.space.dim(n) == 0 || r.space.dim(n + 1) == 0)
            continue;
        Mat<K> b = zeros<K>(r.space.dim(n + 1), r.space.dim(n));
        for (auto& [i, off] : offs) {
            int dc = c.space.dim(i), de = e.space.dim(n - i);
            // dx (x) y lands in block (i+1, n-i)
            if (c.space.dim(i + 1) > 0 && lay.offset.at(n + 1).count(i + 1)) {
                Mat<K> dci = c.d.block(i);
                int off1 = lay.offset.at(n + 1).at(i + 1);
                for (int a2 = 0; a2 < c.space.dim(i + 1); ++a2)
                    for (int a = 0; a < dc; ++a) {
                        if (dci(a2, a) == K(0))
                            continue;
                        for (int bb = 0; bb < de; ++bb)
                            b(off1 + a2 * de + bb, off + a * de + bb) += dci(a2, a);
                    }
            }
            // (-1)^i x (x) dy lands in block (i, n-i+1)
            if (e.space.dim(n - i + 1) > 0 && lay.offset.at(n + 1).count(i)) {
                Mat<K> dei = e.d.block(n - i);
                int off1 = lay.offset.at(n + 1).at(i);
                int de1 = e.space.dim(n - i + 1);
                K sgn = K(i % 2 ? -1 : 1);
                for (int a = 0; a < dc; ++a)
                    for (int b2 = 0; b2 < de1; ++b2)
                        for (int bb = 0; bb < de; ++bb) {
                            if (dei(b2, bb) == K(0))
                                continue;
                            b(off1 + a * de1 + b2, off + a * de + bb) += sgn * dei(b2, bb);
                        }
            }
        }
        r.d.set_block(n, std::move(b));
    }
    if (layout_out)
        *layout_out = lay;
    return r;
}

/** Index layout of Hom(c, e)^p: blocks by source degree m ascending, then
 *  (a, r) with a in c^m outer and r in e^{m+p} inner. */
struct HomLayout {
    std::map<int, std::map<int, int>> offset;  // hom degree p -> source degree m -> offset
    GradedSpace space;

    int index(int p, int m, int a, int dim_tgt_part, int r) const {
        return offset.at(p).at(m) + a * dim_tgt_part + r;
    }
};

inline HomLayout hom_layout(const GradedSpace& c, const GradedSpace& e) {
    HomLayout lay;
    for (auto& [m, dc] : c.dims())
        for (auto& [q, de] : e.dims()) {
            (void)dc;
            (void)de;
            lay.offset[q - m];
        }
    for (auto& [p, offs] : lay.offset) {
        int run = 0;
        for (auto& [m, dc] : c.dims()) {
            int de = e.dim(m + p);
            if (dc == 0 || de == 0)
                continue;
            offs[m] = run;
            run += dc * de;
        }
        if (run > 0)
            lay.space.set_dim(p, run);
    }
    return lay;
}

template <class K>
Complex<K> hom_complex(const Complex<K>& c, const Complex<K>& e, HomLayout* layout_out = nullptr) {
    HomLayout lay = hom_layout(c.space, e.space);
    Complex<K> r;
    r.space = lay.space;
    r.d = GradedMap<K>(r.space, r.space, 1);
    for (auto& [p, offs] : lay.offset) {
        if (r.space.dim(p) == 0 || r.space.dim(p + 1) == 0)
            continue;
        Mat<K> b = zeros<K>(r.space.dim(p + 1), r.space.dim(p));
        K sgn = K(p % 2 ? 1 : -1);  // -(-1)^p
        auto& offs1 = lay.offset.at(p + 1);
        for (auto& [m, off] : offs) {
            int dc = c.space.dim(m), de = e.space.dim(m + p);
            // d_e o f : component at source degree m
            if (e.space.dim(m + p + 1) > 0 && offs1.count(m)) {
                Mat<K> dem = e.d.block(m + p);
                int off1 = offs1.at(m);
                int de1 = e.space.dim(m + p + 1);
                for (int a = 0; a < dc; ++a)
                    for (int s = 0; s < de1; ++s)
                        for (int rr = 0; rr < de; ++rr) {
                            if (dem(s, rr) == K(0))
                                continue;
                            b(off1 + a * de1 + s, off + a * de + rr) += dem(s, rr);
                        }
            }
            // -(-1)^p f o d_c : component at source degree m-1
            if (c.space.dim(m - 1) > 0 && offs1.count(m - 1)) {
                Mat<K> dcm = c.d.block(m - 1);
                int off1 = offs1.at(m - 1);
                for (int a = 0; a < dc; ++a)
                    for (int a2 = 0; a2 < c.space.dim(m - 1); ++a2) {
                        if (dcm(a, a2) == K(0))
                            continue;
                        for (int rr = 0; rr < de; ++rr)
                            b(off1 + a2 * de + rr, off + a * de + rr) += sgn * dcm(a, a2);
                    }
            }
        }
        r.d.set_block(p, std::move(b));
    }
    if (layout_out)
        *layout_out = lay;
    return r;
}

/** Decode a Hom-complex coordinate vector into a degree-t graded map. */
template <class K>
GradedMap<K> hom_vector_to_map(const HomLayout& lay, const GradedSpace& c, const GradedSpace& e, int t,
                               const Vec<K>& v) {
    GradedMap<K> f(c, e, t);
    auto it = lay.offset.find(t);
    if (it == lay.offset.end())
        return f;
    for (auto& [m, off] : it->second) {
        int dc = c.dim(m), de = e.dim(m + t);
        Mat<K> blk = zeros<K>(de, dc);
        for (int a = 0; a < dc; ++a)
            for (int rr = 0; rr < de; ++rr)
                blk(rr, a) = v(off + a * de + rr);
        f.set_block(m, std::move(blk));
    }
    return f;
}

/** Encode a degree-t graded map as a Hom-complex coordinate vector. */
template <class K>
Vec<K> map_to_hom_vector(const HomLayout& lay, const GradedSpace& homspace, int t, const GradedMap<K>& f) {
    Vec<K> v = Vec<K>::Constant(homspace.dim(t), K(0));
    auto it = lay.offset.find(t);
    if (it == lay.offset.end())
        return v;
    for (auto& [m, off] : it->second) {
        int dc = f.source().dim(m), de = f.target().dim(m + t);
        Mat<K> blk = f.block(m);
        for (int a = 0; a < dc; ++a)
            for (int rr = 0; rr < de; ++rr)
                v(off + a * de + rr) = blk(rr, a);
    }
    return v;
}

/** Basis of closed degree-t maps c -> e (cocycles of the Hom complex). */
template <class K>
std::vector<ChainMap<K>> chain_map_space(const Complex<K>& c, const Complex<K>& e, int t) {
    HomLayout lay;
    Complex<K> h = hom_complex(c, e, &lay);
    Mat<K> z = kernel_basis(h.d.block(t));
    std::vector<ChainMap<K>> basis;
    for (Eigen::Index j = 0; j < z.cols(); ++j) {
        ChainMap<K> f;
        f.source = c;
        f.target = e;
        f.degree = t;
        f.map = hom_vector_to_map<K>(lay, c.space, e.space, t, z.col(j));
        basis.push_back(std::move(f));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// Quasi-isomorphisms
// ---------------------------------------------------------------------------

template <class K>
struct QuasiIsoReport {
    bool yes = false;
    std::map<int, int> cone_dims;  // cohomology of the cone
};

/** True iff the cone of f is acyclic; the report lists the cone cohomology. */
template <class K>
QuasiIsoReport<K> is_quasi_iso(const ChainMap<K>& f) {
    QuasiIsoReport<K> rep;
    Complex<K> cn = cone(f);
    rep.cone_dims = cohomology(cn).dims();
    rep.yes = rep.cone_dims.empty();
    return rep;
}

/** Matrices of H^n(f) : H^n(source) -> H^n(target) for a closed degree-0 map. */
template <class K>
std::map<int, Mat<K>> induced_cohomology_maps(const ChainMap<K>& f, const CohomologySummary<K>& hs,
                                              const CohomologySummary<K>& ht) {
    std::map<int, Mat<K>> out;
    for (int n = std::min(f.source.space.min_degree(), f.target.space.min_degree());
         n <= std::max(f.source.space.max_degree(), f.target.space.max_degree()); ++n) {
        int hsd = hs.dim(n), htd = ht.dim(n);
        if (hsd == 0 && htd == 0)
            continue;
        Mat<K> m = zeros<K>(htd, hsd);
        Mat<K> reps = hs.representatives(n);
        for (int j = 0; j < hsd; ++j) {
            Vec<K> img = f.map.block(n) * reps.col(j);
            Vec<K> cls = ht.class_coords(n, img);
            for (int i = 0; i < htd; ++i)
                m(i, j) = cls(i);
        }
        out[n] = std::move(m);
    }
    return out;
}

/** Cohomology-level quasi-isomorphism test (cross-check for is_quasi_iso). */
template <class K>
bool is_quasi_iso_via_cohomology(const ChainMap<K>& f) {
    CohomologySummary<K> hs = cohomology(f.source), ht = cohomology(f.target);
    auto mats = induced_cohomology_maps(f, hs, ht);
    for (auto& [n, m] : mats) {
        if (m.rows() != m.cols())
            return false;
        if (rank(m) != m.rows())
            return false;
    }
    return true;
}

struct SearchBudget {
    int max_height = 3;
};

namespace detail {

/** Enumerate integer vectors with |v|_1 = h in a fixed deterministic order. */
inline bool enumerate_combinations(int k, int h, const std::function<bool(const std::vector<int>&)>& visit) {
    std::vector<int> v(static_cast<size_t>(k), 0);
    std::function<bool(int, int)> rec = [&](int idx, int remaining) -> bool {
        if (idx == k - 1) {
            for (int s : {+1, -1}) {
                if (remaining == 0 && s < 0)
                    continue;
                v[static_cast<size_t>(idx)] = s * remaining;
                if (visit(v))
                    return true;
            }
            return false;
        }
        for (int m = remaining; m >= 0; --m) {
            for (int s : {+1, -1}) {
                if (m == 0 && s < 0)
                    continue;
                v[static_cast<size_t>(idx)] = s * m;
                if (rec(idx + 1, remaining - m))
                    return true;
            }
        }
        return false;
    };
    if (k == 0)
        return false;
    return rec(0, h);
}

inline int vec_gcd(const std::vector<int>& v) {
    int g = 0;
    for (int x : v)
        g = std::gcd(g, std::abs(x));
    return g;
}

}  // namespace detail

/**
 * Deterministic search for a closed degree-0 quasi-isomorphism c -> e: scans
 * the closed-map space, first basis elements, then integer combinations of
 * increasing coefficient height. Returns nothing once the budget is exhausted;
 * absence of a witness within the budget never certifies nonexistence.
 */
template <class K>
std::optional<ChainMap<K>> find_quasi_iso(const Complex<K>& c, const Complex<K>& e,
                                          const SearchBudget& budget = {}) {
    CohomologySummary<K> hc = cohomology(c), he = cohomology(e);
    for (auto& [n, d] : hc.dims())
        if (he.dim(n) != d)
            return std::nullopt;
    for (auto& [n, d] : he.dims())
        if (hc.dim(n) != d)
            return std::nullopt;

    std::vector<ChainMap<K>> basis = chain_map_space(c, e, 0);
    if (basis.empty()) {
        if (hc.total_dim() == 0)
            return ChainMap<K>{c, e, 0, GradedMap<K>(c.space, e.space, 0)};
        return std::nullopt;
    }
    std::vector<std::map<int, Mat<K>>> induced;
    induced.reserve(basis.size());
    for (auto& b : basis)
        induced.push_back(induced_cohomology_maps(b, hc, he));

    auto try_candidate = [&](const std::vector<int>& coeffs) -> bool {
        for (auto& [n, d] : hc.dims()) {
            Mat<K> m = zeros<K>(d, d);
            for (size_t i = 0; i < basis.size(); ++i) {
                if (coeffs[i] == 0)
                    continue;
                auto it = induced[i].find(n);
                if (it != induced[i].end())
                    m += it->second * K(coeffs[i]);
            }
            if (rank(m) != d)
                return false;
        }
        return true;
    };

    std::optional<ChainMap<K>> found;
    for (int h = 1; h <= budget.max_height && !found; ++h) {
        detail::enumerate_combinations(static_cast<int>(basis.size()), h, [&](const std::vector<int>& v) {
            if (h > 1 && detail::vec_gcd(v) > 1)
                return false;
            if (!try_candidate(v))
                return false;
            ChainMap<K> f;
            f.source = c;
            f.target = e;
            f.degree = 0;
            f.map = GradedMap<K>(c.space, e.space, 0);
            for (size_t i = 0; i < basis.size(); ++i)
                if (v[i] != 0)
                    f.map = f.map + basis[i].map * K(v[i]);
            found = std::move(f);
            return true;
        });
    }
    return found;
}

// ---------------------------------------------------------------------------
// Subcomplexes and quotient complexes
// ---------------------------------------------------------------------------

template <class K>
struct SubcomplexPresentation {
    Complex<K> sub;
    GradedMap<K> incl;  // sub -> ambient
    GradedMap<K> proj;  // ambient -> sub, a retraction (proj o incl = id)
};

/**
 * Image of a closed idempotent degree-0 endomorphism as a subcomplex. The
 * retraction is coordinates of e(x) in the image basis, so it is a chain map
 * and transports any structure commuting with e.
 */
template <class K>
SubcomplexPresentation<K> image_subcomplex(const Complex<K>& c, const GradedMap<K>& e) {
    SubcomplexPresentation<K> out;
    std::map<int, Mat<K>> basis;
    for (auto& [n, dim] : c.space.dims()) {
        Mat<K> v = image_basis(e.block(n));
        if (v.cols() > 0) {
            out.sub.space.set_dim(n, static_cast<int>(v.cols()));
            basis[n] = std::move(v);
        }
        (void)dim;
    }
    out.sub.d = GradedMap<K>(out.sub.space, out.sub.space, 1);
    out.incl = GradedMap<K>(out.sub.space, c.space, 0);
    out.proj = GradedMap<K>(c.space, out.sub.space, 0);
    for (auto& [n, v] : basis) {
        out.incl.set_block(n, v);
        // left inverse L with L v = id, then proj = L o e
        Mat<K> z = solve_all<K>(Mat<K>(v.transpose()), identity<K>(v.cols()));
        out.proj.set_block(n, Mat<K>(z.transpose()) * e.block(n));
    }
    for (auto& [n, v] : basis) {
        if (out.sub.space.dim(n + 1) == 0)
            continue;
        Mat<K> dv = c.d.block(n) * v;
        out.sub.d.set_block(n, solve_all<K>(basis.at(n + 1), dv));
    }
    return out;
}

template <class K>
struct QuotientPresentation {
    Complex<K> quot;
    GradedMap<K> proj;  // ambient -> quotient
    GradedMap<K> lift;  // quotient -> ambient, a section (proj o lift = id)
};

/**
 * Quotient of c by the degreewise span of the given vectors, which must form
 * a subcomplex (checked). Quotient coordinates follow the standard-basis
 * complement at non-pivot positions.
 */
template <class K>
QuotientPresentation<K> quotient_complex(const Complex<K>& c, const std::map<int, Mat<K>>& span_vectors) {
    QuotientPresentation<K> out;
    std::map<int, Mat<K>> rel, comp;
    for (auto& [n, dim] : c.space.dims()) {
        Mat<K> w = zeros<K>(dim, 0);
        auto it = span_vectors.find(n);
        if (it != span_vectors.end() && it->second.cols() > 0)
            w = image_basis(it->second);
        rel[n] = w;
        Mat<K> cb = complement_basis<K>(w, dim);
        comp[n] = cb;
        if (cb.cols() > 0)
            out.quot.space.set_dim(n, static_cast<int>(cb.cols()));
    }
    out.quot.d = GradedMap<K>(out.quot.space, out.quot.space, 1);
    out.proj = GradedMap<K>(c.space, out.quot.space, 0);
    out.lift = GradedMap<K>(out.quot.space, c.space, 0);
    for (auto& [n, cb] : comp) {
        const Mat<K>& r = rel.at(n);
        int dim = c.space.dim(n);
        Mat<K> full = zeros<K>(dim, dim);
        full.leftCols(r.cols()) = r;
        full.rightCols(cb.cols()) = cb;
        Mat<K> inv = solve_all<K>(full, identity<K>(dim));
        out.proj.set_block(n, Mat<K>(inv.bottomRows(cb.cols())));
        out.lift.set_block(n, cb);
    }
    for (auto& [n, r] : rel) {
        if (r.cols() == 0 || c.space.dim(n + 1) == 0)
            continue;
        Mat<K> dr = c.d.block(n) * r;
        const Mat<K>& r1 = rel.at(n + 1);
        Mat<K> joint = zeros<K>(dr.rows(), r1.cols() + dr.cols());
        joint.leftCols(r1.cols()) = r1;
        joint.rightCols(dr.cols()) = dr;
        if (rank(joint) != static_cast<int>(r1.cols()))
            throw std::invalid_argument("quotient_complex: span is not a subcomplex at degree " +
                                        std::to_string(n));
    }
    for (auto& [n, dim] : out.quot.space.dims()) {
        (void)dim;
        if (out.quot.space.dim(n + 1) == 0)
            continue;
        out.quot.d.set_block(n, out.proj.block(n + 1) * c.d.block(n) * out.lift.block(n));
    }
    return out;
}

}  // namespace dg

#endif
