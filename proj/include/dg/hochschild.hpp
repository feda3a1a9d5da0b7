// Smoothness certificates and Hochschild homology.
//
// A certificate is a verified pair (pA, eps): a twisted module over the
// enveloping algebra together with a closed, action-equivariant degree-0 map
// of its realization onto the diagonal bimodule whose cone is acyclic. All
// downstream computations (the Hochschild complex, the pairing, the inverse
// dualizing bimodule) consume certificates only, so nothing is ever computed
// from an unverified resolution.
//
// Hochschild dimensions are reported in the cohomological indexing
// HH_n = H^n(A (x)^L_{A^e} A); the classical homological index i corresponds
// to degree -i here.
//
// The truncated normalized bar complex is built as a twisted module over the
// enveloping algebra (words in the reduced algebra, with the dangle, merge
// and internal differentials as entries) and collapsed with the same
// machinery as certified resolutions; the Maurer-Cartan validator pins its
// signs. With the reduced part concentrated in degrees <= 0, column t only
// touches total degrees <= -t, so a window degree w is stable once the
// truncation length exceeds -w + 1.

#ifndef DG_HOCHSCHILD_HPP
#define DG_HOCHSCHILD_HPP

#include "dg/twisted_iso.hpp"

namespace dg {

template <class K>
struct SmoothCertificate {
    AlgebraPtr<K> alg;
    AlgebraPtr<K> env;
    TwistedModule<K> pa;          // over env
    std::vector<Vec<K>> eps;      // eps[j] in A^{-r_j}, the generator images
    Realization<K> res;           // realization of pa
    ModuleComplex<K> diagonal;    // A as a right A^e-module
    ChainMap<K> eps_map;          // res.mod.cx -> diagonal.cx
};

template <class K>
struct CertifyOutcome {
    std::string code;  // "OK" or a diagnostic
    std::optional<SmoothCertificate<K>> cert;
    ValidationReport detail;

    bool ok() const { return code == "OK"; }
};

/**
 * Full verification: Maurer-Cartan data, closedness and equivariance of eps,
 * and acyclicity of its cone. A certificate is issued only when every check
 * passes; each failure carries its own diagnostic code.
 */
template <class K>
CertifyOutcome<K> certify_smooth(const AlgebraPtr<K>& a, const TwistedModule<K>& pa,
                                 const std::vector<Vec<K>>& eps) {
    CertifyOutcome<K> out;
    AlgebraPtr<K> env = enveloping(*a);
    if (!(*pa.alg == *env)) {
        out.code = "MC_VIOLATION";
        out.detail.fail("resolution does not live over the enveloping algebra");
        return out;
    }
    ValidationReport twrep = validate_twisted(pa);
    if (!twrep.ok) {
        out.code = "MC_VIOLATION";
        out.detail = twrep;
        return out;
    }
    if (static_cast<int>(eps.size()) != pa.gens()) {
        out.code = "EPS_NOT_CLOSED";
        out.detail.fail("eps must give one image per generator");
        return out;
    }
    Realization<K> res = realize(pa);
    ModuleComplex<K> diag = diagonal_right_action(a, env);

    // eps on the carrier: g_j . u  |->  eps_j . u through the diagonal action
    GradedMap<K> eps_hat(res.carrier.cx.space, diag.cx.space, 0);
    {
        std::map<int, Mat<K>> blocks;
        for (int j = 0; j < pa.gens(); ++j) {
            int rj = pa.shifts[static_cast<size_t>(j)];
            auto deg = a->homogeneous_degree(eps[static_cast<size_t>(j)]);
            if (!deg || (!a->is_zero_elem(eps[static_cast<size_t>(j)]) && *deg != -rj)) {
                out.code = "EPS_NOT_CLOSED";
                out.detail.fail("eps " + std::to_string(j + 1) + " is not homogeneous of degree " +
                                std::to_string(-rj));
                return out;
            }
            if (a->is_zero_elem(eps[static_cast<size_t>(j)]))
                continue;
            Vec<K> ecoords = elem_to_complex_coords(*a, diag.cx, eps[static_cast<size_t>(j)], -rj);
            for (int u = 0; u < env->dim(); ++u) {
                Vec<K> img = diag.act[static_cast<size_t>(u)].block(-rj) * ecoords;
                if (is_zero_mat(Mat<K>(img)))
                    continue;
                auto [srcdeg, srcidx] = res.pos[static_cast<size_t>(j)][static_cast<size_t>(u)];
                auto it = blocks.find(srcdeg);
                if (it == blocks.end())
                    it = blocks
                             .emplace(srcdeg, zeros<K>(diag.cx.space.dim(srcdeg),
                                                       res.carrier.cx.space.dim(srcdeg)))
                             .first;
                it->second.col(srcidx) += img;
            }
        }
        for (auto& [deg, b] : blocks)
            eps_hat.set_block(deg, std::move(b));
    }

    ChainMap<K> eps_map;
    eps_map.source = res.mod.cx;
    eps_map.target = diag.cx;
    eps_map.degree = 0;
    eps_map.map = eps_hat.compose_after(res.incl);

    if (!eps_map.is_closed()) {
        out.code = "EPS_NOT_CLOSED";
        out.detail.fail("eps does not commute with the differentials");
        return out;
    }
    if (!is_module_map(eps_map.map, res.mod, diag)) {
        out.code = "EPS_NOT_EQUIVARIANT";
        out.detail.fail("eps is not equivariant for the enveloping action");
        return out;
    }
    QuasiIsoReport<K> q = is_quasi_iso(eps_map);
    if (!q.yes) {
        out.code = "NOT_QUASI_ISO";
        std::string dims;
        for (auto& [n, d] : q.cone_dims)
            dims += " H^" + std::to_string(n) + "=" + std::to_string(d);
        out.detail.fail("cone of eps has cohomology:" + dims);
        return out;
    }
    out.code = "OK";
    out.cert = SmoothCertificate<K>{a, env, pa, eps, std::move(res), std::move(diag), std::move(eps_map)};
    return out;
}

// ---------------------------------------------------------------------------
// Collapse over the diagonal: realize(p) (x)_{A^e} A
// ---------------------------------------------------------------------------

/**
 * The free collapse of a twisted module over A^e against the diagonal left
 * action: one copy of A per generator, differential (-1)^{r_j} d_A plus the
 * alpha entries acting through the left diagonal action, idempotents cut out.
 */
template <class K>
Complex<K> collapse_over_diagonal(const AlgebraPtr<K>& a, const AlgebraPtr<K>& env,
                                  const TwistedModule<K>& p, bool check = true) {
    LeftAction<K> lact = diagonal_left_action(a, env);
    const int n = p.gens();
    const int adim = a->dim();

    std::map<int, std::vector<std::pair<int, int>>> by_deg;
    std::vector<std::vector<std::pair<int, int>>> pos(
        static_cast<size_t>(n), std::vector<std::pair<int, int>>(static_cast<size_t>(adim)));
    for (int j = 0; j < n; ++j)
        for (int b = 0; b < adim; ++b) {
            int deg = a->degree(b) - p.shifts[static_cast<size_t>(j)];
            auto& lst = by_deg[deg];
            pos[static_cast<size_t>(j)][static_cast<size_t>(b)] = {deg, static_cast<int>(lst.size())};
            lst.push_back({j, b});
        }
    Complex<K> cx;
    for (auto& [deg, lst] : by_deg)
        cx.space.set_dim(deg, static_cast<int>(lst.size()));
    cx.d = GradedMap<K>(cx.space, cx.space, 1);

    auto act_of_left = [&](const Vec<K>& u) {
        auto deg = env->homogeneous_degree(u);
        GradedMap<K> g(lact.cx.space, lact.cx.space, deg ? *deg : 0);
        for (int e = 0; e < env->dim(); ++e)
            if (u(e) != K(0))
                g = g + lact.act[static_cast<size_t>(e)] * u(e);
        return g;
    };
    auto posa = complex_positions(*a);
    // shift = degree of the resulting operator on the collapsed complex
    auto scatter = [&](const GradedMap<K>& op, int slot_i, int slot_j, int shift,
                       std::map<int, Mat<K>>& blocks) {
        int g = op.degree();  // degree of the acting element
        for (int b = 0; b < adim; ++b) {
            auto [srcdeg, srcidx] = pos[static_cast<size_t>(slot_j)][static_cast<size_t>(b)];
            int bdeg = a->degree(b);
            if (lact.cx.space.dim(bdeg + g) == 0)
                continue;
            Vec<K> img = op.block(bdeg) * elem_to_complex_coords(*a, lact.cx, a->basis_elem(b), bdeg);
            for (int c = 0; c < adim; ++c) {
                if (a->degree(c) != bdeg + g)
                    continue;
                K v = img(posa[static_cast<size_t>(c)].second);
                if (v == K(0))
                    continue;
                auto [tgtdeg, tgtidx] = pos[static_cast<size_t>(slot_i)][static_cast<size_t>(c)];
                if (tgtdeg != srcdeg + shift)
                    throw std::logic_error("collapse_over_diagonal: entry degree mismatch");
                auto it = blocks.find(srcdeg);
                if (it == blocks.end())
                    it = blocks.emplace(srcdeg, zeros<K>(cx.space.dim(srcdeg + shift),
                                                         cx.space.dim(srcdeg)))
                             .first;
                it->second(tgtidx, srcidx) += v;
            }
        }
    };

    std::map<int, Mat<K>> dblocks;
    Mat<K> dm = a->diff_matrix();
    for (int j = 0; j < n; ++j) {
        K sgn = K(p.shifts[static_cast<size_t>(j)] % 2 ? -1 : 1);
        for (int b = 0; b < adim; ++b) {
            auto [srcdeg, srcidx] = pos[static_cast<size_t>(j)][static_cast<size_t>(b)];
            for (int c = 0; c < adim; ++c) {
                if (dm(c, b) == K(0))
                    continue;
                auto [tgtdeg, tgtidx] = pos[static_cast<size_t>(j)][static_cast<size_t>(c)];
                (void)tgtdeg;
                auto it = dblocks.find(srcdeg);
                if (it == dblocks.end())
                    it = dblocks.emplace(srcdeg,
                                         zeros<K>(cx.space.dim(srcdeg + 1), cx.space.dim(srcdeg)))
                             .first;
                it->second(tgtidx, srcidx) += sgn * dm(c, b);
            }
        }
    }
    for (auto& [ij, v] : p.alpha)
        scatter(act_of_left(v), ij.first, ij.second, 1, dblocks);
    for (auto& [deg, b] : dblocks)
        cx.d.set_block(deg, std::move(b));

    if (!p.idem) {
        if (check) {
            auto rep = validate_complex(cx);
            if (!rep.ok)
                throw std::logic_error("collapse_over_diagonal: " + rep.issues.front());
        }
        return cx;
    }
    GradedMap<K> ebar(cx.space, cx.space, 0);
    std::map<int, Mat<K>> eblocks;
    for (auto& [ij, v] : *p.idem)
        scatter(act_of_left(v), ij.first, ij.second, 0, eblocks);
    for (auto& [deg, b] : eblocks)
        ebar.set_block(deg, std::move(b));
    Complex<K> cut = image_subcomplex(cx, ebar).sub;
    if (check) {
        auto rep = validate_complex(cut);
        if (!rep.ok)
            throw std::logic_error("collapse_over_diagonal: " + rep.issues.front());
    }
    return cut;
}

// ---------------------------------------------------------------------------
// Hochschild homology from a certificate
// ---------------------------------------------------------------------------

template <class K>
struct HHResult {
    Complex<K> complex;  // C = realize(pA) (x)_{A^e} A
    CohomologySummary<K> coh;
    std::map<int, int> dims;
    int total = 0;
};

template <class K>
HHResult<K> hh_resolution(const SmoothCertificate<K>& cert) {
    HHResult<K> out;
    out.complex = collapse_over_diagonal(cert.alg, cert.env, cert.pa);
    out.coh = cohomology(out.complex);
    out.dims = out.coh.dims();
    for (auto& [n, d] : out.dims)
        out.total += d;
    return out;
}

// ---------------------------------------------------------------------------
// Truncated normalized bar oracle
// ---------------------------------------------------------------------------

template <class K>
struct BarResult {
    std::map<int, int> dims;      // stable window degrees only
    std::vector<int> unstable;    // window degrees outside the stable range
    int columns = 0;
    std::pair<int, int> window{0, 0};
};

/**
 * The truncated two-sided normalized bar resolution as a twisted module over
 * the enveloping algebra: generators are words in the reduced basis, shifts
 * r_w = t - deg(w).
 */
template <class K>
TwistedModule<K> bar_resolution_truncated(const AlgebraPtr<K>& a, const AlgebraPtr<K>& env, int columns) {
    const int u0 = a->unit_index();
    if (u0 < 0)
        throw std::invalid_argument("bar: the unit must be a basis element");
    std::vector<int> reduced;
    for (int b = 0; b < a->dim(); ++b)
        if (b != u0) {
            if (a->degree(b) > 0)
                throw std::domain_error("PRECONDITION_POSITIVE_PART");
            reduced.push_back(b);
        }
    // words of length 0..columns over the reduced basis; ordered by length,
    // then shift ascending (so the internal differential, which lowers the
    // shift within a length, stays strictly upper triangular), then lex
    std::vector<std::vector<int>> words{{}};
    {
        std::vector<std::vector<int>> prev{{}};
        for (int t = 1; t <= columns; ++t) {
            std::vector<std::vector<int>> cur;
            for (auto& w : prev)
                for (int b : reduced) {
                    std::vector<int> w2 = w;
                    w2.push_back(b);
                    words.push_back(w2);
                    cur.push_back(std::move(w2));
                }
            prev = std::move(cur);
        }
    }
    auto wdeg = [&](const std::vector<int>& w) {
        int d = 0;
        for (int b : w)
            d += a->degree(b);
        return d;
    };
    auto shift_of = [&](const std::vector<int>& w) { return static_cast<int>(w.size()) - wdeg(w); };
    std::stable_sort(words.begin(), words.end(),
                     [&](const std::vector<int>& x, const std::vector<int>& y) {
                         if (x.size() != y.size())
                             return x.size() < y.size();
                         return shift_of(x) < shift_of(y);
                     });
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < words.size(); ++i)
        index[words[i]] = static_cast<int>(i);
    TwistedModule<K> bar;
    bar.alg = env;
    for (auto& w : words)
        bar.shifts.push_back(shift_of(w));

    const int adim = a->dim();
    auto env_elem = [&](int i, int j, const K& c) {
        Vec<K> v = env->zero_elem();
        v(i * adim + j) = c;
        return v;
    };
    auto reduce_elem = [&](const Vec<K>& x) {  // kill the unit coordinate
        Vec<K> v = x;
        v(u0) = K(0);
        return v;
    };

    for (size_t widx = 0; widx < words.size(); ++widx) {
        const std::vector<int>& w = words[widx];
        const int t = static_cast<int>(w.size());
        if (t == 0)
            continue;
        const int col = static_cast<int>(widx);
        // prefix degrees in the suspended grading
        std::vector<int> eps_pref(static_cast<size_t>(t) + 1, 0);
        for (int i = 1; i <= t; ++i)
            eps_pref[static_cast<size_t>(i)] =
                eps_pref[static_cast<size_t>(i - 1)] + a->degree(w[static_cast<size_t>(i - 1)]) - 1;
        auto sgn = [](int e) { return K(e % 2 ? -1 : 1); };

        // left dangle: b_1 joins the left factor
        {
            std::vector<int> tail(w.begin() + 1, w.end());
            int row = index.at(tail);
            int rt = bar.shifts[static_cast<size_t>(row)];
            K s = sgn(rt * a->degree(w[0]));
            twdetail::add_entry(bar.alpha, row, col, Vec<K>(env_elem(w[0], u0, K(1)) * s), *env);
        }
        // right dangle: b_t joins the right factor
        {
            std::vector<int> head(w.begin(), w.end() - 1);
            int row = index.at(head);
            K s = sgn(eps_pref[static_cast<size_t>(t - 1)] + 1);
            twdetail::add_entry(bar.alpha, row, col,
                                Vec<K>(env_elem(u0, w[static_cast<size_t>(t - 1)], K(1)) * s), *env);
        }
        // merges of adjacent slots, projected to the reduced part
        for (int i = 1; i <= t - 1; ++i) {
            Vec<K> prod = reduce_elem(a->mul(a->basis_elem(w[static_cast<size_t>(i - 1)]),
                                             a->basis_elem(w[static_cast<size_t>(i)])));
            K s = sgn(eps_pref[static_cast<size_t>(i)]);
            for (int c = 0; c < adim; ++c) {
                if (prod(c) == K(0))
                    continue;
                std::vector<int> merged;
                merged.reserve(static_cast<size_t>(t) - 1);
                for (int q = 0; q < t; ++q) {
                    if (q == i)
                        continue;
                    merged.push_back(q == i - 1 ? c : w[static_cast<size_t>(q)]);
                }
                int row = index.at(merged);
                twdetail::add_entry(bar.alpha, row, col, Vec<K>(env_elem(u0, u0, prod(c)) * s), *env);
            }
        }
        // internal differential on each slot, projected to the reduced part
        for (int i = 1; i <= t; ++i) {
            Vec<K> db = reduce_elem(a->d(a->basis_elem(w[static_cast<size_t>(i - 1)])));
            K s = sgn(eps_pref[static_cast<size_t>(i - 1)] + 1);
            for (int c = 0; c < adim; ++c) {
                if (db(c) == K(0))
                    continue;
                std::vector<int> w2 = w;
                w2[static_cast<size_t>(i - 1)] = c;
                int row = index.at(w2);
                twdetail::add_entry(bar.alpha, row, col, Vec<K>(env_elem(u0, u0, db(c)) * s), *env);
            }
        }
    }
    return bar;
}

/**
 * Hochschild dimensions from the truncated bar complex. Degrees in the
 * requested window are reported only where the truncation is provably stable
 * (w > -columns + 1); the rest are listed as unstable.
 */
template <class K>
BarResult<K> hh_bar(const AlgebraPtr<K>& a, int window_lo, int window_hi, int columns,
                    bool validate_mc = false) {
    AlgebraPtr<K> env = enveloping(*a);
    TwistedModule<K> bar = bar_resolution_truncated(a, env, columns);
    if (validate_mc) {
        auto rep = validate_twisted(bar);
        if (!rep.ok)
            throw std::logic_error("hh_bar: " + rep.issues.front());
    }
    Complex<K> c = collapse_over_diagonal(a, env, bar, /*check=*/false);
    BarResult<K> out;
    out.columns = columns;
    out.window = {window_lo, window_hi};
    // rank-based dimensions, touching only the window's neighborhood: the
    // deep truncation columns never enter an elimination
    for (int w = window_lo; w <= window_hi; ++w) {
        if (columns > -w + 1)
            out.dims[w] = c.space.dim(w) - rank(c.d.block(w)) - rank(c.d.block(w - 1));
        else
            out.unstable.push_back(w);
    }
    return out;
}

// ---------------------------------------------------------------------------
// The pairing
// ---------------------------------------------------------------------------

template <class K>
struct PairingResult {
    bool found = false;
    std::optional<ChainMap<K>> theta;   // witness C -> C^*
    std::map<int, Mat<K>> matrices;     // P_n on HH_n x HH_{-n}
    std::map<int, bool> nondegenerate;  // per degree with nonzero HH
    bool dim_symmetric = false;
    std::map<int, int> dims;
};

/**
 * Builds C and its linear dual, searches for a quasi-isomorphism witness, and
 * evaluates the pairing on the chosen cohomology representatives. Dimension
 * symmetry is reported independently of the witness search.
 */
template <class K>
PairingResult<K> hh_pairing(const SmoothCertificate<K>& cert, const SearchBudget& budget = {}) {
    PairingResult<K> out;
    HHResult<K> hh = hh_resolution(cert);
    out.dims = hh.dims;
    out.dim_symmetric = true;
    for (auto& [n, d] : hh.dims)
        if (hh.coh.dim(-n) != d)
            out.dim_symmetric = false;

    Complex<K> c = hh.complex;
    Complex<K> dc = dual(c);
    auto theta = find_quasi_iso(c, dc, budget);
    if (!theta) {
        out.found = false;
        return out;
    }
    out.found = true;
    out.theta = *theta;
    CohomologySummary<K> hdual = cohomology(dc);
    for (auto& [n, hn] : hh.dims) {
        int hm = hh.coh.dim(-n);
        Mat<K> reps_n = hh.coh.representatives(n);
        Mat<K> reps_m = hh.coh.representatives(-n);
        Mat<K> p = zeros<K>(hn, hm);
        for (int i = 0; i < hn; ++i) {
            Vec<K> img = theta->map.block(n) * reps_n.col(i);  // element of (C^{-n})^*
            for (int j = 0; j < hm; ++j) {
                K val = K(0);
                for (Eigen::Index q = 0; q < img.size(); ++q)
                    val += img(q) * reps_m(q, j);
                p(i, j) = val;
            }
        }
        out.nondegenerate[n] = (hn == hm) && (rank(p) == hn);
        out.matrices[n] = std::move(p);
    }
    return out;
}

template <class K>
bool dim_symmetry_check(const std::map<int, int>& dims) {
    for (auto& [n, d] : dims) {
        auto it = dims.find(-n);
        if (it == dims.end() || it->second != d)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// The non-positive corollary
// ---------------------------------------------------------------------------

template <class K>
struct CorollaryReport {
    bool pass = false;
    std::map<int, int> hh_dims;
    std::map<int, int> bar_dims;
    std::vector<std::string> issues;
};

/**
 * For algebras concentrated in non-positive degrees: Hochschild homology must
 * sit in degree 0 alone. Cross-checked against the bar oracle on a stable
 * window around the support.
 */
template <class K>
CorollaryReport<K> nonpositive_corollary_check(const SmoothCertificate<K>& cert, int columns = 3) {
    CorollaryReport<K> out;
    for (int b = 0; b < cert.alg->dim(); ++b)
        if (cert.alg->degree(b) > 0) {
            out.issues.push_back("PRECONDITION: algebra has a positive-degree element");
            return out;
        }
    HHResult<K> hh = hh_resolution(cert);
    out.hh_dims = hh.dims;
    bool concentrated = true;
    for (auto& [n, d] : hh.dims)
        if (n != 0 && d != 0)
            concentrated = false;
    if (!concentrated)
        out.issues.push_back("Hochschild homology is not concentrated in degree 0");
    int lo = 2 - columns;  // stable range of the truncation
    BarResult<K> bar = hh_bar(cert.alg, lo, 0, columns);
    out.bar_dims = bar.dims;
    for (auto& [w, d] : bar.dims) {
        int want = hh.coh.dim(w);
        if (d != want) {
            out.issues.push_back("bar oracle disagrees at degree " + std::to_string(w) + ": " +
                                 std::to_string(d) + " vs " + std::to_string(want));
        }
    }
    if (!dim_symmetry_check<K>(hh.dims))
        out.issues.push_back("dimension table is not symmetric");
    out.pass = out.issues.empty();
    return out;
}

}  // namespace dg

#endif
