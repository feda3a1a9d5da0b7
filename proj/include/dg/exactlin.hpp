// Exact linear algebra over a field scalar K (dg::Rat or dg::Fp), plus the
// graded vector spaces and degreewise block maps everything downstream is
// built from.
//
// All elimination uses the same deterministic rule: columns are processed
// left to right and the pivot row is the first unused row with a nonzero
// entry. Reports derived from these routines are therefore bit-reproducible.

#ifndef DG_EXACTLIN_HPP
#define DG_EXACTLIN_HPP

#include "dg/scalar.hpp"

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dg {

template <class K>
using Mat = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <class K>
using Vec = Eigen::Matrix<K, Eigen::Dynamic, 1>;

template <class K>
Mat<K> zeros(Eigen::Index r, Eigen::Index c) {
    return Mat<K>::Constant(r, c, K(0));
}

template <class K>
Mat<K> identity(Eigen::Index n) {
    Mat<K> m = zeros<K>(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        m(i, i) = K(1);
    return m;
}

template <class K>
bool is_zero_mat(const Mat<K>& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (m(i, j) != K(0))
                return false;
    return true;
}

/** Reduced row echelon form with the leftmost-pivot rule. */
template <class K>
struct Echelon {
    Mat<K> r;                     // reduced matrix
    std::vector<int> pivot_col;   // pivot column of row i, for i < rank
    std::vector<int> col_to_row;  // -1 for free columns
    int rank = 0;
};

template <class K>
Echelon<K> echelon(Mat<K> m, Eigen::Index max_pivot_cols = -1) {
    Echelon<K> e;
    const Eigen::Index rows = m.rows(), cols = m.cols();
    const Eigen::Index pcols = max_pivot_cols < 0 ? cols : max_pivot_cols;
    e.col_to_row.assign(static_cast<size_t>(cols), -1);
    Eigen::Index next_row = 0;
    for (Eigen::Index c = 0; c < pcols && next_row < rows; ++c) {
        Eigen::Index piv = -1;
        for (Eigen::Index i = next_row; i < rows; ++i)
            if (m(i, c) != K(0)) {
                piv = i;
                break;
            }
        if (piv < 0)
            continue;
        if (piv != next_row)
            m.row(piv).swap(m.row(next_row));
        K inv = K(1) / m(next_row, c);
        for (Eigen::Index j = c; j < cols; ++j)
            m(next_row, j) = m(next_row, j) * inv;
        for (Eigen::Index i = 0; i < rows; ++i) {
            if (i == next_row || m(i, c) == K(0))
                continue;
            K f = m(i, c);
            for (Eigen::Index j = c; j < cols; ++j)
                m(i, j) = m(i, j) - f * m(next_row, j);
        }
        e.pivot_col.push_back(static_cast<int>(c));
        e.col_to_row[static_cast<size_t>(c)] = static_cast<int>(next_row);
        ++next_row;
    }
    e.rank = static_cast<int>(e.pivot_col.size());
    e.r = std::move(m);
    return e;
}

template <class K>
int rank(const Mat<K>& m) {
    return echelon(m).rank;
}

/** Exact basis of the null space; columns of the result. */
template <class K>
Mat<K> kernel_basis(const Mat<K>& m) {
    Echelon<K> e = echelon(m);
    const Eigen::Index cols = m.cols();
    const Eigen::Index nfree = cols - e.rank;
    Mat<K> ker = zeros<K>(cols, nfree);
    Eigen::Index kcol = 0;
    for (Eigen::Index c = 0; c < cols; ++c) {
        if (e.col_to_row[static_cast<size_t>(c)] >= 0)
            continue;
        ker(c, kcol) = K(1);
        for (int r = 0; r < e.rank; ++r)
            ker(e.pivot_col[static_cast<size_t>(r)], kcol) = -e.r(r, c);
        ++kcol;
    }
    return ker;
}

/**
 * Exact particular solutions of m x = rhs for every rhs column, with free
 * variables set to 0; one elimination pass serves all columns. Inconsistent
 * columns are reported through the optional.
 */
template <class K>
std::optional<Mat<K>> try_solve_all(const Mat<K>& m, const Mat<K>& rhs) {
    if (rhs.rows() != m.rows())
        throw std::invalid_argument("solve: rhs length must equal row count");
    Mat<K> aug = zeros<K>(m.rows(), m.cols() + rhs.cols());
    aug.leftCols(m.cols()) = m;
    aug.rightCols(rhs.cols()) = rhs;
    Echelon<K> e = echelon(std::move(aug), m.cols());
    // residual rows (beyond the rank) must vanish in the rhs block
    for (Eigen::Index r = e.rank; r < m.rows(); ++r)
        for (Eigen::Index j = 0; j < rhs.cols(); ++j)
            if (e.r(r, m.cols() + j) != K(0))
                return std::nullopt;
    Mat<K> x = zeros<K>(m.cols(), rhs.cols());
    for (int r = 0; r < e.rank; ++r) {
        int pc = e.pivot_col[static_cast<size_t>(r)];
        for (Eigen::Index j = 0; j < rhs.cols(); ++j)
            x(pc, j) = e.r(r, m.cols() + j);
    }
    return x;
}

/** Exact particular solution of m x = rhs (free variables set to 0), or nullopt. */
template <class K>
std::optional<Vec<K>> solve(const Mat<K>& m, const Vec<K>& rhs) {
    auto x = try_solve_all<K>(m, Mat<K>(rhs));
    if (!x)
        return std::nullopt;
    return Vec<K>(x->col(0));
}

/** Columnwise solve; all columns must be consistent. */
template <class K>
Mat<K> solve_all(const Mat<K>& m, const Mat<K>& rhs) {
    auto x = try_solve_all<K>(m, rhs);
    if (!x)
        throw std::domain_error("solve_all: inconsistent system");
    return *x;
}

/** First linearly independent subset of the columns of m, in column order. */
template <class K>
Mat<K> image_basis(const Mat<K>& m) {
    Echelon<K> e = echelon(m);
    Mat<K> im = zeros<K>(m.rows(), e.rank);
    for (int r = 0; r < e.rank; ++r)
        im.col(r) = m.col(e.pivot_col[static_cast<size_t>(r)]);
    return im;
}

/**
 * Extend independent columns `sub` to a basis of K^ambient_dim by standard
 * basis vectors at the non-pivot coordinates of the subspace.
 */
template <class K>
Mat<K> complement_basis(const Mat<K>& sub, Eigen::Index ambient_dim) {
    if (sub.cols() > 0 && sub.rows() != ambient_dim)
        throw std::invalid_argument("complement_basis: vector length mismatch");
    Mat<K> rows = sub.transpose();
    Echelon<K> e = echelon(rows);
    if (e.rank != sub.cols())
        throw std::invalid_argument("complement_basis: input vectors are dependent");
    std::vector<bool> is_pivot(static_cast<size_t>(ambient_dim), false);
    for (int pc : e.pivot_col)
        is_pivot[static_cast<size_t>(pc)] = true;
    Mat<K> comp = zeros<K>(ambient_dim, ambient_dim - e.rank);
    Eigen::Index c = 0;
    for (Eigen::Index i = 0; i < ambient_dim; ++i)
        if (!is_pivot[static_cast<size_t>(i)])
            comp(i, c++) = K(1);
    return comp;
}

/**
 * Basis of a complement of span(inner) inside span(outer); the chosen vectors
 * are the first columns of `outer` independent from `inner`. Both inputs must
 * consist of independent columns with span(inner) contained in span(outer).
 */
template <class K>
Mat<K> relative_complement(const Mat<K>& inner, const Mat<K>& outer) {
    Mat<K> joint = zeros<K>(outer.rows(), inner.cols() + outer.cols());
    joint.leftCols(inner.cols()) = inner;
    joint.rightCols(outer.cols()) = outer;
    Echelon<K> e = echelon(joint);
    Mat<K> res = zeros<K>(outer.rows(), e.rank - inner.cols());
    Eigen::Index c = 0;
    for (int pc : e.pivot_col) {
        if (pc < static_cast<int>(inner.cols()))
            continue;
        res.col(c++) = outer.col(pc - inner.cols());
    }
    return res;
}

// ---------------------------------------------------------------------------
// Graded spaces and degreewise maps
// ---------------------------------------------------------------------------

/** Finitely supported Z-graded vector space with optional basis labels. */
class GradedSpace {
  public:
    GradedSpace() = default;

    static GradedSpace point(int degree, int dim, const std::string& label_stem = "") {
        GradedSpace s;
        if (dim > 0) {
            s.dims_[degree] = dim;
            if (!label_stem.empty()) {
                auto& l = s.labels_[degree];
                for (int i = 0; i < dim; ++i)
                    l.push_back(label_stem + std::to_string(i));
            }
        }
        return s;
    }

    void set_dim(int degree, int dim, std::vector<std::string> labels = {}) {
        if (dim < 0)
            throw std::invalid_argument("GradedSpace: negative dimension");
        if (dim == 0) {
            dims_.erase(degree);
            labels_.erase(degree);
            return;
        }
        dims_[degree] = dim;
        if (!labels.empty()) {
            if (static_cast<int>(labels.size()) != dim)
                throw std::invalid_argument("GradedSpace: label count mismatch");
            labels_[degree] = std::move(labels);
        }
    }

    int dim(int degree) const {
        auto it = dims_.find(degree);
        return it == dims_.end() ? 0 : it->second;
    }
    int total_dim() const {
        int t = 0;
        for (auto& [d, n] : dims_)
            t += n;
        return t;
    }
    const std::map<int, int>& dims() const { return dims_; }
    bool empty() const { return dims_.empty(); }
    int min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
    int max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }

    std::string label(int degree, int i) const {
        auto it = labels_.find(degree);
        if (it != labels_.end() && i < static_cast<int>(it->second.size()))
            return it->second[static_cast<size_t>(i)];
        return "b" + std::to_string(degree) + "_" + std::to_string(i);
    }

    friend bool operator==(const GradedSpace& a, const GradedSpace& b) { return a.dims_ == b.dims_; }

  private:
    std::map<int, int> dims_;
    std::map<int, std::vector<std::string>> labels_;
};

/** Degreewise map of graded spaces: block(n) : source^n -> target^{n+degree}. */
template <class K>
class GradedMap {
  public:
    GradedMap() = default;
    GradedMap(GradedSpace source, GradedSpace target, int degree)
        : src_(std::move(source)), tgt_(std::move(target)), deg_(degree) {}

    static GradedMap identity_on(const GradedSpace& s) {
        GradedMap f(s, s, 0);
        for (auto& [n, d] : s.dims())
            f.set_block(n, dg::identity<K>(d));
        return f;
    }

    static GradedMap zero_map(const GradedSpace& s, const GradedSpace& t, int degree) {
        return GradedMap(s, t, degree);
    }

    const GradedSpace& source() const { return src_; }
    const GradedSpace& target() const { return tgt_; }
    int degree() const { return deg_; }

    /** Block source^n -> target^{n+deg}; materialized as zeros when absent. */
    Mat<K> block(int n) const {
        auto it = blocks_.find(n);
        if (it != blocks_.end())
            return it->second;
        return zeros<K>(tgt_.dim(n + deg_), src_.dim(n));
    }

    void set_block(int n, Mat<K> m) {
        if (m.rows() != tgt_.dim(n + deg_) || m.cols() != src_.dim(n))
            throw std::invalid_argument("GradedMap: block shape mismatch at degree " + std::to_string(n));
        if (is_zero_mat(m)) {
            blocks_.erase(n);
            return;
        }
        blocks_[n] = std::move(m);
    }

    const std::map<int, Mat<K>>& blocks() const { return blocks_; }

    bool is_zero() const { return blocks_.empty(); }

    GradedMap compose_after(const GradedMap& g) const {  // (*this) o g
        if (!(g.tgt_ == src_))
            throw std::invalid_argument("GradedMap: composition target/source mismatch");
        GradedMap r(g.src_, tgt_, deg_ + g.deg_);
        for (auto& [n, dsrc] : g.src_.dims()) {
            (void)dsrc;
            if (tgt_.dim(n + g.deg_ + deg_) == 0)
                continue;
            Mat<K> b = block(n + g.deg_) * g.block(n);
            r.set_block(n, std::move(b));
        }
        return r;
    }

    GradedMap operator+(const GradedMap& o) const {
        if (!(src_ == o.src_) || !(tgt_ == o.tgt_) || deg_ != o.deg_)
            throw std::invalid_argument("GradedMap: sum shape mismatch");
        GradedMap r(src_, tgt_, deg_);
        for (auto& [n, d] : src_.dims()) {
            (void)d;
            if (tgt_.dim(n + deg_) == 0)
                continue;
            r.set_block(n, block(n) + o.block(n));
        }
        return r;
    }

    GradedMap operator-(const GradedMap& o) const { return *this + (o * K(-1)); }

    GradedMap operator*(const K& c) const {
        GradedMap r(src_, tgt_, deg_);
        for (auto& [n, b] : blocks_)
            r.set_block(n, b * c);
        return r;
    }

    /** Multiply block n by sign(n), e.g. for Koszul-twisted variants. */
    template <class SignFn>
    GradedMap twist(SignFn sign) const {
        GradedMap r(src_, tgt_, deg_);
        for (auto& [n, b] : blocks_)
            r.set_block(n, b * K(sign(n)));
        return r;
    }

    bool operator==(const GradedMap& o) const {
        if (!(src_ == o.src_) || !(tgt_ == o.tgt_) || deg_ != o.deg_)
            return false;
        for (auto& [n, d] : src_.dims()) {
            (void)d;
            if (block(n) != o.block(n))
                return false;
        }
        return true;
    }

  private:
    GradedSpace src_, tgt_;
    int deg_ = 0;
    std::map<int, Mat<K>> blocks_;
};

}  // namespace dg

#endif
