// Finite-dimensional DG algebras with a homogeneous basis: structure
// constants, unit, degree +1 differential, and the derived constructions
// (opposite algebra, tensor product, enveloping algebra) together with the
// two diagonal actions of the enveloping algebra on the algebra itself.
//
// Multiplication is stored sparsely as term lists, so exhaustive axiom
// validation stays cheap even for enveloping algebras.

#ifndef DG_DGALG_HPP
#define DG_DGALG_HPP

#include "dg/complexes.hpp"

#include <memory>

namespace dg {

template <class K>
struct Term {
    int idx;
    K coeff;
};

template <class K>
using TermList = std::vector<Term<K>>;

template <class K>
class DGAlgebra;
template <class K>
using AlgebraPtr = std::shared_ptr<const DGAlgebra<K>>;

/** Finite-dimensional Z-graded algebra with a degree +1 differential. */
template <class K>
class DGAlgebra {
  public:
    DGAlgebra(std::vector<std::string> names, std::vector<int> degrees)
        : names_(std::move(names)), deg_(std::move(degrees)) {
        if (names_.size() != deg_.size())
            throw std::invalid_argument("DGAlgebra: name/degree count mismatch");
        n_ = static_cast<int>(names_.size());
        mul_.assign(static_cast<size_t>(n_) * n_, {});
        diff_.assign(static_cast<size_t>(n_), {});
        unit_ = Vec<K>::Constant(n_, K(0));
    }

    int dim() const { return n_; }
    const std::string& name(int i) const { return names_[static_cast<size_t>(i)]; }
    const std::vector<std::string>& names() const { return names_; }
    int degree(int i) const { return deg_[static_cast<size_t>(i)]; }
    const std::vector<int>& degrees() const { return deg_; }

    int index_of(const std::string& name) const {
        for (int i = 0; i < n_; ++i)
            if (names_[static_cast<size_t>(i)] == name)
                return i;
        return -1;
    }

    void set_product(int i, int j, TermList<K> terms) { mul_[key(i, j)] = normalize(std::move(terms)); }
    void set_diff(int i, TermList<K> terms) { diff_[static_cast<size_t>(i)] = normalize(std::move(terms)); }
    void set_unit(int i) {
        unit_ = Vec<K>::Constant(n_, K(0));
        unit_(i) = K(1);
        unit_idx_ = i;
    }

    const TermList<K>& product(int i, int j) const { return mul_[key(i, j)]; }
    const TermList<K>& diff(int i) const { return diff_[static_cast<size_t>(i)]; }
    const Vec<K>& unit() const { return unit_; }

    /** Basis index of the unit, or -1 when 1 is not a basis element. */
    int unit_index() const { return unit_idx_; }

    Vec<K> zero_elem() const { return Vec<K>::Constant(n_, K(0)); }
    Vec<K> basis_elem(int i) const {
        Vec<K> v = zero_elem();
        v(i) = K(1);
        return v;
    }

    Vec<K> mul(const Vec<K>& x, const Vec<K>& y) const {
        Vec<K> r = zero_elem();
        for (int i = 0; i < n_; ++i) {
            if (x(i) == K(0))
                continue;
            for (int j = 0; j < n_; ++j) {
                if (y(j) == K(0))
                    continue;
                K c = x(i) * y(j);
                for (auto& t : product(i, j))
                    r(t.idx) += c * t.coeff;
            }
        }
        return r;
    }

    Vec<K> d(const Vec<K>& x) const {
        Vec<K> r = zero_elem();
        for (int i = 0; i < n_; ++i) {
            if (x(i) == K(0))
                continue;
            for (auto& t : diff(i))
                r(t.idx) += x(i) * t.coeff;
        }
        return r;
    }

    /** Matrix of left multiplication by x. */
    Mat<K> left_mult(const Vec<K>& x) const {
        Mat<K> m = zeros<K>(n_, n_);
        for (int i = 0; i < n_; ++i) {
            if (x(i) == K(0))
                continue;
            for (int j = 0; j < n_; ++j)
                for (auto& t : product(i, j))
                    m(t.idx, j) += x(i) * t.coeff;
        }
        return m;
    }

    /** Matrix of right multiplication by y. */
    Mat<K> right_mult(const Vec<K>& y) const {
        Mat<K> m = zeros<K>(n_, n_);
        for (int j = 0; j < n_; ++j) {
            if (y(j) == K(0))
                continue;
            for (int i = 0; i < n_; ++i)
                for (auto& t : product(i, j))
                    m(t.idx, i) += y(j) * t.coeff;
        }
        return m;
    }

    Mat<K> diff_matrix() const {
        Mat<K> m = zeros<K>(n_, n_);
        for (int i = 0; i < n_; ++i)
            for (auto& t : diff(i))
                m(t.idx, i) += t.coeff;
        return m;
    }

    /** True when every nonzero coordinate of x sits in one degree. */
    std::optional<int> homogeneous_degree(const Vec<K>& x) const {
        std::optional<int> deg;
        for (int i = 0; i < n_; ++i) {
            if (x(i) == K(0))
                continue;
            if (!deg)
                deg = degree(i);
            else if (*deg != degree(i))
                return std::nullopt;
        }
        return deg ? deg : std::optional<int>(0);
    }

    bool is_zero_elem(const Vec<K>& x) const {
        for (int i = 0; i < n_; ++i)
            if (x(i) != K(0))
                return false;
        return true;
    }

    std::string elem_str(const Vec<K>& x) const {
        std::string s;
        for (int i = 0; i < n_; ++i) {
            if (x(i) == K(0))
                continue;
            if (!s.empty())
                s += " + ";
            s += x(i).str() + "*" + name(i);
        }
        return s.empty() ? "0" : s;
    }

    friend bool operator==(const DGAlgebra& a, const DGAlgebra& b) {
        if (a.names_ != b.names_ || a.deg_ != b.deg_ || a.unit_ != b.unit_)
            return false;
        for (int i = 0; i < a.n_; ++i) {
            for (int j = 0; j < a.n_; ++j) {
                auto &ta = a.product(i, j), &tb = b.product(i, j);
                if (ta.size() != tb.size())
                    return false;
                for (size_t k = 0; k < ta.size(); ++k)
                    if (ta[k].idx != tb[k].idx || ta[k].coeff != tb[k].coeff)
                        return false;
            }
            auto &da = a.diff(i), &db = b.diff(i);
            if (da.size() != db.size())
                return false;
            for (size_t k = 0; k < da.size(); ++k)
                if (da[k].idx != db[k].idx || da[k].coeff != db[k].coeff)
                    return false;
        }
        return true;
    }

  private:
    size_t key(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }
    static TermList<K> normalize(TermList<K> terms) {
        std::sort(terms.begin(), terms.end(), [](const Term<K>& a, const Term<K>& b) { return a.idx < b.idx; });
        TermList<K> out;
        for (auto& t : terms) {
            if (!out.empty() && out.back().idx == t.idx)
                out.back().coeff += t.coeff;
            else
                out.push_back(t);
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const Term<K>& t) { return t.coeff == K(0); }),
                  out.end());
        return out;
    }

    std::vector<std::string> names_;
    std::vector<int> deg_;
    int n_ = 0;
    std::vector<TermList<K>> mul_;
    std::vector<TermList<K>> diff_;
    Vec<K> unit_;
    int unit_idx_ = -1;
};

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/**
 * Check all algebra axioms on basis tuples: degree-additivity, associativity,
 * two-sided unit, d of degree +1 with d^2 = 0, and the graded Leibniz rule.
 */
template <class K>
ValidationReport validate_algebra(const DGAlgebra<K>& a) {
    ValidationReport rep;
    const int n = a.dim();
    for (int i = 0; i < n && rep.ok; ++i)
        for (int j = 0; j < n; ++j)
            for (auto& t : a.product(i, j))
                if (a.degree(t.idx) != a.degree(i) + a.degree(j)) {
                    rep.fail("product " + a.name(i) + " * " + a.name(j) + " is not degree-additive");
                    break;
                }
    // unit
    {
        auto udeg = a.homogeneous_degree(a.unit());
        if (a.is_zero_elem(a.unit()))
            rep.fail("unit is zero");
        else if (!udeg || *udeg != 0)
            rep.fail("unit is not concentrated in degree 0");
        for (int i = 0; i < n; ++i) {
            Vec<K> e = a.basis_elem(i);
            if (a.mul(a.unit(), e) != e || a.mul(e, a.unit()) != e) {
                rep.fail("unit is not two-sided at basis element " + a.name(i));
                break;
            }
        }
        if (!a.is_zero_elem(a.d(a.unit())))
            rep.fail("d(1) != 0");
    }
    // associativity on all basis triples
    for (int i = 0; i < n && rep.ok; ++i)
        for (int j = 0; j < n && rep.ok; ++j) {
            Vec<K> ij = a.mul(a.basis_elem(i), a.basis_elem(j));
            for (int k = 0; k < n; ++k) {
                Vec<K> lhs = a.mul(ij, a.basis_elem(k));
                Vec<K> rhs = a.mul(a.basis_elem(i), a.mul(a.basis_elem(j), a.basis_elem(k)));
                if (lhs != rhs) {
                    rep.fail("associativity fails on (" + a.name(i) + ", " + a.name(j) + ", " + a.name(k) +
                             ")");
                    break;
                }
            }
        }
    // differential: degree +1, d^2 = 0
    for (int i = 0; i < n && rep.ok; ++i) {
        for (auto& t : a.diff(i))
            if (a.degree(t.idx) != a.degree(i) + 1) {
                rep.fail("d(" + a.name(i) + ") has a component of wrong degree");
                break;
            }
        if (rep.ok && !a.is_zero_elem(a.d(a.d(a.basis_elem(i)))))
            rep.fail("d^2 != 0 at " + a.name(i));
    }
    // graded Leibniz on all basis pairs
    for (int i = 0; i < n && rep.ok; ++i)
        for (int j = 0; j < n; ++j) {
            Vec<K> lhs = a.d(a.mul(a.basis_elem(i), a.basis_elem(j)));
            Vec<K> rhs = a.mul(a.d(a.basis_elem(i)), a.basis_elem(j)) +
                         a.mul(a.basis_elem(i), a.d(a.basis_elem(j))) * K(a.degree(i) % 2 ? -1 : 1);
            if (lhs != rhs) {
                rep.fail("Leibniz rule fails on (" + a.name(i) + ", " + a.name(j) + ")");
                break;
            }
        }
    return rep;
}

// ---------------------------------------------------------------------------
// Opposite, tensor, enveloping
// ---------------------------------------------------------------------------

/** Opposite algebra: x *op y = (-1)^{|x||y|} y x, same differential. */
template <class K>
AlgebraPtr<K> opposite(const DGAlgebra<K>& a) {
    auto op = std::make_shared<DGAlgebra<K>>(a.names(), a.degrees());
    const int n = a.dim();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            TermList<K> terms = a.product(j, i);
            if ((a.degree(i) * a.degree(j)) % 2) {
                for (auto& t : terms)
                    t.coeff = -t.coeff;
            }
            op->set_product(i, j, std::move(terms));
        }
        op->set_diff(i, a.diff(i));
    }
    if (a.unit_index() >= 0)
        op->set_unit(a.unit_index());
    return op;
}

inline std::string tensor_basis_name(const std::string& x, const std::string& y) { return x + " o " + y; }

/** Tensor product algebra with (x(x)y)(x'(x)y') = (-1)^{|y||x'|} xx' (x) yy'. */
template <class K>
AlgebraPtr<K> tensor_algebras(const DGAlgebra<K>& a, const DGAlgebra<K>& b) {
    const int na = a.dim(), nb = b.dim();
    std::vector<std::string> names;
    std::vector<int> degs;
    names.reserve(static_cast<size_t>(na) * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            names.push_back(tensor_basis_name(a.name(i), b.name(j)));
            degs.push_back(a.degree(i) + b.degree(j));
        }
    auto t = std::make_shared<DGAlgebra<K>>(std::move(names), std::move(degs));
    auto idx = [nb](int i, int j) { return i * nb + j; };
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            for (int i2 = 0; i2 < na; ++i2)
                for (int j2 = 0; j2 < nb; ++j2) {
                    K sgn = K((b.degree(j) * a.degree(i2)) % 2 ? -1 : 1);
                    TermList<K> terms;
                    for (auto& ta : a.product(i, i2))
                        for (auto& tb : b.product(j, j2))
                            terms.push_back({idx(ta.idx, tb.idx), sgn * ta.coeff * tb.coeff});
                    if (!terms.empty())
                        t->set_product(idx(i, j), idx(i2, j2), std::move(terms));
                }
            // d(x (x) y) = dx (x) y + (-1)^{|x|} x (x) dy
            TermList<K> dterms;
            for (auto& ta : a.diff(i))
                dterms.push_back({idx(ta.idx, j), ta.coeff});
            K sgn = K(a.degree(i) % 2 ? -1 : 1);
            for (auto& tb : b.diff(j))
                dterms.push_back({idx(i, tb.idx), sgn * tb.coeff});
            if (!dterms.empty())
                t->set_diff(idx(i, j), std::move(dterms));
        }
    if (a.unit_index() >= 0 && b.unit_index() >= 0)
        t->set_unit(idx(a.unit_index(), b.unit_index()));
    return t;
}

/** Enveloping algebra A^e = A^op (x) A. */
template <class K>
AlgebraPtr<K> enveloping(const DGAlgebra<K>& a) {
    return tensor_algebras(*opposite(a), a);
}

/** The underlying cochain complex (A, d_A). */
template <class K>
Complex<K> as_complex(const DGAlgebra<K>& a) {
    Complex<K> c;
    std::map<int, std::vector<int>> by_deg;
    for (int i = 0; i < a.dim(); ++i)
        by_deg[a.degree(i)].push_back(i);
    // Basis elements keep their algebra order inside each degree.
    for (auto& [n, idxs] : by_deg) {
        std::vector<std::string> labels;
        for (int i : idxs)
            labels.push_back(a.name(i));
        c.space.set_dim(n, static_cast<int>(idxs.size()), std::move(labels));
    }
    c.d = GradedMap<K>(c.space, c.space, 1);
    Mat<K> dm = a.diff_matrix();
    for (auto& [n, idxs] : by_deg) {
        auto up = by_deg.find(n + 1);
        if (up == by_deg.end())
            continue;
        Mat<K> b = zeros<K>(static_cast<int>(up->second.size()), static_cast<int>(idxs.size()));
        for (size_t j = 0; j < idxs.size(); ++j)
            for (size_t i = 0; i < up->second.size(); ++i)
                b(static_cast<int>(i), static_cast<int>(j)) = dm(up->second[i], idxs[j]);
        c.d.set_block(n, std::move(b));
    }
    return c;
}

/** Coordinates of algebra basis elements inside as_complex (degree, position). */
template <class K>
std::vector<std::pair<int, int>> complex_positions(const DGAlgebra<K>& a) {
    std::map<int, int> seen;
    std::vector<std::pair<int, int>> pos(static_cast<size_t>(a.dim()));
    for (int i = 0; i < a.dim(); ++i) {
        int n = a.degree(i);
        pos[static_cast<size_t>(i)] = {n, seen[n]++};
    }
    return pos;
}

/** Embed an algebra element into the as_complex coordinates of its degree. */
template <class K>
Vec<K> elem_to_complex_coords(const DGAlgebra<K>& a, const Complex<K>& cx, const Vec<K>& x, int degree) {
    Vec<K> v = Vec<K>::Constant(cx.space.dim(degree), K(0));
    auto pos = complex_positions(a);
    for (int i = 0; i < a.dim(); ++i) {
        if (x(i) == K(0))
            continue;
        if (a.degree(i) != degree)
            throw std::invalid_argument("elem_to_complex_coords: element not homogeneous of that degree");
        v(pos[static_cast<size_t>(i)].second) = x(i);
    }
    return v;
}

}  // namespace dg

#endif
