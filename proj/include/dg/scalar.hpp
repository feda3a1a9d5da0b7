// Exact field scalars: arbitrary-precision rationals and prime-field residues.
//
// Both types model a field with exact arithmetic and a stable textual form:
// rationals print as "num/den" (denominator omitted when 1), residues as
// "r mod p". Residues carry their modulus; the modulus 0 marks an unbound
// constant (as produced by Scalar(0) or Scalar(1) in generic code) which
// binds to the other operand's modulus on first use.

#ifndef DG_SCALAR_HPP
#define DG_SCALAR_HPP

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace dg {

/** Exact rational number in canonical form (lowest terms, positive denominator). */
class Rat {
  public:
    Rat() : v_(0) {}
    Rat(long n) : v_(n) {}
    Rat(long n, long d) : v_(n, d) {
        if (d == 0)
            throw std::invalid_argument("Rat: zero denominator");
        v_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    const mpq_class& value() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }

    Rat inv() const {
        if (is_zero())
            throw std::domain_error("Rat: division by zero");
        Rat r;
        r.v_ = 1 / v_;
        return r;
    }

    friend Rat operator+(const Rat& a, const Rat& b) { return wrap(a.v_ + b.v_); }
    friend Rat operator-(const Rat& a, const Rat& b) { return wrap(a.v_ - b.v_); }
    friend Rat operator*(const Rat& a, const Rat& b) { return wrap(a.v_ * b.v_); }
    friend Rat operator/(const Rat& a, const Rat& b) {
        if (b.is_zero())
            throw std::domain_error("Rat: division by zero");
        return wrap(a.v_ / b.v_);
    }
    Rat operator-() const { return wrap(-v_); }
    Rat& operator+=(const Rat& o) {
        v_ += o.v_;
        return *this;
    }
    Rat& operator-=(const Rat& o) {
        v_ -= o.v_;
        return *this;
    }
    Rat& operator*=(const Rat& o) {
        v_ *= o.v_;
        return *this;
    }
    Rat& operator/=(const Rat& o) {
        *this = *this / o;
        return *this;
    }
    friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rat& a, const Rat& b) { return a.v_ < b.v_; }

    // Used by generic pivoting code; any nonzero value is an acceptable pivot.
    friend Rat abs(const Rat& a) { return wrap(::abs(a.v_)); }

    std::string str() const {
        if (v_.get_den() == 1)
            return v_.get_num().get_str();
        return v_.get_num().get_str() + "/" + v_.get_den().get_str();
    }

    static Rat parse(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0)
            throw std::invalid_argument("Rat: cannot parse '" + s + "'");
        if (q.get_den() == 0)
            throw std::invalid_argument("Rat: zero denominator in '" + s + "'");
        q.canonicalize();
        Rat r;
        r.v_ = q;
        return r;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

  private:
    static Rat wrap(const mpq_class& q) {
        Rat r;
        r.v_ = q;
        return r;
    }
    mpq_class v_;
};

/** Residue in the prime field F_p. Modulus 0 = unbound constant. */
class Fp {
  public:
    Fp() : v_(0), p_(0) {}
    Fp(long n) : v_(0), p_(0) {
        // Unbound integer constant; reduced on first bound operation.
        raw_ = n;
    }
    Fp(long n, std::uint64_t p) : p_(p) {
        check_modulus(p);
        v_ = reduce(n, p);
        raw_ = 0;
    }

    std::uint64_t residue() const { return p_ ? v_ : static_cast<std::uint64_t>(raw_ < 0 ? -raw_ : raw_); }
    std::uint64_t modulus() const { return p_; }

    /** Bind an unbound constant to the modulus p; bound values pass through. */
    Fp bound_to(std::uint64_t p) const { return p_ ? *this : Fp(raw_, p); }

    bool is_zero() const { return p_ ? v_ == 0 : raw_ == 0; }
    bool is_one() const { return p_ ? v_ == 1 : raw_ == 1; }

    Fp inv() const {
        Fp a = *this;
        if (a.p_ == 0) {
            // unbound constants are integers; only the units are invertible
            if (a.raw_ == 1 || a.raw_ == -1)
                return a;
            throw std::domain_error("Fp: inverse of unbound constant");
        }
        if (a.v_ == 0)
            throw std::domain_error("Fp: division by zero");
        // Extended Euclid on (v, p).
        std::int64_t t = 0, nt = 1;
        std::int64_t r = static_cast<std::int64_t>(a.p_), nr = static_cast<std::int64_t>(a.v_);
        while (nr != 0) {
            std::int64_t q = r / nr;
            std::int64_t tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        if (t < 0)
            t += static_cast<std::int64_t>(a.p_);
        return Fp(t, a.p_);
    }

    friend Fp operator+(Fp a, Fp b) {
        bind(a, b);
        if (a.p_ == 0)
            return Fp(a.raw_ + b.raw_);
        std::uint64_t s = a.v_ + b.v_;
        if (s >= a.p_)
            s -= a.p_;
        return bound(s, a.p_);
    }
    friend Fp operator-(Fp a, Fp b) {
        bind(a, b);
        if (a.p_ == 0)
            return Fp(a.raw_ - b.raw_);
        std::uint64_t s = a.v_ + a.p_ - b.v_;
        if (s >= a.p_)
            s -= a.p_;
        return bound(s, a.p_);
    }
    friend Fp operator*(Fp a, Fp b) {
        bind(a, b);
        if (a.p_ == 0)
            return Fp(a.raw_ * b.raw_);
        unsigned __int128 prod = static_cast<unsigned __int128>(a.v_) * b.v_;
        return bound(static_cast<std::uint64_t>(prod % a.p_), a.p_);
    }
    friend Fp operator/(Fp a, Fp b) {
        bind(a, b);
        return a * b.inv();
    }
    Fp operator-() const {
        if (p_ == 0)
            return Fp(-raw_);
        return bound(v_ ? p_ - v_ : 0, p_);
    }
    Fp& operator+=(const Fp& o) { return *this = *this + o; }
    Fp& operator-=(const Fp& o) { return *this = *this - o; }
    Fp& operator*=(const Fp& o) { return *this = *this * o; }
    Fp& operator/=(const Fp& o) { return *this = *this / o; }

    friend bool operator==(Fp a, Fp b) {
        bind(a, b);
        if (a.p_ == 0)
            return a.raw_ == b.raw_;
        return a.v_ == b.v_;
    }
    friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }
    friend bool operator<(Fp a, Fp b) {
        bind(a, b);
        if (a.p_ == 0)
            return a.raw_ < b.raw_;
        return a.v_ < b.v_;
    }
    friend Fp abs(const Fp& a) { return a; }

    std::string str() const {
        if (p_ == 0)
            return std::to_string(raw_);
        return std::to_string(v_) + " mod " + std::to_string(p_);
    }

    static Fp parse(const std::string& s, std::uint64_t p) {
        // Accepts "n" or "n/d" (interpreted as n * d^{-1} mod p).
        auto slash = s.find('/');
        if (slash == std::string::npos)
            return Fp(std::stol(s), p);
        Fp num(std::stol(s.substr(0, slash)), p);
        Fp den(std::stol(s.substr(slash + 1)), p);
        return num / den;
    }

    friend std::ostream& operator<<(std::ostream& os, const Fp& f) { return os << f.str(); }

  private:
    static void check_modulus(std::uint64_t p) {
        if (p < 2 || p > (1ull << 31))
            throw std::invalid_argument("Fp: modulus out of range");
    }
    static std::uint64_t reduce(long n, std::uint64_t p) {
        std::int64_t m = n % static_cast<std::int64_t>(p);
        if (m < 0)
            m += static_cast<std::int64_t>(p);
        return static_cast<std::uint64_t>(m);
    }
    static Fp bound(std::uint64_t v, std::uint64_t p) {
        Fp f;
        f.v_ = v;
        f.p_ = p;
        return f;
    }
    static void bind(Fp& a, Fp& b) {
        if (a.p_ == b.p_)
            return;
        if (a.p_ == 0) {
            a = Fp(a.raw_, b.p_);
        } else if (b.p_ == 0) {
            b = Fp(b.raw_, a.p_);
        } else {
            throw std::invalid_argument("Fp: mixed moduli " + std::to_string(a.p_) + " and " +
                                        std::to_string(b.p_));
        }
    }

    std::uint64_t v_;
    std::uint64_t p_;
    long raw_ = 0;  // unbound value when p_ == 0
};

/** Field-specific construction and parsing, used by generic code. */
template <class K>
struct field_ops;

template <>
struct field_ops<Rat> {
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_int(long n) { return Rat(n); }
    static std::string tag() { return "Q"; }
};

struct fp_context {
    std::uint64_t p;
};

template <>
struct field_ops<Fp> {
    static Fp zero() { return Fp(); }
    static Fp one() { return Fp(1); }
    static Fp from_int(long n) { return Fp(n); }
    static std::string tag() { return "F"; }
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2)
        return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0)
            return false;
    return true;
}

}  // namespace dg

namespace Eigen {

template <>
struct NumTraits<dg::Rat> {
    typedef dg::Rat Real;
    typedef dg::Rat NonInteger;
    typedef dg::Rat Nested;
    typedef dg::Rat Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 150,
        MulCost = 100
    };
    static inline Real epsilon() { return dg::Rat(0); }
    static inline Real dummy_precision() { return dg::Rat(0); }
    static inline int digits10() { return 0; }
};

template <>
struct NumTraits<dg::Fp> {
    typedef dg::Fp Real;
    typedef dg::Fp NonInteger;
    typedef dg::Fp Nested;
    typedef dg::Fp Literal;
    enum {
        IsComplex = 0,
        IsInteger = 0,
        IsSigned = 0,
        RequireInitialization = 1,
        ReadCost = 2,
        AddCost = 4,
        MulCost = 8
    };
    static inline Real epsilon() { return dg::Fp(); }
    static inline Real dummy_precision() { return dg::Fp(); }
    static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif
