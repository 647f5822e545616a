#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <concepts>

#include <gmpxx.h>

namespace homdec {

// All recoverable failures in the library surface as this type; verdict-style
// results use explicit tri-state structs instead of exceptions.
struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw error(msg); }

inline void require(bool ok, const std::string& msg) {
    if (!ok) fail(msg);
}

// Exact rational scalar. Invariant: always in lowest terms with positive
// denominator (mpq_class keeps this once canonicalize() has run).
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}          // NOLINT(google-explicit-constructor)
    Rational(int n) : v_(n) {}           // NOLINT(google-explicit-constructor)
    Rational(long n, long d) : v_(n, d) {
        require(d != 0, "rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }

    static Rational from_string(const std::string& s) {
        mpq_class q;
        if (q.set_str(s, 10) != 0) fail("rational: cannot parse '" + s + "'");
        q.canonicalize();
        return Rational(q);
    }

    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const {
        require(o.v_ != 0, "rational: division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }

    bool is_zero() const { return v_ == 0; }
    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }

    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

// Prime-field scalar with a runtime modulus. A default-constructed element (or
// one made from a bare integer) carries no modulus yet; it attaches to the
// modulus of the first "bound" element it meets. This keeps generic template
// code (which conjures 0/1/-1 out of thin air) working with dynamic p.
class Fp {
public:
    Fp() : raw_(0), p_(0) {}
    Fp(long n) : raw_(n), p_(0) {}       // NOLINT(google-explicit-constructor)
    Fp(int n) : raw_(n), p_(0) {}        // NOLINT(google-explicit-constructor)
    Fp(long long n, std::uint64_t p) : raw_(n), p_(p) { reduce(); }

    static Fp in_field(long long n, std::uint64_t p) { return Fp(n, p); }

    std::uint64_t modulus() const { return p_; }
    long long raw() const { return raw_; }

    Fp operator+(const Fp& o) const {
        Fp r = unify(*this, o);
        Fp s = o.rebind(r.p_);
        r.raw_ += s.raw_;
        r.reduce();
        return r;
    }
    Fp operator-(const Fp& o) const {
        Fp r = unify(*this, o);
        Fp s = o.rebind(r.p_);
        r.raw_ -= s.raw_;
        r.reduce();
        return r;
    }
    Fp operator*(const Fp& o) const {
        Fp r = unify(*this, o);
        Fp s = o.rebind(r.p_);
        if (r.p_ == 0) {
            __int128 prod = static_cast<__int128>(r.raw_) * s.raw_;
            require(prod <= INT64_MAX && prod >= INT64_MIN, "fp: unbound constant overflow");
            r.raw_ = static_cast<long long>(prod);
        } else {
            __int128 prod = static_cast<__int128>(r.raw_) * s.raw_;
            r.raw_ = static_cast<long long>(prod % static_cast<__int128>(r.p_));
        }
        r.reduce();
        return r;
    }
    Fp operator/(const Fp& o) const { return *this * o.inverse(); }
    Fp operator-() const { Fp r = *this; r.raw_ = -r.raw_; r.reduce(); return r; }
    Fp& operator+=(const Fp& o) { *this = *this + o; return *this; }
    Fp& operator-=(const Fp& o) { *this = *this - o; return *this; }
    Fp& operator*=(const Fp& o) { *this = *this * o; return *this; }
    Fp& operator/=(const Fp& o) { *this = *this / o; return *this; }

    bool operator==(const Fp& o) const {
        Fp a = unify(*this, o);
        Fp b = o.rebind(a.p_);
        return a.raw_ == b.raw_;
    }
    bool operator!=(const Fp& o) const { return !(*this == o); }

    bool is_zero() const { return raw_ == 0; }

    Fp inverse() const {
        if (p_ == 0) {
            // unbound constants are plain integers; only the units invert
            require(raw_ == 1 || raw_ == -1, "fp: inverse needs a bound modulus");
            return *this;
        }
        require(raw_ != 0, "fp: division by zero");
        long long t = 0, newt = 1;
        long long r = static_cast<long long>(p_), newr = raw_;
        while (newr != 0) {
            long long q = r / newr;
            long long tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        require(r == 1, "fp: modulus not prime (non-invertible element)");
        return Fp(t, p_);
    }

    std::string str() const { return std::to_string(raw_); }

private:
    void reduce() {
        if (p_ == 0) return;
        long long p = static_cast<long long>(p_);
        raw_ %= p;
        if (raw_ < 0) raw_ += p;
    }
    Fp rebind(std::uint64_t p) const {
        Fp r = *this;
        if (p != 0) { r.p_ = p; r.reduce(); }
        return r;
    }
    static Fp unify(const Fp& a, const Fp& b) {
        if (a.p_ != 0 && b.p_ != 0)
            require(a.p_ == b.p_, "fp: mixed moduli");
        return a.rebind(a.p_ != 0 ? a.p_ : b.p_);
    }

    long long raw_;
    std::uint64_t p_;
};

template <typename F>
concept Field = requires(F a, F b) {
    { a + b } -> std::convertible_to<F>;
    { a - b } -> std::convertible_to<F>;
    { a * b } -> std::convertible_to<F>;
    { a / b } -> std::convertible_to<F>;
    { -a } -> std::convertible_to<F>;
    { a == b } -> std::convertible_to<bool>;
    { a.is_zero() } -> std::convertible_to<bool>;
    { a.str() } -> std::convertible_to<std::string>;
    F(0);
    F(1);
};

}  // namespace homdec
