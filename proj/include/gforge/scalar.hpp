#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "gforge/error.hpp"

namespace gforge {

// Base field selector: p == 0 means the rationals, otherwise the prime field F_p.
struct Field {
    uint64_t p = 0;
    bool operator==(const Field&) const = default;
    bool is_rational() const { return p == 0; }
    std::string str() const { return p == 0 ? "rational" : std::to_string(p); }
};

// Exact field element. Rational mode stores an arbitrary-precision fraction in
// lowest terms with positive denominator (mpq invariant); prime mode stores the
// residue in [0, p) as an integer.
class Scalar {
public:
    Scalar() = default;
    explicit Scalar(long n, Field f = Field{}) : v_(n), mod_(f.p) { reduce(); }
    Scalar(mpq_class v, Field f) : v_(std::move(v)), mod_(f.p) { reduce(); }

    static Scalar zero(Field f) { return Scalar(0, f); }
    static Scalar one(Field f) { return Scalar(1, f); }

    // Accepts "n" or "n/d" with an optional leading minus sign.
    static Scalar from_string(const std::string& s, Field f);

    Field field() const { return Field{mod_}; }
    bool is_zero() const { return v_ == 0; }
    bool is_one() const { return v_ == 1; }
    const mpq_class& value() const { return v_; }

    Scalar operator-() const;
    Scalar inv() const;

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

    bool operator==(const Scalar& o) const { return mod_ == o.mod_ && v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    // "n" or "n/d"; prime mode prints the residue.
    std::string str() const;

private:
    void reduce();
    void check_same(const Scalar& o) const {
        if (mod_ != o.mod_) throw Error("scalar arithmetic across different fields");
    }

    mpq_class v_ = 0;
    uint64_t mod_ = 0;
};

}  // namespace gforge
