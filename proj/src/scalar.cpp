#include "gforge/scalar.hpp"

namespace gforge {

void Scalar::reduce() {
    if (mod_ == 0) {
        v_.canonicalize();
        return;
    }
    mpz_class p(static_cast<unsigned long>(mod_));
    if (v_.get_den() != 1) {
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), v_.get_den().get_mpz_t(), p.get_mpz_t()) == 0)
            throw Error("denominator not invertible mod " + std::to_string(mod_));
        v_ = mpq_class(v_.get_num() * inv);
    }
    mpz_class r = v_.get_num() % p;
    if (r < 0) r += p;
    v_ = mpq_class(r);
}

Scalar Scalar::from_string(const std::string& s, Field f) {
    if (s.empty()) throw Error("empty scalar literal");
    size_t i = 0;
    bool neg = false;
    if (s[i] == '-') { neg = true; ++i; }
    auto digits = [&](size_t from) {
        size_t j = from;
        while (j < s.size() && s[j] >= '0' && s[j] <= '9') ++j;
        return j;
    };
    size_t j = digits(i);
    if (j == i) throw Error("bad scalar literal '" + s + "'");
    mpz_class num(s.substr(i, j - i));
    mpz_class den(1);
    if (j < s.size()) {
        if (s[j] != '/') throw Error("bad scalar literal '" + s + "'");
        size_t k = digits(j + 1);
        if (k == j + 1 || k != s.size()) throw Error("bad scalar literal '" + s + "'");
        den = mpz_class(s.substr(j + 1, k - j - 1));
        if (den == 0) throw Error("zero denominator in '" + s + "'");
    }
    mpq_class q(num, den);
    q.canonicalize();
    if (neg) q = -q;
    return Scalar(q, f);
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.v_ = -r.v_;
    r.reduce();
    return r;
}

Scalar Scalar::inv() const {
    if (is_zero()) throw Error("inverse of zero");
    if (mod_ == 0) {
        Scalar r = *this;
        r.v_ = 1 / v_;
        return r;
    }
    mpz_class p(static_cast<unsigned long>(mod_)), inv;
    if (mpz_invert(inv.get_mpz_t(), v_.get_num().get_mpz_t(), p.get_mpz_t()) == 0)
        throw Error("residue not invertible mod " + std::to_string(mod_));
    return Scalar(mpq_class(inv), Field{mod_});
}

Scalar& Scalar::operator+=(const Scalar& o) {
    check_same(o);
    v_ += o.v_;
    if (mod_) reduce();
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    check_same(o);
    v_ -= o.v_;
    if (mod_) reduce();
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    check_same(o);
    v_ *= o.v_;
    if (mod_) reduce();
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    check_same(o);
    return *this *= o.inv();
}

std::string Scalar::str() const {
    return v_.get_str();
}

}  // namespace gforge
