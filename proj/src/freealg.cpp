#include "gforge/freealg.hpp"

#include <algorithm>
#include <set>

namespace gforge {

GeneratorAlphabet::GeneratorAlphabet(std::vector<std::string> n, std::vector<int> d)
    : names(std::move(n)), degrees(std::move(d)) {
    if (names.size() != degrees.size()) throw Error("alphabet: names/degrees size mismatch");
    if (names.size() > 255) throw Error("alphabet: too many generators");
    std::set<std::string> seen;
    for (const auto& nm : names)
        if (!seen.insert(nm).second) throw Error("alphabet: duplicate generator '" + nm + "'");
    for (int dg : degrees)
        if (dg < 1) throw Error("alphabet: generator degree must be >= 1");
}

int GeneratorAlphabet::word_degree(const Word& w) const {
    int d = 0;
    for (Gen g : w) d += degrees[g];
    return d;
}

std::optional<Gen> GeneratorAlphabet::index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<Gen>(i);
    return std::nullopt;
}

std::string GeneratorAlphabet::word_str(const Word& w) const {
    if (w.empty()) return "1";
    std::string s;
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) s += '*';
        s += names[w[i]];
    }
    return s;
}

bool word_less(const Word& u, const Word& v, const GeneratorAlphabet& alphabet) {
    int du = alphabet.word_degree(u), dv = alphabet.word_degree(v);
    if (du != dv) return du < dv;
    return u < v;
}

NcPoly NcPoly::term(Word w, Scalar c, int degree) {
    NcPoly p(degree);
    if (!c.is_zero()) p.terms_.emplace(std::move(w), std::move(c));
    return p;
}

const Word& NcPoly::leading_word() const {
    if (is_zero()) throw Error("leading term of zero polynomial");
    return terms_.begin()->first;
}

const Scalar& NcPoly::leading_coeff() const {
    if (is_zero()) throw Error("leading term of zero polynomial");
    return terms_.begin()->second;
}

Scalar NcPoly::coeff(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
}

Scalar NcPoly::constant_coeff() const { return coeff(Word{}); }

void NcPoly::add_term(const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

NcPoly NcPoly::operator-() const {
    NcPoly r(deg_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

NcPoly& NcPoly::operator+=(const NcPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
        *this = o;
        return *this;
    }
    if (deg_ != o.deg_)
        throw Error("adding polynomials of degrees " + std::to_string(deg_) + " and " +
                    std::to_string(o.deg_));
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& o) { return *this += -o; }

NcPoly NcPoly::scaled(const Scalar& c) const {
    NcPoly r(deg_);
    if (c.is_zero()) return r;
    for (const auto& [w, k] : terms_) r.terms_.emplace(w, k * c);
    return r;
}

NcPoly mul(const NcPoly& p, const NcPoly& q) {
    NcPoly r(p.degree() + q.degree());
    for (const auto& [u, a] : p.terms())
        for (const auto& [v, b] : q.terms()) r.add_term(u + v, a * b);
    return r;
}

NcPoly mul(const NcPoly& p, const NcPoly& q, const NcPoly& r) { return mul(mul(p, q), r); }

NcPoly sandwich(const Scalar& c, const Word& u, const NcPoly& p, const Word& v, int u_deg,
                int v_deg) {
    NcPoly r(u_deg + p.degree() + v_deg);
    if (c.is_zero()) return r;
    for (const auto& [w, a] : p.terms()) r.add_term(u + w + v, c * a);
    return r;
}

NcPoly apply_generator_map(const NcPoly& p, const std::vector<NcPoly>& images,
                           const GeneratorAlphabet& alphabet) {
    if (images.size() != alphabet.size()) throw Error("generator map: wrong image count");
    for (size_t i = 0; i < images.size(); ++i)
        if (images[i].degree() != alphabet.degrees[i])
            throw Error("generator map: image degree " + std::to_string(images[i].degree()) +
                        " for generator '" + alphabet.names[i] + "' of degree " +
                        std::to_string(alphabet.degrees[i]));
    NcPoly out(p.degree());
    for (const auto& [w, c] : p.terms()) {
        NcPoly prod = NcPoly::term(Word{}, c, 0);
        for (Gen g : w) prod = mul(prod, images[g]);
        out += prod;
    }
    return out;
}

namespace {

struct ExprParser {
    const std::string& s;
    const GeneratorAlphabet& alphabet;
    Field field;
    const std::map<std::string, Scalar>& params;
    size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' ||
                                  s[pos] == '\r'))
            ++pos;
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    static bool ident_start(char c) {
        return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z');
    }
    static bool ident_char(char c) {
        return ident_start(c) || (c >= '0' && c <= '9') || c == '_';
    }
    static bool digit(char c) { return c >= '0' && c <= '9'; }

    Scalar parse_scalar_body() {
        // caller saw a digit (sign handled outside)
        size_t start = pos;
        while (pos < s.size() && digit(s[pos])) ++pos;
        std::string num = s.substr(start, pos - start);
        std::string den;
        if (pos < s.size() && s[pos] == '/') {
            ++pos;
            size_t dstart = pos;
            while (pos < s.size() && digit(s[pos])) ++pos;
            if (pos == dstart) throw ParseError(pos, "expected digits after '/'");
            den = s.substr(dstart, pos - dstart);
        }
        return Scalar::from_string(den.empty() ? num : num + "/" + den, field);
    }

    NcPoly parse_factor() {
        char c = peek();
        if (c == '(') {
            ++pos;
            NcPoly inner = parse_expr();
            if (!eat(')')) throw ParseError(pos, "expected ')'");
            return inner;
        }
        if (!ident_start(c)) throw ParseError(pos, "expected identifier or '('");
        size_t start = pos;
        while (pos < s.size() && ident_char(s[pos])) ++pos;
        std::string name = s.substr(start, pos - start);
        if (auto g = alphabet.index_of(name))
            return NcPoly::term(Word(1, *g), Scalar::one(field), alphabet.degree(*g));
        auto it = params.find(name);
        if (it != params.end()) return NcPoly::term(Word{}, it->second, 0);
        throw ParseError(start, "unknown identifier '" + name + "'");
    }

    NcPoly parse_term() {
        Scalar coeff = Scalar::one(field);
        bool have_scalar = false, star_pending = false;
        if (peek() == '-') {
            ++pos;
            coeff = -coeff;
        }
        if (digit(peek())) {
            skip_ws();
            coeff *= parse_scalar_body();
            have_scalar = true;  // a bare scalar is a valid (degree-0) term
            star_pending = eat('*');
        }
        NcPoly acc = NcPoly::term(Word{}, coeff, 0);
        char c = peek();
        if (c == '(' || ident_start(c)) {
            acc = mul(acc, parse_factor());
            while (eat('*')) acc = mul(acc, parse_factor());
        } else if (star_pending || !have_scalar) {
            throw ParseError(pos, "expected term");
        }
        return acc;
    }

    NcPoly parse_expr() {
        NcPoly acc = parse_term();
        for (;;) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos;
            size_t term_pos = pos;
            NcPoly t = parse_term();
            if (c == '-') t = -t;
            if (!t.is_zero() && !acc.is_zero() && t.degree() != acc.degree())
                throw ParseError(term_pos,
                                 "inhomogeneous expression: degree " +
                                     std::to_string(acc.degree()) + " vs degree " +
                                     std::to_string(t.degree()));
            acc += t;
        }
        return acc;
    }

    NcPoly run() {
        NcPoly p = parse_expr();
        skip_ws();
        if (pos != s.size()) throw ParseError(pos, "unexpected trailing input");
        return p;
    }
};

}  // namespace

NcPoly parse_expr(const std::string& text, const GeneratorAlphabet& alphabet, Field f,
                  const std::map<std::string, Scalar>& params) {
    ExprParser p{text, alphabet, f, params};
    return p.run();
}

std::string pretty_print(const NcPoly& p, const GeneratorAlphabet& alphabet) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
        Scalar a = c;
        bool neg = false;
        if (a.field().is_rational() && a.value() < 0) {
            neg = true;
            a = -a;
        }
        if (first) {
            if (neg) out += "-";
            first = false;
        } else {
            out += neg ? " - " : " + ";
        }
        if (w.empty()) {
            out += a.str();
        } else if (a.is_one()) {
            out += alphabet.word_str(w);
        } else {
            out += a.str() + "*" + alphabet.word_str(w);
        }
    }
    return out;
}

}  // namespace gforge
