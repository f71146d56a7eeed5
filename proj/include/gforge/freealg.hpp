#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gforge/scalar.hpp"

namespace gforge {

using Gen = unsigned char;
using Word = std::basic_string<Gen>;  // sequence of generator indices

struct GeneratorAlphabet {
    std::vector<std::string> names;
    std::vector<int> degrees;

    GeneratorAlphabet() = default;
    GeneratorAlphabet(std::vector<std::string> n, std::vector<int> d);

    size_t size() const { return names.size(); }
    int degree(Gen g) const { return degrees[g]; }
    int word_degree(const Word& w) const;
    std::optional<Gen> index_of(const std::string& name) const;
    std::string word_str(const Word& w) const;
};

// Homogeneous noncommutative polynomial: finite word->coefficient map, all
// words of one total degree. The zero polynomial keeps an explicit degree tag.
// Terms are kept in descending lexicographic order, so begin() is the leading
// term under the deg-lex monomial order.
class NcPoly {
public:
    using TermMap = std::map<Word, Scalar, std::greater<Word>>;

    NcPoly() = default;
    explicit NcPoly(int degree) : deg_(degree) {}
    static NcPoly term(Word w, Scalar c, int degree);
    static NcPoly unit(Field f) { return term(Word{}, Scalar::one(f), 0); }

    int degree() const { return deg_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }
    size_t term_count() const { return terms_.size(); }

    const Word& leading_word() const;
    const Scalar& leading_coeff() const;
    Scalar coeff(const Word& w) const;
    bool is_constant() const { return terms_.size() == 1 && terms_.begin()->first.empty(); }
    Scalar constant_coeff() const;  // coefficient of the empty word (zero if absent)

    void add_term(const Word& w, const Scalar& c);  // fuses and drops zeros

    NcPoly operator-() const;
    NcPoly& operator+=(const NcPoly& o);
    NcPoly& operator-=(const NcPoly& o);
    friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
    friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
    NcPoly scaled(const Scalar& c) const;
    bool operator==(const NcPoly& o) const { return deg_ == o.deg_ && terms_ == o.terms_; }

private:
    int deg_ = 0;
    TermMap terms_;
};

// Free-algebra product; degree tags add.
NcPoly mul(const NcPoly& p, const NcPoly& q);
NcPoly mul(const NcPoly& p, const NcPoly& q, const NcPoly& r);

// Left/right multiply by a word with a coefficient: c * (u p v).
NcPoly sandwich(const Scalar& c, const Word& u, const NcPoly& p, const Word& v,
                int u_deg, int v_deg);

// The unique algebra-map extension g_i -> images[i] applied term by term.
// Image degrees must match generator degrees.
NcPoly apply_generator_map(const NcPoly& p, const std::vector<NcPoly>& images,
                           const GeneratorAlphabet& alphabet);

// Expression grammar (whitespace insignificant):
//   expr   := term (('+'|'-') term)*
//   term   := scalar? factor ('*' factor)* | scalar
//   factor := identifier | '(' expr ')'
//   scalar := ['-'] digits ['/' digits]
// Identifiers are generators of the alphabet or parameter names bound to
// field constants. A leading '-' before a term is accepted as sign.
NcPoly parse_expr(const std::string& text, const GeneratorAlphabet& alphabet, Field f,
                  const std::map<std::string, Scalar>& params = {});

std::string pretty_print(const NcPoly& p, const GeneratorAlphabet& alphabet);

// deg-lex comparison across possibly different degrees (u < v)
bool word_less(const Word& u, const Word& v, const GeneratorAlphabet& alphabet);

}  // namespace gforge
