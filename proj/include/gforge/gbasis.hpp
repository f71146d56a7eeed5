#pragma once

#include "gforge/freealg.hpp"

namespace gforge {

// Degree-truncated two-sided Groebner basis for a homogeneous ideal.
// Monomial order: deg-lex induced by the alphabet order. Completion at
// degree d is final for all degrees <= d, so every downstream computation
// within the bound sees a complete rewriting system.
struct TruncatedGB {
    GeneratorAlphabet alphabet;
    std::vector<NcPoly> relations;  // the presented relations, as given
    int bound = 0;
    std::vector<NcPoly> basis;  // monic, lead-interreduced, tails in normal form
    std::string order = "deglex";
};

// Relations must be homogeneous of degree >= 2 (degree-0/1 relations are
// rejected as non-connected / non-minimal presentations).
TruncatedGB truncated_groebner(const GeneratorAlphabet& alphabet,
                               std::vector<NcPoly> relations, int bound);

NcPoly normal_form(const NcPoly& p, const TruncatedGB& gb);

// Irreducible words of degree d in ascending lexicographic order.
std::vector<Word> monomial_basis(const TruncatedGB& gb, int d);

// dim A_d for d = 0..bound
std::vector<long> hilbert_function(const TruncatedGB& gb);

}  // namespace gforge
