#pragma once

#include <span>
#include <unordered_map>

#include "gforge/gbasis.hpp"
#include "gforge/matrix.hpp"

namespace gforge {

using PolyVec = std::vector<NcPoly>;

// Truncated connected graded algebra: a completed Groebner presentation with
// per-degree monomial bases precomputed up to the bound.
class GradedAlgebra {
public:
    GradedAlgebra(TruncatedGB gb, Field field);

    const TruncatedGB& gb() const { return gb_; }
    const GeneratorAlphabet& alphabet() const { return gb_.alphabet; }
    Field field() const { return field_; }
    int bound() const { return gb_.bound; }
    size_t num_generators() const { return gb_.alphabet.size(); }

    const std::vector<Word>& basis(int d) const;
    long dim(int d) const;
    size_t index_of(int d, const Word& w) const;

    NcPoly nf(const NcPoly& p) const { return normal_form(p, gb_); }
    NcPoly mul(const NcPoly& p, const NcPoly& q) const { return nf(gforge::mul(p, q)); }
    NcPoly gen_poly(size_t i) const;
    NcPoly one() const { return NcPoly::unit(field_); }

    ScalarVec coords(const NcPoly& p) const;  // over basis(p.degree()); p in normal form
    NcPoly from_coords(int d, std::span<const Scalar> v) const;

    std::vector<long> hilbert() const;

private:
    TruncatedGB gb_;
    Field field_;
    std::vector<std::vector<Word>> bases_;
    std::vector<std::map<Word, size_t>> index_;
};

// Degree-preserving algebra endomorphism given on generators; validated
// automorphisms kill every relation and are invertible on generators.
struct GradedAutomorphism {
    const GradedAlgebra* alg = nullptr;
    PolyVec images;  // normal forms, one per generator

    NcPoly apply(const NcPoly& p) const;
    GradedAutomorphism compose(const GradedAutomorphism& inner) const;  // this after inner
    GradedAutomorphism inverse() const;
    bool operator==(const GradedAutomorphism& o) const;
};

// Throws on failure with a description naming the violated relation.
void validate_automorphism(const GradedAutomorphism& f);

// Graded free module over A: direct sum of shifted copies A(-s).
struct FreeModule {
    const GradedAlgebra* alg = nullptr;
    std::vector<int> shifts;

    struct BasisItem {
        size_t summand;
        Word word;
    };

    size_t rank() const { return shifts.size(); }
    long dim(int d) const;
    std::vector<BasisItem> basis(int d) const;
    size_t offset(int d, size_t summand) const;  // first coordinate of a summand block
    ScalarVec coords(int d, const PolyVec& elem) const;
    PolyVec from_coords(int d, std::span<const Scalar> v) const;
    PolyVec zero_elem() const;
    bool operator==(const FreeModule& o) const {
        return alg == o.alg && shifts == o.shifts;
    }
};

// Module map between free modules as a matrix of normal-form entries;
// entry (i, j) has degree shifts_src[j] - shifts_tgt[i].
class ModuleMap {
public:
    ModuleMap() = default;
    ModuleMap(FreeModule src, FreeModule tgt, std::vector<PolyVec> entries);

    static ModuleMap zero(FreeModule src, FreeModule tgt);
    static ModuleMap identity(const FreeModule& mod);

    const FreeModule& source() const { return src_; }
    const FreeModule& target() const { return tgt_; }
    const NcPoly& entry(size_t i, size_t j) const { return m_[i][j]; }
    PolyVec column(size_t j) const;

    // scalar matrix of the degree-d component in the monomial bases
    ScalarMatrix degree_matrix(int d) const;

    PolyVec apply(const PolyVec& elem) const;
    bool is_zero() const;

    friend ModuleMap compose(const ModuleMap& f, const ModuleMap& g);  // f after g

private:
    FreeModule src_, tgt_;
    std::vector<PolyVec> m_;  // [target row][source column]
};

}  // namespace gforge
