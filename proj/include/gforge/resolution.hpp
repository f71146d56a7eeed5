#pragma once

#include <memory>

#include "gforge/galgebra.hpp"

namespace gforge {

// Minimal graded free resolution of the trivial module, computed degreewise
// up to homological bound H and internal bound D. terms[0] = A; diffs[i] is
// the differential terms[i+1] -> terms[i].
class FreeResolution {
public:
    const GradedAlgebra* alg = nullptr;
    std::vector<FreeModule> terms;
    std::vector<ModuleMap> diffs;
    int hom_bound = 0;
    int deg_bound = 0;
    bool terminated = false;  // some V_i is empty within the bounds
    int length = 0;           // largest position with a nonempty term

    size_t positions() const { return terms.size(); }
    const std::vector<int>& shifts(size_t i) const { return terms[i].shifts; }

    // cached degree matrix / solver of the differential into position pos-1,
    // i.e. of diffs[pos-1] : terms[pos] -> terms[pos-1]
    const ScalarMatrix& matrix(size_t pos, int d) const;
    const RrefSolver& solver(size_t pos, int d) const;

private:
    mutable std::map<std::pair<size_t, int>, ScalarMatrix> matrix_cache_;
    mutable std::map<std::pair<size_t, int>, std::unique_ptr<RrefSolver>> solver_cache_;
};

// Throws a bound diagnostic if D is smaller than the largest relation degree.
FreeResolution minimal_resolution(const GradedAlgebra& A, int H, int D);

struct Purity {
    bool pure = true;
    size_t first_mixed = 0;  // witness position when !pure
};
Purity is_pure(const FreeResolution& res);

// verification helpers used by tests and reports
bool complex_property(const FreeResolution& res);        // d.d = 0
bool minimality_property(const FreeResolution& res);     // entries in A_{>=1}
bool exactness_property(const FreeResolution& res);      // ranks fill every degree <= D

// Chain lifting of the dual-basis cocycle of generator `gen` of terms[i]:
// components comps[p] : terms[p] -> terms[p-i](-t) for p = i..pmax, where t is
// the generator's shift. Solved degreewise; underdetermined coordinates take
// the value free_val. Components obey
//   d(comps[p](e)) = (-1)^i comps[p-1](d(e)).
struct CocycleLift {
    int hom_shift = 0;
    int int_shift = 0;
    size_t gen = 0;
    std::vector<std::vector<PolyVec>> comps;  // comps[p][gamma], p < i slots empty
};

CocycleLift lift_cocycle(const FreeResolution& res, int i, size_t gen, int pmax,
                         const Scalar& free_val);

}  // namespace gforge
