#pragma once

#include "drg/duality.hpp"
#include "drg/intersection_array.hpp"
#include "drg/spectral.hpp"

#include <string>
#include <vector>

namespace drg {

struct FeasibilityCheck {
    std::string name;
    bool pass = false;
    std::string detail;     // witness for failures, empty otherwise
};

struct FeasibilityReport {
    bool feasible = true;
    std::vector<FeasibilityCheck> checks;
};

// Pools the combinatorial constraints on an intersection array: positivity
// and c_1 = 1 (revalidated), a_i >= 0, integral shell sizes, nonnegative
// intersection numbers with the triangle vanishing pattern, positive
// near-integral multiplicities, and the Krein condition when a table is
// supplied.  Checks beyond these are out of scope here.
FeasibilityReport feasibility_report(const IntersectionArray& ia,
                                     const SpectralData* sp = nullptr,
                                     const KreinTable* kr = nullptr,
                                     double tol = 1e-8);

} // namespace drg
