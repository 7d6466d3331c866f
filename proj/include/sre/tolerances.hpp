#pragma once

namespace sre {

// Shared numeric thresholds. The support and relative-interior thresholds
// must agree: the tangent cone depends discontinuously on the support set,
// so a coordinate counted as "used" by one test and "unused" by another
// would produce contradictory verdicts.
struct Tolerances {
    double feasibility = 1e-9;  // acceptance band for raw state coordinates
    double support = 1e-9;      // coordinate belongs to the support when > support
    double ri_strict = 1e-9;    // strictness required at inactive coordinates
    double cone = 1e-9;         // default normal-cone membership tolerance
};

}  // namespace sre
