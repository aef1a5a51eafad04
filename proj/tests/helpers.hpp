#pragma once

#include <string>
#include <vector>

#include "superdenom/root_data.hpp"

namespace testing_support {

inline superdenom::FamilySpec spec(superdenom::Family f, int m = 0, int n = 0) {
    superdenom::FamilySpec s;
    s.family = f;
    s.m = m;
    s.n = n;
    return s;
}

inline superdenom::RootSystem build(superdenom::Family f, int m = 0, int n = 0,
                                    const superdenom::RootOptions& o = {}) {
    return superdenom::build_root_system(spec(f, m, n), o);
}

/// The acceptance matrix: every family with a representative of each sub-case.
inline std::vector<superdenom::FamilySpec> matrix() {
    using superdenom::Family;
    return {spec(Family::A, 2, 1), spec(Family::A, 3, 1), spec(Family::A, 3, 2),
            spec(Family::B, 1, 2), spec(Family::B, 2, 3), spec(Family::B, 1, 1),
            spec(Family::B, 2, 2), spec(Family::B, 3, 1), spec(Family::C, 2),
            spec(Family::C, 3),    spec(Family::D, 1, 2), spec(Family::D, 2, 2),
            spec(Family::D, 3, 1), spec(Family::F4),      spec(Family::G3)};
}

} // namespace testing_support
