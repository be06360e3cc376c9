#pragma once

// Hand-built modular data used as independent oracles for the bundled files.

#include "rtinv/modular_data.hpp"

namespace fixtures {

using rtinv::CycNum;
using rtinv::ModularData;

inline ModularData semion() {
    ModularData md;
    md.conductor = 8;
    md.dual = {0, 1};
    md.S = {CycNum::integer(8, 1), CycNum::integer(8, 1), CycNum::integer(8, 1), CycNum::integer(8, -1)};
    md.theta = {CycNum::one(8), CycNum::zeta(8, 2)};
    md.D = CycNum::zeta(8, 1) - CycNum::zeta(8, 3);
    return md;
}

// Labels (a, b) in Z2 x Z2 encoded as 2a + b.
inline ModularData toric() {
    ModularData md;
    md.conductor = 2;
    md.dual = {0, 1, 2, 3};
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y) {
            const int a = x >> 1, b = x & 1, c = y >> 1, d = y & 1;
            md.S.push_back(CycNum::integer(2, (a * d + b * c) % 2 ? -1 : 1));
        }
    for (int x = 0; x < 4; ++x) md.theta.push_back(CycNum::integer(2, x == 3 ? -1 : 1));
    md.D = CycNum::integer(2, 2);
    return md;
}

inline CycNum golden() {
    return CycNum::one(20) + CycNum::zeta(20, 4) + CycNum::zeta(20, 16);
}

inline ModularData fibonacci() {
    ModularData md;
    md.conductor = 20;
    md.dual = {0, 1};
    const CycNum phi = golden();
    md.S = {CycNum::one(20), phi, phi, CycNum::integer(20, -1)};
    md.theta = {CycNum::one(20), CycNum::zeta(20, 8)};
    md.D = -CycNum::zeta(20, 5) * (CycNum::zeta(20, 4) - CycNum::zeta(20, 16));
    return md;
}

inline ModularData ising() {
    ModularData md;
    md.conductor = 16;
    md.dual = {0, 1, 2};
    const CycNum r2 = CycNum::zeta(16, 2) + CycNum::zeta(16, -2);
    const CycNum one = CycNum::one(16), zero = CycNum::zero(16);
    md.S = {one, r2, one, r2, zero, -r2, one, -r2, one};
    md.theta = {one, CycNum::zeta(16, 1), -one};
    md.D = CycNum::integer(16, 2);
    return md;
}

inline ModularData doubled_semion() { return rtinv::center_of_modular(semion()); }

}  // namespace fixtures
