#pragma once

/**
 * @file modular_data.hpp
 * @brief Numerical data of a modular category and the constructions on it.
 *
 * Labels are 0..k-1 with 0 the unit. S is stored unnormalized, so the
 * quantum dimensions are d_i = S_{0i} and S^2 = Dim * C. All scalars live in
 * the single field Q(z_conductor).
 */

#include <optional>
#include <string>
#include <vector>

#include "rtinv/cyclotomic.hpp"

namespace rtinv {

struct InvalidData : std::domain_error {
    using std::domain_error::domain_error;
};

struct ModularData {
    int conductor = 1;
    std::vector<int> dual;
    std::vector<CycNum> S;  // row-major rank x rank
    std::vector<CycNum> theta;
    CycNum D;

    int rank() const { return static_cast<int>(dual.size()); }
    const CycNum& s(int i, int j) const { return S[static_cast<size_t>(i) * rank() + j]; }
    CycNum& s(int i, int j) { return S[static_cast<size_t>(i) * rank() + j]; }
    const CycNum& dim(int i) const { return s(0, i); }
    CycNum global_dimension() const;

    /// All scalars re-expressed in Q(z_m), m a multiple of the conductor.
    ModularData embedded(int m) const;
    /// Relabel so that new label perm[i] carries old label i; perm[0] must be 0.
    ModularData relabeled(const std::vector<int>& perm) const;
};

/// Equality of the numerical data after embedding into a common field.
bool same_data(const ModularData& a, const ModularData& b);

struct CheckResult {
    std::string name;
    bool passed = true;
    bool warning_only = false;
    std::vector<int> witness;  // indices locating the first failure
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool ok() const;
    const CheckResult* find(std::string_view name) const;
    std::string summary() const;
};

ValidationReport validate_modular_data(const ModularData& md);

/// N_{ij}^l = (1/Dim) sum_a S_{ia} S_{ja} S_{l* a} / d_a, exactly.
CycNum verlinde_fusion(const ModularData& md, int i, int j, int l);

/// Full fusion table fusion[(i*k + j)*k + l]; throws InvalidData if some d_a = 0.
std::vector<CycNum> fusion_table(const ModularData& md);

struct GaussSums {
    CycNum plus;
    CycNum minus;
    CycNum anomaly;
    bool anomaly_free = false;
};

GaussSums gauss_sums(const ModularData& md);

struct PointedResult {
    bool pointed = false;
    std::optional<int> witness;
};

PointedResult is_pointed(const ModularData& md);

ModularData reverse_data(const ModularData& md);
ModularData deligne_product(const ModularData& a, const ModularData& b);
ModularData center_of_modular(const ModularData& md);
/// The one-label data of Vec.
ModularData trivial_modular_data();

}  // namespace rtinv
