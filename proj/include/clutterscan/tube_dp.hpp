#pragma once

// Tube maximisation over quantised piecewise-linear jet profiles for k = 1,
// alpha = 2, r0 = 1: the largest number of samples within Phi-distance eps of
// one admissible profile.

#include <cstddef>
#include <vector>

#include "clutterscan/holder.hpp"

namespace clutterscan {

inline constexpr std::size_t kDefaultStateCap = 50'000'000;

/// On cell c (x in [c h, (c+1) h)) a profile state (i, j) is the line
/// v_i + s_j (x - c h) with v_i = i * value_step and s_j = j * slope_step.
/// Consecutive cells may move from (i, j) to (i', j') when |i' - i - j| <= jump
/// and |j' - j| <= jump. A sample (X, Y0, Y1) in cell c is covered by (i, j)
/// when |Y0 - v_i - s_j (X - c h)| <= value_radius and |Y1 - s_j| <= slope_radius.
struct TubeLattice {
    double x_step = 0.0;
    int cells = 0;
    double value_step = 0.0;
    int value_max = 0;  // i in [0, value_max]
    double slope_step = 0.0;
    int slope_min = 0;  // j in [slope_min, slope_max]
    int slope_max = 0;
    int jump = 0;
    double value_radius = 0.0;
    double slope_radius = 0.0;

    [[nodiscard]] std::size_t states_per_cell() const noexcept {
        return static_cast<std::size_t>(value_max + 1) * static_cast<std::size_t>(slope_max - slope_min + 1);
    }
    [[nodiscard]] int cell_of(double x) const;
};

/// Cells of width sqrt(eps), values spaced eps on [0,1], slopes spaced
/// sqrt(eps) on [-beta, beta], jump floor(beta), radii eps and sqrt(eps).
TubeLattice tube_lattice(double beta, double eps);

/// Longest path over the cell-transition graph. Samples need d - k = 1.
/// Throws BudgetExceeded when states_per_cell exceeds the cap.
long long tube_dp_on_lattice(const std::vector<JetPoint>& samples, const TubeLattice& lattice,
                             std::size_t state_cap = kDefaultStateCap);

/// M_n(eps) on tube_lattice(params.beta, eps). Unsupported unless k = 1,
/// d = 2, alpha = 2 and r0 = 1.
long long tube_dp_statistic(const std::vector<JetPoint>& samples, const HolderParams& params, double eps,
                            std::size_t state_cap = kDefaultStateCap);

}  // namespace clutterscan
