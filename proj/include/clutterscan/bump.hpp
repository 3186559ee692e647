#pragma once

// Smooth plateau bumps and the tensor family psi_s(u) = u^s / s! * chi(u)
// used by the interpolant, with exact derivatives via truncated Taylor series.

#include <vector>

#include "clutterscan/holder.hpp"
#include "clutterscan/multi_index.hpp"

namespace clutterscan {

/// zeta, zeta', ..., zeta^{(order)} at t. zeta is 1 on |t| <= 1/4, 0 on
/// |t| >= 1/2, and blends through exp(-1/u) / (exp(-1/u) + exp(-1/(1-u))),
/// u = 4 (1/2 - |t|).
std::vector<double> zeta_derivatives(double t, int order);

/// phi_m^{(n)}(t) for phi_m(t) = t^m / m! * zeta(t); entry [m * (order+1) + n].
std::vector<double> phi_table(double t, int max_m, int order);

class BumpBasis {
public:
    /// Family for multi_index_set(k, r0); derivatives up to total order max_order.
    BumpBasis(int k, int r0, int max_order);

    [[nodiscard]] int k() const noexcept { return k_; }
    [[nodiscard]] int r0() const noexcept { return r0_; }
    [[nodiscard]] int max_order() const noexcept { return max_order_; }
    [[nodiscard]] const std::vector<MultiIndex>& indices() const noexcept { return indices_; }

    /// psi_s^{(t)}(u).
    [[nodiscard]] double derivative(const MultiIndex& s, const MultiIndex& t, const Vector& u) const;

    /// sup over the 101^k grid on [-1/2,1/2]^k of |psi_s^{(t)}|. psi_s is a
    /// product of univariate factors, so this is a product of 1-D sups.
    [[nodiscard]] double sup_norm(const MultiIndex& s, const MultiIndex& t) const;

    /// max over s in S and |t| <= max_order of sup_norm(s, t).
    [[nodiscard]] double max_sup_norm() const;

    /// max over |t| <= max_order of sum_s sup_norm(s, t).
    [[nodiscard]] double max_column_sum() const;

private:
    int k_;
    int r0_;
    int max_order_;
    std::vector<MultiIndex> indices_;
    std::vector<double> sup1d_;  // [m * (max_order+1) + n]
};

inline constexpr int kBumpSupGrid = 101;
inline constexpr double kBumpSafety = 1.1;

struct ConstructionConstants {
    double c3 = 0.0;        // derivative-norm constant of the rescaled pieces
    double c2 = 0.0;        // eps' = (c2 eps)^{1/alpha}
    double bump_sup = 0.0;  // max sup norm of psi_s^{(t)}, |t| <= r+1
};

/// c3 = 1.1 * q * max_{|t|<=r+1} sum_s ||psi_s^{(t)}||, with q = k for integer
/// alpha and max(2, k) otherwise (the mean-value and two-piece bounds on the
/// order-r increments); c2 = max(1 + 1e-6, (c3/beta)^{alpha/(alpha-r)}).
/// Cached per (k, alpha, beta, r0).
ConstructionConstants construction_constants(const HolderParams& params);

/// (c2 * eps)^{1/alpha}.
double eps_prime_for(const HolderParams& params, double eps);

}  // namespace clutterscan
