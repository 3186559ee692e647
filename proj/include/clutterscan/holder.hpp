#pragma once

// Hoelder classes H^{k,d-k}(alpha, beta), jets and the discrepancy Phi,
// generic class members, membership checks and graph lifts.

#include <functional>
#include <memory>
#include <vector>

#include "clutterscan/grassmann.hpp"
#include "clutterscan/multi_index.hpp"

namespace clutterscan {

/// max{ m in N : m < alpha }, so 1 for alpha = 2.
int strict_floor(double alpha);

struct HolderParams {
    int k = 1;
    int d = 2;
    double alpha = 2.0;
    double beta = 1.0;
    int r0 = 1;
    int r = 1;

    /// Validates 1 <= k < d, alpha > 1, beta > 0, 1 <= r0 <= r.
    static HolderParams make(int k, int d, double alpha, double beta, int r0);

    [[nodiscard]] int codim() const noexcept { return d - k; }
    [[nodiscard]] std::size_t jet_size() const { return multi_index_count(k, r0); }
    [[nodiscard]] std::vector<MultiIndex> indices() const { return multi_index_set(k, r0); }
};

/// Column j of y holds y^s for the j-th multi-index of multi_index_set(k, r0).
struct JetPoint {
    Vector x;  // in [0,1]^k
    Matrix y;  // (d-k) x |S|
};

/// max_s ||y1^s - y2^s||_inf^{alpha/(alpha-|s|)}.
double discrepancy_phi(const Matrix& y1, const Matrix& y2, const HolderParams& params);

/// A map [0,1]^k -> R^{codim} with partial derivatives on demand.
class HolderFunction {
public:
    virtual ~HolderFunction() = default;
    [[nodiscard]] virtual int k() const = 0;
    [[nodiscard]] virtual int codim() const = 0;
    /// Column j is f^{(orders[j])}(x). x is assumed to lie in [0,1]^k.
    [[nodiscard]] virtual Matrix jet(const Vector& x, const std::vector<MultiIndex>& orders) const = 0;
};

/// f.jet(x, orders) after checking x in [0,1]^k (OutOfDomain otherwise).
Matrix evaluate_jet(const HolderFunction& f, const Vector& x, const std::vector<MultiIndex>& orders);

/// One-variable scalar g(x) = offset + amplitude * sin(omega x + phase).
class SinusoidFunction final : public HolderFunction {
public:
    SinusoidFunction(double offset, double amplitude, double omega, double phase)
        : offset_(offset), amplitude_(amplitude), omega_(omega), phase_(phase) {}

    /// Random member of the (alpha = 2, r0 = 1, beta) class on one variable:
    /// omega in [pi, 3 pi], amplitude capped so that |g'|, |g''| <= beta and
    /// the range stays inside [0.1, 0.9].
    static SinusoidFunction random(double beta, Rng& rng);

    [[nodiscard]] int k() const override { return 1; }
    [[nodiscard]] int codim() const override { return 1; }
    [[nodiscard]] Matrix jet(const Vector& x, const std::vector<MultiIndex>& orders) const override;

private:
    double offset_;
    double amplitude_;
    double omega_;
    double phase_;
};

/// f(x) = offset + slope * x. Covers the zero and constant functions.
class AffineFunction final : public HolderFunction {
public:
    AffineFunction(Vector offset, Matrix slope);
    static AffineFunction zero(int k, int codim);
    static AffineFunction constant(int k, const Vector& value);

    [[nodiscard]] int k() const override { return static_cast<int>(slope_.cols()); }
    [[nodiscard]] int codim() const override { return static_cast<int>(offset_.size()); }
    [[nodiscard]] Matrix jet(const Vector& x, const std::vector<MultiIndex>& orders) const override;

private:
    Vector offset_;
    Matrix slope_;
};

/// Wraps a callable that already knows its own derivatives.
class LambdaFunction final : public HolderFunction {
public:
    using Fn = std::function<Matrix(const Vector&, const std::vector<MultiIndex>&)>;
    LambdaFunction(int k, int codim, Fn fn) : k_(k), codim_(codim), fn_(std::move(fn)) {}

    [[nodiscard]] int k() const override { return k_; }
    [[nodiscard]] int codim() const override { return codim_; }
    [[nodiscard]] Matrix jet(const Vector& x, const std::vector<MultiIndex>& orders) const override {
        return fn_(x, orders);
    }

private:
    int k_;
    int codim_;
    Fn fn_;
};

struct MembershipReport {
    std::vector<MultiIndex> orders;    // every t with |t| <= r
    std::vector<double> derivative_norms;  // grid sup of ||f^{(t)}||_inf, aligned with orders
    double max_derivative_norm = 0.0;
    double max_holder_ratio = 0.0;     // over grid pairs and |t| = r
    double value_min = 0.0;
    double value_max = 0.0;
    double bound = 0.0;                // beta * tolerance
    bool pass = false;
};

/// Grid check of the class inequalities on the tensor grid with grid_n points
/// per axis: ||f^{(t)}|| <= beta for |t| <= r and
/// |f^{(t)}(x) - f^{(t)}(x')| <= beta ||x - x'||^{alpha - r} for |t| = r,
/// each up to the multiplicative tolerance.
MembershipReport holder_membership_check(const HolderFunction& f, const HolderParams& params,
                                         int grid_n, double tolerance = 1.0 + 1e-6);

/// Throws NotInClass when holder_membership_check fails.
void require_in_class(const HolderFunction& f, const HolderParams& params, int grid_n = 101);

/// Frame of span of the columns of `partials`; DegenerateTangent if they do not
/// span k dimensions.
Subspace tangent_from_partials(const Matrix& partials);

/// f(x) = (x, g(x)) for g in H^{k,d-k}(2, beta) with r0 = 1 and beta >= 1.
class GraphLift {
public:
    GraphLift(std::shared_ptr<const HolderFunction> g, const HolderParams& params, int grid_n = 101);

    [[nodiscard]] int k() const noexcept { return params_.k; }
    [[nodiscard]] int d() const noexcept { return params_.d; }
    [[nodiscard]] const HolderParams& params() const noexcept { return params_; }
    [[nodiscard]] const HolderFunction& base() const noexcept { return *g_; }

    [[nodiscard]] Vector value(const Vector& x) const;
    /// d x k matrix whose column s is (e_s, d_s g(x)).
    [[nodiscard]] Matrix partials(const Vector& x) const;
    /// min over s of ang(d_s f, span{d_t f : t != s}); pi/2 when k = 1.
    [[nodiscard]] double angle_condition(const Vector& x) const;
    /// The class threshold 1/(2 beta (d-k)).
    [[nodiscard]] double angle_threshold() const noexcept;

private:
    std::shared_ptr<const HolderFunction> g_;
    HolderParams params_;
};

Subspace tangent_space(const GraphLift& f, const Vector& x);

}  // namespace clutterscan
