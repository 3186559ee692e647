#include "clutterscan/holder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "clutterscan/error.hpp"

namespace clutterscan {

int strict_floor(double alpha) { return static_cast<int>(std::ceil(alpha)) - 1; }

HolderParams HolderParams::make(int k, int d, double alpha, double beta, int r0) {
    if (k < 1 || d <= k) throw Error(ErrorCode::InvalidArgument, "need 1 <= k < d");
    if (!(alpha > 1.0) || !std::isfinite(alpha))
        throw Error(ErrorCode::InvalidArgument, "alpha must be a finite number > 1");
    if (!(beta > 0.0) || !std::isfinite(beta))
        throw Error(ErrorCode::InvalidArgument, "beta must be a finite number > 0");
    HolderParams p;
    p.k = k;
    p.d = d;
    p.alpha = alpha;
    p.beta = beta;
    p.r0 = r0;
    p.r = strict_floor(alpha);
    if (r0 < 1 || r0 > p.r)
        throw Error(ErrorCode::ParamOrder, "need 1 <= r0 <= r = " + std::to_string(p.r));
    return p;
}

double discrepancy_phi(const Matrix& y1, const Matrix& y2, const HolderParams& params) {
    const auto indices = params.indices();
    if (y1.rows() != params.codim() || y2.rows() != params.codim() ||
        y1.cols() != static_cast<Eigen::Index>(indices.size()) || y2.cols() != y1.cols())
        throw Error(ErrorCode::DimensionMismatch, "jets do not match the multi-index set");
    double out = 0.0;
    for (std::size_t j = 0; j < indices.size(); ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        const double gap = (y1.col(col) - y2.col(col)).cwiseAbs().maxCoeff();
        const double w = indices[j].weight();
        out = std::max(out, std::pow(gap, params.alpha / (params.alpha - w)));
    }
    return out;
}

Matrix evaluate_jet(const HolderFunction& f, const Vector& x, const std::vector<MultiIndex>& orders) {
    if (x.size() != f.k()) throw Error(ErrorCode::DimensionMismatch, "point has the wrong dimension");
    for (Eigen::Index i = 0; i < x.size(); ++i)
        if (!(x(i) >= 0.0 && x(i) <= 1.0))
            throw Error(ErrorCode::OutOfDomain, "point lies outside [0,1]^k");
    for (const auto& t : orders)
        if (t.size() != f.k()) throw Error(ErrorCode::DimensionMismatch, "multi-index has wrong length");
    return f.jet(x, orders);
}

AffineFunction::AffineFunction(Vector offset, Matrix slope)
    : offset_(std::move(offset)), slope_(std::move(slope)) {
    if (slope_.rows() != offset_.size() || slope_.cols() < 1)
        throw Error(ErrorCode::DimensionMismatch, "slope must be codim x k");
}

AffineFunction AffineFunction::zero(int k, int codim) {
    return AffineFunction(Vector::Zero(codim), Matrix::Zero(codim, k));
}

AffineFunction AffineFunction::constant(int k, const Vector& value) {
    return AffineFunction(value, Matrix::Zero(value.size(), k));
}

Matrix AffineFunction::jet(const Vector& x, const std::vector<MultiIndex>& orders) const {
    Matrix out = Matrix::Zero(codim(), static_cast<Eigen::Index>(orders.size()));
    for (std::size_t j = 0; j < orders.size(); ++j) {
        const auto col = static_cast<Eigen::Index>(j);
        const int w = orders[j].weight();
        if (w == 0) {
            out.col(col) = offset_ + slope_ * x;
        } else if (w == 1) {
            const auto& e = orders[j].entries;
            const auto axis = std::find(e.begin(), e.end(), 1) - e.begin();
            out.col(col) = slope_.col(axis);
        }
    }
    return out;
}

SinusoidFunction SinusoidFunction::random(double beta, Rng& rng) {
    constexpr double pi = std::numbers::pi;
    const double omega = uniform(rng, pi, 3.0 * pi);
    const double cap = std::min({0.4, beta / omega, beta / (omega * omega)});
    const double amplitude = uniform(rng, 0.5, 1.0) * cap;
    const double phase = uniform(rng, 0.0, 2.0 * pi);
    const double offset = uniform(rng, 0.1 + amplitude, 0.9 - amplitude);
    return SinusoidFunction(offset, amplitude, omega, phase);
}

Matrix SinusoidFunction::jet(const Vector& x, const std::vector<MultiIndex>& orders) const {
    Matrix out(1, static_cast<Eigen::Index>(orders.size()));
    const double t = omega_ * x(0) + phase_;
    for (std::size_t j = 0; j < orders.size(); ++j) {
        const int m = orders[j].weight();
        // d^m/dx^m sin(t) = sin(t + m pi/2)
        double v = amplitude_ * std::pow(omega_, m);
        switch (m % 4) {
            case 0: v *= std::sin(t); break;
            case 1: v *= std::cos(t); break;
            case 2: v *= -std::sin(t); break;
            default: v *= -std::cos(t); break;
        }
        if (m == 0) v += offset_;
        out(0, static_cast<Eigen::Index>(j)) = v;
    }
    return out;
}

MembershipReport holder_membership_check(const HolderFunction& f, const HolderParams& params,
                                         int grid_n, double tolerance) {
    if (grid_n < 2) throw Error(ErrorCode::InvalidArgument, "grid_n must be >= 2");
    if (f.k() != params.k || f.codim() != params.codim())
        throw Error(ErrorCode::DimensionMismatch, "function does not match the parameters");

    MembershipReport rep;
    rep.orders = multi_index_set(params.k, params.r);
    rep.derivative_norms.assign(rep.orders.size(), 0.0);
    rep.bound = params.beta * tolerance;
    rep.value_min = std::numeric_limits<double>::infinity();
    rep.value_max = -std::numeric_limits<double>::infinity();

    std::vector<std::size_t> top;  // positions of |t| = r
    for (std::size_t j = 0; j < rep.orders.size(); ++j)
        if (rep.orders[j].weight() == params.r) top.push_back(j);

    const int k = params.k;
    std::size_t points = 1;
    for (int i = 0; i < k; ++i) points *= static_cast<std::size_t>(grid_n);

    const std::size_t stride = top.size() * static_cast<std::size_t>(params.codim());
    std::vector<double> coords(points * static_cast<std::size_t>(k));
    std::vector<double> top_values(points * stride);

    Vector x(k);
    for (std::size_t p = 0; p < points; ++p) {
        std::size_t rest = p;
        for (int i = 0; i < k; ++i) {
            x(i) = static_cast<double>(rest % static_cast<std::size_t>(grid_n)) / (grid_n - 1);
            rest /= static_cast<std::size_t>(grid_n);
            coords[p * static_cast<std::size_t>(k) + static_cast<std::size_t>(i)] = x(i);
        }
        const Matrix jet = f.jet(x, rep.orders);
        for (std::size_t j = 0; j < rep.orders.size(); ++j) {
            const auto col = static_cast<Eigen::Index>(j);
            rep.derivative_norms[j] = std::max(rep.derivative_norms[j], jet.col(col).cwiseAbs().maxCoeff());
            if (rep.orders[j].weight() == 0) {
                rep.value_min = std::min(rep.value_min, jet.col(col).minCoeff());
                rep.value_max = std::max(rep.value_max, jet.col(col).maxCoeff());
            }
        }
        std::size_t slot = p * stride;
        for (std::size_t j : top)
            for (int c = 0; c < params.codim(); ++c)
                top_values[slot++] = jet(c, static_cast<Eigen::Index>(j));
    }
    rep.max_derivative_norm = *std::max_element(rep.derivative_norms.begin(), rep.derivative_norms.end());

    const double expo = params.alpha - params.r;
    double ratio = 0.0;
    for (std::size_t a = 0; a < points; ++a) {
        const double* xa = &coords[a * static_cast<std::size_t>(k)];
        const double* va = &top_values[a * stride];
        for (std::size_t b = a + 1; b < points; ++b) {
            const double* xb = &coords[b * static_cast<std::size_t>(k)];
            double dist = 0.0;
            for (int i = 0; i < k; ++i) dist = std::max(dist, std::abs(xa[i] - xb[i]));
            const double* vb = &top_values[b * stride];
            double gap = 0.0;
            for (std::size_t c = 0; c < stride; ++c) gap = std::max(gap, std::abs(va[c] - vb[c]));
            ratio = std::max(ratio, gap / std::pow(dist, expo));
        }
    }
    rep.max_holder_ratio = ratio;
    rep.pass = rep.max_derivative_norm <= rep.bound && rep.max_holder_ratio <= rep.bound;
    return rep;
}

void require_in_class(const HolderFunction& f, const HolderParams& params, int grid_n) {
    const auto rep = holder_membership_check(f, params, grid_n);
    if (!rep.pass)
        throw Error(ErrorCode::NotInClass,
                    "derivative norm " + std::to_string(rep.max_derivative_norm) + ", increment ratio " +
                        std::to_string(rep.max_holder_ratio) + ", bound " + std::to_string(rep.bound));
}

Subspace tangent_from_partials(const Matrix& partials) {
    try {
        return orthonormalize(partials);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::RankDeficient)
            throw Error(ErrorCode::DegenerateTangent, "partial derivatives are linearly dependent");
        throw;
    }
}

GraphLift::GraphLift(std::shared_ptr<const HolderFunction> g, const HolderParams& params, int grid_n)
    : g_(std::move(g)), params_(params) {
    if (!g_) throw Error(ErrorCode::InvalidArgument, "null base function");
    if (params.alpha != 2.0 || params.r0 != 1 || params.beta < 1.0)
        throw Error(ErrorCode::InvalidArgument, "graph lifts need alpha = 2, r0 = 1, beta >= 1");
    if (g_->k() != params.k || g_->codim() != params.codim())
        throw Error(ErrorCode::DimensionMismatch, "base function does not match the parameters");
    require_in_class(*g_, params_, grid_n);
}

Vector GraphLift::value(const Vector& x) const {
    const Matrix v = evaluate_jet(*g_, x, multi_indices_of_weight(params_.k, 0));
    Vector out(params_.d);
    out.head(params_.k) = x;
    out.tail(params_.codim()) = v.col(0);
    return out;
}

Matrix GraphLift::partials(const Vector& x) const {
    const Matrix grad = evaluate_jet(*g_, x, multi_indices_of_weight(params_.k, 1));
    Matrix out(params_.d, params_.k);
    out.topRows(params_.k).setIdentity();
    out.bottomRows(params_.codim()) = grad;
    return out;
}

double GraphLift::angle_condition(const Vector& x) const {
    if (params_.k == 1) return std::numbers::pi / 2;
    const Matrix p = partials(x);
    double worst = std::numbers::pi / 2;
    for (int s = 0; s < params_.k; ++s) {
        Matrix others(params_.d, params_.k - 1);
        int c = 0;
        for (int t = 0; t < params_.k; ++t)
            if (t != s) others.col(c++) = p.col(t);
        worst = std::min(worst, canonical_angle(orthonormalize(p.col(s)), orthonormalize(others)));
    }
    return worst;
}

double GraphLift::angle_threshold() const noexcept {
    return 1.0 / (2.0 * params_.beta * params_.codim());
}

Subspace tangent_space(const GraphLift& f, const Vector& x) { return tangent_from_partials(f.partials(x)); }

}  // namespace clutterscan
