#include "clutterscan/bump.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "clutterscan/error.hpp"

namespace clutterscan {

namespace {

// Truncated Taylor series in a local variable h: c[0] + c[1] h + ...
using Series = std::vector<double>;

Series div(const Series& a, const Series& b) {
    Series q(a.size(), 0.0);
    for (std::size_t n = 0; n < a.size(); ++n) {
        double acc = a[n];
        for (std::size_t i = 1; i <= n; ++i) acc -= b[i] * q[n - i];
        q[n] = acc / b[0];
    }
    return q;
}

Series exp_series(const Series& a) {
    Series e(a.size(), 0.0);
    e[0] = std::exp(a[0]);
    for (std::size_t n = 1; n < a.size(); ++n) {
        double acc = 0.0;
        for (std::size_t i = 1; i <= n; ++i) acc += static_cast<double>(i) * a[i] * e[n - i];
        e[n] = acc / static_cast<double>(n);
    }
    return e;
}

// exp(-1/v) for a series v with v[0] > 0.
Series flat(const Series& v) {
    Series one(v.size(), 0.0);
    one[0] = -1.0;
    return exp_series(div(one, v));
}

constexpr double kBlendCutoff = 0.01;

}  // namespace

std::vector<double> zeta_derivatives(double t, int order) {
    const auto len = static_cast<std::size_t>(order + 1);
    std::vector<double> out(len, 0.0);
    const double a = std::abs(t);
    if (a <= 0.25) {
        out[0] = 1.0;
        return out;
    }
    if (a >= 0.5) return out;
    const double u = 4.0 * (0.5 - a);
    if (u < kBlendCutoff) return out;
    if (1.0 - u < kBlendCutoff) {
        out[0] = 1.0;
        return out;
    }
    const double du = t > 0 ? -4.0 : 4.0;
    Series us(len, 0.0);
    Series vs(len, 0.0);
    us[0] = u;
    vs[0] = 1.0 - u;
    if (len > 1) {
        us[1] = du;
        vs[1] = -du;
    }
    const Series fu = flat(us);
    const Series fv = flat(vs);
    Series denom(len);
    for (std::size_t i = 0; i < len; ++i) denom[i] = fu[i] + fv[i];
    const Series s = div(fu, denom);
    double fact = 1.0;
    for (std::size_t n = 0; n < len; ++n) {
        if (n > 0) fact *= static_cast<double>(n);
        out[n] = fact * s[n];
    }
    return out;
}

std::vector<double> phi_table(double t, int max_m, int order) {
    const auto width = static_cast<std::size_t>(order + 1);
    const std::vector<double> z = zeta_derivatives(t, order);
    std::vector<double> out(static_cast<std::size_t>(max_m + 1) * width, 0.0);
    for (int m = 0; m <= max_m; ++m) {
        // d^j/dt^j of t^m / m! is t^{m-j} / (m-j)!
        std::vector<double> mono(static_cast<std::size_t>(m + 1));
        double fact = 1.0;
        for (int j = m; j >= 0; --j) {
            mono[static_cast<std::size_t>(j)] = std::pow(t, m - j) / fact;
            fact *= static_cast<double>(m - j + 1);
        }
        for (int n = 0; n <= order; ++n) {
            double acc = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= std::min(n, m); ++j) {
                acc += binom * mono[static_cast<std::size_t>(j)] * z[static_cast<std::size_t>(n - j)];
                binom = binom * (n - j) / (j + 1);
            }
            out[static_cast<std::size_t>(m) * width + static_cast<std::size_t>(n)] = acc;
        }
    }
    return out;
}

BumpBasis::BumpBasis(int k, int r0, int max_order)
    : k_(k), r0_(r0), max_order_(max_order), indices_(multi_index_set(k, r0)) {
    if (max_order < 0) throw Error(ErrorCode::InvalidArgument, "max_order must be >= 0");
    const auto width = static_cast<std::size_t>(max_order + 1);
    sup1d_.assign(static_cast<std::size_t>(r0 + 1) * width, 0.0);
    for (int g = 0; g < kBumpSupGrid; ++g) {
        const double t = -0.5 + static_cast<double>(g) / (kBumpSupGrid - 1);
        const auto tab = phi_table(t, r0, max_order);
        for (std::size_t i = 0; i < tab.size(); ++i) sup1d_[i] = std::max(sup1d_[i], std::abs(tab[i]));
    }
}

double BumpBasis::derivative(const MultiIndex& s, const MultiIndex& t, const Vector& u) const {
    double out = 1.0;
    const auto width = static_cast<std::size_t>(t.weight() + 1);
    for (int i = 0; i < k_; ++i) {
        const int m = s.entries[static_cast<std::size_t>(i)];
        const int n = t.entries[static_cast<std::size_t>(i)];
        const auto tab = phi_table(u(i), m, static_cast<int>(width) - 1);
        out *= tab[static_cast<std::size_t>(m) * width + static_cast<std::size_t>(n)];
        if (out == 0.0) break;
    }
    return out;
}

double BumpBasis::sup_norm(const MultiIndex& s, const MultiIndex& t) const {
    const auto width = static_cast<std::size_t>(max_order_ + 1);
    double out = 1.0;
    for (int i = 0; i < k_; ++i) {
        const auto m = static_cast<std::size_t>(s.entries[static_cast<std::size_t>(i)]);
        const auto n = static_cast<std::size_t>(t.entries[static_cast<std::size_t>(i)]);
        out *= sup1d_[m * width + n];
    }
    return out;
}

double BumpBasis::max_sup_norm() const {
    double out = 0.0;
    for (const auto& t : multi_index_set(k_, max_order_))
        for (const auto& s : indices_) out = std::max(out, sup_norm(s, t));
    return out;
}

double BumpBasis::max_column_sum() const {
    double out = 0.0;
    for (const auto& t : multi_index_set(k_, max_order_)) {
        double sum = 0.0;
        for (const auto& s : indices_) sum += sup_norm(s, t);
        out = std::max(out, sum);
    }
    return out;
}

ConstructionConstants construction_constants(const HolderParams& params) {
    static std::mutex mutex;
    static std::map<std::tuple<int, double, double, int>, ConstructionConstants> cache;
    const auto key = std::make_tuple(params.k, params.alpha, params.beta, params.r0);
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    const BumpBasis basis(params.k, params.r0, params.r + 1);
    const bool integer_alpha = params.alpha == std::floor(params.alpha);
    const double spread = integer_alpha ? params.k : std::max(2, params.k);
    ConstructionConstants cc;
    cc.bump_sup = basis.max_sup_norm();
    cc.c3 = kBumpSafety * spread * basis.max_column_sum();
    cc.c2 = std::max(1.0 + 1e-6, std::pow(cc.c3 / params.beta, params.alpha / (params.alpha - params.r)));
    std::lock_guard<std::mutex> lock(mutex);
    cache[key] = cc;
    return cc;
}

double eps_prime_for(const HolderParams& params, double eps) {
    return std::pow(construction_constants(params).c2 * eps, 1.0 / params.alpha);
}

}  // namespace clutterscan
