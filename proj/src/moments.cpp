#include "clutterscan/moments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "clutterscan/error.hpp"

namespace clutterscan {

CouponMoments coupon_moments(long long l, long long kk) {
    if (l < 1 || kk < 0) throw Error(ErrorCode::InvalidArgument, "need l >= 1 and kk >= 0");
    const double L = static_cast<double>(l);
    const double K = static_cast<double>(kk);
    const double one = std::pow(1.0 - 1.0 / L, K);
    const double both = std::pow(1.0 - 2.0 / L, K);
    const double one_sq = std::pow(1.0 - 1.0 / L, 2.0 * K);
    CouponMoments m;
    m.mean = L * one;
    m.variance = L * (one - one_sq) + L * (L - 1.0) * (both - one_sq);
    return m;
}

BinomialTail binomial_tail_check(long long n, double p, long long b, double c) {
    if (n < 1 || !(p > 0.0) || !(p < 0.5)) throw Error(ErrorCode::ParamOrder, "need n >= 1 and 0 < p < 1/2");
    if (!(static_cast<double>(b) > 2.0 * static_cast<double>(n) * p))
        throw Error(ErrorCode::ParamOrder, "need b > 2 n p");
    BinomialTail out;
    out.bound = std::exp(-c * static_cast<double>(b));
    if (b >= n) {
        out.exact_tail = 0.0;
        out.holds = true;
        return out;
    }
    // log-sum-exp over j = b+1 .. n of log C(n,j) + j log p + (n-j) log(1-p)
    const double lp = std::log(p);
    const double lq = std::log1p(-p);
    const double ln_fact_n = std::lgamma(static_cast<double>(n) + 1.0);
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(n - b));
    double top = -std::numeric_limits<double>::infinity();
    for (long long j = b + 1; j <= n; ++j) {
        const double jj = static_cast<double>(j);
        const double t = ln_fact_n - std::lgamma(jj + 1.0) - std::lgamma(static_cast<double>(n - j) + 1.0) +
                         jj * lp + static_cast<double>(n - j) * lq;
        terms.push_back(t);
        top = std::max(top, t);
    }
    double sum = 0.0;
    for (double t : terms) sum += std::exp(t - top);
    out.exact_tail = std::exp(top) * sum;
    out.holds = out.exact_tail <= out.bound;
    return out;
}

FitResult fit_scaling_exponent(const std::vector<std::pair<double, double>>& points) {
    std::set<double> distinct;
    for (const auto& [n, s] : points) {
        if (!(n > 0.0) || !(s > 0.0))
            throw Error(ErrorCode::DegenerateFit, "fit needs positive n and positive statistics");
        distinct.insert(n);
    }
    if (distinct.size() < 3) throw Error(ErrorCode::DegenerateFit, "fit needs at least three distinct n");
    const double m = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [n, s] : points) {
        mx += std::log(n);
        my += std::log(s);
    }
    mx /= m;
    my /= m;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [n, s] : points) {
        const double dx = std::log(n) - mx;
        sxx += dx * dx;
        sxy += dx * (std::log(s) - my);
    }
    FitResult fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double sse = 0.0;
    for (const auto& [n, s] : points) {
        const double r = std::log(s) - fit.intercept - fit.slope * std::log(n);
        sse += r * r;
    }
    fit.stderr_ = std::sqrt(sse / (m - 2.0) / sxx);
    return fit;
}

}  // namespace clutterscan
