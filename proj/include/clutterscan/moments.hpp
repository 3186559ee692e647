#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace clutterscan {

struct CouponMoments {
    double mean = 0.0;
    double variance = 0.0;
};

/// Empty cells among l after kk uniform throws:
/// mean = l (1 - 1/l)^kk,
/// var  = l ((1-1/l)^kk - (1-1/l)^{2kk}) + l (l-1) ((1-2/l)^kk - (1-1/l)^{2kk}).
CouponMoments coupon_moments(long long l, long long kk);

struct BinomialTail {
    double exact_tail = 0.0;  // P(Bin(n, p) > b)
    double bound = 0.0;       // exp(-c b)
    bool holds = false;
};

/// Requires 0 < p < 1/2 and b > 2 n p (ParamOrder otherwise).
BinomialTail binomial_tail_check(long long n, double p, long long b, double c);

struct FitResult {
    double slope = 0.0;
    double stderr_ = 0.0;
    double intercept = 0.0;
};

/// OLS of log(statistic) on log(n). Needs at least three distinct n and
/// positive statistics (DegenerateFit otherwise).
FitResult fit_scaling_exponent(const std::vector<std::pair<double, double>>& points);

}  // namespace clutterscan
