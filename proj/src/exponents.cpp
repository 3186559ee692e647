#include "clutterscan/exponents.hpp"

#include <cmath>

#include "clutterscan/error.hpp"
#include "clutterscan/holder.hpp"

namespace clutterscan {

namespace {

long long binom(int n, int r) {
    long long out = 1;
    for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

void check_order(int k, int d, double alpha, int r0) {
    if (k < 1 || d <= k) throw Error(ErrorCode::ParamOrder, "need 1 <= k < d");
    if (!(alpha > 1.0)) throw Error(ErrorCode::ParamOrder, "need alpha > 1");
    if (r0 < 1 || r0 > strict_floor(alpha)) throw Error(ErrorCode::ParamOrder, "need 1 <= r0 <= r < alpha");
}

}  // namespace

RhoExact exponent_rho_exact(int k, int d, Rational alpha, int r0) {
    check_order(k, d, boost::rational_cast<double>(alpha), r0);
    Rational w(0);
    for (int s = 0; s <= r0; ++s) w += (Rational(1) - Rational(s) / alpha) * binom(s + k - 1, k - 1);
    const Rational rho = Rational(k) / (Rational(k) + alpha * Rational(d - k) * w);
    return RhoExact{w, rho};
}

Rho exponent_rho(int k, int d, double alpha, int r0) {
    check_order(k, d, alpha, r0);
    double w = 0.0;
    for (int s = 0; s <= r0; ++s) w += (1.0 - s / alpha) * static_cast<double>(binom(s + k - 1, k - 1));
    return Rho{w, k / (k + alpha * (d - k) * w)};
}

Rational exponent_rho_dir_exact(int k, int d) {
    if (k < 1 || d <= k) throw Error(ErrorCode::ParamOrder, "need 1 <= k < d");
    return Rational(k, k + (d - k) * (k + 2));
}

double exponent_rho_dir(int k, int d) { return boost::rational_cast<double>(exponent_rho_dir_exact(k, d)); }

double statistic_eps(int k, int d, double alpha, int r0, double n) {
    if (!(n >= 1.0)) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    const Rho rho = exponent_rho(k, d, alpha, r0);
    return std::pow(n, -alpha / (k + alpha * (d - k) * rho.w));
}

}  // namespace clutterscan
