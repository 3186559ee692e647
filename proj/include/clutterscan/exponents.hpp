#pragma once

#include <boost/rational.hpp>

namespace clutterscan {

using Rational = boost::rational<long long>;

struct RhoExact {
    Rational w;
    Rational rho;
};

struct Rho {
    double w = 0.0;
    double rho = 0.0;
};

/// w = sum_{s=0}^{r0} (1 - s/alpha) binom(s+k-1, k-1) and
/// rho = k / (k + alpha (d-k) w), for rational alpha.
/// Throws ParamOrder unless 1 <= k < d and 1 <= r0 <= r < alpha.
RhoExact exponent_rho_exact(int k, int d, Rational alpha, int r0);
Rho exponent_rho(int k, int d, double alpha, int r0);

/// k / (k + (d-k)(k+2)).
Rational exponent_rho_dir_exact(int k, int d);
double exponent_rho_dir(int k, int d);

/// Scale eps = n^{-alpha / (k + alpha (d-k) w)} at which the box count and
/// the number of cells balance.
double statistic_eps(int k, int d, double alpha, int r0, double n);

}  // namespace clutterscan
