#include "clutterscan/tube_dp.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <deque>

#include "clutterscan/error.hpp"

namespace clutterscan {

namespace {

constexpr int kUnreachable = INT_MIN / 4;

// Sliding maximum of `in` over windows [t - radius, t + radius] for the
// positions t = first, ..., first + out_len - 1 (indices outside `in` are
// skipped; empty windows give kUnreachable).
void window_max(const std::vector<int>& in, int radius, int first, std::vector<int>& out) {
    const int n = static_cast<int>(in.size());
    std::deque<int> dq;
    int next = 0;
    for (std::size_t o = 0; o < out.size(); ++o) {
        const int t = first + static_cast<int>(o);
        while (next < n && next <= t + radius) {
            while (!dq.empty() && in[static_cast<std::size_t>(dq.back())] <= in[static_cast<std::size_t>(next)])
                dq.pop_back();
            dq.push_back(next++);
        }
        while (!dq.empty() && dq.front() < t - radius) dq.pop_front();
        out[o] = dq.empty() ? kUnreachable : in[static_cast<std::size_t>(dq.front())];
    }
}

}  // namespace

int TubeLattice::cell_of(double x) const {
    const int c = static_cast<int>(std::floor(x / x_step));
    return std::clamp(c, 0, cells - 1);
}

TubeLattice tube_lattice(double beta, double eps) {
    if (!(eps > 0.0) || eps > 1.0) throw Error(ErrorCode::InvalidArgument, "need 0 < eps <= 1");
    if (!(beta > 0.0)) throw Error(ErrorCode::InvalidArgument, "need beta > 0");
    TubeLattice lat;
    const double h = std::sqrt(eps);
    lat.x_step = h;
    lat.cells = std::max(1, static_cast<int>(std::ceil(1.0 / h - 1e-12)));
    lat.value_step = eps;
    lat.value_max = static_cast<int>(std::floor(1.0 / eps + 1e-9));
    lat.slope_step = h;
    lat.slope_max = static_cast<int>(std::floor(beta / h + 1e-9));
    lat.slope_min = -lat.slope_max;
    lat.jump = static_cast<int>(std::floor(beta + 1e-9));
    lat.value_radius = eps;
    lat.slope_radius = h;
    return lat;
}

long long tube_dp_on_lattice(const std::vector<JetPoint>& samples, const TubeLattice& lat, std::size_t state_cap) {
    if (lat.cells < 1 || lat.value_max < 0 || lat.slope_max < lat.slope_min || lat.jump < 0)
        throw Error(ErrorCode::InvalidArgument, "malformed lattice");
    if (lat.states_per_cell() > state_cap)
        throw Error(ErrorCode::BudgetExceeded,
                    "tube lattice has " + std::to_string(lat.states_per_cell()) + " states per cell");
    if (samples.empty()) return 0;

    const int nv = lat.value_max + 1;
    const int ns = lat.slope_max - lat.slope_min + 1;
    const auto states = static_cast<std::size_t>(nv) * static_cast<std::size_t>(ns);
    const auto at = [ns](int i, int jj) { return static_cast<std::size_t>(i) * static_cast<std::size_t>(ns) + static_cast<std::size_t>(jj); };

    // samples bucketed by cell
    std::vector<std::vector<std::size_t>> by_cell(static_cast<std::size_t>(lat.cells));
    for (std::size_t s = 0; s < samples.size(); ++s) {
        const auto& p = samples[s];
        if (p.x.size() != 1 || p.y.rows() != 1 || p.y.cols() != 2)
            throw Error(ErrorCode::Unsupported, "the tube statistic needs k = 1, d = 2, r0 = 1 jets");
        by_cell[static_cast<std::size_t>(lat.cell_of(p.x(0)))].push_back(s);
    }

    std::vector<int> score(states);
    const auto fill_score = [&](int c) {
        std::fill(score.begin(), score.end(), 0);
        const double left = c * lat.x_step;
        for (std::size_t s : by_cell[static_cast<std::size_t>(c)]) {
            const double x = samples[s].x(0);
            const double y0 = samples[s].y(0, 0);
            const double y1 = samples[s].y(0, 1);
            const int j_lo = std::max(lat.slope_min,
                                      static_cast<int>(std::ceil((y1 - lat.slope_radius) / lat.slope_step)) - 1);
            const int j_hi = std::min(lat.slope_max,
                                      static_cast<int>(std::floor((y1 + lat.slope_radius) / lat.slope_step)) + 1);
            for (int j = j_lo; j <= j_hi; ++j) {
                const double slope = j * lat.slope_step;
                if (!(std::abs(y1 - slope) <= lat.slope_radius)) continue;
                const double base = y0 - slope * (x - left);
                const int i_lo = std::max(0, static_cast<int>(std::ceil((base - lat.value_radius) / lat.value_step)) - 1);
                const int i_hi =
                    std::min(lat.value_max, static_cast<int>(std::floor((base + lat.value_radius) / lat.value_step)) + 1);
                for (int i = i_lo; i <= i_hi; ++i)
                    if (std::abs(base - i * lat.value_step) <= lat.value_radius) ++score[at(i, j - lat.slope_min)];
            }
        }
    };

    fill_score(0);
    std::vector<int> best = score;
    std::vector<int> next(states);
    const int b = lat.jump;
    // per slope column: window max over value levels, indexed by m + b for m in [-b, nv-1+b]
    std::vector<std::vector<int>> wide(static_cast<std::size_t>(ns), std::vector<int>(static_cast<std::size_t>(nv + 2 * b)));
    std::vector<int> column(static_cast<std::size_t>(nv));
    std::vector<int> sheared(static_cast<std::size_t>(ns));
    std::vector<int> pred(static_cast<std::size_t>(ns));

    for (int c = 1; c < lat.cells; ++c) {
        for (int jj = 0; jj < ns; ++jj) {
            for (int i = 0; i < nv; ++i) column[static_cast<std::size_t>(i)] = best[at(i, jj)];
            window_max(column, b, -b, wide[static_cast<std::size_t>(jj)]);
        }
        fill_score(c);
        for (int ip = 0; ip < nv; ++ip) {
            // predecessor (i, j) of (ip, jp) needs |ip - j - i| <= b: look up the
            // value window centred at m = ip - j in slope column j
            for (int jj = 0; jj < ns; ++jj) {
                const int j = jj + lat.slope_min;
                const int m = ip - j;
                sheared[static_cast<std::size_t>(jj)] =
                    (m < -b || m > nv - 1 + b) ? kUnreachable : wide[static_cast<std::size_t>(jj)][static_cast<std::size_t>(m + b)];
            }
            window_max(sheared, b, 0, pred);
            for (int jp = 0; jp < ns; ++jp) {
                const int p = pred[static_cast<std::size_t>(jp)];
                next[at(ip, jp)] = p <= kUnreachable / 2 ? kUnreachable : p + score[at(ip, jp)];
            }
        }
        best.swap(next);
    }
    return *std::max_element(best.begin(), best.end());
}

long long tube_dp_statistic(const std::vector<JetPoint>& samples, const HolderParams& params, double eps,
                            std::size_t state_cap) {
    if (params.k != 1 || params.d != 2 || params.alpha != 2.0 || params.r0 != 1)
        throw Error(ErrorCode::Unsupported, "the tube statistic is implemented for k = 1, d = 2, alpha = 2, r0 = 1");
    return tube_dp_on_lattice(samples, tube_lattice(params.beta, eps), state_cap);
}

}  // namespace clutterscan
