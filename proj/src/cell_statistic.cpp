#include "clutterscan/cell_statistic.hpp"

#include <cmath>

#include "clutterscan/bump.hpp"
#include "clutterscan/error.hpp"
#include "clutterscan/exponents.hpp"

namespace clutterscan {

CellSelection greedy_cell_statistic(const std::vector<JetPoint>& samples, const HolderParams& params,
                                    std::size_t n, bool allow_coarse) {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    const double eps = statistic_eps(params.k, params.d, params.alpha, params.r0, static_cast<double>(n));
    return greedy_cell_statistic_at(samples, params, eps, allow_coarse);
}

CellSelection greedy_cell_statistic_at(const std::vector<JetPoint>& samples, const HolderParams& params,
                                       double eps, bool allow_coarse) {
    CellSelection sel;
    sel.eps = eps;
    sel.eps_prime = eps_prime_for(params, eps);
    if (sel.eps_prime > 0.5) {
        if (!allow_coarse)
            throw Error(ErrorCode::EpsTooLarge, "eps' = " + std::to_string(sel.eps_prime) + " > 1/2");
        sel.coarse = true;
    }
    const int per_axis = static_cast<int>(std::floor(1.0 / sel.eps_prime)) + 1;
    const auto even_per_axis = static_cast<std::size_t>((per_axis + 1) / 2);
    sel.cells_total = 1;
    for (int a = 0; a < params.k; ++a) sel.cells_total *= even_per_axis;

    std::vector<int> cell(static_cast<std::size_t>(params.k));
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        if (s.x.size() != params.k)
            throw Error(ErrorCode::DimensionMismatch, "sample " + std::to_string(i) + " has the wrong shape");
        if (!jet_in_box(s.y, params, eps)) continue;
        bool even = true;
        for (int a = 0; a < params.k; ++a) {
            const int m = std::min(static_cast<int>(std::floor(s.x(a) / sel.eps_prime)), per_axis - 1);
            if (m % 2 != 0 || m < 0) even = false;
            cell[static_cast<std::size_t>(a)] = m;
        }
        if (!even) continue;
        sel.selected.emplace(cell, i);
    }
    sel.count = sel.selected.size();
    return sel;
}

HolderInterpolant certify_selection(const CellSelection& sel, const std::vector<JetPoint>& samples,
                                    const HolderParams& params) {
    if (sel.coarse) throw Error(ErrorCode::EpsTooLarge, "a coarse selection cannot be interpolated");
    std::vector<JetPoint> nodes;
    nodes.reserve(sel.selected.size());
    for (const auto& [cell, index] : sel.selected) nodes.push_back(samples.at(index));
    return build_interpolant(std::move(nodes), params, sel.eps);
}

double null_box_probability(const HolderParams& params, double eps) {
    double q = std::pow(eps / 2.0, params.codim());
    for (const auto& s : params.indices()) {
        if (s.weight() == 0) continue;
        q *= std::pow(std::min(params.beta, box_side(params, eps, s.weight())) / (2.0 * params.beta), params.codim());
    }
    return q;
}

std::vector<JetPoint> sample_null_box_jets(std::size_t n, const HolderParams& params, double eps, Rng& rng) {
    const double q = null_box_probability(params, eps);
    const auto hits = std::binomial_distribution<std::size_t>(n, q)(rng);
    const auto indices = params.indices();
    const auto cols = static_cast<Eigen::Index>(indices.size());
    std::vector<JetPoint> out;
    out.reserve(hits);
    for (std::size_t i = 0; i < hits; ++i) {
        JetPoint p{Vector(params.k), Matrix(params.codim(), cols)};
        for (int a = 0; a < params.k; ++a) p.x(a) = uniform01(rng);
        for (Eigen::Index c = 0; c < cols; ++c) {
            const double lo = c == 0 ? eps / 2.0 : 0.0;
            const double hi = c == 0 ? eps
                                     : std::min(params.beta, box_side(params, eps,
                                                                      indices[static_cast<std::size_t>(c)].weight()));
            for (Eigen::Index r = 0; r < params.codim(); ++r) p.y(r, c) = uniform(rng, lo, hi);
        }
        out.push_back(std::move(p));
    }
    return out;
}

std::vector<OrientedPoint> sample_null_oriented_value_hits(std::size_t n, int k, int d, double eps, Rng& rng) {
    const double q = std::pow(eps / 2.0, d - k);
    const auto hits = std::binomial_distribution<std::size_t>(n, q)(rng);
    std::vector<OrientedPoint> out;
    out.reserve(hits);
    for (std::size_t i = 0; i < hits; ++i) {
        Vector z(d);
        for (int a = 0; a < k; ++a) z(a) = uniform01(rng);
        for (int a = k; a < d; ++a) z(a) = uniform(rng, eps / 2.0, eps);
        out.push_back(OrientedPoint{std::move(z), sample_uniform_subspace(rng, k, d)});
    }
    return out;
}

}  // namespace clutterscan
