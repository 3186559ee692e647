#pragma once

// The greedy cell statistic: count the even cells of the eps'-grid that hold
// a sample whose jet lies in the box R_m.

#include <cstddef>
#include <map>
#include <vector>

#include "clutterscan/generators.hpp"
#include "clutterscan/holder.hpp"
#include "clutterscan/interpolant.hpp"

namespace clutterscan {

struct CellSelection {
    double eps = 0.0;
    double eps_prime = 0.0;
    std::map<std::vector<int>, std::size_t> selected;  // even cell -> sample index
    std::size_t count = 0;
    std::size_t cells_total = 0;  // number of even cells
    bool coarse = false;          // eps' > 1/2: a single usable cell
};

/// eps = n^{-alpha/(k + alpha (d-k) w)} and eps' = (c2 eps)^{1/alpha}. Each
/// even cell keeps the lowest-index sample inside its box. Throws EpsTooLarge
/// when eps' > 1/2 unless allow_coarse is set, in which case the count runs
/// over the single cell and the selection is flagged coarse.
CellSelection greedy_cell_statistic(const std::vector<JetPoint>& samples, const HolderParams& params,
                                    std::size_t n, bool allow_coarse = false);

/// Same selection rule at an explicit eps.
CellSelection greedy_cell_statistic_at(const std::vector<JetPoint>& samples, const HolderParams& params,
                                       double eps, bool allow_coarse = false);

/// Interpolant through the selected jets; it lies in the class, so the
/// selection count is a certified lower bound on the maximal interpolation count.
HolderInterpolant certify_selection(const CellSelection& sel, const std::vector<JetPoint>& samples,
                                    const HolderParams& params);

/// Null probability that a jet lands in the box (the x coordinate is free):
/// (eps/2)^{d-k} * prod_{s != 0} (eps_s / (2 beta))^{d-k}.
double null_box_probability(const HolderParams& params, double eps);

/// The null samples that can count, drawn directly: Binomial(n, q) of them
/// with q = null_box_probability, each with x uniform and jet uniform on the
/// box. Feeding these to the greedy statistic gives the same law of the count
/// as feeding all n null samples.
std::vector<JetPoint> sample_null_box_jets(std::size_t n, const HolderParams& params, double eps, Rng& rng);

/// Oriented version: Binomial(n, (eps/2)^{d-k}) null oriented points, z's last
/// d-k coordinates uniform on [eps/2, eps], the rest of z and w as under the
/// null. Every null point outside this set fails the y^0 box test.
std::vector<OrientedPoint> sample_null_oriented_value_hits(std::size_t n, int k, int d, double eps, Rng& rng);

}  // namespace clutterscan
