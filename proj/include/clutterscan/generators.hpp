#pragma once

// Samples under the null and planted alternatives, for both the jet problem
// and the oriented-point problem, and the chart reduction between them.

#include <cstddef>
#include <memory>
#include <vector>

#include "clutterscan/grassmann.hpp"
#include "clutterscan/holder.hpp"
#include "clutterscan/rng.hpp"

namespace clutterscan {

/// A class member whose membership has been checked once, so that repeated
/// planting does not redo the grid check.
class CertifiedFunction {
public:
    CertifiedFunction(std::shared_ptr<const HolderFunction> f, const HolderParams& params, int grid_n = 101);

    [[nodiscard]] const HolderFunction& function() const noexcept { return *f_; }
    [[nodiscard]] const HolderParams& params() const noexcept { return params_; }

private:
    std::shared_ptr<const HolderFunction> f_;
    HolderParams params_;
};

/// x uniform on [0,1]^k, y^0 uniform on [0,1]^{d-k}, every other y^s uniform
/// on [-beta, beta]^{d-k}. Per sample the draws are x, then the jet column by
/// column.
std::vector<JetPoint> generate_null_jets(std::size_t n, const HolderParams& params, Rng& rng);

template <class Point>
struct PlantedSample {
    std::vector<Point> points;
    std::vector<std::size_t> planted;  // positions of the planted points, ascending
};

/// n - n1 null draws plus n1 points (X, f^{(S)}(X)) with X uniform, shuffled.
PlantedSample<JetPoint> generate_alt_jets(std::size_t n, std::size_t n1, const CertifiedFunction& f, Rng& rng);
PlantedSample<JetPoint> generate_alt_jets(std::size_t n, std::size_t n1, std::shared_ptr<const HolderFunction> f,
                                          const HolderParams& params, Rng& rng);

/// z uniform on [0,1]^d and w uniform on G(k,d).
std::vector<OrientedPoint> generate_null_oriented(std::size_t n, int k, int d, Rng& rng);

/// n - n1 null draws plus n1 points (f(X), tangent_space(f, X)), shuffled.
PlantedSample<OrientedPoint> generate_alt_oriented(std::size_t n, std::size_t n1, const GraphLift& f, Rng& rng);

struct ReducedJets {
    std::vector<JetPoint> jets;
    std::vector<std::size_t> source;  // index of the oriented point behind each jet
    std::size_t dropped = 0;          // chart-singular samples
};

/// (z, w) -> (x, y^0, y^{e_1..e_k}) with x, y^0 the two blocks of z and the
/// slopes from graph_chart(w). The jet columns follow multi_index_set(k, 1).
ReducedJets oriented_to_jets(const std::vector<OrientedPoint>& samples);

/// Fisher-Yates shuffle driven by rng; returns the permutation applied
/// (new position i holds old element perm[i]).
std::vector<std::size_t> shuffle_order(std::size_t n, Rng& rng);

}  // namespace clutterscan
