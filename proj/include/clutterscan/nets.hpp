#pragma once

// Explicit packings and coverings of G(k,d) built from graph-coordinate
// grids, plus Monte Carlo estimates of ball and chart-cube measures.

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "clutterscan/grassmann.hpp"
#include "clutterscan/rng.hpp"

namespace clutterscan {

enum class FamilyKind { Packing, Covering };

inline constexpr std::size_t kDefaultFamilyCap = 1'000'000;

struct FamilyMember {
    Subspace h;
    std::vector<int> sigma;  // axis permutation; first k entries are pivots
    std::vector<int> grid;   // integer tuple n, column-major over the (d-k) x k block
};

struct SubspaceFamily {
    double eps = 0.0;
    FamilyKind kind = FamilyKind::Packing;
    int k = 0;
    int d = 0;
    std::vector<FamilyMember> members;
    double separation = 0.0;  // packing: min pairwise angle recorded at build time
    double radius = 0.0;      // covering: largest nearest-member angle seen over probes
};

/// Members span{e_i + eps * sum_j n_ij e_{k+j}} for n in {0..floor(1/eps)}^{(d-k)k}.
/// The separation is exact for families of up to 2000 members; larger ones
/// only compare grid neighbours.
SubspaceFamily packing_family(int k, int d, double eps, std::size_t cap = kDefaultFamilyCap);

/// Members span{e_sigma(i) + eps * sum_j n_ij e_sigma(k+j)} for every choice
/// of k pivot axes and n in {-(m-1)..m-1}^{(d-k)k}, m = ceil((c1+1)/eps).
SubspaceFamily covering_family(int k, int d, double eps, double c1,
                               std::size_t cap = kDefaultFamilyCap);

/// Closed-form member counts of the two grids above.
std::size_t packing_count(int k, int d, double eps);
std::size_t covering_count(int k, int d, double eps, double c1);

/// Data-driven c1: 1.5 x the 99.9th percentile of span_normal_form(h).bound
/// over 10^4 uniform draws. Deterministic and cached per (k, d).
double estimate_span_bound(int k, int d);

struct Nearest {
    std::size_t index = 0;
    double angle = 0.0;
};

/// Linear scan for the member closest to h; ties go to the lowest index.
Nearest nearest_in_family(const Subspace& h, const SubspaceFamily& fam);

/// Largest nearest-member angle over `probes` uniform draws; also raises
/// fam.radius to at least that value.
double probe_covering_radius(SubspaceFamily& fam, std::size_t probes, Rng& rng);

struct MeasureEstimate {
    double p_hat = 0.0;
    double stderr_ = 0.0;
    std::size_t singular = 0;  // chart-singular draws (chart cube only)
};

/// Fraction of uniform subspaces within angle eps of h. With shards > 1 the
/// trials are split across that many seeded substreams; the estimate depends on
/// (rng state, shards) and not on how many threads run them.
MeasureEstimate ball_measure_estimate(const Subspace& h, double eps, std::size_t trials, Rng& rng,
                                      int shards = 1);

/// Fraction of uniform subspaces whose chart matrix lies in [0, eps]^{(d-k)k}.
MeasureEstimate chart_cube_measure_estimate(int k, int d, double eps, std::size_t trials, Rng& rng,
                                            int shards = 1);

/// One row per member: kind, index, sigma, grid, then the row-major frame.
void write_family_csv(std::ostream& os, const SubspaceFamily& fam);

}  // namespace clutterscan
