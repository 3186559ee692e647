#pragma once

// Piecewise bump interpolant through jets placed in even cells of the
// eps'-grid: h(x) = sum_m sum_s (eps')^{|s|} Y^s_m psi_s((x - X_m) / eps').

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "clutterscan/holder.hpp"

namespace clutterscan {

/// eps_s = eps^{1 - |s|/alpha}.
double box_side(const HolderParams& params, double eps, int weight);

/// True when y lies in [eps/2, eps]^{d-k} x prod_{s != 0} [0, eps_s]^{d-k}.
bool jet_in_box(const Matrix& y, const HolderParams& params, double eps);

class HolderInterpolant final : public HolderFunction {
public:
    /// Validates every node (OutOfDomain, DimensionMismatch, BoxViolation for a
    /// jet outside its box or an odd cell, CellCollision for a shared cell) and
    /// EpsTooLarge if eps' > 1/2.
    static HolderInterpolant build(std::vector<JetPoint> nodes, const HolderParams& params, double eps);

    /// Rebuild with a stored c2 (used when reading the text format).
    static HolderInterpolant restore(std::vector<JetPoint> nodes, const HolderParams& params, double eps,
                                     double eps_prime, double c2);

    [[nodiscard]] int k() const override { return params_.k; }
    [[nodiscard]] int codim() const override { return params_.codim(); }
    [[nodiscard]] Matrix jet(const Vector& x, const std::vector<MultiIndex>& orders) const override;

    [[nodiscard]] const HolderParams& params() const noexcept { return params_; }
    [[nodiscard]] double eps() const noexcept { return eps_; }
    [[nodiscard]] double eps_prime() const noexcept { return eps_prime_; }
    [[nodiscard]] double c2() const noexcept { return c2_; }
    [[nodiscard]] const std::vector<JetPoint>& nodes() const noexcept { return nodes_; }
    /// Grid cell of node i.
    [[nodiscard]] std::vector<int> cell_of(std::size_t i) const;

    /// Number of per-node pieces whose value is nonzero at x.
    [[nodiscard]] int active_pieces(const Vector& x) const;

private:
    HolderInterpolant(std::vector<JetPoint> nodes, const HolderParams& params, double eps, double eps_prime,
                      double c2);
    [[nodiscard]] std::int64_t cell_key(const std::vector<int>& cell) const;
    template <class Visit>
    void for_each_nearby(const Vector& x, Visit&& visit) const;

    HolderParams params_;
    double eps_;
    double eps_prime_;
    double c2_;
    int cells_per_axis_;
    std::vector<JetPoint> nodes_;
    std::vector<MultiIndex> indices_;
    std::unordered_map<std::int64_t, std::size_t> by_cell_;
};

inline HolderInterpolant build_interpolant(std::vector<JetPoint> nodes, const HolderParams& params, double eps) {
    return HolderInterpolant::build(std::move(nodes), params, eps);
}

/// Text format: a header of `key value` lines (k, d, alpha, beta, r0, eps,
/// eps_prime, c2, nodes) followed by one `node` line per node holding the cell
/// indices, x and the column-major jet. Doubles are written in shortest
/// round-trip form, so writing, reading and writing again gives the same bytes.
void write_interpolant(std::ostream& os, const HolderInterpolant& h);
HolderInterpolant read_interpolant(std::istream& is);

}  // namespace clutterscan
