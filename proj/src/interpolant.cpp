#include "clutterscan/interpolant.hpp"

#include <algorithm>
#include <cmath>

#include "clutterscan/bump.hpp"
#include "clutterscan/error.hpp"

namespace clutterscan {

double box_side(const HolderParams& params, double eps, int weight) {
    return std::pow(eps, 1.0 - weight / params.alpha);
}

bool jet_in_box(const Matrix& y, const HolderParams& params, double eps) {
    const auto indices = params.indices();
    if (y.rows() != params.codim() || y.cols() != static_cast<Eigen::Index>(indices.size())) return false;
    for (Eigen::Index c = 0; c < y.rows(); ++c)
        if (!(y(c, 0) >= eps / 2 && y(c, 0) <= eps)) return false;
    for (std::size_t j = 1; j < indices.size(); ++j) {
        const double side = box_side(params, eps, indices[j].weight());
        for (Eigen::Index c = 0; c < y.rows(); ++c) {
            const double v = y(c, static_cast<Eigen::Index>(j));
            if (!(v >= 0.0 && v <= side)) return false;
        }
    }
    return true;
}

HolderInterpolant::HolderInterpolant(std::vector<JetPoint> nodes, const HolderParams& params, double eps,
                                     double eps_prime, double c2)
    : params_(params),
      eps_(eps),
      eps_prime_(eps_prime),
      c2_(c2),
      cells_per_axis_(static_cast<int>(std::floor(1.0 / eps_prime)) + 1),
      nodes_(std::move(nodes)),
      indices_(params.indices()) {
    if (!(eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "eps must be positive");
    if (eps_prime > 0.5) throw Error(ErrorCode::EpsTooLarge, "eps' = " + std::to_string(eps_prime) + " > 1/2");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        const auto& node = nodes_[i];
        if (node.x.size() != params_.k || node.y.rows() != params_.codim() ||
            node.y.cols() != static_cast<Eigen::Index>(indices_.size()))
            throw Error(ErrorCode::DimensionMismatch, "node " + std::to_string(i) + " has the wrong shape");
        for (Eigen::Index a = 0; a < node.x.size(); ++a)
            if (!(node.x(a) >= 0.0 && node.x(a) <= 1.0))
                throw Error(ErrorCode::OutOfDomain, "node " + std::to_string(i) + " lies outside [0,1]^k");
        const auto cell = cell_of(i);
        for (int m : cell)
            if (m % 2 != 0)
                throw Error(ErrorCode::BoxViolation, "node " + std::to_string(i) + " lies in an odd cell");
        if (!jet_in_box(node.y, params_, eps_))
            throw Error(ErrorCode::BoxViolation, "node " + std::to_string(i) + " jet leaves its box");
        if (!by_cell_.emplace(cell_key(cell), i).second)
            throw Error(ErrorCode::CellCollision, "node " + std::to_string(i) + " shares a cell");
    }
}

HolderInterpolant HolderInterpolant::build(std::vector<JetPoint> nodes, const HolderParams& params, double eps) {
    const auto cc = construction_constants(params);
    return HolderInterpolant(std::move(nodes), params, eps, std::pow(cc.c2 * eps, 1.0 / params.alpha), cc.c2);
}

HolderInterpolant HolderInterpolant::restore(std::vector<JetPoint> nodes, const HolderParams& params, double eps,
                                             double eps_prime, double c2) {
    return HolderInterpolant(std::move(nodes), params, eps, eps_prime, c2);
}

std::vector<int> HolderInterpolant::cell_of(std::size_t i) const {
    std::vector<int> cell(static_cast<std::size_t>(params_.k));
    for (int a = 0; a < params_.k; ++a) {
        const int m = static_cast<int>(std::floor(nodes_[i].x(a) / eps_prime_));
        cell[static_cast<std::size_t>(a)] = std::min(m, cells_per_axis_ - 1);
    }
    return cell;
}

std::int64_t HolderInterpolant::cell_key(const std::vector<int>& cell) const {
    std::int64_t key = 0;
    for (int m : cell) key = key * cells_per_axis_ + m;
    return key;
}

template <class Visit>
void HolderInterpolant::for_each_nearby(const Vector& x, Visit&& visit) const {
    if (nodes_.empty()) return;
    const int k = params_.k;
    std::vector<int> base(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a) base[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(x(a) / eps_prime_));
    // pieces reach half a cell beyond their own cell
    std::vector<int> off(static_cast<std::size_t>(k), -1);
    std::vector<int> cell(static_cast<std::size_t>(k));
    for (;;) {
        bool valid = true;
        for (int a = 0; a < k; ++a) {
            const int m = base[static_cast<std::size_t>(a)] + off[static_cast<std::size_t>(a)];
            if (m < 0 || m >= cells_per_axis_) valid = false;
            cell[static_cast<std::size_t>(a)] = m;
        }
        if (valid) {
            const auto it = by_cell_.find(cell_key(cell));
            if (it != by_cell_.end()) visit(it->second);
        }
        int a = k - 1;
        while (a >= 0 && off[static_cast<std::size_t>(a)] == 1) off[static_cast<std::size_t>(a--)] = -1;
        if (a < 0) break;
        ++off[static_cast<std::size_t>(a)];
    }
}

Matrix HolderInterpolant::jet(const Vector& x, const std::vector<MultiIndex>& orders) const {
    Matrix out = Matrix::Zero(codim(), static_cast<Eigen::Index>(orders.size()));
    int top = 0;
    for (const auto& t : orders) top = std::max(top, t.weight());
    const auto width = static_cast<std::size_t>(top + 1);
    std::vector<std::vector<double>> tables(static_cast<std::size_t>(params_.k));

    for_each_nearby(x, [&](std::size_t i) {
        const JetPoint& node = nodes_[i];
        bool inside = true;
        for (int a = 0; a < params_.k; ++a) {
            const double u = (x(a) - node.x(a)) / eps_prime_;
            if (std::abs(u) >= 0.5) inside = false;
            tables[static_cast<std::size_t>(a)] = phi_table(u, params_.r0, top);
        }
        if (!inside) return;
        for (std::size_t j = 0; j < orders.size(); ++j) {
            const auto& t = orders[j];
            const double scale_t = std::pow(eps_prime_, -t.weight());
            for (std::size_t si = 0; si < indices_.size(); ++si) {
                const auto& s = indices_[si];
                double psi = 1.0;
                for (int a = 0; a < params_.k && psi != 0.0; ++a) {
                    const auto m = static_cast<std::size_t>(s.entries[static_cast<std::size_t>(a)]);
                    const auto n = static_cast<std::size_t>(t.entries[static_cast<std::size_t>(a)]);
                    psi *= tables[static_cast<std::size_t>(a)][m * width + n];
                }
                if (psi == 0.0) continue;
                const double coef = std::pow(eps_prime_, s.weight()) * scale_t * psi;
                out.col(static_cast<Eigen::Index>(j)) += coef * node.y.col(static_cast<Eigen::Index>(si));
            }
        }
    });
    return out;
}

int HolderInterpolant::active_pieces(const Vector& x) const {
    int count = 0;
    const std::vector<MultiIndex> value_only = multi_indices_of_weight(params_.k, 0);
    for_each_nearby(x, [&](std::size_t i) {
        const JetPoint& node = nodes_[i];
        double psi = 1.0;
        for (int a = 0; a < params_.k; ++a) psi *= zeta_derivatives((x(a) - node.x(a)) / eps_prime_, 0)[0];
        if (psi != 0.0 && node.y.col(0).cwiseAbs().maxCoeff() > 0.0) ++count;
    });
    return count;
}

}  // namespace clutterscan
