#include "clutterscan/grassmann.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "clutterscan/error.hpp"

namespace clutterscan {

namespace {

constexpr double kRankTolerance = 1e-12;
constexpr double kOrthonormalTolerance = 1e-10;

double smallest_singular_value(const Matrix& m) {
    if (m.rows() == 1 || m.cols() == 1) return m.norm();
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

double largest_singular_value(const Matrix& m) {
    if (m.rows() == 1 || m.cols() == 1) return m.norm();
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(0);
}

}  // namespace

Subspace::Subspace(Matrix frame) : frame_(std::move(frame)) {
    if (frame_.cols() < 1 || frame_.rows() < frame_.cols())
        throw Error(ErrorCode::InvalidArgument, "frame must be d x k with 1 <= k <= d");
    const Matrix gram = frame_.transpose() * frame_;
    const Matrix id = Matrix::Identity(frame_.cols(), frame_.cols());
    if ((gram - id).cwiseAbs().maxCoeff() > kOrthonormalTolerance)
        throw Error(ErrorCode::InvalidArgument, "frame columns are not orthonormal");
}

Subspace orthonormalize(const Matrix& raw) {
    const auto d = raw.rows();
    const auto k = raw.cols();
    if (k < 1 || d < k)
        throw Error(ErrorCode::InvalidArgument,
                    "raw matrix must be d x k with 1 <= k <= d, got " + std::to_string(d) + "x" +
                        std::to_string(k));
    if (k == 1) {
        const double norm = raw.norm();
        if (!(norm > kRankTolerance)) throw Error(ErrorCode::RankDeficient, "zero column");
        return Subspace(raw / norm, Subspace::Unchecked{});
    }
    Eigen::HouseholderQR<Matrix> qr(raw);
    const Matrix r = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
    if (!(smallest_singular_value(r) > kRankTolerance))
        throw Error(ErrorCode::RankDeficient, "columns are numerically dependent");
    Matrix q = qr.householderQ() * Matrix::Identity(d, k);
    return Subspace(std::move(q), Subspace::Unchecked{});
}

double canonical_angle(const Subspace& h, const Subspace& kk) {
    if (h.ambient_dim() != kk.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "ambient dimensions differ");
    if (h.dim() > kk.dim())
        throw Error(ErrorCode::DimensionMismatch, "first subspace has larger dimension");
    // equal dimensions: fix the argument order so the result is exactly symmetric
    const bool swap = h.dim() == kk.dim() &&
                      std::lexicographical_compare(kk.frame().data(), kk.frame().data() + kk.frame().size(),
                                                   h.frame().data(), h.frame().data() + h.frame().size());
    const Matrix& hf = swap ? kk.frame() : h.frame();
    const Matrix& kf = swap ? h.frame() : kk.frame();
    const Matrix cross = hf.transpose() * kf;
    const Matrix residual = hf - kf * cross.transpose();
    const double c = std::clamp(smallest_singular_value(cross), 0.0, 1.0);
    const double s = std::clamp(largest_singular_value(residual), 0.0, 1.0);
    return std::atan2(s, c);
}

bool same_subspace(const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
    return canonical_angle(a, b) < kSubspaceTolerance;
}

Subspace sample_uniform_subspace(Rng& rng, int k, int d) {
    if (k < 1 || k > d)
        throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= d");
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(d, k);
    for (;;) {
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < d; ++i) g(i, j) = normal(rng);
        try {
            return orthonormalize(g);
        } catch (const Error&) {
            // probability-zero event; redraw
        }
    }
}

Matrix random_orthogonal(Rng& rng, int d) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(d, d);
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i) g(i, j) = normal(rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    for (int i = 0; i < d; ++i)
        if (qr.matrixQR()(i, i) < 0) q.col(i) = -q.col(i);
    return q;
}

Subspace rotate(const Matrix& q, const Subspace& h) {
    if (q.rows() != h.ambient_dim() || q.cols() != h.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "rotation has wrong size");
    return orthonormalize(q * h.frame());
}

ChartMatrix graph_chart(const Subspace& w) {
    const int d = w.ambient_dim();
    const int k = w.dim();
    const Matrix a = w.frame().topRows(k);
    if (k == d) return ChartMatrix{Matrix(0, k)};
    Matrix scaled = a;
    for (int j = 0; j < k; ++j) {
        const double norm = a.col(j).norm();
        if (!(norm > kRankTolerance))
            throw Error(ErrorCode::ChartSingular, "top block has a null column");
        scaled.col(j) /= norm;
    }
    if (!(std::abs(scaled.determinant()) > kRankTolerance))
        throw Error(ErrorCode::ChartSingular, "top block is singular");
    const Matrix b = w.frame().bottomRows(d - k);
    // y A = B
    Matrix y = a.transpose().partialPivLu().solve(b.transpose()).transpose();
    return ChartMatrix{std::move(y)};
}

Subspace chart_to_subspace(const ChartMatrix& chart) {
    const auto k = chart.y.cols();
    const auto codim = chart.y.rows();
    Matrix stacked(k + codim, k);
    stacked.topRows(k).setIdentity();
    stacked.bottomRows(codim) = chart.y;
    return orthonormalize(stacked);
}

Matrix SpanNormalForm::spanning_matrix() const {
    const auto d = static_cast<Eigen::Index>(sigma.size());
    const auto k = xi.cols();
    Matrix m = Matrix::Zero(d, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        m(sigma[static_cast<std::size_t>(i)], i) = 1.0;
        for (Eigen::Index j = 0; j < d - k; ++j)
            m(sigma[static_cast<std::size_t>(k + j)], i) = xi(j, i);
    }
    return m;
}

SpanNormalForm span_normal_form(const Subspace& h) {
    const int d = h.ambient_dim();
    const int k = h.dim();
    Matrix work = h.frame();
    std::vector<bool> row_used(static_cast<std::size_t>(d), false);
    std::vector<bool> col_used(static_cast<std::size_t>(k), false);
    std::vector<int> pivot_row(static_cast<std::size_t>(k));
    std::vector<int> pivot_col(static_cast<std::size_t>(k));

    for (int step = 0; step < k; ++step) {
        int best_r = -1;
        int best_c = -1;
        double best = -1.0;
        for (int r = 0; r < d; ++r) {
            if (row_used[static_cast<std::size_t>(r)]) continue;
            for (int c = 0; c < k; ++c) {
                if (col_used[static_cast<std::size_t>(c)]) continue;
                const double v = std::abs(work(r, c));
                if (v > best) {
                    best = v;
                    best_r = r;
                    best_c = c;
                }
            }
        }
        row_used[static_cast<std::size_t>(best_r)] = true;
        col_used[static_cast<std::size_t>(best_c)] = true;
        pivot_row[static_cast<std::size_t>(step)] = best_r;
        pivot_col[static_cast<std::size_t>(step)] = best_c;

        work.col(best_c) /= work(best_r, best_c);
        for (int c = 0; c < k; ++c) {
            if (c == best_c) continue;
            work.col(c) -= work(best_r, c) * work.col(best_c);
        }
    }

    SpanNormalForm out;
    out.sigma = pivot_row;
    for (int r = 0; r < d; ++r)
        if (!row_used[static_cast<std::size_t>(r)]) out.sigma.push_back(r);
    out.xi = Matrix(d - k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < d - k; ++j)
            out.xi(j, i) = work(out.sigma[static_cast<std::size_t>(k + j)],
                                pivot_col[static_cast<std::size_t>(i)]);
    out.bound = out.xi.size() == 0 ? 0.0 : out.xi.cwiseAbs().maxCoeff();
    return out;
}

double discrepancy_psi(const OrientedPoint& a, const OrientedPoint& b) {
    if (a.z.size() != b.z.size() || a.w.ambient_dim() != b.w.ambient_dim() ||
        a.w.dim() != b.w.dim() || a.z.size() != a.w.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "oriented points have different shapes");
    const double location = (a.z - b.z).cwiseAbs().maxCoeff();
    const double angle = canonical_angle(a.w, b.w);
    return std::max(location, angle * angle);
}

}  // namespace clutterscan
