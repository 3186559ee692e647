#pragma once

// Points of the Grassmannian G(k,d) and the metric/chart machinery on it.

#include <Eigen/Dense>

#include <vector>

#include "clutterscan/rng.hpp"

namespace clutterscan {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Angle below which two subspaces are considered the same point of G(k,d).
inline constexpr double kSubspaceTolerance = 1e-8;

/// A k-dimensional linear subspace of R^d, held as an orthonormal d x k frame.
/// The frame is one representative; only its column span is meaningful.
class Subspace {
public:
    /// Adopts `frame` as is. Throws InvalidArgument unless frame^T frame = I
    /// to within 1e-10 entrywise; use orthonormalize() for raw spanning sets.
    explicit Subspace(Matrix frame);

    [[nodiscard]] int ambient_dim() const noexcept { return static_cast<int>(frame_.rows()); }
    [[nodiscard]] int dim() const noexcept { return static_cast<int>(frame_.cols()); }
    [[nodiscard]] const Matrix& frame() const noexcept { return frame_; }

private:
    struct Unchecked {};
    Subspace(Matrix frame, Unchecked) : frame_(std::move(frame)) {}
    friend Subspace orthonormalize(const Matrix& raw);

    Matrix frame_;
};

/// Orthonormal frame for the column space of `raw` (d x k, k <= d).
/// Throws RankDeficient when the smallest singular value is <= 1e-12.
Subspace orthonormalize(const Matrix& raw);

/// Largest canonical angle between h and kk, in [0, pi/2]. Requires
/// h.dim() <= kk.dim() and equal ambient dimensions (DimensionMismatch).
///
/// cos of the angle is the smallest singular value of h^T kk; its sine is the
/// spectral norm of the part of h orthogonal to kk. Both are computed and
/// combined with atan2 so the result keeps full precision at both ends.
double canonical_angle(const Subspace& h, const Subspace& kk);

/// True when the subspaces coincide up to kSubspaceTolerance.
bool same_subspace(const Subspace& a, const Subspace& b);

/// Draw from the orthogonally invariant probability measure on G(k,d).
Subspace sample_uniform_subspace(Rng& rng, int k, int d);

/// Haar-distributed orthogonal d x d matrix.
Matrix random_orthogonal(Rng& rng, int d);

/// q * h for an orthogonal q.
Subspace rotate(const Matrix& q, const Subspace& h);

/// Graph coordinates of a subspace over the first k axes: W = span [I_k; y].
/// Column j of y is the slope vector attached to the j-th weight-one index.
struct ChartMatrix {
    Matrix y;  // (d-k) x k
};

/// y = B A^{-1} with A the top k x k block of w's frame and B the rest.
/// Throws ChartSingular when A (after normalizing its columns) has
/// |det| <= 1e-12 or a column of norm <= 1e-12.
ChartMatrix graph_chart(const Subspace& w);

Subspace chart_to_subspace(const ChartMatrix& chart);

/// Permuted graph coordinates: h = span{ e_sigma(i) + sum_j xi(j,i) e_sigma(k+j) }.
struct SpanNormalForm {
    std::vector<int> sigma;  // permutation of {0..d-1}; first k entries are the pivot axes
    Matrix xi;               // (d-k) x k
    double bound = 0.0;      // max |xi|

    /// The d x k spanning matrix described by (sigma, xi).
    [[nodiscard]] Matrix spanning_matrix() const;
};

/// Gaussian elimination on the frame with complete pivoting. Each step takes
/// the remaining (axis, column) pair of largest magnitude; the chosen axes
/// become the pivot block and the rest are listed in increasing order. Ties go
/// to the lowest axis, then the lowest column.
SpanNormalForm span_normal_form(const Subspace& h);

/// An observation in [0,1]^d x G(k,d).
struct OrientedPoint {
    Vector z;
    Subspace w;
};

/// max(||z - z1||_inf, ang(w, w1)^2). Throws DimensionMismatch.
double discrepancy_psi(const OrientedPoint& a, const OrientedPoint& b);

}  // namespace clutterscan
