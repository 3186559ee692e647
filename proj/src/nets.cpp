#include "clutterscan/nets.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <utility>

#include "clutterscan/error.hpp"

namespace clutterscan {

namespace {

constexpr std::size_t kExhaustiveSeparationLimit = 2000;

void check_dims(int k, int d, double eps) {
    if (k < 1 || k > d) throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= d");
    if (!(eps > 0.0) || eps > 1.0) throw Error(ErrorCode::InvalidArgument, "need 0 < eps <= 1");
}

std::size_t checked_power(std::size_t base, int exponent, std::size_t cap) {
    std::size_t out = 1;
    for (int i = 0; i < exponent; ++i) {
        if (base != 0 && out > cap / base) return cap + 1;
        out *= base;
    }
    return out;
}

std::size_t choose(int n, int r) {
    std::size_t out = 1;
    for (int i = 1; i <= r; ++i) out = out * static_cast<std::size_t>(n - r + i) / static_cast<std::size_t>(i);
    return out;
}

int packing_levels(double eps) { return static_cast<int>(std::floor(1.0 / eps + 1e-9)) + 1; }

int covering_half_width(double eps, double c1) {
    return static_cast<int>(std::ceil((c1 + 1.0) / eps - 1e-9));
}

// Advance an odometer over {lo..hi}^size, last entry fastest.
bool next_tuple(std::vector<int>& n, int lo, int hi) {
    for (auto i = n.size(); i-- > 0;) {
        if (n[i] < hi) {
            ++n[i];
            return true;
        }
        n[i] = lo;
    }
    return false;
}

Subspace grid_member(int k, int d, double eps, const std::vector<int>& sigma,
                     const std::vector<int>& grid) {
    Matrix m = Matrix::Zero(d, k);
    for (int i = 0; i < k; ++i) {
        m(sigma[static_cast<std::size_t>(i)], i) = 1.0;
        for (int j = 0; j < d - k; ++j)
            m(sigma[static_cast<std::size_t>(k + j)], i) =
                eps * grid[static_cast<std::size_t>(i * (d - k) + j)];
    }
    return orthonormalize(m);
}

// Smallest singular value of a small matrix without a general SVD.
double sigma_min_small(const Matrix& m) {
    if (m.rows() == 1 || m.cols() == 1) return m.norm();
    if (m.rows() == 2 && m.cols() == 2) {
        const double a = m(0, 0), b = m(0, 1), c = m(1, 0), e = m(1, 1);
        const double s = a * a + b * b + c * c + e * e;
        const double det = a * e - b * c;
        const double disc = std::max(0.0, s * s - 4.0 * det * det);
        const double smax = std::sqrt((s + std::sqrt(disc)) / 2.0);
        return smax > 0.0 ? std::abs(det) / smax : 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    return svd.singularValues()(svd.singularValues().size() - 1);
}

}  // namespace

std::size_t packing_count(int k, int d, double eps) {
    check_dims(k, d, eps);
    return checked_power(static_cast<std::size_t>(packing_levels(eps)), (d - k) * k,
                         std::numeric_limits<std::size_t>::max() / 2);
}

std::size_t covering_count(int k, int d, double eps, double c1) {
    check_dims(k, d, eps);
    const auto side = static_cast<std::size_t>(2 * covering_half_width(eps, c1) - 1);
    const auto cap = std::numeric_limits<std::size_t>::max() / 2;
    const std::size_t grid = checked_power(side, (d - k) * k, cap);
    const std::size_t perms = choose(d, k);
    return grid > cap / perms ? cap + 1 : grid * perms;
}

SubspaceFamily packing_family(int k, int d, double eps, std::size_t cap) {
    check_dims(k, d, eps);
    const std::size_t count = checked_power(static_cast<std::size_t>(packing_levels(eps)), (d - k) * k, cap);
    if (count > cap)
        throw Error(ErrorCode::BudgetExceeded, "packing family exceeds the member cap");

    SubspaceFamily fam;
    fam.eps = eps;
    fam.kind = FamilyKind::Packing;
    fam.k = k;
    fam.d = d;
    fam.members.reserve(count);
    std::vector<int> sigma(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) sigma[static_cast<std::size_t>(i)] = i;
    std::vector<int> n(static_cast<std::size_t>((d - k) * k), 0);
    const int hi = packing_levels(eps) - 1;
    do {
        fam.members.push_back(FamilyMember{grid_member(k, d, eps, sigma, n), sigma, n});
    } while (next_tuple(n, 0, hi));

    double sep = std::numeric_limits<double>::infinity();
    const auto size = fam.members.size();
    if (size <= kExhaustiveSeparationLimit) {
        for (std::size_t i = 0; i < size; ++i)
            for (std::size_t j = i + 1; j < size; ++j)
                sep = std::min(sep, canonical_angle(fam.members[i].h, fam.members[j].h));
    } else {
        // Neighbours differ by one step in a single grid coordinate; with the
        // odometer order the stride of coordinate c is levels^(len-1-c).
        const auto len = n.size();
        const auto levels = static_cast<std::size_t>(hi + 1);
        std::size_t stride = 1;
        for (std::size_t c = len; c-- > 0;) {
            for (std::size_t i = 0; i < size; ++i) {
                if (fam.members[i].grid[c] == hi) continue;
                sep = std::min(sep, canonical_angle(fam.members[i].h, fam.members[i + stride].h));
            }
            stride *= levels;
        }
    }
    fam.separation = size > 1 ? sep : 0.0;
    return fam;
}

SubspaceFamily covering_family(int k, int d, double eps, double c1, std::size_t cap) {
    check_dims(k, d, eps);
    if (!(c1 > 0.0)) throw Error(ErrorCode::InvalidArgument, "c1 must be positive");
    if (covering_count(k, d, eps, c1) > cap)
        throw Error(ErrorCode::BudgetExceeded, "covering family exceeds the member cap");

    SubspaceFamily fam;
    fam.eps = eps;
    fam.kind = FamilyKind::Covering;
    fam.k = k;
    fam.d = d;
    const int m = covering_half_width(eps, c1);

    std::vector<bool> pick(static_cast<std::size_t>(d), false);
    std::fill(pick.begin(), pick.begin() + k, true);
    do {
        std::vector<int> sigma;
        for (int i = 0; i < d; ++i)
            if (pick[static_cast<std::size_t>(i)]) sigma.push_back(i);
        for (int i = 0; i < d; ++i)
            if (!pick[static_cast<std::size_t>(i)]) sigma.push_back(i);
        std::vector<int> n(static_cast<std::size_t>((d - k) * k), -(m - 1));
        do {
            fam.members.push_back(FamilyMember{grid_member(k, d, eps, sigma, n), sigma, n});
        } while (next_tuple(n, -(m - 1), m - 1));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return fam;
}

double estimate_span_bound(int k, int d) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, double> cache;
    {
        std::lock_guard<std::mutex> lock(mutex);
        auto it = cache.find({k, d});
        if (it != cache.end()) return it->second;
    }
    constexpr int kDraws = 10000;
    Rng rng(substream_seed(0xC1, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(d)));
    std::vector<double> bounds(kDraws);
    for (auto& b : bounds) b = span_normal_form(sample_uniform_subspace(rng, k, d)).bound;
    std::sort(bounds.begin(), bounds.end());
    const auto at = static_cast<std::size_t>(std::ceil(0.999 * kDraws)) - 1;
    const double c1 = 1.5 * std::max(bounds[at], 1e-3);
    std::lock_guard<std::mutex> lock(mutex);
    cache[{k, d}] = c1;
    return c1;
}

Nearest nearest_in_family(const Subspace& h, const SubspaceFamily& fam) {
    if (fam.members.empty()) throw Error(ErrorCode::EmptyFamily, "family has no members");
    if (h.ambient_dim() != fam.d || h.dim() != fam.k)
        throw Error(ErrorCode::DimensionMismatch, "probe does not match the family");
    // Rank members by the cosine of the angle, then settle near-ties with the
    // exact angle so that the result matches a plain argmin of canonical_angle.
    std::vector<double> cosines(fam.members.size());
    Matrix cross(h.dim(), h.dim());
    double best_cos = -1.0;
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        cross.noalias() = h.frame().transpose() * fam.members[i].h.frame();
        cosines[i] = std::min(1.0, sigma_min_small(cross));
        best_cos = std::max(best_cos, cosines[i]);
    }
    Nearest best{0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        if (cosines[i] < best_cos - 1e-9) continue;
        const double a = canonical_angle(h, fam.members[i].h);
        if (a < best.angle) best = Nearest{i, a};
    }
    return best;
}

double probe_covering_radius(SubspaceFamily& fam, std::size_t probes, Rng& rng) {
    double worst = 0.0;
    for (std::size_t p = 0; p < probes; ++p) {
        const Subspace probe = sample_uniform_subspace(rng, fam.k, fam.d);
        worst = std::max(worst, nearest_in_family(probe, fam).angle);
    }
    fam.radius = std::max(fam.radius, worst);
    return worst;
}

namespace {

template <class Hit>
MeasureEstimate sharded_fraction(std::size_t trials, Rng& rng, int shards, Hit&& hit) {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
    shards = std::max(1, shards);
    const std::uint64_t master = rng();
    std::vector<std::size_t> hits(static_cast<std::size_t>(shards), 0);
    std::vector<std::size_t> singular(static_cast<std::size_t>(shards), 0);
    parallel_for(static_cast<std::size_t>(shards), shards, [&](std::size_t s) {
        Rng local(shards == 1 ? master : substream_seed(master, s));
        const std::size_t begin = trials * s / static_cast<std::size_t>(shards);
        const std::size_t end = trials * (s + 1) / static_cast<std::size_t>(shards);
        for (std::size_t t = begin; t < end; ++t) hit(local, hits[s], singular[s]);
    });
    std::size_t total = 0;
    std::size_t bad = 0;
    for (std::size_t s = 0; s < hits.size(); ++s) {
        total += hits[s];
        bad += singular[s];
    }
    MeasureEstimate out;
    out.p_hat = static_cast<double>(total) / static_cast<double>(trials);
    out.stderr_ = std::sqrt(out.p_hat * (1.0 - out.p_hat) / static_cast<double>(trials));
    out.singular = bad;
    return out;
}

}  // namespace

MeasureEstimate ball_measure_estimate(const Subspace& h, double eps, std::size_t trials, Rng& rng,
                                      int shards) {
    const int k = h.dim();
    const int d = h.ambient_dim();
    return sharded_fraction(trials, rng, shards, [&](Rng& local, std::size_t& hits, std::size_t&) {
        if (canonical_angle(h, sample_uniform_subspace(local, k, d)) <= eps) ++hits;
    });
}

MeasureEstimate chart_cube_measure_estimate(int k, int d, double eps, std::size_t trials, Rng& rng,
                                            int shards) {
    if (k < 1 || k >= d) throw Error(ErrorCode::InvalidArgument, "need 1 <= k < d");
    return sharded_fraction(trials, rng, shards,
                            [&](Rng& local, std::size_t& hits, std::size_t& singular) {
                                const Subspace w = sample_uniform_subspace(local, k, d);
                                try {
                                    const ChartMatrix c = graph_chart(w);
                                    if (c.y.minCoeff() >= 0.0 && c.y.maxCoeff() <= eps) ++hits;
                                } catch (const Error&) {
                                    ++singular;
                                }
                            });
}

void write_family_csv(std::ostream& os, const SubspaceFamily& fam) {
    os << "kind,index,sigma,grid";
    for (int r = 0; r < fam.d; ++r)
        for (int c = 0; c < fam.k; ++c) os << ",f" << r << "_" << c;
    os << "\n";
    const auto join = [](const std::vector<int>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ' ';
            s += std::to_string(v[i]);
        }
        return s;
    };
    const auto old_precision = os.precision(17);
    for (std::size_t i = 0; i < fam.members.size(); ++i) {
        const auto& m = fam.members[i];
        os << (fam.kind == FamilyKind::Packing ? "packing" : "covering") << "," << i << ","
           << join(m.sigma) << "," << join(m.grid);
        for (int r = 0; r < fam.d; ++r)
            for (int c = 0; c < fam.k; ++c) os << "," << m.h.frame()(r, c);
        os << "\n";
    }
    os.precision(old_precision);
}

}  // namespace clutterscan
