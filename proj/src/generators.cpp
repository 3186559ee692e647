#include "clutterscan/generators.hpp"

#include <algorithm>
#include <numeric>

#include "clutterscan/error.hpp"

namespace clutterscan {

CertifiedFunction::CertifiedFunction(std::shared_ptr<const HolderFunction> f, const HolderParams& params,
                                     int grid_n)
    : f_(std::move(f)), params_(params) {
    if (!f_) throw Error(ErrorCode::InvalidArgument, "null function");
    if (f_->k() != params.k || f_->codim() != params.codim())
        throw Error(ErrorCode::DimensionMismatch, "function does not match the parameters");
    require_in_class(*f_, params_, grid_n);
}

namespace {

JetPoint draw_null_jet(const HolderParams& params, Rng& rng) {
    const auto cols = static_cast<Eigen::Index>(params.jet_size());
    JetPoint p{Vector(params.k), Matrix(params.codim(), cols)};
    for (int a = 0; a < params.k; ++a) p.x(a) = uniform01(rng);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < params.codim(); ++r)
            p.y(r, c) = c == 0 ? uniform01(rng) : uniform(rng, -params.beta, params.beta);
    return p;
}

OrientedPoint draw_null_oriented(int k, int d, Rng& rng) {
    Vector z(d);
    for (int a = 0; a < d; ++a) z(a) = uniform01(rng);
    return OrientedPoint{std::move(z), sample_uniform_subspace(rng, k, d)};
}

Vector draw_location(int k, Rng& rng) {
    Vector x(k);
    for (int a = 0; a < k; ++a) x(a) = uniform01(rng);
    return x;
}

template <class Point>
PlantedSample<Point> mix(std::vector<Point> null_part, std::vector<Point> planted_part, Rng& rng) {
    const std::size_t n0 = null_part.size();
    std::vector<Point> all = std::move(null_part);
    all.reserve(n0 + planted_part.size());
    for (auto& p : planted_part) all.push_back(std::move(p));
    const auto perm = shuffle_order(all.size(), rng);
    PlantedSample<Point> out;
    out.points.reserve(all.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        out.points.push_back(std::move(all[perm[i]]));
        if (perm[i] >= n0) out.planted.push_back(i);
    }
    return out;
}

}  // namespace

std::vector<std::size_t> shuffle_order(std::size_t n, Rng& rng) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = n; i > 1; --i) {
        const auto j = std::uniform_int_distribution<std::size_t>(0, i - 1)(rng);
        std::swap(perm[i - 1], perm[j]);
    }
    return perm;
}

std::vector<JetPoint> generate_null_jets(std::size_t n, const HolderParams& params, Rng& rng) {
    std::vector<JetPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(draw_null_jet(params, rng));
    return out;
}

PlantedSample<JetPoint> generate_alt_jets(std::size_t n, std::size_t n1, const CertifiedFunction& f, Rng& rng) {
    if (n1 > n) throw Error(ErrorCode::InvalidArgument, "n1 must not exceed n");
    const auto& params = f.params();
    auto null_part = generate_null_jets(n - n1, params, rng);
    const auto indices = params.indices();
    std::vector<JetPoint> planted;
    planted.reserve(n1);
    for (std::size_t i = 0; i < n1; ++i) {
        Vector x = draw_location(params.k, rng);
        Matrix y = evaluate_jet(f.function(), x, indices);
        planted.push_back(JetPoint{std::move(x), std::move(y)});
    }
    return mix(std::move(null_part), std::move(planted), rng);
}

PlantedSample<JetPoint> generate_alt_jets(std::size_t n, std::size_t n1, std::shared_ptr<const HolderFunction> f,
                                          const HolderParams& params, Rng& rng) {
    return generate_alt_jets(n, n1, CertifiedFunction(std::move(f), params), rng);
}

std::vector<OrientedPoint> generate_null_oriented(std::size_t n, int k, int d, Rng& rng) {
    if (k < 1 || k > d) throw Error(ErrorCode::InvalidArgument, "need 1 <= k <= d");
    std::vector<OrientedPoint> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(draw_null_oriented(k, d, rng));
    return out;
}

PlantedSample<OrientedPoint> generate_alt_oriented(std::size_t n, std::size_t n1, const GraphLift& f, Rng& rng) {
    if (n1 > n) throw Error(ErrorCode::InvalidArgument, "n1 must not exceed n");
    auto null_part = generate_null_oriented(n - n1, f.k(), f.d(), rng);
    std::vector<OrientedPoint> planted;
    planted.reserve(n1);
    for (std::size_t i = 0; i < n1; ++i) {
        const Vector x = draw_location(f.k(), rng);
        Vector z = f.value(x);
        for (Eigen::Index a = 0; a < z.size(); ++a)
            if (!(z(a) >= 0.0 && z(a) <= 1.0))
                throw Error(ErrorCode::NotInClass, "lift leaves the unit cube");
        planted.push_back(OrientedPoint{std::move(z), tangent_space(f, x)});
    }
    return mix(std::move(null_part), std::move(planted), rng);
}

ReducedJets oriented_to_jets(const std::vector<OrientedPoint>& samples) {
    ReducedJets out;
    out.jets.reserve(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& s = samples[i];
        const int d = s.w.ambient_dim();
        const int k = s.w.dim();
        if (k >= d) throw Error(ErrorCode::InvalidArgument, "oriented_to_jets needs k < d");
        if (s.z.size() != d) throw Error(ErrorCode::DimensionMismatch, "location has the wrong dimension");
        ChartMatrix chart;
        try {
            chart = graph_chart(s.w);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ChartSingular) throw;
            ++out.dropped;
            continue;
        }
        JetPoint jet{s.z.head(k), Matrix(d - k, k + 1)};
        jet.y.col(0) = s.z.tail(d - k);
        jet.y.rightCols(k) = chart.y;
        out.jets.push_back(std::move(jet));
        out.source.push_back(i);
    }
    return out;
}

}  // namespace clutterscan
