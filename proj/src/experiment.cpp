#include "clutterscan/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ostream>

#include "clutterscan/cell_statistic.hpp"
#include "clutterscan/error.hpp"
#include "clutterscan/exponents.hpp"
#include "clutterscan/tube_dp.hpp"

namespace clutterscan {

std::string to_string(Problem p) { return p == Problem::Jets ? "jets" : "oriented"; }
std::string to_string(StatisticKind s) { return s == StatisticKind::Greedy ? "greedy" : "dp"; }
std::string to_string(Sampler s) {
    switch (s) {
        case Sampler::Auto: return "auto";
        case Sampler::Full: return "full";
        case Sampler::Thinned: return "thinned";
    }
    return "auto";
}

Problem parse_problem(const std::string& s) {
    if (s == "jets") return Problem::Jets;
    if (s == "oriented") return Problem::Oriented;
    throw Error(ErrorCode::InvalidArgument, "unknown problem '" + s + "' (jets | oriented)");
}

StatisticKind parse_statistic(const std::string& s) {
    if (s == "greedy") return StatisticKind::Greedy;
    if (s == "dp") return StatisticKind::TubeDp;
    throw Error(ErrorCode::InvalidArgument, "unknown statistic '" + s + "' (greedy | dp)");
}

Sampler parse_sampler(const std::string& s) {
    if (s == "auto") return Sampler::Auto;
    if (s == "full") return Sampler::Full;
    if (s == "thinned") return Sampler::Thinned;
    throw Error(ErrorCode::InvalidArgument, "unknown sampler '" + s + "' (auto | full | thinned)");
}

std::string format_number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

HolderParams ExperimentConfig::params() const { return HolderParams::make(k, d, alpha, beta, r0); }

Sampler ExperimentConfig::effective_sampler() const {
    if (sampler != Sampler::Auto) return sampler;
    return statistic == StatisticKind::Greedy ? Sampler::Thinned : Sampler::Full;
}

void ExperimentConfig::validate() const {
    (void)params();
    if (n1 > n) throw Error(ErrorCode::InvalidArgument, "n1 must not exceed n");
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be >= 1");
    if (problem == Problem::Oriented && (alpha != 2.0 || r0 != 1))
        throw Error(ErrorCode::InvalidArgument, "the oriented problem uses alpha = 2 and r0 = 1");
    if (statistic == StatisticKind::TubeDp && sampler == Sampler::Thinned)
        throw Error(ErrorCode::InvalidArgument, "the tube statistic needs the full sampler");
    if (workers < 1) throw Error(ErrorCode::InvalidArgument, "workers must be >= 1");
}

std::shared_ptr<const HolderFunction> default_plant(const HolderParams& params, double eps) {
    const Vector offset = Vector::Constant(params.codim(), 0.625 * eps);
    const Matrix slope = Matrix::Constant(params.codim(), params.k, 0.25 * eps / params.k);
    return std::make_shared<AffineFunction>(offset, slope);
}

std::optional<PlantModel> make_plant(const ExperimentConfig& cfg) {
    if (cfg.n1 == 0) return std::nullopt;
    const auto params = cfg.params();
    const double eps = statistic_eps(cfg.k, cfg.d, cfg.alpha, cfg.r0, static_cast<double>(cfg.n));
    const auto f = default_plant(params, eps);
    const int grid = cfg.k == 1 ? 101 : 21;
    PlantModel model;
    if (cfg.problem == Problem::Jets)
        model.jets = std::make_shared<CertifiedFunction>(f, params, grid);
    else
        model.lift = std::make_shared<GraphLift>(f, params, grid);
    return model;
}

namespace {

std::vector<JetPoint> jet_trial_samples(const ExperimentConfig& cfg, const HolderParams& params, double eps,
                                        const std::optional<PlantModel>& plant, Rng& rng) {
    if (cfg.effective_sampler() == Sampler::Full) {
        if (cfg.n1 == 0) return generate_null_jets(cfg.n, params, rng);
        return generate_alt_jets(cfg.n, cfg.n1, *plant->jets, rng).points;
    }
    auto samples = sample_null_box_jets(cfg.n - cfg.n1, params, eps, rng);
    const auto indices = params.indices();
    for (std::size_t i = 0; i < cfg.n1; ++i) {
        Vector x(params.k);
        for (int a = 0; a < params.k; ++a) x(a) = uniform01(rng);
        Matrix y = evaluate_jet(plant->jets->function(), x, indices);
        samples.push_back(JetPoint{std::move(x), std::move(y)});
    }
    return samples;
}

ReducedJets oriented_trial_samples(const ExperimentConfig& cfg, double eps, const std::optional<PlantModel>& plant,
                                   Rng& rng) {
    if (cfg.effective_sampler() == Sampler::Full) {
        if (cfg.n1 == 0) return oriented_to_jets(generate_null_oriented(cfg.n, cfg.k, cfg.d, rng));
        return oriented_to_jets(generate_alt_oriented(cfg.n, cfg.n1, *plant->lift, rng).points);
    }
    auto samples = sample_null_oriented_value_hits(cfg.n - cfg.n1, cfg.k, cfg.d, eps, rng);
    for (std::size_t i = 0; i < cfg.n1; ++i) {
        Vector x(cfg.k);
        for (int a = 0; a < cfg.k; ++a) x(a) = uniform01(rng);
        samples.push_back(OrientedPoint{plant->lift->value(x), tangent_space(*plant->lift, x)});
    }
    return oriented_to_jets(samples);
}

}  // namespace

RunRecord run_trial(const ExperimentConfig& cfg, std::size_t trial, const std::optional<PlantModel>& plant) {
    const auto start = std::chrono::steady_clock::now();
    const auto params = cfg.params();
    if (cfg.n1 > 0 && !plant) throw Error(ErrorCode::InvalidArgument, "planted trials need a plant model");

    RunRecord rec;
    rec.trial = trial;
    rec.config = cfg;
    rec.seed = substream_seed(cfg.seed, cfg.n, trial);
    Rng rng(rec.seed);
    rec.eps = statistic_eps(cfg.k, cfg.d, cfg.alpha, cfg.r0, static_cast<double>(cfg.n));

    std::vector<JetPoint> jets;
    if (cfg.problem == Problem::Jets) {
        jets = jet_trial_samples(cfg, params, rec.eps, plant, rng);
    } else {
        auto reduced = oriented_trial_samples(cfg, rec.eps, plant, rng);
        rec.dropped = reduced.dropped;
        jets = std::move(reduced.jets);
    }

    const auto sel = greedy_cell_statistic_at(jets, params, rec.eps, true);
    rec.cells_total = sel.cells_total;
    rec.selected = sel.count;
    rec.coarse = sel.coarse;
    rec.statistic = cfg.statistic == StatisticKind::Greedy ? static_cast<long long>(sel.count)
                                                           : tube_dp_statistic(jets, params, rec.eps);
    if (cfg.timing)
        rec.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<RunRecord> run_trials(const ExperimentConfig& cfg) {
    cfg.validate();
    const auto plant = make_plant(cfg);
    std::vector<RunRecord> records(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t t) { records[t] = run_trial(cfg, t, plant); });
    return records;
}

SweepResult sweep(const ExperimentConfig& base, const std::vector<std::size_t>& n_grid) {
    SweepResult out;
    for (std::size_t n : n_grid) {
        ExperimentConfig cfg = base;
        cfg.n = n;
        cfg.n1 = std::min(base.n1, n);
        auto records = run_trials(cfg);
        SweepPoint pt;
        pt.n = n;
        double sum = 0.0, sq = 0.0;
        for (const auto& r : records) {
            sum += static_cast<double>(r.statistic);
            sq += static_cast<double>(r.statistic) * static_cast<double>(r.statistic);
            if (r.coarse) ++pt.coarse_trials;
        }
        const double t = static_cast<double>(records.size());
        pt.mean = t > 0 ? sum / t : 0.0;
        const double var = t > 1 ? std::max(0.0, (sq - t * pt.mean * pt.mean) / (t - 1.0)) : 0.0;
        pt.stderr_ = t > 0 ? std::sqrt(var / t) : 0.0;
        out.points.push_back(pt);
        out.records.insert(out.records.end(), std::make_move_iterator(records.begin()),
                           std::make_move_iterator(records.end()));
    }
    return out;
}

FitResult fit_sweep(const SweepResult& result) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : result.points) pts.emplace_back(static_cast<double>(p.n), p.mean);
    return fit_scaling_exponent(pts);
}

void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records) {
    os << "trial,problem,k,d,alpha,beta,r0,n,n1,eps,statistic,cells_total,seed,millis\n";
    for (const auto& r : records) {
        const auto& c = r.config;
        os << r.trial << ',' << to_string(c.problem) << ',' << c.k << ',' << c.d << ',' << format_number(c.alpha)
           << ',' << format_number(c.beta) << ',' << c.r0 << ',' << c.n << ',' << c.n1 << ','
           << format_number(r.eps) << ',' << r.statistic << ',' << r.cells_total << ',' << r.seed << ','
           << format_number(r.millis) << '\n';
    }
}

void write_sweep_summary_csv(std::ostream& os, const SweepResult& result) {
    os << "n,mean,stderr,coarse_trials\n";
    for (const auto& p : result.points)
        os << p.n << ',' << format_number(p.mean) << ',' << format_number(p.stderr_) << ',' << p.coarse_trials
           << '\n';
}

namespace {

std::vector<long long> simulate_statistics(ExperimentConfig cfg, std::size_t trials, Rng& rng) {
    cfg.seed = rng();
    cfg.trials = trials;
    const auto records = run_trials(cfg);
    std::vector<long long> out;
    out.reserve(records.size());
    for (const auto& r : records) out.push_back(r.statistic);
    return out;
}

}  // namespace

Threshold null_quantile_threshold(const ExperimentConfig& cfg, double level, std::size_t trials, Rng& rng) {
    if (!(level > 0.0 && level < 1.0)) throw Error(ErrorCode::InvalidArgument, "need 0 < level < 1");
    if (trials < 100) throw Error(ErrorCode::InvalidArgument, "need at least 100 null trials");
    ExperimentConfig null_cfg = cfg;
    null_cfg.n1 = 0;
    auto stats = simulate_statistics(null_cfg, trials, rng);
    std::sort(stats.begin(), stats.end());
    const double t = static_cast<double>(stats.size());
    // smallest value v with P(S > v) <= level, then randomise on {S = v}
    for (std::size_t i = 0; i < stats.size();) {
        std::size_t j = i;
        while (j < stats.size() && stats[j] == stats[i]) ++j;
        const double above = static_cast<double>(stats.size() - j) / t;
        if (above <= level) {
            const double at = static_cast<double>(j - i) / t;
            return Threshold{static_cast<double>(stats[i]), std::clamp((level - above) / at, 0.0, 1.0)};
        }
        i = j;
    }
    return Threshold{static_cast<double>(stats.back()), 0.0};
}

PowerEstimate power_estimate(const ExperimentConfig& cfg, const Threshold& threshold, std::size_t trials, Rng& rng) {
    if (trials < 1) throw Error(ErrorCode::InvalidArgument, "need at least one trial");
    const auto stats = simulate_statistics(cfg, trials, rng);
    double reject = 0.0;
    for (long long s : stats) {
        const double v = static_cast<double>(s);
        if (v > threshold.value)
            reject += 1.0;
        else if (v == threshold.value)
            reject += threshold.tie_prob;
    }
    PowerEstimate out;
    const double t = static_cast<double>(stats.size());
    out.power = reject / t;
    out.stderr_ = std::sqrt(out.power * (1.0 - out.power) / t);
    return out;
}

}  // namespace clutterscan
