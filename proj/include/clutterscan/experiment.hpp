#pragma once

// Seeded Monte Carlo trials, sweeps over n, and calibrated tests.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "clutterscan/generators.hpp"
#include "clutterscan/holder.hpp"
#include "clutterscan/moments.hpp"
#include "clutterscan/rng.hpp"

namespace clutterscan {

enum class Problem { Jets, Oriented };
enum class StatisticKind { Greedy, TubeDp };
/// Full materialises all n samples. Thinned (greedy only) draws just the null
/// samples that can pass the box test; the law of the count is the same.
/// Auto picks Thinned for the greedy statistic and Full otherwise.
enum class Sampler { Auto, Full, Thinned };

std::string to_string(Problem p);
std::string to_string(StatisticKind s);
std::string to_string(Sampler s);
Problem parse_problem(const std::string& s);
StatisticKind parse_statistic(const std::string& s);
Sampler parse_sampler(const std::string& s);

struct ExperimentConfig {
    Problem problem = Problem::Jets;
    int k = 1;
    int d = 2;
    double alpha = 2.0;
    double beta = 1.0;
    int r0 = 1;
    std::size_t n = 1000;
    std::size_t n1 = 0;
    std::uint64_t seed = 1;
    std::size_t trials = 50;
    StatisticKind statistic = StatisticKind::Greedy;
    Sampler sampler = Sampler::Auto;
    int workers = 1;
    bool timing = false;

    /// Throws InvalidArgument for inconsistent settings (n1 > n, an oriented
    /// problem with alpha != 2 or r0 != 1, the thinned sampler with the tube
    /// statistic) and the HolderParams errors.
    void validate() const;
    [[nodiscard]] HolderParams params() const;
    [[nodiscard]] Sampler effective_sampler() const;
};

struct RunRecord {
    std::size_t trial = 0;
    ExperimentConfig config;
    double eps = 0.0;
    long long statistic = 0;
    std::size_t cells_total = 0;
    std::size_t selected = 0;  // greedy count; equals statistic for the greedy test
    bool coarse = false;
    std::size_t dropped = 0;   // chart-singular oriented samples
    std::uint64_t seed = 0;
    double millis = 0.0;       // zero unless config.timing
};

/// The planted function used by the alternatives: the affine map
/// y = eps (0.625 + 0.25 mean(x)) in every component. Its jets lie in the
/// boxes R_m at scale eps.
std::shared_ptr<const HolderFunction> default_plant(const HolderParams& params, double eps);

/// Planted model shared by the trials of one configuration.
struct PlantModel {
    std::shared_ptr<const CertifiedFunction> jets;
    std::shared_ptr<const GraphLift> lift;
};
std::optional<PlantModel> make_plant(const ExperimentConfig& cfg);

/// One trial on the substream substream_seed(cfg.seed, cfg.n, trial).
RunRecord run_trial(const ExperimentConfig& cfg, std::size_t trial, const std::optional<PlantModel>& plant);

/// cfg.trials trials on cfg.workers threads; the records do not depend on the
/// number of workers.
std::vector<RunRecord> run_trials(const ExperimentConfig& cfg);

struct SweepPoint {
    std::size_t n = 0;
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t coarse_trials = 0;
};

struct SweepResult {
    std::vector<SweepPoint> points;
    std::vector<RunRecord> records;
};

/// run_trials at every n of the grid (n1 is clipped to n).
SweepResult sweep(const ExperimentConfig& base, const std::vector<std::size_t>& n_grid);

/// fit_scaling_exponent over the per-n means.
FitResult fit_sweep(const SweepResult& result);

void write_records_csv(std::ostream& os, const std::vector<RunRecord>& records);
void write_sweep_summary_csv(std::ostream& os, const SweepResult& result);

/// Randomised critical value: reject when S > value, and with probability
/// tie_prob when S == value, so that the null rejection rate equals the level
/// on the simulated null distribution.
struct Threshold {
    double value = 0.0;
    double tie_prob = 0.0;
};

/// Simulates `trials` null trials (n1 forced to 0) on a master seed drawn from
/// rng. Requires 0 < level < 1 and trials >= 100.
Threshold null_quantile_threshold(const ExperimentConfig& cfg, double level, std::size_t trials, Rng& rng);

struct PowerEstimate {
    double power = 0.0;
    double stderr_ = 0.0;
};

/// Mean rejection probability over `trials` trials of cfg (its n1 planted
/// points), on a master seed drawn from rng.
PowerEstimate power_estimate(const ExperimentConfig& cfg, const Threshold& threshold, std::size_t trials, Rng& rng);

/// Shortest round-trip decimal form.
std::string format_number(double v);

}  // namespace clutterscan
