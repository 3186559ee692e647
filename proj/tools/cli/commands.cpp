#include "cli/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "clutterscan/error.hpp"
#include "clutterscan/experiment.hpp"
#include "clutterscan/exponents.hpp"
#include "clutterscan/generators.hpp"
#include "clutterscan/holder.hpp"
#include "clutterscan/moments.hpp"
#include "clutterscan/nets.hpp"

namespace clutterscan::cli {

namespace fs = std::filesystem;

namespace {

std::string num(double v) { return format_number(v); }

fs::path prepare_out_dir(const Settings& s) {
    const fs::path dir(s.get("out-dir"));
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorCode::InvalidArgument, "cannot create " + dir.string() + ": " + ec.message());
    std::ofstream manifest(dir / "manifest.txt");
    s.write_manifest(manifest);
    return dir;
}

// Files are assembled in memory and written once, after all workers finish.
void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
    out << content;
}

int to_int(const Settings& s, const std::string& key) { return static_cast<int>(s.get_int(key)); }

std::size_t to_size(const Settings& s, const std::string& key) {
    const long long v = s.get_int(key);
    if (v < 0) throw Error(ErrorCode::InvalidArgument, "'" + key + "' must be nonnegative");
    return static_cast<std::size_t>(v);
}

ExperimentConfig experiment_config(const Settings& s) {
    ExperimentConfig cfg;
    cfg.problem = parse_problem(s.get("problem"));
    cfg.k = to_int(s, "k");
    cfg.d = to_int(s, "d");
    cfg.alpha = s.get_double("alpha");
    cfg.beta = s.get_double("beta");
    cfg.r0 = to_int(s, "r0");
    cfg.n = to_size(s, "n");
    cfg.n1 = to_size(s, "n1");
    cfg.seed = s.get_u64("seed");
    cfg.trials = to_size(s, "trials");
    cfg.statistic = parse_statistic(s.get("statistic"));
    cfg.sampler = parse_sampler(s.get("sampler"));
    cfg.workers = std::max(1, to_int(s, "workers"));
    cfg.timing = s.get_bool("timing");
    return cfg;
}

double predicted_exponent(const ExperimentConfig& cfg) {
    if (cfg.problem == Problem::Oriented) return exponent_rho_dir(cfg.k, cfg.d);
    return exponent_rho(cfg.k, cfg.d, cfg.alpha, cfg.r0).rho;
}

void render_stimulus(const Settings& s) {
    const int k = to_int(s, "k");
    const int d = to_int(s, "d");
    if (d != 2 || k != 1)
        throw Error(ErrorCode::UnsupportedDims, "render-stimulus draws segments in the plane (k = 1, d = 2)");
    const std::size_t n = to_size(s, "n");
    const std::size_t n1 = to_size(s, "n1");
    const double length = s.get_double("length");
    const double beta = s.get_double("beta");
    const std::uint64_t seed = s.get_u64("seed");
    if (n1 > n) throw Error(ErrorCode::InvalidArgument, "n1 exceeds n");
    if (!(length > 0.0)) throw Error(ErrorCode::InvalidArgument, "length must be positive");
    const fs::path dir = prepare_out_dir(s);

    Rng rng(substream_seed(seed, 2));
    PlantedSample<OrientedPoint> sample;
    if (n1 == 0) {
        sample.points = generate_null_oriented(n, 1, 2, rng);
    } else {
        const auto params = HolderParams::make(1, 2, 2.0, beta, 1);
        Rng plant_rng(substream_seed(seed, 1));
        auto g = std::make_shared<SinusoidFunction>(SinusoidFunction::random(beta, plant_rng));
        const GraphLift lift(g, params);
        sample = generate_alt_oriented(n, n1, lift, rng);
    }

    std::ostringstream svg;
    std::ostringstream csv;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n"
        << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\"/>\n";
    csv << "index,planted,x,y,dx,dy\n";
    std::size_t next_planted = 0;
    for (std::size_t i = 0; i < sample.points.size(); ++i) {
        const auto& p = sample.points[i];
        Vector u = p.w.frame().col(0);
        if (u(0) < 0.0) u = -u;
        const double half = 0.5 * length;
        // y axis points down in SVG
        const auto sx = [](double x) { return 1000.0 * x; };
        const auto sy = [](double y) { return 1000.0 * (1.0 - y); };
        svg << "<line x1=\"" << num(sx(p.z(0) - half * u(0))) << "\" y1=\"" << num(sy(p.z(1) - half * u(1)))
            << "\" x2=\"" << num(sx(p.z(0) + half * u(0))) << "\" y2=\"" << num(sy(p.z(1) + half * u(1)))
            << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
        const bool planted = next_planted < sample.planted.size() && sample.planted[next_planted] == i;
        if (planted) ++next_planted;
        csv << i << "," << (planted ? 1 : 0) << "," << num(p.z(0)) << "," << num(p.z(1)) << "," << num(u(0))
            << "," << num(u(1)) << "\n";
    }
    svg << "</svg>\n";
    write_file(dir / "stimulus.svg", svg.str());
    write_file(dir / "stimulus.csv", csv.str());
    std::cout << "wrote " << sample.points.size() << " segments (" << n1 << " planted) to "
              << (dir / "stimulus.svg").string() << "\n";
}

void exponent_sweep(const Settings& s) {
    ExperimentConfig cfg = experiment_config(s);
    const auto grid = s.get_size_list("n-grid");
    cfg.n = grid.front();
    cfg.validate();
    const fs::path dir = prepare_out_dir(s);

    const SweepResult result = sweep(cfg, grid);
    std::ostringstream records;
    write_records_csv(records, result.records);
    write_file(dir / "records.csv", records.str());
    std::ostringstream summary;
    write_sweep_summary_csv(summary, result);
    write_file(dir / "summary.csv", summary.str());

    const FitResult fit = fit_sweep(result);
    const double target = predicted_exponent(cfg);
    std::ostringstream report;
    report << "slope,stderr,intercept,predicted,difference\n"
           << num(fit.slope) << "," << num(fit.stderr_) << "," << num(fit.intercept) << "," << num(target) << ","
           << num(fit.slope - target) << "\n";
    write_file(dir / "fit.csv", report.str());

    std::size_t coarse = 0;
    for (const auto& p : result.points) coarse += p.coarse_trials;
    std::cout << "slope " << num(fit.slope) << " +- " << num(fit.stderr_) << " (predicted " << num(target)
              << ")\n";
    if (coarse > 0)
        std::cout << coarse << " trials fell back to the single-cell count; see summary.csv\n";
}

void volume_scan(const Settings& s) {
    const int k = to_int(s, "k");
    const int d = to_int(s, "d");
    if (k < 1 || k >= d) throw Error(ErrorCode::InvalidArgument, "volume-scan needs 1 <= k < d");
    const auto eps_grid = s.get_double_list("eps-grid");
    const std::size_t samples = to_size(s, "samples");
    const std::uint64_t seed = s.get_u64("seed");
    for (double e : eps_grid)
        if (!(e > 0.0 && e <= 1.0)) throw Error(ErrorCode::InvalidArgument, "eps values must lie in (0, 1]");
    const fs::path dir = prepare_out_dir(s);

    const Subspace centre(Matrix::Identity(d, k));
    std::vector<std::pair<double, double>> ball_points;
    std::vector<std::pair<double, double>> cube_points;
    std::ostringstream csv;
    csv << "kind,k,d,eps,samples,p_hat,stderr,singular\n";
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        const double eps = eps_grid[i];
        Rng ball_rng(substream_seed(seed, i, 0));
        const auto ball = ball_measure_estimate(centre, eps, samples, ball_rng);
        Rng cube_rng(substream_seed(seed, i, 1));
        const auto cube = chart_cube_measure_estimate(k, d, eps, samples, cube_rng);
        csv << "ball," << k << "," << d << "," << num(eps) << "," << samples << "," << num(ball.p_hat) << ","
            << num(ball.stderr_) << ",0\n";
        csv << "chart_cube," << k << "," << d << "," << num(eps) << "," << samples << "," << num(cube.p_hat)
            << "," << num(cube.stderr_) << "," << cube.singular << "\n";
        ball_points.emplace_back(eps, ball.p_hat);
        cube_points.emplace_back(eps, cube.p_hat);
    }
    write_file(dir / "volume.csv", csv.str());

    const double expected = static_cast<double>((d - k) * k);
    const FitResult ball_fit = fit_scaling_exponent(ball_points);
    const FitResult cube_fit = fit_scaling_exponent(cube_points);
    std::ostringstream fit;
    fit << "kind,slope,stderr,intercept,expected\n"
        << "ball," << num(ball_fit.slope) << "," << num(ball_fit.stderr_) << "," << num(ball_fit.intercept) << ","
        << num(expected) << "\n"
        << "chart_cube," << num(cube_fit.slope) << "," << num(cube_fit.stderr_) << "," << num(cube_fit.intercept)
        << "," << num(expected) << "\n";
    write_file(dir / "volume_fit.csv", fit.str());
    std::cout << "ball slope " << num(ball_fit.slope) << ", chart cube slope " << num(cube_fit.slope)
              << " (expected " << num(expected) << ")\n";
}

void nets_demo(const Settings& s) {
    const int k = to_int(s, "k");
    const int d = to_int(s, "d");
    if (k < 1 || k >= d) throw Error(ErrorCode::InvalidArgument, "nets-demo needs 1 <= k < d");
    const auto eps_grid = s.get_double_list("eps-grid");
    const std::size_t probes = to_size(s, "probes");
    const std::uint64_t seed = s.get_u64("seed");
    const fs::path dir = prepare_out_dir(s);
    const double c1 = estimate_span_bound(k, d);

    std::ostringstream csv;
    csv << "kind,k,d,eps,members,separation,separation_over_eps,radius,radius_over_eps,c1\n";
    for (std::size_t i = 0; i < eps_grid.size(); ++i) {
        const double eps = eps_grid[i];
        const SubspaceFamily packing = packing_family(k, d, eps);
        SubspaceFamily covering = covering_family(k, d, eps, c1);
        Rng rng(substream_seed(seed, i));
        probe_covering_radius(covering, probes, rng);

        csv << "packing," << k << "," << d << "," << num(eps) << "," << packing.members.size() << ","
            << num(packing.separation) << "," << num(packing.separation / eps) << ",,," << num(c1) << "\n";
        csv << "covering," << k << "," << d << "," << num(eps) << "," << covering.members.size() << ",,,"
            << num(covering.radius) << "," << num(covering.radius / eps) << "," << num(c1) << "\n";

        for (const SubspaceFamily* fam : {&packing, static_cast<const SubspaceFamily*>(&covering)}) {
            std::ostringstream members;
            write_family_csv(members, *fam);
            const std::string name =
                std::string(fam->kind == FamilyKind::Packing ? "packing" : "covering") + "_" + std::to_string(i) + ".csv";
            write_file(dir / name, members.str());
        }
        std::cout << "eps " << num(eps) << ": packing " << packing.members.size() << " (min angle/eps "
                  << num(packing.separation / eps) << "), covering " << covering.members.size()
                  << " (radius/eps " << num(covering.radius / eps) << ")\n";
    }
    write_file(dir / "nets.csv", csv.str());
}

void power(const Settings& s) {
    ExperimentConfig cfg = experiment_config(s);
    cfg.validate();
    const double level = s.get_double("level");
    const std::size_t null_trials = to_size(s, "null-trials");
    const fs::path dir = prepare_out_dir(s);

    Rng null_rng(substream_seed(cfg.seed, 1));
    const Threshold threshold = null_quantile_threshold(cfg, level, null_trials, null_rng);
    Rng alt_rng(substream_seed(cfg.seed, 2));
    const PowerEstimate est = power_estimate(cfg, threshold, cfg.trials, alt_rng);

    std::ostringstream csv;
    csv << "problem,k,d,alpha,beta,r0,n,n1,level,null_trials,trials,threshold,tie_prob,power,stderr\n"
        << to_string(cfg.problem) << "," << cfg.k << "," << cfg.d << "," << num(cfg.alpha) << ","
        << num(cfg.beta) << "," << cfg.r0 << "," << cfg.n << "," << cfg.n1 << "," << num(level) << ","
        << null_trials << "," << cfg.trials << "," << num(threshold.value) << "," << num(threshold.tie_prob)
        << "," << num(est.power) << "," << num(est.stderr_) << "\n";
    write_file(dir / "power.csv", csv.str());
    std::cout << "threshold " << num(threshold.value) << " (tie " << num(threshold.tie_prob) << "), power "
              << num(est.power) << " +- " << num(est.stderr_) << "\n";
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = {"render-stimulus", "exponent-sweep", "volume-scan",
                                                   "nets-demo", "power"};
    return names;
}

void run_command(const Settings& settings) {
    const std::string& c = settings.command();
    if (c == "render-stimulus") return render_stimulus(settings);
    if (c == "exponent-sweep") return exponent_sweep(settings);
    if (c == "volume-scan") return volume_scan(settings);
    if (c == "nets-demo") return nets_demo(settings);
    if (c == "power") return power(settings);
    throw Error(ErrorCode::ParseError, "unknown command '" + c + "'");
}

int exit_code_for(const std::exception& e) {
    const auto* err = dynamic_cast<const Error*>(&e);
    if (!err) return 3;
    switch (err->code()) {
        case ErrorCode::InvalidArgument:
        case ErrorCode::ParseError:
        case ErrorCode::UnsupportedDims:
        case ErrorCode::ParamOrder:
        case ErrorCode::NotInClass:
            return 2;
        default:
            return 3;
    }
}

}  // namespace clutterscan::cli
