// spherevol CLI: volumes, index bounds, Stokes checks, minimizer sweeps,
// and SVG glyph plots for unit vector fields on the punctured sphere.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "spherevol/analysis.hpp"
#include "spherevol/descriptor.hpp"
#include "spherevol/svg.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNonconvergence = 3;
constexpr int kExitIndexUndetermined = 4;

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string num_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

struct Options {
    std::string descriptor;
    spherevol::QuadratureConfig cfg;
    int n_beta = 512;
    std::optional<unsigned> seed;
    // sweep
    int k_min = 1, k_max = 6;
    std::string csv_path;
    // stokes
    double alpha = 0.0;
    // plot
    std::string svg_path;
    std::string hemisphere = "north";
    int rings = 12;
    int glyphs = 48;
};

void print_record(const std::string& command, const std::vector<std::pair<std::string, std::string>>& inputs,
                  const std::vector<std::pair<std::string, std::string>>& results, double ms) {
    std::cout << "command: " << command << "\n";
    for (const auto& [k, v] : inputs) std::cout << "input." << k << ": " << v << "\n";
    for (const auto& [k, v] : results) std::cout << "result." << k << ": " << v << "\n";
    std::printf("timing_ms: %.1f\n", ms);
}

int run_volume(const Options& opt) {
    Timer t;
    auto field = spherevol::load_descriptor(opt.descriptor, opt.seed);
    auto vol = spherevol::volume(field, opt.cfg);
    print_record("volume", {{"descriptor", opt.descriptor}, {"field", field.describe()}},
                 {{"volume", num(vol.value)},
                  {"abs_error_estimate", num(vol.abs_error_estimate)},
                  {"evaluations", std::to_string(vol.evaluations)}},
                 t.ms());
    return kExitOk;
}

int run_bound(const Options& opt) {
    Timer t;
    auto field = spherevol::load_descriptor(opt.descriptor, opt.seed);
    auto report = spherevol::bound_report(field, opt.cfg);
    std::vector<std::pair<std::string, std::string>> results{
        {"volume", num(report.volume.value)},
        {"volume_abs_error_estimate", num(report.volume.abs_error_estimate)},
        {"index_north", std::to_string(report.indexes.index_north)},
        {"index_south", std::to_string(report.indexes.index_south)},
        {"k", std::to_string(report.k)},
        {"bound", num(report.bound)},
        {"margin", num(report.margin)},
        {"status", report.satisfied ? "SATISFIED" : "VIOLATED"}};
    if (!report.k_in_theorem_range)
        results.emplace_back("note", "k <= 2: outside the stated k > 2 hypothesis; "
                                     "k = 1 matches the previously known sharp bound");
    print_record("bound", {{"descriptor", opt.descriptor}, {"field", field.describe()}}, results,
                 t.ms());
    return kExitOk;
}

int run_sweep(const Options& opt) {
    Timer t;
    auto rows = spherevol::sweep(opt.k_min, opt.k_max, opt.cfg);
    std::vector<std::pair<std::string, std::string>> results;
    for (const auto& r : rows) {
        results.emplace_back("k" + std::to_string(r.k) + ".volume", num(r.volume));
        results.emplace_back("k" + std::to_string(r.k) + ".volume_abs_error_estimate",
                             num(r.volume_error));
        results.emplace_back("k" + std::to_string(r.k) + ".bound", num(r.bound));
        results.emplace_back("k" + std::to_string(r.k) + ".rel_gap", num(r.rel_gap));
    }
    if (!opt.csv_path.empty()) {
        std::ofstream csv(opt.csv_path);
        if (!csv) {
            std::cerr << "error: cannot write CSV: " << opt.csv_path << "\n";
            return kExitInput;
        }
        csv << "k,volume,bound,rel_gap\n";
        for (const auto& r : rows)
            csv << r.k << ',' << num_full(r.volume) << ',' << num_full(r.bound) << ','
                << num_full(r.rel_gap) << '\n';
    }
    print_record("sweep",
                 {{"k_min", std::to_string(opt.k_min)}, {"k_max", std::to_string(opt.k_max)}},
                 results, t.ms());
    return kExitOk;
}

int run_stokes(const Options& opt) {
    Timer t;
    auto field = spherevol::load_descriptor(opt.descriptor, opt.seed);
    auto r = spherevol::stokes_check(field, opt.alpha, opt.n_beta);
    print_record("stokes",
                 {{"descriptor", opt.descriptor},
                  {"field", field.describe()},
                  {"alpha", num(opt.alpha)},
                  {"n_beta", std::to_string(opt.n_beta)}},
                 {{"lhs", num(r.lhs)}, {"rhs", num(r.rhs)}, {"abs_diff", num(r.abs_diff)}},
                 t.ms());
    return kExitOk;
}

int run_plot(const Options& opt) {
    Timer t;
    auto field = spherevol::load_descriptor(opt.descriptor, opt.seed);
    auto hemi = opt.hemisphere == "south" ? spherevol::Hemisphere::South
                                          : spherevol::Hemisphere::North;
    std::ofstream out(opt.svg_path);
    if (!out) {
        std::cerr << "error: cannot write SVG: " << opt.svg_path << "\n";
        return kExitInput;
    }
    spherevol::write_glyph_plot(out, field, hemi, opt.rings, opt.glyphs);
    print_record("plot",
                 {{"descriptor", opt.descriptor},
                  {"field", field.describe()},
                  {"hemisphere", opt.hemisphere}},
                 {{"svg", opt.svg_path}}, t.ms());
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Volumes and sharp lower bounds for unit vector fields on the "
                 "antipodally punctured unit 2-sphere"};
    app.require_subcommand(1);

    Options opt;
    unsigned seed_value = 0;
    bool seed_given = false;
    app.add_option("--rel-tol", opt.cfg.rel_tol, "Relative quadrature tolerance");
    app.add_option("--abs-tol", opt.cfg.abs_tol, "Absolute quadrature tolerance");
    app.add_option("--pole-margin", opt.cfg.pole_margin, "Pole truncation margin (radians)");
    app.add_option("--max-depth", opt.cfg.max_depth, "Adaptive bisection depth limit");
    app.add_option("--n-beta", opt.n_beta, "Samples along a parallel for windings/Stokes");
    app.add_option("--seed", seed_value, "Seed for random perturbation descriptors")
        ->each([&](const std::string&) { seed_given = true; });

    auto* c_volume = app.add_subcommand("volume", "Volume of a field (area of its image surface)");
    c_volume->add_option("descriptor", opt.descriptor, "Field descriptor file")->required();

    auto* c_bound = app.add_subcommand("bound", "Indexes, pi L(eps_k) bound, and margin");
    c_bound->add_option("descriptor", opt.descriptor, "Field descriptor file")->required();

    auto* c_sweep = app.add_subcommand("sweep", "Volume vs bound for the minimizing family");
    c_sweep->add_option("k_min", opt.k_min, "Smallest index")->required();
    c_sweep->add_option("k_max", opt.k_max, "Largest index")->required();
    c_sweep->add_option("--csv", opt.csv_path, "Write rows as CSV");

    auto* c_stokes = app.add_subcommand("stokes", "Connection form integral along a parallel");
    c_stokes->add_option("descriptor", opt.descriptor, "Field descriptor file")->required();
    c_stokes->add_option("--alpha", opt.alpha, "Latitude of the parallel")->required();

    auto* c_plot = app.add_subcommand("plot", "SVG glyph plot of one hemisphere");
    c_plot->add_option("descriptor", opt.descriptor, "Field descriptor file")->required();
    c_plot->add_option("--svg", opt.svg_path, "Output SVG path")->required();
    c_plot->add_option("--hemisphere", opt.hemisphere, "north or south")
        ->check(CLI::IsMember({"north", "south"}));
    c_plot->add_option("--rings", opt.rings, "Latitude rings of glyphs");
    c_plot->add_option("--glyphs", opt.glyphs, "Glyph count on the rim ring");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }
    if (seed_given) opt.seed = seed_value;

    try {
        if (c_volume->parsed()) return run_volume(opt);
        if (c_bound->parsed()) return run_bound(opt);
        if (c_sweep->parsed()) return run_sweep(opt);
        if (c_stokes->parsed()) return run_stokes(opt);
        if (c_plot->parsed()) return run_plot(opt);
    } catch (const spherevol::DescriptorError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const spherevol::NonconvergenceError& e) {
        std::cerr << "error: " << e.what() << " (best estimate "
                  << num(e.best_estimate.value) << " +/- "
                  << num(e.best_estimate.abs_error_estimate) << ")\n";
        return kExitNonconvergence;
    } catch (const spherevol::IndexUndeterminedError& e) {
        std::cerr << "error: index undetermined: " << e.what() << "\n";
        return kExitIndexUndetermined;
    } catch (const spherevol::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitOk;
}
