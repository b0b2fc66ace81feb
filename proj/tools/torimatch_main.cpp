// Command-line front end: Monte Carlo sweeps, threshold estimation, channel
// capacity tables, a built-in worked decoding example, single-shot decoding
// of error files, tiling dumps, and SVG curve plots.
//
// Exit codes: 0 success, 2 usage/input error, 3 decoding failure,
// 4 no threshold crossing, 5 built-in fixture mismatch.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "torimatch/analysis.hpp"
#include "torimatch/plot.hpp"
#include "torimatch/version.hpp"

namespace {

using namespace torimatch;
using ordered_json = nlohmann::ordered_json;

constexpr int kExitUsage = 2;
constexpr int kExitDecode = 3;
constexpr int kExitNoCrossing = 4;
constexpr int kExitFixture = 5;

Family family_from_name(const std::string &name) {
    if (name == "square") return Family::square;
    if (name == "triangular") return Family::triangular;
    throw std::invalid_argument("unknown family: " + name);
}

Tiling build_torus(Family family, int size) {
    return family == Family::square ? build_square_torus(size) : build_triangular_torus(size);
}

std::string manifest_path(const std::string &csv_path) {
    if (csv_path.size() > 4 && csv_path.compare(csv_path.size() - 4, 4, ".csv") == 0)
        return csv_path.substr(0, csv_path.size() - 4) + ".manifest.json";
    return csv_path + ".manifest.json";
}

// Every CSV artifact gets a manifest echoing the full configuration, so any
// row can be regenerated from the manifest alone.
void write_manifest(const std::string &csv_path, const std::string &command,
                    const ordered_json &config, std::uint64_t seed, double wall_seconds) {
    ordered_json m;
    m["tool"] = kToolName;
    m["version"] = kVersion;
    m["command"] = command;
    m["seed"] = seed;
    m["config"] = config;
    m["wall_clock_seconds"] = wall_seconds;
    m["outputs"] = ordered_json::array({csv_path});
    std::ofstream out(manifest_path(csv_path));
    if (!out) throw std::invalid_argument("cannot write " + manifest_path(csv_path));
    out << m.dump(2) << "\n";
}

struct SimulateArgs {
    std::string family = "square";
    std::vector<int> sizes;
    std::vector<double> p_list;
    double p_min = 0.0, p_max = 0.0;
    int p_steps = 0;
    std::string decoder = "standard";
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

std::vector<double> p_grid(const SimulateArgs &a) {
    if (!a.p_list.empty()) return a.p_list;
    if (a.p_steps < 1) throw std::invalid_argument("need --p-list or --p-min/--p-max/--p-steps");
    if (a.p_steps == 1) {
        if (a.p_min != a.p_max)
            throw std::invalid_argument("--p-steps 1 needs --p-min == --p-max");
        return {a.p_min};
    }
    if (a.p_min > a.p_max) throw std::invalid_argument("--p-min must not exceed --p-max");
    std::vector<double> grid(a.p_steps);
    for (int i = 0; i < a.p_steps; ++i)
        grid[i] = a.p_min + (a.p_max - a.p_min) * i / (a.p_steps - 1);
    return grid;
}

int run_simulate(const SimulateArgs &a) {
    auto start = std::chrono::steady_clock::now();
    SimulateSpec spec;
    spec.family = family_from_name(a.family);
    spec.sizes = a.sizes;
    spec.ps = p_grid(a);
    spec.decoder = decoder_from_name(a.decoder);
    spec.trials = a.trials;
    spec.seed = a.seed;
    spec.threads = a.threads;

    std::vector<CurvePoint> rows = simulate_curve(spec);
    std::ofstream out(a.out);
    if (!out) throw std::invalid_argument("cannot write " + a.out);
    write_curve_csv(out, rows);
    out.close();

    double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ordered_json config;
    config["family"] = a.family;
    config["sizes"] = a.sizes;
    config["ps"] = spec.ps;
    config["decoder"] = a.decoder;
    config["trials"] = a.trials;
    config["seed"] = a.seed;
    config["threads"] = a.threads == 0 ? default_thread_count() : a.threads;
    config["out"] = a.out;
    write_manifest(a.out, "simulate", config, a.seed, wall);
    std::cout << rows.size() << " rows -> " << a.out << "\n";
    return 0;
}

const char *direction_name(NoCrossingError::Direction d) {
    switch (d) {
        case NoCrossingError::Direction::below:
            return "larger sizes fail less everywhere, threshold above the grid";
        case NoCrossingError::Direction::above:
            return "larger sizes fail more everywhere, threshold below the grid";
        default: return "curves are flat on the grid";
    }
}

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

int run_threshold(const std::string &in_path) {
    std::ifstream in(in_path);
    if (!in) throw std::invalid_argument("cannot read " + in_path);
    std::vector<CurvePoint> rows = read_curve_csv(in);
    if (rows.empty()) throw std::invalid_argument("no data rows in " + in_path);

    using GroupKey = std::tuple<std::string, std::string, std::string>;
    std::map<GroupKey, std::vector<CurvePoint>> groups;
    for (CurvePoint &c : rows) groups[{c.family, c.decoder, c.sector}].push_back(std::move(c));

    bool missing_crossing = false;
    for (const auto &[key, pts] : groups) {
        const auto &[family, decoder, sector] = key;
        std::cout << family << " " << decoder << " (" << sector << " sector): ";
        try {
            ThresholdEstimate est = estimate_threshold(pts);
            std::cout << "p_th = " << fixed6(est.p_th) << " +/- " << fixed6(est.spread)
                      << " from " << est.pairs << " size pair(s)\n";
        } catch (const NoCrossingError &e) {
            std::cout << "no crossing (" << direction_name(e.direction) << ")\n";
            missing_crossing = true;
        }
    }
    return missing_crossing ? kExitNoCrossing : 0;
}

int run_capacity(const std::vector<double> &ps) {
    std::cout << "p,p_marginal,p_conditional,c_x,c_z,hashing_bound,independent_bound\n";
    for (double p : ps) {
        DepolarizingParams d(p);
        Capacities c = channel_capacities(p);
        std::cout << detail::format_double(p) << ',' << detail::format_double(d.marginal_rate)
                  << ',' << detail::format_double(d.conditional_rate) << ','
                  << detail::format_double(c.c_x) << ',' << detail::format_double(c.c_z) << ','
                  << detail::format_double(hashing_bound(p)) << ','
                  << detail::format_double(1.0 - 2.0 * binary_entropy(d.marginal_rate)) << "\n";
    }
    return 0;
}

void print_error(const char *label, const PauliErrorPair &e) {
    std::cout << label << ":\n";
    write_error_csv(std::cout, e);
}

void print_class(const char *label, const HomologyClass &h) {
    std::cout << label << ": z_winding=(" << int(h.z_bits[0]) << "," << int(h.z_bits[1])
              << ") x_winding=(" << int(h.x_bits[0]) << "," << int(h.x_bits[1]) << ") -> "
              << (h.trivial() ? "success" : "logical error") << "\n";
}

// Built-in worked example on the 5x5 square torus: a 5-qubit error whose
// standard decoding winds around the torus while the correlated decoder
// recovers it exactly. Edge names follow SquareIndex: h(x,y) joins (x,y) to
// (x+1,y), v(x,y) joins (x,y) to (x,y+1).
int run_demo() {
    constexpr int kSide = 5;
    Tiling primal = build_square_torus(kSide);
    DualView dual_view = dual(primal);
    HomologyBasis basis = homology_basis(primal, dual_view);
    SquareIndex idx(kSide);

    PauliErrorPair truth;
    truth.ex = {idx.v(1, 2), idx.v(2, 3), idx.v(3, 1)};
    truth.ez = {idx.h(2, 4), idx.v(2, 3), idx.v(3, 0), idx.v(3, 1)};
    std::sort(truth.ex.begin(), truth.ex.end());
    std::sort(truth.ez.begin(), truth.ez.end());

    SyndromePair expected;
    expected.s_x = {idx.vertex(3, 0), idx.vertex(3, 2), idx.vertex(2, 3), idx.vertex(3, 4)};
    expected.s_z = {idx.face(1, 3), idx.face(2, 3), idx.face(0, 2),
                    idx.face(1, 2), idx.face(2, 1), idx.face(3, 1)};
    std::sort(expected.s_x.begin(), expected.s_x.end());
    std::sort(expected.s_z.begin(), expected.s_z.end());

    SyndromePair s = syndrome(primal, dual_view.tiling, truth);
    if (!(s == expected)) {
        std::cerr << "built-in fixture mismatch: measured syndrome disagrees with the recorded "
                     "one\n";
        return kExitFixture;
    }

    print_error("error", truth);
    std::cout << "site syndrome: " << s.s_x.size() << " checks, plaquette syndrome: "
              << s.s_z.size() << " checks\n\n";

    DecodeResult standard = decode_standard(primal, dual_view.tiling, s);
    HomologyClass h_std = residual_class(primal, basis, truth, standard.estimate);
    print_error("standard estimate", standard.estimate);
    print_class("standard residual", h_std);
    std::cout << "\n";

    DecodeResult correlated = decode_correlated(primal, dual_view.tiling, s);
    HomologyClass h_cor = residual_class(primal, basis, truth, correlated.estimate);
    print_error("correlated estimate", correlated.estimate);
    print_class("correlated residual", h_cor);

    return h_cor.trivial() ? 0 : kExitDecode;
}

struct DecodeArgs {
    std::string family = "square";
    int size = 0;
    std::string in;
    std::string decoder = "correlated";
    std::string out;
};

int run_decode(const DecodeArgs &a) {
    Tiling primal = build_torus(family_from_name(a.family), a.size);
    DualView dual_view = dual(primal);
    HomologyBasis basis = homology_basis(primal, dual_view);

    std::ifstream in(a.in);
    if (!in) throw std::invalid_argument("cannot read " + a.in);
    PauliErrorPair truth = read_error_csv(in, primal.n_edges());
    SyndromePair s = syndrome(primal, dual_view.tiling, truth);

    DecoderKind kind = decoder_from_name(a.decoder);
    PauliErrorPair estimate;
    if (kind == DecoderKind::z_only) {
        estimate.ez = decode_pma(primal, s.s_x);
        estimate.ex = truth.ex;  // score the phase sector only
    } else {
        DecodeResult r = kind == DecoderKind::standard
                             ? decode_standard(primal, dual_view.tiling, s)
                             : decode_correlated(primal, dual_view.tiling, s);
        estimate = std::move(r.estimate);
    }

    HomologyClass h = residual_class(primal, basis, truth, estimate);
    print_error("estimate", estimate);
    print_class("residual", h);
    if (!a.out.empty()) {
        std::ofstream out(a.out);
        if (!out) throw std::invalid_argument("cannot write " + a.out);
        write_error_csv(out, estimate);
    }
    return h.trivial() ? 0 : kExitDecode;
}

int run_dump_tiling(const std::string &family, int size, const std::string &out_path) {
    Tiling t = build_torus(family_from_name(family), size);
    if (out_path.empty()) {
        write_tiling_csv(std::cout, t);
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        write_tiling_csv(out, t);
    }
    return 0;
}

struct PlotArgs {
    std::string in;
    std::string out;
    std::string title;
};

int run_plot(const PlotArgs &a) {
    std::ifstream in(a.in);
    if (!in) throw std::invalid_argument("cannot read " + a.in);
    std::vector<CurvePoint> rows = read_curve_csv(in);
    std::ofstream out(a.out);
    if (!out) throw std::invalid_argument("cannot write " + a.out);
    PlotOptions options;
    options.title = a.title;
    write_curve_svg(out, rows, options);  // throws on empty input
    std::cout << rows.size() << " points -> " << a.out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"correlated matching decoders for CSS codes on torus tilings"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    SimulateArgs sim;
    CLI::App *simulate = app.add_subcommand("simulate", "Monte Carlo failure-rate sweep");
    simulate->add_option("--family", sim.family, "lattice family")
        ->check(CLI::IsMember({"square", "triangular"}));
    simulate->add_option("--sizes", sim.sizes, "lattice sizes, e.g. 8,12,16")
        ->required()
        ->delimiter(',');
    CLI::Option *p_list =
        simulate->add_option("--p-list", sim.p_list, "explicit p values")->delimiter(',');
    CLI::Option *p_min = simulate->add_option("--p-min", sim.p_min, "sweep start");
    CLI::Option *p_max = simulate->add_option("--p-max", sim.p_max, "sweep end");
    CLI::Option *p_steps =
        simulate->add_option("--p-steps", sim.p_steps, "number of sweep points");
    p_list->excludes(p_min)->excludes(p_max)->excludes(p_steps);
    p_steps->needs(p_min)->needs(p_max);
    simulate->add_option("--decoder", sim.decoder, "decoder")
        ->check(CLI::IsMember({"standard", "correlated", "z-only"}));
    simulate->add_option("--trials", sim.trials, "trials per (size, p) cell");
    simulate->add_option("--seed", sim.seed, "master seed");
    simulate->add_option("--threads", sim.threads,
                         "worker count (0: TORIMATCH_THREADS or hardware)");
    simulate->add_option("--out", sim.out, "output CSV path")->required();

    std::string threshold_in;
    CLI::App *threshold = app.add_subcommand("threshold", "estimate thresholds from a sweep CSV");
    threshold->add_option("--in", threshold_in, "input CSV from simulate")->required();

    std::vector<double> capacity_ps;
    CLI::App *capacity = app.add_subcommand("capacity", "channel capacity table");
    capacity->add_option("--p-list", capacity_ps, "p values")->required()->delimiter(',');

    CLI::App *demo = app.add_subcommand("demo", "run the built-in worked decoding example");

    DecodeArgs dec;
    CLI::App *decode = app.add_subcommand("decode", "decode one error file");
    decode->add_option("--family", dec.family, "lattice family")
        ->check(CLI::IsMember({"square", "triangular"}));
    decode->add_option("--size", dec.size, "lattice size")->required();
    decode->add_option("--in", dec.in, "error CSV (edge_id,pauli)")->required();
    decode->add_option("--decoder", dec.decoder, "decoder")
        ->check(CLI::IsMember({"standard", "correlated", "z-only"}));
    decode->add_option("--out", dec.out, "write the estimate CSV here");

    std::string dump_family = "square", dump_out;
    int dump_size = 0;
    CLI::App *dump = app.add_subcommand("dump-tiling", "write a tiling's edge table as CSV");
    dump->add_option("--family", dump_family, "lattice family")
        ->check(CLI::IsMember({"square", "triangular"}));
    dump->add_option("--size", dump_size, "lattice size")->required();
    dump->add_option("--out", dump_out, "output path (default: stdout)");

    PlotArgs plot_args;
    CLI::App *plot = app.add_subcommand("plot", "render a sweep CSV as SVG");
    plot->add_option("--in", plot_args.in, "input CSV")->required();
    plot->add_option("--out", plot_args.out, "output SVG path")->required();
    plot->add_option("--title", plot_args.title, "plot title");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (simulate->parsed()) return run_simulate(sim);
        if (threshold->parsed()) return run_threshold(threshold_in);
        if (capacity->parsed()) return run_capacity(capacity_ps);
        if (demo->parsed()) return run_demo();
        if (decode->parsed()) return run_decode(dec);
        if (dump->parsed()) return run_dump_tiling(dump_family, dump_size, dump_out);
        if (plot->parsed()) return run_plot(plot_args);
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::domain_error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "decoding failed: " << e.what() << "\n";
        return kExitDecode;
    }
    return kExitUsage;
}
