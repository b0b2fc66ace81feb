#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "torimatch/decoders.hpp"
#include "torimatch/rng.hpp"

namespace torimatch {

/// Binary entropy in bits. Defined on [0,1] with h(0) = h(1) = 0.
inline double binary_entropy(double x) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error("binary entropy needs an argument in [0,1], got " +
                                std::to_string(x));
    if (x == 0.0 || x == 1.0)
        return 0.0;
    return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

/// Per-qubit capacities of the two effective binary channels a two-step
/// decoder works against under depolarizing noise of rate p. The X half
/// sees a plain symmetric channel of rate 2p/3; the Z half, decoded after
/// the X half, sees rate (p/3)/(1-2p/3) on the edges whose X half is clean.
/// c_z >= c_x for every p, which is the information-theoretic room the
/// correlated decoder exploits.
struct Capacities {
    double c_x;
    double c_z;
};

inline Capacities channel_capacities(double p) {
    DepolarizingParams d(p);
    return Capacities{1.0 - binary_entropy(d.marginal_rate),
                      (1.0 - d.marginal_rate) * (1.0 - binary_entropy(d.conditional_rate))};
}

/// Net coding rate 1 + p log2(p/3) + (1-p) log2(1-p) achievable by random
/// stabilizer codes against depolarizing noise; positive below its unique
/// root near p = 0.1893.
inline double hashing_bound(double p) {
    if (!(p >= 0.0 && p < 1.0))
        throw std::domain_error("hashing bound needs a rate in [0,1), got " + std::to_string(p));
    if (p == 0.0)
        return 1.0;
    return 1.0 + p * std::log2(p / 3.0) + (1.0 - p) * std::log2(1.0 - p);
}

/// Wilson score interval for a binomial proportion.
struct WilsonInterval {
    double low;
    double high;
};

inline WilsonInterval wilson_interval(std::uint64_t failures, std::uint64_t trials,
                                      double z = 1.96) {
    if (trials == 0)
        throw std::invalid_argument("wilson_interval needs at least one trial");
    if (failures > trials)
        throw std::invalid_argument("wilson_interval: failures exceed trials");
    double n = double(trials);
    double phat = double(failures) / n;
    double z2 = z * z;
    double denom = 1.0 + z2 / n;
    double center = (phat + z2 / (2.0 * n)) / denom;
    double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
    return WilsonInterval{std::max(0.0, center - half), std::min(1.0, center + half)};
}

enum class DecoderKind { standard, correlated, z_only };

inline const char *decoder_name(DecoderKind k) {
    switch (k) {
        case DecoderKind::standard: return "standard";
        case DecoderKind::correlated: return "correlated";
        case DecoderKind::z_only: return "z-only";
    }
    throw std::invalid_argument("bad decoder kind");
}

inline DecoderKind decoder_from_name(const std::string &name) {
    if (name == "standard")
        return DecoderKind::standard;
    if (name == "correlated")
        return DecoderKind::correlated;
    if (name == "z-only")
        return DecoderKind::z_only;
    throw std::invalid_argument("unknown decoder '" + name +
                                "' (expected standard, correlated or z-only)");
}

/// Failure tallies of a batch of decoding trials, split by which half of
/// the residual carried a winding cycle.
struct SectorCounts {
    std::uint64_t any = 0;  // z or x (for z-only decoding this equals z)
    std::uint64_t z = 0;
    std::uint64_t x = 0;
};

struct TrialStats {
    std::uint64_t trials = 0;
    SectorCounts failures;
};

/// Number of worker threads to use when the caller does not say: the
/// TORIMATCH_THREADS environment variable if set, otherwise the hardware
/// concurrency.
inline int default_thread_count() {
    if (const char *env = std::getenv("TORIMATCH_THREADS")) {
        int v = std::atoi(env);
        if (v > 0)
            return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? int(hw) : 1;
}

namespace detail {

struct TrialContext {
    const Tiling &primal;
    const Tiling &dual_tiling;
    const HomologyBasis &basis;
    double p;
    DecoderKind kind;
    std::uint64_t master_seed;
};

/// Runs trials [lo, hi). Trial k draws its error from an engine seeded by
/// derive_seed(master, k), so the partition into ranges cannot change any
/// outcome - results are identical for every worker count.
inline SectorCounts run_trial_range(const TrialContext &ctx, std::uint64_t lo, std::uint64_t hi) {
    SectorCounts counts;
    for (std::uint64_t k = lo; k < hi; ++k) {
        std::mt19937_64 rng(derive_seed(ctx.master_seed, k));
        PauliErrorPair truth = sample_depolarizing(ctx.primal, ctx.p, rng);
        SyndromePair s = syndrome(ctx.primal, ctx.dual_tiling, truth);
        PauliErrorPair estimate;
        switch (ctx.kind) {
            case DecoderKind::standard:
                estimate = decode_standard(ctx.primal, ctx.dual_tiling, s).estimate;
                break;
            case DecoderKind::correlated:
                estimate = decode_correlated(ctx.primal, ctx.dual_tiling, s).estimate;
                break;
            case DecoderKind::z_only:
                // Only the Z half is decoded; the X half is carried over
                // from the truth so that exactly the Z sector is scored.
                estimate.ez = decode_pma(ctx.primal, s.s_x);
                estimate.ex = truth.ex;
                break;
        }
        HomologyClass c = residual_class(ctx.primal, ctx.basis, truth, estimate);
        bool z_fail = c.z_bits[0] || c.z_bits[1];
        bool x_fail = c.x_bits[0] || c.x_bits[1];
        counts.z += z_fail ? 1 : 0;
        counts.x += x_fail ? 1 : 0;
        counts.any += (z_fail || x_fail) ? 1 : 0;
    }
    return counts;
}

}  // namespace detail

/// Seeded Monte Carlo estimate of decoder failure rates. Trial k is fully
/// determined by (master_seed, k); worker threads only partition the trial
/// range, so the tallies are independent of `threads`.
inline TrialStats run_trials(const Tiling &primal, double p, DecoderKind kind,
                             std::uint64_t trials, std::uint64_t master_seed, int threads = 0) {
    DualView d = dual(primal);
    HomologyBasis basis = homology_basis(primal, d);
    detail::TrialContext ctx{primal, d.tiling, basis, p, kind, master_seed};

    int n_workers = threads > 0 ? threads : default_thread_count();
    if (std::uint64_t(n_workers) > trials)
        n_workers = int(std::max<std::uint64_t>(1, trials));

    TrialStats stats;
    stats.trials = trials;
    if (n_workers <= 1) {
        stats.failures = detail::run_trial_range(ctx, 0, trials);
        return stats;
    }
    std::vector<SectorCounts> partial(n_workers);
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (int w = 0; w < n_workers; ++w) {
        std::uint64_t lo = trials * w / n_workers;
        std::uint64_t hi = trials * (w + 1) / n_workers;
        pool.emplace_back(
            [&ctx, &partial, w, lo, hi] { partial[w] = detail::run_trial_range(ctx, lo, hi); });
    }
    for (auto &th : pool)
        th.join();
    for (const SectorCounts &c : partial) {
        stats.failures.any += c.any;
        stats.failures.z += c.z;
        stats.failures.x += c.x;
    }
    return stats;
}

/// One point of a failure-rate curve, as written to CSV.
struct CurvePoint {
    std::string family;
    int size = 0;
    double p = 0.0;
    std::string decoder;
    std::string sector;  // "both", "z" or "x"
    std::uint64_t trials = 0;
    std::uint64_t failures = 0;
    double rate = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t seed = 0;

    bool operator==(const CurvePoint &other) const = default;
};

namespace detail {

/// Shortest round-trip decimal form; byte-stable across platforms, unlike
/// iostream double formatting.
inline std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline double parse_double(const std::string &s) {
    double v = 0.0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad floating point field '" + s + "'");
    return v;
}

inline std::uint64_t parse_u64(const std::string &s) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer field '" + s + "'");
    return v;
}

}  // namespace detail

inline constexpr const char *kCurveCsvHeader =
    "family,size,p,decoder,sector,trials,failures,rate,ci_low,ci_high,seed";

inline void write_curve_csv(std::ostream &out, const std::vector<CurvePoint> &points) {
    out << kCurveCsvHeader << '\n';
    for (const CurvePoint &c : points) {
        out << c.family << ',' << c.size << ',' << detail::format_double(c.p) << ',' << c.decoder
            << ',' << c.sector << ',' << c.trials << ',' << c.failures << ','
            << detail::format_double(c.rate) << ',' << detail::format_double(c.ci_low) << ','
            << detail::format_double(c.ci_high) << ',' << c.seed << '\n';
    }
}

inline std::vector<CurvePoint> read_curve_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("curve csv: missing header");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCurveCsvHeader)
        throw std::invalid_argument("curve csv: unexpected header '" + line + "'");
    std::vector<CurvePoint> points;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        for (;;) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                f.push_back(line.substr(start));
                break;
            }
            f.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (f.size() != 11)
            throw std::invalid_argument("curve csv: expected 11 fields, got " +
                                        std::to_string(f.size()));
        CurvePoint c;
        c.family = f[0];
        c.size = int(detail::parse_u64(f[1]));
        c.p = detail::parse_double(f[2]);
        c.decoder = f[3];
        c.sector = f[4];
        c.trials = detail::parse_u64(f[5]);
        c.failures = detail::parse_u64(f[6]);
        c.rate = detail::parse_double(f[7]);
        c.ci_low = detail::parse_double(f[8]);
        c.ci_high = detail::parse_double(f[9]);
        c.seed = detail::parse_u64(f[10]);
        points.push_back(std::move(c));
    }
    return points;
}

/// Sweep request: every (size, p) cell is simulated with `trials` shots.
struct SimulateSpec {
    Family family = Family::square;
    std::vector<int> sizes;
    std::vector<double> ps;
    DecoderKind decoder = DecoderKind::standard;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    int threads = 0;  // 0: default_thread_count()
};

/// Seed of one sweep cell. Derived from the cell's content rather than its
/// position, so extending a sweep does not reshuffle existing cells.
inline std::uint64_t cell_seed(std::uint64_t master, Family family, int size, double p,
                               DecoderKind decoder) {
    std::uint64_t s = mix64(master);
    s = mix64(s ^ (family == Family::square ? 0x5157u : 0x5452u));
    s = mix64(s ^ std::uint64_t(size));
    std::uint64_t pbits;
    static_assert(sizeof(pbits) == sizeof(p));
    std::memcpy(&pbits, &p, sizeof(pbits));
    s = mix64(s ^ pbits);
    s = mix64(s ^ (std::uint64_t(decoder) + 0x71u));
    return s;
}

inline std::vector<CurvePoint> simulate_curve(const SimulateSpec &spec) {
    if (spec.trials == 0)
        throw std::invalid_argument("simulate_curve: trials must be positive");
    std::vector<CurvePoint> out;
    const char *sector = spec.decoder == DecoderKind::z_only ? "z" : "both";
    for (int size : spec.sizes) {
        Tiling t = spec.family == Family::square ? build_square_torus(size)
                                                 : build_triangular_torus(size);
        for (double p : spec.ps) {
            std::uint64_t seed = cell_seed(spec.seed, spec.family, size, p, spec.decoder);
            TrialStats stats = run_trials(t, p, spec.decoder, spec.trials, seed, spec.threads);
            std::uint64_t failures =
                spec.decoder == DecoderKind::z_only ? stats.failures.z : stats.failures.any;
            WilsonInterval ci = wilson_interval(failures, stats.trials);
            CurvePoint c;
            c.family = family_name(spec.family);
            c.size = size;
            c.p = p;
            c.decoder = decoder_name(spec.decoder);
            c.sector = sector;
            c.trials = stats.trials;
            c.failures = failures;
            c.rate = double(failures) / double(stats.trials);
            c.ci_low = ci.low;
            c.ci_high = ci.high;
            c.seed = seed;
            out.push_back(std::move(c));
        }
    }
    return out;
}

/// Thrown when failure-rate curves of different sizes never cross on the
/// sampled grid, so no threshold can be read off.
class NoCrossingError : public std::runtime_error {
  public:
    enum class Direction {
        below,  // larger lattices always fail less: the grid sits below threshold
        above,  // larger lattices always fail more: the grid sits above threshold
        flat,   // curves are identical on the grid
    };

    NoCrossingError(Direction dir, const std::string &msg)
        : std::runtime_error(msg), direction(dir) {}

    Direction direction;
};

struct ThresholdEstimate {
    double p_th = 0.0;   // mean crossing over consecutive size pairs
    double spread = 0.0; // half the range across those pairs
    int pairs = 0;       // number of size pairs that contributed
};

/// Reads a threshold off failure-rate curves: for each pair of consecutive
/// sizes, locate where the larger lattice stops being better by linear
/// interpolation of the rate difference on the shared p grid, then average
/// the crossings.
inline ThresholdEstimate estimate_threshold(const std::vector<CurvePoint> &points) {
    if (points.empty())
        throw std::invalid_argument("estimate_threshold: no points");
    for (const CurvePoint &c : points)
        if (c.family != points[0].family || c.decoder != points[0].decoder ||
            c.sector != points[0].sector)
            throw std::invalid_argument(
                "estimate_threshold: points mix families, decoders or sectors");

    std::map<int, std::map<double, double>> by_size;  // size -> p -> rate
    for (const CurvePoint &c : points) {
        auto [it, fresh] = by_size[c.size].try_emplace(c.p, c.rate);
        if (!fresh)
            throw std::invalid_argument("estimate_threshold: duplicate point for size " +
                                        std::to_string(c.size));
    }
    if (by_size.size() < 2)
        throw std::invalid_argument("estimate_threshold: need at least two sizes");
    auto first = by_size.begin();
    for (auto it = std::next(first); it != by_size.end(); ++it) {
        if (it->second.size() != first->second.size())
            throw std::invalid_argument("estimate_threshold: sizes sampled on different grids");
        auto a = first->second.begin();
        for (auto b = it->second.begin(); b != it->second.end(); ++b, ++a)
            if (a->first != b->first)
                throw std::invalid_argument(
                    "estimate_threshold: sizes sampled on different grids");
    }

    std::vector<double> crossings;
    bool saw_below = false, saw_above = false;
    for (auto small = by_size.begin(), big = std::next(small); big != by_size.end();
         ++small, ++big) {
        std::vector<double> ps, diff;
        auto a = small->second.begin();
        for (auto b = big->second.begin(); b != big->second.end(); ++b, ++a) {
            ps.push_back(b->first);
            diff.push_back(b->second - a->second);
        }
        bool all_zero = std::all_of(diff.begin(), diff.end(), [](double d) { return d == 0.0; });
        double crossing = -1.0;
        if (!all_zero) {
            for (std::size_t j = 0; j < diff.size() && crossing < 0.0; ++j) {
                if (diff[j] == 0.0)
                    crossing = ps[j];
                else if (j + 1 < diff.size() && diff[j + 1] != 0.0 &&
                         (diff[j] < 0.0) != (diff[j + 1] < 0.0))
                    crossing = ps[j] + (ps[j + 1] - ps[j]) * (-diff[j]) / (diff[j + 1] - diff[j]);
            }
        }
        if (crossing < 0.0) {
            if (all_zero) {
                // fall through to the flat report below
            } else if (diff.front() < 0.0) {
                saw_below = true;
                continue;
            } else {
                saw_above = true;
                continue;
            }
            throw NoCrossingError(NoCrossingError::Direction::flat,
                                  "failure curves of sizes " + std::to_string(small->first) +
                                      " and " + std::to_string(big->first) +
                                      " are identical on the sampled grid");
        }
        crossings.push_back(crossing);
    }
    if (crossings.empty()) {
        if (saw_below && !saw_above)
            throw NoCrossingError(NoCrossingError::Direction::below,
                                  "larger lattices win everywhere: sampled grid lies below "
                                  "the threshold");
        throw NoCrossingError(NoCrossingError::Direction::above,
                              "larger lattices lose everywhere: sampled grid lies above the "
                              "threshold");
    }
    if (saw_below || saw_above)
        throw NoCrossingError(saw_below ? NoCrossingError::Direction::below
                                        : NoCrossingError::Direction::above,
                              "only part of the size pairs cross on the sampled grid");

    ThresholdEstimate est;
    est.pairs = int(crossings.size());
    double lo = crossings[0], hi = crossings[0], sum = 0.0;
    for (double c : crossings) {
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        sum += c;
    }
    est.p_th = sum / double(crossings.size());
    est.spread = (hi - lo) / 2.0;
    return est;
}

}  // namespace torimatch
