// harness.hpp — experiment configuration, mask file I/O, separation
// experiments under the null and planted distributions, and the (delta, gamma)
// phase-diagram sweep with CSV/SVG output.
//
// Reproducibility contract: a fixed (config, master_seed) pair produces
// byte-identical CSV regardless of worker count. Every trial owns the RNG
// stream whose index encodes (purpose block, trial number), and results are
// reduced in trial order.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "cliquemask/core.hpp"
#include "cliquemask/detector.hpp"
#include "cliquemask/errors.hpp"
#include "cliquemask/ldub.hpp"

namespace cliquemask {

enum class MaskSource { rectangular, file, random_budget };
enum class ThresholdMode { midpoint, null_quantile };

struct ExperimentConfig {
    ProblemParams params;
    MaskSource mask_source = MaskSource::rectangular;
    std::string mask_path;
    std::int64_t trials = 100; // per hypothesis
    std::uint64_t master_seed = 1;
    ThresholdMode threshold_mode = ThresholdMode::midpoint;
    double alpha = 0.05;                   // null-quantile level
    std::int64_t calibration_trials = 1000; // null samples for the quantile
    int threads = 1;
};

struct SeparationReport {
    double mean_null = 0.0, mean_planted = 0.0;
    double var_null = 0.0, var_planted = 0.0;
    double sep_ratio = 0.0;
    double accuracy = 0.0;
    double threshold = 0.0;
    std::int64_t trials = 0;
    std::int64_t n = 0, k = 0, mask_edges = 0;
    double gamma = 0.0, delta = 0.0;
};

// ---------------------------------------------------------------------------
// Mask and observation files.
//
// UTF-8 text; '#' starts a comment; first significant line is "n <N>";
// each following line is "<i> <j>" (mask) or "<i> <j> <+1|-1>" (observation),
// 1-based and whitespace-separated.
// ---------------------------------------------------------------------------

namespace detail {

inline std::string strip_comment(const std::string& line) {
    const auto pos = line.find('#');
    return pos == std::string::npos ? line : line.substr(0, pos);
}

inline std::vector<std::string> tokens_of(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

inline std::int64_t parse_int(const std::string& tok, std::int64_t line_no, const char* what) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": expected " + std::string(what) +
                         ", got '" + tok + "'");
    }
}

struct ParsedEdgeFile {
    VertexId n = 0;
    std::vector<Mask::Edge> edges;          // canonicalized, in file order
    std::vector<std::int8_t> values;        // empty unless with_values
};

inline ParsedEdgeFile parse_edge_file(std::istream& in, bool with_values) {
    ParsedEdgeFile out;
    bool have_header = false;
    std::string raw;
    std::int64_t line_no = 0;
    Mask dedup(0);
    while (std::getline(in, raw)) {
        ++line_no;
        const auto toks = tokens_of(strip_comment(raw));
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks.size() != 2 || toks[0] != "n")
                throw ParseError("line " + std::to_string(line_no) + ": expected header 'n <N>'");
            const std::int64_t n = parse_int(toks[1], line_no, "ground set size");
            if (n < 0 || n > (std::int64_t{1} << 31) - 2)
                throw ParseError("line " + std::to_string(line_no) + ": ground set size out of range");
            out.n = static_cast<VertexId>(n);
            dedup = Mask(out.n);
            have_header = true;
            continue;
        }
        const std::size_t expected = with_values ? 3 : 2;
        if (toks.size() != expected)
            throw ParseError("line " + std::to_string(line_no) + ": expected " +
                             (with_values ? std::string("'<i> <j> <+1|-1>'") : std::string("'<i> <j>'")));
        const std::int64_t a = parse_int(toks[0], line_no, "vertex");
        const std::int64_t b = parse_int(toks[1], line_no, "vertex");
        if (a < 1 || a > out.n || b < 1 || b > out.n)
            throw ParseError("line " + std::to_string(line_no) + ": vertex out of range [1, " +
                             std::to_string(out.n) + "]");
        if (a == b) throw ParseError("line " + std::to_string(line_no) + ": self-loop");
        const VertexId lo = static_cast<VertexId>(std::min(a, b));
        const VertexId hi = static_cast<VertexId>(std::max(a, b));
        if (dedup.has_edge(lo, hi))
            throw ParseError("line " + std::to_string(line_no) + ": duplicate edge (" +
                             std::to_string(lo) + ", " + std::to_string(hi) + ")");
        dedup.add_edge(lo, hi);
        out.edges.emplace_back(lo, hi);
        if (with_values) {
            const std::string& v = toks[2];
            if (v == "+1" || v == "1")
                out.values.push_back(1);
            else if (v == "-1")
                out.values.push_back(-1);
            else
                throw ParseError("line " + std::to_string(line_no) + ": expected value +1 or -1");
        }
    }
    if (!have_header) throw ParseError("missing header 'n <N>'");
    return out;
}

} // namespace detail

inline Mask load_mask(std::istream& in) {
    const auto parsed = detail::parse_edge_file(in, /*with_values=*/false);
    Mask m(parsed.n);
    for (const auto& [a, b] : parsed.edges) m.add_edge(a, b);
    return m;
}

inline Mask load_mask(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open mask file '" + path + "'");
    return load_mask(in);
}

inline void save_mask(const Mask& m, std::ostream& os) {
    os << "n " << m.n() << "\n";
    for (const auto& [a, b] : m.edges()) os << a << " " << b << "\n";
}

inline void save_mask(const Mask& m, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ParseError("cannot open output file '" + path + "'");
    save_mask(m, os);
}

inline MaskedGraph load_observation(std::istream& in) {
    auto parsed = detail::parse_edge_file(in, /*with_values=*/true);
    Mask m(parsed.n);
    std::vector<std::size_t> order(parsed.edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return parsed.edges[x] < parsed.edges[y];
    });
    std::vector<std::int8_t> values;
    values.reserve(order.size());
    for (std::size_t i : order) {
        m.add_edge(parsed.edges[i].first, parsed.edges[i].second);
        values.push_back(parsed.values[i]);
    }
    const SharedMask shared = share_mask(std::move(m));
    MaskedGraph g;
    g.mask = shared.mask;
    g.edges = shared.edges;
    g.values = std::move(values);
    return g;
}

inline MaskedGraph load_observation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open observation file '" + path + "'");
    return load_observation(in);
}

inline void save_observation(const MaskedGraph& g, std::ostream& os,
                             const CliqueIndicator* clique = nullptr) {
    if (clique) {
        os << "# clique";
        for (VertexId v : clique->members) os << " " << v;
        os << "\n";
    }
    os << "n " << (g.mask ? g.mask->n() : 0) << "\n";
    for (std::size_t i = 0; i < g.edge_list().size(); ++i)
        os << g.edge_list()[i].first << " " << g.edge_list()[i].second << " "
           << (g.values[i] > 0 ? "+1" : "-1") << "\n";
}

// Uniform random mask with exactly `budget` distinct edges.
inline Mask random_mask(VertexId n, std::int64_t budget, RngStream& rng) {
    const std::int64_t all = static_cast<std::int64_t>(n) * (n - 1) / 2;
    if (budget < 0 || budget > all)
        throw InvalidParams("edge budget exceeds the number of vertex pairs");
    Mask m(n);
    while (m.edge_count() < budget) {
        const VertexId a = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(n)));
        const VertexId b = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(n)));
        if (a == b || m.has_edge(a, b)) continue;
        m.add_edge(std::min(a, b), std::max(a, b));
    }
    return m;
}

// Recognize a mask of the exact form V_L x V_R (rows 1..L, columns n-R+1..n)
// and derive the rectangle parameters from it.
inline RectMaskParams infer_rect_params(const Mask& m, const ProblemParams& params) {
    if (m.n() != params.n) throw InvalidParams("mask ground set does not match params.n");
    RectMaskParams rp;
    rp.n = m.n();
    rp.epsilon = params.gamma - 3.0 * (0.5 - params.delta);
    if (m.edge_count() == 0) {
        rp.R = 0;
        rp.L = 0;
    } else {
        VertexId max_row = 0, min_col = m.n() + 1;
        for (const auto& [a, b] : m.edges()) {
            max_row = std::max(max_row, a);
            min_col = std::min(min_col, b);
        }
        rp.L = max_row;
        rp.R = m.n() - min_col + 1;
        if (rp.L + rp.R > m.n() || m.edge_count() != rp.R * rp.L)
            throw InvalidParams("mask is not rectangular (rows 1..L times columns n-R+1..n)");
        for (VertexId i = 1; i <= static_cast<VertexId>(rp.L); ++i)
            if (m.degree(i) != rp.R)
                throw InvalidParams("mask is not rectangular (rows 1..L times columns n-R+1..n)");
    }
    if (params.ell) {
        rp.ell = *params.ell;
    } else if (rp.epsilon > kEpsilonFloor && params.delta > 0) {
        const double raw = std::ceil(3.0 / rp.epsilon + 1.0 / params.delta);
        if (!(raw < 1000000.0))
            throw InvalidParams(
                "threshold polynomial order diverges this close to the phase boundary; "
                "pass an explicit ell");
        rp.ell = static_cast<int>(raw);
    } else if (params.delta > 0) {
        rp.ell = static_cast<int>(std::ceil(1.0 / params.delta));
    } else {
        rp.ell = 1;
    }
    return rp;
}

namespace detail {

// Trial stream index layout: block << 32 | trial.
enum StreamBlock : std::uint64_t {
    kNullBlock = 0,
    kPlantedBlock = 1,
    kCalibrationBlock = 2,
    kMaskBlock = 3,
};

inline std::uint64_t stream_index(StreamBlock block, std::int64_t trial) {
    return (static_cast<std::uint64_t>(block) << 32) | static_cast<std::uint64_t>(trial);
}

template <class Fn>
void parallel_for(std::int64_t count, int threads, Fn&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || count < 2) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    const int workers = static_cast<int>(std::min<std::int64_t>(threads, count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::int64_t lo = count * w / workers;
            const std::int64_t hi = count * (w + 1) / workers;
            try {
                for (std::int64_t i = lo; i < hi; ++i) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct ExperimentSetup {
    SharedMask mask;
    RectMaskParams rp;
    ThresholdPolynomial tau;
};

inline ExperimentSetup build_experiment_setup(const ExperimentConfig& cfg) {
    const ProblemParams& params = cfg.params;
    params.validate();
    switch (cfg.mask_source) {
        case MaskSource::rectangular: {
            auto [rp, mask] =
                above_transition(params) ? rect_mask(params) : truncated_rect_mask(params);
            return {share_mask(std::move(mask)), rp, tau_poly(rp.ell)};
        }
        case MaskSource::file: {
            Mask mask = load_mask(cfg.mask_path);
            RectMaskParams rp = infer_rect_params(mask, params);
            return {share_mask(std::move(mask)), rp, tau_poly(rp.ell)};
        }
        case MaskSource::random_budget: {
            // A uniform random mask has no rectangle structure, so only the
            // ell = 0 member of the statistic family (a scaled edge sum) is
            // well defined; scale it as an L x R pseudo-rectangle.
            RngStream rng(cfg.master_seed, stream_index(kMaskBlock, 0));
            Mask mask = random_mask(static_cast<VertexId>(params.n), params.mask_budget(), rng);
            RectMaskParams rp;
            rp.n = static_cast<VertexId>(params.n);
            rp.epsilon = params.gamma - 3.0 * (0.5 - params.delta);
            rp.L = std::max<std::int64_t>(
                1, std::llround(std::sqrt(static_cast<double>(mask.edge_count()))));
            rp.R = std::max<std::int64_t>(1, mask.edge_count() / rp.L);
            rp.ell = 0;
            return {share_mask(std::move(mask)), rp, tau_poly(0)};
        }
    }
    throw InvalidParams("unknown mask source");
}

// Statistic of one observation. Rectangular sources go through f_stat; the
// random-mask edge sum uses the same scaling with row sums replaced by the
// total sum.
inline double experiment_statistic(const ExperimentConfig& cfg, const ExperimentSetup& setup,
                                   const MaskedGraph& y) {
    if (cfg.mask_source != MaskSource::random_budget)
        return f_stat(y, setup.rp, setup.tau, cfg.params).statistic;
    std::int64_t total = 0;
    for (std::int8_t v : y.values) total += v;
    const double scale = static_cast<double>(cfg.params.n) /
                         (static_cast<double>(cfg.params.k) * static_cast<double>(setup.rp.R));
    return scale * static_cast<double>(total);
}

} // namespace detail

// Balanced Monte Carlo separation experiment: cfg.trials samples under each
// hypothesis, detector verdicts against the configured threshold, and the
// empirical separation statistics.
inline SeparationReport run_experiment(const ExperimentConfig& cfg) {
    if (cfg.trials < 1) throw InvalidParams("trials must be >= 1");
    if (cfg.trials >= (std::int64_t{1} << 32)) throw InvalidParams("trials out of range");
    if (cfg.threshold_mode == ThresholdMode::null_quantile) {
        if (cfg.alpha <= 0.0 || cfg.alpha >= 1.0) throw InvalidParams("alpha must lie in (0, 1)");
        if (cfg.calibration_trials < 1) throw InvalidParams("calibration_trials must be >= 1");
    }
    const detail::ExperimentSetup setup = detail::build_experiment_setup(cfg);
    const VertexSet everyone = full_vertex_set(static_cast<VertexId>(cfg.params.n));

    auto null_trial = [&](std::uint64_t stream) {
        RngStream rng(cfg.master_seed, stream);
        const MaskedGraph y = sample_null(setup.mask, rng);
        return detail::experiment_statistic(cfg, setup, y);
    };
    auto planted_trial = [&](std::uint64_t stream) {
        RngStream rng(cfg.master_seed, stream);
        const auto [y, clique] = sample_planted(cfg.params, setup.mask, everyone, rng);
        return detail::experiment_statistic(cfg, setup, y);
    };

    std::vector<double> f_null(static_cast<std::size_t>(cfg.trials));
    std::vector<double> f_planted(static_cast<std::size_t>(cfg.trials));
    detail::parallel_for(cfg.trials, cfg.threads, [&](std::int64_t i) {
        f_null[static_cast<std::size_t>(i)] =
            null_trial(detail::stream_index(detail::kNullBlock, i));
        f_planted[static_cast<std::size_t>(i)] =
            planted_trial(detail::stream_index(detail::kPlantedBlock, i));
    });

    double threshold = midpoint_threshold(setup.rp, cfg.params);
    if (cfg.threshold_mode == ThresholdMode::null_quantile) {
        std::vector<double> calib(static_cast<std::size_t>(cfg.calibration_trials));
        detail::parallel_for(cfg.calibration_trials, cfg.threads, [&](std::int64_t i) {
            calib[static_cast<std::size_t>(i)] =
                null_trial(detail::stream_index(detail::kCalibrationBlock, i));
        });
        std::sort(calib.begin(), calib.end());
        const double pos = std::ceil((1.0 - cfg.alpha) * static_cast<double>(calib.size())) - 1.0;
        const std::size_t idx = static_cast<std::size_t>(
            std::clamp<double>(pos, 0.0, static_cast<double>(calib.size() - 1)));
        threshold = calib[idx];
    }

    auto mean_of = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (double x : xs) s += x;
        return s / static_cast<double>(xs.size());
    };
    auto var_of = [](const std::vector<double>& xs, double mean) {
        if (xs.size() < 2) return 0.0;
        double s = 0.0;
        for (double x : xs) s += (x - mean) * (x - mean);
        return s / static_cast<double>(xs.size() - 1);
    };

    SeparationReport rep;
    rep.trials = cfg.trials;
    rep.n = cfg.params.n;
    rep.k = cfg.params.k;
    rep.mask_edges = setup.mask.mask->edge_count();
    rep.gamma = cfg.params.gamma;
    rep.delta = cfg.params.delta;
    rep.threshold = threshold;
    rep.mean_null = mean_of(f_null);
    rep.mean_planted = mean_of(f_planted);
    rep.var_null = var_of(f_null, rep.mean_null);
    rep.var_planted = var_of(f_planted, rep.mean_planted);
    const double gap = std::abs(rep.mean_planted - rep.mean_null);
    const double spread = std::sqrt(std::max(rep.var_null, rep.var_planted));
    rep.sep_ratio = spread > 0.0 ? gap / spread
                                 : (gap > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    std::int64_t true_negatives = 0, true_positives = 0;
    for (double f : f_null) true_negatives += !(f > threshold);
    for (double f : f_planted) true_positives += (f > threshold);
    rep.accuracy = static_cast<double>(true_negatives + true_positives) /
                   static_cast<double>(2 * cfg.trials);
    return rep;
}

// ---------------------------------------------------------------------------
// Phase-diagram sweep.
// ---------------------------------------------------------------------------

struct SweepRow {
    double delta = 0.0, gamma = 0.0;
    double boundary_gamma = 0.0; // 3(1/2 - delta)
    SeparationReport report;
    std::optional<double> cond_bound;
    std::optional<double> prob_bound;
    std::string error; // empty on success
};

struct SweepResult {
    std::vector<SweepRow> rows;
};

inline SweepResult phase_sweep(std::span<const std::pair<double, double>> grid,
                               const ExperimentConfig& base) {
    if (grid.empty()) throw InvalidParams("sweep grid must be nonempty");
    SweepResult out;
    out.rows.reserve(grid.size());
    for (const auto& [delta, gamma] : grid) {
        SweepRow row;
        row.delta = delta;
        row.gamma = gamma;
        row.boundary_gamma = 3.0 * (0.5 - delta);
        try {
            ExperimentConfig cfg = base;
            cfg.params = ProblemParams::from_exponents(base.params.n, delta, gamma);
            cfg.params.ell = base.params.ell;
            cfg.params.degree_cap = base.params.degree_cap;
            row.report = run_experiment(cfg);
            if (gamma < row.boundary_gamma) {
                const detail::ExperimentSetup setup = detail::build_experiment_setup(cfg);
                const HardnessCertificate cert = certify_hardness(cfg.params, *setup.mask.mask);
                row.cond_bound = cert.cond_bound;
                row.prob_bound = cert.prob_bound;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        out.rows.push_back(std::move(row));
    }
    return out;
}

// ---------------------------------------------------------------------------
// CSV / SVG output.
// ---------------------------------------------------------------------------

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string csv_sanitize(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

inline const char* report_csv_header() {
    return "delta,gamma,n,k,mask_edges,trials,mean_null,mean_planted,var_null,var_planted,"
           "sep_ratio,accuracy,boundary_gamma,cond_bound,prob_bound,error";
}

inline std::string report_csv_row(const SweepRow& row) {
    const SeparationReport& r = row.report;
    std::string out;
    out += fmt_double(row.delta);
    out += ',';
    out += fmt_double(row.gamma);
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += std::to_string(r.k);
    out += ',';
    out += std::to_string(r.mask_edges);
    out += ',';
    out += std::to_string(r.trials);
    out += ',';
    out += fmt_double(r.mean_null);
    out += ',';
    out += fmt_double(r.mean_planted);
    out += ',';
    out += fmt_double(r.var_null);
    out += ',';
    out += fmt_double(r.var_planted);
    out += ',';
    out += fmt_double(r.sep_ratio);
    out += ',';
    out += fmt_double(r.accuracy);
    out += ',';
    out += fmt_double(row.boundary_gamma);
    out += ',';
    out += row.cond_bound ? fmt_double(*row.cond_bound) : std::string();
    out += ',';
    out += row.prob_bound ? fmt_double(*row.prob_bound) : std::string();
    out += ',';
    out += csv_sanitize(row.error);
    return out;
}

inline void write_sweep_csv(const SweepResult& sweep, std::ostream& os) {
    os << report_csv_header() << "\n";
    for (const auto& row : sweep.rows) os << report_csv_row(row) << "\n";
}

inline SweepRow report_as_row(const SeparationReport& rep) {
    SweepRow row;
    row.delta = rep.delta;
    row.gamma = rep.gamma;
    row.boundary_gamma = 3.0 * (0.5 - rep.delta);
    row.report = rep;
    return row;
}

// Accuracy heat map over the (gamma, delta) grid with the theoretical
// boundary gamma = 3(1/2 - delta) overlaid.
inline void write_sweep_svg(const SweepResult& sweep, std::ostream& os) {
    std::vector<double> deltas, gammas;
    for (const auto& row : sweep.rows) {
        deltas.push_back(row.delta);
        gammas.push_back(row.gamma);
    }
    std::sort(deltas.begin(), deltas.end());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    std::sort(gammas.begin(), gammas.end());
    gammas.erase(std::unique(gammas.begin(), gammas.end()), gammas.end());

    const double width = 640.0, height = 480.0;
    const double margin_l = 70.0, margin_b = 50.0, margin_t = 30.0, margin_r = 30.0;
    const double plot_w = width - margin_l - margin_r;
    const double plot_h = height - margin_t - margin_b;
    const double g_lo = gammas.front(), g_hi = gammas.back();
    const double d_lo = deltas.front(), d_hi = deltas.back();
    const double g_span = std::max(1e-9, g_hi - g_lo);
    const double d_span = std::max(1e-9, d_hi - d_lo);
    const double cell_w = plot_w / static_cast<double>(gammas.size());
    const double cell_h = plot_h / static_cast<double>(deltas.size());

    auto x_of = [&](double gamma) {
        return margin_l + (gamma - g_lo) / g_span * (plot_w - cell_w) + cell_w / 2.0;
    };
    auto y_of = [&](double delta) {
        return margin_t + plot_h - ((delta - d_lo) / d_span * (plot_h - cell_h) + cell_h / 2.0);
    };

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
       << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (const auto& row : sweep.rows) {
        const double cx = x_of(row.gamma), cy = y_of(row.delta);
        std::string fill = "#cccccc";
        if (row.error.empty()) {
            const double a = std::clamp(row.report.accuracy, 0.5, 1.0);
            const double mix = (a - 0.5) / 0.5; // 0 = chance, 1 = perfect
            const int red = static_cast<int>(220 - 160 * mix);
            const int green = static_cast<int>(80 + 150 * mix);
            char buf[16];
            std::snprintf(buf, sizeof(buf), "#%02x%02x50", red, green);
            fill = buf;
        }
        os << "<rect x=\"" << cx - cell_w / 2.0 << "\" y=\"" << cy - cell_h / 2.0 << "\" width=\""
           << cell_w << "\" height=\"" << cell_h << "\" fill=\"" << fill
           << "\" stroke=\"#888\"/>\n";
        if (row.error.empty()) {
            char label[16];
            std::snprintf(label, sizeof(label), "%.2f", row.report.accuracy);
            os << "<text x=\"" << cx << "\" y=\"" << cy + 4 << "\" font-size=\"11\" "
               << "text-anchor=\"middle\" font-family=\"monospace\">" << label << "</text>\n";
        }
    }
    // Theoretical boundary gamma = 3(1/2 - delta).
    os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"6 3\" points=\"";
    const int segments = 64;
    for (int i = 0; i <= segments; ++i) {
        const double delta = d_lo + (d_hi - d_lo) * i / segments;
        const double gamma = 3.0 * (0.5 - delta);
        if (gamma < g_lo || gamma > g_hi) continue;
        os << x_of(gamma) << "," << y_of(delta) << " ";
    }
    os << "\"/>\n";
    os << "<text x=\"" << margin_l + plot_w / 2 << "\" y=\"" << height - 12
       << "\" font-size=\"14\" text-anchor=\"middle\">gamma (mask size exponent)</text>\n";
    os << "<text x=\"18\" y=\"" << margin_t + plot_h / 2
       << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
       << margin_t + plot_h / 2 << ")\">delta (clique size exponent)</text>\n";
    os << "<text x=\"" << margin_l + plot_w / 2 << "\" y=\"18\" font-size=\"14\" "
       << "text-anchor=\"middle\">detection accuracy; dashed: gamma = 3(1/2 - delta)</text>\n";
    os << "</svg>\n";
}

} // namespace cliquemask
