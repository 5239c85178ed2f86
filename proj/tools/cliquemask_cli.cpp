// cliquemask_cli.cpp — command-line harness: mask generation and transforms,
// sampling, likelihood-ratio bounds, hardness certificates, detection, and
// the separation / phase-diagram experiments.
//
// Exit codes: 0 success, 2 invalid parameters, 3 parse error, 4 resource limit.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cliquemask/harness.hpp"

namespace cm = cliquemask;
using nlohmann::json;

namespace {

struct GlobalOpts {
    std::uint64_t seed = 1;
    int threads = 1;
    std::string out;
    std::string format = "csv";
};

std::ostream& open_out(const GlobalOpts& g, std::ofstream& file) {
    if (g.out.empty()) return std::cout;
    file.open(g.out);
    if (!file) throw cm::ParseError("cannot open output file '" + g.out + "'");
    return file;
}

// Flat key/value record rendered as two CSV lines or one JSON object.
struct Record {
    std::vector<std::pair<std::string, std::string>> text;
    json obj = json::object();

    void add(const std::string& key, const std::string& value) {
        text.emplace_back(key, value);
        obj[key] = value;
    }
    void add(const std::string& key, double value) {
        text.emplace_back(key, cm::fmt_double(value));
        obj[key] = value;
    }
    void add(const std::string& key, std::int64_t value) {
        text.emplace_back(key, std::to_string(value));
        obj[key] = value;
    }
    void add_json(const std::string& key, json value) { obj[key] = std::move(value); }

    void print(const GlobalOpts& g, std::ostream& os) const {
        if (g.format == "json") {
            os << obj.dump(2) << "\n";
            return;
        }
        for (std::size_t i = 0; i < text.size(); ++i)
            os << text[i].first << (i + 1 < text.size() ? "," : "\n");
        for (std::size_t i = 0; i < text.size(); ++i)
            os << text[i].second << (i + 1 < text.size() ? "," : "\n");
    }
};

// Shared problem-size flags. Either --k or --delta must pin the clique size.
struct ParamFlags {
    std::int64_t n = 0;
    std::int64_t k = 0;
    double delta = std::numeric_limits<double>::quiet_NaN();
    double gamma = std::numeric_limits<double>::quiet_NaN();
    int degree_cap = -1;
    int ell = -1;

    void attach(CLI::App* sub, bool need_gamma = false, bool need_n = true) {
        auto* n_opt = sub->add_option("--n", n, "ground set size");
        if (need_n) n_opt->required();
        sub->add_option("--k", k, "clique size (alternative to --delta)");
        sub->add_option("--delta", delta, "signal exponent: k = round(n^(1/2+delta))");
        auto* g = sub->add_option("--gamma", gamma, "query exponent: mask budget = round(n^gamma)");
        if (need_gamma) g->required();
        sub->add_option("--degree-cap", degree_cap,
                        "polynomial degree D (default: ceil((ln n)^2 / ln ln n))");
        sub->add_option("--ell", ell, "threshold polynomial order override");
    }

    cm::ProblemParams to_params() const {
        cm::ProblemParams p;
        if (k > 0) {
            p = cm::ProblemParams::from_counts(n, k);
            if (!std::isnan(delta)) p.delta = delta;
        } else if (!std::isnan(delta)) {
            p = cm::ProblemParams::from_exponents(n, delta, std::isnan(gamma) ? 0.0 : gamma);
        } else {
            throw cm::InvalidParams("one of --k or --delta is required");
        }
        if (!std::isnan(gamma)) p.gamma = gamma;
        if (degree_cap >= 0) p.degree_cap = degree_cap;
        if (ell >= 0) p.ell = ell;
        p.validate();
        return p;
    }
};

// "1,3,7-9" -> {1,3,7,8,9}
cm::VertexSet parse_subset(const std::string& text, cm::VertexId n) {
    cm::VertexSet out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        const auto dash = item.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(static_cast<cm::VertexId>(std::stol(item)));
            } else {
                const long lo = std::stol(item.substr(0, dash));
                const long hi = std::stol(item.substr(dash + 1));
                for (long v = lo; v <= hi; ++v) out.push_back(static_cast<cm::VertexId>(v));
            }
        } catch (const std::exception&) {
            throw cm::InvalidParams("cannot parse subset element '" + item + "'");
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    cm::check_vertex_subset(out, n);
    return out;
}

// "lo:hi:count" (inclusive linspace) or explicit "a,b,c".
std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        double lo = 0, hi = 0;
        int count = 0;
        if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
            throw cm::InvalidParams("grid must be 'lo:hi:count' or a comma list");
        for (int i = 0; i < count; ++i)
            out.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1));
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stod(item));
    if (out.empty()) throw cm::InvalidParams("empty grid");
    return out;
}

json ldub_to_json(const cm::LdubValue& v) {
    json j;
    j["value"] = v.value;
    switch (v.mode) {
        case cm::LdubMode::exact_rational: j["mode"] = "exact-rational"; break;
        case cm::LdubMode::monte_carlo: j["mode"] = "monte-carlo"; break;
        case cm::LdubMode::analytic_bound: j["mode"] = "analytic-bound"; break;
    }
    if (v.mode == cm::LdubMode::exact_rational) {
        j["value_rational"] = v.exact_value.str();
        json terms = json::array();
        for (const auto& t : v.exact_terms) terms.push_back(t.str());
        j["per_degree_terms_rational"] = terms;
    }
    j["per_degree_terms"] = v.per_degree_terms;
    if (v.mode == cm::LdubMode::monte_carlo) {
        j["std_error"] = v.std_error;
        j["per_degree_std_errors"] = v.per_degree_std_errors;
    }
    return j;
}

void record_ldub(Record& rec, const cm::LdubValue& v) {
    rec.add("value", v.value);
    if (v.mode == cm::LdubMode::exact_rational)
        rec.add("value_rational", v.exact_value.str());
    if (v.mode == cm::LdubMode::monte_carlo) rec.add("std_error", v.std_error);
    rec.add_json("detail", ldub_to_json(v));
}

int run_cli(int argc, char** argv) {
    GlobalOpts g;
    CLI::App app{"planted-clique detection experiments on masked random graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", g.seed, "master RNG seed");
    app.add_option("--threads", g.threads, "worker threads for experiment trials");
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--format", g.format, "csv|json")
        ->check(CLI::IsMember({"csv", "json"}));

    // gen-mask ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen-mask", "generate a rectangular or random mask file");
    ParamFlags gen_params;
    std::string gen_type = "rectangular";
    std::int64_t gen_edges = -1;
    gen->add_option("--type", gen_type, "rectangular|random")
        ->check(CLI::IsMember({"rectangular", "random"}));
    gen_params.attach(gen);
    gen->add_option("--edges", gen_edges, "edge budget (random; default round(n^gamma))");
    gen->callback([&] {
        const cm::ProblemParams params = gen_params.to_params();
        std::ofstream file;
        std::ostream& os = open_out(g, file);
        if (gen_type == "rectangular") {
            auto [rp, mask] = cm::above_transition(params) ? cm::rect_mask(params)
                                                           : cm::truncated_rect_mask(params);
            os << "# rectangular mask: R=" << rp.R << " L=" << rp.L << " ell=" << rp.ell
               << " epsilon=" << cm::fmt_double(rp.epsilon) << "\n";
            cm::save_mask(mask, os);
        } else {
            const std::int64_t budget = gen_edges >= 0 ? gen_edges : params.mask_budget();
            cm::RngStream rng(g.seed, 0);
            const cm::Mask mask =
                cm::random_mask(static_cast<cm::VertexId>(params.n), budget, rng);
            os << "# random mask: edges=" << mask.edge_count() << "\n";
            cm::save_mask(mask, os);
        }
    });

    // sample -----------------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "sample a null or planted observation on a mask");
    std::string sample_mask_path, sample_model = "null";
    ParamFlags sample_params;
    sample->add_option("--mask", sample_mask_path, "mask file")->required();
    sample->add_option("--model", sample_model, "null|planted")
        ->check(CLI::IsMember({"null", "planted"}));
    sample_params.attach(sample, /*need_gamma=*/false, /*need_n=*/false);
    sample->callback([&] {
        const cm::Mask mask = cm::load_mask(sample_mask_path);
        std::ofstream file;
        std::ostream& os = open_out(g, file);
        cm::RngStream rng(g.seed, 0);
        if (sample_model == "null") {
            const cm::MaskedGraph y = cm::sample_null(mask, rng);
            cm::save_observation(y, os);
        } else {
            if (sample_params.n == 0) sample_params.n = mask.n();
            const cm::ProblemParams params = sample_params.to_params();
            if (params.n != mask.n())
                throw cm::InvalidParams("--n does not match the mask ground set");
            const cm::VertexSet everyone = cm::full_vertex_set(mask.n());
            const auto [y, clique] = cm::sample_planted(params, mask, everyone, rng);
            cm::save_observation(y, os, &clique);
        }
    });

    // donate -----------------------------------------------------------------
    auto* don = app.add_subcommand("donate", "rewire a mask by donating edges from one vertex to another");
    std::string don_mask;
    cm::VertexId don_v = 0, don_u = 0;
    don->add_option("--mask", don_mask, "mask file")->required();
    don->add_option("--from", don_v, "donating vertex v")->required();
    don->add_option("--to", don_u, "receiving vertex u")->required();
    don->callback([&] {
        const cm::Mask mask = cm::load_mask(don_mask);
        const cm::Mask out = cm::donate(mask, don_v, don_u);
        std::ofstream file;
        std::ostream& os = open_out(g, file);
        cm::save_mask(out, os);
    });

    // reduce -----------------------------------------------------------------
    auto* red = app.add_subcommand("reduce", "iteratively remove vertices while preserving edges");
    std::string red_mask, red_out_mask;
    int red_t = 1;
    red->add_option("--mask", red_mask, "mask file")->required();
    red->add_option("--t", red_t, "degree parameter t (max degree must be <= 2t)")->required();
    red->add_option("--out-mask", red_out_mask, "write the reduced mask here");
    red->callback([&] {
        const cm::Mask mask = cm::load_mask(red_mask);
        const auto [reduced, trace] = cm::reduce_mask(mask, red_t);
        if (!red_out_mask.empty()) cm::save_mask(reduced, red_out_mask);
        Record rec;
        rec.add("t", static_cast<std::int64_t>(trace.t));
        rec.add("steps", static_cast<std::int64_t>(trace.steps.size()));
        rec.add("final_vertex_count", trace.final_vertex_count);
        rec.add("edge_count", reduced.edge_count());
        rec.add("max_degree", static_cast<std::int64_t>(reduced.max_degree()));
        json steps = json::array();
        for (const auto& s : trace.steps)
            steps.push_back({{"removed_vertex", s.removed_vertex},
                             {"vertex_count_after", s.vertex_count_after},
                             {"edge_count_after", s.edge_count_after},
                             {"max_degree_after", s.max_degree_after}});
        rec.add_json("trace", steps);
        std::ofstream file;
        rec.print(g, open_out(g, file));
    });

    // restrict ---------------------------------------------------------------
    auto* res = app.add_subcommand("restrict", "restrict a mask to a vertex subset (relabeled)");
    std::string res_mask, res_subset;
    res->add_option("--mask", res_mask, "mask file")->required();
    res->add_option("--subset", res_subset, "vertices, e.g. '1,3,7-9'")->required();
    res->callback([&] {
        const cm::Mask mask = cm::load_mask(res_mask);
        const cm::VertexSet s = parse_subset(res_subset, mask.n());
        const cm::MaskRestriction r = cm::restrict_mask(mask, s);
        std::ofstream file;
        std::ostream& os = open_out(g, file);
        os << "# restriction: n_prime=" << r.n_prime << " edges=" << r.mask.edge_count() << "\n";
        os << "# phi:";
        for (cm::VertexId i = 1; i <= r.n_prime; ++i)
            os << " " << i << "->" << r.phi[static_cast<std::size_t>(i) - 1];
        os << "\n";
        cm::save_mask(r.mask, os);
    });

    // ldub-exact / ldub-mc / bound --------------------------------------------
    auto* lde = app.add_subcommand("ldub-exact", "exact rational likelihood-ratio upper bound");
    std::string lde_mask, lde_subset;
    ParamFlags lde_params;
    std::int64_t lde_cap = 100000000;
    lde->add_option("--mask", lde_mask, "mask file")->required();
    lde_params.attach(lde);
    lde->add_option("--subset", lde_subset, "conditioning subset S (default: all of [n])");
    lde->add_option("--pair-cap", lde_cap, "enumeration budget in subset pairs");
    lde->callback([&] {
        const cm::Mask mask = cm::load_mask(lde_mask);
        const cm::ProblemParams params = lde_params.to_params();
        if (params.n != mask.n()) throw cm::InvalidParams("--n does not match the mask ground set");
        const cm::VertexSet s = lde_subset.empty() ? cm::full_vertex_set(mask.n())
                                                   : parse_subset(lde_subset, mask.n());
        const cm::LdubValue v = cm::ldub_exact(params, mask, s, lde_cap);
        Record rec;
        record_ldub(rec, v);
        std::ofstream file;
        rec.print(g, open_out(g, file));
    });

    auto* ldm = app.add_subcommand("ldub-mc", "Monte Carlo likelihood-ratio upper bound");
    std::string ldm_mask, ldm_subset;
    ParamFlags ldm_params;
    std::int64_t ldm_trials = 100000;
    ldm->add_option("--mask", ldm_mask, "mask file")->required();
    ldm_params.attach(ldm);
    ldm->add_option("--subset", ldm_subset, "conditioning subset S (default: all of [n])");
    ldm->add_option("--trials", ldm_trials, "Monte Carlo trials");
    ldm->callback([&] {
        const cm::Mask mask = cm::load_mask(ldm_mask);
        const cm::ProblemParams params = ldm_params.to_params();
        if (params.n != mask.n()) throw cm::InvalidParams("--n does not match the mask ground set");
        const cm::VertexSet s = ldm_subset.empty() ? cm::full_vertex_set(mask.n())
                                                   : parse_subset(ldm_subset, mask.n());
        cm::RngStream rng(g.seed, 0);
        const cm::LdubValue v = cm::ldub_mc(params, mask, s, ldm_trials, rng);
        Record rec;
        record_ldub(rec, v);
        std::ofstream file;
        rec.print(g, open_out(g, file));
    });

    auto* bnd = app.add_subcommand("bound", "analytic few-vertex bound on the likelihood ratio");
    ParamFlags bnd_params;
    double bnd_vertices = 0;
    bnd_params.attach(bnd);
    bnd->add_option("--vertex-count", bnd_vertices, "mask support size |V(M)|")->required();
    bnd->callback([&] {
        const cm::ProblemParams params = bnd_params.to_params();
        const cm::LdubValue v = cm::analytic_vertex_bound(params, bnd_vertices);
        Record rec;
        record_ldub(rec, v);
        std::ofstream file;
        rec.print(g, open_out(g, file));
    });

    // certify ----------------------------------------------------------------
    auto* cert = app.add_subcommand("certify", "hardness certificate for a mask");
    std::string cert_mask;
    ParamFlags cert_params;
    cert->add_option("--mask", cert_mask, "mask file")->required();
    cert_params.attach(cert);
    cert->callback([&] {
        const cm::Mask mask = cm::load_mask(cert_mask);
        const cm::ProblemParams params = cert_params.to_params();
        if (params.n != mask.n()) throw cm::InvalidParams("--n does not match the mask ground set");
        const cm::HardnessCertificate c = cm::certify_hardness(params, mask);
        Record rec;
        rec.add("t", c.t);
        rec.add("grow", c.grow);
        rec.add("s_size", static_cast<std::int64_t>(c.n_prime));
        rec.add("restricted_edges", c.restricted_edges);
        rec.add("prob_bound", c.prob_bound);
        rec.add("v_max", c.v_max);
        rec.add("cond_bound", c.cond_bound);
        rec.add_json("bound_detail", ldub_to_json(c.bound_detail));
        std::ofstream file;
        rec.print(g, open_out(g, file));
    });

    // detect -----------------------------------------------------------------
    auto* det = app.add_subcommand("detect", "run the detector on an observation file");
    std::string det_obs;
    ParamFlags det_params;
    double det_threshold = std::numeric_limits<double>::quiet_NaN();
    det->add_option("--obs", det_obs, "observation file (rectangular mask)")->required();
    det_params.attach(det);
    det->add_option("--threshold", det_threshold, "decision threshold (default: midpoint Lk/2n)");
    det->callback([&] {
        const cm::MaskedGraph y = cm::load_observation(det_obs);
        const cm::ProblemParams params = det_params.to_params();
        if (!y.mask || params.n != y.mask->n())
            throw cm::InvalidParams("--n does not match the observation ground set");
        const cm::RectMaskParams rp = cm::infer_rect_params(*y.mask, params);
        const cm::ThresholdPolynomial tau = cm::tau_poly(rp.ell);
        std::optional<double> thr;
        if (!std::isnan(det_threshold)) thr = det_threshold;
        const cm::DetectionOutcome out = cm::detect(y, rp, tau, params, thr);
        Record rec;
        rec.add("statistic", out.statistic);
        rec.add("threshold", out.threshold);
        rec.add("verdict", out.verdict == cm::Verdict::planted ? std::string("planted")
                                                               : std::string("null"));
        rec.add("ell", static_cast<std::int64_t>(rp.ell));
        rec.add("L", rp.L);
        rec.add("R", rp.R);
        rec.add_json("per_vertex_g", json(out.per_vertex_g));
        std::ofstream file;
        rec.print(g, open_out(g, file));
    });

    // run ---------------------------------------------------------------------
    auto* run = app.add_subcommand("run", "separation experiment at one (delta, gamma) point");
    ParamFlags run_params;
    std::string run_source = "rectangular", run_mask_path, run_threshold_mode = "midpoint";
    std::int64_t run_trials = 100;
    double run_alpha = 0.05;
    run_params.attach(run, /*need_gamma=*/true);
    run->add_option("--trials", run_trials, "trials per hypothesis");
    run->add_option("--mask-source", run_source, "rectangular|file|random")
        ->check(CLI::IsMember({"rectangular", "file", "random"}));
    run->add_option("--mask", run_mask_path, "mask file (for --mask-source file)");
    run->add_option("--threshold-mode", run_threshold_mode, "midpoint|quantile")
        ->check(CLI::IsMember({"midpoint", "quantile"}));
    run->add_option("--alpha", run_alpha, "quantile level for threshold-mode=quantile");
    run->callback([&] {
        cm::ExperimentConfig cfg;
        cfg.params = run_params.to_params();
        cfg.trials = run_trials;
        cfg.master_seed = g.seed;
        cfg.threads = g.threads;
        cfg.alpha = run_alpha;
        cfg.mask_path = run_mask_path;
        cfg.threshold_mode = run_threshold_mode == "quantile" ? cm::ThresholdMode::null_quantile
                                                              : cm::ThresholdMode::midpoint;
        cfg.mask_source = run_source == "file"     ? cm::MaskSource::file
                          : run_source == "random" ? cm::MaskSource::random_budget
                                                   : cm::MaskSource::rectangular;
        const cm::SeparationReport rep = cm::run_experiment(cfg);
        cm::SweepRow row = cm::report_as_row(rep);
        if (cfg.params.gamma < row.boundary_gamma) {
            const auto setup = cm::detail::build_experiment_setup(cfg);
            const cm::HardnessCertificate c = cm::certify_hardness(cfg.params, *setup.mask.mask);
            row.cond_bound = c.cond_bound;
            row.prob_bound = c.prob_bound;
        }
        std::ofstream file;
        std::ostream& os = open_out(g, file);
        if (g.format == "json") {
            json j;
            j["delta"] = rep.delta;
            j["gamma"] = rep.gamma;
            j["n"] = rep.n;
            j["k"] = rep.k;
            j["mask_edges"] = rep.mask_edges;
            j["trials"] = rep.trials;
            j["mean_null"] = rep.mean_null;
            j["mean_planted"] = rep.mean_planted;
            j["var_null"] = rep.var_null;
            j["var_planted"] = rep.var_planted;
            j["sep_ratio"] = rep.sep_ratio;
            j["accuracy"] = rep.accuracy;
            j["threshold"] = rep.threshold;
            j["boundary_gamma"] = row.boundary_gamma;
            if (row.cond_bound) j["cond_bound"] = *row.cond_bound;
            if (row.prob_bound) j["prob_bound"] = *row.prob_bound;
            os << j.dump(2) << "\n";
        } else {
            os << cm::report_csv_header() << "\n" << cm::report_csv_row(row) << "\n";
        }
    });

    // sweep -------------------------------------------------------------------
    auto* sweep = app.add_subcommand("sweep", "phase-diagram sweep over a (delta, gamma) grid");
    std::int64_t sweep_n = 0, sweep_trials = 100;
    std::string sweep_deltas, sweep_gammas, sweep_svg, sweep_threshold_mode = "midpoint";
    int sweep_ell = -1, sweep_degree_cap = -1;
    sweep->add_option("--n", sweep_n, "ground set size")->required();
    sweep->add_option("--delta-grid", sweep_deltas, "'lo:hi:count' or comma list")->required();
    sweep->add_option("--gamma-grid", sweep_gammas, "'lo:hi:count' or comma list")->required();
    sweep->add_option("--trials", sweep_trials, "trials per hypothesis per point");
    sweep->add_option("--svg", sweep_svg, "also write an accuracy heat map SVG here");
    sweep->add_option("--ell", sweep_ell, "threshold polynomial order override");
    sweep->add_option("--degree-cap", sweep_degree_cap, "degree cap for certificates");
    sweep->add_option("--threshold-mode", sweep_threshold_mode, "midpoint|quantile")
        ->check(CLI::IsMember({"midpoint", "quantile"}));
    sweep->callback([&] {
        const std::vector<double> deltas = parse_grid(sweep_deltas);
        const std::vector<double> gammas = parse_grid(sweep_gammas);
        std::vector<std::pair<double, double>> grid;
        for (double d : deltas)
            for (double gm : gammas) grid.emplace_back(d, gm);
        cm::ExperimentConfig base;
        base.params = cm::ProblemParams::from_exponents(sweep_n, deltas.front(), gammas.front());
        if (sweep_ell >= 0) base.params.ell = sweep_ell;
        if (sweep_degree_cap >= 0) base.params.degree_cap = sweep_degree_cap;
        base.trials = sweep_trials;
        base.master_seed = g.seed;
        base.threads = g.threads;
        base.threshold_mode = sweep_threshold_mode == "quantile"
                                  ? cm::ThresholdMode::null_quantile
                                  : cm::ThresholdMode::midpoint;
        const cm::SweepResult result = cm::phase_sweep(grid, base);
        std::ofstream file;
        std::ostream& os = open_out(g, file);
        if (g.format == "json") {
            json rows = json::array();
            for (const auto& row : result.rows) {
                json j;
                j["delta"] = row.delta;
                j["gamma"] = row.gamma;
                j["boundary_gamma"] = row.boundary_gamma;
                j["error"] = row.error;
                if (row.error.empty()) {
                    j["accuracy"] = row.report.accuracy;
                    j["sep_ratio"] = row.report.sep_ratio;
                    j["mean_null"] = row.report.mean_null;
                    j["mean_planted"] = row.report.mean_planted;
                    j["var_null"] = row.report.var_null;
                    j["var_planted"] = row.report.var_planted;
                    j["mask_edges"] = row.report.mask_edges;
                    j["k"] = row.report.k;
                }
                if (row.cond_bound) j["cond_bound"] = *row.cond_bound;
                if (row.prob_bound) j["prob_bound"] = *row.prob_bound;
                rows.push_back(std::move(j));
            }
            os << rows.dump(2) << "\n";
        } else {
            cm::write_sweep_csv(result, os);
        }
        if (!sweep_svg.empty()) {
            std::ofstream svg(sweep_svg);
            if (!svg) throw cm::ParseError("cannot open output file '" + sweep_svg + "'");
            cm::write_sweep_svg(result, svg);
        }
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cm::exit_code_for(e);
    }
}
