// detector.hpp — the degree-counting detector on rectangular masks: the
// threshold polynomial tau_ell, rectangular mask construction, the separating
// statistic f, the decision rule, and a full-observation max-degree baseline.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cliquemask/core.hpp"
#include "cliquemask/errors.hpp"
#include "cliquemask/rational.hpp"

namespace cliquemask {

// tau_ell(y) = (2l+1) C(2l,l) ∫_0^y t^l (1-t)^l dt, expanded to exact rational
// coefficients. Degree 2l+1; tau(0) = 0, tau(1) = 1, tau(y) + tau(1-y) = 1.
struct ThresholdPolynomial {
    int ell = 0;
    std::vector<BigRat> coefficients; // index = power of y, size 2*ell + 2
    std::vector<double> coefficients_dbl;

    int degree() const { return 2 * ell + 1; }

    // Horner evaluation in double precision.
    double operator()(double y) const {
        double acc = 0.0;
        for (std::size_t i = coefficients_dbl.size(); i-- > 0;)
            acc = acc * y + coefficients_dbl[i];
        return acc;
    }

    BigRat eval_exact(const BigRat& y) const {
        BigRat acc = 0;
        for (std::size_t i = coefficients.size(); i-- > 0;)
            acc = acc * y + coefficients[i];
        return acc;
    }
};

inline ThresholdPolynomial tau_poly(int ell, int ell_cap = 60) {
    if (ell < 0) throw InvalidParams("ell must be >= 0");
    if (ell > ell_cap)
        throw ResourceLimit("ell = " + std::to_string(ell) + " exceeds the evaluation cap " +
                            std::to_string(ell_cap));
    ThresholdPolynomial tau;
    tau.ell = ell;
    tau.coefficients.assign(static_cast<std::size_t>(2 * ell + 2), BigRat(0));
    const BigInt scale = BigInt(2 * ell + 1) * big_binomial(2 * ell, ell);
    for (int m = 0; m <= ell; ++m) {
        BigInt numer = scale * big_binomial(ell, m);
        if (m % 2 == 1) numer = -numer;
        tau.coefficients[static_cast<std::size_t>(ell + m + 1)] = BigRat(numer, BigInt(ell + m + 1));
    }
    tau.coefficients_dbl.reserve(tau.coefficients.size());
    for (const auto& c : tau.coefficients) tau.coefficients_dbl.push_back(to_double(c));
    return tau;
}

// Rectangular mask V_L x V_R with V_L = {1..L}, V_R = {n-R+1..n}.
struct RectMaskParams {
    VertexId n = 0;
    double epsilon = 0.0; // gamma - 3(1/2 - delta)
    std::int64_t R = 0;
    std::int64_t L = 0;
    int ell = 0;

    VertexId right_begin() const { return static_cast<VertexId>(n - R + 1); }
    std::int64_t edge_budget() const { return R * L; }
};

namespace detail {

inline Mask build_rect(const RectMaskParams& rp) {
    Mask m(rp.n);
    for (VertexId i = 1; i <= static_cast<VertexId>(rp.L); ++i)
        for (VertexId j = rp.right_begin(); j <= rp.n; ++j) m.add_edge(i, j);
    return m;
}

} // namespace detail

// gamma - 3(1/2 - delta) is a difference of doubles; treat anything inside
// the noise floor as sitting on the boundary.
inline constexpr double kEpsilonFloor = 1e-12;

inline double transition_gap(const ProblemParams& params) {
    return params.gamma - 3.0 * (0.5 - params.delta);
}

inline bool above_transition(const ProblemParams& params) {
    return transition_gap(params) > kEpsilonFloor;
}

// The above-threshold construction: R = min{ceil((n/k)^2 n^{2eps/3}),
// ceil(n/2)}, L = ceil(sqrt(R)), ell = ceil(3/eps + 1/delta) unless overridden.
inline std::pair<RectMaskParams, Mask> rect_mask(const ProblemParams& params) {
    params.validate();
    const double eps = transition_gap(params);
    if (!above_transition(params))
        throw InvalidParams("below the phase transition: gamma <= 3(1/2 - delta)");
    const double n = static_cast<double>(params.n);
    const double nk = n / static_cast<double>(params.k);
    RectMaskParams rp;
    rp.n = static_cast<VertexId>(params.n);
    rp.epsilon = eps;
    rp.R = std::min<std::int64_t>(
        static_cast<std::int64_t>(std::ceil(nk * nk * std::pow(n, 2.0 * eps / 3.0))),
        static_cast<std::int64_t>(std::ceil(n / 2.0)));
    rp.L = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(rp.R))));
    if (rp.L + rp.R > params.n)
        throw InvalidParams("rectangular mask does not fit: L + R > n");
    if (params.ell) {
        rp.ell = *params.ell;
    } else {
        const double raw = std::ceil(3.0 / eps + 1.0 / params.delta);
        if (!(raw < 1000000.0))
            throw InvalidParams(
                "threshold polynomial order diverges this close to the phase boundary; "
                "pass an explicit ell");
        rp.ell = static_cast<int>(raw);
    }
    return {rp, detail::build_rect(rp)};
}

// Budget-matched fallback used below the phase transition (eps <= 0): keep the
// row width R near (n/k)^2 so single-vertex degree estimates stay meaningful
// and spend the remaining budget round(n^gamma) on rows; ell falls back to
// ceil(1/delta) since the above-threshold formula has no meaning here.
inline std::pair<RectMaskParams, Mask> truncated_rect_mask(const ProblemParams& params) {
    params.validate();
    const std::int64_t budget = std::max<std::int64_t>(1, params.mask_budget());
    const double nk = static_cast<double>(params.n) / static_cast<double>(params.k);
    RectMaskParams rp;
    rp.n = static_cast<VertexId>(params.n);
    rp.epsilon = params.gamma - 3.0 * (0.5 - params.delta);
    rp.R = std::min<std::int64_t>(budget, static_cast<std::int64_t>(std::ceil(nk * nk)));
    rp.R = std::max<std::int64_t>(1, std::min<std::int64_t>(rp.R, params.n - 1));
    rp.L = std::max<std::int64_t>(1, budget / rp.R);
    rp.R = std::max<std::int64_t>(1, budget / rp.L);
    if (rp.L + rp.R > params.n) {
        rp.L = std::max<std::int64_t>(1, params.n - rp.R);
        if (rp.L + rp.R > params.n)
            throw InvalidParams("mask budget does not fit the ground set");
    }
    if (params.ell)
        rp.ell = *params.ell;
    else if (params.delta > 0)
        rp.ell = static_cast<int>(std::ceil(1.0 / params.delta));
    else
        rp.ell = 1;
    return {rp, detail::build_rect(rp)};
}

enum class Verdict { null_model, planted };

struct DetectionOutcome {
    double statistic = 0.0;
    double threshold = 0.0;
    Verdict verdict = Verdict::null_model;
    std::vector<double> per_vertex_g;
};

// Midpoint between the asymptotic null mean (~0) and planted mean (~Lk/n).
inline double midpoint_threshold(const RectMaskParams& rp, const ProblemParams& params) {
    return static_cast<double>(rp.L) * static_cast<double>(params.k) /
           (2.0 * static_cast<double>(params.n));
}

// f(Y) = sum_{i in V_L} tau((n/k) (1/R) sum_{j in V_R} Y_ij). The observation
// must live exactly on the rectangle described by rp.
inline DetectionOutcome f_stat(const MaskedGraph& y, const RectMaskParams& rp,
                               const ThresholdPolynomial& tau, const ProblemParams& params,
                               std::optional<double> threshold = std::nullopt) {
    params.validate();
    if (!y.mask || y.mask->n() != rp.n || params.n != rp.n)
        throw InvalidParams("observation ground set does not match the rectangle");
    if (static_cast<std::int64_t>(y.edge_list().size()) != rp.R * rp.L)
        throw InvalidParams("observation is not the given rectangle: edge count mismatch");
    const VertexId right_begin = rp.right_begin();
    std::vector<std::int64_t> row_sum(static_cast<std::size_t>(rp.L), 0);
    for (std::size_t idx = 0; idx < y.edge_list().size(); ++idx) {
        const auto [a, b] = y.edge_list()[idx];
        if (a < 1 || a > static_cast<VertexId>(rp.L) || b < right_begin || b > rp.n)
            throw InvalidParams("observation is not the given rectangle: stray edge");
        row_sum[static_cast<std::size_t>(a) - 1] += y.values[idx];
    }
    DetectionOutcome out;
    out.per_vertex_g.resize(static_cast<std::size_t>(rp.L));
    const double scale = rp.R > 0 ? static_cast<double>(params.n) /
                                        (static_cast<double>(params.k) * static_cast<double>(rp.R))
                                  : 0.0;
    double f = 0.0;
    for (std::size_t i = 0; i < out.per_vertex_g.size(); ++i) {
        const double g = scale * static_cast<double>(row_sum[i]);
        out.per_vertex_g[i] = g;
        f += tau(g);
    }
    out.statistic = f;
    out.threshold = threshold ? *threshold : midpoint_threshold(rp, params);
    out.verdict = out.statistic > out.threshold ? Verdict::planted : Verdict::null_model;
    return out;
}

// Decision entry point: planted iff f(Y) > L k / (2n) (or a caller-supplied
// threshold, e.g. a null-calibrated quantile).
inline DetectionOutcome detect(const MaskedGraph& y, const RectMaskParams& rp,
                               const ThresholdPolynomial& tau, const ProblemParams& params,
                               std::optional<double> threshold = std::nullopt) {
    return f_stat(y, rp, tau, params, threshold);
}

// Max-degree reference detector on a fully observed graph: planted iff
// max_v deg(v) > n/2 + c sqrt(n ln n) with c = 1. per_vertex_g holds the
// plus-degree of each vertex.
inline DetectionOutcome baseline_degree_count(const MaskedGraph& g, const ProblemParams& params,
                                              VertexId n_cap = 4096) {
    params.validate();
    if (!g.mask || g.mask->n() != params.n)
        throw InvalidParams("observation ground set does not match params.n");
    const std::int64_t n = params.n;
    if (n > n_cap)
        throw ResourceLimit("baseline_degree_count supports n <= " + std::to_string(n_cap));
    if (static_cast<std::int64_t>(g.edge_list().size()) != n * (n - 1) / 2)
        throw InvalidParams("baseline_degree_count requires the fully observed graph");
    std::vector<std::int64_t> plus_degree(static_cast<std::size_t>(n) + 1, 0);
    for (std::size_t idx = 0; idx < g.edge_list().size(); ++idx) {
        if (g.values[idx] != 1) continue;
        ++plus_degree[static_cast<std::size_t>(g.edge_list()[idx].first)];
        ++plus_degree[static_cast<std::size_t>(g.edge_list()[idx].second)];
    }
    DetectionOutcome out;
    out.per_vertex_g.reserve(static_cast<std::size_t>(n));
    std::int64_t max_degree = 0;
    for (VertexId v = 1; v <= n; ++v) {
        max_degree = std::max(max_degree, plus_degree[static_cast<std::size_t>(v)]);
        out.per_vertex_g.push_back(static_cast<double>(plus_degree[static_cast<std::size_t>(v)]));
    }
    const double dn = static_cast<double>(n);
    out.statistic = static_cast<double>(max_degree);
    out.threshold = dn / 2.0 + std::sqrt(dn * std::log(dn));
    out.verdict = out.statistic > out.threshold ? Verdict::planted : Verdict::null_model;
    return out;
}

} // namespace cliquemask
