// ldub.hpp — low-degree likelihood-ratio upper bounds.
//
// LDUB(n, M) = 1 + sum_{d=1}^{D} (1/d!) E[Phi^d] with Phi = sum_{(i,j) in M}
// Z_i Z_j, where Z is the coordinatewise product of two independent uniform
// k-subset indicators. Cond(n, M, S) is the same with both subsets drawn
// inside S; Cond(n, M, [n]) = LDUB(n, M).
//
// Three evaluation modes: exact rational (enumeration, two strategies),
// Monte Carlo with per-term standard errors, and the analytic few-vertex
// bound. certify_hardness chains them into a numeric hardness certificate
// for a given mask.
#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cliquemask/core.hpp"
#include "cliquemask/errors.hpp"
#include "cliquemask/mask_ops.hpp"
#include "cliquemask/rational.hpp"
#include "cliquemask/rng.hpp"

namespace cliquemask {

enum class LdubMode { exact_rational, monte_carlo, analytic_bound };

struct LdubValue {
    LdubMode mode = LdubMode::exact_rational;
    double value = 1.0;                        // 1 + sum of per-degree terms
    double std_error = 0.0;                    // monte_carlo only
    std::vector<double> per_degree_terms;      // term for d = 1..D
    std::vector<double> per_degree_std_errors; // monte_carlo only
    BigRat exact_value = 1;                    // exact_rational only
    std::vector<BigRat> exact_terms;           // exact_rational only
};

// Two independent clique draws and their coordinatewise product Z.
struct CliquePairSample {
    CliqueIndicator x;
    CliqueIndicator x_prime;
    std::vector<std::uint8_t> z; // 1-based over [n]; z[i] = 1 iff i in both
};

inline CliquePairSample sample_clique_pair(VertexId n, std::int64_t k,
                                           std::span<const VertexId> s, RngStream& rng) {
    CliquePairSample out;
    out.x = sample_clique(n, k, s, rng);
    out.x_prime = sample_clique(n, k, s, rng);
    out.z.assign(static_cast<std::size_t>(n) + 1, 0);
    for (VertexId v : out.x.members)
        if (out.x_prime.contains(v)) out.z[static_cast<std::size_t>(v)] = 1;
    return out;
}

// Number of mask edges with both endpoints marked in z (z is 1-based, size n+1).
inline std::int64_t phi_value(const Mask& m, std::span<const std::uint8_t> z) {
    if (z.size() != static_cast<std::size_t>(m.n()) + 1)
        throw InvalidParams("phi_value: z must have one entry per vertex of [n]");
    std::int64_t phi = 0;
    for (VertexId v = 1; v <= m.n(); ++v) {
        if (!z[static_cast<std::size_t>(v)]) continue;
        for (VertexId u : m.neighbors(v))
            if (u > v && z[static_cast<std::size_t>(u)]) ++phi;
    }
    return phi;
}

namespace detail {

// Edges of M restricted to S, relabeled to 0-based positions within S.
struct CompressedMask {
    std::size_t support = 0;                          // |S|
    std::vector<std::pair<int, int>> edges;           // positions in [0, support)
};

inline CompressedMask compress_to_subset(const Mask& m, std::span<const VertexId> s) {
    CompressedMask out;
    out.support = s.size();
    std::vector<int> pos(static_cast<std::size_t>(m.n()) + 1, -1);
    for (std::size_t i = 0; i < s.size(); ++i) pos[static_cast<std::size_t>(s[i])] = static_cast<int>(i);
    for (VertexId v = 1; v <= m.n(); ++v) {
        if (pos[static_cast<std::size_t>(v)] < 0) continue;
        for (VertexId u : m.neighbors(v))
            if (u > v && pos[static_cast<std::size_t>(u)] >= 0)
                out.edges.emplace_back(pos[static_cast<std::size_t>(v)], pos[static_cast<std::size_t>(u)]);
    }
    return out;
}

inline LdubValue finish_exact(std::vector<BigInt> numerators, const BigInt& pair_count, int degree_cap) {
    LdubValue out;
    out.mode = LdubMode::exact_rational;
    out.exact_value = 1;
    BigInt dfact = 1;
    for (int d = 1; d <= degree_cap; ++d) {
        dfact *= d;
        BigRat term(numerators[static_cast<std::size_t>(d)], pair_count * dfact);
        out.exact_terms.push_back(term);
        out.exact_value += term;
        out.per_degree_terms.push_back(to_double(term));
    }
    out.value = to_double(out.exact_value);
    return out;
}

} // namespace detail

// Exact value by enumerating all (|S| choose k)^2 ordered pairs of k-subsets.
// Requires |S| <= 64; subsets are walked as bitmasks.
inline LdubValue ldub_exact_pairs(const ProblemParams& params, const Mask& m,
                                  std::span<const VertexId> s) {
    params.validate();
    check_vertex_subset(s, m.n());
    const std::int64_t k = params.k;
    if (k > static_cast<std::int64_t>(s.size()))
        throw InvalidParams("ldub requires k <= |S|");
    if (s.size() > 64)
        throw ResourceLimit("pair enumeration supports |S| <= 64");

    const auto cm = detail::compress_to_subset(m, s);
    std::vector<std::uint64_t> edge_bits;
    edge_bits.reserve(cm.edges.size());
    for (auto [a, b] : cm.edges)
        edge_bits.push_back((std::uint64_t{1} << a) | (std::uint64_t{1} << b));

    // All k-subsets of [0, |S|) in Gosper order.
    std::vector<std::uint64_t> subsets;
    if (k == 0) {
        subsets.push_back(0);
    } else {
        std::uint64_t cur = (s.size() == 64 && k == 64)
                                ? ~std::uint64_t{0}
                                : ((std::uint64_t{1} << k) - 1);
        const std::uint64_t limit = (s.size() == 64) ? ~std::uint64_t{0}
                                                     : ((std::uint64_t{1} << s.size()) - 1);
        for (;;) {
            subsets.push_back(cur);
            if (k == static_cast<std::int64_t>(s.size())) break;
            const std::uint64_t c = cur & (~cur + 1);
            const std::uint64_t r = cur + c;
            if (r > limit || r < cur) break;
            cur = (((r ^ cur) >> 2) / c) | r;
            if (cur > limit) break;
        }
    }

    const int degree_cap = params.degree_cap;
    std::vector<BigInt> num(static_cast<std::size_t>(degree_cap) + 1, 0);
    std::vector<unsigned __int128> acc(static_cast<std::size_t>(degree_cap) + 1, 0);
    const std::uint64_t phi_max = std::max<std::uint64_t>(1, edge_bits.size());
    // Spill the 128-bit accumulators to BigInt before they can saturate.
    unsigned __int128 headroom = ~static_cast<unsigned __int128>(0);
    unsigned __int128 max_inc = 1;
    bool inc_overflows = false;
    for (int d = 0; d < degree_cap; ++d) {
        if (max_inc > headroom / phi_max) { inc_overflows = true; break; }
        max_inc *= phi_max;
    }
    std::int64_t spill_interval = 1 << 20;
    if (!inc_overflows && max_inc > 0)
        spill_interval = static_cast<std::int64_t>(std::min<unsigned __int128>(
            headroom / max_inc, static_cast<unsigned __int128>(1) << 40));
    if (inc_overflows) spill_interval = 1;

    auto spill = [&]() {
        for (int d = 1; d <= degree_cap; ++d) {
            if (acc[static_cast<std::size_t>(d)] == 0) continue;
            const unsigned __int128 v = acc[static_cast<std::size_t>(d)];
            BigInt big = static_cast<std::uint64_t>(v >> 64);
            big <<= 64;
            big += static_cast<std::uint64_t>(v);
            num[static_cast<std::size_t>(d)] += big;
            acc[static_cast<std::size_t>(d)] = 0;
        }
    };

    std::int64_t since_spill = 0;
    for (std::size_t i = 0; i < subsets.size(); ++i) {
        for (std::size_t j = 0; j < subsets.size(); ++j) {
            const std::uint64_t z = subsets[i] & subsets[j];
            std::uint64_t phi = 0;
            for (std::uint64_t e : edge_bits)
                phi += ((z & e) == e);
            if (phi != 0) {
                if (inc_overflows) {
                    BigInt p = 1;
                    for (int d = 1; d <= degree_cap; ++d) {
                        p *= phi;
                        num[static_cast<std::size_t>(d)] += p;
                    }
                } else {
                    unsigned __int128 p = 1;
                    for (int d = 1; d <= degree_cap; ++d) {
                        p *= phi;
                        acc[static_cast<std::size_t>(d)] += p;
                    }
                }
            }
            if (++since_spill >= spill_interval) {
                spill();
                since_spill = 0;
            }
        }
    }
    spill();

    const BigInt total = big_binomial(static_cast<std::int64_t>(s.size()), k);
    return detail::finish_exact(std::move(num), total * total, degree_cap);
}

// Exact value by grouping pairs according to W = X ∩ X' ∩ V(M): Phi depends
// only on W, and the number of pairs realizing each W follows by inclusion-
// exclusion (a subset Moebius transform over the mask's support inside S).
// Cost ~ 2^w per degree with w = |V(M) ∩ S|, independent of |S| and k.
inline LdubValue ldub_exact_overlap(const ProblemParams& params, const Mask& m,
                                    std::span<const VertexId> s) {
    params.validate();
    check_vertex_subset(s, m.n());
    const std::int64_t k = params.k;
    const std::int64_t s_size = static_cast<std::int64_t>(s.size());
    if (k > s_size) throw InvalidParams("ldub requires k <= |S|");

    VertexSet support;
    for (VertexId v : s)
        if (m.degree(v) > 0) support.push_back(v);
    const int w = static_cast<int>(support.size());
    if (w > 24) throw ResourceLimit("overlap enumeration supports |V(M) ∩ S| <= 24");

    const auto cm = detail::compress_to_subset(m, support);
    std::vector<std::uint32_t> adj_bits(static_cast<std::size_t>(w), 0);
    for (auto [a, b] : cm.edges) {
        adj_bits[static_cast<std::size_t>(a)] |= (std::uint32_t{1} << b);
        adj_bits[static_cast<std::size_t>(b)] |= (std::uint32_t{1} << a);
    }

    const std::size_t table = std::size_t{1} << w;
    std::vector<std::uint32_t> phi(table, 0);
    for (std::size_t mask_bits = 1; mask_bits < table; ++mask_bits) {
        const int h = std::bit_width(mask_bits) - 1;
        const std::size_t rest = mask_bits ^ (std::size_t{1} << h);
        phi[mask_bits] = phi[rest] + static_cast<std::uint32_t>(std::popcount(
                             adj_bits[static_cast<std::size_t>(h)] & static_cast<std::uint32_t>(rest)));
    }

    // Pair counts by |T|: (# k-subsets of S containing a fixed size-t set)^2.
    std::vector<BigInt> containing_sq(static_cast<std::size_t>(w) + 1);
    for (int t = 0; t <= w; ++t) {
        const BigInt c = big_binomial(s_size - t, k - t);
        containing_sq[static_cast<std::size_t>(t)] = c * c;
    }

    const int degree_cap = params.degree_cap;
    std::vector<BigInt> num(static_cast<std::size_t>(degree_cap) + 1, 0);
    std::vector<BigInt> work(table);
    for (int d = 1; d <= degree_cap; ++d) {
        for (std::size_t i = 0; i < table; ++i)
            work[i] = boost::multiprecision::pow(BigInt(phi[i]), static_cast<unsigned>(d));
        // Subset Moebius transform: work[T] = sum_{W ⊆ T} (-1)^{|T\W|} Phi(W)^d.
        for (int b = 0; b < w; ++b) {
            const std::size_t bit = std::size_t{1} << b;
            for (std::size_t i = 0; i < table; ++i)
                if (i & bit) work[i] -= work[i ^ bit];
        }
        BigInt total = 0;
        for (std::size_t i = 0; i < table; ++i) {
            if (work[i] == 0) continue;
            total += work[i] * containing_sq[static_cast<std::size_t>(std::popcount(i))];
        }
        num[static_cast<std::size_t>(d)] = total;
    }

    const BigInt c_total = big_binomial(s_size, k);
    return detail::finish_exact(std::move(num), c_total * c_total, degree_cap);
}

// Exact Cond(n, M, S) in rational arithmetic; picks the cheaper enumeration
// strategy under the pair budget (default 1e8) and reports a resource-limit
// error advising ldub_mc when both exceed it.
inline LdubValue ldub_exact(const ProblemParams& params, const Mask& m,
                            std::span<const VertexId> s, std::int64_t pair_cap = 100000000) {
    params.validate();
    check_vertex_subset(s, m.n());
    if (params.k > static_cast<std::int64_t>(s.size()))
        throw InvalidParams("ldub requires k <= |S|");

    std::int64_t w = 0;
    for (VertexId v : s)
        if (m.degree(v) > 0) ++w;

    const bool overlap_ok =
        w <= 24 && (std::int64_t{1} << w) * (w + 2) * std::max(1, params.degree_cap) <= pair_cap;
    if (overlap_ok) return ldub_exact_overlap(params, m, s);

    const BigInt raw_side = big_binomial(static_cast<std::int64_t>(s.size()), params.k);
    const BigInt raw_pairs = raw_side * raw_side;
    if (s.size() <= 64 && raw_pairs <= pair_cap) return ldub_exact_pairs(params, m, s);

    throw ResourceLimit("exact enumeration budget exceeded (pairs=" + raw_pairs.str() +
                        ", support=" + std::to_string(w) + "); use ldub_mc instead");
}

// Monte Carlo estimate from i.i.d. clique pairs; unbiased per-degree terms
// with standard errors from the sample variance.
inline LdubValue ldub_mc(const ProblemParams& params, const Mask& m,
                         std::span<const VertexId> s, std::int64_t trials, RngStream& rng) {
    params.validate();
    check_vertex_subset(s, m.n());
    if (params.k > static_cast<std::int64_t>(s.size()))
        throw InvalidParams("ldub requires k <= |S|");
    if (trials < 2) throw InvalidParams("ldub_mc requires trials >= 2");

    const auto cm = detail::compress_to_subset(m, s);
    const std::int64_t k = params.k;
    const int degree_cap = params.degree_cap;

    std::vector<long double> inv_fact(static_cast<std::size_t>(degree_cap) + 1, 1.0L);
    for (int d = 1; d <= degree_cap; ++d)
        inv_fact[static_cast<std::size_t>(d)] = inv_fact[static_cast<std::size_t>(d) - 1] / d;

    std::vector<long double> s1(static_cast<std::size_t>(degree_cap) + 1, 0.0L);
    std::vector<long double> s2(static_cast<std::size_t>(degree_cap) + 1, 0.0L);
    long double su = 0.0L, su2 = 0.0L;

    const std::size_t support = cm.support;
    std::vector<std::uint32_t> stamp_x(support, 0), stamp_p(support, 0);
    std::vector<std::uint32_t> positions(support);
    for (std::size_t i = 0; i < support; ++i) positions[i] = static_cast<std::uint32_t>(i);
    std::vector<std::uint32_t> pool(support);

    for (std::int64_t trial = 1; trial <= trials; ++trial) {
        const std::uint32_t c = static_cast<std::uint32_t>(trial);
        pool = positions;
        for (std::int64_t i = 0; i < k; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) +
                static_cast<std::size_t>(rng.next_below(support - static_cast<std::size_t>(i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            stamp_x[pool[static_cast<std::size_t>(i)]] = c;
        }
        pool = positions;
        for (std::int64_t i = 0; i < k; ++i) {
            const std::size_t j =
                static_cast<std::size_t>(i) +
                static_cast<std::size_t>(rng.next_below(support - static_cast<std::size_t>(i)));
            std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
            stamp_p[pool[static_cast<std::size_t>(i)]] = c;
        }
        std::int64_t phi = 0;
        for (auto [a, b] : cm.edges) {
            const bool za = stamp_x[static_cast<std::size_t>(a)] == c &&
                            stamp_p[static_cast<std::size_t>(a)] == c;
            const bool zb = stamp_x[static_cast<std::size_t>(b)] == c &&
                            stamp_p[static_cast<std::size_t>(b)] == c;
            phi += (za && zb);
        }
        long double p = 1.0L, u = 0.0L;
        for (int d = 1; d <= degree_cap; ++d) {
            p *= static_cast<long double>(phi);
            s1[static_cast<std::size_t>(d)] += p;
            s2[static_cast<std::size_t>(d)] += p * p;
            u += p * inv_fact[static_cast<std::size_t>(d)];
        }
        su += u;
        su2 += u * u;
    }

    LdubValue out;
    out.mode = LdubMode::monte_carlo;
    const long double t = static_cast<long double>(trials);
    long double value = 1.0L;
    for (int d = 1; d <= degree_cap; ++d) {
        const long double mean = s1[static_cast<std::size_t>(d)] / t;
        const long double var =
            std::max<long double>(0.0L, (s2[static_cast<std::size_t>(d)] / t - mean * mean) * (t / (t - 1)));
        out.per_degree_terms.push_back(static_cast<double>(mean * inv_fact[static_cast<std::size_t>(d)]));
        out.per_degree_std_errors.push_back(
            static_cast<double>(sqrtl(var / t) * inv_fact[static_cast<std::size_t>(d)]));
        value += mean * inv_fact[static_cast<std::size_t>(d)];
    }
    const long double mean_u = su / t;
    const long double var_u = std::max<long double>(0.0L, (su2 / t - mean_u * mean_u) * (t / (t - 1)));
    out.value = static_cast<double>(value);
    out.std_error = static_cast<double>(sqrtl(var_u / t));
    return out;
}

// Analytic bound on LDUB for a mask with at most vertex_count support
// vertices: 1 + sum_d (1/d!) (2d / ln(2d n^2 / (V k^2) + 1))^{2d}.
inline LdubValue analytic_vertex_bound(const ProblemParams& params, double vertex_count) {
    params.validate();
    if (!(vertex_count > 0)) throw InvalidParams("vertex_count must be positive");
    LdubValue out;
    out.mode = LdubMode::analytic_bound;
    const double n = static_cast<double>(params.n);
    const double k = static_cast<double>(params.k);
    double sum = 0.0;
    for (int d = 1; d <= params.degree_cap; ++d) {
        const double arg = 2.0 * d * n * n / (vertex_count * k * k) + 1.0;
        const double base = 2.0 * d / std::log(arg);
        const double log_term = 2.0 * d * std::log(base) - std::lgamma(static_cast<double>(d) + 1.0);
        const double term = std::exp(log_term);
        out.per_degree_terms.push_back(term);
        sum += term;
    }
    out.value = 1.0 + sum;
    return out;
}

// Numeric hardness certificate for a mask (the lower-bound pipeline):
// pick t from the edge budget, keep the low-degree vertices S, lower-bound
// the probability that the clique lands inside S, restrict the mask to S,
// and bound Cond(n, M, S) via the few-vertex analytic bound evaluated at
// v_max = 2t + 2 + 2|M_S|/t (the vertex count the reduction guarantees).
struct HardnessCertificate {
    std::int64_t t = 1;
    VertexSet s;                    // vertices of mask degree <= 2t (isolated included)
    double prob_bound = 1.0;        // lower bound on P[clique ⊆ S]
    double v_max = 0.0;             // 2t + 2 + 2|M_S|/t
    double cond_bound = 1.0;        // upper bound on Cond(n, M, S)
    double grow = 0.0;              // ln n
    VertexId n_prime = 0;           // |S|
    std::int64_t restricted_edges = 0; // |M_S|
    LdubValue bound_detail;
};

inline HardnessCertificate certify_hardness(const ProblemParams& params, const Mask& m) {
    params.validate();
    if (m.n() != params.n) throw InvalidParams("mask ground set does not match params.n");
    HardnessCertificate cert;
    cert.grow = std::log(static_cast<double>(params.n));
    if (m.edge_count() == 0) {
        cert.t = 1;
        cert.s = full_vertex_set(m.n());
        cert.n_prime = m.n();
        cert.prob_bound = 1.0;
        cert.v_max = 0.0;
        cert.cond_bound = 1.0; // empty mask: Phi ≡ 0, the bound is exact
        return cert;
    }

    const double edges = static_cast<double>(m.edge_count());
    const double ratio = static_cast<double>(params.k) / static_cast<double>(params.n);
    cert.t = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(edges * ratio * cert.grow)));

    for (VertexId v = 1; v <= m.n(); ++v)
        if (m.degree(v) <= 2 * cert.t) cert.s.push_back(v);
    cert.n_prime = static_cast<VertexId>(cert.s.size());

    cert.prob_bound = 1.0 - std::min(1.0, edges / static_cast<double>(cert.t) * ratio);
    if (static_cast<std::int64_t>(cert.s.size()) < params.k) cert.prob_bound = 0.0; // vacuous

    const MaskRestriction restriction = restrict_mask(m, cert.s);
    cert.restricted_edges = restriction.mask.edge_count();
    cert.v_max = 2.0 * static_cast<double>(cert.t) + 2.0 +
                 2.0 * static_cast<double>(cert.restricted_edges) / static_cast<double>(cert.t);

    ProblemParams restricted = params;
    restricted.n = std::max<std::int64_t>(1, cert.n_prime);
    restricted.k = std::min<std::int64_t>(params.k, restricted.n);
    cert.bound_detail = analytic_vertex_bound(restricted, cert.v_max);
    cert.cond_bound = cert.bound_detail.value;
    return cert;
}

} // namespace cliquemask
