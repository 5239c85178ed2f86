#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "cliquemask/core.hpp"
#include "cliquemask/ldub.hpp"
#include "cliquemask/mask_ops.hpp"

using namespace cliquemask;

namespace {

Mask make_mask(VertexId n, std::initializer_list<Mask::Edge> edges) {
    Mask m(n);
    for (const auto& [a, b] : edges) m.add_edge(a, b);
    return m;
}

Mask random_tiny_mask(VertexId n, RngStream& rng) {
    Mask m(n);
    const auto all = static_cast<std::int64_t>(n) * (n - 1) / 2;
    const std::int64_t edges = 1 + static_cast<std::int64_t>(rng.next_below(
                                       static_cast<std::uint64_t>(all)));
    while (m.edge_count() < edges) {
        const auto a = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(n)));
        const auto b = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(n)));
        if (a == b || m.has_edge(std::min(a, b), std::max(a, b))) continue;
        m.add_edge(std::min(a, b), std::max(a, b));
    }
    return m;
}

ProblemParams tiny_params(std::int64_t n, std::int64_t k, int degree_cap) {
    auto p = ProblemParams::from_counts(n, k);
    p.degree_cap = degree_cap;
    return p;
}

} // namespace

TEST_CASE("clique pair samples mark exactly the intersection") {
    RngStream rng(400, 0);
    const auto s = full_vertex_set(9);
    for (int rep = 0; rep < 50; ++rep) {
        const auto pair = sample_clique_pair(9, 3, s, rng);
        std::int64_t marked = 0;
        for (VertexId v = 1; v <= 9; ++v) {
            const bool both = pair.x.contains(v) && pair.x_prime.contains(v);
            CHECK(pair.z[static_cast<std::size_t>(v)] == (both ? 1 : 0));
            marked += pair.z[static_cast<std::size_t>(v)];
        }
        CHECK(marked <= 3);
    }
}

TEST_CASE("phi_value counts doubly-marked edges") {
    const Mask m = make_mask(3, {{1, 2}, {2, 3}});
    std::vector<std::uint8_t> z(4, 0);
    CHECK(phi_value(m, z) == 0);
    z = {0, 1, 1, 1};
    CHECK(phi_value(m, z) == m.edge_count());
    z = {0, 1, 1, 0};
    CHECK(phi_value(m, z) == 1);
}

TEST_CASE("ldub_exact: frozen rational values") {
    const Mask m = make_mask(4, {{1, 2}});
    const auto s = full_vertex_set(4);

    const auto d1 = ldub_exact(tiny_params(4, 2, 1), m, s);
    CHECK(d1.exact_value == BigRat(37, 36));

    const auto d2 = ldub_exact(tiny_params(4, 2, 2), m, s);
    CHECK(d2.exact_value == BigRat(25, 24));
    CHECK(d2.exact_terms[0] == BigRat(1, 36));
    CHECK(d2.exact_terms[1] == BigRat(1, 72));

    const Mask empty(4);
    CHECK(ldub_exact(tiny_params(4, 2, 3), empty, s).exact_value == 1);
}

TEST_CASE("ldub_exact: conditioning on a subset") {
    // S = {1,2,3}: 3 subsets of size 2, phi = 1 only when X = X' = {1,2}.
    const Mask m = make_mask(4, {{1, 2}});
    const auto v = ldub_exact(tiny_params(4, 2, 1), m, VertexSet{1, 2, 3});
    CHECK(v.exact_value == BigRat(10, 9));

    // Clique cannot reach the mask edge: the bound collapses to 1.
    const auto w = ldub_exact(tiny_params(4, 2, 2), m, VertexSet{3, 4});
    CHECK(w.exact_value == 1);

    CHECK_THROWS_AS(ldub_exact(tiny_params(6, 3, 1), m, VertexSet{1, 2}), InvalidParams);
}

namespace {

// Test-only oracle: direct recursive enumeration of all subset pairs, sharing
// no code with the bitmask or Moebius enumeration paths.
void brute_subsets(VertexId next, std::int64_t left, const VertexSet& s, VertexSet& cur,
                   std::vector<VertexSet>& out) {
    if (left == 0) {
        out.push_back(cur);
        return;
    }
    if (next >= static_cast<VertexId>(s.size())) return;
    for (VertexId i = next; i + left <= static_cast<VertexId>(s.size()); ++i) {
        cur.push_back(s[static_cast<std::size_t>(i)]);
        brute_subsets(i + 1, left - 1, s, cur, out);
        cur.pop_back();
    }
}

BigRat ldub_brute(const ProblemParams& p, const Mask& m, const VertexSet& s) {
    std::vector<VertexSet> subs;
    VertexSet cur;
    brute_subsets(0, p.k, s, cur, subs);
    std::vector<BigInt> num(static_cast<std::size_t>(p.degree_cap) + 1, 0);
    for (const auto& x : subs) {
        for (const auto& xp : subs) {
            VertexSet z;
            std::set_intersection(x.begin(), x.end(), xp.begin(), xp.end(),
                                  std::back_inserter(z));
            std::int64_t phi = 0;
            for (const auto& [a, b] : m.edges())
                phi += std::binary_search(z.begin(), z.end(), a) &&
                       std::binary_search(z.begin(), z.end(), b);
            BigInt pw = 1;
            for (int d = 1; d <= p.degree_cap; ++d) {
                pw *= phi;
                num[static_cast<std::size_t>(d)] += pw;
            }
        }
    }
    const BigInt pairs = BigInt(subs.size()) * BigInt(subs.size());
    BigRat value = 1;
    BigInt dfact = 1;
    for (int d = 1; d <= p.degree_cap; ++d) {
        dfact *= d;
        value += BigRat(num[static_cast<std::size_t>(d)], pairs * dfact);
    }
    return value;
}

} // namespace

TEST_CASE("ldub_exact: both enumeration routes match a brute-force oracle") {
    RngStream rng(403, 0);
    for (int rep = 0; rep < 12; ++rep) {
        const auto n = static_cast<VertexId>(4 + rng.next_below(3)); // 4..6
        const Mask m = random_tiny_mask(n, rng);
        const auto params = tiny_params(n, 2, 2);
        // Condition on a random subset at least k large, sometimes all of [n].
        VertexSet s;
        for (VertexId v = 1; v <= n; ++v)
            if (rng.next_below(4) != 0) s.push_back(v);
        if (static_cast<std::int64_t>(s.size()) < params.k) s = full_vertex_set(n);
        const BigRat oracle = ldub_brute(params, m, s);
        CHECK(ldub_exact_pairs(params, m, s).exact_value == oracle);
        CHECK(ldub_exact_overlap(params, m, s).exact_value == oracle);
    }
}

TEST_CASE("ldub_exact: pair and overlap enumerations agree exactly") {
    RngStream rng(404, 0);
    for (int rep = 0; rep < 40; ++rep) {
        const auto n = static_cast<VertexId>(4 + rng.next_below(5)); // 4..8
        const auto k = static_cast<std::int64_t>(2 + rng.next_below(2));
        const int d = 1 + static_cast<int>(rng.next_below(3));
        const Mask m = random_tiny_mask(n, rng);
        const auto params = tiny_params(n, k, d);
        const auto s = full_vertex_set(n);
        const auto pairs = ldub_exact_pairs(params, m, s);
        const auto overlap = ldub_exact_overlap(params, m, s);
        REQUIRE(pairs.exact_terms.size() == overlap.exact_terms.size());
        CHECK(pairs.exact_value == overlap.exact_value);
        for (std::size_t i = 0; i < pairs.exact_terms.size(); ++i)
            CHECK(pairs.exact_terms[i] == overlap.exact_terms[i]);
    }
}

TEST_CASE("ldub_exact: overlap route handles large ground sets") {
    // C(60, 5)^2 pairs is far over budget, but the mask touches 4 vertices.
    const Mask m = make_mask(60, {{1, 2}, {2, 3}, {10, 20}});
    auto params = tiny_params(60, 5, 3);
    const auto v = ldub_exact(params, m, full_vertex_set(60));
    RngStream rng(405, 0);
    auto mc = ldub_mc(params, m, full_vertex_set(60), 200000, rng);
    CHECK(std::abs(mc.value - v.value) <= 3.0 * mc.std_error + 1e-12);
}

TEST_CASE("ldub_exact: budget exhaustion advises ldub_mc") {
    // 30 mask vertices and C(40,20)^2 pairs: both routes over a tiny cap.
    Mask m(40);
    for (VertexId v = 1; v <= 30; v += 2) m.add_edge(v, v + 1);
    auto params = tiny_params(40, 20, 2);
    try {
        ldub_exact(params, m, full_vertex_set(40), 1000);
        FAIL("expected ResourceLimit");
    } catch (const ResourceLimit& e) {
        CHECK(std::string(e.what()).find("ldub_mc") != std::string::npos);
    }
}

TEST_CASE("ldub invariants: value >= 1, nonnegative terms") {
    RngStream rng(406, 0);
    for (int rep = 0; rep < 20; ++rep) {
        const auto n = static_cast<VertexId>(4 + rng.next_below(5));
        const Mask m = random_tiny_mask(n, rng);
        const auto v = ldub_exact(tiny_params(n, 2, 3), m, full_vertex_set(n));
        CHECK(v.exact_value >= 1);
        for (const auto& t : v.exact_terms) CHECK(t >= 0);
    }
}

TEST_CASE("ldub_mc: degenerate inputs") {
    const Mask empty(5);
    auto params = tiny_params(5, 2, 3);
    RngStream rng(407, 0);
    const auto v = ldub_mc(params, empty, full_vertex_set(5), 100, rng);
    CHECK(v.value == 1.0);
    CHECK(v.std_error == 0.0);

    const Mask m = make_mask(5, {{1, 2}});
    CHECK_THROWS_AS(ldub_mc(params, m, full_vertex_set(5), 1, rng), InvalidParams);
}

TEST_CASE("ldub_mc: agrees with the exact oracle within 3 standard errors") {
    const Mask m = make_mask(4, {{1, 2}});
    auto params = tiny_params(4, 2, 2);
    RngStream rng(408, 0);
    const auto mc = ldub_mc(params, m, full_vertex_set(4), 1000000, rng);
    const double exact = 25.0 / 24.0;
    CHECK(std::abs(mc.value - exact) <= 3.0 * mc.std_error);
    CHECK(mc.std_error > 0.0);
    CHECK(mc.per_degree_std_errors.size() == 2);
}

TEST_CASE("ldub_mc: reproducible for a fixed stream") {
    const Mask m = make_mask(6, {{1, 2}, {2, 3}, {4, 5}});
    auto params = tiny_params(6, 2, 3);
    const auto s = full_vertex_set(6);
    RngStream r1(42, 9), r2(42, 9), r3(42, 10);
    const auto a = ldub_mc(params, m, s, 50000, r1);
    const auto b = ldub_mc(params, m, s, 50000, r2);
    const auto c = ldub_mc(params, m, s, 50000, r3);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    CHECK(a.per_degree_terms == b.per_degree_terms);
    CHECK(a.value != c.value);
}

TEST_CASE("ldub_mc: adding an edge cannot decrease the estimate") {
    RngStream rng(409, 0);
    for (int rep = 0; rep < 10; ++rep) {
        const auto n = static_cast<VertexId>(5 + rng.next_below(3));
        Mask m = random_tiny_mask(n, rng);
        Mask bigger = m;
        for (int tries = 0; tries < 100; ++tries) {
            const auto a = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(n)));
            const auto b = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(n)));
            if (a == b || bigger.has_edge(std::min(a, b), std::max(a, b))) continue;
            bigger.add_edge(std::min(a, b), std::max(a, b));
            break;
        }
        if (bigger.edge_count() == m.edge_count()) continue;
        auto params = tiny_params(n, 2, 2);
        RngStream r1(410, static_cast<std::uint64_t>(rep));
        RngStream r2(411, static_cast<std::uint64_t>(rep));
        const auto small = ldub_mc(params, m, full_vertex_set(n), 200000, r1);
        const auto large = ldub_mc(params, bigger, full_vertex_set(n), 200000, r2);
        CHECK(small.value <= large.value + 3.0 * (small.std_error + large.std_error));
    }
}

TEST_CASE("ldub_exact: adding edges never decreases the value (exact)") {
    RngStream rng(420, 0);
    for (int rep = 0; rep < 25; ++rep) {
        const auto n = static_cast<VertexId>(4 + rng.next_below(5));
        Mask m = random_tiny_mask(n, rng);
        Mask bigger = m;
        for (int tries = 0; tries < 100; ++tries) {
            const auto a = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(n)));
            const auto b = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(n)));
            if (a == b || bigger.has_edge(std::min(a, b), std::max(a, b))) continue;
            bigger.add_edge(std::min(a, b), std::max(a, b));
            break;
        }
        if (bigger.edge_count() == m.edge_count()) continue;
        const auto params = tiny_params(n, 2, 3);
        const auto s = full_vertex_set(n);
        CHECK(ldub_exact(params, m, s).exact_value <=
              ldub_exact(params, bigger, s).exact_value);
    }
}

TEST_CASE("analytic_vertex_bound: spot values and edge cases") {
    auto p0 = tiny_params(10, 3, 0);
    CHECK(analytic_vertex_bound(p0, 5.0).value == 1.0);

    auto p1 = tiny_params(10000, 100, 1);
    const auto b1 = analytic_vertex_bound(p1, 100.0);
    CHECK(b1.value == doctest::Approx(1.0 + std::pow(2.0 / std::log(201.0), 2)).epsilon(1e-12));
    CHECK(std::abs(b1.value - 1.14222) <= 1e-5);

    auto p2 = tiny_params(4, 2, 1);
    const auto b2 = analytic_vertex_bound(p2, 2.0);
    CHECK(b2.value == doctest::Approx(1.0 + std::pow(2.0 / std::log(5.0), 2)).epsilon(1e-12));
    CHECK(37.0 / 36.0 <= b2.value);

    CHECK_THROWS_AS(analytic_vertex_bound(p2, 0.0), InvalidParams);
}

TEST_CASE("analytic bound dominates the exact value on tiny instances") {
    RngStream rng(412, 0);
    for (int rep = 0; rep < 40; ++rep) {
        const auto n = static_cast<VertexId>(4 + rng.next_below(5));
        const auto k = static_cast<std::int64_t>(2 + rng.next_below(2));
        const int d = 1 + static_cast<int>(rng.next_below(3));
        const Mask m = random_tiny_mask(n, rng);
        const auto params = tiny_params(n, k, d);
        const auto exact = ldub_exact(params, m, full_vertex_set(n));
        const auto bound = analytic_vertex_bound(params, static_cast<double>(m.vertex_count()));
        CHECK(exact.value <= bound.value + 1e-12);
    }
}

TEST_CASE("binomial coupling: MC moments of H stay under the binomial bound") {
    RngStream rng(413, 0);
    for (int rep = 0; rep < 6; ++rep) {
        const auto n = static_cast<VertexId>(10 + rng.next_below(30));
        const auto k = static_cast<std::int64_t>(2 + rng.next_below(static_cast<std::uint64_t>(n / 2)));
        const Mask m = random_tiny_mask(static_cast<VertexId>(4 + rng.next_below(6)), rng);
        // Support of the mask, re-read on ground set n.
        Mask wide(n);
        for (const auto& [a, b] : m.edges()) wide.add_edge(a, b);
        const double support = static_cast<double>(wide.vertex_count());
        const VertexSet support_list = wide.vertices();
        const auto s = full_vertex_set(n);
        const int trials = 100000;
        for (int d = 1; d <= 3; ++d) {
            long double sum = 0.0L, sum_sq = 0.0L;
            RngStream inner(414, static_cast<std::uint64_t>(rep * 4 + d));
            for (int i = 0; i < trials; ++i) {
                const auto pair = sample_clique_pair(n, k, s, inner);
                std::int64_t h = 0;
                for (VertexId v : support_list) h += pair.z[static_cast<std::size_t>(v)];
                long double p = 1.0L;
                for (int q = 0; q < 2 * d; ++q) p *= h;
                sum += p;
                sum_sq += p * p;
            }
            const double mean = static_cast<double>(sum / trials);
            const double var = std::max(0.0, static_cast<double>(sum_sq / trials) - mean * mean);
            const double se = std::sqrt(var / trials);
            const double nn = static_cast<double>(n), kk = static_cast<double>(k);
            const double arg = 2.0 * d * nn * nn / (support * kk * kk) + 1.0;
            const double bound = std::pow(2.0 * d / std::log(arg), 2.0 * d);
            CHECK(mean <= bound + 3.0 * se);
        }
    }
}

TEST_CASE("donation cannot decrease the exact bound (zero tolerance)") {
    RngStream rng(415, 0);
    int done = 0;
    while (done < 50) {
        const auto n = static_cast<VertexId>(4 + rng.next_below(5)); // 4..8
        const auto k = static_cast<std::int64_t>(2 + rng.next_below(2));
        const int d = 1 + static_cast<int>(rng.next_below(3));
        const Mask m = random_tiny_mask(n, rng);
        const auto verts = m.vertices();
        if (verts.size() < 2) continue;
        const VertexId v = verts[rng.next_below(verts.size())];
        VertexId u = v;
        while (u == v) u = verts[rng.next_below(verts.size())];
        const auto params = tiny_params(n, k, d);
        const auto s = full_vertex_set(n);
        const auto before = ldub_exact(params, m, s);
        const auto after = ldub_exact(params, donate(m, v, u), s);
        CHECK(before.exact_value <= after.exact_value);
        ++done;
    }
}

namespace {

// Smallest masks that the removal bound actually fires on: near-perfect
// matchings on n = 2m vertices with t = 2 exceed |V| > 2t + 2 + 2|M|/t as
// soon as m >= 7 (chords keep max degree <= 2t and are added only while the
// bound still holds).
Mask reducible_matching(VertexId m_pairs, int chords, RngStream& rng) {
    Mask m(static_cast<VertexId>(2 * m_pairs));
    for (VertexId v = 1; v <= 2 * m_pairs - 1; v += 2) m.add_edge(v, v + 1);
    for (int c = 0; c < chords; ++c) {
        const auto a = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(2 * m_pairs)));
        const auto b = static_cast<VertexId>(1 + rng.next_below(static_cast<std::uint64_t>(2 * m_pairs)));
        if (a == b || m.has_edge(std::min(a, b), std::max(a, b))) continue;
        if (m.degree(a) >= 4 || m.degree(b) >= 4) continue;
        Mask candidate = m;
        candidate.add_edge(std::min(a, b), std::max(a, b));
        if (vertex_bound_exceeded(candidate, 2)) m = std::move(candidate);
    }
    return m;
}

} // namespace

TEST_CASE("each removal step keeps degree, edges, and the exact bound in line") {
    RngStream rng(418, 0);
    int steps_seen = 0;
    for (int rep = 0; rep < 8; ++rep) {
        const auto m_pairs = static_cast<VertexId>(7 + rng.next_below(3)); // n = 14..18
        const Mask m = reducible_matching(m_pairs, static_cast<int>(rng.next_below(3)), rng);
        const int t = 2;
        const auto params = tiny_params(2 * m_pairs, 2, 2);
        const auto s = full_vertex_set(static_cast<VertexId>(2 * m_pairs));
        Mask cur = m;
        while (vertex_bound_exceeded(cur, t)) {
            const auto prev_bound = ldub_exact_pairs(params, cur, s).exact_value;
            const auto prev_vertices = cur.vertex_count();
            const auto prev_edges = cur.edge_count();
            auto [next, removed] = vertex_removal_step(cur, t);
            CHECK(next.edge_count() == prev_edges);
            CHECK(next.max_degree() <= 2 * t);
            CHECK(next.vertex_count() < prev_vertices);
            CHECK_FALSE(next.in_vertex_set(removed));
            CHECK(prev_bound <= ldub_exact_pairs(params, next, s).exact_value);
            cur = std::move(next);
            ++steps_seen;
        }
    }
    CHECK(steps_seen >= 8); // the loop must have exercised real removals
}

TEST_CASE("reduce_mask cannot decrease the exact bound on small instances") {
    RngStream rng(416, 0);
    int nontrivial = 0;
    for (int rep = 0; rep < 12; ++rep) {
        const auto m_pairs = static_cast<VertexId>(7 + rng.next_below(4)); // n = 14..20
        const auto k = static_cast<std::int64_t>(2 + rng.next_below(2));
        const Mask m = reducible_matching(m_pairs, static_cast<int>(rng.next_below(3)), rng);
        const auto params = tiny_params(2 * m_pairs, k, 2);
        const auto s = full_vertex_set(static_cast<VertexId>(2 * m_pairs));
        const auto [reduced, trace] = reduce_mask(m, 2);
        nontrivial += !trace.steps.empty();
        const auto before = ldub_exact_pairs(params, m, s);
        const auto after = ldub_exact_pairs(params, reduced, s);
        CHECK(before.exact_value <= after.exact_value);
    }
    CHECK(nontrivial >= 10);
}

TEST_CASE("certify_hardness: empty mask and pipeline consistency") {
    auto params = tiny_params(100, 10, 3);
    const Mask empty(100);
    const auto trivial = certify_hardness(params, empty);
    CHECK(trivial.prob_bound == 1.0);
    CHECK(trivial.cond_bound == 1.0);

    RngStream rng(417, 0);
    const Mask m = [&] {
        Mask mm(100);
        while (mm.edge_count() < 60) {
            const auto a = static_cast<VertexId>(1 + rng.next_below(100));
            const auto b = static_cast<VertexId>(1 + rng.next_below(100));
            if (a == b || mm.has_edge(std::min(a, b), std::max(a, b))) continue;
            mm.add_edge(std::min(a, b), std::max(a, b));
        }
        return mm;
    }();
    const auto cert = certify_hardness(params, m);
    const double ratio = 10.0 / 100.0;
    CHECK(cert.t == static_cast<std::int64_t>(
                        std::ceil(60.0 * ratio * std::log(100.0))));
    for (VertexId v : cert.s) CHECK(m.degree(v) <= 2 * cert.t);
    CHECK(cert.prob_bound >= 1.0 - (60.0 / static_cast<double>(cert.t)) * ratio - 1e-12);
    CHECK(cert.prob_bound >= 0.0);
    CHECK(cert.cond_bound >= 1.0);
    CHECK(cert.v_max ==
          doctest::Approx(2.0 * cert.t + 2.0 + 2.0 * cert.restricted_edges / cert.t));
    // The certificate's bound matches a direct evaluation at (n', v_max).
    auto restricted = params;
    restricted.n = cert.n_prime;
    CHECK(cert.cond_bound ==
          doctest::Approx(analytic_vertex_bound(restricted, cert.v_max).value));
}

TEST_CASE("certify_hardness: dense mask stays coherent") {
    auto params = tiny_params(6, 4, 2);
    const Mask full = Mask::complete(6);
    const auto cert = certify_hardness(params, full);
    CHECK(cert.prob_bound >= 0.0);
    CHECK(cert.prob_bound <= 1.0);
    CHECK(cert.cond_bound >= 1.0);
    CHECK(cert.n_prime == static_cast<VertexId>(cert.s.size()));
}
