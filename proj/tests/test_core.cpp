#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <map>
#include <set>

#include "cliquemask/core.hpp"

using namespace cliquemask;

TEST_CASE("rng streams are reproducible and index-separated") {
    RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
    bool same_ab = true, same_ac = true, same_ad = true;
    for (int i = 0; i < 256; ++i) {
        const auto va = a.next_u64();
        same_ab &= (va == b.next_u64());
        same_ac &= (va == c.next_u64());
        same_ad &= (va == d.next_u64());
    }
    CHECK(same_ab);
    CHECK_FALSE(same_ac);
    CHECK_FALSE(same_ad);
}

TEST_CASE("rng helpers stay in range") {
    RngStream rng(1, 0);
    for (int i = 0; i < 10000; ++i) {
        const double u = rng.next_unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        const auto b = rng.next_below(7);
        CHECK(b < 7);
        const int s = rng.next_sign();
        CHECK((s == 1 || s == -1));
    }
}

TEST_CASE("problem params derivation") {
    auto p = ProblemParams::from_exponents(10000, 0.25, 0.9);
    CHECK(p.k == 1000); // round(10000^0.75)
    CHECK(p.mask_budget() == std::llround(std::pow(10000.0, 0.9)));

    auto q = ProblemParams::from_counts(10000, 1000);
    CHECK(q.delta == doctest::Approx(0.25).epsilon(1e-12));

    CHECK(ProblemParams::default_degree_cap(1000000) == 73);

    CHECK_THROWS_AS(ProblemParams::from_counts(10, 11), InvalidParams);
    CHECK_THROWS_AS(ProblemParams::from_counts(10, 0), InvalidParams);
}

TEST_CASE("mask bookkeeping matches recomputation") {
    RngStream rng(5, 0);
    Mask m(30);
    for (int rep = 0; rep < 120; ++rep) {
        const auto a = static_cast<VertexId>(1 + rng.next_below(30));
        const auto b = static_cast<VertexId>(1 + rng.next_below(30));
        if (a == b) continue;
        const auto lo = std::min(a, b), hi = std::max(a, b);
        if (m.has_edge(lo, hi))
            m.remove_edge(lo, hi);
        else
            m.add_edge(lo, hi);
    }
    std::map<VertexId, int> degree;
    std::set<VertexId> endpoints;
    for (const auto& [a, b] : m.edges()) {
        ++degree[a];
        ++degree[b];
        endpoints.insert(a);
        endpoints.insert(b);
    }
    std::int64_t total = 0;
    for (VertexId v = 1; v <= m.n(); ++v) {
        CHECK(m.degree(v) == (degree.count(v) ? degree[v] : 0));
        total += m.degree(v);
    }
    CHECK(total == 2 * m.edge_count());
    const auto verts = m.vertices();
    CHECK(VertexSet(endpoints.begin(), endpoints.end()) == verts);
    CHECK(static_cast<std::int64_t>(verts.size()) == m.vertex_count());
}

TEST_CASE("mask rejects invalid edges") {
    Mask m(5);
    CHECK_THROWS_AS(m.add_edge(2, 2), InvalidParams);
    CHECK_THROWS_AS(m.add_edge(0, 3), InvalidParams);
    CHECK_THROWS_AS(m.add_edge(1, 6), InvalidParams);
    m.add_edge(1, 2);
    CHECK_THROWS_AS(m.add_edge(2, 1), InvalidParams); // duplicate after canonicalization
    CHECK(m.edge_count() == 1);
}

TEST_CASE("sample_clique: unique subset and error path") {
    RngStream rng(9, 0);
    const auto s5 = full_vertex_set(5);
    const auto c = sample_clique(5, 5, s5, rng);
    CHECK(c.members == VertexSet{1, 2, 3, 4, 5});

    const VertexSet s3{1, 2, 3};
    CHECK_THROWS_AS(sample_clique(6, 4, s3, rng), InvalidParams);
}

TEST_CASE("sample_clique: uniform over pairs of [4]") {
    RngStream rng(11, 0);
    const auto s = full_vertex_set(4);
    std::map<std::pair<VertexId, VertexId>, int> counts;
    const int draws = 60000;
    for (int i = 0; i < draws; ++i) {
        const auto c = sample_clique(4, 2, s, rng);
        ++counts[{c.members[0], c.members[1]}];
    }
    CHECK(counts.size() == 6);
    const double expect = draws / 6.0;
    const double sigma = std::sqrt(draws * (1.0 / 6.0) * (5.0 / 6.0));
    for (const auto& [pair, count] : counts)
        CHECK(std::abs(count - expect) <= 3.0 * sigma);
}

TEST_CASE("sample_clique: conditioning restricts the support") {
    RngStream rng(13, 0);
    const VertexSet s{1, 2, 3};
    std::map<std::pair<VertexId, VertexId>, int> counts;
    const int draws = 30000;
    for (int i = 0; i < draws; ++i) {
        const auto c = sample_clique(6, 2, s, rng);
        for (VertexId v : c.members) CHECK(v <= 3);
        ++counts[{c.members[0], c.members[1]}];
    }
    CHECK(counts.size() == 3);
    const double sigma = std::sqrt(draws * (1.0 / 3.0) * (2.0 / 3.0));
    for (const auto& [pair, count] : counts)
        CHECK(std::abs(count - draws / 3.0) <= 3.0 * sigma);
}

TEST_CASE("sample_null: empty mask, single-edge frequency, CLT on the sum") {
    RngStream rng(17, 0);
    const Mask empty(4);
    CHECK(sample_null(empty, rng).values.empty());

    Mask one(4);
    one.add_edge(1, 2);
    int plus = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i) plus += sample_null(one, rng).values[0] == 1;
    const double freq = static_cast<double>(plus) / draws;
    CHECK(std::abs(freq - 0.5) <= 3.0 * std::sqrt(0.25 / draws));

    RngStream rng2(17, 1);
    Mask hundred(40);
    {
        int added = 0;
        for (VertexId a = 1; a <= 40 && added < 100; ++a)
            for (VertexId b = a + 1; b <= 40 && added < 100; ++b, ++added) hundred.add_edge(a, b);
    }
    REQUIRE(hundred.edge_count() == 100);
    double mean_sum = 0.0;
    const int reps = 10000;
    for (int i = 0; i < reps; ++i) {
        const auto y = sample_null(hundred, rng2);
        int s = 0;
        for (auto v : y.values) s += v;
        mean_sum += s;
    }
    mean_sum /= reps;
    CHECK(std::abs(mean_sum) <= 3.0 * std::sqrt(100.0 / reps));
}

TEST_CASE("sample_planted: clique edges forced, marginals exact") {
    // n = k with the full mask: every value is +1.
    auto params = ProblemParams::from_counts(5, 5);
    RngStream rng(19, 0);
    const auto s5 = full_vertex_set(5);
    const auto [all, clique] = sample_planted(params, Mask::complete(5), s5, rng);
    for (auto v : all.values) CHECK(v == 1);
    CHECK(clique.members.size() == 5);

    // P(value = +1) = 1/6 + (5/6)(1/2) = 7/12 for a single masked edge.
    auto p42 = ProblemParams::from_counts(4, 2);
    Mask one(4);
    one.add_edge(1, 2);
    const auto s4 = full_vertex_set(4);
    RngStream rng2(19, 1);
    int plus = 0;
    const int draws = 100000;
    for (int i = 0; i < draws; ++i)
        plus += sample_planted(p42, one, s4, rng2).first.values[0] == 1;
    const double freq = static_cast<double>(plus) / draws;
    const double p = 7.0 / 12.0;
    CHECK(std::abs(freq - p) <= 3.0 * std::sqrt(p * (1 - p) / draws));

    // Clique confined to {3,4}: the edge (1,2) is a fair coin.
    RngStream rng3(19, 2);
    const VertexSet s34{3, 4};
    plus = 0;
    for (int i = 0; i < draws; ++i)
        plus += sample_planted(p42, one, s34, rng3).first.values[0] == 1;
    const double freq2 = static_cast<double>(plus) / draws;
    CHECK(std::abs(freq2 - 0.5) <= 3.0 * std::sqrt(0.25 / draws));

    CHECK_THROWS_AS(sample_planted(p42, one, VertexSet{3}, rng3), InvalidParams);
}

TEST_CASE("sample_planted: at least C(k,2) plus-entries under the full mask") {
    auto params = ProblemParams::from_counts(7, 3);
    const Mask full = Mask::complete(7);
    const auto s = full_vertex_set(7);
    RngStream rng(23, 0);
    for (int rep = 0; rep < 200; ++rep) {
        const auto [y, clique] = sample_planted(params, full, s, rng);
        int plus = 0;
        for (auto v : y.values) plus += v == 1;
        CHECK(plus >= 3); // C(3,2)
    }
}

TEST_CASE("samplers are deterministic in (seed, stream, call sequence)") {
    auto params = ProblemParams::from_counts(12, 3);
    Mask m(12);
    m.add_edge(1, 5);
    m.add_edge(2, 9);
    m.add_edge(7, 8);
    const auto s = full_vertex_set(12);
    RngStream r1(77, 3), r2(77, 3);
    const auto a = sample_planted(params, m, s, r1);
    const auto b = sample_planted(params, m, s, r2);
    CHECK(a.first.values == b.first.values);
    CHECK(a.second.members == b.second.members);
    RngStream r3(77, 4);
    const auto c = sample_planted(params, m, s, r3);
    const bool differs = a.first.values != c.first.values || a.second.members != c.second.members;
    CHECK(differs);
}

TEST_CASE("mask rejects a negative ground set before allocating") {
    CHECK_THROWS_AS(Mask(-1), InvalidParams);
}
