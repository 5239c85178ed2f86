// core.hpp — problem parameters, masks, clique indicators, masked observations,
// and exact samplers for the null / planted / conditioned distributions.
//
// Conventions: vertices are 1-based in [1, n]; mask edges are unordered pairs
// stored canonically as (min, max); observations take values in {-1, +1}.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cliquemask/errors.hpp"
#include "cliquemask/rng.hpp"

namespace cliquemask {

using VertexId = std::int32_t;
using VertexSet = std::vector<VertexId>; // sorted, distinct

// Problem-size parameters. delta and gamma are the signal / query exponents
// (k ~ n^{1/2+delta}, mask budget ~ n^gamma); degree_cap is the polynomial
// degree D of the likelihood-ratio bounds; ell optionally overrides the
// threshold-polynomial order used by the detector.
struct ProblemParams {
    std::int64_t n = 0;
    std::int64_t k = 0;
    double delta = 0.0;
    double gamma = 0.0;
    int degree_cap = 1;
    std::optional<int> ell;

    // Default D: ceil((ln n)^2 / ln ln n), a concrete slowly-growing choice;
    // the denominator is clamped at 1 so tiny n stay well defined.
    static int default_degree_cap(std::int64_t n) {
        if (n < 2) return 1;
        const double ln_n = std::log(static_cast<double>(n));
        const double denom = std::max(1.0, std::log(ln_n));
        return std::max(1, static_cast<int>(std::ceil(ln_n * ln_n / denom)));
    }

    static ProblemParams from_exponents(std::int64_t n, double delta, double gamma) {
        if (n < 1) throw InvalidParams("n must be positive");
        ProblemParams p;
        p.n = n;
        p.delta = delta;
        p.gamma = gamma;
        p.k = std::llround(std::pow(static_cast<double>(n), 0.5 + delta));
        p.k = std::clamp<std::int64_t>(p.k, 1, n);
        p.degree_cap = default_degree_cap(n);
        return p;
    }

    static ProblemParams from_counts(std::int64_t n, std::int64_t k) {
        if (n < 1) throw InvalidParams("n must be positive");
        if (k < 1 || k > n) throw InvalidParams("k must satisfy 1 <= k <= n");
        ProblemParams p;
        p.n = n;
        p.k = k;
        p.delta = n > 1 ? std::log(static_cast<double>(k)) / std::log(static_cast<double>(n)) - 0.5
                        : 0.0;
        p.gamma = 0.0;
        p.degree_cap = default_degree_cap(n);
        return p;
    }

    // Target mask size round(n^gamma).
    std::int64_t mask_budget() const {
        return std::max<std::int64_t>(1, std::llround(std::pow(static_cast<double>(n), gamma)));
    }

    void validate() const {
        if (n < 1) throw InvalidParams("n must be positive");
        if (k < 1 || k > n) throw InvalidParams("k must satisfy 1 <= k <= n");
        if (degree_cap < 0) throw InvalidParams("degree_cap must be >= 0");
        if (ell && *ell < 0) throw InvalidParams("ell must be >= 0");
    }
};

// A mask: set of unordered vertex pairs over ground set [n], with per-vertex
// degree bookkeeping. Value type; mask transformations return new masks.
class Mask {
public:
    using Edge = std::pair<VertexId, VertexId>;

    explicit Mask(VertexId n) : n_(checked_size(n)), adj_(static_cast<std::size_t>(n) + 1) {}

    static Mask complete(VertexId n) {
        Mask m(n);
        for (VertexId v = 1; v <= n; ++v) {
            auto& nb = m.adj_[static_cast<std::size_t>(v)];
            nb.reserve(static_cast<std::size_t>(n) - 1);
            for (VertexId u = 1; u <= n; ++u)
                if (u != v) nb.push_back(u);
        }
        m.edge_count_ = static_cast<std::int64_t>(n) * (n - 1) / 2;
        m.vertex_count_ = n >= 2 ? n : 0;
        return m;
    }

    VertexId n() const { return n_; }
    std::int64_t edge_count() const { return edge_count_; }
    std::int64_t vertex_count() const { return vertex_count_; } // |V(M)|

    bool has_edge(VertexId u, VertexId v) const {
        check_vertex(u);
        check_vertex(v);
        if (u == v) return false;
        const auto& nb = adj_[static_cast<std::size_t>(u)];
        return std::binary_search(nb.begin(), nb.end(), v);
    }

    void add_edge(VertexId u, VertexId v) {
        check_vertex(u);
        check_vertex(v);
        if (u == v) throw InvalidParams("self-loops are not allowed in a mask");
        if (has_edge(u, v)) throw InvalidParams("duplicate mask edge");
        insert_neighbor(u, v);
        insert_neighbor(v, u);
        ++edge_count_;
    }

    void remove_edge(VertexId u, VertexId v) {
        if (!has_edge(u, v)) throw InvalidParams("edge not present in mask");
        erase_neighbor(u, v);
        erase_neighbor(v, u);
        --edge_count_;
    }

    int degree(VertexId v) const {
        check_vertex(v);
        return static_cast<int>(adj_[static_cast<std::size_t>(v)].size());
    }

    int max_degree() const {
        std::size_t best = 0;
        for (const auto& nb : adj_) best = std::max(best, nb.size());
        return static_cast<int>(best);
    }

    const std::vector<VertexId>& neighbors(VertexId v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    bool in_vertex_set(VertexId v) const { return degree(v) > 0; }

    // V(M): vertices of positive degree, ascending.
    VertexSet vertices() const {
        VertexSet out;
        out.reserve(static_cast<std::size_t>(vertex_count_));
        for (VertexId v = 1; v <= n_; ++v)
            if (!adj_[static_cast<std::size_t>(v)].empty()) out.push_back(v);
        return out;
    }

    // Canonical edge list, sorted by (min endpoint, max endpoint).
    std::vector<Edge> edges() const {
        std::vector<Edge> out;
        out.reserve(static_cast<std::size_t>(edge_count_));
        for (VertexId v = 1; v <= n_; ++v)
            for (VertexId u : adj_[static_cast<std::size_t>(v)])
                if (v < u) out.emplace_back(v, u);
        return out;
    }

    bool operator==(const Mask& other) const {
        return n_ == other.n_ && adj_ == other.adj_;
    }

private:
    static VertexId checked_size(VertexId n) {
        if (n < 0) throw InvalidParams("mask ground set size must be >= 0");
        return n;
    }

    void check_vertex(VertexId v) const {
        if (v < 1 || v > n_) throw InvalidParams("vertex " + std::to_string(v) + " out of range [1, " + std::to_string(n_) + "]");
    }

    void insert_neighbor(VertexId v, VertexId u) {
        auto& nb = adj_[static_cast<std::size_t>(v)];
        if (nb.empty()) ++vertex_count_;
        nb.insert(std::upper_bound(nb.begin(), nb.end(), u), u);
    }

    void erase_neighbor(VertexId v, VertexId u) {
        auto& nb = adj_[static_cast<std::size_t>(v)];
        nb.erase(std::lower_bound(nb.begin(), nb.end(), u));
        if (nb.empty()) --vertex_count_;
    }

    VertexId n_;
    std::int64_t edge_count_ = 0;
    std::int64_t vertex_count_ = 0;
    std::vector<std::vector<VertexId>> adj_; // 1-based, sorted neighbor lists
};

// The planted k-subset.
struct CliqueIndicator {
    VertexId n = 0;
    VertexSet members; // sorted, |members| = k

    bool contains(VertexId v) const {
        return std::binary_search(members.begin(), members.end(), v);
    }
};

// A mask plus its materialized canonical edge list, shareable across many
// observations so per-trial sampling costs only the coin flips.
struct SharedMask {
    std::shared_ptr<const Mask> mask;
    std::shared_ptr<const std::vector<Mask::Edge>> edges;
};

inline SharedMask share_mask(Mask m) {
    SharedMask out;
    out.edges = std::make_shared<const std::vector<Mask::Edge>>(m.edges());
    out.mask = std::make_shared<const Mask>(std::move(m));
    return out;
}

// Observations restricted to a mask: values[i] in {-1, +1} is the observation
// of edge_list()[i], the generating mask's canonical edge list.
struct MaskedGraph {
    std::shared_ptr<const Mask> mask;
    std::shared_ptr<const std::vector<Mask::Edge>> edges;
    std::vector<std::int8_t> values;

    const std::vector<Mask::Edge>& edge_list() const { return *edges; }
};

inline VertexSet full_vertex_set(VertexId n) {
    VertexSet s(static_cast<std::size_t>(n));
    for (VertexId v = 1; v <= n; ++v) s[static_cast<std::size_t>(v) - 1] = v;
    return s;
}

inline void check_vertex_subset(std::span<const VertexId> s, VertexId n) {
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1 || s[i] > n) throw InvalidParams("subset vertex out of range");
        if (i > 0 && s[i] <= s[i - 1]) throw InvalidParams("subset must be sorted and distinct");
    }
}

// Uniform k-subset of S (partial Fisher-Yates over a copy of S).
inline CliqueIndicator sample_clique(VertexId n, std::int64_t k, std::span<const VertexId> s,
                                     RngStream& rng) {
    check_vertex_subset(s, n);
    if (k < 0 || k > static_cast<std::int64_t>(s.size()))
        throw InvalidParams("sample_clique requires k <= |S|");
    VertexSet pool(s.begin(), s.end());
    const std::size_t kk = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < kk; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.next_below(pool.size() - i));
        std::swap(pool[i], pool[j]);
    }
    CliqueIndicator out;
    out.n = n;
    out.members.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(kk));
    std::sort(out.members.begin(), out.members.end());
    return out;
}

// Null distribution on a mask: each revealed entry is an independent fair sign.
inline MaskedGraph sample_null(const SharedMask& m, RngStream& rng) {
    MaskedGraph g;
    g.mask = m.mask;
    g.edges = m.edges;
    g.values.resize(g.edges->size());
    for (auto& v : g.values) v = static_cast<std::int8_t>(rng.next_sign());
    return g;
}

inline MaskedGraph sample_null(const Mask& m, RngStream& rng) {
    return sample_null(share_mask(m), rng);
}

// Planted distribution on a mask, with the clique conditioned to lie in S:
// entries covered by the clique are +1, all others are independent fair signs.
inline std::pair<MaskedGraph, CliqueIndicator> sample_planted(const ProblemParams& params,
                                                              const SharedMask& m,
                                                              std::span<const VertexId> s,
                                                              RngStream& rng) {
    params.validate();
    if (m.mask->n() != params.n) throw InvalidParams("mask ground set does not match params.n");
    CliqueIndicator clique = sample_clique(m.mask->n(), params.k, s, rng);
    MaskedGraph g;
    g.mask = m.mask;
    g.edges = m.edges;
    g.values.resize(g.edges->size());
    std::vector<std::uint8_t> in_clique(static_cast<std::size_t>(params.n) + 1, 0);
    for (VertexId v : clique.members) in_clique[static_cast<std::size_t>(v)] = 1;
    for (std::size_t i = 0; i < g.values.size(); ++i) {
        const auto [a, b] = (*g.edges)[i];
        if (in_clique[static_cast<std::size_t>(a)] && in_clique[static_cast<std::size_t>(b)])
            g.values[i] = 1;
        else
            g.values[i] = static_cast<std::int8_t>(rng.next_sign());
    }
    return {std::move(g), std::move(clique)};
}

inline std::pair<MaskedGraph, CliqueIndicator> sample_planted(const ProblemParams& params,
                                                              const Mask& m,
                                                              std::span<const VertexId> s,
                                                              RngStream& rng) {
    return sample_planted(params, share_mask(m), s, rng);
}

} // namespace cliquemask
