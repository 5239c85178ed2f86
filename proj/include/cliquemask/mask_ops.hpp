// mask_ops.hpp — mask transformations used by the hardness reduction:
// edge donation between vertices, the vertex-removal step, iterated reduction
// to masks with few vertices, and restriction of a mask to a vertex subset.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cliquemask/core.hpp"
#include "cliquemask/errors.hpp"

namespace cliquemask {

struct ReductionStep {
    VertexId removed_vertex = 0;
    std::int64_t vertex_count_after = 0;
    std::int64_t edge_count_after = 0;
    int max_degree_after = 0;
};

struct ReductionTrace {
    int t = 0;
    std::vector<ReductionStep> steps;
    std::int64_t final_vertex_count = 0;
};

// Move every edge (s, v) with (s, u) not present to (s, u); the edge (v, u)
// itself, if present, is untouched. Preserves the edge count; the vertex set
// either stays V(M) or loses exactly v.
inline Mask donate(const Mask& m, VertexId v, VertexId u) {
    if (v == u) throw InvalidParams("donate requires v != u");
    if (!m.in_vertex_set(v)) throw InvalidParams("donating vertex " + std::to_string(v) + " not in V(M)");
    if (!m.in_vertex_set(u)) throw InvalidParams("receiving vertex " + std::to_string(u) + " not in V(M)");
    Mask out = m;
    const std::vector<VertexId> from_v = m.neighbors(v); // copy; out mutates
    for (VertexId s : from_v) {
        if (s == u) continue;
        if (!out.has_edge(s, u)) {
            out.remove_edge(s, v);
            out.add_edge(s, u);
        }
    }
    return out;
}

// |V| >= 2t + 2 + 2|M|/t, compared without rounding.
inline bool vertex_bound_reached(const Mask& m, int t) {
    // |V|*t >= 2t^2 + 2t + 2|M|
    return m.vertex_count() * static_cast<std::int64_t>(t) >=
           2 * static_cast<std::int64_t>(t) * t + 2 * static_cast<std::int64_t>(t) + 2 * m.edge_count();
}

// |V| > 2t + 2 + 2|M|/t: the reduction loop keeps going only above the bound.
inline bool vertex_bound_exceeded(const Mask& m, int t) {
    return m.vertex_count() * static_cast<std::int64_t>(t) >
           2 * static_cast<std::int64_t>(t) * t + 2 * static_cast<std::int64_t>(t) + 2 * m.edge_count();
}

// One round of the removal argument: order Low = {v : deg(v) <= t} ascending
// and let its first vertex donate to each of the others in turn. Requires
// max degree <= 2t and |V(M)| >= 2t + 2 + 2|M|/t; afterwards the first Low
// vertex has left the mask while max degree and edge count are preserved.
inline std::pair<Mask, VertexId> vertex_removal_step(const Mask& m, int t) {
    if (t < 1) throw InvalidParams("vertex_removal_step requires t >= 1");
    if (m.max_degree() > 2 * t)
        throw InvalidParams("vertex_removal_step precondition failed: max degree " +
                            std::to_string(m.max_degree()) + " exceeds 2t = " + std::to_string(2 * t));
    if (!vertex_bound_reached(m, t))
        throw InvalidParams("vertex_removal_step precondition failed: vertex count " +
                            std::to_string(m.vertex_count()) + " is below 2t + 2 + 2|M|/t");

    VertexSet low;
    for (VertexId v : m.vertices())
        if (m.degree(v) <= t) low.push_back(v);
    // |Low| >= 2t + 2 >= 4 follows from the two preconditions.
    const VertexId v1 = low.front();
    Mask out = m;
    for (std::size_t i = 1; i < low.size(); ++i) {
        if (out.in_vertex_set(v1)) out = donate(out, v1, low[i]);
    }
    return {std::move(out), v1};
}

// Repeat the removal step until |V| <= 2t + 2 + 2|M|/t. Requires max degree
// <= 2t; the result keeps the edge count and the degree cap.
inline std::pair<Mask, ReductionTrace> reduce_mask(const Mask& m, int t) {
    if (t < 1) throw InvalidParams("reduce_mask requires t >= 1");
    if (m.max_degree() > 2 * t)
        throw InvalidParams("reduce_mask precondition failed: max degree " +
                            std::to_string(m.max_degree()) + " exceeds 2t = " + std::to_string(2 * t));
    ReductionTrace trace;
    trace.t = t;
    Mask cur = m;
    while (vertex_bound_exceeded(cur, t)) {
        auto [next, removed] = vertex_removal_step(cur, t);
        cur = std::move(next);
        trace.steps.push_back({removed, cur.vertex_count(), cur.edge_count(), cur.max_degree()});
    }
    trace.final_vertex_count = cur.vertex_count();
    return {std::move(cur), std::move(trace)};
}

// Relabel the subgraph induced by S onto ground set [|S|]; phi is the
// order-preserving bijection back to the original vertices (phi[i-1] is the
// original name of relabeled vertex i).
struct MaskRestriction {
    VertexId n_prime = 0;
    Mask mask;
    VertexSet phi;
};

inline MaskRestriction restrict_mask(const Mask& m, std::span<const VertexId> s) {
    check_vertex_subset(s, m.n());
    const VertexId n_prime = static_cast<VertexId>(s.size());
    MaskRestriction out{n_prime, Mask(n_prime), VertexSet(s.begin(), s.end())};
    std::vector<VertexId> inverse(static_cast<std::size_t>(m.n()) + 1, 0);
    for (VertexId i = 1; i <= n_prime; ++i)
        inverse[static_cast<std::size_t>(out.phi[static_cast<std::size_t>(i) - 1])] = i;
    for (VertexId orig : s) {
        for (VertexId nb : m.neighbors(orig)) {
            if (nb > orig) continue; // visit each edge once, from its max endpoint
            const VertexId a = inverse[static_cast<std::size_t>(nb)];
            const VertexId b = inverse[static_cast<std::size_t>(orig)];
            if (a != 0 && b != 0) out.mask.add_edge(a, b);
        }
    }
    return out;
}

} // namespace cliquemask
