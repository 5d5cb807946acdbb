#pragma once

// Spin structures on plumbed 3-manifolds: the mod-2 reduction moves and Wu sets.

#include <cstddef>
#include <vector>

#include "plumb/core.hpp"
#include "plumb/graph.hpp"

namespace plumb {

enum class ReductionMove {
    erase_pair = 1,    // even leaf v: erase v and its neighbour w
    flip_parity = 2,   // odd leaf v: erase v, flip the parity of w
};

struct ReductionStep {
    ReductionMove move;
    std::size_t leaf;
    std::size_t neighbour;
};

struct ResidualVertex {
    std::size_t vertex;
    int parity;  // 0 even, 1 odd

    friend bool operator==(const ResidualVertex&, const ResidualVertex&) = default;
};

struct ReductionTrace {
    std::vector<ReductionStep> steps;
    std::vector<ResidualVertex> residual;

    std::size_t p() const { return residual.size(); }
    std::size_t q() const;
};

/// Applies the moves at the lowest-index leaf until no edges remain.
ReductionTrace reduce_mod2(const PlumbingGraph& g);

/// Re-applies `trace.steps` to `g` and returns the resulting residual; used to check traces.
std::vector<ResidualVertex> replay_reduction(const PlumbingGraph& g, const ReductionTrace& trace);

struct WuSet {
    std::vector<std::size_t> members;  // sorted canonical indices
    CharVector c;                      // Q * 1_S
    bool independent = true;           // no two members adjacent

    bool contains(std::size_t v) const;
    friend bool operator==(const WuSet& a, const WuSet& b) { return a.members == b.members; }
};

/// Q * 1_S. Throws InputError when the result is not characteristic.
CharVector wu_char_vector(const PlumbingGraph& g, const std::vector<std::size_t>& s);

WuSet make_wu_set(const PlumbingGraph& g, std::vector<std::size_t> s);

/// All solutions of Q x = diag(Q) over GF(2), ordered by member list. Requires det Q != 0.
std::vector<WuSet> wu_sets_gf2(const PlumbingGraph& g);

/// Wu sets obtained by lifting subsets of the residual graph back through the reduction.
std::vector<WuSet> wu_sets_by_moves(const PlumbingGraph& g);

/// GF(2) enumeration, cross-checked against move lifting; throws InternalError on mismatch.
std::vector<WuSet> enumerate_wu_sets(const PlumbingGraph& g);

/// Mod-2 corank of Q, computed directly by GF(2) elimination.
std::size_t mod2_corank(const PlumbingGraph& g);

}  // namespace plumb
