#pragma once

// Graph surgeries that carry a spin structure along: the framing change at a vertex
// and the disjoint union with a (-2)-sphere.

#include <cstddef>
#include <utility>

#include "plumb/graph.hpp"
#include "plumb/spin.hpp"

namespace plumb {

/// Changes the weight at v from n_v to n_v - 2, keeping the Wu set. Requires v outside S
/// with exactly -n_v neighbours in S; throws PreconditionError otherwise.
std::pair<PlumbingGraph, WuSet> framing_reduction_step(const PlumbingGraph& g, const WuSet& s,
                                                       std::size_t v);

/// Adds an isolated (-2)-vertex w and puts it in the Wu set.
std::pair<PlumbingGraph, WuSet> disjoint_union_with_rp3(const PlumbingGraph& g, const WuSet& s);

}  // namespace plumb
