#include "plumb/constructions.hpp"

#include "plumb/core.hpp"

namespace plumb {

std::pair<PlumbingGraph, WuSet> framing_reduction_step(const PlumbingGraph& g, const WuSet& s, std::size_t v) {
    if (v >= g.size()) throw InputError("vertex index out of range");
    if (s.contains(v)) throw PreconditionError("vertex '" + g.id(v) + "' lies in the Wu set");
    std::int64_t in_s = 0;
    for (std::size_t u : g.neighbours(v))
        if (s.contains(u)) ++in_s;
    if (in_s != -g.weight(v))
        throw PreconditionError("vertex '" + g.id(v) + "' has " + std::to_string(in_s) +
                                " neighbours in the Wu set, expected " + std::to_string(-g.weight(v)));
    PlumbingGraph out = g;
    out.set_weight(v, g.weight(v) - 2);
    WuSet carried = make_wu_set(out, s.members);
    return {std::move(out), std::move(carried)};
}

std::pair<PlumbingGraph, WuSet> disjoint_union_with_rp3(const PlumbingGraph& g, const WuSet& s) {
    PlumbingGraph out = g;
    const std::size_t w = out.add_vertex(g.fresh_id("w"), -2);
    std::vector<std::size_t> members = s.members;
    members.push_back(w);
    WuSet extended = make_wu_set(out, std::move(members));
    return {std::move(out), std::move(extended)};
}

}  // namespace plumb
