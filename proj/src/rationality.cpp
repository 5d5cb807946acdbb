#include "plumb/rationality.hpp"

#include <numeric>

#include "plumb/core.hpp"
#include "plumb/lattice.hpp"

namespace plumb {

const char* to_string(LauferAction a) {
    switch (a) {
        case LauferAction::proceed: return "continue";
        case LauferAction::increment: return "increment";
        case LauferAction::halt_not_rational: return "halt_not_rational";
        case LauferAction::halt_rational: return "halt_rational";
    }
    return "?";
}

const char* to_string(Rationality r) { return r == Rationality::rational ? "rational" : "not_rational"; }

LauferTrace laufer_rationality(const PlumbingGraph& g, const LauferOptions& options) {
    std::vector<std::size_t> order(g.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    return laufer_rationality(g, order, options);
}

LauferTrace laufer_rationality(const PlumbingGraph& g, std::span<const std::size_t> scan_order,
                               const LauferOptions& options) {
    const std::size_t n = g.size();
    if (scan_order.size() != n) throw InputError("scan order must list every vertex once");
    {
        std::vector<bool> seen(n, false);
        for (std::size_t v : scan_order) {
            if (v >= n || seen[v]) throw InputError("scan order must list every vertex once");
            seen[v] = true;
        }
    }
    if (!is_negative_definite(build_intersection_form(g)))
        throw PreconditionError("Laufer's algorithm needs a negative definite graph");

    LauferTrace trace;
    std::vector<std::int64_t> cycle(n, 1);
    if (options.record_cycles) trace.cycles.push_back(cycle);
    std::uint64_t budget = options.iteration_cap;

    while (true) {
        bool incremented = false;
        for (std::size_t pos = 0; pos < n; ++pos) {
            if (budget-- == 0)
                throw InternalError("Laufer iteration cap of " + std::to_string(options.iteration_cap) +
                                    " steps exceeded");
            const std::size_t v = scan_order[pos];
            std::int64_t product = g.weight(v) * cycle[v];
            for (std::size_t u : g.neighbours(v)) product += cycle[u];

            if (product >= 2) {
                trace.steps.push_back({v, product, LauferAction::halt_not_rational});
                trace.verdict = Rationality::not_rational;
                trace.final_cycle = cycle;
                return trace;
            }
            if (product == 1) {
                trace.steps.push_back({v, product, LauferAction::increment});
                cycle[v] += 1;
                if (options.record_cycles) trace.cycles.push_back(cycle);
                incremented = true;
                break;
            }
            const bool last = pos + 1 == n;
            trace.steps.push_back({v, product, last ? LauferAction::halt_rational : LauferAction::proceed});
        }
        if (!incremented) break;
    }
    trace.verdict = Rationality::rational;
    trace.final_cycle = cycle;
    return trace;
}

bool lemma_precheck(const PlumbingGraph& g) {
    for (std::size_t i = 0; i < g.size(); ++i)
        if (g.weight(i) + static_cast<std::int64_t>(g.degree(i)) > 1) return false;
    return true;
}

bool is_rational_graph(const PlumbingGraph& g, const LauferOptions& options) {
    if (!is_negative_definite(build_intersection_form(g))) return false;
    LauferOptions quiet = options;
    quiet.record_cycles = false;
    return laufer_rationality(g, quiet).verdict == Rationality::rational;
}

}  // namespace plumb
