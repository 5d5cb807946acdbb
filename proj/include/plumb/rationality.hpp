#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "plumb/graph.hpp"

namespace plumb {

enum class LauferAction { proceed, increment, halt_not_rational, halt_rational };
enum class Rationality { rational, not_rational };

const char* to_string(LauferAction a);
const char* to_string(Rationality r);

struct LauferStep {
    std::size_t vertex;
    std::int64_t product;
    LauferAction action;
};

struct LauferTrace {
    std::vector<std::vector<std::int64_t>> cycles;  // K_0, K_1, ...
    std::vector<LauferStep> steps;
    Rationality verdict = Rationality::rational;
    std::vector<std::int64_t> final_cycle;
};

struct LauferOptions {
    std::uint64_t iteration_cap = 1'000'000;
    bool record_cycles = true;
};

/// Laufer's computation sequence, scanning vertices in canonical order and restarting
/// the scan after every increment. Throws PreconditionError if Q is not negative
/// definite and InternalError if the iteration cap is hit.
LauferTrace laufer_rationality(const PlumbingGraph& g, const LauferOptions& options = {});

/// Same loop with an explicit scan order (a permutation of the vertex indices).
LauferTrace laufer_rationality(const PlumbingGraph& g, std::span<const std::size_t> scan_order,
                               const LauferOptions& options = {});

/// n_i + d_i <= 1 at every vertex (necessary for rationality).
bool lemma_precheck(const PlumbingGraph& g);

/// Negative definite and Laufer-rational.
bool is_rational_graph(const PlumbingGraph& g, const LauferOptions& options = {});

}  // namespace plumb
