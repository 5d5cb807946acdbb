#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>

#include "plumb/graph.hpp"
#include "plumb/rationality.hpp"

namespace plumb {

struct GeneratorParams {
    std::size_t max_vertices = 8;
    std::int64_t weight_min = -9;
    std::uint64_t seed = 1;
    std::size_t count = 1;
    bool require_rational = false;

    /// Throws InputError unless weight_min <= -2 and max_vertices >= 1.
    void validate() const;
};

/// Seed-reproducible stream of plumbing trees with n_i <= -2 and n_i + d_i <= 1. Trees come
/// from random Pruefer sequences; weights are drawn uniformly from the admissible range
/// at each vertex. With require_rational, candidates that are not negative definite and
/// Laufer-rational are discarded and redrawn.
class CandidateGenerator {
public:
    using Progress = std::function<void(const std::string&)>;

    explicit CandidateGenerator(GeneratorParams params, Progress progress = {});

    /// Next graph, or nullopt once `count` graphs have been produced.
    std::optional<PlumbingGraph> next();

    std::size_t emitted() const { return emitted_; }
    std::uint64_t attempts() const { return attempts_; }

private:
    std::uint64_t uniform(std::uint64_t bound);  // in [0, bound)
    std::optional<PlumbingGraph> draw_candidate();

    GeneratorParams params_;
    Progress progress_;
    std::mt19937_64 engine_;
    std::size_t emitted_ = 0;
    std::uint64_t attempts_ = 0;
    LauferOptions laufer_;
};

std::vector<PlumbingGraph> generate_candidates(const GeneratorParams& params,
                                               const CandidateGenerator::Progress& progress = {});

}  // namespace plumb
