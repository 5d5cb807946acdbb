#include "plumb/generator.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include "plumb/core.hpp"

namespace plumb {

void GeneratorParams::validate() const {
    if (max_vertices < 1) throw InputError("max_vertices must be at least 1");
    if (weight_min > -2) throw InputError("weight_min must be at most -2");
}

CandidateGenerator::CandidateGenerator(GeneratorParams params, Progress progress)
    : params_(params), progress_(std::move(progress)), engine_(params.seed) {
    params_.validate();
}

std::uint64_t CandidateGenerator::uniform(std::uint64_t bound) {
    // Rejection sampling keeps the draw identical on every standard library.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = engine_();
    } while (x >= limit);
    return x % bound;
}

std::optional<PlumbingGraph> CandidateGenerator::draw_candidate() {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform(params_.max_vertices));

    std::vector<std::pair<std::size_t, std::size_t>> edges;
    if (n == 2) edges.emplace_back(0, 1);
    if (n > 2) {
        std::vector<std::size_t> code(n - 2);
        for (auto& c : code) c = static_cast<std::size_t>(uniform(n));
        std::vector<std::size_t> degree(n, 1);
        for (std::size_t c : code) ++degree[c];
        std::set<std::size_t> leaves;
        for (std::size_t i = 0; i < n; ++i)
            if (degree[i] == 1) leaves.insert(i);
        for (std::size_t c : code) {
            const std::size_t leaf = *leaves.begin();
            leaves.erase(leaves.begin());
            edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
            if (--degree[c] == 1) leaves.insert(c);
        }
        const std::size_t a = *leaves.begin();
        const std::size_t b = *std::next(leaves.begin());
        edges.emplace_back(a, b);
    }

    std::vector<std::size_t> degree(n, 0);
    for (const auto& [a, b] : edges) {
        ++degree[a];
        ++degree[b];
    }
    PlumbingGraph g;
    for (std::size_t i = 0; i < n; ++i) {
        const std::int64_t hi = std::min<std::int64_t>(-2, 1 - static_cast<std::int64_t>(degree[i]));
        if (hi < params_.weight_min) return std::nullopt;
        const auto span = static_cast<std::uint64_t>(hi - params_.weight_min + 1);
        g.add_vertex("v" + std::to_string(i), params_.weight_min + static_cast<std::int64_t>(uniform(span)));
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

std::optional<PlumbingGraph> CandidateGenerator::next() {
    if (emitted_ >= params_.count) return std::nullopt;
    while (true) {
        ++attempts_;
        if (progress_ && attempts_ % 10000 == 0)
            progress_("generator: " + std::to_string(attempts_) + " attempts, " + std::to_string(emitted_) + "/" +
                      std::to_string(params_.count) + " emitted");
        auto g = draw_candidate();
        if (!g) continue;
        if (params_.require_rational && !is_rational_graph(*g, laufer_)) continue;
        ++emitted_;
        return g;
    }
}

std::vector<PlumbingGraph> generate_candidates(const GeneratorParams& params,
                                               const CandidateGenerator::Progress& progress) {
    CandidateGenerator gen(params, progress);
    std::vector<PlumbingGraph> out;
    while (auto g = gen.next()) out.push_back(std::move(*g));
    return out;
}

}  // namespace plumb
