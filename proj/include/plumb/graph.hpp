#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace plumb {

struct Vertex {
    std::string id;
    std::int64_t weight = 0;

    friend bool operator==(const Vertex&, const Vertex&) = default;
};

/// Unordered edge stored with first < second (canonical vertex indices).
struct Edge {
    std::size_t first = 0;
    std::size_t second = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Weighted plumbing forest. Vertices keep declaration order, which fixes every
/// matrix and vector indexing downstream. Edges never form loops, multi-edges or
/// cycles; add_edge rejects them.
class PlumbingGraph {
public:
    PlumbingGraph() = default;

    /// Appends a vertex; throws InputError on a duplicate or malformed id.
    std::size_t add_vertex(std::string id, std::int64_t weight);
    /// Throws InputError on self-loop, parallel edge, cycle or out-of-range index.
    void add_edge(std::size_t a, std::size_t b);
    void add_edge(std::string_view a, std::string_view b);
    void set_weight(std::size_t i, std::int64_t weight);

    std::size_t size() const { return vertices_.size(); }
    bool empty() const { return vertices_.empty(); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const Vertex& vertex(std::size_t i) const { return vertices_.at(i); }
    std::int64_t weight(std::size_t i) const { return vertices_.at(i).weight; }
    const std::string& id(std::size_t i) const { return vertices_.at(i).id; }

    /// Edges sorted lexicographically by (first, second).
    std::vector<Edge> edges() const;
    std::size_t edge_count() const { return edge_count_; }
    const std::vector<std::size_t>& neighbours(std::size_t i) const { return adjacency_.at(i); }
    std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }
    bool adjacent(std::size_t a, std::size_t b) const;

    std::optional<std::size_t> index_of(std::string_view id) const;
    std::size_t require_index(std::string_view id) const;

    /// Connected components, each listed in canonical order; components ordered by
    /// their smallest vertex.
    std::vector<std::vector<std::size_t>> components() const;

    /// A fresh id not used by any vertex, derived from `stem`.
    std::string fresh_id(std::string_view stem) const;

    friend bool operator==(const PlumbingGraph& a, const PlumbingGraph& b);

private:
    bool connected(std::size_t a, std::size_t b) const;

    std::vector<Vertex> vertices_;
    std::vector<std::vector<std::size_t>> adjacency_;
    std::size_t edge_count_ = 0;
};

bool is_valid_id(std::string_view id);

/// Graph built from (id, weight) pairs and id-pair edges. Convenience for fixtures.
PlumbingGraph make_graph(const std::vector<std::pair<std::string, std::int64_t>>& vertices,
                         const std::vector<std::pair<std::string, std::string>>& edges = {});

/// Chain of vertices v0 - v1 - ... with the given weights.
PlumbingGraph make_chain(const std::vector<std::int64_t>& weights);

/// Star: a centre with one chain per arm; arm weights listed from the centre outward.
PlumbingGraph make_star(std::int64_t centre, const std::vector<std::vector<std::int64_t>>& arms);

/// Removes (-1)-vertices until none remain, preserving the boundary 3-manifold.
/// Degree 0: delete. Degree 1: delete, neighbour weight +1. Degree 2: delete,
/// both neighbours +1, neighbours joined by an edge. The lowest-index (-1)-vertex
/// is blown down first. Throws PreconditionError on a (-1)-vertex of degree >= 3.
PlumbingGraph blow_down_normalize(const PlumbingGraph& g);

}  // namespace plumb
