#include "plumb/graph.hpp"

#include <algorithm>
#include <queue>

#include "plumb/core.hpp"

namespace plumb {

bool is_valid_id(std::string_view id) {
    if (id.empty()) return false;
    return std::none_of(id.begin(), id.end(), [](char c) {
        return c == ':' || c == '-' || c == '#' || c == ' ' || c == '\t' || c == '\n' ||
               c == '\r' || c == '\v' || c == '\f';
    });
}

std::size_t PlumbingGraph::add_vertex(std::string id, std::int64_t weight) {
    if (!is_valid_id(id)) throw InputError("invalid vertex id '" + id + "'");
    if (index_of(id)) throw InputError("duplicate vertex id '" + id + "'");
    vertices_.push_back({std::move(id), weight});
    adjacency_.emplace_back();
    return vertices_.size() - 1;
}

void PlumbingGraph::add_edge(std::size_t a, std::size_t b) {
    if (a >= size() || b >= size()) throw InputError("edge endpoint out of range");
    if (a == b) throw InputError("self-loop at '" + id(a) + "'");
    if (adjacent(a, b)) throw InputError("parallel edge " + id(a) + "-" + id(b));
    if (connected(a, b)) throw InputError("edge " + id(a) + "-" + id(b) + " closes a cycle");
    auto insert_sorted = [](std::vector<std::size_t>& list, std::size_t v) {
        list.insert(std::lower_bound(list.begin(), list.end(), v), v);
    };
    insert_sorted(adjacency_[a], b);
    insert_sorted(adjacency_[b], a);
    ++edge_count_;
}

void PlumbingGraph::add_edge(std::string_view a, std::string_view b) {
    add_edge(require_index(a), require_index(b));
}

void PlumbingGraph::set_weight(std::size_t i, std::int64_t weight) { vertices_.at(i).weight = weight; }

std::vector<Edge> PlumbingGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (std::size_t a = 0; a < size(); ++a)
        for (std::size_t b : adjacency_[a])
            if (a < b) out.push_back({a, b});
    return out;
}

bool PlumbingGraph::adjacent(std::size_t a, std::size_t b) const {
    const auto& list = adjacency_.at(a);
    return std::binary_search(list.begin(), list.end(), b);
}

std::optional<std::size_t> PlumbingGraph::index_of(std::string_view id) const {
    for (std::size_t i = 0; i < vertices_.size(); ++i)
        if (vertices_[i].id == id) return i;
    return std::nullopt;
}

std::size_t PlumbingGraph::require_index(std::string_view id) const {
    if (auto i = index_of(id)) return *i;
    throw InputError("unknown vertex id '" + std::string(id) + "'");
}

bool PlumbingGraph::connected(std::size_t a, std::size_t b) const {
    std::vector<bool> seen(size(), false);
    std::queue<std::size_t> todo;
    todo.push(a);
    seen[a] = true;
    while (!todo.empty()) {
        std::size_t v = todo.front();
        todo.pop();
        if (v == b) return true;
        for (std::size_t w : adjacency_[v])
            if (!seen[w]) {
                seen[w] = true;
                todo.push(w);
            }
    }
    return false;
}

std::vector<std::vector<std::size_t>> PlumbingGraph::components() const {
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> seen(size(), false);
    for (std::size_t start = 0; start < size(); ++start) {
        if (seen[start]) continue;
        std::vector<std::size_t> comp;
        std::vector<std::size_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (std::size_t w : adjacency_[v])
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::string PlumbingGraph::fresh_id(std::string_view stem) const {
    std::string candidate(stem);
    for (std::size_t k = 1; index_of(candidate); ++k) candidate = std::string(stem) + std::to_string(k);
    return candidate;
}

bool operator==(const PlumbingGraph& a, const PlumbingGraph& b) {
    return a.vertices_ == b.vertices_ && a.adjacency_ == b.adjacency_;
}

PlumbingGraph make_graph(const std::vector<std::pair<std::string, std::int64_t>>& vertices,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
    PlumbingGraph g;
    for (const auto& [id, w] : vertices) g.add_vertex(id, w);
    for (const auto& [a, b] : edges) g.add_edge(a, b);
    return g;
}

PlumbingGraph make_chain(const std::vector<std::int64_t>& weights) {
    PlumbingGraph g;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        g.add_vertex("v" + std::to_string(i), weights[i]);
        if (i > 0) g.add_edge(i - 1, i);
    }
    return g;
}

PlumbingGraph make_star(std::int64_t centre, const std::vector<std::vector<std::int64_t>>& arms) {
    PlumbingGraph g;
    g.add_vertex("c", centre);
    for (std::size_t a = 0; a < arms.size(); ++a) {
        std::size_t prev = 0;
        for (std::size_t k = 0; k < arms[a].size(); ++k) {
            std::size_t v = g.add_vertex("a" + std::to_string(a) + "_" + std::to_string(k), arms[a][k]);
            g.add_edge(prev, v);
            prev = v;
        }
    }
    return g;
}

PlumbingGraph blow_down_normalize(const PlumbingGraph& g) {
    // Work on an id-keyed copy; rebuild after every blow-down so indices stay canonical.
    PlumbingGraph current = g;
    while (true) {
        std::optional<std::size_t> target;
        for (std::size_t i = 0; i < current.size(); ++i)
            if (current.weight(i) == -1) {
                target = i;
                break;
            }
        if (!target) return current;
        const std::size_t v = *target;
        const auto nbrs = current.neighbours(v);
        if (nbrs.size() >= 3)
            throw PreconditionError("cannot blow down (-1)-vertex '" + current.id(v) + "' of degree " +
                                    std::to_string(nbrs.size()));

        PlumbingGraph next;
        for (std::size_t i = 0; i < current.size(); ++i) {
            if (i == v) continue;
            std::int64_t w = current.weight(i);
            if (std::find(nbrs.begin(), nbrs.end(), i) != nbrs.end()) w += 1;
            next.add_vertex(current.id(i), w);
        }
        for (const Edge& e : current.edges())
            if (e.first != v && e.second != v) next.add_edge(current.id(e.first), current.id(e.second));
        if (nbrs.size() == 2) next.add_edge(current.id(nbrs[0]), current.id(nbrs[1]));
        current = std::move(next);
    }
}

}  // namespace plumb
