#include "plumb/spin.hpp"

#include <algorithm>
#include <optional>
#include <set>

#include "plumb/lattice.hpp"

namespace plumb {

namespace {

int parity_of(std::int64_t w) { return static_cast<int>(((w % 2) + 2) % 2); }

// Mutable copy of the graph that the moves act on; vertices are erased, never renumbered.
struct ParityGraph {
    std::vector<std::set<std::size_t>> adj;
    std::vector<int> parity;
    std::vector<bool> alive;

    explicit ParityGraph(const PlumbingGraph& g) : adj(g.size()), parity(g.size()), alive(g.size(), true) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            parity[i] = parity_of(g.weight(i));
            adj[i].insert(g.neighbours(i).begin(), g.neighbours(i).end());
        }
    }

    void erase(std::size_t v) {
        for (std::size_t w : adj[v]) adj[w].erase(v);
        adj[v].clear();
        alive[v] = false;
    }

    std::optional<std::size_t> lowest_leaf() const {
        for (std::size_t i = 0; i < adj.size(); ++i)
            if (alive[i] && adj[i].size() == 1) return i;
        return std::nullopt;
    }
};

// Extra state recorded while reducing, needed to lift Wu sets back up.
struct LiftRecord {
    ReductionStep step;
    std::vector<std::size_t> neighbour_adjacent;  // w's neighbours other than v, at the time of the move
    int neighbour_parity = 0;                      // parity of w at the time of the move
};

ReductionTrace run_reduction(const PlumbingGraph& g, std::vector<LiftRecord>* records) {
    ParityGraph pg(g);
    ReductionTrace trace;
    while (auto leaf = pg.lowest_leaf()) {
        const std::size_t v = *leaf;
        const std::size_t w = *pg.adj[v].begin();
        const ReductionMove move = pg.parity[v] == 0 ? ReductionMove::erase_pair : ReductionMove::flip_parity;
        if (records) {
            LiftRecord rec{{move, v, w}, {}, pg.parity[w]};
            for (std::size_t u : pg.adj[w])
                if (u != v) rec.neighbour_adjacent.push_back(u);
            records->push_back(std::move(rec));
        }
        trace.steps.push_back({move, v, w});
        if (move == ReductionMove::erase_pair) {
            pg.erase(v);
            pg.erase(w);
        } else {
            pg.erase(v);
            pg.parity[w] ^= 1;
        }
    }
    for (std::size_t i = 0; i < pg.alive.size(); ++i)
        if (pg.alive[i]) trace.residual.push_back({i, pg.parity[i]});
    return trace;
}

std::vector<std::uint8_t> indicator(std::size_t n, const std::vector<std::size_t>& s) {
    std::vector<std::uint8_t> x(n, 0);
    for (std::size_t v : s) {
        if (v >= n) throw InputError("vertex index " + std::to_string(v) + " out of range");
        x[v] = 1;
    }
    return x;
}

bool wu_set_less(const WuSet& a, const WuSet& b) { return a.members < b.members; }

void require_nonsingular(const PlumbingGraph& g) {
    if (determinant(build_intersection_form(g)) == 0)
        throw PreconditionError("intersection form is singular; spin structures need det != 0");
}

}  // namespace

std::size_t ReductionTrace::q() const {
    return static_cast<std::size_t>(
        std::count_if(residual.begin(), residual.end(), [](const ResidualVertex& r) { return r.parity == 0; }));
}

ReductionTrace reduce_mod2(const PlumbingGraph& g) { return run_reduction(g, nullptr); }

std::vector<ResidualVertex> replay_reduction(const PlumbingGraph& g, const ReductionTrace& trace) {
    ParityGraph pg(g);
    for (const ReductionStep& s : trace.steps) {
        if (!pg.alive[s.leaf] || !pg.alive[s.neighbour] || pg.adj[s.leaf].size() != 1 ||
            *pg.adj[s.leaf].begin() != s.neighbour)
            throw InputError("reduction step does not apply: " + g.id(s.leaf) + " is not a leaf on " +
                             g.id(s.neighbour));
        const bool even = pg.parity[s.leaf] == 0;
        if (even != (s.move == ReductionMove::erase_pair))
            throw InputError("reduction step uses the wrong move at " + g.id(s.leaf));
        pg.erase(s.leaf);
        if (even)
            pg.erase(s.neighbour);
        else
            pg.parity[s.neighbour] ^= 1;
    }
    std::vector<ResidualVertex> residual;
    for (std::size_t i = 0; i < pg.alive.size(); ++i)
        if (pg.alive[i]) residual.push_back({i, pg.parity[i]});
    return residual;
}

bool WuSet::contains(std::size_t v) const { return std::binary_search(members.begin(), members.end(), v); }

CharVector wu_char_vector(const PlumbingGraph& g, const std::vector<std::size_t>& s) {
    const std::size_t n = g.size();
    const auto x = indicator(n, s);
    CharVector c;
    c.values.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t v = x[i] ? g.weight(i) : 0;
        for (std::size_t j : g.neighbours(i)) v += x[j];
        c[i] = v;
    }
    for (std::size_t i = 0; i < n; ++i)
        if (parity_of(c[i]) != parity_of(g.weight(i)))
            throw InputError("subset is not a Wu set: c_S is not characteristic at '" + g.id(i) + "'");
    return c;
}

WuSet make_wu_set(const PlumbingGraph& g, std::vector<std::size_t> s) {
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InputError("repeated vertex in Wu set");
    WuSet out;
    out.c = wu_char_vector(g, s);
    out.members = std::move(s);
    for (std::size_t i = 0; i < out.members.size() && out.independent; ++i)
        for (std::size_t j = i + 1; j < out.members.size(); ++j)
            if (g.adjacent(out.members[i], out.members[j])) {
                out.independent = false;
                break;
            }
    return out;
}

namespace {

// Reduced row echelon form of [Q mod 2 | diag(Q) mod 2] and its pivot columns.
struct Gf2System {
    std::vector<std::vector<std::uint8_t>> rows;  // each of length n + 1
    std::vector<std::size_t> pivots;
};

Gf2System eliminate_gf2(const PlumbingGraph& g) {
    const std::size_t n = g.size();
    Gf2System sys;
    sys.rows.assign(n, std::vector<std::uint8_t>(n + 1, 0));
    for (std::size_t i = 0; i < n; ++i) {
        sys.rows[i][i] = static_cast<std::uint8_t>(parity_of(g.weight(i)));
        for (std::size_t j : g.neighbours(i)) sys.rows[i][j] = 1;
        sys.rows[i][n] = static_cast<std::uint8_t>(parity_of(g.weight(i)));
    }
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < n; ++c) {
        std::size_t p = r;
        while (p < n && sys.rows[p][c] == 0) ++p;
        if (p == n) continue;
        std::swap(sys.rows[r], sys.rows[p]);
        for (std::size_t i = 0; i < n; ++i)
            if (i != r && sys.rows[i][c])
                for (std::size_t j = c; j <= n; ++j) sys.rows[i][j] ^= sys.rows[r][j];
        sys.pivots.push_back(c);
        ++r;
    }
    return sys;
}

}  // namespace

std::size_t mod2_corank(const PlumbingGraph& g) { return g.size() - eliminate_gf2(g).pivots.size(); }

std::vector<WuSet> wu_sets_gf2(const PlumbingGraph& g) {
    require_nonsingular(g);
    const std::size_t n = g.size();
    const Gf2System sys = eliminate_gf2(g);
    const std::size_t rank = sys.pivots.size();
    for (std::size_t i = rank; i < n; ++i)
        if (sys.rows[i][n]) throw InternalError("no characteristic subset exists (inconsistent GF(2) system)");

    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : sys.pivots) is_pivot[c] = true;
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < n; ++c)
        if (!is_pivot[c]) free_cols.push_back(c);

    std::vector<WuSet> out;
    const std::size_t combos = std::size_t{1} << free_cols.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
        std::vector<std::uint8_t> x(n, 0);
        for (std::size_t f = 0; f < free_cols.size(); ++f) x[free_cols[f]] = (mask >> f) & 1U;
        for (std::size_t r = 0; r < rank; ++r) {
            std::uint8_t v = sys.rows[r][n];
            for (std::size_t c : free_cols) v ^= static_cast<std::uint8_t>(sys.rows[r][c] & x[c]);
            x[sys.pivots[r]] = v;
        }
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
            if (x[i]) members.push_back(i);
        out.push_back(make_wu_set(g, std::move(members)));
    }
    std::sort(out.begin(), out.end(), wu_set_less);
    return out;
}

std::vector<WuSet> wu_sets_by_moves(const PlumbingGraph& g) {
    require_nonsingular(g);
    std::vector<LiftRecord> records;
    const ReductionTrace trace = run_reduction(g, &records);

    std::vector<std::size_t> odd, even;
    for (const ResidualVertex& r : trace.residual) (r.parity ? odd : even).push_back(r.vertex);

    std::vector<WuSet> out;
    const std::size_t combos = std::size_t{1} << even.size();
    for (std::size_t mask = 0; mask < combos; ++mask) {
        std::vector<bool> in(g.size(), false);
        for (std::size_t v : odd) in[v] = true;
        for (std::size_t e = 0; e < even.size(); ++e)
            if ((mask >> e) & 1U) in[even[e]] = true;

        for (auto it = records.rbegin(); it != records.rend(); ++it) {
            const std::size_t v = it->step.leaf;
            const std::size_t w = it->step.neighbour;
            if (it->step.move == ReductionMove::erase_pair) {
                std::size_t count = 0;
                for (std::size_t u : it->neighbour_adjacent)
                    if (in[u]) ++count;
                in[v] = static_cast<int>(count % 2) != it->neighbour_parity;
                in[w] = false;
            } else {
                in[v] = !in[w];
            }
        }
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < g.size(); ++i)
            if (in[i]) members.push_back(i);
        out.push_back(make_wu_set(g, std::move(members)));
    }
    std::sort(out.begin(), out.end(), wu_set_less);
    return out;
}

std::vector<WuSet> enumerate_wu_sets(const PlumbingGraph& g) {
    auto primary = wu_sets_gf2(g);
    const auto lifted = wu_sets_by_moves(g);
    if (primary != lifted) throw InternalError("GF(2) and move-lifting Wu set enumerations disagree");
    return primary;
}

}  // namespace plumb
