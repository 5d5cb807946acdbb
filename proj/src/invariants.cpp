#include "plumb/invariants.hpp"

#include <algorithm>
#include <limits>
#include <optional>
#include <sstream>
#include <type_traits>
#include <unordered_map>

#include "plumb/plumb_format.hpp"

namespace plumb {

const char* to_string(DMethod m) { return m == DMethod::path ? "path" : "oracle"; }

MubarValue mubar(const PlumbingGraph& g, const WuSet& s) {
    const CharVector c = wu_char_vector(g, s.members);
    MubarValue out;
    out.wu_set = s;
    out.sigma = signature(build_intersection_form(g)).value();
    out.wu_square = 0;
    for (std::size_t v : s.members) out.wu_square += static_cast<long>(c[v]);
    out.mubar = Integer(static_cast<long>(out.sigma)) - out.wu_square;
    return out;
}

namespace {

IntersectionForm negative_definite_form(const PlumbingGraph& g) {
    IntersectionForm form = build_intersection_form(g);
    if (!is_negative_definite(form)) throw PreconditionError("intersection form is not negative definite");
    return form;
}

}  // namespace

PlumbedManifold::PlumbedManifold(PlumbingGraph g, const LauferOptions& laufer)
    : graph_(std::move(g)),
      form_(negative_definite_form(graph_)),
      inverse_(form_),
      classifier_(form_),
      rational_(is_rational_graph(graph_, laufer)) {
    const std::size_t n = size();
    ldl_lower_ = RationalMatrix(n, n);
    ldl_diagonal_.assign(n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) {
        Rational dj = -form_.q(j, j);
        for (std::size_t k = 0; k < j; ++k) dj -= ldl_lower_(j, k) * ldl_lower_(j, k) * ldl_diagonal_[k];
        if (dj <= 0) throw InternalError("negative definite form has a nonpositive LDL pivot");
        ldl_diagonal_[j] = dj;
        ldl_lower_(j, j) = 1;
        for (std::size_t i = j + 1; i < n; ++i) {
            Rational v = -form_.q(i, j);
            for (std::size_t k = 0; k < j; ++k) v -= ldl_lower_(i, k) * ldl_lower_(j, k) * ldl_diagonal_[k];
            ldl_lower_(i, j) = v / dj;
        }
    }
}

Rational PlumbedManifold::degree(const CharVector& k) const {
    Rational d = (inverse_.square(k) + static_cast<long>(size())) / 4;
    d.canonicalize();
    return d;
}

namespace {

void require_certifiable(const PlumbedManifold& m, const CorrectionOptions& options) {
    if (!m.rational() && !options.allow_uncertified)
        throw PreconditionError(
            "graph is not Laufer-rational; the maximum formula is not certified to give d "
            "(pass the override to evaluate it anyway)");
}

void require_characteristic(const PlumbedManifold& m, const CharVector& k) {
    if (!is_characteristic(m.form(), k)) throw InputError("class representative is not characteristic");
}

// Fincke-Pohst enumeration of K = c + 2 Q x over the ellipsoid
//   -K^2 = 4 (x - z)^T A (x - z) <= -best,   A = -Q,  z = A^{-1} c / 2,
// which contains every class member at least as good as the current best.
class EllipsoidSearch {
public:
    EllipsoidSearch(const PlumbedManifold& m, const CharVector& c, Rational best, CharVector witness)
        : m_(m),
          c_(c),
          n_(c.size()),
          best_(std::move(best)),
          bound_(-best_ / 4),
          witness_(std::move(witness)),
          l_(m.ldl_lower()),
          dvec_(m.ldl_diagonal()) {
        // z = A^{-1} c / 2 = -adj(Q) c / (2 det Q).
        const BigMatrix& adj = m.inverse().adjugate();
        const Integer twice_det = 2 * m.inverse().det();
        centre_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < n_; ++j) s += adj(i, j) * c[j];
            centre_[i] = Rational(-s, twice_det);
            centre_[i].canonicalize();
        }
        x_.assign(n_, Integer(0));
        y_.assign(n_, Rational(0));
    }

    void run() {
        if (n_ == 0) return;
        levels_.assign(n_, Level{});
        recurse(n_ - 1);
    }

    const Rational& best() const { return best_; }
    const CharVector& witness() const { return witness_; }
    std::uint64_t leaves() const { return leaves_; }

private:
    // Level j keeps its own scratch values so the hot loop does not allocate.
    struct Level {
        Rational used, mid, t, next;
        Integer x;
    };

    bool fits(Level& lv, std::size_t j) {
        lv.t = lv.x - lv.mid;
        lv.t *= lv.t;
        lv.t *= dvec_[j];
        lv.next = lv.used + lv.t;
        return lv.next <= bound_;
    }

    void recurse(std::size_t j) {
        Level& lv = levels_[j];
        lv.mid = centre_[j];
        for (std::size_t i = j + 1; i < n_; ++i) {
            lv.t = l_(i, j) * y_[i];
            lv.mid -= lv.t;
        }
        lv.x = floor(lv.mid);
        lv.x -= 1;
        while (fits(lv, j)) lv.x -= 1;
        lv.x += 1;
        if (!fits(lv, j)) {
            lv.x += 1;
            if (!fits(lv, j)) return;
        }
        while (fits(lv, j)) {
            x_[j] = lv.x;
            y_[j] = lv.x - centre_[j];
            if (j == 0)
                leaf(lv.next);
            else {
                levels_[j - 1].used = lv.next;
                recurse(j - 1);
            }
            lv.x += 1;
        }
    }

    void leaf(const Rational& total) {
        ++leaves_;
        const Rational square = -4 * total;
        if (square < best_) return;
        CharVector k = c_;
        const IntMatrix& q = m_.form().q;
        for (std::size_t i = 0; i < n_; ++i) {
            if (x_[i] == 0) continue;
            const std::int64_t xi = x_[i].get_si();
            for (std::size_t r = 0; r < n_; ++r) k[r] += 2 * q(r, i) * xi;
        }
        if (square > best_ || (square == best_ && k < witness_)) {
            best_ = square;
            bound_ = -best_ / 4;
            witness_ = std::move(k);
        }
    }

    const PlumbedManifold& m_;
    CharVector c_;
    std::size_t n_;
    Rational best_;
    Rational bound_;
    CharVector witness_;
    const RationalMatrix& l_;
    const std::vector<Rational>& dvec_;
    std::vector<Rational> centre_;
    std::vector<Integer> x_;
    std::vector<Rational> y_;
    std::vector<Level> levels_;
    std::uint64_t leaves_ = 0;
};

}  // namespace

CorrectionTerm d_oracle(const PlumbedManifold& m, const CharVector& class_rep, const CorrectionOptions& options) {
    require_certifiable(m, options);
    require_characteristic(m, class_rep);
    const IntersectionForm& form = m.form();
    const std::size_t n = m.size();

    // Greedy seed: K <- K +- 2 Q e_i while that raises K^2 (the change is +-4K_i + 4n_i).
    CharVector seed = class_rep;
    for (bool improved = true; improved;) {
        improved = false;
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t up = 4 * seed[i] + 4 * form.weight(i);
            const std::int64_t down = -4 * seed[i] + 4 * form.weight(i);
            if (up > 0) {
                seed = add_dual(form, seed, i, 1);
                improved = true;
            } else if (down > 0) {
                seed = add_dual(form, seed, i, -1);
                improved = true;
            }
        }
    }

    EllipsoidSearch search(m, class_rep, m.inverse().square(seed), seed);
    search.run();

    CorrectionTerm out;
    out.class_rep = class_rep;
    out.witness = search.witness();
    out.d = m.degree(out.witness);
    out.method = DMethod::oracle;
    out.certified = m.rational();
    return out;
}

CorrectionTerm d_oracle(const PlumbingGraph& g, const CharVector& class_rep, const CorrectionOptions& options) {
    return d_oracle(PlumbedManifold(g, options.laufer), class_rep, options);
}

DischargeResult discharge(const IntersectionForm& form, CharVector k, const PivotChooser& chooser) {
    const std::size_t n = form.size();
    if (k.size() != n) throw InputError("vector length does not match the form");
    DischargeResult out;
    std::vector<std::size_t> candidates;
    // Paths are finite on negative definite forms; the cap only catches other input.
    constexpr std::size_t step_cap = 50'000'000;
    for (std::size_t steps = 0;; ++steps) {
        if (steps > step_cap) throw InternalError("discharge did not terminate");
        candidates.clear();
        bool dead = false;
        bool in_terminal_box = true;
        for (std::size_t i = 0; i < n; ++i) {
            const std::int64_t top = -form.weight(i);
            if (k[i] > top) {
                dead = true;
                break;
            }
            if (k[i] == top) candidates.push_back(i);
            if (k[i] > top - 2 || k[i] < form.weight(i)) in_terminal_box = false;
        }
        if (dead) {
            out.outcome = DischargeOutcome::dead;
            break;
        }
        if (candidates.empty()) {
            out.outcome = in_terminal_box ? DischargeOutcome::terminal : DischargeOutcome::dead;
            break;
        }
        std::size_t pivot = chooser ? chooser(candidates) : candidates.front();
        if (std::find(candidates.begin(), candidates.end(), pivot) == candidates.end())
            throw InputError("pivot chooser returned a vertex that cannot be discharged");
        for (std::size_t j = 0; j < n; ++j) k[j] += 2 * form.q(pivot, j);
        out.pivots.push_back(pivot);
    }
    out.final_vector = std::move(k);
    return out;
}

namespace {

// Sweeps the initial box n_i + 2 <= K_i <= -n_i in lexicographic order, tracking the
// spin^c key of K incrementally, and runs the discharge from every class member that
// would improve its class's best value.
template <typename Num>
class InitialBoxSweep {
public:
    InitialBoxSweep(const PlumbedManifold& m, const std::vector<CharVector>& reps) : m_(m), n_(m.size()) {
        const SpincClassifier& cls = m.classifier();
        moduli_.reserve(cls.moduli().size());
        for (const Integer& mod : cls.moduli()) moduli_.push_back(mod.get_si());
        rows_.assign(moduli_.size(), std::vector<std::int64_t>(n_, 0));
        for (std::size_t r = 0; r < moduli_.size(); ++r)
            for (std::size_t j = 0; j < n_; ++j) {
                Integer v;
                mpz_fdiv_r(v.get_mpz_t(), cls.reduced_rows()(r, j).get_mpz_t(), cls.moduli()[r].get_mpz_t());
                rows_[r][j] = v.get_si();
            }
        radix_.assign(moduli_.size(), 1);
        for (std::size_t r = 1; r < moduli_.size(); ++r) radix_[r] = radix_[r - 1] * moduli_[r - 1];

        adj_ = Matrix<Num>(n_, n_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) adj_(i, j) = convert(m.inverse().adjugate()(i, j));
        det_sign_ = sgn(m.inverse().det());

        for (std::size_t t = 0; t < reps.size(); ++t) {
            const auto code = code_of(key_of(reps[t]));
            lookup_[code].push_back(t);
        }
        best_.resize(reps.size());
        witness_.resize(reps.size());
    }

    void run() {
        const IntersectionForm& form = m_.form();
        CharVector k;
        k.values.resize(n_);
        std::vector<std::int64_t> lo(n_), hi(n_);
        for (std::size_t i = 0; i < n_; ++i) {
            lo[i] = form.weight(i) + 2;
            hi[i] = -form.weight(i);
            if (lo[i] > hi[i]) return;  // empty box (weights >= 0 cannot occur when negative definite)
            k[i] = lo[i];
        }
        // reset_[r][i]: key change when coordinate i wraps from hi back to lo.
        std::vector<std::vector<std::int64_t>> reset(moduli_.size(), std::vector<std::int64_t>(n_, 0));
        for (std::size_t r = 0; r < moduli_.size(); ++r)
            for (std::size_t i = 0; i < n_; ++i) {
                const __int128 steps = (hi[i] - lo[i]) / 2;
                reset[r][i] = static_cast<std::int64_t>(
                    (moduli_[r] - static_cast<std::int64_t>((steps * rows_[r][i]) % moduli_[r])) % moduli_[r]);
            }
        std::vector<std::int64_t> key = key_of(k);
        while (true) {
            visit(k, key);
            std::size_t i = n_;
            bool advanced = false;
            while (i-- > 0) {
                if (k[i] + 2 <= hi[i]) {
                    k[i] += 2;
                    for (std::size_t r = 0; r < moduli_.size(); ++r) key[r] = (key[r] + rows_[r][i]) % moduli_[r];
                    advanced = true;
                    break;
                }
                k[i] = lo[i];
                for (std::size_t r = 0; r < moduli_.size(); ++r) key[r] = (key[r] + reset[r][i]) % moduli_[r];
            }
            if (!advanced) break;
        }
    }

    bool found(std::size_t t) const { return best_[t].has_value(); }
    const CharVector& witness(std::size_t t) const { return witness_[t]; }
    std::uint64_t discharges() const { return discharges_; }

private:
    static Num convert(const Integer& z) {
        if constexpr (std::is_same_v<Num, Integer>)
            return z;
        else
            return static_cast<Num>(z.get_si());
    }

    std::vector<std::int64_t> key_of(const CharVector& k) const {
        const auto& parity = m_.classifier().parity();
        std::vector<std::int64_t> key(moduli_.size(), 0);
        for (std::size_t r = 0; r < moduli_.size(); ++r) {
            __int128 s = 0;
            for (std::size_t j = 0; j < n_; ++j) {
                const std::int64_t half = (k[j] - parity[j]) / 2;
                s += static_cast<__int128>(rows_[r][j]) * half;
            }
            s %= moduli_[r];
            if (s < 0) s += moduli_[r];
            key[r] = static_cast<std::int64_t>(s);
        }
        return key;
    }

    std::int64_t code_of(const std::vector<std::int64_t>& key) const {
        std::int64_t code = 0;
        for (std::size_t r = 0; r < key.size(); ++r) code += key[r] * radix_[r];
        return code;
    }

    // K^T adj K, scaled by sign(det) so that larger means larger K^2.
    Num score(const CharVector& k) const {
        Num sum = 0;
        for (std::size_t i = 0; i < n_; ++i) {
            Num row = 0;
            for (std::size_t j = 0; j < n_; ++j) row += adj_(i, j) * static_cast<long>(k[j]);
            sum += row * static_cast<long>(k[i]);
        }
        return det_sign_ < 0 ? Num(-sum) : sum;
    }

    void visit(const CharVector& k, const std::vector<std::int64_t>& key) {
        auto it = lookup_.find(code_of(key));
        if (it == lookup_.end()) return;
        const Num s = score(k);
        bool worth = false;
        for (std::size_t t : it->second)
            if (!best_[t] || s > *best_[t]) worth = true;
        if (!worth) return;
        ++discharges_;
        if (discharge(m_.form(), k).outcome != DischargeOutcome::terminal) return;
        for (std::size_t t : it->second)
            if (!best_[t] || s > *best_[t]) {
                best_[t] = s;
                witness_[t] = k;
            }
    }

    const PlumbedManifold& m_;
    std::size_t n_;
    std::vector<std::int64_t> moduli_;
    std::vector<std::vector<std::int64_t>> rows_;
    std::vector<std::int64_t> radix_;
    Matrix<Num> adj_;
    int det_sign_ = 1;
    std::unordered_map<std::int64_t, std::vector<std::size_t>> lookup_;
    std::vector<std::optional<Num>> best_;
    std::vector<CharVector> witness_;
    std::uint64_t discharges_ = 0;
};

// The int64 kernel is exact when |K^T adj K| stays far below 2^63 over the box.
bool fits_in_int64(const PlumbedManifold& m) {
    const std::size_t n = m.size();
    Integer max_adj = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) max_adj = std::max(max_adj, Integer(abs(m.inverse().adjugate()(i, j))));
    Integer max_k = 0;
    for (std::size_t i = 0; i < n; ++i) max_k = std::max(max_k, Integer(static_cast<long>(-m.form().weight(i))));
    Integer bound = max_adj * max_k * max_k * static_cast<long>(n * n) * 4;
    Integer limit = Integer(1) << 62;
    return bound < limit && abs(m.inverse().det()) < limit;
}

template <typename Num>
std::vector<CorrectionTerm> sweep(const PlumbedManifold& m, const std::vector<CharVector>& reps) {
    InitialBoxSweep<Num> s(m, reps);
    s.run();
    std::vector<CorrectionTerm> out;
    out.reserve(reps.size());
    for (std::size_t t = 0; t < reps.size(); ++t) {
        if (!s.found(t)) {
            if (m.rational())
                throw InternalError("no full path found in the class of a rational graph");
            throw PreconditionError("no full path found in the class (graph is not rational)");
        }
        CorrectionTerm ct;
        ct.class_rep = reps[t];
        ct.witness = s.witness(t);
        ct.d = m.degree(ct.witness);
        ct.method = DMethod::path;
        ct.certified = m.rational();
        out.push_back(std::move(ct));
    }
    return out;
}

}  // namespace

std::vector<CorrectionTerm> d_path_many(const PlumbedManifold& m, const std::vector<CharVector>& class_reps,
                                        const CorrectionOptions& options) {
    require_certifiable(m, options);
    for (const auto& rep : class_reps) require_characteristic(m, rep);
    if (abs(m.inverse().det()) >= (Integer(1) << 62))
        throw PreconditionError("determinant too large for the initial-box sweep");
    if (fits_in_int64(m)) return sweep<std::int64_t>(m, class_reps);
    return sweep<Integer>(m, class_reps);
}

CorrectionTerm d_path(const PlumbedManifold& m, const CharVector& class_rep, const CorrectionOptions& options) {
    return d_path_many(m, {class_rep}, options).front();
}

CorrectionTerm d_path(const PlumbingGraph& g, const CharVector& class_rep, const CorrectionOptions& options) {
    return d_path(PlumbedManifold(g, options.laufer), class_rep, options);
}

std::size_t m_counter(const PlumbingGraph& g, const WuSet& s) {
    std::size_t count = 0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (s.contains(i)) continue;
        std::int64_t in_s = 0;
        for (std::size_t j : g.neighbours(i))
            if (s.contains(j)) ++in_s;
        if (in_s == -g.weight(i)) ++count;
    }
    return count;
}

namespace {

std::string ids_of(const PlumbingGraph& g, const std::vector<std::size_t>& members) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + g.id(members[i]);
    return out + "}";
}

}  // namespace

TheoremReport verify_theorem(const PlumbedManifold& m) {
    if (!m.rational()) throw PreconditionError("graph is not Laufer-rational");
    const PlumbingGraph& g = m.graph();
    TheoremReport report;
    const auto wu_sets = enumerate_wu_sets(g);
    std::vector<CharVector> reps;
    reps.reserve(wu_sets.size());
    for (const auto& s : wu_sets) reps.push_back(s.c);
    const auto path = d_path_many(m, reps);

    std::ostringstream evidence;
    for (std::size_t i = 0; i < wu_sets.size(); ++i) {
        TheoremRow row;
        row.wu_set = wu_sets[i];
        row.mubar = mubar(g, wu_sets[i]).mubar;
        const CorrectionTerm oracle = d_oracle(m, reps[i]);
        row.d_oracle = oracle.d;
        row.d_path = path[i].d;
        row.oracle_witness = oracle.witness;
        row.path_witness = path[i].witness;
        row.mubar_matches = Rational(row.mubar) == -4 * row.d_oracle;
        row.methods_agree = row.d_oracle == row.d_path;
        if (!row.pass()) {
            report.pass = false;
            evidence << "wu_set=" << ids_of(g, row.wu_set.members) << " mubar=" << to_string(row.mubar)
                     << " d_oracle=" << to_string(row.d_oracle) << " d_path=" << to_string(row.d_path) << "\n";
        }
        report.rows.push_back(std::move(row));
    }
    if (!report.pass) report.counterexample = serialize_graph(g) + evidence.str();
    return report;
}

TheoremReport verify_theorem(const PlumbingGraph& g) { return verify_theorem(PlumbedManifold(g)); }

ObstructionVerdict obstruction_report(const PlumbedManifold& m, const CorrectionOptions& options) {
    require_certifiable(m, options);
    const PlumbingGraph& g = m.graph();
    ObstructionVerdict v;
    v.mubar_product = 1;
    for (const WuSet& s : enumerate_wu_sets(g)) {
        SpinObstruction row;
        row.wu_set = s;
        row.mubar = mubar(g, s).mubar;
        row.d = d_oracle(m, s.c, options).d;
        row.spin_c_ball_obstructed = row.d != 0;
        v.mubar_product *= row.mubar;
        v.per_spin.push_back(std::move(row));
    }
    v.spin_ball_obstructed = v.mubar_product != 0;
    v.det_parity = mpz_odd_p(m.inverse().det().get_mpz_t()) ? DetParity::odd : DetParity::even;
    if (v.det_parity == DetParity::odd) v.any_ball_obstructed = v.per_spin.front().mubar != 0;
    return v;
}

ObstructionVerdict obstruction_report(const PlumbingGraph& g, const CorrectionOptions& options) {
    return obstruction_report(PlumbedManifold(g, options.laufer), options);
}

}  // namespace plumb
