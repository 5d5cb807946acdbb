#include "plumb/report.hpp"

#include <iomanip>
#include <map>
#include <sstream>

#include "plumb/invariants.hpp"
#include "plumb/lattice.hpp"
#include "plumb/plumb_format.hpp"
#include "plumb/spin.hpp"

namespace plumb {

namespace {

Json ids(const PlumbingGraph& g, const std::vector<std::size_t>& members) {
    Json out = Json::array();
    for (std::size_t v : members) out.push_back(g.id(v));
    return out;
}

Json vec(const CharVector& k) { return Json(k.values); }

Json graph_section(const PlumbingGraph& g) {
    Json vertices = Json::array();
    for (const Vertex& v : g.vertices()) vertices.push_back({{"id", v.id}, {"weight", v.weight}});
    Json edges = Json::array();
    for (const Edge& e : g.edges()) edges.push_back({g.id(e.first), g.id(e.second)});
    return {{"vertices", vertices}, {"edges", edges}, {"canonical", serialize_graph(g)}};
}

Json lattice_section(const IntersectionForm& form, const LatticeSummary& s) {
    Json matrix = Json::array();
    for (std::size_t i = 0; i < form.size(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < form.size(); ++j) row.push_back(form.q(i, j));
        matrix.push_back(row);
    }
    Json factors = Json::array();
    for (const Integer& f : s.invariant_factors) factors.push_back(to_string(f));
    return {
        {"matrix", matrix},
        {"det", to_string(s.det)},
        {"negative_definite", is_negative_definite(form)},
        {"signature",
         {{"positive", s.signature.positive},
          {"negative", s.signature.negative},
          {"zero", s.signature.zero},
          {"value", s.signature.value()}}},
        {"invariant_factors", factors},
        {"h1_order", s.h1_order ? to_string(*s.h1_order) : std::string("infinite")},
        {"dim_h1_mod2", s.dim_h1_mod2},
    };
}

Json laufer_section(const PlumbingGraph& g, const LauferTrace& t, bool trace) {
    Json out = {
        {"verdict", to_string(t.verdict)},
        {"lemma_precheck", lemma_precheck(g)},
        {"final_cycle", t.final_cycle},
    };
    if (!t.steps.empty()) {
        const LauferStep& last = t.steps.back();
        out["halting_vertex"] = g.id(last.vertex);
        out["halting_product"] = last.product;
    } else {
        out["halting_vertex"] = nullptr;
        out["halting_product"] = nullptr;
    }
    if (trace) {
        Json steps = Json::array();
        for (const LauferStep& s : t.steps)
            steps.push_back({{"vertex", g.id(s.vertex)}, {"product", s.product}, {"action", to_string(s.action)}});
        out["trace"] = {{"cycles", t.cycles}, {"steps", steps}};
    }
    return out;
}

Json discharge_trace(const PlumbingGraph& g, const IntersectionForm& form, const CharVector& start) {
    const DischargeResult r = discharge(form, start);
    Json pivots = Json::array();
    for (std::size_t p : r.pivots) pivots.push_back(g.id(p));
    return {{"initial", vec(start)},
            {"pivots", pivots},
            {"outcome", r.outcome == DischargeOutcome::terminal ? "terminal" : "dead"},
            {"final", vec(r.final_vector)}};
}

}  // namespace

Json analyze_graph(const PlumbingGraph& g, const AnalyzeOptions& options) {
    const IntersectionForm form = build_intersection_form(g);
    const LatticeSummary summary = lattice_summary(form);
    if (!is_negative_definite(form)) throw PreconditionError("not negative definite");

    const PlumbedManifold m(g, options.laufer);
    const LauferTrace laufer = laufer_rationality(g, options.laufer);
    const ReductionTrace reduction = reduce_mod2(g);
    const bool certified = m.rational();
    const bool evaluate_d = certified || options.uncertified;
    CorrectionOptions copt;
    copt.allow_uncertified = options.uncertified;
    copt.laufer = options.laufer;

    Json report;
    report["tool"] = {{"name", kToolName}, {"version", kToolVersion}, {"schema", kSchemaVersion}};
    report["config"] = {{"trace", options.trace},
                        {"uncertified", options.uncertified},
                        {"iteration_cap", options.laufer.iteration_cap},
                        {"max_spinc_classes", options.max_spinc_classes}};
    report["graph"] = graph_section(g);
    report["lattice"] = lattice_section(form, summary);

    Json red = {{"p", reduction.p()}, {"q", reduction.q()}};
    if (options.trace) {
        Json steps = Json::array();
        for (const ReductionStep& s : reduction.steps)
            steps.push_back({{"move", static_cast<int>(s.move)}, {"leaf", g.id(s.leaf)}, {"neighbour", g.id(s.neighbour)}});
        red["steps"] = steps;
    }
    report["reduction"] = red;
    report["rationality"] = laufer_section(g, laufer, options.trace);
    report["conventions"] = {
        {"mubar", "sigma(X) - [Sigma_S]^2"},
        {"d", "max (K^2 + n)/4 over characteristic K in the class"},
        {"note",
         "mubar is reported with the sigma(X) - [Sigma_S]^2 sign; quoting the opposite sign "
         "gives the values of the orientation-reversed manifold"},
    };

    // Spin structures.
    const auto wu_sets = enumerate_wu_sets(g);
    std::vector<CharVector> reps;
    for (const auto& s : wu_sets) reps.push_back(s.c);
    std::vector<CorrectionTerm> path_d;
    if (evaluate_d) path_d = d_path_many(m, reps, copt);

    Json spin = Json::array();
    bool theorem_pass = true;
    for (std::size_t i = 0; i < wu_sets.size(); ++i) {
        const WuSet& s = wu_sets[i];
        const MubarValue mu = mubar(g, s);
        Json row = {
            {"wu_set", ids(g, s.members)},
            {"independent", s.independent},
            {"char_vector", vec(s.c)},
            {"m_counter", m_counter(g, s)},
            {"sigma", std::to_string(mu.sigma)},
            {"wu_square", to_string(mu.wu_square)},
            {"mubar", to_string(mu.mubar)},
        };
        if (evaluate_d) {
            const CorrectionTerm oracle = d_oracle(m, s.c, copt);
            const bool agree = oracle.d == path_d[i].d;
            const bool matches = Rational(mu.mubar) == -4 * oracle.d;
            theorem_pass = theorem_pass && agree && matches;
            row["d"] = to_string(oracle.d);
            row["certified"] = certified;
            row["d_path"] = to_string(path_d[i].d);
            row["d_oracle"] = to_string(oracle.d);
            row["witness"] = vec(path_d[i].witness);
            row["mubar_equals_minus_4d"] = matches;
            if (options.trace) row["discharge"] = discharge_trace(g, form, path_d[i].witness);
        } else {
            row["d"] = nullptr;
            row["certified"] = false;
            row["d_path"] = nullptr;
            row["d_oracle"] = nullptr;
            row["witness"] = nullptr;
            row["mubar_equals_minus_4d"] = nullptr;
        }
        spin.push_back(row);
    }
    report["spin"] = spin;

    // Spin^c classes.
    Json spinc = {{"class_count", to_string(Integer(abs(summary.det)))}};
    if (!evaluate_d) {
        spinc["status"] = "skipped";
        spinc["reason"] = "graph is not rational; d is not certified";
        spinc["classes"] = nullptr;
    } else if (abs(summary.det) > static_cast<unsigned long>(options.max_spinc_classes)) {
        spinc["status"] = "skipped";
        spinc["reason"] = "more classes than max_spinc_classes";
        spinc["classes"] = nullptr;
    } else {
        const auto classes = enumerate_spinc_classes(form);
        std::map<std::vector<Integer>, bool> spin_keys;
        for (const auto& s : wu_sets) spin_keys[m.classifier().key(s.c)] = true;
        const auto path_all = d_path_many(m, classes, copt);
        Json list = Json::array();
        for (std::size_t i = 0; i < classes.size(); ++i) {
            const CorrectionTerm oracle = d_oracle(m, classes[i], copt);
            const bool agree = oracle.d == path_all[i].d;
            theorem_pass = theorem_pass && agree;
            list.push_back({
                {"class_rep", vec(classes[i])},
                {"spin", spin_keys.count(m.classifier().key(classes[i])) > 0},
                {"d", to_string(oracle.d)},
                {"certified", certified},
                {"methods_agree", agree},
            });
        }
        spinc["status"] = "complete";
        spinc["classes"] = list;
    }
    report["spinc"] = spinc;

    if (evaluate_d) {
        const ObstructionVerdict v = obstruction_report(m, copt);
        Json per = Json::array();
        for (const auto& r : v.per_spin)
            per.push_back({{"wu_set", ids(g, r.wu_set.members)},
                           {"mubar", to_string(r.mubar)},
                           {"d", to_string(r.d)},
                           {"spin_c_ball_obstructed", r.spin_c_ball_obstructed}});
        Json any = v.any_ball_obstructed ? Json(*v.any_ball_obstructed) : Json("not_applicable");
        report["obstruction"] = {{"certified", certified},
                                 {"per_spin", per},
                                 {"mubar_product", to_string(v.mubar_product)},
                                 {"spin_ball_obstructed", v.spin_ball_obstructed},
                                 {"det_parity", v.det_parity == DetParity::odd ? "odd" : "even"},
                                 {"any_ball_obstructed", any}};
    } else {
        report["obstruction"] = nullptr;
    }

    if (!certified) {
        report["theorem"] = {{"status", "skipped"}, {"reason", "graph is not rational"}};
    } else {
        report["theorem"] = {{"status", theorem_pass ? "pass" : "fail"}};
    }
    return report;
}

std::string render_json(const Json& report) { return report.dump(2) + "\n"; }

namespace {

std::string str(const Json& j) {
    if (j.is_null()) return "-";
    if (j.is_string()) return j.get<std::string>();
    if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
    if (j.is_array()) {
        std::string out = "[";
        for (std::size_t i = 0; i < j.size(); ++i) out += (i ? "," : "") + str(j[i]);
        return out + "]";
    }
    if (j.is_object()) return j.dump();
    return j.dump();
}

std::string braces(const Json& members) {
    std::string out = "{";
    for (std::size_t i = 0; i < members.size(); ++i) out += (i ? "," : "") + members[i].get<std::string>();
    return out + "}";
}

void table(std::ostringstream& os, const std::vector<std::string>& header,
           const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
        os << "  ";
        for (std::size_t c = 0; c < cells.size(); ++c) {
            os << std::left << std::setw(static_cast<int>(width[c])) << cells[c];
            if (c + 1 < cells.size()) os << "  ";
        }
        os << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
}

}  // namespace

std::string render_text(const Json& r) {
    std::ostringstream os;
    const Json& lat = r["lattice"];
    os << r["tool"]["name"].get<std::string>() << " " << r["tool"]["version"].get<std::string>() << "\n\n";
    os << "graph\n" << r["graph"]["canonical"].get<std::string>() << "\n";

    os << "lattice\n";
    table(os, {"det", "signature", "invariant factors", "|H1|", "dim H1(Z2)"},
          {{str(lat["det"]),
            "(" + str(lat["signature"]["positive"]) + "," + str(lat["signature"]["negative"]) + "," +
                str(lat["signature"]["zero"]) + ")",
            str(lat["invariant_factors"]), str(lat["h1_order"]), str(lat["dim_h1_mod2"])}});
    os << "\nmod-2 reduction: p = " << str(r["reduction"]["p"]) << ", q = " << str(r["reduction"]["q"]) << "\n";
    const Json& rat = r["rationality"];
    os << "rationality: " << str(rat["verdict"]) << " (lemma precheck " << str(rat["lemma_precheck"])
       << ", halted at " << str(rat["halting_vertex"]) << " with product " << str(rat["halting_product"])
       << ", cycle " << str(rat["final_cycle"]) << ")\n\n";

    os << "spin structures (mubar = " << r["conventions"]["mubar"].get<std::string>() << ")\n";
    std::vector<std::vector<std::string>> rows;
    for (const Json& s : r["spin"])
        rows.push_back({braces(s["wu_set"]), str(s["char_vector"]), str(s["mubar"]), str(s["d"]),
                        str(s["mubar_equals_minus_4d"])});
    table(os, {"wu set", "c_S", "mubar", "d", "mubar = -4d"}, rows);

    os << "\nspin^c classes: " << str(r["spinc"]["class_count"]);
    if (r["spinc"]["status"] == "complete") {
        os << "\n";
        rows.clear();
        for (const Json& c : r["spinc"]["classes"])
            rows.push_back({str(c["class_rep"]), str(c["spin"]), str(c["d"]), str(c["methods_agree"])});
        table(os, {"representative", "spin", "d", "path = oracle"}, rows);
    } else {
        os << " (" << str(r["spinc"]["reason"]) << ")\n";
    }

    os << "\nobstructions\n";
    if (r["obstruction"].is_null()) {
        os << "  not evaluated (graph is not rational)\n";
    } else {
        const Json& o = r["obstruction"];
        os << "  mubar product: " << str(o["mubar_product"]) << " -> spin rational ball "
           << (o["spin_ball_obstructed"].get<bool>() ? "obstructed" : "not obstructed") << "\n";
        os << "  det parity: " << str(o["det_parity"]) << " -> any rational ball: ";
        if (o["any_ball_obstructed"].is_string())
            os << "not applicable\n";
        else
            os << (o["any_ball_obstructed"].get<bool>() ? "obstructed" : "not obstructed") << "\n";
        for (const Json& p : o["per_spin"])
            os << "  " << braces(p["wu_set"]) << ": d = " << str(p["d"]) << " -> spin^c rational ball "
               << (p["spin_c_ball_obstructed"].get<bool>() ? "obstructed" : "not obstructed") << "\n";
    }
    os << "\ntheorem check: " << str(r["theorem"]["status"]) << "\n";
    return os.str();
}

}  // namespace plumb
