#pragma once

// mubar, correction terms and the obstruction verdicts for negative-definite plumbings.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plumb/core.hpp"
#include "plumb/graph.hpp"
#include "plumb/lattice.hpp"
#include "plumb/rationality.hpp"
#include "plumb/spin.hpp"

namespace plumb {

struct MubarValue {
    WuSet wu_set;
    std::int64_t sigma = 0;
    Integer wu_square;  // 1_S^T Q 1_S
    Integer mubar;      // sigma - wu_square
};

MubarValue mubar(const PlumbingGraph& g, const WuSet& s);

enum class DMethod { path, oracle };
const char* to_string(DMethod m);

struct CorrectionTerm {
    CharVector class_rep;
    Rational d;
    CharVector witness;  // (witness^2 + n) / 4 == d
    DMethod method = DMethod::oracle;
    bool certified = true;  // false only for non-rational graphs under an explicit override
};

struct CorrectionOptions {
    /// Evaluate the max formula even when the graph is not Laufer-rational. Results are
    /// marked uncertified.
    bool allow_uncertified = false;
    LauferOptions laufer;
};

/// Everything about one graph that the d computations share: the form, its inverse,
/// the spin^c classifier and the rationality verdict. Construction checks negative
/// definiteness and throws PreconditionError otherwise.
class PlumbedManifold {
public:
    explicit PlumbedManifold(PlumbingGraph g, const LauferOptions& laufer = {});

    const PlumbingGraph& graph() const { return graph_; }
    const IntersectionForm& form() const { return form_; }
    const InverseForm& inverse() const { return inverse_; }
    const SpincClassifier& classifier() const { return classifier_; }
    std::size_t size() const { return graph_.size(); }
    std::int64_t sigma() const { return -static_cast<std::int64_t>(graph_.size()); }
    bool rational() const { return rational_; }

    /// (K^2 + n) / 4
    Rational degree(const CharVector& k) const;

    /// LDL^T factors of -Q: unit lower triangle and positive diagonal.
    const RationalMatrix& ldl_lower() const { return ldl_lower_; }
    const std::vector<Rational>& ldl_diagonal() const { return ldl_diagonal_; }

private:
    PlumbingGraph graph_;
    IntersectionForm form_;
    InverseForm inverse_;
    SpincClassifier classifier_;
    bool rational_;
    RationalMatrix ldl_lower_;
    std::vector<Rational> ldl_diagonal_;
};

/// Max of (K^2 + n)/4 over the class of `class_rep`, by exhaustive enumeration of the
/// ellipsoid of class members that could beat the current best value.
CorrectionTerm d_oracle(const PlumbedManifold& m, const CharVector& class_rep,
                        const CorrectionOptions& options = {});
CorrectionTerm d_oracle(const PlumbingGraph& g, const CharVector& class_rep,
                        const CorrectionOptions& options = {});

enum class DischargeOutcome { terminal, dead };

struct DischargeResult {
    DischargeOutcome outcome = DischargeOutcome::dead;
    CharVector final_vector;
    std::vector<std::size_t> pivots;
};

/// Chooses the pivot among the indices with K_i = -n_i (never empty when called).
using PivotChooser = std::function<std::size_t(const std::vector<std::size_t>& candidates)>;

/// Runs the discharge K <- K + 2 Q e_i at vertices with K_i = -n_i. Dead as soon as
/// some K_i > -n_i; terminal once n_i <= K_i <= -n_i - 2 everywhere. Lowest index
/// pivot unless `chooser` is given.
DischargeResult discharge(const IntersectionForm& form, CharVector k,
                          const PivotChooser& chooser = {});

/// Max of (K^2 + n)/4 over initial vectors (n_i + 2 <= K_i <= -n_i) of the class that
/// reach a terminal vector.
CorrectionTerm d_path(const PlumbedManifold& m, const CharVector& class_rep,
                      const CorrectionOptions& options = {});
CorrectionTerm d_path(const PlumbingGraph& g, const CharVector& class_rep,
                      const CorrectionOptions& options = {});

/// d_path for several classes in one sweep of the initial box; results in input order.
std::vector<CorrectionTerm> d_path_many(const PlumbedManifold& m,
                                        const std::vector<CharVector>& class_reps,
                                        const CorrectionOptions& options = {});

/// Vertices outside S with exactly -n_i neighbours in S.
std::size_t m_counter(const PlumbingGraph& g, const WuSet& s);

struct TheoremRow {
    WuSet wu_set;
    Integer mubar;
    Rational d_oracle;
    Rational d_path;
    CharVector oracle_witness;
    CharVector path_witness;
    bool mubar_matches = false;   // mubar == -4 d
    bool methods_agree = false;   // oracle == path
    bool pass() const { return mubar_matches && methods_agree; }
};

struct TheoremReport {
    std::vector<TheoremRow> rows;
    bool pass = true;
    /// Structured counterexample description when pass is false.
    std::optional<std::string> counterexample;
};

/// Checks mubar = -4 d, with d from both methods, for every spin structure.
/// Throws PreconditionError unless g is negative definite and Laufer-rational.
TheoremReport verify_theorem(const PlumbedManifold& m);
TheoremReport verify_theorem(const PlumbingGraph& g);

enum class DetParity { odd, even };

struct SpinObstruction {
    WuSet wu_set;
    Integer mubar;
    Rational d;
    bool spin_c_ball_obstructed = false;  // d != 0
};

struct ObstructionVerdict {
    std::vector<SpinObstruction> per_spin;
    Integer mubar_product;
    bool spin_ball_obstructed = false;
    DetParity det_parity = DetParity::odd;
    std::optional<bool> any_ball_obstructed;  // only when det is odd
};

ObstructionVerdict obstruction_report(const PlumbedManifold& m,
                                      const CorrectionOptions& options = {});
ObstructionVerdict obstruction_report(const PlumbingGraph& g,
                                      const CorrectionOptions& options = {});

}  // namespace plumb
