#pragma once

// Analysis reports: the full invariant pipeline on one graph, rendered as JSON or text.

#include <cstddef>
#include <string>

#include "json.hpp"

#include "plumb/graph.hpp"
#include "plumb/rationality.hpp"

namespace plumb {

inline constexpr const char* kToolName = "plumb";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kSchemaVersion = "1";

struct AnalyzeOptions {
    bool trace = false;
    /// Evaluate d on non-rational graphs too; values are flagged as uncertified.
    bool uncertified = false;
    LauferOptions laufer;
    /// The spin^c table is skipped above this many classes.
    std::size_t max_spinc_classes = 4096;
};

using Json = nlohmann::ordered_json;

/// Runs every computation on `g` and collects the results. Throws PreconditionError when
/// the form is not negative definite.
Json analyze_graph(const PlumbingGraph& g, const AnalyzeOptions& options = {});

/// Stable JSON text (two-space indent, trailing newline).
std::string render_json(const Json& report);

/// Aligned human-readable rendering of an analysis report.
std::string render_text(const Json& report);

}  // namespace plumb
