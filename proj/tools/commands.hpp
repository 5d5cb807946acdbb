#pragma once

// The `plumb` subcommands as plain functions over streams, so tests can drive them
// without spawning processes.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "plumb/rationality.hpp"

namespace plumb::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kInputError = 2,
    kPreconditionRefused = 3,
};

/// Laufer options with the iteration cap taken from PLUMB_ITER_CAP when set.
/// Throws InputError on a malformed value.
LauferOptions laufer_options_from_env();

struct AnalyzeArgs {
    std::string file;
    bool json = false;
    bool trace = false;
    bool uncertified = false;
};

int run_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);

struct VerifyArgs {
    std::size_t random = 0;
    std::size_t max_vertices = 8;
    std::int64_t weight_min = -9;
    std::uint64_t seed = 1;
    std::string report_path = "plumb-counterexample.plumb";
    std::size_t jobs = 0;  // 0: hardware concurrency
};

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

struct BatchArgs {
    std::vector<std::string> paths;
    bool json = false;
    std::size_t jobs = 0;
};

int run_batch(const BatchArgs& args, std::ostream& out, std::ostream& err);

/// Runs body(0), ..., body(count - 1) on up to `jobs` threads (0: hardware concurrency).
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

/// 64-bit FNV-1a, printed in the verify summary as the corpus digest.
std::uint64_t fnv1a(const std::string& text, std::uint64_t state = 0xcbf29ce484222325ULL);

}  // namespace plumb::cli
