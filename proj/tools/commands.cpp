#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "plumb/core.hpp"
#include "plumb/generator.hpp"
#include "plumb/invariants.hpp"
#include "plumb/plumb_format.hpp"
#include "plumb/report.hpp"

namespace plumb::cli {

namespace {

namespace fs = std::filesystem;

int exit_code_for(const std::exception_ptr& error, std::ostream& err, const std::string& context) {
    try {
        std::rethrow_exception(error);
    } catch (const InputError& e) {
        err << "plumb: " << context << e.what() << "\n";
        return kInputError;
    } catch (const PreconditionError& e) {
        err << "plumb: " << context << e.what() << "\n";
        return kPreconditionRefused;
    } catch (const std::exception& e) {
        err << "plumb: internal error: " << context << e.what() << "\n";
        return kVerificationFailed;
    }
}

std::string error_kind(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const InputError&) {
        return "input";
    } catch (const PreconditionError&) {
        return "precondition";
    } catch (...) {
        return "internal";
    }
}

std::string error_message(const std::exception_ptr& error) {
    try {
        std::rethrow_exception(error);
    } catch (const std::exception& e) {
        return e.what();
    } catch (...) {
        return "unknown error";
    }
}

std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << v;
    return os.str();
}

/// Plain files given directly, plus every *.plumb file of each directory (sorted by name).
std::vector<std::string> expand_paths(const std::vector<std::string>& paths) {
    std::vector<std::string> out;
    for (const auto& p : paths) {
        std::error_code ec;
        if (fs::is_directory(p, ec)) {
            std::vector<std::string> found;
            for (const auto& entry : fs::directory_iterator(p))
                if (entry.is_regular_file() && entry.path().extension() == ".plumb")
                    found.push_back(entry.path().string());
            std::sort(found.begin(), found.end());
            out.insert(out.end(), found.begin(), found.end());
        } else {
            out.push_back(p);
        }
    }
    return out;
}

}  // namespace

LauferOptions laufer_options_from_env() {
    LauferOptions options;
    const char* raw = std::getenv("PLUMB_ITER_CAP");
    if (raw == nullptr) return options;
    const std::string text(raw);
    std::uint64_t cap = 0;
    auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), cap);
    if (ec != std::errc() || end != text.data() + text.size() || cap == 0)
        throw InputError("PLUMB_ITER_CAP must be a positive integer, got '" + text + "'");
    options.iteration_cap = cap;
    return options;
}

std::uint64_t fnv1a(const std::string& text, std::uint64_t state) {
    for (unsigned char c : text) {
        state ^= c;
        state *= 0x100000001b3ULL;
    }
    return state;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
    if (jobs == 0) jobs = std::max(1U, std::thread::hardware_concurrency());
    jobs = std::min(jobs, count);
    if (jobs <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (std::size_t w = 0; w < jobs; ++w)
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < count; i = next++) body(i);
        });
    for (auto& t : workers) t.join();
}

int run_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
    try {
        AnalyzeOptions options;
        options.trace = args.trace;
        options.uncertified = args.uncertified;
        options.laufer = laufer_options_from_env();
        const PlumbingGraph g = read_graph_file(args.file);
        const Json report = analyze_graph(g, options);
        out << (args.json ? render_json(report) : render_text(report));
        return kOk;
    } catch (...) {
        return exit_code_for(std::current_exception(), err, "");
    }
}

int run_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
    std::vector<PlumbingGraph> corpus;
    try {
        GeneratorParams params;
        params.max_vertices = args.max_vertices;
        params.weight_min = args.weight_min;
        params.seed = args.seed;
        params.count = args.random;
        params.require_rational = true;
        params.validate();
        corpus = generate_candidates(params, [&err](const std::string& msg) { err << msg << "\n"; });
    } catch (...) {
        return exit_code_for(std::current_exception(), err, "");
    }

    struct Outcome {
        std::optional<TheoremReport> report;
        std::exception_ptr error;
    };
    std::vector<Outcome> outcomes(corpus.size());
    parallel_for(corpus.size(), args.jobs, [&](std::size_t i) {
        try {
            outcomes[i].report = verify_theorem(corpus[i]);
        } catch (...) {
            outcomes[i].error = std::current_exception();
        }
    });

    std::uint64_t digest = 0xcbf29ce484222325ULL;
    std::size_t spin_rows = 0;
    std::size_t verified = 0;
    std::optional<std::size_t> first_failure;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        digest = fnv1a(serialize_graph(corpus[i]), digest);
        const Outcome& o = outcomes[i];
        if (o.report) spin_rows += o.report->rows.size();
        if (o.report && o.report->pass)
            ++verified;
        else if (!first_failure)
            first_failure = i;
    }

    out << "seed " << args.seed << ", max vertices " << args.max_vertices << ", weight min " << args.weight_min
        << "\n";
    out << "corpus digest " << hex64(digest) << "\n";
    out << "spin structures checked " << spin_rows << "\n";
    out << verified << "/" << corpus.size() << " verified\n";
    if (!first_failure) return kOk;

    const std::size_t i = *first_failure;
    const Outcome& o = outcomes[i];
    std::ofstream file(args.report_path);
    file << "# counterexample " << i << " (seed " << args.seed << ")\n";
    if (o.report && o.report->counterexample) {
        std::istringstream evidence(*o.report->counterexample);
        for (std::string line; std::getline(evidence, line);)
            if (line.rfind("vertices:", 0) != 0 && line.rfind("edges:", 0) != 0) file << "# " << line << "\n";
    } else if (o.error) {
        file << "# error: " << error_message(o.error) << "\n";
    }
    file << serialize_graph(corpus[i]);
    err << "plumb: graph " << i << " failed; written to " << args.report_path << "\n";
    if (o.error) err << "plumb: " << error_message(o.error) << "\n";
    return kVerificationFailed;
}

int run_batch(const BatchArgs& args, std::ostream& out, std::ostream& err) {
    LauferOptions laufer;
    try {
        laufer = laufer_options_from_env();
    } catch (...) {
        return exit_code_for(std::current_exception(), err, "");
    }
    const std::vector<std::string> files = expand_paths(args.paths);

    struct Result {
        std::optional<Json> report;
        std::exception_ptr error;
    };
    std::vector<Result> results(files.size());
    parallel_for(files.size(), args.jobs, [&](std::size_t i) {
        try {
            AnalyzeOptions options;
            options.laufer = laufer;
            results[i].report = analyze_graph(read_graph_file(files[i]), options);
        } catch (...) {
            results[i].error = std::current_exception();
        }
    });

    std::size_t ok = 0;
    std::size_t theorem_pass = 0;
    for (const auto& r : results) {
        if (!r.report) continue;
        ++ok;
        if ((*r.report)["theorem"]["status"] == "pass") ++theorem_pass;
    }
    const std::size_t errors = files.size() - ok;

    if (args.json) {
        Json doc;
        doc["tool"] = {{"name", kToolName}, {"version", kToolVersion}, {"schema", kSchemaVersion}};
        Json list = Json::array();
        for (std::size_t i = 0; i < files.size(); ++i) {
            Json entry;
            entry["path"] = files[i];
            if (results[i].report) {
                entry["status"] = "ok";
                entry["report"] = *results[i].report;
            } else {
                entry["status"] = "error";
                entry["error"] = {{"kind", error_kind(results[i].error)},
                                  {"message", error_message(results[i].error)}};
            }
            list.push_back(entry);
        }
        doc["files"] = list;
        doc["aggregate"] = {{"files", files.size()}, {"ok", ok}, {"errors", errors}, {"theorem_pass", theorem_pass}};
        out << render_json(doc);
    } else {
        for (std::size_t i = 0; i < files.size(); ++i) {
            if (!results[i].report) continue;
            out << "== " << files[i] << "\n" << render_text(*results[i].report) << "\n";
        }
        std::size_t width = 4;
        for (const auto& f : files) width = std::max(width, f.size());
        out << std::left << std::setw(static_cast<int>(width)) << "file" << "  status  theorem\n";
        for (std::size_t i = 0; i < files.size(); ++i) {
            out << std::setw(static_cast<int>(width)) << files[i] << "  ";
            if (results[i].report)
                out << std::setw(6) << "ok" << "  " << (*results[i].report)["theorem"]["status"].get<std::string>();
            else
                out << std::setw(6) << "error" << "  " << error_message(results[i].error);
            out << "\n";
        }
        out << files.size() << " files, " << ok << " ok, " << errors << " errors, " << theorem_pass
            << " theorem checks passed\n";
    }
    for (std::size_t i = 0; i < files.size(); ++i)
        if (results[i].error) err << "plumb: " << files[i] << ": " << error_message(results[i].error) << "\n";
    return errors == 0 ? kOk : kVerificationFailed;
}

}  // namespace plumb::cli
