// Command-line front end for the lipt shared library. All computation goes
// through the C API in lipt.h; this file only parses arguments, assembles the
// JSON run report, and maps statuses to exit codes (1 usage, 2 input,
// 3 budget).

#include <chrono>
#include <cstdint>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "lipt.h"

using nlohmann::json;

namespace {

struct FnDeleter {
    void operator()(lipt_function* f) const { lipt_function_free(f); }
};
struct FamDeleter {
    void operator()(lipt_family* f) const { lipt_family_free(f); }
};
using FnPtr = std::unique_ptr<lipt_function, FnDeleter>;
using FamPtr = std::unique_ptr<lipt_family, FamDeleter>;

int fail_status(lipt_status st) {
    std::cerr << "error: " << lipt_last_error() << "\n";
    return int(st);
}

FnPtr make_function(const std::string& src, int n, int& rc) {
    FnPtr f(lipt_function_create(src.c_str(), n));
    if (!f) {
        std::cerr << "error: " << lipt_last_error() << "\n";
        rc = int(LIPT_ERR_INPUT);
    }
    return f;
}

FamPtr make_family(const std::string& text, int& rc) {
    FamPtr f(lipt_family_create(text.c_str()));
    if (!f) {
        std::cerr << "error: " << lipt_last_error() << "\n";
        rc = int(LIPT_ERR_INPUT);
    }
    return f;
}

/// Prints the run report: deterministic JSON on stdout, timing on stderr.
int emit(const std::string& command, const json& inputs, lipt_status st, char* payload,
         std::chrono::steady_clock::time_point start) {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
    if (st != LIPT_OK && !payload) return fail_status(st);
    json report;
    report["command"] = command;
    report["inputs"] = inputs;
    report["result"] = payload ? json::parse(payload) : json();
    lipt_string_free(payload);
    std::cout << report.dump() << "\n";
    std::cerr << command << ": " << (st == LIPT_OK ? "ok" : lipt_last_error()) << " ("
              << elapsed << " ms)\n";
    return int(st);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear-invariant property testing over F_2^n"};
    app.require_subcommand(1);
    app.set_version_flag("--version", lipt_version());
    int threads = 0;
    app.add_option("--threads", threads, "worker threads for library operations");

    std::string fn_src = "const0", family_text, system_json, eps = "1/4", set_src;
    std::string mode = "green", sample_mode = "subspace", prop = "constant";
    int n = 4, dim = 2, trials = 10, cutoff = 0, d = 1, max_order = 8, m = 1,
        max_rounds = 8, max_d = 2;
    std::uint64_t seed = 1;

    auto* analyze = app.add_subcommand("analyze", "density, spectrum, uniformity");
    analyze->add_option("--fn", fn_src)->required();
    analyze->add_option("--n", n)->required();
    analyze->add_option("--eps", eps);

    auto* count = app.add_subcommand("count", "count induced solutions");
    count->add_option("--fn", fn_src)->required();
    count->add_option("--n", n)->required();
    count->add_option("--system", system_json)->required();

    auto* freecmd = app.add_subcommand("free", "freeness check with witness");
    freecmd->add_option("--fn", fn_src)->required();
    freecmd->add_option("--n", n)->required();
    freecmd->add_option("--system", system_json);
    freecmd->add_option("--family", family_text);

    auto* test = app.add_subcommand("test", "oblivious one-sided tester");
    test->add_option("--fn", fn_src)->required();
    test->add_option("--n", n)->required();
    test->add_option("--family", family_text)->required();
    test->add_option("--eps", eps);
    test->add_option("--dim", dim);
    test->add_option("--trials", trials);
    test->add_option("--cutoff", cutoff);
    test->add_option("--seed", seed);
    test->add_option("--sample-mode", sample_mode)
        ->check(CLI::IsMember({"subspace", "points"}));

    auto* estimate = app.add_subcommand("estimate", "rejection probability estimate");
    estimate->add_option("--fn", fn_src)->required();
    estimate->add_option("--n", n)->required();
    estimate->add_option("--family", family_text)->required();
    estimate->add_option("--dim", dim);
    estimate->add_option("--trials", trials);
    estimate->add_option("--seed", seed);

    auto* regularize = app.add_subcommand("regularize", "regularity partitions");
    regularize->add_option("--fn", fn_src)->required();
    regularize->add_option("--n", n)->required();
    regularize->add_option("--mode", mode)->check(CLI::IsMember({"green", "functional"}));
    regularize->add_option("--eps", eps);
    regularize->add_option("--max-order", max_order);
    regularize->add_option("--m", m);
    regularize->add_option("--max-rounds", max_rounds);

    auto* complexity = app.add_subcommand("complexity", "Cauchy-Schwarz complexity");
    complexity->add_option("--system", system_json)->required();

    auto* turan = app.add_subcommand("turan", "extremal subspace-free set");
    turan->add_option("--n", n)->required();
    turan->add_option("--d", d)->required();

    auto* ramsey = app.add_subcommand("ramsey", "monochromatic subspace search");
    ramsey->require_subcommand(1);
    auto* rfind = ramsey->add_subcommand("find", "search a given coloring");
    rfind->add_option("--set", set_src)->required();
    rfind->add_option("--n", n)->required();
    rfind->add_option("--d", d)->required();
    auto* rminn = ramsey->add_subcommand("min-N", "exhaustive minimal dimension");
    rminn->add_option("--d", d)->required();
    auto* rbound = ramsey->add_subcommand("affine-bound", "strict affine recursion value");
    rbound->add_option("--d", d)->required();

    auto* rm = app.add_subcommand("rm", "Reed-Muller forbidden family");
    rm->add_option("--d", d)->required();

    auto* obstructions = app.add_subcommand("obstructions", "minimal obstruction family");
    obstructions->add_option("--prop", prop);
    obstructions->add_option("--max-d", max_d);

    auto* distance = app.add_subcommand("distance", "exact distance to the free class");
    distance->add_option("--fn", fn_src)->required();
    distance->add_option("--n", n)->required();
    distance->add_option("--family", family_text)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage errors exit 1
    }

    if (threads > 0) lipt_set_threads(threads);
    auto start = std::chrono::steady_clock::now();
    int rc = 0;
    char* out = nullptr;

    if (*analyze) {
        FnPtr f = make_function(fn_src, n, rc);
        if (!f) return rc;
        lipt_status st = lipt_analyze(f.get(), eps.c_str(), &out);
        return emit("analyze", {{"fn", fn_src}, {"n", n}, {"eps", eps}}, st, out, start);
    }
    if (*count) {
        FnPtr f = make_function(fn_src, n, rc);
        if (!f) return rc;
        lipt_status st = lipt_count(f.get(), system_json.c_str(), &out);
        return emit("count", {{"fn", fn_src}, {"n", n}, {"system", system_json}}, st, out,
                    start);
    }
    if (*freecmd) {
        if (system_json.empty() == family_text.empty()) {
            std::cerr << "error: pass exactly one of --system / --family\n";
            return 1;
        }
        std::string text = system_json.empty() ? family_text : system_json;
        FnPtr f = make_function(fn_src, n, rc);
        if (!f) return rc;
        FamPtr fam = make_family(text, rc);
        if (!fam) return rc;
        lipt_status st = lipt_freeness(f.get(), fam.get(), &out);
        return emit("free", {{"fn", fn_src}, {"n", n}, {"family", text}}, st, out, start);
    }
    if (*test) {
        FnPtr f = make_function(fn_src, n, rc);
        if (!f) return rc;
        FamPtr fam = make_family(family_text, rc);
        if (!fam) return rc;
        lipt_status st = lipt_test(f.get(), fam.get(), eps.c_str(), dim, trials, cutoff,
                                   seed, sample_mode == "points" ? 1 : 0, &out);
        return emit("test",
                    {{"fn", fn_src},
                     {"n", n},
                     {"family", family_text},
                     {"eps", eps},
                     {"dim", dim},
                     {"trials", trials},
                     {"cutoff", cutoff},
                     {"seed", seed},
                     {"sample_mode", sample_mode}},
                    st, out, start);
    }
    if (*estimate) {
        FnPtr f = make_function(fn_src, n, rc);
        if (!f) return rc;
        FamPtr fam = make_family(family_text, rc);
        if (!fam) return rc;
        lipt_status st = lipt_estimate(f.get(), fam.get(), dim, trials, seed, &out);
        return emit(
            "estimate",
            {{"fn", fn_src}, {"n", n}, {"family", family_text}, {"dim", dim},
             {"trials", trials}, {"seed", seed}},
            st, out, start);
    }
    if (*regularize) {
        FnPtr f = make_function(fn_src, n, rc);
        if (!f) return rc;
        lipt_status st;
        if (mode == "green") {
            st = lipt_regularize_green(f.get(), eps.c_str(), max_order, &out);
        } else {
            st = lipt_regularize_functional(f.get(), m, eps.c_str(), max_order, max_rounds,
                                            &out);
        }
        return emit("regularize",
                    {{"fn", fn_src}, {"n", n}, {"mode", mode}, {"eps", eps},
                     {"max_order", max_order}, {"m", m}, {"max_rounds", max_rounds}},
                    st, out, start);
    }
    if (*complexity) {
        lipt_status st = lipt_complexity(system_json.c_str(), &out);
        return emit("complexity", {{"system", system_json}}, st, out, start);
    }
    if (*turan) {
        lipt_status st = lipt_turan(n, d, &out);
        return emit("turan", {{"n", n}, {"d", d}}, st, out, start);
    }
    if (*rfind) {
        lipt_status st = lipt_ramsey_find(set_src.c_str(), n, d, &out);
        return emit("ramsey find", {{"set", set_src}, {"n", n}, {"d", d}}, st, out, start);
    }
    if (*rminn) {
        lipt_status st = lipt_ramsey_min_n(d, &out);
        return emit("ramsey min-N", {{"d", d}}, st, out, start);
    }
    if (*rbound) {
        lipt_status st = lipt_affine_ramsey_bound(d, &out);
        return emit("ramsey affine-bound", {{"d", d}}, st, out, start);
    }
    if (*rm) {
        lipt_status st = lipt_rm_family(d, &out);
        return emit("rm", {{"d", d}}, st, out, start);
    }
    if (*obstructions) {
        lipt_status st = lipt_obstructions(prop.c_str(), max_d, &out);
        return emit("obstructions", {{"prop", prop}, {"max_d", max_d}}, st, out, start);
    }
    if (*distance) {
        FnPtr f = make_function(fn_src, n, rc);
        if (!f) return rc;
        FamPtr fam = make_family(family_text, rc);
        if (!fam) return rc;
        lipt_status st = lipt_distance(f.get(), fam.get(), &out);
        return emit("distance", {{"fn", fn_src}, {"n", n}, {"family", family_text}}, st,
                    out, start);
    }
    return 1;
}
