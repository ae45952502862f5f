#include "lipt.h"

#include <cstring>
#include <string>

#include <json.hpp>

#include "lipt/boolfn.hpp"
#include "lipt/counting.hpp"
#include "lipt/extremal.hpp"
#include "lipt/families.hpp"
#include "lipt/io.hpp"
#include "lipt/parallel.hpp"
#include "lipt/regularity.hpp"
#include "lipt/systems.hpp"
#include "lipt/tester.hpp"

using nlohmann::json;

struct lipt_function {
    lipt::BooleanFunction fn;
};

struct lipt_family {
    lipt::Family fam;
};

namespace {

thread_local std::string g_error;

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

lipt_status fail(lipt_status st, const std::string& msg) {
    g_error = msg;
    return st;
}

template <typename Fn>
lipt_status guarded(char** out, Fn&& fn) {
    if (out) *out = nullptr;
    try {
        json j = fn();
        if (out) *out = dup_string(j.dump());
        return LIPT_OK;
    } catch (const lipt::input_error& e) {
        return fail(LIPT_ERR_INPUT, e.what());
    } catch (const lipt::budget_error& e) {
        return fail(LIPT_ERR_BUDGET, e.what());
    } catch (const std::exception& e) {
        return fail(LIPT_ERR_INTERNAL, e.what());
    }
}

json q_json(const lipt::Q& q) {
    return json{{"num", q.num()}, {"den", q.den()}, {"value", q.to_double()}, {"str", q.str()}};
}

json witness_json(const lipt::Witness& w) {
    json xs = json::array();
    for (const auto& v : w.x) xs.push_back(v.str());
    return json{{"system_index", w.system_index}, {"x", xs}};
}

json system_json_of(const lipt::InducedSystem& sys) {
    json rows = json::array();
    for (int r = 0; r < sys.m.rows; ++r) rows.push_back(sys.m.row(r).str());
    return json{{"rows", rows},
                {"sigma", sys.sigma_str()},
                {"k", sys.k()},
                {"rank", sys.rank()},
                {"degenerate", sys.degenerate}};
}

const char* status_name(lipt::ValidationStatus s) {
    switch (s) {
        case lipt::ValidationStatus::clean: return "clean";
        case lipt::ValidationStatus::reduced: return "reduced";
        case lipt::ValidationStatus::trivially_free: return "trivially_free";
        case lipt::ValidationStatus::value_forced: return "value_forced";
        case lipt::ValidationStatus::reduced_degenerate: return "reduced_degenerate";
    }
    return "?";
}

json validation_json(const lipt::ValidationResult& v) {
    json steps = json::array();
    for (const auto& s : v.steps)
        steps.push_back(json{{"kept", s.kept_coordinate + 1}, {"removed", s.removed_coordinate + 1}});
    json j{{"status", status_name(v.status)}, {"reductions", steps}};
    if (!v.note.empty()) j["note"] = v.note;
    if (v.forced_coordinate >= 0) j["forced_coordinate"] = v.forced_coordinate + 1;
    if (v.system) j["system"] = system_json_of(*v.system);
    return j;
}

lipt::InducedSystem system_from_json_text(const std::string& text) {
    lipt::ValidationResult v = lipt::parse_system_json(text);
    if (!v.usable())
        throw lipt::input_error("degenerate system (" + std::string(status_name(v.status)) +
                                "): " + v.note);
    return *v.system;
}

} // namespace

extern "C" {

const char* lipt_version(void) { return "0.1.0"; }

const char* lipt_last_error(void) { return g_error.c_str(); }

void lipt_string_free(char* s) { std::free(s); }

void lipt_set_threads(int n) { lipt::set_thread_count(n); }

lipt_function* lipt_function_create(const char* source, int n) {
    try {
        return new lipt_function{lipt::parse_function_source(source ? source : "", n)};
    } catch (const std::exception& e) {
        g_error = e.what();
        return nullptr;
    }
}

lipt_function* lipt_function_from_table_text(const char* text) {
    try {
        return new lipt_function{lipt::parse_table(text ? text : "")};
    } catch (const std::exception& e) {
        g_error = e.what();
        return nullptr;
    }
}

lipt_status lipt_function_table_text(const lipt_function* f, char** out) {
    if (!f || !out) return fail(LIPT_ERR_USAGE, "null argument");
    *out = dup_string(lipt::write_table(f->fn));
    return LIPT_OK;
}

int lipt_function_dim(const lipt_function* f) { return f ? f->fn.dim() : -1; }

void lipt_function_free(lipt_function* f) { delete f; }

lipt_family* lipt_family_create(const char* text) {
    try {
        return new lipt_family{lipt::parse_family(text ? text : "")};
    } catch (const std::exception& e) {
        g_error = e.what();
        return nullptr;
    }
}

void lipt_family_free(lipt_family* fam) { delete fam; }

lipt_status lipt_validate_system(const char* system_json, char** out) {
    if (!system_json) return fail(LIPT_ERR_USAGE, "null system");
    lipt_status rc = LIPT_OK;
    lipt_status g = guarded(out, [&] {
        lipt::ValidationResult v = lipt::parse_system_json(system_json);
        if (!v.usable()) rc = LIPT_ERR_INPUT;
        return validation_json(v);
    });
    if (g != LIPT_OK) return g;
    if (rc != LIPT_OK) g_error = "system is degenerate (see report)";
    return rc;
}

lipt_status lipt_analyze(const lipt_function* f, const char* eps, char** out) {
    if (!f) return fail(LIPT_ERR_USAGE, "null function");
    return guarded(out, [&] {
        const lipt::BooleanFunction& fn = f->fn;
        json j;
        j["n"] = fn.dim();
        j["ones"] = fn.ones();
        j["density"] = q_json(lipt::density(fn));
        if (fn.dim() >= 1) {
            lipt::MaxCoeff mc = lipt::max_nontrivial_coeff(fn);
            j["max_coeff"] = q_json(mc.value);
            j["max_coeff_alpha"] = mc.alpha.str();
            if (eps && *eps) {
                lipt::Q e = lipt::Q::parse(eps);
                j["eps"] = e.str();
                j["uniform"] = mc.value < e;
            }
        }
        if (fn.dim() <= 8) {
            lipt::FourierSpectrum sp = lipt::wht(fn);
            json nums = json::array();
            for (auto v : sp.numerators) nums.push_back(v);
            j["spectrum_numerators"] = nums;
            j["spectrum_denominator"] = std::int64_t(1) << fn.dim();
        }
        return j;
    });
}

lipt_status lipt_count(const lipt_function* f, const char* system_json, char** out) {
    if (!f || !system_json) return fail(LIPT_ERR_USAGE, "null argument");
    return guarded(out, [&] {
        lipt::InducedSystem sys = system_from_json_text(system_json);
        std::uint64_t c = lipt::count_induced(f->fn, sys);
        return json{{"count", c}, {"system", system_json_of(sys)}};
    });
}

lipt_status lipt_freeness(const lipt_function* f, const lipt_family* fam, char** out) {
    if (!f || !fam) return fail(LIPT_ERR_USAGE, "null argument");
    return guarded(out, [&] {
        lipt::FreenessResult r = lipt::is_free(f->fn, fam->fam);
        json j{{"free", r.free}};
        if (r.witness) j["witness"] = witness_json(*r.witness);
        return j;
    });
}

lipt_status lipt_distance(const lipt_function* f, const lipt_family* fam, char** out) {
    if (!f || !fam) return fail(LIPT_ERR_USAGE, "null argument");
    return guarded(out, [&] {
        lipt::Q d = lipt::distance_to_family(f->fn, fam->fam);
        return json{{"distance", q_json(d)}};
    });
}

lipt_status lipt_test(const lipt_function* f, const lipt_family* fam, const char* eps,
                      int d, int trials, int cutoff, uint64_t seed, int mode, char** out) {
    if (!f || !fam) return fail(LIPT_ERR_USAGE, "null argument");
    return guarded(out, [&] {
        lipt::TesterConfig cfg;
        if (eps && *eps) cfg.eps = lipt::Q::parse(eps);
        cfg.d = d;
        cfg.trials = trials;
        cfg.small_n_cutoff = cutoff;
        cfg.seed = seed;
        cfg.mode = mode == 1 ? lipt::SampleMode::points : lipt::SampleMode::subspace;
        lipt::Verdict v = lipt::oblivious_test(f->fn, fam->fam, cfg);
        json j{{"accept", v.accept},
               {"mode", v.exhaustive ? "exhaustive" : "sampled"},
               {"queries", v.queries_made}};
        if (v.witness) {
            j["witness"] = witness_json(*v.witness);
            j["rejecting_trial"] = v.rejecting_trial;
        }
        return j;
    });
}

lipt_status lipt_estimate(const lipt_function* f, const lipt_family* fam, int d,
                          int trials, uint64_t seed, char** out) {
    if (!f || !fam) return fail(LIPT_ERR_USAGE, "null argument");
    return guarded(out, [&] {
        lipt::RejectEstimate est =
            lipt::estimate_reject_prob(f->fn, fam->fam, d, trials, seed);
        return json{{"trials", est.trials},
                    {"rejections", est.rejections},
                    {"estimate", q_json(est.estimate)},
                    {"wilson95", json::array({est.wilson_low, est.wilson_high})}};
    });
}

namespace {

json partition_json(const lipt::RegularityPartition& p) {
    json j{{"order", p.order},
           {"subspace_dim", p.h.dim()},
           {"index", q_json(p.index)},
           {"eps", p.eps_used.str()},
           {"bad_fraction", q_json(p.bad_fraction)},
           {"budget_flag", p.budget_flag}};
    if (p.order <= 6) {
        json cosets = json::array();
        for (size_t i = 0; i < p.cosets.size(); ++i) {
            cosets.push_back(json{{"rep", p.cosets[i].rep.str()},
                                  {"density", q_json(p.coset_density(i))},
                                  {"max_coeff", q_json(p.coset_max_coeff(i))}});
        }
        j["cosets"] = cosets;
    }
    return j;
}

} // namespace

lipt_status lipt_regularize_green(const lipt_function* f, const char* eps, int max_order,
                                  char** out) {
    if (!f || !eps) return fail(LIPT_ERR_USAGE, "null argument");
    return guarded(out, [&] {
        lipt::Q e = lipt::Q::parse(eps);
        lipt::RegularityPartition p = lipt::green_regularize(
            f->fn, e, lipt::Subspace::full(f->fn.dim()), max_order);
        return partition_json(p);
    });
}

lipt_status lipt_regularize_functional(const lipt_function* f, int m, const char* eps0,
                                       int max_order, int max_rounds, char** out) {
    if (!f || !eps0) return fail(LIPT_ERR_USAGE, "null argument");
    return guarded(out, [&] {
        lipt::Q e0 = lipt::Q::parse(eps0);
        auto E = [e0](int r) { return e0 / lipt::Q(r + 1); };
        lipt::FunctionalResult res =
            lipt::functional_regularize(f->fn, m, E, max_order, max_rounds);
        return json{{"coarse", partition_json(res.coarse)},
                    {"fine", partition_json(res.fine)},
                    {"diagnostics",
                     json{{"order_bounds", res.diagnostics.order_bounds},
                          {"coarse_uniformity", res.diagnostics.coarse_uniformity},
                          {"fine_uniformity", res.diagnostics.fine_uniformity},
                          {"density_transfer", res.diagnostics.density_transfer},
                          {"budget_flag", res.diagnostics.budget_flag},
                          {"rounds", res.diagnostics.rounds}}}};
    });
}

lipt_status lipt_complexity(const char* system_json, char** out) {
    if (!system_json) return fail(LIPT_ERR_USAGE, "null system");
    return guarded(out, [&] {
        lipt::InducedSystem sys = system_from_json_text(system_json);
        int c = lipt::complexity(sys.m);
        return json{{"complexity", c}, {"k", sys.k()}, {"rank", sys.rank()}};
    });
}

lipt_status lipt_turan(int n, int d, char** out) {
    return guarded(out, [&] {
        lipt::PointSet s = lipt::turan_extremal_set(n, d);
        json j{{"n", n},
               {"d", d},
               {"size", s.count()},
               {"expected_size", (std::int64_t(1) << n) - (std::int64_t(1) << (n - d + 1))}};
        if (n <= 16 && d <= 4)
            j["contains_d_subspace"] = lipt::find_subspace_in_set(s, d).has_value();
        if (n <= 6) {
            json pts = json::array();
            for (std::uint32_t x = 0; x < s.size(); ++x)
                if (s.contains(x)) pts.push_back(lipt::F2Vector(x, n).str());
            j["points"] = pts;
        }
        return j;
    });
}

lipt_status lipt_ramsey_find(const char* set_source, int n, int d, char** out) {
    if (!set_source) return fail(LIPT_ERR_USAGE, "null set source");
    return guarded(out, [&] {
        lipt::BooleanFunction fn = lipt::parse_function_source(set_source, n);
        lipt::PointSet s(n);
        for (std::uint32_t x = 0; x < fn.size(); ++x)
            if (fn.get(x)) s.insert(x);
        auto cert = lipt::ramsey_find(s, d);
        json j{{"n", n}, {"d", d}, {"found", cert.has_value()}};
        if (cert) {
            json basis = json::array();
            for (const auto& b : cert->h.basis()) basis.push_back(b.str());
            j["color"] = cert->in_set ? "set" : "complement";
            j["basis"] = basis;
        }
        return j;
    });
}

lipt_status lipt_ramsey_min_n(int d, char** out) {
    return guarded(out, [&] {
        lipt::RamseyMinN r = lipt::ramsey_min_N(d);
        json j{{"d", d}, {"min_n", r.min_n}};
        if (r.counterexample) {
            json pts = json::array();
            for (std::uint32_t x = 0; x < r.counterexample->size(); ++x)
                if (r.counterexample->contains(x))
                    pts.push_back(lipt::F2Vector(x, r.min_n - 1).str());
            j["counterexample_n"] = r.min_n - 1;
            j["counterexample_points"] = pts;
        }
        return j;
    });
}

lipt_status lipt_affine_ramsey_bound(int d, char** out) {
    return guarded(out, [&] {
        return json{{"d", d}, {"bound", lipt::affine_ramsey_bound_str(d)}};
    });
}

lipt_status lipt_rm_family(int d, char** out) {
    return guarded(out, [&] {
        lipt::F2Matrix m = lipt::rm_matrix(d);
        json rows = json::array();
        for (int r = 0; r < m.rows; ++r) rows.push_back(m.row(r).str());
        json j{{"d", d},
               {"k", m.cols},
               {"rows", rows},
               {"rank", m.rows},
               {"sigma_count", std::int64_t(1) << (m.cols - 1)}};
        if (d <= 2) {
            json sigmas = json::array();
            for (std::uint32_t s = 0; s < (std::uint32_t(1) << m.cols); ++s)
                if (lipt::popcount32(s) % 2 == 1)
                    sigmas.push_back(lipt::F2Vector(s, m.cols).str());
            j["sigmas"] = sigmas;
        }
        return j;
    });
}

lipt_status lipt_obstructions(const char* prop, int max_d, char** out) {
    if (!prop) return fail(LIPT_ERR_USAGE, "null property name");
    return guarded(out, [&] {
        std::string name(prop);
        std::function<bool(const lipt::BooleanFunction&)> pred;
        if (name == "constant") {
            pred = [](const lipt::BooleanFunction& g) {
                return g.ones() == 0 || g.ones() == g.size();
            };
        } else if (name == "rm1") {
            pred = [](const lipt::BooleanFunction& g) { return lipt::rm_membership(g, 1); };
        } else if (name == "rm2") {
            pred = [](const lipt::BooleanFunction& g) { return lipt::rm_membership(g, 2); };
        } else {
            throw lipt::input_error("unknown builtin property: " + name);
        }
        lipt::Family fam = lipt::family_from_oracle(pred, max_d);
        json systems = json::array();
        for (const auto& sys : fam.explicit_systems) systems.push_back(system_json_of(sys));
        return json{{"property", name},
                    {"max_d", max_d},
                    {"count", fam.explicit_systems.size()},
                    {"systems", systems}};
    });
}

} // extern "C"
