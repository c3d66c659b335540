#include "qsg/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>
#include <tuple>

#include "qsg/catalog.hpp"
#include "qsg/errors.hpp"
#include "qsg/numkernel.hpp"
#include "qsg/version.hpp"

namespace qsg {

using nlohmann::json;

namespace {

constexpr std::size_t kMaxDim = 64;

// ---------------------------------------------------------------------------
// configuration parsing
// ---------------------------------------------------------------------------

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) {
                ok = true;
                break;
            }
        }
        if (!ok) throw ConfigError(where + "." + key, "unknown key '" + key + "' in " + where);
    }
}

double parse_number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ConfigError(field, field + " must be a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field, field + " must be finite");
    return d;
}

std::vector<double> parse_grid_axis(const json& v, const std::string& field) {
    if (!v.is_array()) throw ConfigError(field, field + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& x : v) {
        const double d = parse_number(x, field);
        if (d < 0.0) throw ConfigError(field, field + " values must be nonnegative");
        out.push_back(d);
    }
    return out;
}

Complex parse_complex(const json& v, const std::string& field) {
    if (!v.is_array() || v.size() != 2) {
        throw ConfigError(field, field + " entries must be [re, im] pairs");
    }
    return Complex{parse_number(v[0], field), parse_number(v[1], field)};
}

CMatrix parse_matrix(const json& v, const std::string& field) {
    if (!v.is_array() || v.empty()) {
        throw ConfigError(field, field + " must be a nonempty array of rows");
    }
    const std::size_t rows = v.size();
    const std::size_t cols = v[0].is_array() ? v[0].size() : 0;
    if (cols == 0) throw ConfigError(field, field + " rows must be nonempty arrays");
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (!v[i].is_array() || v[i].size() != cols) {
            throw ConfigError(field, field + " must be rectangular");
        }
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = parse_complex(v[i][j], field);
    }
    return m;
}

BackendSpec parse_backend(const json& v) {
    BackendSpec spec;
    if (v.is_string()) {
        spec.catalog = v.get<std::string>();
        return spec;
    }
    if (!v.is_object()) {
        throw ConfigError("backend", "backend must be a catalog name or an object");
    }
    check_keys(v, {"catalog", "kind", "matrix", "a", "afun", "step", "dim"}, "backend");
    if (v.contains("catalog")) {
        if (!v["catalog"].is_string()) {
            throw ConfigError("backend.catalog", "backend.catalog must be a string");
        }
        spec.catalog = v["catalog"].get<std::string>();
        if (v.contains("dim")) {
            const double d = parse_number(v["dim"], "backend.dim");
            if (d < 1.0 || d > static_cast<double>(kMaxDim) || d != std::floor(d)) {
                throw ConfigError("backend.dim", "backend.dim must be an integer in [1, 64]");
            }
            spec.dim = static_cast<std::size_t>(d);
        }
        for (const char* k : {"kind", "matrix", "a", "afun", "step"}) {
            if (v.contains(k)) {
                throw ConfigError(std::string("backend.") + k,
                                  "catalog backends take no explicit fields");
            }
        }
        return spec;
    }

    if (!v.contains("kind") || !v["kind"].is_string()) {
        throw ConfigError("backend.kind", "explicit backends require a string kind");
    }
    spec.kind = v["kind"].get<std::string>();
    if (spec.kind == "constant" || spec.kind == "scaled") {
        if (!v.contains("matrix")) {
            throw ConfigError("backend.matrix", "constant/scaled backends require a matrix");
        }
        spec.matrix = parse_matrix(v["matrix"], "backend.matrix");
        if (!spec.matrix->is_square()) {
            throw ConfigError("backend.matrix", "backend.matrix must be square");
        }
        if (spec.matrix->rows() > kMaxDim) {
            throw ConfigError("backend.matrix", "backend.matrix dimension exceeds 64");
        }
    }
    if (spec.kind == "scaled") {
        if (!v.contains("a") || !v["a"].is_string()) {
            throw ConfigError("backend.a", "scaled backends require a named scale 'a'");
        }
        spec.scale = v["a"].get<std::string>();
    } else if (v.contains("a")) {
        throw ConfigError("backend.a", "'a' is only valid for scaled backends");
    }
    if (spec.kind == "evolution") {
        if (!v.contains("afun") || !v["afun"].is_string()) {
            throw ConfigError("backend.afun", "evolution backends require a named 'afun'");
        }
        spec.generator_fun = v["afun"].get<std::string>();
        if (v.contains("step")) {
            const double st = parse_number(v["step"], "backend.step");
            if (!(st > 0.0)) throw ConfigError("backend.step", "backend.step must be positive");
            spec.step = st;
        }
    } else if (v.contains("afun") || v.contains("step")) {
        throw ConfigError("backend.afun", "'afun'/'step' are only valid for evolution backends");
    }
    if (spec.kind != "constant" && spec.kind != "scaled" && spec.kind != "evolution") {
        throw ConfigError("backend.kind", "unknown backend kind '" + spec.kind + "'");
    }
    if (v.contains("dim")) {
        throw ConfigError("backend.dim", "'dim' is only valid for catalog backends");
    }
    return spec;
}

}  // namespace

const std::vector<std::string>& claim_registry() {
    static const std::vector<std::string> registry{
        "cor2.2",    "cor2.3.1", "cor2.3.2", "cor2.3.3", "cor2.3.4",      "cor2.3.5",
        "cor2.3.6",  "cor2.3.7", "def1.1.1", "def1.1.2", "def1.1.3",      "def1.1.4",
        "thm1.6.2",  "thm1.6.3", "thm1.6.5", "thm2.1.1", "thm2.1.2",      "thm2.4.1",
        "thm2.4.2",  "thm2.4.3", "thm2.4.3.prop",        "thm2.4.4",      "thm2.4.5",
        "thm2.5",
    };
    return registry;
}

ScenarioConfig parse_scenario_config(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("configuration is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("<document>", "configuration must be a JSON object");
    check_keys(doc,
               {"scenario_id", "backend", "grid", "lambdas", "claims", "tolerances", "seed",
                "pseudospectrum"},
               "config");

    ScenarioConfig config;

    if (!doc.contains("scenario_id") || !doc["scenario_id"].is_string()) {
        throw ConfigError("scenario_id", "scenario_id is required and must be a string");
    }
    config.scenario_id = doc["scenario_id"].get<std::string>();

    if (!doc.contains("backend")) throw ConfigError("backend", "backend is required");
    config.backend = parse_backend(doc["backend"]);

    if (!doc.contains("grid") || !doc["grid"].is_object()) {
        throw ConfigError("grid", "grid is required and must be an object");
    }
    check_keys(doc["grid"], {"t", "s", "r"}, "grid");
    if (!doc["grid"].contains("t")) throw ConfigError("grid.t", "grid.t is required");
    if (!doc["grid"].contains("s")) throw ConfigError("grid.s", "grid.s is required");
    config.t_grid = parse_grid_axis(doc["grid"]["t"], "grid.t");
    config.s_grid = parse_grid_axis(doc["grid"]["s"], "grid.s");
    if (config.t_grid.empty()) throw ConfigError("grid.t", "grid.t must be nonempty");
    if (config.s_grid.empty()) throw ConfigError("grid.s", "grid.s must be nonempty");
    if (doc["grid"].contains("r")) config.r_grid = parse_grid_axis(doc["grid"]["r"], "grid.r");

    if (doc.contains("lambdas")) {
        const json& l = doc["lambdas"];
        if (l.is_string()) {
            if (l.get<std::string>() != "auto") {
                throw ConfigError("lambdas", "lambdas must be \"auto\" or an array of [re, im]");
            }
        } else if (l.is_array()) {
            std::vector<Complex> lambdas;
            for (const auto& x : l) lambdas.push_back(parse_complex(x, "lambdas"));
            config.lambdas = std::move(lambdas);
        } else {
            throw ConfigError("lambdas", "lambdas must be \"auto\" or an array of [re, im]");
        }
    }

    if (doc.contains("claims")) {
        const json& c = doc["claims"];
        if (c.is_string()) {
            if (c.get<std::string>() != "all") {
                throw ConfigError("claims", "claims must be \"all\" or an array of claim ids");
            }
            config.claims = claim_registry();
        } else if (c.is_array()) {
            for (const auto& x : c) {
                if (!x.is_string()) throw ConfigError("claims", "claim ids must be strings");
                const std::string id = x.get<std::string>();
                const auto& reg = claim_registry();
                if (std::find(reg.begin(), reg.end(), id) == reg.end()) {
                    throw ConfigError("claims", "unknown claim id '" + id + "'");
                }
                config.claims.push_back(id);
            }
            std::sort(config.claims.begin(), config.claims.end());
            config.claims.erase(std::unique(config.claims.begin(), config.claims.end()),
                                config.claims.end());
        } else {
            throw ConfigError("claims", "claims must be \"all\" or an array of claim ids");
        }
    } else {
        config.claims = claim_registry();
    }

    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        if (!t.is_object()) throw ConfigError("tolerances", "tolerances must be an object");
        check_keys(t, {"rank_tol", "quad_tol", "eig_tol", "ode_tol"}, "tolerances");
        if (t.contains("rank_tol"))
            config.tolerances.rank_tol = parse_number(t["rank_tol"], "tolerances.rank_tol");
        if (t.contains("quad_tol"))
            config.tolerances.quad_tol = parse_number(t["quad_tol"], "tolerances.quad_tol");
        if (t.contains("eig_tol"))
            config.tolerances.eig_tol = parse_number(t["eig_tol"], "tolerances.eig_tol");
        if (t.contains("ode_tol"))
            config.tolerances.ode_tol = parse_number(t["ode_tol"], "tolerances.ode_tol");
        try {
            config.tolerances.validate();
        } catch (const DomainError& e) {
            throw ConfigError("tolerances", e.what());
        }
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned()) {
            throw ConfigError("seed", "seed must be a nonnegative integer");
        }
        config.seed = doc["seed"].get<std::uint64_t>();
    }

    if (doc.contains("pseudospectrum")) {
        const json& p = doc["pseudospectrum"];
        if (!p.is_object()) throw ConfigError("pseudospectrum", "pseudospectrum must be an object");
        check_keys(p, {"re", "im", "resolution"}, "pseudospectrum");
        PseudospectrumRequest req;
        for (const char* axis : {"re", "im"}) {
            const std::string field = std::string("pseudospectrum.") + axis;
            if (!p.contains(axis) || !p[axis].is_array() || p[axis].size() != 2) {
                throw ConfigError(field, field + " must be [lo, hi]");
            }
            const double lo = parse_number(p[axis][0], field);
            const double hi = parse_number(p[axis][1], field);
            if (!(lo < hi)) throw ConfigError(field, field + " must satisfy lo < hi");
            if (std::string(axis) == "re") {
                req.re_lo = lo;
                req.re_hi = hi;
            } else {
                req.im_lo = lo;
                req.im_hi = hi;
            }
        }
        if (!p.contains("resolution")) {
            throw ConfigError("pseudospectrum.resolution", "resolution is required");
        }
        const double res = parse_number(p["resolution"], "pseudospectrum.resolution");
        if (res < 2.0 || res > 512.0 || res != std::floor(res)) {
            throw ConfigError("pseudospectrum.resolution",
                              "resolution must be an integer in [2, 512]");
        }
        req.resolution = static_cast<std::size_t>(res);
        config.pseudospectrum = req;
    }

    // claims that consume the r axis need it present
    const bool needs_r =
        std::find(config.claims.begin(), config.claims.end(), "def1.1.2") != config.claims.end();
    if (needs_r && config.r_grid.empty()) {
        throw ConfigError("grid.r", "grid.r is required by claim def1.1.2");
    }
    return config;
}

QuasiSemigroup build_backend(const BackendSpec& spec, const ToleranceContext& tol,
                             std::uint64_t seed) {
    if (!spec.catalog.empty()) {
        return catalog_backend(spec.catalog, tol, spec.dim.value_or(4), seed);
    }
    if (spec.kind == "constant") {
        return QuasiSemigroup(QuasiSemigroup::Constant{*spec.matrix}, tol,
                              "constant(dim=" + std::to_string(spec.matrix->rows()) + ")");
    }
    if (spec.kind == "scaled") {
        return QuasiSemigroup(QuasiSemigroup::Scaled{*spec.matrix, scalar_map(spec.scale)}, tol,
                              "scaled(a=" + spec.scale +
                                  ",dim=" + std::to_string(spec.matrix->rows()) + ")");
    }
    return QuasiSemigroup(
        QuasiSemigroup::Evolution{matrix_map(spec.generator_fun), spec.step.value_or(0.02)}, tol,
        "evolution(afun=" + spec.generator_fun + ")");
}

// ---------------------------------------------------------------------------
// record generation
// ---------------------------------------------------------------------------

namespace {

struct Task {
    std::string claim;
    ClaimParams params;  // used when the task itself blows up
    std::function<std::vector<VerificationRecord>()> run;
};

std::size_t thread_cap() {
    if (const char* env = std::getenv("QSG_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
}

std::vector<VerificationRecord> run_guarded(const Task& task) {
    try {
        return task.run();
    } catch (const std::exception& e) {
        return {make_record(task.claim, task.params, std::numeric_limits<double>::infinity(), 0.0,
                            std::string("record computation failed: ") + e.what())};
    }
}

std::vector<std::vector<VerificationRecord>> run_tasks(const std::vector<Task>& tasks) {
    std::vector<std::vector<VerificationRecord>> results(tasks.size());
    const std::size_t workers = std::min(thread_cap(), tasks.size());
    if (workers <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i) results[i] = run_guarded(tasks[i]);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= tasks.size()) return;
                results[i] = run_guarded(tasks[i]);
            }
        });
    }
    for (auto& th : pool) th.join();
    return results;
}

bool record_order(const VerificationRecord& a, const VerificationRecord& b) {
    static constexpr double kMissing = -std::numeric_limits<double>::infinity();
    const auto key = [](const VerificationRecord& r) {
        return std::tuple(
            r.claim_id, r.params.t, r.params.s, r.params.r.value_or(kMissing),
            r.params.lambda ? r.params.lambda->real() : kMissing,
            r.params.lambda ? r.params.lambda->imag() : kMissing, r.params.power.value_or(-1),
            r.note);
    };
    return key(a) < key(b);
}

json backend_to_json(const BackendSpec& spec) {
    json b;
    if (!spec.catalog.empty()) {
        b["catalog"] = spec.catalog;
        if (spec.dim) b["dim"] = *spec.dim;
        return b;
    }
    b["kind"] = spec.kind;
    if (spec.matrix) {
        json rows = json::array();
        for (std::size_t i = 0; i < spec.matrix->rows(); ++i) {
            json row = json::array();
            for (std::size_t j = 0; j < spec.matrix->cols(); ++j) {
                row.push_back({(*spec.matrix)(i, j).real(), (*spec.matrix)(i, j).imag()});
            }
            rows.push_back(std::move(row));
        }
        b["matrix"] = std::move(rows);
    }
    if (!spec.scale.empty()) b["a"] = spec.scale;
    if (!spec.generator_fun.empty()) b["afun"] = spec.generator_fun;
    if (spec.step) b["step"] = *spec.step;
    return b;
}

std::string normalized_config_json(const ScenarioConfig& config) {
    json j;
    j["scenario_id"] = config.scenario_id;
    j["backend"] = backend_to_json(config.backend);
    j["grid"] = {{"t", config.t_grid}, {"s", config.s_grid}, {"r", config.r_grid}};
    if (config.lambdas) {
        json l = json::array();
        for (const Complex v : *config.lambdas) l.push_back({v.real(), v.imag()});
        j["lambdas"] = std::move(l);
    } else {
        j["lambdas"] = "auto";
    }
    j["claims"] = config.claims;
    j["tolerances"] = {{"rank_tol", config.tolerances.rank_tol},
                       {"quad_tol", config.tolerances.quad_tol},
                       {"eig_tol", config.tolerances.eig_tol},
                       {"ode_tol", config.tolerances.ode_tol}};
    j["seed"] = config.seed;
    if (config.pseudospectrum) {
        j["pseudospectrum"] = {{"re", {config.pseudospectrum->re_lo, config.pseudospectrum->re_hi}},
                               {"im", {config.pseudospectrum->im_lo, config.pseudospectrum->im_hi}},
                               {"resolution", config.pseudospectrum->resolution}};
    }
    return j.dump();
}

}  // namespace

Report run_scenario(const ScenarioConfig& config) {
    const auto t_start = std::chrono::steady_clock::now();

    config.tolerances.validate();
    for (const std::string& id : config.claims) {
        const auto& reg = claim_registry();
        if (std::find(reg.begin(), reg.end(), id) == reg.end()) {
            throw ConfigError("claims", "unknown claim id '" + id + "'");
        }
    }

    const QuasiSemigroup q = build_backend(config.backend, config.tolerances, config.seed);

    const auto lambdas_for = [&](double t) -> std::vector<Complex> {
        if (config.lambdas) return *config.lambdas;
        return default_lambda_samples(q.generator(t));
    };
    const bool commutation_structural =
        q.kind() != BackendKind::Evolution || q.constant_generator();
    const double t_max = *std::max_element(config.t_grid.begin(), config.t_grid.end());

    const auto requested = [&](const std::string& id) {
        return std::find(config.claims.begin(), config.claims.end(), id) != config.claims.end();
    };

    std::vector<Task> tasks;
    const auto add = [&](std::string claim, ClaimParams params,
                         std::function<std::vector<VerificationRecord>()> run) {
        tasks.push_back(Task{std::move(claim), std::move(params), std::move(run)});
    };
    const auto params_at = [&](double t, double s) {
        ClaimParams p;
        p.t = t;
        p.s = s;
        p.backend = q.description();
        return p;
    };

    if (requested("def1.1.1")) {
        for (const double t : config.t_grid) {
            add("def1.1.1", params_at(t, 0.0), [&q, t, p = params_at(t, 0.0)] {
                const double residual =
                    spectral_norm(q.eval(t, 0.0).matrix - CMatrix::identity(q.dim()));
                return std::vector{make_record("def1.1.1", p, residual, 1e-12,
                                               "R(t, 0) must be the identity")};
            });
        }
    }
    if (requested("def1.1.2")) {
        for (const double t : config.t_grid)
            for (const double s : config.s_grid)
                for (const double r : config.r_grid) {
                    ClaimParams p = params_at(t, s);
                    p.r = r;
                    add("def1.1.2", p, [&q, t, s, r, p] {
                        const CMatrix lhs = q.eval(t, s + r).matrix;
                        const CMatrix rhs = q.eval(t + r, s).matrix * q.eval(t, r).matrix;
                        const double bound = std::max(1e-8, q.tol().ode_tol);
                        return std::vector{make_record("def1.1.2", p, spectral_norm(lhs - rhs),
                                                       bound, "cocycle law")};
                    });
                }
    }
    if (requested("def1.1.3")) {
        for (const double t : config.t_grid) {
            add("def1.1.3", params_at(t, 0.0), [&q, t, p = params_at(t, 0.0)] {
                constexpr double eps = 1e-6;
                const double residual =
                    spectral_norm(q.eval(t, eps).matrix - CMatrix::identity(q.dim()));
                const double bound = 10.0 * eps *
                                     std::max(1.0, spectral_norm(q.generator(t).matrix)) *
                                     q.growth_bound(t + eps);
                return std::vector{
                    make_record("def1.1.3", p, residual, bound, "strong continuity at s -> 0+")};
            });
        }
    }
    if (requested("def1.1.4")) {
        for (const double t : config.t_grid)
            for (const double s : config.s_grid) {
                add("def1.1.4", params_at(t, s), [&q, t, s, p = params_at(t, s)] {
                    const double norm = spectral_norm(q.eval(t, s).matrix);
                    const double m = q.growth_bound(t + s);
                    const double residual = std::max(0.0, norm - m);
                    return std::vector{make_record("def1.1.4", p, residual, 1e-8 * m,
                                                   "growth bound ||R(t,s)|| <= M(t+s)")};
                });
            }
    }
    if (requested("thm1.6.2")) {
        std::vector<double> s_desc = config.s_grid;
        std::sort(s_desc.begin(), s_desc.end(), std::greater<>());
        s_desc.erase(std::remove_if(s_desc.begin(), s_desc.end(),
                                    [](double s) { return !(s > 0.0); }),
                     s_desc.end());
        s_desc.erase(std::unique(s_desc.begin(), s_desc.end()), s_desc.end());
        for (const double t : config.t_grid) {
            if (s_desc.empty()) break;
            add("thm1.6.2", params_at(t, s_desc.front()), [&q, t, s_desc] {
                const std::vector<double> residuals = check_averaging(q, t, s_desc);
                std::vector<VerificationRecord> records;
                for (std::size_t k = 0; k < s_desc.size(); ++k) {
                    ClaimParams p;
                    p.t = t;
                    p.s = s_desc[k];
                    p.backend = q.description();
                    records.push_back(make_record("thm1.6.2", p, residuals[k], std::nullopt,
                                                  "averaged propagator distance to identity; "
                                                  "O(s) as s -> 0+"));
                }
                return records;
            });
        }
    }
    if (requested("thm1.6.3")) {
        for (const double t : config.t_grid)
            for (const double t0 : config.t_grid)
                for (const double s0 : config.s_grid) {
                    ClaimParams p = params_at(t, s0);
                    p.r = t0;  // second time parameter of the commutation probe
                    add("thm1.6.3", p, [&q, t, t0, s0, p, commutation_structural] {
                        const double residual = check_commutation(q, t, t0, s0);
                        if (commutation_structural) {
                            const double bound =
                                1e-8 * std::max(1.0, spectral_norm(q.generator(t).matrix) *
                                                         q.growth_bound(t0 + s0));
                            return std::vector{make_record("thm1.6.3", p, residual, bound,
                                                           "commutation R(t0,s0) A(t) = A(t) "
                                                           "R(t0,s0); r carries t0")};
                        }
                        return std::vector{make_record("thm1.6.3", p, residual, std::nullopt,
                                                       "noncommuting family; measured only; r "
                                                       "carries t0")};
                    });
                }
    }
    if (requested("thm1.6.5")) {
        for (const double t : config.t_grid)
            for (const double s : config.s_grid) {
                add("thm1.6.5", params_at(t, s), [&q, t, s, p = params_at(t, s)] {
                    const double residual = check_integral_equation(q, t, s);
                    double sup_a = 0.0;
                    for (const double h : {0.0, 0.5 * s, s}) {
                        sup_a = std::max(sup_a, spectral_norm(q.generator(t + h).matrix));
                    }
                    double bound = 10.0 * static_cast<double>(q.dim()) * q.tol().quad_tol *
                                   std::max(1.0, sup_a * q.growth_bound(t + s)) * std::max(1.0, s);
                    if (q.kind() == BackendKind::Evolution) {
                        bound += 10.0 * q.tol().ode_tol *
                                 std::max(1.0, sup_a * s * q.growth_bound(t + s));
                    }
                    return std::vector{make_record("thm1.6.5", p, residual, bound,
                                                   "integral equation R(t,s) = I + int A R")};
                });
            }
    }
    if (requested("cor2.2")) {
        for (const double s : config.s_grid)
            for (const Complex lambda : lambdas_for(0.0)) {
                ClaimParams p = params_at(0.0, s);
                p.lambda = lambda;
                add("cor2.2", p, [&q, s, lambda, p, t_max, t_grid = config.t_grid] {
                    const CMatrix d0 = d_lambda(q, lambda, 0.0, s).matrix;
                    const CMatrix shifted = [&] {
                        CMatrix m = Complex{-1.0, 0.0} * q.generator(0.0).matrix;
                        for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += lambda;
                        return m;
                    }();
                    const CMatrix rhs = [&] {
                        CMatrix m = Complex{-1.0, 0.0} * q.eval(0.0, s).matrix;
                        const Complex e = std::exp(lambda * s);
                        for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) += e;
                        return m;
                    }();
                    double residual = spectral_norm(shifted * d0 - rhs);
                    for (const double t : t_grid) {
                        residual = std::max(
                            residual, spectral_norm(d_lambda(q, lambda, t, s).matrix - d0));
                    }
                    if (q.constant_generator()) {
                        const double bound = 20.0 * q.tol().quad_tol * s *
                                             std::exp(std::abs(lambda.real()) * s) *
                                             q.growth_bound(t_max + s) *
                                             static_cast<double>(q.dim());
                        return std::vector{make_record(
                            "cor2.2", p, residual, bound,
                            "one-parameter reduction: D independent of t")};
                    }
                    return std::vector{make_record("cor2.2", p, residual, std::nullopt,
                                                   "t-dependence of D measured")};
                });
            }
    }

    const bool want_identity_right = requested("thm2.1.1");
    const bool want_identity_left = requested("thm2.1.2");
    const bool want_power_right = requested("cor2.3.1");
    const bool want_power_left = requested("cor2.3.2");
    const bool want_kernel1 = requested("cor2.3.3");
    const bool want_range1 = requested("cor2.3.4");
    const bool want_kernel_n = requested("cor2.3.5");
    const bool want_range_n = requested("cor2.3.6");
    const bool want_hyper = requested("cor2.3.7");

    for (const double t : config.t_grid) {
        if (!(want_identity_right || want_identity_left || want_power_right || want_power_left ||
              want_kernel1 || want_range1 || want_kernel_n || want_range_n || want_hyper)) {
            break;
        }
        const std::vector<Complex> lambdas = lambdas_for(t);
        for (const double s : config.s_grid)
            for (const Complex lambda : lambdas) {
                ClaimParams p = params_at(t, s);
                p.lambda = lambda;
                if (want_identity_right) {
                    add("thm2.1.1", p, [&q, lambda, t, s] {
                        return std::vector{check_identity_right(q, lambda, t, s)};
                    });
                }
                if (want_identity_left) {
                    add("thm2.1.2", p, [&q, lambda, t, s] {
                        return std::vector{check_identity_left(q, lambda, t, s)};
                    });
                }
                for (const int n : {1, 2, 3}) {
                    ClaimParams pn = p;
                    pn.power = n;
                    if (want_power_right) {
                        add("cor2.3.1", pn, [&q, lambda, t, s, n] {
                            return std::vector{check_power_identity(q, lambda, t, s, n, false)};
                        });
                    }
                    if (want_power_left) {
                        add("cor2.3.2", pn, [&q, lambda, t, s, n] {
                            return std::vector{check_power_identity(q, lambda, t, s, n, true)};
                        });
                    }
                }
                if (want_kernel1) {
                    add("cor2.3.3", p, [&q, lambda, t, s] {
                        return std::vector{check_kernel_inclusion(q, lambda, t, s, 1)};
                    });
                }
                if (want_range1) {
                    add("cor2.3.4", p, [&q, lambda, t, s] {
                        return std::vector{check_range_inclusion(q, lambda, t, s, 1)};
                    });
                }
                for (const int n : {2, 3}) {
                    ClaimParams pn = p;
                    pn.power = n;
                    if (want_kernel_n) {
                        add("cor2.3.5", pn, [&q, lambda, t, s, n] {
                            return std::vector{check_kernel_inclusion(q, lambda, t, s, n)};
                        });
                    }
                    if (want_range_n) {
                        add("cor2.3.6", pn, [&q, lambda, t, s, n] {
                            return std::vector{check_range_inclusion(q, lambda, t, s, n)};
                        });
                    }
                }
                if (want_hyper) {
                    add("cor2.3.7", p, [&q, lambda, t, s] {
                        return std::vector{check_range_inclusion(q, lambda, t, s, 1, true)};
                    });
                }
            }
    }

    const struct {
        const char* id;
        SpectrumKind kind;
    } spectral_claims[] = {
        {"thm2.4.1", SpectrumKind::Ordinary},  {"thm2.4.2", SpectrumKind::Point},
        {"thm2.4.3", SpectrumKind::Approximate}, {"thm2.4.4", SpectrumKind::Essential},
        {"thm2.4.5", SpectrumKind::Residual},
    };
    for (const auto& sc : spectral_claims) {
        if (!requested(sc.id)) continue;
        for (const double t : config.t_grid)
            for (const double s : config.s_grid) {
                add(sc.id, params_at(t, s), [&q, t, s, kind = sc.kind] {
                    return std::vector{check_spectral_inclusion(q, t, s, kind)};
                });
            }
    }
    if (requested("thm2.4.3.prop")) {
        for (const double t : config.t_grid)
            for (const double s : config.s_grid) {
                add("thm2.4.3.prop", params_at(t, s), [&q, t, s] {
                    std::vector<VerificationRecord> records;
                    const FiniteOperator gen = q.generator(t);
                    const SpectralSet spec = spectrum(gen, SpectrumKind::Ordinary);
                    for (const auto& pt : spec.points) {
                        for (const Complex lambda :
                             {pt.value, pt.value + Complex{1e-3, 0.0}}) {
                            const ApproxEigenpair pair = approx_eigenpair(gen, lambda);
                            records.push_back(check_approx_propagation(q, t, s, pair));
                        }
                    }
                    return records;
                });
            }
    }
    if (requested("thm2.5")) {
        for (const double t : config.t_grid)
            for (const double s : config.s_grid) {
                add("thm2.5", params_at(t, s), [&q, t, s, lambdas = lambdas_for(t)] {
                    RegularInclusionResult result = check_regular_inclusion(q, t, s, lambdas);
                    std::vector<VerificationRecord> records;
                    records.push_back(std::move(result.primary));
                    for (auto& d : result.diagnostics) records.push_back(std::move(d));
                    return records;
                });
            }
    }

    Report report;
    report.scenario_id = config.scenario_id;
    report.tool_version = kToolVersion;
    report.config_echo = normalized_config_json(config);

    for (auto& batch : run_tasks(tasks)) {
        for (auto& rec : batch) report.records.push_back(std::move(rec));
    }
    std::stable_sort(report.records.begin(), report.records.end(), record_order);

    for (const auto& rec : report.records) {
        switch (rec.verdict) {
            case Verdict::Pass: report.summary.pass += 1; break;
            case Verdict::Fail: report.summary.fail += 1; break;
            case Verdict::ReportOnly: report.summary.report_only += 1; break;
        }
    }

    if (config.pseudospectrum) {
        const double t0 = config.t_grid.front();
        const double s0 = config.s_grid.front();
        ReportPseudospectrum ps;
        ps.t = t0;
        ps.s = s0;
        ps.grid = pseudospectrum_grid(q.eval(t0, s0), config.pseudospectrum->re_lo,
                                      config.pseudospectrum->re_hi, config.pseudospectrum->im_lo,
                                      config.pseudospectrum->im_hi,
                                      config.pseudospectrum->resolution,
                                      config.pseudospectrum->resolution);
        report.pseudospectrum = std::move(ps);
    }

    const auto t_end = std::chrono::steady_clock::now();
    report.wall_time_ms =
        std::chrono::duration<double, std::milli>(t_end - t_start).count();
    return report;
}

// ---------------------------------------------------------------------------
// emission
// ---------------------------------------------------------------------------

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

std::string lambda_string(Complex v) {
    char buf[80];
    std::snprintf(buf, sizeof(buf), "%.6g%+.6gi", v.real(), v.imag());
    return buf;
}

json record_to_json(const VerificationRecord& rec) {
    json params;
    params["backend"] = rec.params.backend;
    params["t"] = rec.params.t;
    params["s"] = rec.params.s;
    if (rec.params.r) params["r"] = *rec.params.r;
    if (rec.params.lambda) params["lambda"] = {rec.params.lambda->real(), rec.params.lambda->imag()};
    if (rec.params.power) params["n"] = *rec.params.power;

    json j;
    j["claim"] = rec.claim_id;
    j["params"] = std::move(params);
    j["residual"] = rec.residual;
    if (rec.bound) {
        j["bound"] = *rec.bound;
    } else {
        j["bound"] = nullptr;
    }
    j["verdict"] = to_string(rec.verdict);
    j["note"] = rec.note;
    return j;
}

std::string pad(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

std::string emit_table(const Report& report, bool include_timing) {
    std::string out;
    out += pad("claim", 15) + pad("t", 8) + pad("s", 8) + pad("r", 8) + pad("lambda", 22) +
           pad("n", 4) + pad("residual", 14) + pad("bound", 14) + pad("verdict", 12) + "note\n";
    out.append(120, '-');
    out += "\n";
    for (const auto& rec : report.records) {
        out += pad(rec.claim_id, 15);
        out += pad(fmt("%.4g", rec.params.t), 8);
        out += pad(fmt("%.4g", rec.params.s), 8);
        out += pad(rec.params.r ? fmt("%.4g", *rec.params.r) : "-", 8);
        out += pad(rec.params.lambda ? lambda_string(*rec.params.lambda) : "-", 22);
        out += pad(rec.params.power ? std::to_string(*rec.params.power) : "-", 4);
        out += pad(fmt("%.5e", rec.residual), 14);
        out += pad(rec.bound ? fmt("%.5e", *rec.bound) : "-", 14);
        out += pad(to_string(rec.verdict), 12);
        out += rec.note;
        out += "\n";
    }
    out += "\nscenario " + report.scenario_id + " (" + report.tool_version + ")";
    out += "  pass=" + std::to_string(report.summary.pass);
    out += " fail=" + std::to_string(report.summary.fail);
    out += " report-only=" + std::to_string(report.summary.report_only);
    if (include_timing) out += "  wall_time_ms=" + fmt("%.1f", report.wall_time_ms);
    out += "\n";
    return out;
}

}  // namespace

std::string emit_report(const Report& report, ReportFormat format, bool include_timing) {
    if (format == ReportFormat::Table) return emit_table(report, include_timing);

    json j;
    j["scenario_id"] = report.scenario_id;
    j["tool_version"] = report.tool_version;
    j["config"] = json::parse(report.config_echo);
    json records = json::array();
    for (const auto& rec : report.records) records.push_back(record_to_json(rec));
    j["records"] = std::move(records);
    j["summary"] = {{"pass", report.summary.pass},
                    {"fail", report.summary.fail},
                    {"report_only", report.summary.report_only}};
    if (include_timing) j["wall_time_ms"] = report.wall_time_ms;
    if (report.pseudospectrum) {
        const auto& ps = *report.pseudospectrum;
        json rows = json::array();
        for (std::size_t i = 0; i < ps.grid.im_resolution; ++i) {
            json row = json::array();
            for (std::size_t jj = 0; jj < ps.grid.re_resolution; ++jj) {
                row.push_back(ps.grid.at(i, jj));
            }
            rows.push_back(std::move(row));
        }
        j["pseudospectrum"] = {{"t", ps.t},
                               {"s", ps.s},
                               {"re", {ps.grid.re_lo, ps.grid.re_hi}},
                               {"im", {ps.grid.im_lo, ps.grid.im_hi}},
                               {"resolution", {ps.grid.re_resolution, ps.grid.im_resolution}},
                               {"sigma_min", std::move(rows)}};
    }
    return j.dump(2) + "\n";
}

}  // namespace qsg
