#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsg/quasi_semigroup.hpp"
#include "qsg/spectra.hpp"
#include "qsg/tolerance.hpp"
#include "qsg/verifier.hpp"

namespace qsg {

// Backend selector: either a catalog bundle by name, or an explicit
// description (kind + matrix + named scale / generator family).
struct BackendSpec {
    std::string catalog;  // nonempty selects a catalog bundle

    std::string kind;                // "constant" | "scaled" | "evolution"
    std::optional<CMatrix> matrix;   // constant / scaled
    std::string scale;               // scaled: named scalar map
    std::string generator_fun;       // evolution: named generator family
    std::optional<double> step;      // evolution step hint
    std::optional<std::size_t> dim;  // random-* bundles
};

struct PseudospectrumRequest {
    double re_lo = 0.0, re_hi = 0.0;
    double im_lo = 0.0, im_hi = 0.0;
    std::size_t resolution = 2;  // per axis
};

struct ScenarioConfig {
    std::string scenario_id;
    BackendSpec backend;
    std::vector<double> t_grid;
    std::vector<double> s_grid;
    std::vector<double> r_grid;
    std::optional<std::vector<Complex>> lambdas;  // disengaged = auto sampling
    std::vector<std::string> claims;              // resolved list ("all" expands)
    ToleranceContext tolerances;
    std::uint64_t seed = 1;
    std::optional<PseudospectrumRequest> pseudospectrum;
};

struct ReportSummary {
    int pass = 0;
    int fail = 0;
    int report_only = 0;
};

struct ReportPseudospectrum {
    double t = 0.0, s = 0.0;  // grid point whose R(t, s) is portrayed
    PseudospectrumGrid grid;
};

struct Report {
    std::string scenario_id;
    std::string tool_version;
    std::string config_echo;  // normalized config as canonical JSON text
    std::vector<VerificationRecord> records;
    ReportSummary summary;
    double wall_time_ms = 0.0;
    std::optional<ReportPseudospectrum> pseudospectrum;
};

enum class ReportFormat { Json, Table };

// Requestable claim identifiers, sorted. "thm2.5" also emits derived
// "thm2.5.diag" records.
const std::vector<std::string>& claim_registry();

// Parse and validate a JSON configuration document. Unknown keys, malformed
// values and unknown claim ids raise ConfigError naming the field; unknown
// catalog names raise CatalogError.
ScenarioConfig parse_scenario_config(const std::string& json_text);

// Instantiate the configured backend.
QuasiSemigroup build_backend(const BackendSpec& spec, const ToleranceContext& tol,
                             std::uint64_t seed);

// Run every requested claim over the grid. Deterministic in (config, seed):
// records are computed independently (QSG_THREADS caps the worker count) and
// assembled in a fixed order. Per-record failures surface as FAIL records
// carrying the error message.
Report run_scenario(const ScenarioConfig& config);

// Deterministic UTF-8 emission. JSON has sorted keys and shortest
// round-trip floats. Wall time is volatile, so it is only included on
// request; everything else is byte-identical across runs.
std::string emit_report(const Report& report, ReportFormat format, bool include_timing = false);

}  // namespace qsg
