#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvbell/lhv.hpp"

namespace cvbell {

// Configuration problems: unknown keys taking precedence, missing required
// fields, empty grids. Always maps to a nonzero process exit.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Filesystem problems while reading configs or writing reports.
class IoError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ScenarioKind { Evaluate, Sweep, LhvSearch };
enum class OutputFormat { Csv, Json };

ScenarioKind parse_scenario_kind(const std::string& name);
OutputFormat parse_output_format(const std::string& name);
const char* scenario_kind_name(ScenarioKind kind);
const char* output_format_name(OutputFormat format);

// State family under evaluation. Families: vacuum, single-photon
// ((|01>+|10>)/sqrt2), fock11 (|11>), tmsv (squeezing r), custom
// (explicit amplitude list on the configured dims).
struct StateSpec {
    std::string family = "vacuum";
    double r = 0.5;
    std::vector<Complex> amplitudes;
};

struct LhvSpec {
    // constrained-search | unconstrained-search | cs-model | sample
    std::string mode = "constrained-search";
    Variant variant = Variant::R1;
    long budget = 100000;
    SearchBounds bounds;
    int sample_count = 1000;
    double sample_scale = 1.0;
};

// One scenario: what to evaluate, over which grids, and where the report
// goes. Defaults follow the documented config schema; a JSON config file
// and then command-line flags override them in that order.
struct ScenarioConfig {
    std::optional<ScenarioKind> kind;
    std::string scenario_id = "custom";
    StateSpec state;
    std::vector<int> dims;  // required for quantum scenarios
    int order_k = 1;
    std::vector<Variant> variants{Variant::R1, Variant::R3, Variant::R4};
    // Sweep axes; an unset axis collapses to the singleton of the base value.
    std::optional<std::vector<double>> r_grid;
    std::optional<std::vector<double>> eta1_grid;
    std::optional<std::vector<double>> eta2_grid;
    std::optional<std::vector<int>> d_grid;
    std::optional<std::vector<int>> k_grid;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    OutputFormat format = OutputFormat::Csv;
    LhvSpec lhv;
};

// Built-in scenarios covering the standard states and LHV runs; see
// preset_names() for the list.
ScenarioConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

// Overlay the JSON text / file onto `base`. Unknown keys are rejected.
ScenarioConfig parse_config_text(const std::string& json_text,
                                 ScenarioConfig base = {});
ScenarioConfig load_config_file(const std::string& path,
                                ScenarioConfig base = {});

// One evaluated grid point, flattened to the stable report schema.
struct ResultRow {
    std::string scenario;
    double r = 0.0;
    double eta1 = 1.0;
    double eta2 = 1.0;
    int d = 0;
    int k = 1;
    double lhs = 0.0;
    double rhs_r1 = 0.0;
    double rhs_r3 = 0.0;
    double rhs_r4 = 0.0;
    double margin_r1 = 0.0;
    double margin_r3 = 0.0;
    double margin_r4 = 0.0;
    bool viol_r1 = false;
    bool viol_r3 = false;
    bool viol_r4 = false;
    double pt_min_eig = 0.0;
    double trunc_loss = 0.0;
};

// Fixed column order; the CSV header row is the schema documentation.
const std::string& result_csv_header();
// Numeric fields at 12 significant digits, flags as 0/1.
std::string to_csv_line(const ResultRow& row);
std::string rows_to_csv(std::span<const ResultRow> rows);
// JSON array of row objects; field names match the CSV columns, plus a
// schema_version marker on every row. Values round-trip exactly.
std::string rows_to_json(std::span<const ResultRow> rows);
std::vector<ResultRow> rows_from_json(const std::string& json_text);

// Scenario runners. Write the report file, print a human-readable summary
// to `summary`, and throw ConfigError/IoError on invalid configs or
// unwritable paths. Violations are data, never errors.
void run_evaluate(const ScenarioConfig& config, std::ostream& summary);
void run_sweep(const ScenarioConfig& config, std::ostream& summary);
void run_lhv(const ScenarioConfig& config, std::ostream& summary);
// Dispatch on config.kind.
void run_scenario(const ScenarioConfig& config, std::ostream& summary);

}  // namespace cvbell
