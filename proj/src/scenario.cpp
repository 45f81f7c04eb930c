#include "cvbell/scenario.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "cvbell/rng.hpp"

namespace cvbell {

using nlohmann::json;

ScenarioKind parse_scenario_kind(const std::string& name) {
    if (name == "evaluate") return ScenarioKind::Evaluate;
    if (name == "sweep") return ScenarioKind::Sweep;
    if (name == "lhv-search") return ScenarioKind::LhvSearch;
    throw ConfigError("unknown scenario kind: '" + name + "'");
}

OutputFormat parse_output_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw ConfigError("unknown output format: '" + name + "' (expected csv or json)");
}

const char* scenario_kind_name(ScenarioKind kind) {
    switch (kind) {
        case ScenarioKind::Evaluate: return "evaluate";
        case ScenarioKind::Sweep: return "sweep";
        case ScenarioKind::LhvSearch: return "lhv-search";
    }
    return "?";
}

const char* output_format_name(OutputFormat format) {
    return format == OutputFormat::Csv ? "csv" : "json";
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

void expect_keys(const json& j, std::initializer_list<const char*> allowed,
                 const std::string& where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw ConfigError("unknown config key: " + where + "." + item.key());
        }
    }
}

double as_double(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError("field " + where + " must be a number");
    return j.get<double>();
}

int as_int(const json& j, const std::string& where) {
    if (!j.is_number_integer()) throw ConfigError("field " + where + " must be an integer");
    return j.get<int>();
}

std::string as_string(const json& j, const std::string& where) {
    if (!j.is_string()) throw ConfigError("field " + where + " must be a string");
    return j.get<std::string>();
}

std::vector<double> as_double_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError("field " + where + " must be an array");
    std::vector<double> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_double(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<int> as_int_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError("field " + where + " must be an array");
    std::vector<int> out;
    out.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_int(j[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

void apply_state_spec(StateSpec& state, const json& j) {
    expect_keys(j, {"family", "r", "amplitudes"}, "state");
    if (j.contains("family")) state.family = as_string(j["family"], "state.family");
    if (j.contains("r")) state.r = as_double(j["r"], "state.r");
    if (j.contains("amplitudes")) {
        const json& a = j["amplitudes"];
        if (!a.is_array()) throw ConfigError("field state.amplitudes must be an array");
        state.amplitudes.clear();
        for (std::size_t i = 0; i < a.size(); ++i) {
            const std::string where = "state.amplitudes[" + std::to_string(i) + "]";
            if (a[i].is_number()) {
                state.amplitudes.emplace_back(a[i].get<double>(), 0.0);
            } else if (a[i].is_array() && a[i].size() == 2) {
                state.amplitudes.emplace_back(as_double(a[i][0], where),
                                              as_double(a[i][1], where));
            } else {
                throw ConfigError("field " + where + " must be a number or [re, im] pair");
            }
        }
    }
}

void apply_lhv_spec(LhvSpec& lhv, const json& j) {
    expect_keys(j,
                {"mode", "variant", "budget", "amplitude_bound", "intensity_bound",
                 "sample_count", "sample_scale"},
                "lhv");
    if (j.contains("mode")) lhv.mode = as_string(j["mode"], "lhv.mode");
    if (j.contains("variant")) {
        try {
            lhv.variant = parse_variant(as_string(j["variant"], "lhv.variant"));
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    }
    if (j.contains("budget")) {
        if (!j["budget"].is_number_integer()) {
            throw ConfigError("field lhv.budget must be an integer");
        }
        lhv.budget = j["budget"].get<long>();
    }
    if (j.contains("amplitude_bound")) {
        lhv.bounds.amplitude = as_double(j["amplitude_bound"], "lhv.amplitude_bound");
    }
    if (j.contains("intensity_bound")) {
        lhv.bounds.intensity_max = as_double(j["intensity_bound"], "lhv.intensity_bound");
    }
    if (j.contains("sample_count")) {
        lhv.sample_count = as_int(j["sample_count"], "lhv.sample_count");
    }
    if (j.contains("sample_scale")) {
        lhv.sample_scale = as_double(j["sample_scale"], "lhv.sample_scale");
    }
}

void apply_config_json(ScenarioConfig& config, const json& j) {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    expect_keys(j,
                {"scenario", "scenario_id", "state", "dims", "order_k", "variants",
                 "grids", "seed", "output", "lhv"},
                "config");
    if (j.contains("scenario")) {
        config.kind = parse_scenario_kind(as_string(j["scenario"], "scenario"));
    }
    if (j.contains("scenario_id")) {
        config.scenario_id = as_string(j["scenario_id"], "scenario_id");
    }
    if (j.contains("state")) apply_state_spec(config.state, j["state"]);
    if (j.contains("dims")) config.dims = as_int_list(j["dims"], "dims");
    if (j.contains("order_k")) config.order_k = as_int(j["order_k"], "order_k");
    if (j.contains("variants")) {
        const json& v = j["variants"];
        if (!v.is_array()) throw ConfigError("field variants must be an array");
        config.variants.clear();
        for (std::size_t i = 0; i < v.size(); ++i) {
            try {
                config.variants.push_back(parse_variant(
                    as_string(v[i], "variants[" + std::to_string(i) + "]")));
            } catch (const std::invalid_argument& e) {
                throw ConfigError(e.what());
            }
        }
    }
    if (j.contains("grids")) {
        const json& g = j["grids"];
        expect_keys(g, {"r", "eta1", "eta2", "d", "k"}, "grids");
        if (g.contains("r")) config.r_grid = as_double_list(g["r"], "grids.r");
        if (g.contains("eta1")) config.eta1_grid = as_double_list(g["eta1"], "grids.eta1");
        if (g.contains("eta2")) config.eta2_grid = as_double_list(g["eta2"], "grids.eta2");
        if (g.contains("d")) config.d_grid = as_int_list(g["d"], "grids.d");
        if (g.contains("k")) config.k_grid = as_int_list(g["k"], "grids.k");
    }
    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned()) {
            throw ConfigError("field seed must be a non-negative integer");
        }
        config.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("output")) {
        const json& o = j["output"];
        expect_keys(o, {"path", "format"}, "output");
        if (o.contains("path")) config.out_path = as_string(o["path"], "output.path");
        if (o.contains("format")) {
            config.format = parse_output_format(as_string(o["format"], "output.format"));
        }
    }
    if (j.contains("lhv")) apply_lhv_spec(config.lhv, j["lhv"]);
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& json_text, ScenarioConfig base) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    apply_config_json(base, j);
    return base;
}

ScenarioConfig load_config_file(const std::string& path, ScenarioConfig base) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), std::move(base));
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

std::vector<std::string> preset_names() {
    return {"vacuum",   "single-photon",       "fock11",
            "tmsv",     "cs-model",            "constrained-sampler",
            "constrained-search", "unconstrained-search"};
}

ScenarioConfig preset_config(const std::string& name) {
    ScenarioConfig c;
    c.scenario_id = name;
    if (name == "vacuum") {
        c.kind = ScenarioKind::Evaluate;
        c.state.family = "vacuum";
        c.dims = std::vector<int>{2, 2};
    } else if (name == "single-photon") {
        c.kind = ScenarioKind::Evaluate;
        c.state.family = "single-photon";
        c.dims = std::vector<int>{2, 2};
        const std::vector<double> etas{0.1, 0.3, 0.5, 0.7, 0.9, 1.0};
        c.eta1_grid = etas;
        c.eta2_grid = etas;
    } else if (name == "fock11") {
        c.kind = ScenarioKind::Evaluate;
        c.state.family = "fock11";
        c.dims = std::vector<int>{2, 2};
    } else if (name == "tmsv") {
        c.kind = ScenarioKind::Sweep;
        c.state.family = "tmsv";
        c.state.r = 0.5;
        c.dims = std::vector<int>{20, 20};
        c.r_grid = std::vector<double>{0.0, 0.25, 0.5};
    } else if (name == "cs-model") {
        c.kind = ScenarioKind::LhvSearch;
        c.lhv.mode = "cs-model";
    } else if (name == "constrained-sampler") {
        c.kind = ScenarioKind::LhvSearch;
        c.lhv.mode = "sample";
        c.lhv.sample_count = 1000;
        c.lhv.sample_scale = 1.0;
        c.seed = 7;
    } else if (name == "constrained-search") {
        c.kind = ScenarioKind::LhvSearch;
        c.lhv.mode = "constrained-search";
        c.lhv.budget = 100000;
        c.seed = 1;
    } else if (name == "unconstrained-search") {
        c.kind = ScenarioKind::LhvSearch;
        c.lhv.mode = "unconstrained-search";
        c.lhv.budget = 100000;
        c.seed = 1;
    } else {
        throw ConfigError("unknown preset: '" + name + "'");
    }
    return c;
}

// ---------------------------------------------------------------------------
// Row serialization
// ---------------------------------------------------------------------------

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

constexpr int kSchemaVersion = 1;

}  // namespace

const std::string& result_csv_header() {
    static const std::string header =
        "scenario,r,eta1,eta2,d,k,lhs,rhs_r1,rhs_r3,rhs_r4,"
        "margin_r1,margin_r3,margin_r4,viol_r1,viol_r3,viol_r4,"
        "pt_min_eig,trunc_loss";
    return header;
}

std::string to_csv_line(const ResultRow& row) {
    std::ostringstream out;
    out << row.scenario << ',' << format_double(row.r) << ',' << format_double(row.eta1)
        << ',' << format_double(row.eta2) << ',' << row.d << ',' << row.k << ','
        << format_double(row.lhs) << ',' << format_double(row.rhs_r1) << ','
        << format_double(row.rhs_r3) << ',' << format_double(row.rhs_r4) << ','
        << format_double(row.margin_r1) << ',' << format_double(row.margin_r3) << ','
        << format_double(row.margin_r4) << ',' << (row.viol_r1 ? 1 : 0) << ','
        << (row.viol_r3 ? 1 : 0) << ',' << (row.viol_r4 ? 1 : 0) << ','
        << format_double(row.pt_min_eig) << ',' << format_double(row.trunc_loss);
    return out.str();
}

std::string rows_to_csv(std::span<const ResultRow> rows) {
    std::string out = result_csv_header() + "\n";
    for (const ResultRow& row : rows) {
        out += to_csv_line(row);
        out += '\n';
    }
    return out;
}

namespace {

json row_to_json(const ResultRow& row) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["scenario"] = row.scenario;
    j["r"] = row.r;
    j["eta1"] = row.eta1;
    j["eta2"] = row.eta2;
    j["d"] = row.d;
    j["k"] = row.k;
    j["lhs"] = row.lhs;
    j["rhs_r1"] = row.rhs_r1;
    j["rhs_r3"] = row.rhs_r3;
    j["rhs_r4"] = row.rhs_r4;
    j["margin_r1"] = row.margin_r1;
    j["margin_r3"] = row.margin_r3;
    j["margin_r4"] = row.margin_r4;
    j["viol_r1"] = row.viol_r1;
    j["viol_r3"] = row.viol_r3;
    j["viol_r4"] = row.viol_r4;
    j["pt_min_eig"] = row.pt_min_eig;
    j["trunc_loss"] = row.trunc_loss;
    return j;
}

}  // namespace

std::string rows_to_json(std::span<const ResultRow> rows) {
    json arr = json::array();
    for (const ResultRow& row : rows) arr.push_back(row_to_json(row));
    return arr.dump(2) + "\n";
}

std::vector<ResultRow> rows_from_json(const std::string& json_text) {
    json arr;
    try {
        arr = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw IoError(std::string("report is not valid JSON: ") + e.what());
    }
    if (!arr.is_array()) throw IoError("report root must be a JSON array");
    std::vector<ResultRow> rows;
    rows.reserve(arr.size());
    for (const json& j : arr) {
        if (j.value("schema_version", 0) != kSchemaVersion) {
            throw IoError("unsupported report schema_version");
        }
        ResultRow row;
        row.scenario = j.at("scenario").get<std::string>();
        row.r = j.at("r").get<double>();
        row.eta1 = j.at("eta1").get<double>();
        row.eta2 = j.at("eta2").get<double>();
        row.d = j.at("d").get<int>();
        row.k = j.at("k").get<int>();
        row.lhs = j.at("lhs").get<double>();
        row.rhs_r1 = j.at("rhs_r1").get<double>();
        row.rhs_r3 = j.at("rhs_r3").get<double>();
        row.rhs_r4 = j.at("rhs_r4").get<double>();
        row.margin_r1 = j.at("margin_r1").get<double>();
        row.margin_r3 = j.at("margin_r3").get<double>();
        row.margin_r4 = j.at("margin_r4").get<double>();
        row.viol_r1 = j.at("viol_r1").get<bool>();
        row.viol_r3 = j.at("viol_r3").get<bool>();
        row.viol_r4 = j.at("viol_r4").get<bool>();
        row.pt_min_eig = j.at("pt_min_eig").get<double>();
        row.trunc_loss = j.at("trunc_loss").get<double>();
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Runners
// ---------------------------------------------------------------------------

namespace {

void require_field(bool present, const char* field) {
    if (!present) throw ConfigError(std::string("missing required field: ") + field);
}

void validate_dims(const std::vector<int>& dims, int order_k) {
    if (dims.size() != 2) {
        throw ConfigError("dims must list exactly two mode dimensions");
    }
    for (int d : dims) {
        if (d < 1) throw ConfigError("dims entries must be >= 1");
        if (order_k == 1 && d < 2) {
            throw ConfigError("dims must be >= 2 per mode for order_k = 1");
        }
    }
}

QuantumState build_state(const StateSpec& spec, const ModeSystem& system) {
    const int d2 = system.dim(1);
    auto basis_index = [&](int n1, int n2) { return n1 * d2 + n2; };
    auto require_level = [&](int level) {
        if (system.dim(0) <= level || system.dim(1) <= level) {
            throw ConfigError("state family '" + spec.family +
                              "' needs at least " + std::to_string(level + 1) +
                              " Fock levels per mode");
        }
    };
    if (spec.family == "vacuum") {
        CVector amps = CVector::Zero(system.total_dim());
        amps(0) = 1.0;
        return QuantumState::pure(system, amps);
    }
    if (spec.family == "single-photon") {
        require_level(1);
        CVector amps = CVector::Zero(system.total_dim());
        amps(basis_index(0, 1)) = 1.0;
        amps(basis_index(1, 0)) = 1.0;
        return QuantumState::pure(system, amps);
    }
    if (spec.family == "fock11") {
        require_level(1);
        CVector amps = CVector::Zero(system.total_dim());
        amps(basis_index(1, 1)) = 1.0;
        return QuantumState::pure(system, amps);
    }
    if (spec.family == "tmsv") {
        return tmsv_state(system, spec.r);
    }
    if (spec.family == "custom") {
        if (static_cast<int>(spec.amplitudes.size()) != system.total_dim()) {
            throw ConfigError("state.amplitudes must have dims[0]*dims[1] entries");
        }
        CVector amps(system.total_dim());
        for (int i = 0; i < system.total_dim(); ++i) {
            amps(i) = spec.amplitudes[static_cast<std::size_t>(i)];
        }
        return QuantumState::pure(system, amps);
    }
    throw ConfigError("unknown state family: '" + spec.family + "'");
}

struct GridPoint {
    double r = 0.0;
    double eta1 = 1.0;
    double eta2 = 1.0;
    std::vector<int> dims;
    int k = 1;
};

struct EvaluatedPoint {
    ResultRow row;
    InequalityReport report;
};

EvaluatedPoint evaluate_point(const ScenarioConfig& config, const GridPoint& point) {
    validate_dims(point.dims, point.k);
    ModeSystem system(point.dims);
    StateSpec spec = config.state;
    spec.r = point.r;
    QuantumState state = build_state(spec, system);
    state = apply_loss(state, 0, point.eta1);
    state = apply_loss(state, 1, point.eta2);

    const InequalityReport report = evaluate(state, point.k, config.variants,
                                             config.scenario_id);
    ResultRow row;
    row.scenario = config.scenario_id;
    row.r = (config.state.family == "tmsv") ? point.r : 0.0;
    row.eta1 = point.eta1;
    row.eta2 = point.eta2;
    row.d = point.dims[0];
    row.k = point.k;
    row.lhs = report.lhs;
    row.rhs_r1 = report.rhs_of(Variant::R1);
    row.rhs_r3 = report.rhs_of(Variant::R3);
    row.rhs_r4 = report.rhs_of(Variant::R4);
    row.margin_r1 = report.margin_of(Variant::R1);
    row.margin_r3 = report.margin_of(Variant::R3);
    row.margin_r4 = report.margin_of(Variant::R4);
    row.viol_r1 = report.violated_of(Variant::R1);
    row.viol_r3 = report.violated_of(Variant::R3);
    row.viol_r4 = report.violated_of(Variant::R4);
    row.pt_min_eig = partial_transpose_min_eig(state, 1);
    row.trunc_loss = state.truncation_loss();
    return EvaluatedPoint{std::move(row), report};
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output path: " + path);
    out << content;
    out.flush();
    if (!out) throw IoError("failed while writing output path: " + path);
}

void write_rows(const ScenarioConfig& config, std::span<const ResultRow> rows) {
    write_text_file(config.out_path, config.format == OutputFormat::Csv
                                         ? rows_to_csv(rows)
                                         : rows_to_json(rows));
}

void summarize_point(const EvaluatedPoint& point, const ScenarioConfig& config,
                     std::ostream& out) {
    const ResultRow& row = point.row;
    out << "scenario " << row.scenario << " (d=" << row.d << ", k=" << row.k
        << ", eta1=" << row.eta1 << ", eta2=" << row.eta2 << ")\n";
    out << "  lhs        = " << format_double(row.lhs) << "\n";
    for (Variant v : config.variants) {
        out << "  rhs_" << variant_name(v) << "     = "
            << format_double(point.report.rhs_of(v))
            << "  margin = " << format_double(point.report.margin_of(v))
            << (point.report.violated_of(v) ? "  VIOLATED" : "  satisfied") << "\n";
    }
    out << "  pt_min_eig = " << format_double(row.pt_min_eig)
        << (row.pt_min_eig < -1e-12 ? "  (NPT entangled)" : "") << "\n";
    out << "  trunc_loss = " << format_double(row.trunc_loss) << "\n";
}

std::vector<GridPoint> sweep_points(const ScenarioConfig& config) {
    auto nonempty = [](const auto& grid, const char* name) {
        if (grid.empty()) {
            throw ConfigError(std::string("grid '") + name + "' must be nonempty");
        }
    };
    std::vector<double> r_axis{config.state.r};
    if (config.r_grid) {
        nonempty(*config.r_grid, "r");
        r_axis = *config.r_grid;
    }
    std::vector<double> eta1_axis{1.0};
    if (config.eta1_grid) {
        nonempty(*config.eta1_grid, "eta1");
        eta1_axis = *config.eta1_grid;
    }
    std::vector<double> eta2_axis{1.0};
    if (config.eta2_grid) {
        nonempty(*config.eta2_grid, "eta2");
        eta2_axis = *config.eta2_grid;
    }
    std::vector<std::vector<int>> dims_axis{config.dims};
    if (config.d_grid) {
        nonempty(*config.d_grid, "d");
        dims_axis.clear();
        for (int d : *config.d_grid) dims_axis.push_back(std::vector<int>{d, d});
    }
    std::vector<int> k_axis{config.order_k};
    if (config.k_grid) {
        nonempty(*config.k_grid, "k");
        k_axis = *config.k_grid;
    }

    std::vector<GridPoint> points;
    points.reserve(r_axis.size() * eta1_axis.size() * eta2_axis.size() *
                   dims_axis.size() * k_axis.size());
    for (double r : r_axis)
        for (double eta1 : eta1_axis)
            for (double eta2 : eta2_axis)
                for (const auto& dims : dims_axis)
                    for (int k : k_axis) {
                        points.push_back(GridPoint{r, eta1, eta2, dims, k});
                    }
    return points;
}

// Evaluate all points on a small worker pool; output order stays the grid
// order regardless of scheduling.
std::vector<ResultRow> evaluate_points(const ScenarioConfig& config,
                                       const std::vector<GridPoint>& points) {
    std::vector<ResultRow> rows(points.size());
    const unsigned hw = std::max(2u, std::thread::hardware_concurrency());
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(hw, points.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            rows[i] = evaluate_point(config, points[i]).row;
        }
        return rows;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= points.size()) break;
                    rows[i] = evaluate_point(config, points[i]).row;
                }
            } catch (...) {
                failures[w] = std::current_exception();
                next.store(points.size());
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& failure : failures) {
        if (failure) std::rethrow_exception(failure);
    }
    return rows;
}

void validate_common(const ScenarioConfig& config) {
    require_field(!config.out_path.empty(), "output.path");
    require_field(!config.dims.empty(), "dims");
    if (config.order_k < 1) throw ConfigError("order_k must be >= 1");
}

}  // namespace

void run_evaluate(const ScenarioConfig& config, std::ostream& summary) {
    validate_common(config);
    validate_dims(config.dims, config.order_k);
    GridPoint point;
    point.r = config.state.r;
    point.dims = config.dims;
    point.k = config.order_k;
    const EvaluatedPoint result = evaluate_point(config, point);
    write_rows(config, std::span<const ResultRow>(&result.row, 1));
    summarize_point(result, config, summary);
    summary << "wrote 1 row to " << config.out_path << "\n";
}

void run_sweep(const ScenarioConfig& config, std::ostream& summary) {
    validate_common(config);
    const std::vector<GridPoint> points = sweep_points(config);
    const std::vector<ResultRow> rows = evaluate_points(config, points);
    write_rows(config, rows);
    std::size_t viol = 0;
    for (const ResultRow& row : rows) viol += row.viol_r1 ? 1 : 0;
    summary << "scenario " << config.scenario_id << ": swept " << rows.size()
            << " points, R1 violated on " << viol << "\n";
    summary << "wrote " << rows.size() << " rows to " << config.out_path << "\n";
}

namespace {

json ensemble_to_json(const LhvEnsemble& ensemble) {
    json arr = json::array();
    for (const auto& wp : ensemble.points()) {
        json p;
        p["weight"] = wp.weight;
        p["x1"] = wp.point.x1;
        p["y1"] = wp.point.y1;
        p["n1"] = wp.point.n1;
        p["x2"] = wp.point.x2;
        p["y2"] = wp.point.y2;
        p["n2"] = wp.point.n2;
        arr.push_back(std::move(p));
    }
    return arr;
}

}  // namespace

void run_lhv(const ScenarioConfig& config, std::ostream& summary) {
    require_field(!config.out_path.empty(), "output.path");
    const LhvSpec& lhv = config.lhv;
    const std::string& mode = lhv.mode;

    LhvEnsemble ensemble = cs_counter_model();
    long evaluations = 1;
    long budget = 0;
    std::uint64_t seed = config.seed.value_or(0);

    if (mode == "constrained-search" || mode == "unconstrained-search") {
        require_field(config.seed.has_value(), "seed");
        budget = lhv.budget;
        const SearchOutcome outcome =
            adversarial_search(mode == "constrained-search", lhv.variant, lhv.budget,
                               lhv.bounds, *config.seed);
        ensemble = outcome.best_ensemble;
        evaluations = outcome.evaluations_used;
    } else if (mode == "sample") {
        require_field(config.seed.has_value(), "seed");
        ensemble = sample_constrained(lhv.sample_count, *config.seed, lhv.sample_scale);
    } else if (mode == "cs-model") {
        // fixed ensemble, nothing to draw
    } else {
        throw ConfigError("unknown lhv.mode: '" + mode + "'");
    }

    const CorrelatorSet cs = ensemble_correlators(ensemble);
    const double lhs = wave_lhs(cs);
    const double rhs = rhs_value(cs, lhv.variant);
    const EnsembleConstraintReport constraint = ensemble_level_constraint_test(ensemble);

    json report;
    report["schema_version"] = kSchemaVersion;
    report["scenario"] = config.scenario_id;
    report["mode"] = mode;
    report["variant"] = variant_name(lhv.variant);
    report["seed"] = seed;
    report["budget"] = budget;
    report["evaluations_used"] = evaluations;
    report["best_score"] = lhs - rhs;
    report["lhs"] = lhs;
    report["rhs"] = rhs;
    report["constraint"] = {
        {"mean_residual_site1", constraint.mean_residual_site1},
        {"mean_residual_site2", constraint.mean_residual_site2},
        {"mean_residual", constraint.mean_residual},
        {"max_residual", constraint.max_residual},
        {"pass", constraint.pass},
    };
    report["ensemble"] = ensemble_to_json(ensemble);
    write_text_file(config.out_path, report.dump(2) + "\n");

    summary << "scenario " << config.scenario_id << " (" << mode << ", "
            << variant_name(lhv.variant) << ")\n";
    summary << "  best_score (lhs - rhs) = " << format_double(lhs - rhs) << "\n";
    summary << "  constraint max residual = " << format_double(constraint.max_residual)
            << (constraint.pass ? "  (ensemble-level test PASS)"
                                : "  (ensemble-level test FAIL)")
            << "\n";
    summary << "  evaluations_used = " << evaluations << "\n";
    summary << "wrote report to " << config.out_path << "\n";
}

void run_scenario(const ScenarioConfig& config, std::ostream& summary) {
    require_field(config.kind.has_value(), "scenario");
    switch (*config.kind) {
        case ScenarioKind::Evaluate: run_evaluate(config, summary); return;
        case ScenarioKind::Sweep: run_sweep(config, summary); return;
        case ScenarioKind::LhvSearch: run_lhv(config, summary); return;
    }
    throw ConfigError("unknown scenario kind");
}

}  // namespace cvbell
