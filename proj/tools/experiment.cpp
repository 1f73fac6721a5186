#include "presliding/experiment.hpp"

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "presliding/csv.hpp"
#include "presliding/errors.hpp"
#include "presliding/sweep.hpp"

namespace presliding::experiment {

namespace {

using nlohmann::json;

constexpr std::array<std::pair<Kind, std::string_view>, 8> kKinds{{
    {Kind::Simulate, "simulate"},
    {Kind::Chain, "chain"},
    {Kind::Fig3, "fig3"},
    {Kind::Fig4, "fig4"},
    {Kind::Fig5, "fig5"},
    {Kind::Fig6, "fig6"},
    {Kind::Fig7, "fig7"},
    {Kind::Validate, "validate"},
}};

std::string join_path(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

// ---------------------------------------------------------------- reading

void check_keys(const YAML::Node& node, const std::string& path, std::set<std::string> allowed) {
    if (!node.IsDefined() || node.IsNull()) {
        return;
    }
    if (!node.IsMap()) {
        throw ConfigError(path.empty() ? "<document>" : path, "expected a mapping");
    }
    for (const auto& kv : node) {
        const auto key = kv.first.as<std::string>();
        if (!allowed.contains(key)) {
            throw ConfigError(join_path(path, key), "unknown key");
        }
    }
}

bool present(const YAML::Node& node, const char* key) {
    if (!node.IsDefined() || node.IsNull()) {
        return false;
    }
    const YAML::Node child = node[key];
    return child.IsDefined() && !child.IsNull();
}

double read_number(const YAML::Node& node, const char* key, const std::string& path, double fallback) {
    if (!present(node, key)) {
        return fallback;
    }
    const std::string field = join_path(path, key);
    const YAML::Node child = node[key];
    if (!child.IsScalar()) {
        throw ConfigError(field, "expected a number");
    }
    double value = 0.0;
    try {
        value = child.as<double>();
    } catch (const YAML::Exception&) {
        throw ConfigError(field, "expected a number, got '" + child.Scalar() + "'");
    }
    if (!std::isfinite(value)) {
        throw ConfigError(field, "must be finite");
    }
    return value;
}

int read_int(const YAML::Node& node, const char* key, const std::string& path, int fallback) {
    if (!present(node, key)) {
        return fallback;
    }
    const std::string field = join_path(path, key);
    const YAML::Node child = node[key];
    try {
        return child.as<int>();
    } catch (const YAML::Exception&) {
        throw ConfigError(field, "expected an integer");
    }
}

bool read_bool(const YAML::Node& node, const char* key, const std::string& path, bool fallback) {
    if (!present(node, key)) {
        return fallback;
    }
    try {
        return node[key].as<bool>();
    } catch (const YAML::Exception&) {
        throw ConfigError(join_path(path, key), "expected true or false");
    }
}

std::string read_string(const YAML::Node& node, const char* key, const std::string& path,
                        const std::string& fallback) {
    if (!present(node, key)) {
        return fallback;
    }
    const YAML::Node child = node[key];
    if (!child.IsScalar()) {
        throw ConfigError(join_path(path, key), "expected a string");
    }
    return child.Scalar();
}

void require(bool ok, const std::string& field, const std::string& message) {
    if (!ok) {
        throw ConfigError(field, message);
    }
}

// -------------------------------------------------------------- overrides

std::vector<std::string> split_path(const std::string& path) {
    std::vector<std::string> keys;
    std::string current;
    for (char c : path) {
        if (c == '.') {
            keys.push_back(current);
            current.clear();
        } else {
            current += c;
        }
    }
    keys.push_back(current);
    for (const auto& k : keys) {
        if (k.empty()) {
            throw ConfigError(path, "malformed override key");
        }
    }
    return keys;
}

void set_path(YAML::Node node, std::span<const std::string> keys, const YAML::Node& value,
              const std::string& prefix) {
    const std::string field = join_path(prefix, keys.front());
    if (keys.size() == 1) {
        node[keys.front()] = value;
        return;
    }
    if (!node[keys.front()] || node[keys.front()].IsNull()) {
        node[keys.front()] = YAML::Node(YAML::NodeType::Map);
    } else if (!node[keys.front()].IsMap()) {
        throw ConfigError(field, "is not a mapping; cannot override a sub-key");
    }
    set_path(node[keys.front()], keys.subspan(1), value, field);
}

// ----------------------------------------------------------- kind defaults

std::vector<double> default_sweep(Kind kind) {
    switch (kind) {
        case Kind::Fig3:
            return {1.0, 10.0, 100.0, 1000.0};
        case Kind::Fig4:
            return {1.0, 2.0, 8.0};
        case Kind::Fig5:
            return {1.0, 1.5, 2.0};
        case Kind::Fig6:
        case Kind::Fig7:
            return {10.0, 100.0, 1000.0};
        default:
            return {};
    }
}

bool uses_sweep(Kind kind) { return !default_sweep(kind).empty(); }

bool needs_unit_shape(Kind kind) { return kind != Kind::Simulate && kind != Kind::Fig7; }

FrictionParams read_params(const YAML::Node& doc, Kind kind) {
    const YAML::Node node = doc["params"];
    check_keys(node, "params", {"f_c", "sigma", "gamma", "mass"});
    FrictionParams p;
    p.f_c = read_number(node, "f_c", "params", 1.0);
    p.sigma = read_number(node, "sigma", "params", kind == Kind::Fig5 ? 10.0 : 1.0);
    p.gamma = read_number(node, "gamma", "params", 1.0);
    p.mass = read_number(node, "mass", "params", 1.0);
    require(p.f_c > 0.0, "params.f_c", "must be > 0");
    require(p.sigma > 0.0, "params.sigma", "must be > 0");
    require(p.gamma >= 0.0, "params.gamma", "must be >= 0");
    require(p.mass > 0.0, "params.mass", "must be > 0");
    if (needs_unit_shape(kind)) {
        require(p.gamma == 1.0, "params.gamma",
                "must be 1 for kind " + std::string(kind_name(kind)) + " (closed forms need gamma = 1)");
    }
    return p;
}

std::vector<double> read_sweep(const YAML::Node& doc, Kind kind) {
    const YAML::Node node = doc["sweep"];
    if (!node.IsDefined() || node.IsNull()) {
        return default_sweep(kind);
    }
    require(uses_sweep(kind), "sweep", "not used by kind " + std::string(kind_name(kind)));
    require(node.IsSequence(), "sweep", "expected a list of numbers");
    require(node.size() > 0, "sweep", "must not be empty");
    std::vector<double> values;
    for (std::size_t i = 0; i < node.size(); ++i) {
        const std::string field = "sweep[" + std::to_string(i) + "]";
        double v = 0.0;
        try {
            v = node[i].as<double>();
        } catch (const YAML::Exception&) {
            throw ConfigError(field, "expected a number");
        }
        require(std::isfinite(v) && v > 0.0, field, "must be a finite number > 0");
        values.push_back(v);
    }
    return values;
}

SimConfig read_sim(const YAML::Node& doc, Kind kind, const FrictionParams& params) {
    const YAML::Node node = doc["sim"];
    check_keys(node, "sim",
               {"x0", "v0", "f0", "dt", "t_max", "max_reversals", "stop_energy", "model", "spring"});
    SimConfig sim;
    sim.params = params;
    sim.x0 = read_number(node, "x0", "sim", sim.x0);
    sim.v0 = read_number(node, "v0", "sim", sim.v0);
    sim.f0 = read_number(node, "f0", "sim", sim.f0);
    sim.dt = read_number(node, "dt", "sim", sim.dt);
    sim.t_max = read_number(node, "t_max", "sim", sim.t_max);
    sim.max_reversals = read_int(node, "max_reversals", "sim", kind == Kind::Fig7 ? 20 : sim.max_reversals);
    sim.stop_energy = read_number(node, "stop_energy", "sim", sim.stop_energy);

    const std::string model = read_string(node, "model", "sim", "dahl");
    if (model == "dahl") {
        sim.model = ForceModel::Dahl;
    } else if (model == "stop_spring") {
        require(kind == Kind::Simulate, "sim.model", "stop_spring is only available for kind simulate");
        sim.model = ForceModel::StopSpring;
    } else {
        throw ConfigError("sim.model", "expected 'dahl' or 'stop_spring', got '" + model + "'");
    }
    const YAML::Node spring = present(node, "spring") ? node["spring"] : YAML::Node();
    check_keys(spring, "sim.spring", {"k", "f_c"});
    sim.spring.k = read_number(spring, "k", "sim.spring", 1.0);
    sim.spring.f_c = read_number(spring, "f_c", "sim.spring", params.f_c);

    require(sim.v0 != 0.0, "sim.v0", "must be nonzero");
    require(sim.dt >= 0.0, "sim.dt", "must be > 0 (or 0 for the default step)");
    require(sim.t_max > 0.0, "sim.t_max", "must be > 0");
    require(sim.max_reversals >= 1, "sim.max_reversals", "must be >= 1");
    if (sim.model == ForceModel::StopSpring) {
        require(sim.spring.k > 0.0, "sim.spring.k", "must be > 0");
        require(sim.spring.f_c > 0.0, "sim.spring.f_c", "must be > 0");
    }
    require(std::abs(sim.f0) <= sim.force_bound(), "sim.f0", "must not exceed the force bound");
    require(sim.f0 * sim.v0 <= 0.0, "sim.f0", "must not act in the direction of sim.v0");
    try {
        sim.validate();
    } catch (const PreconditionError& e) {
        throw ConfigError("sim", e.what());
    }
    return sim;
}

ChainSection read_chain(const YAML::Node& doc) {
    const YAML::Node node = doc["chain"];
    check_keys(node, "chain", {"f0_over_fc", "steps", "mode", "form"});
    ChainSection c;
    c.f0_over_fc = read_number(node, "f0_over_fc", "chain", c.f0_over_fc);
    c.steps = read_int(node, "steps", "chain", c.steps);
    require(c.f0_over_fc >= -1.0 && c.f0_over_fc < 0.0, "chain.f0_over_fc", "must lie in [-1, 0)");
    require(c.steps >= 1, "chain.steps", "must be >= 1");
    const std::string mode = read_string(node, "mode", "chain", "exact");
    if (mode == "exact") {
        c.mode = analysis::ChainMode::Exact;
    } else if (mode == "approx") {
        c.mode = analysis::ChainMode::Approx;
    } else {
        throw ConfigError("chain.mode", "expected 'exact' or 'approx', got '" + mode + "'");
    }
    const std::string form = read_string(node, "form", "chain", "rederived");
    if (form == "rederived") {
        c.form = analysis::ApproxForm::Rederived;
    } else if (form == "printed") {
        c.form = analysis::ApproxForm::Printed;
    } else {
        throw ConfigError("chain.form", "expected 'rederived' or 'printed', got '" + form + "'");
    }
    return c;
}

// ---------------------------------------------------------------- writing

struct Collector {
    std::filesystem::path dir;
    std::vector<Artifact> artifacts;

    void emit(const std::string& file, const std::string& content, std::size_t rows) {
        std::ofstream out(dir / file, std::ios::binary);
        out << content;
        out.close();
        if (!out) {
            throw std::runtime_error("failed to write " + (dir / file).string());
        }
        artifacts.push_back({file, rows, sha256_hex(content)});
    }

    void emit_csv(const std::string& file, const std::ostringstream& out) {
        const std::string content = out.str();
        const auto lines = static_cast<std::size_t>(std::count(content.begin(), content.end(), '\n'));
        emit(file, content, lines > 0 ? lines - 1 : 0);
    }
};

FrictionParams with_ratio(const FrictionParams& base, double ratio) {
    FrictionParams p = base;
    p.sigma = ratio * base.f_c;
    return p;
}

std::vector<double> force_grid(const ExperimentConfig& cfg) {
    std::vector<double> grid;
    for (int k = 1; k <= cfg.grid_points; ++k) {
        grid.push_back(-static_cast<double>(k) / cfg.grid_points);
    }
    return grid;
}

// Reversal forces of the force-displacement figures, in units of F_c.
constexpr std::array<double, 5> kFigureForces{-0.2, -0.4, -0.6, -0.8, -1.0};

void write_audit(std::ostream& out, const std::vector<sweep::AuditRow>& rows) {
    csv::write_header(out, {"F_c", "sigma", "F_i", "x_exact", "x_printed", "x_rederived", "dev_printed",
                            "dev_rederived", "omega_max_gap", "omega_end_gap"});
    for (const auto& r : rows) {
        csv::write_row(out, {r.point.f_c, r.point.sigma, r.point.f_i, r.x_exact, r.x_printed,
                             r.x_rederived, r.dev_printed, r.dev_rederived, r.omega_max_gap,
                             r.omega_end_gap});
    }
}

void run_fig3(const ExperimentConfig& cfg, Collector& out) {
    const auto f = force_grid(cfg);
    const auto grid = sweep::potential_energy_grid_omp(f, cfg.sweep, cfg.params.f_c);
    std::ostringstream csv_out;
    csv::write_header(csv_out, {"F_i_over_Fc", "ratio", "E_p"});
    for (std::size_t r = 0; r < cfg.sweep.size(); ++r) {
        for (std::size_t k = 0; k < f.size(); ++k) {
            csv::write_row(csv_out, {f[k], cfg.sweep[r], grid[r * f.size() + k]});
        }
    }
    out.emit_csv("fig3.csv", csv_out);
}

void run_fig4(const ExperimentConfig& cfg, Collector& out) {
    std::vector<sweep::AuditPoint> points;
    for (double ratio : cfg.sweep) {
        for (double f : kFigureForces) {
            points.push_back({cfg.params.f_c, ratio * cfg.params.f_c, f * cfg.params.f_c});
        }
    }
    const auto rows = sweep::predictor_audit_omp(points);

    std::ostringstream curves;
    csv::write_header(curves, {"ratio", "F_i_over_Fc", "x", "omega", "omega_star"});
    for (const auto& row : rows) {
        const FrictionParams p = with_ratio(cfg.params, row.point.sigma / row.point.f_c);
        const auto approx = analysis::omega_approx(row.point.f_i, p);
        for (int k = 0; k < cfg.grid_points; ++k) {
            const double x = row.x_exact * k / (cfg.grid_points - 1);
            csv::write_row(curves, {row.point.sigma / row.point.f_c, row.point.f_i / row.point.f_c, x,
                                    analysis::omega(x, p), approx(x)});
        }
    }
    out.emit_csv("fig4.csv", curves);

    std::ostringstream audit;
    write_audit(audit, rows);
    out.emit_csv("fig4_audit.csv", audit);
}

void run_fig5(const ExperimentConfig& cfg, Collector& out) {
    std::vector<sweep::AuditPoint> points;
    for (double f_c : cfg.sweep) {
        for (double f : kFigureForces) {
            points.push_back({f_c, cfg.params.sigma, f * f_c});
        }
    }
    const auto rows = sweep::predictor_audit_omp(points);

    std::ostringstream curves;
    csv::write_header(curves, {"F_c", "F_i_over_Fc", "x", "F"});
    for (const auto& row : rows) {
        FrictionParams p = cfg.params;
        p.f_c = row.point.f_c;
        const double x_i = analysis::reversal_coordinate(row.point.f_i, p);
        for (int k = 0; k < cfg.grid_points; ++k) {
            const double x = x_i + (row.x_exact - x_i) * k / (cfg.grid_points - 1);
            csv::write_row(curves, {p.f_c, row.point.f_i / p.f_c, x,
                                    analysis::next_reversal_force(x, row.point.f_i, p)});
        }
    }
    out.emit_csv("fig5.csv", curves);

    std::ostringstream reversals;
    csv::write_header(reversals, {"F_c", "F_i_over_Fc", "x_i", "x_next_exact", "x_next_printed",
                                  "x_next_rederived", "F_next_exact", "F_next_rederived"});
    for (const auto& row : rows) {
        FrictionParams p = cfg.params;
        p.f_c = row.point.f_c;
        csv::write_row(reversals, {p.f_c, row.point.f_i / p.f_c,
                                   analysis::reversal_coordinate(row.point.f_i, p), row.x_exact,
                                   row.x_printed, row.x_rederived,
                                   analysis::next_reversal_force(row.x_exact, row.point.f_i, p),
                                   analysis::next_reversal_force(row.x_rederived, row.point.f_i, p)});
    }
    out.emit_csv("fig5_reversals.csv", reversals);
}

analysis::ChainOptions chain_options(const ChainSection& c) {
    analysis::ChainOptions opts;
    opts.mode = c.mode;
    opts.form = c.form;
    return opts;
}

void run_fig6(const ExperimentConfig& cfg, Collector& out) {
    std::vector<sweep::ChainJob> jobs;
    for (double ratio : cfg.sweep) {
        sweep::ChainJob job;
        job.params = with_ratio(cfg.params, ratio);
        job.f_0 = cfg.chain.f0_over_fc * cfg.params.f_c;
        job.n_steps = cfg.chain.steps;
        job.options = chain_options(cfg.chain);
        jobs.push_back(job);
    }
    const auto chains = sweep::chain_batch_omp(jobs);
    std::ostringstream csv_out;
    csv::write_header(csv_out, {"ratio", "n", "E_p"});
    for (std::size_t j = 0; j < chains.size(); ++j) {
        for (const auto& e : chains[j]) {
            csv::write_row(csv_out, {cfg.sweep[j], static_cast<double>(e.n), e.e_p});
        }
    }
    out.emit_csv("fig6.csv", csv_out);
}

void run_fig7(const ExperimentConfig& cfg, Collector& out) {
    std::vector<SimConfig> configs;
    for (double ratio : cfg.sweep) {
        SimConfig sim = cfg.sim;
        sim.params = with_ratio(cfg.params, ratio);
        configs.push_back(sim);
    }
    const auto runs = sweep::simulate_batch_omp(configs);

    std::ostringstream envelope;
    csv::write_header(envelope, {"ratio", "i", "t_i", "E_p"});
    for (std::size_t j = 0; j < runs.size(); ++j) {
        const auto& traj = runs[j];
        // |E_f| accumulated since the most recent reversal (t = 0 before the
        // first); the reversal sample closes the half-cycle it ends.
        std::ostringstream series;
        csv::write_header(series, {"t", "E_mag"});
        std::size_t next_rev = 0;
        double origin = 0.0;
        for (const auto& s : traj.samples) {
            while (next_rev < traj.reversals.size() && s.t > traj.reversals[next_rev].t_i) {
                origin = sample_at(traj, traj.reversals[next_rev].t_i).e_f_cum;
                ++next_rev;
            }
            csv::write_row(series, {s.t, std::abs(s.e_f_cum - origin)});
        }
        out.emit_csv("fig7_ratio_" + csv::format_number(cfg.sweep[j]) + ".csv", series);
        for (const auto& r : traj.reversals) {
            csv::write_row(envelope, {cfg.sweep[j], static_cast<double>(r.index), r.t_i, r.e_p});
        }
    }
    out.emit_csv("fig7_envelope.csv", envelope);
}

void run_simulate(const ExperimentConfig& cfg, Collector& out) {
    const auto traj = simulate(cfg.sim);
    std::ostringstream t;
    csv::write_trajectory(t, traj);
    out.emit_csv("trajectory.csv", t);
    std::ostringstream r;
    csv::write_reversals(r, traj.reversals);
    out.emit_csv("reversals.csv", r);
}

void run_chain(const ExperimentConfig& cfg, Collector& out) {
    const auto chain = analysis::reversal_chain(cfg.chain.f0_over_fc * cfg.params.f_c, cfg.chain.steps,
                                                cfg.params, chain_options(cfg.chain));
    std::ostringstream c;
    csv::write_chain(c, chain);
    out.emit_csv("chain.csv", c);
}

json nullable(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json report_json(const validation::ValidationReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks) {
        checks.push_back({{"id", c.id},
                          {"description", c.description},
                          {"passed", c.passed},
                          {"measured", nullable(c.measured)},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
    }
    json rows = json::array();
    for (const auto& r : report.approximation.rows) {
        rows.push_back({{"F_c", r.point.f_c},
                        {"sigma", r.point.sigma},
                        {"F_i", r.point.f_i},
                        {"x_exact", r.x_exact},
                        {"x_printed", nullable(r.x_printed)},
                        {"x_rederived", nullable(r.x_rederived)},
                        {"dev_printed", nullable(r.dev_printed)},
                        {"dev_rederived", nullable(r.dev_rederived)},
                        {"omega_max_gap", r.omega_max_gap},
                        {"omega_end_gap", r.omega_end_gap}});
    }
    const auto& a = report.approximation;
    return {{"passed", report.all_passed()},
            {"checks", checks},
            {"approximation",
             {{"better_form", a.better_form},
              {"max_dev_printed", a.max_dev_printed},
              {"max_dev_rederived", a.max_dev_rederived},
              {"printed_degenerate", a.printed_degenerate},
              {"rows", rows}}}};
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& message)
    : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

std::string_view kind_name(Kind kind) noexcept {
    for (const auto& [k, name] : kKinds) {
        if (k == kind) {
            return name;
        }
    }
    return "unknown";
}

std::optional<Kind> parse_kind(std::string_view name) noexcept {
    for (const auto& [k, n] : kKinds) {
        if (n == name) {
            return k;
        }
    }
    return std::nullopt;
}

const std::vector<std::string_view>& kind_names() {
    static const std::vector<std::string_view> names = [] {
        std::vector<std::string_view> v;
        for (const auto& entry : kKinds) {
            v.push_back(entry.second);
        }
        return v;
    }();
    return names;
}

Override parse_override(std::string_view text) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("--override", "expected key=value, got '" + std::string(text) + "'");
    }
    return {std::string(text.substr(0, eq)), std::string(text.substr(eq + 1))};
}

ExperimentConfig parse_config(std::string_view yaml_text, const std::vector<Override>& overrides,
                              std::optional<Kind> forced_kind) {
    YAML::Node doc;
    try {
        doc = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw ConfigError("", std::string("YAML parse error: ") + e.what());
    }
    if (!doc.IsDefined() || doc.IsNull()) {
        doc = YAML::Node(YAML::NodeType::Map);
    }
    require(doc.IsMap(), "<document>", "expected a mapping at the top level");

    for (const auto& o : overrides) {
        YAML::Node value;
        try {
            value = YAML::Load(o.value);
        } catch (const YAML::Exception& e) {
            throw ConfigError(o.path, std::string("override value does not parse: ") + e.what());
        }
        const auto keys = split_path(o.path);
        set_path(doc, keys, value, "");
    }

    check_keys(doc, "", {"kind", "name", "output_dir", "params", "sweep", "sim", "chain", "grid", "validate"});

    ExperimentConfig cfg;
    const std::string kind_text = read_string(doc, "kind", "", "");
    if (kind_text.empty()) {
        require(forced_kind.has_value(), "kind", "missing");
        cfg.kind = *forced_kind;
    } else {
        const auto parsed = parse_kind(kind_text);
        require(parsed.has_value(), "kind", "unknown kind '" + kind_text + "'");
        require(!forced_kind || *forced_kind == *parsed, "kind",
                "config says '" + kind_text + "' but the command is '" +
                    std::string(kind_name(forced_kind.value_or(*parsed))) + "'");
        cfg.kind = *parsed;
    }

    cfg.name = read_string(doc, "name", "", std::string(kind_name(cfg.kind)));
    cfg.output_dir = read_string(doc, "output_dir", "", cfg.output_dir.string());
    cfg.params = read_params(doc, cfg.kind);
    cfg.sweep = read_sweep(doc, cfg.kind);
    cfg.sim = read_sim(doc, cfg.kind, cfg.params);
    cfg.chain = read_chain(doc);

    const YAML::Node grid = doc["grid"];
    check_keys(grid, "grid", {"points"});
    cfg.grid_points = read_int(grid, "points", "grid", cfg.grid_points);
    require(cfg.grid_points >= 2, "grid.points", "must be >= 2");

    const YAML::Node val = doc["validate"];
    check_keys(val, "validate", {"omega_exponent", "parallel"});
    cfg.validate.omega_exponent = read_number(val, "omega_exponent", "validate", cfg.validate.omega_exponent);
    cfg.validate.parallel = read_bool(val, "parallel", "validate", cfg.validate.parallel);
    require(cfg.validate.omega_exponent >= 0.0, "validate.omega_exponent", "must be >= 0");
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path, const std::vector<Override>& overrides,
                             std::optional<Kind> forced_kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("--config", "cannot read " + path.string());
    }
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str(), overrides, forced_kind);
}

RunResult run(const ExperimentConfig& cfg) {
    std::filesystem::create_directories(cfg.output_dir);
    Collector out{cfg.output_dir, {}};
    RunResult result;

    switch (cfg.kind) {
        case Kind::Simulate:
            run_simulate(cfg, out);
            break;
        case Kind::Chain:
            run_chain(cfg, out);
            break;
        case Kind::Fig3:
            run_fig3(cfg, out);
            break;
        case Kind::Fig4:
            run_fig4(cfg, out);
            break;
        case Kind::Fig5:
            run_fig5(cfg, out);
            break;
        case Kind::Fig6:
            run_fig6(cfg, out);
            break;
        case Kind::Fig7:
            run_fig7(cfg, out);
            break;
        case Kind::Validate: {
            auto report = validation::run_validation(cfg.validate);
            out.emit("report.json", report_json(report).dump(2) + "\n", report.checks.size());
            result.exit_code = report.all_passed() ? kExitOk : kExitFailure;
            result.report = std::move(report);
            break;
        }
    }

    json files = json::array();
    for (const auto& a : out.artifacts) {
        files.push_back({{"file", a.file}, {"rows", a.rows}, {"sha256", a.sha256}});
    }
    const json manifest{{"name", cfg.name}, {"kind", kind_name(cfg.kind)}, {"files", files}};
    std::ofstream mf(cfg.output_dir / kManifestFile, std::ios::binary);
    mf << manifest.dump(2) << '\n';
    if (!mf) {
        throw std::runtime_error("failed to write manifest in " + cfg.output_dir.string());
    }
    result.artifacts = std::move(out.artifacts);
    return result;
}

std::string sha256_hex(std::string_view data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest.data(), &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256_hex: digest computation failed");
    }
    std::ostringstream hex;
    hex << std::hex << std::setfill('0');
    for (unsigned int i = 0; i < length; ++i) {
        hex << std::setw(2) << static_cast<int>(digest[i]);
    }
    return hex.str();
}

}  // namespace presliding::experiment
