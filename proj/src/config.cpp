#include "paramop/config.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "paramop/errors.hpp"
#include "paramop/families.hpp"
#include "paramop/fredholm.hpp"
#include "paramop/semilinear.hpp"

namespace paramop {

namespace {

using nlohmann::json;

int edit_distance(const std::string& a, const std::string& b) {
    const std::size_t n = a.size();
    const std::size_t m = b.size();
    std::vector<int> prev(m + 1);
    std::vector<int> cur(m + 1);
    for (std::size_t j = 0; j <= m; ++j) {
        prev[j] = static_cast<int>(j);
    }
    for (std::size_t i = 1; i <= n; ++i) {
        cur[0] = static_cast<int>(i);
        for (std::size_t j = 1; j <= m; ++j) {
            const int subst = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, subst});
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

[[noreturn]] void unknown_key(const std::string& scope, const std::string& key,
                              const std::vector<std::string>& known) {
    std::string best;
    int best_dist = 4;  // only suggest close misses
    for (const std::string& candidate : known) {
        const int dist = edit_distance(key, candidate);
        if (dist < best_dist) {
            best_dist = dist;
            best = candidate;
        }
    }
    std::ostringstream msg;
    msg << "unknown key \"" << (scope.empty() ? key : scope + "." + key) << "\"";
    if (!best.empty()) {
        msg << "; did you mean \"" << best << "\"?";
    }
    throw ConfigError(msg.str());
}

void require_keys(const json& obj, const std::string& scope,
                  const std::vector<std::string>& known) {
    for (const auto& item : obj.items()) {
        if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
            unknown_key(scope, item.key(), known);
        }
    }
}

Scalar parse_complex(const json& value, const std::string& field) {
    if (value.is_number()) {
        return Scalar(value.get<Real>(), 0.0);
    }
    if (value.is_array() && value.size() == 2 && value[0].is_number() && value[1].is_number()) {
        return Scalar(value[0].get<Real>(), value[1].get<Real>());
    }
    throw ConfigError(field + " must be a number or a [re, im] pair");
}

template <class T>
T get_number(const json& obj, const std::string& scope, const std::string& key, T fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& value = obj.at(key);
    if (!value.is_number()) {
        throw ConfigError((scope.empty() ? key : scope + "." + key) + " must be a number");
    }
    return value.get<T>();
}

std::string get_string(const json& obj, const std::string& scope, const std::string& key,
                       const std::string& fallback) {
    if (!obj.contains(key)) {
        return fallback;
    }
    const json& value = obj.at(key);
    if (!value.is_string()) {
        throw ConfigError((scope.empty() ? key : scope + "." + key) + " must be a string");
    }
    return value.get<std::string>();
}

ProblemConfig parse_problem(const json& node) {
    ProblemConfig problem;
    if (node.is_string()) {
        problem.name = node.get<std::string>();
        return problem;
    }
    if (!node.is_object()) {
        throw ConfigError("problem must be a name string or an object");
    }
    require_keys(node, "problem",
                 {"name", "dim", "k_star", "g", "kernel", "quad_nodes", "nonlinearity",
                  "operator_k", "domain_radius", "radial_nodes"});
    if (!node.contains("name")) {
        throw ConfigError("problem.name is required");
    }
    problem.name = get_string(node, "problem", "name", problem.name);
    problem.dim = get_number<int>(node, "problem", "dim", problem.dim);
    if (node.contains("k_star")) {
        problem.k_star = parse_complex(node.at("k_star"), "problem.k_star");
    }
    if (node.contains("g")) {
        const json& g = node.at("g");
        if (!g.is_array() || g.empty()) {
            throw ConfigError("problem.g must be a nonempty array");
        }
        for (const json& entry : g) {
            problem.jump_rhs.push_back(parse_complex(entry, "problem.g"));
        }
    }
    problem.kernel = get_string(node, "problem", "kernel", problem.kernel);
    problem.quad_nodes = get_number<int>(node, "problem", "quad_nodes", problem.quad_nodes);
    problem.nonlinearity = get_string(node, "problem", "nonlinearity", problem.nonlinearity);
    problem.operator_k = get_number<Real>(node, "problem", "operator_k", problem.operator_k);
    problem.domain_radius =
        get_number<Real>(node, "problem", "domain_radius", problem.domain_radius);
    problem.radial_nodes = get_number<int>(node, "problem", "radial_nodes", problem.radial_nodes);
    return problem;
}

DiscConfig parse_disc(const json& node) {
    DiscConfig disc;
    if (!node.is_object()) {
        throw ConfigError("disc must be an object");
    }
    require_keys(node, "disc", {"center", "radius", "samples", "grid", "h_sequence"});
    if (node.contains("center")) {
        disc.center = parse_complex(node.at("center"), "disc.center");
    }
    disc.radius = get_number<Real>(node, "disc", "radius", disc.radius);
    disc.samples = get_number<int>(node, "disc", "samples", disc.samples);
    const std::string grid = get_string(node, "disc", "grid", "chord");
    if (grid == "chord") {
        disc.grid = GridKind::real_chord;
    } else if (grid == "polar") {
        disc.grid = GridKind::polar;
    } else {
        throw ConfigError("disc.grid must be \"chord\" or \"polar\"");
    }
    if (node.contains("h_sequence")) {
        const json& hs = node.at("h_sequence");
        if (!hs.is_array() || hs.empty()) {
            throw ConfigError("disc.h_sequence must be a nonempty array");
        }
        disc.h_sequence.clear();
        for (const json& entry : hs) {
            if (!entry.is_number()) {
                throw ConfigError("disc.h_sequence entries must be numbers");
            }
            disc.h_sequence.push_back(entry.get<Real>());
        }
    }
    return disc;
}

ToleranceConfig parse_tolerances(const json& node) {
    ToleranceConfig tol;
    if (!node.is_object()) {
        throw ConfigError("tolerances must be an object");
    }
    require_keys(node, "tolerances", {"newton_tol", "slope_min", "zero_floor", "ball_radius"});
    tol.newton_tol = get_number<Real>(node, "tolerances", "newton_tol", tol.newton_tol);
    tol.slope_min = get_number<Real>(node, "tolerances", "slope_min", tol.slope_min);
    tol.zero_floor = get_number<Real>(node, "tolerances", "zero_floor", tol.zero_floor);
    tol.ball_radius = get_number<Real>(node, "tolerances", "ball_radius", tol.ball_radius);
    return tol;
}

void validate(const RunConfig& cfg) {
    const std::vector<std::string> matrix_names = registry_names();
    const bool is_matrix =
        std::find(matrix_names.begin(), matrix_names.end(), cfg.problem.name) != matrix_names.end();
    if (!is_matrix && cfg.problem.name != "fredholm" && cfg.problem.name != "semilinear") {
        std::ostringstream msg;
        msg << "unknown problem '" << cfg.problem.name << "'; available:";
        for (const auto& name : matrix_names) {
            msg << " " << name;
        }
        msg << " fredholm semilinear";
        throw NotFoundError(msg.str());
    }
    if (cfg.problem.name == "fredholm") {
        (void)kernel_registry(cfg.problem.kernel);  // throws NotFoundError when unknown
        if (cfg.problem.quad_nodes < 2) {
            throw ConfigError("problem.quad_nodes must be >= 2");
        }
    }
    if (cfg.problem.name == "semilinear") {
        (void)nonlinearity_registry(cfg.problem.nonlinearity, {Scalar(1.0, 0.0)});
        if (cfg.problem.radial_nodes < 2) {
            throw ConfigError("problem.radial_nodes must be >= 2");
        }
        if (!(cfg.problem.operator_k > 0.0)) {
            throw ConfigError("problem.operator_k must be positive");
        }
        if (!(cfg.problem.domain_radius > 0.0)) {
            throw ConfigError("problem.domain_radius must be positive");
        }
    }
    if (cfg.problem.dim < 1) {
        throw ConfigError("problem.dim must be >= 1");
    }
    if (!(cfg.disc.radius > 0.0)) {
        throw ConfigError("disc.radius must be positive");
    }
    if (cfg.disc.samples < 1) {
        throw ConfigError("disc.samples must be >= 1");
    }
    for (std::size_t i = 0; i < cfg.disc.h_sequence.size(); ++i) {
        const Real h = cfg.disc.h_sequence[i];
        if (!(h > 0.0)) {
            throw ConfigError("disc.h_sequence entries must be positive");
        }
        if (i > 0 && !(h < cfg.disc.h_sequence[i - 1])) {
            throw ConfigError("disc.h_sequence must be strictly decreasing");
        }
    }
    if (cfg.tasks.empty()) {
        throw ConfigError("tasks must be a nonempty array");
    }
    for (const std::string& task : cfg.tasks) {
        const auto& known = known_tasks();
        if (std::find(known.begin(), known.end(), task) == known.end()) {
            std::ostringstream msg;
            msg << "unknown task '" << task << "'; available:";
            for (const auto& name : known) {
                msg << " " << name;
            }
            throw ConfigError(msg.str());
        }
    }
    const bool counterexample =
        std::find(cfg.tasks.begin(), cfg.tasks.end(), "counterexample") != cfg.tasks.end();
    if (counterexample && cfg.problem.name != "remark12") {
        throw ConfigError("the counterexample task requires problem \"remark12\"");
    }
    if (!(cfg.tolerances.newton_tol > 0.0)) {
        throw ConfigError("tolerances.newton_tol must be positive");
    }
    if (!(cfg.tolerances.zero_floor >= 0.0)) {
        throw ConfigError("tolerances.zero_floor must be nonnegative");
    }
    if (!(cfg.tolerances.ball_radius > 0.0)) {
        throw ConfigError("tolerances.ball_radius must be positive");
    }
}

json complex_to_json(Scalar value) { return json::array({value.real(), value.imag()}); }

}  // namespace

const std::vector<std::string>& known_tasks() {
    static const std::vector<std::string> tasks = {"solve",       "continuity", "sensitivity",
                                                   "assumptions", "blowup",     "counterexample"};
    return tasks;
}

RunConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw ConfigError(std::string("config is not valid JSON: ") + err.what());
    }
    if (!root.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    require_keys(root, "", {"problem", "disc", "tasks", "output_dir", "seed", "tolerances"});
    RunConfig cfg;
    if (!root.contains("problem")) {
        throw ConfigError("problem is required");
    }
    cfg.problem = parse_problem(root.at("problem"));
    if (root.contains("disc")) {
        cfg.disc = parse_disc(root.at("disc"));
    }
    if (!root.contains("tasks")) {
        throw ConfigError("tasks is required");
    }
    const json& tasks = root.at("tasks");
    if (!tasks.is_array()) {
        throw ConfigError("tasks must be an array of task names");
    }
    for (const json& entry : tasks) {
        if (!entry.is_string()) {
            throw ConfigError("tasks entries must be strings");
        }
        cfg.tasks.push_back(entry.get<std::string>());
    }
    cfg.output_dir = get_string(root, "", "output_dir", cfg.output_dir);
    cfg.seed = get_number<std::uint64_t>(root, "", "seed", cfg.seed);
    if (root.contains("tolerances")) {
        cfg.tolerances = parse_tolerances(root.at("tolerances"));
    }
    validate(cfg);
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    json root;
    json problem;
    problem["name"] = cfg.problem.name;
    problem["dim"] = cfg.problem.dim;
    problem["k_star"] = complex_to_json(cfg.problem.k_star);
    if (!cfg.problem.jump_rhs.empty()) {
        json g = json::array();
        for (const Scalar entry : cfg.problem.jump_rhs) {
            g.push_back(complex_to_json(entry));
        }
        problem["g"] = g;
    }
    problem["kernel"] = cfg.problem.kernel;
    problem["quad_nodes"] = cfg.problem.quad_nodes;
    problem["nonlinearity"] = cfg.problem.nonlinearity;
    problem["operator_k"] = cfg.problem.operator_k;
    problem["domain_radius"] = cfg.problem.domain_radius;
    problem["radial_nodes"] = cfg.problem.radial_nodes;
    root["problem"] = problem;

    json disc;
    disc["center"] = complex_to_json(cfg.disc.center);
    disc["radius"] = cfg.disc.radius;
    disc["samples"] = cfg.disc.samples;
    disc["grid"] = (cfg.disc.grid == GridKind::polar) ? "polar" : "chord";
    disc["h_sequence"] = cfg.disc.h_sequence;
    root["disc"] = disc;

    root["tasks"] = cfg.tasks;
    root["output_dir"] = cfg.output_dir;
    root["seed"] = cfg.seed;

    json tol;
    tol["newton_tol"] = cfg.tolerances.newton_tol;
    tol["slope_min"] = cfg.tolerances.slope_min;
    tol["zero_floor"] = cfg.tolerances.zero_floor;
    tol["ball_radius"] = cfg.tolerances.ball_radius;
    root["tolerances"] = tol;

    return root.dump(2) + "\n";
}

}  // namespace paramop
