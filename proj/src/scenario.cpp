#include "uqsg/scenario.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

#include "uqsg/entropy.hpp"
#include "uqsg/errors.hpp"

namespace uqsg {

namespace {

double to_double(const std::string& text) {
    size_t used = 0;
    const double value = std::stod(text, &used);
    if (used != text.size() || !std::isfinite(value)) throw std::invalid_argument("not a number");
    return value;
}

int to_int(const std::string& text) {
    size_t used = 0;
    const int value = std::stoi(text, &used);
    if (used != text.size()) throw std::invalid_argument("not an integer");
    return value;
}

BoundaryKind to_boundary(const std::string& text) {
    if (text == "dirichlet") return BoundaryKind::Dirichlet;
    if (text == "slip") return BoundaryKind::SlipWall;
    throw std::invalid_argument("expected dirichlet or slip");
}

FluxPath to_flux_path(const std::string& text) {
    if (text == "quadrature") return FluxPath::Quadrature;
    if (text == "analytic") return FluxPath::Analytic;
    throw std::invalid_argument("expected quadrature or analytic");
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

using Setter = std::function<void(ScenarioSettings&, const std::string&)>;

struct KeySpec {
    const char* key;
    const char* fallback;
    Setter apply;
};

const std::vector<KeySpec>& key_specs() {
    static const std::vector<KeySpec> specs = {
        {"physics.model", "burgers", [](auto& s, auto& v) { s.model = physics_kind_from_string(v); }},
        {"physics.gamma", "1.4", [](auto& s, auto& v) { s.gamma = to_double(v); }},
        {"domain.a", "0", [](auto& s, auto& v) { s.a = to_double(v); }},
        {"domain.b", "1", [](auto& s, auto& v) { s.b = to_double(v); }},
        {"domain.nx", "100", [](auto& s, auto& v) { s.nx = to_int(v); }},
        {"domain.ny", "0", [](auto& s, auto& v) { s.ny = to_int(v); }},
        {"domain.obstacles", "", [](auto& s, auto& v) { s.obstacles = parse_obstacles(v); }},
        {"domain.duct_floor", "",
         [](auto& s, auto& v) {
             s.duct_floor = v.empty() ? std::nullopt : std::optional<double>(to_double(v));
         }},
        {"domain.left", "dirichlet", [](auto& s, auto& v) { s.boundaries[0] = to_boundary(v); }},
        {"domain.right", "dirichlet", [](auto& s, auto& v) { s.boundaries[1] = to_boundary(v); }},
        {"domain.bottom", "dirichlet", [](auto& s, auto& v) { s.boundaries[2] = to_boundary(v); }},
        {"domain.top", "dirichlet", [](auto& s, auto& v) { s.boundaries[3] = to_boundary(v); }},
        {"ic.x0", "0.5", [](auto& s, auto& v) { s.x0 = to_double(v); }},
        {"ic.x1", "1.5", [](auto& s, auto& v) { s.x1 = to_double(v); }},
        {"ic.sigma", "0.2", [](auto& s, auto& v) { s.sigma = to_double(v); }},
        {"ic.u_left", "12", [](auto& s, auto& v) { s.u_left = to_double(v); }},
        {"ic.u_right", "1", [](auto& s, auto& v) { s.u_right = to_double(v); }},
        {"ic.rho_left", "1.0", [](auto& s, auto& v) { s.rho_left = to_double(v); }},
        {"ic.p_left", "1.0", [](auto& s, auto& v) { s.p_left = to_double(v); }},
        {"ic.rho_right", "0.3", [](auto& s, auto& v) { s.rho_right = to_double(v); }},
        {"ic.p_right", "0.3", [](auto& s, auto& v) { s.p_right = to_double(v); }},
        {"uq.order", "5", [](auto& s, auto& v) { s.order = to_int(v); }},
        {"uq.quadrature", "legendre",
         [](auto& s, auto& v) { s.quadrature = quadrature_family_from_string(v); }},
        {"uq.points", "0", [](auto& s, auto& v) { s.points = to_int(v); }},
        {"uq.flux", "quadrature", [](auto& s, auto& v) { s.flux = to_flux_path(v); }},
        {"closure.kind", "sg", [](auto& s, auto& v) { s.closure = closure_kind_from_string(v); }},
        {"closure.tolerance", "1e-7", [](auto& s, auto& v) { s.tolerance = to_double(v); }},
        {"closure.max_iterations", "200", [](auto& s, auto& v) { s.max_iterations = to_int(v); }},
        {"closure.quadrature", "lobatto",
         [](auto& s, auto& v) { s.ipm_quadrature = quadrature_family_from_string(v); }},
        {"closure.points", "0", [](auto& s, auto& v) { s.ipm_points = to_int(v); }},
        {"closure.bound_margin", "0.001", [](auto& s, auto& v) { s.bound_margin = to_double(v); }},
        {"filter.kind", "none", [](auto& s, auto& v) { s.filter.kind = filter_kind_from_string(v); }},
        {"filter.lambda", "0", [](auto& s, auto& v) { s.filter.lambda = to_double(v); }},
        {"time.t_end", "0.1", [](auto& s, auto& v) { s.t_end = to_double(v); }},
        {"time.cfl", "0.8", [](auto& s, auto& v) { s.cfl = to_double(v); }},
        {"output.dir", "out", [](auto& s, auto& v) { s.output_dir = v; }},
        {"output.snapshot_every", "0", [](auto& s, auto& v) { s.snapshot_every = to_double(v); }},
    };
    return specs;
}

const KeySpec* find_spec(const std::string& key) {
    for (const auto& spec : key_specs()) {
        if (key == spec.key) return &spec;
    }
    return nullptr;
}

// Line of "key" inside "[section]" for error reporting; 0 if not found.
int locate_key(const std::string& text, const std::string& dotted) {
    const auto dot = dotted.find('.');
    const std::string section = dotted.substr(0, dot);
    const std::string key = dotted.substr(dot + 1);
    std::istringstream in(text);
    std::string line;
    std::string current;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string t = trim(line);
        if (t.empty() || t[0] == ';' || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            current = trim(t.substr(1, t.size() - 2));
            continue;
        }
        const auto eq = t.find('=');
        if (eq != std::string::npos && current == section && trim(t.substr(0, eq)) == key) {
            return number;
        }
    }
    return 0;
}

}  // namespace

std::vector<SquareObstacle> parse_obstacles(const std::string& text) {
    std::vector<SquareObstacle> out;
    std::istringstream items(text);
    std::string item;
    while (std::getline(items, item, ';')) {
        if (trim(item).empty()) continue;
        std::istringstream fields(item);
        std::vector<double> values;
        std::string token;
        while (fields >> token) values.push_back(to_double(token));
        if (values.size() != 3) {
            throw std::invalid_argument("obstacle needs 'center_x center_y length'");
        }
        out.push_back({values[0], values[1], values[2]});
    }
    return out;
}

std::string format_obstacles(const std::vector<SquareObstacle>& obstacles) {
    std::ostringstream out;
    out << std::setprecision(17);
    for (size_t k = 0; k < obstacles.size(); ++k) {
        if (k > 0) out << "; ";
        out << obstacles[k].center_x << ' ' << obstacles[k].center_y << ' ' << obstacles[k].length;
    }
    return out.str();
}

Scenario::Scenario() {
    for (const auto& spec : key_specs()) {
        values_[spec.key] = spec.fallback;
        spec.apply(settings_, spec.fallback);
    }
}

const std::vector<std::string>& Scenario::keys() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& spec : key_specs()) out.emplace_back(spec.key);
        return out;
    }();
    return names;
}

void Scenario::set(const std::string& key, const std::string& value, int line) {
    const KeySpec* spec = find_spec(key);
    const std::string where = line > 0 ? "line " + std::to_string(line) + ": " : "";
    if (!spec) throw ParseError(where + "unknown key '" + key + "'", line);
    ScenarioSettings updated = settings_;
    try {
        spec->apply(updated, trim(value));
    } catch (const std::exception& e) {
        throw ParseError(where + "invalid value '" + value + "' for '" + key + "': " + e.what(),
                         line);
    }
    values_[key] = trim(value);
    settings_ = std::move(updated);
}

void Scenario::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || assignment.find('.') > eq) {
        throw ParseError("override must look like section.key=value: '" + assignment + "'", 0);
    }
    set(trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

const std::string& Scenario::get(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ParseError("unknown key '" + key + "'", 0);
    return it->second;
}

Scenario Scenario::parse_string(const std::string& text) {
    // '#' comments are accepted in addition to the ini parser's ';'
    std::ostringstream cleaned;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            const std::string t = trim(line);
            cleaned << (!t.empty() && t[0] == '#' ? std::string() : line) << '\n';
        }
    }
    boost::property_tree::ptree tree;
    std::istringstream stream(cleaned.str());
    try {
        boost::property_tree::ini_parser::read_ini(stream, tree);
    } catch (const boost::property_tree::ini_parser_error& e) {
        throw ParseError("line " + std::to_string(e.line()) + ": " + e.message(),
                         static_cast<int>(e.line()));
    }
    Scenario scenario;
    for (const auto& [section, body] : tree) {
        if (body.empty()) {
            const std::string dotted = "." + section;
            const int line = locate_key(text, dotted);
            throw ParseError("line " + std::to_string(line) + ": key '" + section +
                                 "' outside a section",
                             line);
        }
        for (const auto& [key, value] : body) {
            const std::string dotted = section + "." + key;
            scenario.set(dotted, value.data(), locate_key(text, dotted));
        }
    }
    return scenario;
}

Scenario Scenario::parse(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_string(buffer.str());
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open scenario file '" + path + "'", 0);
    return parse(in);
}

void Scenario::write(std::ostream& out) const {
    std::string current;
    for (const auto& spec : key_specs()) {
        const std::string key = spec.key;
        const auto dot = key.find('.');
        const std::string section = key.substr(0, dot);
        if (section != current) {
            if (!current.empty()) out << '\n';
            out << '[' << section << "]\n";
            current = section;
        }
        out << key.substr(dot + 1) << " = " << values_.at(key) << '\n';
    }
}

std::string Scenario::to_string() const {
    std::ostringstream out;
    write(out);
    return out.str();
}

Mesh make_mesh(const ScenarioSettings& s) {
    const int dim = s.model == PhysicsKind::Euler2D ? 2 : 1;
    if (dim == 1) {
        if (!s.obstacles.empty() || s.duct_floor) {
            throw ConfigurationError("obstacles and duct floors need 2D physics");
        }
        Mesh mesh = Mesh::interval(s.a, s.b, s.nx);
        mesh.set_boundary(Side::Left, s.boundaries[0]);
        mesh.set_boundary(Side::Right, s.boundaries[1]);
        return mesh;
    }
    const int ny = s.ny > 0 ? s.ny : s.nx;
    Mesh mesh = Mesh::box(s.a, s.b, s.nx, s.a, s.b, ny);
    for (int k = 0; k < 4; ++k) mesh.set_boundary(static_cast<Side>(k), s.boundaries[k]);
    for (const auto& o : s.obstacles) mesh.add_square_obstacle(o);
    if (s.duct_floor) mesh.set_floor(*s.duct_floor);
    return mesh;
}

InitialCondition make_initial_condition(const ScenarioSettings& s) {
    switch (s.model) {
        case PhysicsKind::Burgers: {
            if (!(s.x1 > s.x0)) throw ConfigurationError("Burgers data needs x1 > x0");
            const double x0 = s.x0, x1 = s.x1, sigma = s.sigma, ul = s.u_left, ur = s.u_right;
            return [=](double x, double, double xi, std::span<double> out) {
                const double lo = x0 + sigma * xi;
                const double hi = x1 + sigma * xi;
                if (x < lo) {
                    out[0] = ul;
                } else if (x <= hi) {
                    out[0] = ul + (ur - ul) / (x0 - x1) * (lo - x);
                } else {
                    out[0] = ur;
                }
            };
        }
        case PhysicsKind::Euler1D:
        case PhysicsKind::Euler2D: {
            const bool radial = s.model == PhysicsKind::Euler2D;
            const double x0 = s.x0, sigma = s.sigma, gamma = s.gamma;
            const double rl = s.rho_left, pl = s.p_left, rr = s.rho_right, pr = s.p_right;
            if (!(rl > 0 && pl > 0 && rr > 0 && pr > 0)) {
                throw ConfigurationError("initial density and pressure must be positive");
            }
            return [=](double x, double y, double xi, std::span<double> out) {
                const double r = radial ? std::hypot(x, y) : x;
                const bool inner = r < x0 + sigma * xi;
                const double rho = inner ? rl : rr;
                const double p = inner ? pl : pr;
                const double zero[2] = {0.0, 0.0};
                euler_conserved(rho, std::span<const double>(zero, radial ? 2 : 1), p, gamma, out);
            };
        }
    }
    throw ConfigurationError("unknown physics model");
}

std::pair<double, double> burgers_bounds(const ScenarioSettings& s) {
    const double lo = std::min(s.u_left, s.u_right);
    const double hi = std::max(s.u_left, s.u_right);
    const double pad = s.bound_margin * (hi - lo);
    if (!(hi > lo)) throw ConfigurationError("barrier entropy needs u_left != u_right");
    return {lo - pad, hi + pad};
}

Problem make_problem(const ScenarioSettings& s) {
    Problem problem{make_physics(s.model, s.gamma), make_mesh(s), make_initial_condition(s), nullptr};
    if (s.closure == ClosureKind::IPM) {
        if (s.model == PhysicsKind::Burgers) {
            const auto [lo, hi] = burgers_bounds(s);
            problem.entropy = std::make_shared<BoundedBarrierEntropy>(lo, hi);
        } else {
            problem.entropy =
                std::make_shared<EulerEntropy>(s.model == PhysicsKind::Euler2D ? 2 : 1, s.gamma);
        }
    }
    return problem;
}

SolverConfig make_solver_config(const ScenarioSettings& s) {
    SolverConfig config;
    config.closure = s.closure;
    config.filter = s.filter;
    config.cfl = s.cfl;
    config.t_end = s.t_end;
    config.order = s.order;
    config.quadrature = s.quadrature;
    config.quadrature_points = s.points;
    config.flux_path = s.flux;
    config.ipm_quadrature = s.ipm_quadrature;
    config.ipm_points = s.ipm_points;
    config.dual.tolerance = s.tolerance;
    config.dual.max_iterations = s.max_iterations;
    return config;
}

}  // namespace uqsg
