#include "uqsg/output.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <istream>
#include <json.hpp>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include "uqsg/basis.hpp"
#include "uqsg/errors.hpp"

namespace uqsg {

namespace {

void write_position(std::ostream& out, const Mesh& mesh, int j) {
    out << mesh.x_center(mesh.ix(j));
    if (mesh.dimension() == 2) out << ',' << mesh.y_center(mesh.iy(j));
}

std::string position_header(const Mesh& mesh) { return mesh.dimension() == 2 ? "x,y" : "x"; }

}  // namespace

void write_field_csv(std::ostream& out, const Mesh& mesh, const MomentField& moments) {
    out << position_header(mesh) << ",state,mean,variance";
    for (int i = 0; i < moments.orders(); ++i) out << ",m" << i;
    out << '\n' << std::setprecision(17);
    for (int j = 0; j < mesh.cells(); ++j) {
        if (!mesh.active(j)) continue;
        for (int s = 0; s < moments.states(); ++s) {
            const auto c = moments.coeffs(j, s);
            const MeanVariance mv = mean_and_variance(c);
            write_position(out, mesh, j);
            out << ',' << s << ',' << mv.mean << ',' << mv.variance;
            for (double v : c) out << ',' << v;
            out << '\n';
        }
    }
}

void write_statistic_csv(std::ostream& out, const Mesh& mesh, const MomentField& moments,
                         bool variance) {
    out << position_header(mesh) << ",state," << (variance ? "variance" : "mean") << '\n';
    out << std::setprecision(17);
    for (int j = 0; j < mesh.cells(); ++j) {
        if (!mesh.active(j)) continue;
        for (int s = 0; s < moments.states(); ++s) {
            const MeanVariance mv = mean_and_variance(moments.coeffs(j, s));
            write_position(out, mesh, j);
            out << ',' << s << ',' << (variance ? mv.variance : mv.mean) << '\n';
        }
    }
}

void write_reference_csv(std::ostream& out, const ReferenceField& reference) {
    const Mesh& mesh = reference.mesh;
    out << position_header(mesh) << ",state,mean,variance\n" << std::setprecision(17);
    for (int j = 0; j < mesh.cells(); ++j) {
        if (!mesh.active(j)) continue;
        for (int s = 0; s < reference.states; ++s) {
            const size_t k = static_cast<size_t>(j) * reference.states + s;
            write_position(out, mesh, j);
            out << ',' << s << ',' << reference.mean[k] << ',' << reference.variance[k] << '\n';
        }
    }
}

std::string run_report_json(const ScenarioSettings& settings, const RunReport& report,
                            const Solver& solver) {
    nlohmann::ordered_json j;
    j["model"] = to_string(settings.model);
    j["closure"] = to_string(settings.closure);
    j["filter"] = to_string(settings.filter.kind);
    j["filter_lambda"] = settings.filter.lambda;
    j["order"] = settings.order;
    j["cells"] = solver.mesh().cells();
    j["active_cells"] = solver.mesh().active_cells();
    j["steps"] = report.steps;
    j["final_time"] = report.final_time;
    j["wall_seconds"] = report.wall_seconds;
    j["max_dual_iterations"] = report.max_dual_iterations;
    j["total_mass"] = solver.total_mass();
    j["boundary_outflow"] = solver.boundary_outflow();
    return j.dump(2) + "\n";
}

FieldTable read_field_csv(std::istream& in) {
    FieldTable table;
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty field file", 1);
    std::vector<std::string> header;
    {
        std::istringstream fields(line);
        std::string item;
        while (std::getline(fields, item, ',')) header.push_back(item);
    }
    if (header.size() < 5 || header[0] != "x") throw ParseError("not a field CSV header", 1);
    table.dimension = header[1] == "y" ? 2 : 1;
    const size_t first_moment = table.dimension == 2 ? 5 : 4;
    if (header.size() <= first_moment || header[first_moment] != "m0") {
        throw ParseError("field CSV has no moment columns", 1);
    }
    int number = 1;
    while (std::getline(in, line)) {
        ++number;
        if (line.empty()) continue;
        std::istringstream fields(line);
        std::string item;
        std::vector<double> values;
        try {
            while (std::getline(fields, item, ',')) values.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("line " + std::to_string(number) + ": malformed number", number);
        }
        if (values.size() != header.size()) {
            throw ParseError("line " + std::to_string(number) + ": wrong column count", number);
        }
        FieldRow row;
        row.x = values[0];
        row.y = table.dimension == 2 ? values[1] : 0.0;
        row.state = static_cast<int>(values[table.dimension]);
        row.moments.assign(values.begin() + first_moment, values.end());
        table.rows.push_back(std::move(row));
    }
    if (table.rows.empty()) throw ParseError("field CSV has no rows", number);
    return table;
}

namespace {

// Smallest positive gap between sorted distinct coordinates.
double spacing(std::set<double> coords) {
    double h = std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::quiet_NaN();
    for (double c : coords) {
        if (!std::isnan(prev)) h = std::min(h, c - prev);
        prev = c;
    }
    return h;
}

}  // namespace

void write_slice_csv(std::ostream& out, const FieldTable& table, double x, double y, int points) {
    if (points < 2) throw ConfigurationError("slice needs at least 2 xi points");
    std::set<double> xs, ys;
    for (const auto& row : table.rows) {
        xs.insert(row.x);
        ys.insert(row.y);
    }
    const double hx = xs.size() > 1 ? spacing(xs) : 1.0;
    const double hy = ys.size() > 1 ? spacing(ys) : 1.0;
    if (x < *xs.begin() - 0.5 * hx || x > *xs.rbegin() + 0.5 * hx ||
        (table.dimension == 2 && (y < *ys.begin() - 0.5 * hy || y > *ys.rbegin() + 0.5 * hy))) {
        throw ConfigurationError("slice position lies outside the domain");
    }
    double best = std::numeric_limits<double>::infinity();
    double cx = 0.0, cy = 0.0;
    for (const auto& row : table.rows) {
        const double d = std::abs(row.x - x) + (table.dimension == 2 ? std::abs(row.y - y) : 0.0);
        if (d < best) {
            best = d;
            cx = row.x;
            cy = row.y;
        }
    }
    out << "xi,state,value\n" << std::setprecision(17);
    std::vector<const FieldRow*> cell;
    for (const auto& row : table.rows) {
        if (row.x == cx && row.y == cy) cell.push_back(&row);
    }
    std::vector<double> phi;
    for (int k = 0; k < points; ++k) {
        const double xi = k == points - 1 ? 1.0 : -1.0 + 2.0 * k / (points - 1);
        for (const FieldRow* row : cell) {
            phi.resize(row->moments.size());
            orthonormal_legendre_all(xi, phi);
            double value = 0.0;
            for (size_t i = 0; i < phi.size(); ++i) value += row->moments[i] * phi[i];
            out << xi << ',' << row->state << ',' << value << '\n';
        }
    }
}

void ensure_directory(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw ConfigurationError("cannot create directory '" + path + "': " + ec.message());
}

}  // namespace uqsg
