#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "uqsg/mesh.hpp"
#include "uqsg/moment_field.hpp"
#include "uqsg/reference.hpp"
#include "uqsg/solver.hpp"

namespace uqsg {

/// Rows x[,y],state,mean,variance,m0..mN for every active cell and state;
/// numbers carry 17 significant digits.
void write_field_csv(std::ostream& out, const Mesh& mesh, const MomentField& moments);
/// Rows x[,y],state,<column> with column "mean" or "variance".
void write_statistic_csv(std::ostream& out, const Mesh& mesh, const MomentField& moments,
                         bool variance);
void write_reference_csv(std::ostream& out, const ReferenceField& reference);

std::string run_report_json(const ScenarioSettings& settings, const RunReport& report,
                            const Solver& solver);

/// One row of a field CSV.
struct FieldRow {
    double x = 0.0;
    double y = 0.0;
    int state = 0;
    std::vector<double> moments;
};

struct FieldTable {
    int dimension = 1;
    std::vector<FieldRow> rows;
};

FieldTable read_field_csv(std::istream& in);

/// Rows xi,state,value of the expansion in the cell containing (x, y),
/// on `points` equispaced xi in [-1, 1]. The containing cell is the row whose
/// center is nearest; throws ConfigurationError when (x, y) lies further than
/// half a cell spacing outside the sampled centers.
void write_slice_csv(std::ostream& out, const FieldTable& table, double x, double y, int points);

/// Creates the directory (and parents) if missing.
void ensure_directory(const std::string& path);

}  // namespace uqsg
