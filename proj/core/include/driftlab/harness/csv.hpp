#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "driftlab/dynamics/simulation.hpp"

namespace driftlab {

/// One residual-norm record. Column order is part of the file format.
struct ResidualRow {
  double t = 0.0;
  double q = 1.0;
  std::string level;  ///< "raw", "0", "1", or an ablation such as "1-nolog"
  double norm = 0.0;
  double m0 = 0.0;
  Vec2 m1{0.0, 0.0};
  double tail_mass = 0.0;
};

inline constexpr const char* kResidualHeader = "t,q,level,norm,M0,M1x,M1y,tail_mass";
inline constexpr const char* kDiagnosticsHeader = "t,l1,l2,linf,M0,M1x,M1y,tail_mass,flux_x,flux_y";

/// Scientific notation, 17 significant digits.
std::string format_number(double v);

void write_residual_csv(std::ostream& out, const std::vector<ResidualRow>& rows);
std::vector<ResidualRow> read_residual_csv(std::istream& in);

void write_diagnostics_csv(std::ostream& out, const std::vector<DiagnosticsRow>& rows);
std::vector<DiagnosticsRow> read_diagnostics_csv(std::istream& in);

/// Plain-text snapshot: a line "N L t model" followed by N rows of N values.
void write_snapshot(std::ostream& out, const Field& f, double t, ModelKind model);
struct SnapshotFile {
  Field field;
  double t;
  ModelKind model;
};
SnapshotFile read_snapshot(std::istream& in);

}  // namespace driftlab
