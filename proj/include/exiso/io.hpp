#pragma once

#include <span>
#include <string>

#include "exiso/diagnose.hpp"
#include "exiso/isoline.hpp"
#include "exiso/surface.hpp"
#include "exiso/taildep.hpp"

namespace exiso {

// Isoline CSV: level,scale,x,y plus a provenance column; rows in polyline
// order, lines in input order.
void write_isolines_csv(const std::string& path, std::span<const Isoline> isolines);

// Bootstrap CSV: the isoline schema plus a replicate column.
void write_bootstrap_csv(const std::string& path, const BootstrapResult& result);

// Diagnostic CSV: probe_index,x,y,count,emp_prob,lower,upper,flag.
void write_diagnostic_csv(const std::string& path, const DiagnosticReport& report);

void write_chi_csv(const std::string& path, const ChiCurve& curve);

void write_hill_csv(const std::string& path, const TailDependenceEstimate& estimate);

// Grid dump for debugging: x,y,value.
void write_grid_csv(const std::string& path, const SurvivalGrid& grid);

}  // namespace exiso
