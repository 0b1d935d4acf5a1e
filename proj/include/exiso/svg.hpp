#pragma once

#include <span>
#include <string>

#include "exiso/diagnose.hpp"
#include "exiso/isoline.hpp"
#include "exiso/sample.hpp"

namespace exiso {

// Quick-look renderings; the CSV outputs are the contract, these are for
// eyeballing a run.
void write_isolines_svg(const std::string& path, const BivariateSample& sample,
                        std::span<const Isoline> isolines);

void write_diagnostic_svg(const std::string& path, const DiagnosticReport& report);

void write_bootstrap_svg(const std::string& path, const BivariateSample& sample,
                         const BootstrapResult& result, const Isoline* original = nullptr);

}  // namespace exiso
