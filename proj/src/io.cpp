#include "exiso/io.hpp"

#include <cmath>
#include <cstdio>

#include "exiso/error.hpp"

namespace exiso {

namespace {

struct File {
  std::FILE* f;
  explicit File(const std::string& path) : f(std::fopen(path.c_str(), "wb")) {
    if (!f) throw Error("io", "cannot open for writing: " + path);
  }
  ~File() {
    if (f) std::fclose(f);
  }
  File(const File&) = delete;
  File& operator=(const File&) = delete;
};

}  // namespace

void write_isolines_csv(const std::string& path, std::span<const Isoline> isolines) {
  File out(path);
  std::fprintf(out.f, "level,scale,x,y,provenance\n");
  for (const Isoline& iso : isolines)
    for (const Vec2& p : iso.points)
      std::fprintf(out.f, "%.17g,%s,%.17g,%.17g,%s\n", iso.level, to_string(iso.scale),
                   p.x, p.y, to_string(iso.provenance));
}

void write_bootstrap_csv(const std::string& path, const BootstrapResult& result) {
  File out(path);
  std::fprintf(out.f, "level,scale,x,y,provenance,replicate\n");
  for (std::size_t k = 0; k < result.isolines.size(); ++k) {
    const Isoline& iso = result.isolines[k];
    for (const Vec2& p : iso.points)
      std::fprintf(out.f, "%.17g,%s,%.17g,%.17g,%s,%zu\n", iso.level,
                   to_string(iso.scale), p.x, p.y, to_string(iso.provenance),
                   result.replicate_ids[k]);
  }
}

void write_diagnostic_csv(const std::string& path, const DiagnosticReport& report) {
  File out(path);
  std::fprintf(out.f, "probe_index,x,y,count,emp_prob,lower,upper,flag\n");
  for (const ProbePoint& probe : report.probes)
    std::fprintf(out.f, "%zu,%.17g,%.17g,%zu,%.17g,%.17g,%.17g,%s\n", probe.vertex_index,
                 probe.x, probe.y, probe.count, probe.emp_prob, report.lower,
                 report.upper, probe.inside ? "in" : "out");
}

void write_chi_csv(const std::string& path, const ChiCurve& curve) {
  File out(path);
  std::fprintf(out.f, "u,chi,joint_count,cond_count\n");
  for (std::size_t i = 0; i < curve.u.size(); ++i) {
    if (std::isnan(curve.chi[i]))
      std::fprintf(out.f, "%.17g,,%zu,%zu\n", curve.u[i], curve.joint_count[i],
                   curve.cond_count[i]);
    else
      std::fprintf(out.f, "%.17g,%.17g,%zu,%zu\n", curve.u[i], curve.chi[i],
                   curve.joint_count[i], curve.cond_count[i]);
  }
}

void write_hill_csv(const std::string& path, const TailDependenceEstimate& estimate) {
  File out(path);
  std::fprintf(out.f, "k,eta\n");
  for (const HillPoint& pt : estimate.trace)
    std::fprintf(out.f, "%zu,%.17g\n", pt.k, pt.eta);
}

void write_grid_csv(const std::string& path, const SurvivalGrid& grid) {
  File out(path);
  std::fprintf(out.f, "x,y,value\n");
  for (std::size_t i = 0; i < grid.nx(); ++i)
    for (std::size_t j = 0; j < grid.ny(); ++j)
      std::fprintf(out.f, "%.17g,%.17g,%.17g\n", grid.x_coords[i], grid.y_coords[j],
                   grid.value(i, j));
}

}  // namespace exiso
