#include <algorithm>
#include <cmath>

#include "ssns/diagnostics.hpp"
#include "ssns/error.hpp"
#include "ssns/fft.hpp"

namespace ssns {

CommutationReport commutation_check(const CommutationSetup& setup) {
  const double lambda = setup.lambda;
  if (!(lambda > 0.0) || lambda > 1.0)
    throw ValidationError("commutation: lambda must lie in (0, 1]");
  if (!(setup.compare_from > 0.0) || setup.compare_from > 1.0)
    throw ValidationError("commutation: compare_from must lie in (0, 1]");
  const Grid grid_a(setup.n, setup.length);
  const Grid grid_b(setup.n, setup.length / lambda);
  setup.data.validate(grid_a);

  InitialDataSpec data_b = setup.data;
  data_b.window.radius /= lambda;
  data_b.window.width /= lambda;
  if (setup.rescale_delta) data_b.delta /= lambda;
  data_b.validate(grid_b);

  SolverConfig cfg_a;
  cfg_a.epsilon = setup.epsilon;
  cfg_a.dt = setup.dt;
  cfg_a.t_end = lambda * lambda * setup.t_end;
  cfg_a.nonlinear = setup.nonlinear;
  cfg_a.cfl = setup.cfl;
  SolverConfig cfg_b = cfg_a;
  cfg_b.epsilon = setup.epsilon / lambda;
  cfg_b.dt = setup.dt / (lambda * lambda);
  cfg_b.t_end = setup.t_end;
  std::vector<double> times_b;
  for (double t : cfg_b.resolved_snapshot_times())
    if (t >= setup.compare_from * setup.t_end * (1.0 - 1e-12)) times_b.push_back(t);
  cfg_b.snapshot_times = times_b;
  cfg_a.snapshot_times.clear();
  for (double t : times_b) cfg_a.snapshot_times.push_back(lambda * lambda * t);

  const Trajectory a = run(sample_u0_alpha(grid_a, setup.data), cfg_a);
  const Trajectory b = run(sample_u0_alpha(grid_b, data_b), cfg_b);

  const CoreBall ball{setup.core_radius > 0.0 ? setup.core_radius : setup.length / 8.0};
  CommutationReport report;
  for (std::size_t i = 1; i < b.snapshots.size(); ++i) {
    const Snapshot& sb = b.snapshots[i];
    const Snapshot& sa = a.snapshots[i];
    const ScalingParts parts = scaling_parts(to_physical(sb.field), sa.field, lambda, ball);
    report.rows.push_back({sb.t, parts.relative()});
    report.max_discrepancy = std::max(report.max_discrepancy, parts.relative());
  }
  return report;
}

}  // namespace ssns
