#pragma once

#include <optional>

#include "inls/invariants.hpp"

namespace inls {

enum class Termination { ReachedT, BlowupDetected, BoundaryContaminated };

struct MonitorRow {
  double t = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double grad_sq = 0.0;
  double potential = 0.0;
  double grad_product = 0.0;
  double sup_u = 0.0;
  double boundary_frac = 0.0;
};

struct EvolveConfig {
  double T = 0.0;
  double dt = 0.0;
  int snapshot_stride = 0;     // 0 disables snapshots
  double blowup_factor = 20.0; // beta
  double boundary_limit = 1.0; // 1.0 never halts; the fraction is still monitored
  bool nonlinear = true;
  // Gradient threshold of the matching ground state; enables the
  // gradient-scale blowup test when set.
  std::optional<double> threshold_grad;
};

struct EvolutionTrace {
  InlsParams params;
  std::shared_ptr<const RadialGrid> grid;
  EvolveConfig config;
  std::vector<MonitorRow> monitors;  // one row at t = 0, then one per step
  std::vector<double> snapshot_times;
  std::vector<ComplexRadialField> snapshots;
  ComplexRadialField final_field;
  Termination termination = Termination::ReachedT;
  double t_final = 0.0;
};

/// One Strang step: half free flight, exact nonlinear phase
/// u <- u exp(i r^{-b} |u|^2 dt), half free flight. The free multiplier is
/// exp(-i k^2 t) and the nonlinear phase rotates forward; together these fix
/// the focusing sign convention used everywhere.
ComplexRadialField step(const ComplexRadialField& field, double dt, const InlsParams& params,
                        bool nonlinear = true);

/// Fixed-dt Strang loop with per-step monitors. Physical events terminate
/// the trace (never throw): the run stops BlowupDetected when grad_sq
/// passes beta^2 times the threshold-equivalent gradient scale or when
/// sup|u| passes the grid resolvability bound 0.1*pi/(2 dr), and
/// BoundaryContaminated when the outer-10% mass fraction passes the limit.
EvolutionTrace evolve(const ComplexRadialField& u0, const EvolveConfig& config,
                      const InlsParams& params);

const char* termination_name(Termination t);

}  // namespace inls
