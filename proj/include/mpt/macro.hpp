#ifndef MPT_MACRO_HPP
#define MPT_MACRO_HPP

#include <map>
#include <utility>
#include <vector>

#include "mpt/bridge.hpp"
#include "mpt/network.hpp"

namespace mpt {

/// Greenshields-type fundamental diagram: v(rho) = v_max (1 - rho),
/// f(rho) = rho v(rho), critical density sigma = 1/2.
struct FundamentalDiagram {
  double v_max = 1.0;

  double v(double rho) const { return v_max * (1.0 - rho); }
  double flux(double rho) const { return rho * v(rho); }
  double sigma() const { return 0.5; }
  double max_flux() const { return flux(sigma()); }
  /// Velocity extended past the jam density: zero for rho >= 1.
  double v_star(double rho) const { return rho >= 1.0 ? 0.0 : v(rho); }
};

/// Classical Godunov interface flux for a concave fundamental diagram.
/// Inputs must lie in [0, 1]; a 1e-9 slack absorbs roundoff from the total
/// density assembly.
double godunov_flux(double rho_minus, double rho_plus, const FundamentalDiagram& fd);

/// Distribution coefficients P_{a->b}: the probability that a vehicle leaving
/// incoming road a continues on outgoing road b.
class TurningCoefficients {
 public:
  void set(int from_road, int to_road, double p);
  double get(int from_road, int to_road) const;  // 0 if absent
  bool has(int from_road, int to_road) const;

  /// Fills implicit rows for roads whose end junction has a single outgoing
  /// road, then checks every row sums to 1 over the junction's outgoing set.
  void complete_and_validate(const RoadNetwork& net);

  const std::map<std::pair<int, int>, double>& entries() const { return entries_; }

 private:
  std::map<std::pair<int, int>, double> entries_;
};

/// Splits an initial total density per road into per-path population
/// densities: on each road the weight of a covering path is the product of
/// the turning probabilities of the turns ahead of that road along the path.
/// Throws when a road carries mass but the weights do not sum to 1 (the split
/// is ill-posed). Returns one cell array per path, ordered as `paths`.
std::vector<std::vector<double>> split_initial(const std::vector<DensityProfile>& total,
                                               const TurningCoefficients& turning,
                                               const RoadNetwork& net,
                                               const std::vector<Path>& paths,
                                               double dx);

/// Godunov-based solver for the multi-path system: one density per path,
/// coupled through the total density on shared cells, Dirichlet-zero ghost
/// cells at both ends of every path.
class MultiPathSolver {
 public:
  MultiPathSolver(const RoadNetwork& net, const std::vector<Path>& paths,
                  FundamentalDiagram fd, double dx, double dt);

  void set_initial(const std::vector<DensityProfile>& total,
                   const TurningCoefficients& turning);
  void set_population(int path_id, std::vector<double> mu);

  void step() { step_dt(dt_); }
  void run_until(double T);

  double time() const { return t_; }
  double dx() const { return dx_; }
  double dt() const { return dt_; }
  const FundamentalDiagram& diagram() const { return fd_; }

  const std::vector<double>& population_density(int path_id) const;
  std::vector<double> total_density_on_path(int path_id) const;
  std::vector<DensityProfile> total_density_per_road() const;

  double mass() const;
  double cumulative_outflow() const { return outflow_; }
  double max_total_density_seen() const { return max_omega_; }
  double min_population_density_seen() const { return min_mu_; }
  double max_mass_drift_rel() const { return max_drift_; }

 private:
  void step_dt(double dt);
  void assemble_totals();
  void audit();

  const RoadNetwork& net_;
  const std::vector<Path>& paths_;
  FundamentalDiagram fd_;
  double dx_ = 0.0;
  double dt_ = 0.0;
  double t_ = 0.0;

  std::vector<int> road_cell_base_;          // by road index
  int total_road_cells_ = 0;
  std::vector<std::vector<int>> cell_gid_;   // per path: cell -> global road cell
  std::vector<std::vector<double>> mu_;      // per path
  std::vector<double> road_total_;           // omega on road cells
  std::vector<double> flux_;                 // scratch, per interface

  double outflow_ = 0.0;
  double initial_mass_ = 0.0;
  double max_omega_ = 0.0;
  double min_mu_ = 0.0;
  double max_drift_ = 0.0;
};

}  // namespace mpt

#endif  // MPT_MACRO_HPP
