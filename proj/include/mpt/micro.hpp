#ifndef MPT_MICRO_HPP
#define MPT_MICRO_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mpt/bridge.hpp"
#include "mpt/macro.hpp"
#include "mpt/network.hpp"

namespace mpt {

struct MicroParams {
  double ell_n = 1.0;  // vehicle length, total length n*ell_n
  double v_max = 1.0;
  double dt = 0.1;
  std::uint64_t seed = 0;
  bool adaptive_dt = false;
  bool strict_mass = false;
  int n = 0;  // total vehicle count, filled by seeding

  double total_vehicle_length() const { return ell_n * static_cast<double>(n); }
};

struct Vehicle {
  int label = 0;    // unique, creation order
  int path_id = 0;
  double s = 0.0;   // path coordinate, meters from the path origin
  bool active = true;
};

struct MicroState {
  MicroParams params;
  std::vector<Vehicle> vehicles;
  double t = 0.0;
};

/// w(delta) = v_max (1 - ell_n/delta), defined for delta > 0. Callers must
/// route delta <= ell_n through velocity_w_star.
double velocity_w(double delta, double ell_n, double v_max);

/// Extension that stops overlapped vehicles: 0 for delta <= ell_n, w(delta)
/// otherwise. Continuous at delta = ell_n. Gaps are nonnegative by
/// construction, so delta < 0 signals state corruption and throws.
double velocity_w_star(double delta, double ell_n, double v_max);

struct RoadSeedInfo {
  int road_id = 0;
  double mass = 0.0;
  int vehicles = 0;
  double mass_adjustment = 0.0;  // applied rounding, vehicles*ell_n - mass
};

struct SeedReport {
  std::vector<RoadSeedInfo> roads;
  int total_vehicles = 0;
};

/// Builds the initial vehicle population: per-road positions from the
/// equal-mass discretization of the initial density, full paths sampled by
/// chaining turning coefficients junction by junction with the seeded random
/// stream. Unless params.strict_mass is set, per-road mass is rounded to the
/// nearest multiple of ell_n and the adjustment reported.
MicroState seed_vehicles(const RoadNetwork& net, const std::vector<Path>& paths,
                         const std::vector<DensityProfile>& initial_density,
                         const TurningCoefficients& turning, MicroParams params,
                         SeedReport* report = nullptr);

struct MicroStats {
  long long steps = 0;
  int arrivals = 0;
  int max_step_overlap = 0;           // most vehicles with gap < ell_n in one step
  long long overlap_zone_violations = 0;  // overlapped vehicles outside junction zones
  std::vector<int> max_overlap_per_junction;  // by junction order in network
  double min_follower_gap = std::numeric_limits<double>::infinity();
  double last_dt = 0.0;
};

/// Explicit Euler integrator for the network follow-the-leader model. All
/// gaps within a step are evaluated on the frozen state at the start of the
/// step. A vehicle whose coordinate reaches its path's total length is
/// deactivated after the move.
class MicroSimulation {
 public:
  MicroSimulation(const RoadNetwork& net, const std::vector<Path>& paths,
                  MicroState state);

  const MicroState& state() const { return state_; }
  double time() const { return state_.t; }
  const MicroStats& stats() const { return stats_; }
  int active_count() const { return active_count_; }
  int arrivals() const { return stats_.arrivals; }

  void step();
  void run_until(double T);

  /// Index of the nearest active vehicle ahead of vehicle i along its path,
  /// any population; nullopt if i is a leader. Vehicles at the same position
  /// are ordered by label, the largest being in front.
  std::optional<int> find_next(int vehicle_index) const;

  /// Path-coordinate distance to the next vehicle; throws if i is a leader.
  double gap(int vehicle_index) const;

  /// min over followers with gap > ell_n of gap^2 / (v_max (gap - ell_n));
  /// +infinity when no follower constrains the step.
  double cfl_timestep() const;

 private:
  struct Entry {
    double local = 0.0;  // road-local position
    int label = 0;
    int vidx = 0;
  };

  struct NextInfo {
    int vidx = -1;
    double delta = 0.0;
  };

  void build_road_lists();
  NextInfo next_of(int road_idx, int pos_in_list) const;
  void restore_order(std::vector<Entry>& list);

  const RoadNetwork& net_;
  const std::vector<Path>& paths_;
  MicroState state_;
  int active_count_ = 0;
  MicroStats stats_;

  std::vector<std::vector<Entry>> road_lists_;  // by road index, sorted (local, label)
  std::vector<int> seq_idx_;                    // per vehicle: index in its path
  std::vector<int> list_pos_;                   // per vehicle: position in its road list
  std::vector<double> velocity_;                // scratch
  std::vector<int> movers_;                     // scratch

  // Junction bookkeeping for overlap statistics.
  std::vector<int> junction_order_;   // junction id -> dense index
  std::vector<int> overlap_scratch_;  // per junction, current step
};

}  // namespace mpt

#endif  // MPT_MICRO_HPP
