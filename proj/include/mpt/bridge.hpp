#ifndef MPT_BRIDGE_HPP
#define MPT_BRIDGE_HPP

#include <vector>

#include "mpt/network.hpp"

namespace mpt {

struct MicroState;

/// Piecewise-constant density on a uniform per-road grid. Values are
/// normalized densities; they may transiently exceed 1 for the vehicle cell
/// average near junctions at coarse resolutions.
struct DensityProfile {
  int road_id = 0;
  double dx = 0.0;
  std::vector<double> values;

  double length() const { return dx * static_cast<double>(values.size()); }
  double mass() const;
};

/// Piecewise-constant density with explicit breakpoints: values[j] on
/// [knots[j], knots[j+1]), zero elsewhere.
struct PiecewiseConstant {
  std::vector<double> knots;
  std::vector<double> values;

  double integral() const;
  double value_at(double x) const;
};

PiecewiseConstant to_piecewise(const DensityProfile& profile);

/// Maps ordered vehicle positions to the piecewise-constant density that is
/// ell_n/gap on each inter-vehicle interval. Positions must be strictly
/// increasing.
PiecewiseConstant antidiscretize(const std::vector<double>& positions, double ell_n);

/// Inverse operator: places mass/ell_n vehicles so the density integral
/// between consecutive positions is exactly ell_n, the front vehicle sitting
/// at the right edge of the support. The mass must be an integer multiple of
/// ell_n; see discretize_count for the relaxed form.
std::vector<double> discretize(const PiecewiseConstant& density, double ell_n);

/// Same placement rule with an explicit vehicle count. Requires
/// (count-1)*ell_n <= mass so every inter-vehicle integral is realizable.
std::vector<double> discretize_count(const PiecewiseConstant& density, double ell_n,
                                     int count);

/// Cell-average vehicle density: per road cell [x_k, x_k+dx), the number of
/// active vehicles with road-local position in the cell times ell_n/dx.
/// Profiles are returned in network road order.
std::vector<DensityProfile> psi_average(const MicroState& state, const RoadNetwork& net,
                                        const std::vector<Path>& paths, double dx);

/// Sum_k |a_k - b_k| * dx. Both profiles must live on the same road and grid.
double l1_distance(const DensityProfile& a, const DensityProfile& b);

}  // namespace mpt

#endif  // MPT_BRIDGE_HPP
