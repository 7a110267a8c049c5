#include "mpt/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mpt/micro.hpp"

namespace mpt {

double DensityProfile::mass() const {
  double m = 0.0;
  for (double v : values) m += v;
  return m * dx;
}

double PiecewiseConstant::integral() const {
  double m = 0.0;
  for (size_t j = 0; j < values.size(); ++j)
    m += values[j] * (knots[j + 1] - knots[j]);
  return m;
}

double PiecewiseConstant::value_at(double x) const {
  if (knots.empty() || x < knots.front() || x >= knots.back()) return 0.0;
  auto it = std::upper_bound(knots.begin(), knots.end(), x);
  return values[static_cast<size_t>(it - knots.begin()) - 1];
}

PiecewiseConstant to_piecewise(const DensityProfile& profile) {
  PiecewiseConstant pc;
  pc.knots.reserve(profile.values.size() + 1);
  for (size_t k = 0; k <= profile.values.size(); ++k)
    pc.knots.push_back(profile.dx * static_cast<double>(k));
  pc.values = profile.values;
  return pc;
}

PiecewiseConstant antidiscretize(const std::vector<double>& positions, double ell_n) {
  if (ell_n <= 0.0) throw std::invalid_argument("vehicle length must be positive");
  for (size_t i = 1; i < positions.size(); ++i) {
    if (positions[i] <= positions[i - 1])
      throw std::invalid_argument("positions must be strictly increasing");
  }
  PiecewiseConstant pc;
  if (positions.size() < 2) return pc;
  pc.knots = positions;
  pc.values.reserve(positions.size() - 1);
  for (size_t i = 0; i + 1 < positions.size(); ++i)
    pc.values.push_back(ell_n / (positions[i + 1] - positions[i]));
  return pc;
}

std::vector<double> discretize(const PiecewiseConstant& density, double ell_n) {
  if (ell_n <= 0.0) throw std::invalid_argument("vehicle length must be positive");
  const double mass = density.integral();
  const double q = mass / ell_n;
  const double count = std::round(q);
  if (std::abs(q - count) > 1e-9 * std::max(1.0, q))
    throw std::invalid_argument("density mass " + std::to_string(mass) +
                                " is not a multiple of vehicle length; remainder " +
                                std::to_string(mass - count * ell_n));
  return discretize_count(density, ell_n, static_cast<int>(count));
}

std::vector<double> discretize_count(const PiecewiseConstant& density, double ell_n,
                                     int count) {
  if (count < 0) throw std::invalid_argument("vehicle count must be nonnegative");
  std::vector<double> positions;
  if (count == 0) return positions;
  for (double v : density.values)
    if (v < 0.0) throw std::invalid_argument("density must be nonnegative");
  if (static_cast<double>(count - 1) * ell_n > density.integral() * (1.0 + 1e-12))
    throw std::invalid_argument("density mass cannot host the requested vehicle count");

  // Front vehicle at the right edge of the support.
  int cell = static_cast<int>(density.values.size()) - 1;
  while (cell >= 0 && density.values[cell] == 0.0) --cell;
  if (cell < 0) throw std::invalid_argument("density has empty support");
  positions.resize(count);
  positions[count - 1] = density.knots[cell + 1];

  // Walk leftward placing each vehicle where the integral up to the previous
  // one reaches ell_n. Stopping as soon as the requirement is met yields the
  // largest admissible position when zero plateaus make the solution a set.
  double upper = positions[count - 1];
  for (int i = count - 2; i >= 0; --i) {
    double remaining = ell_n;
    while (true) {
      if (cell < 0) {
        if (remaining <= 1e-9 * ell_n) break;
        throw std::invalid_argument("ran out of density mass while placing vehicles");
      }
      const double hi = std::min(upper, density.knots[cell + 1]);
      const double cell_mass = density.values[cell] * (hi - density.knots[cell]);
      if (cell_mass < remaining) {
        remaining -= cell_mass;
        upper = density.knots[cell];
        --cell;
        continue;
      }
      upper = hi - remaining / density.values[cell];
      break;
    }
    positions[i] = upper;
  }
  return positions;
}

std::vector<DensityProfile> psi_average(const MicroState& state, const RoadNetwork& net,
                                        const std::vector<Path>& paths, double dx) {
  std::vector<DensityProfile> profiles(net.road_count());
  for (int r = 0; r < net.road_count(); ++r) {
    const Road& road = net.roads()[r];
    if (!divides_evenly(dx, road.length))
      throw std::invalid_argument("grid spacing does not divide the length of road " +
                                  std::to_string(road.id));
    profiles[r].road_id = road.id;
    profiles[r].dx = dx;
    profiles[r].values.assign(static_cast<size_t>(std::llround(road.length / dx)), 0.0);
  }
  const double weight = state.params.ell_n / dx;
  for (const Vehicle& v : state.vehicles) {
    if (!v.active) continue;
    const Path& path = paths[static_cast<size_t>(v.path_id)];
    auto [road_id, local] = path.from_path_coordinate(v.s);
    DensityProfile& prof = profiles[static_cast<size_t>(net.road_index(road_id))];
    const auto cell = static_cast<long long>(std::floor(local / dx));
    if (cell >= 0 && cell < static_cast<long long>(prof.values.size()))
      prof.values[static_cast<size_t>(cell)] += weight;
  }
  return profiles;
}

double l1_distance(const DensityProfile& a, const DensityProfile& b) {
  if (a.road_id != b.road_id || a.values.size() != b.values.size() ||
      std::abs(a.dx - b.dx) > 1e-12 * std::max(a.dx, b.dx))
    throw std::invalid_argument("density profiles live on different grids");
  double acc = 0.0;
  for (size_t k = 0; k < a.values.size(); ++k) acc += std::abs(a.values[k] - b.values[k]);
  return acc * a.dx;
}

}  // namespace mpt
