#include "mpt/macro.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mpt {

namespace {

double clamp_unit(double rho, const char* what) {
  if (rho < -1e-9 || rho > 1.0 + 1e-9)
    throw std::invalid_argument(std::string(what) + " density " + std::to_string(rho) +
                                " outside [0, 1]");
  return std::clamp(rho, 0.0, 1.0);
}

}  // namespace

double godunov_flux(double rho_minus, double rho_plus, const FundamentalDiagram& fd) {
  const double rm = clamp_unit(rho_minus, "upstream");
  const double rp = clamp_unit(rho_plus, "downstream");
  const double sigma = fd.sigma();
  if (rm <= rp) return std::min(fd.flux(rm), fd.flux(rp));
  if (rm < sigma) return fd.flux(rm);
  if (rp <= sigma) return fd.max_flux();  // rm >= sigma >= rp
  return fd.flux(rp);                     // rp > sigma
}

void TurningCoefficients::set(int from_road, int to_road, double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("turning coefficient outside [0, 1]");
  entries_[{from_road, to_road}] = p;
}

double TurningCoefficients::get(int from_road, int to_road) const {
  auto it = entries_.find({from_road, to_road});
  return it == entries_.end() ? 0.0 : it->second;
}

bool TurningCoefficients::has(int from_road, int to_road) const {
  return entries_.find({from_road, to_road}) != entries_.end();
}

void TurningCoefficients::complete_and_validate(const RoadNetwork& net) {
  for (const auto& [key, p] : entries_) {
    const auto [a, b] = key;
    if (net.end_junction(a) != net.start_junction(b))
      throw std::invalid_argument("turning pair " + std::to_string(a) + "->" +
                                  std::to_string(b) + " does not cross a junction");
  }
  for (const Road& r : net.roads()) {
    const Junction& j = net.junction(net.end_junction(r.id));
    if (j.outgoing.empty()) continue;  // destination, no turn
    if (j.outgoing.size() == 1 && !has(r.id, j.outgoing.front()))
      set(r.id, j.outgoing.front(), 1.0);
    double row = 0.0;
    for (int b : j.outgoing) row += get(r.id, b);
    if (std::abs(row - 1.0) > 1e-9)
      throw std::invalid_argument("turning coefficients for road " +
                                  std::to_string(r.id) + " sum to " +
                                  std::to_string(row) + ", expected 1");
  }
}

std::vector<std::vector<double>> split_initial(const std::vector<DensityProfile>& total,
                                               const TurningCoefficients& turning,
                                               const RoadNetwork& net,
                                               const std::vector<Path>& paths,
                                               double dx) {
  std::vector<const DensityProfile*> by_road(static_cast<size_t>(net.road_count()),
                                             nullptr);
  for (const DensityProfile& p : total) by_road[net.road_index(p.road_id)] = &p;

  std::vector<std::vector<double>> mu(paths.size());
  // weight_on_road[path][seq] = product of turning probabilities ahead.
  std::vector<std::vector<double>> weights(paths.size());
  for (size_t p = 0; p < paths.size(); ++p) {
    const auto& roads = paths[p].roads();
    std::vector<double> w(roads.size(), 1.0);
    for (int j = static_cast<int>(roads.size()) - 2; j >= 0; --j)
      w[j] = w[j + 1] * turning.get(roads[j], roads[j + 1]);
    weights[p] = std::move(w);
  }

  for (int r = 0; r < net.road_count(); ++r) {
    const Road& road = net.roads()[r];
    const DensityProfile* prof = by_road[static_cast<size_t>(r)];
    const bool has_mass = prof && prof->mass() > 0.0;
    if (!has_mass) continue;
    double weight_sum = 0.0;
    for (size_t p = 0; p < paths.size(); ++p)
      if (paths[p].contains_road(road.id))
        weight_sum += weights[p][static_cast<size_t>(paths[p].road_position(road.id))];
    if (std::abs(weight_sum - 1.0) > 1e-9)
      throw std::invalid_argument(
          "initial density on road " + std::to_string(road.id) +
          " cannot be split into populations: path weights sum to " +
          std::to_string(weight_sum));
  }

  for (size_t p = 0; p < paths.size(); ++p) {
    const Path& path = paths[p];
    if (!divides_evenly(dx, path.total_length()))
      throw std::invalid_argument("grid spacing does not divide path length");
    mu[p].assign(static_cast<size_t>(std::llround(path.total_length() / dx)), 0.0);
    for (size_t seq = 0; seq < path.roads().size(); ++seq) {
      const int ri = net.road_index(path.roads()[seq]);
      const DensityProfile* prof = by_road[static_cast<size_t>(ri)];
      if (!prof) continue;
      if (std::abs(prof->dx - dx) > 1e-12 * dx)
        throw std::invalid_argument("initial density grid mismatch on road " +
                                    std::to_string(path.roads()[seq]));
      const auto base =
          static_cast<size_t>(std::llround(path.offsets()[seq] / dx));
      const double w = weights[p][seq];
      for (size_t k = 0; k < prof->values.size(); ++k)
        mu[p][base + k] = prof->values[k] * w;
    }
  }
  return mu;
}

MultiPathSolver::MultiPathSolver(const RoadNetwork& net, const std::vector<Path>& paths,
                                 FundamentalDiagram fd, double dx, double dt)
    : net_(net), paths_(paths), fd_(fd), dx_(dx), dt_(dt) {
  if (dx <= 0.0) throw std::invalid_argument("grid spacing must be positive");
  if (dt <= 0.0) throw std::invalid_argument("time step must be positive");
  // CFL: |f'| <= v_max for the Greenshields diagram.
  if (dt > 0.9 * dx / fd.v_max)
    throw std::invalid_argument("macro time step " + std::to_string(dt) +
                                " violates the CFL bound 0.9 dx/v_max = " +
                                std::to_string(0.9 * dx / fd.v_max));
  road_cell_base_.resize(static_cast<size_t>(net.road_count()));
  for (int r = 0; r < net.road_count(); ++r) {
    const Road& road = net.roads()[r];
    if (!divides_evenly(dx, road.length))
      throw std::invalid_argument("grid spacing does not divide the length of road " +
                                  std::to_string(road.id));
    road_cell_base_[static_cast<size_t>(r)] = total_road_cells_;
    total_road_cells_ += static_cast<int>(std::llround(road.length / dx));
  }
  cell_gid_.resize(paths.size());
  mu_.resize(paths.size());
  for (size_t p = 0; p < paths.size(); ++p) {
    const Path& path = paths[p];
    auto& gid = cell_gid_[p];
    for (size_t seq = 0; seq < path.roads().size(); ++seq) {
      const int ri = net.road_index(path.roads()[seq]);
      const int n =
          static_cast<int>(std::llround(net.roads()[ri].length / dx));
      for (int k = 0; k < n; ++k)
        gid.push_back(road_cell_base_[static_cast<size_t>(ri)] + k);
    }
    mu_[p].assign(gid.size(), 0.0);
  }
  road_total_.assign(static_cast<size_t>(total_road_cells_), 0.0);
}

void MultiPathSolver::set_initial(const std::vector<DensityProfile>& total,
                                  const TurningCoefficients& turning) {
  auto mu = split_initial(total, turning, net_, paths_, dx_);
  for (size_t p = 0; p < paths_.size(); ++p) set_population(static_cast<int>(p), std::move(mu[p]));
}

void MultiPathSolver::set_population(int path_id, std::vector<double> mu) {
  auto& dst = mu_[static_cast<size_t>(path_id)];
  if (mu.size() != dst.size())
    throw std::invalid_argument("population density has wrong cell count");
  dst = std::move(mu);
  t_ = 0.0;
  outflow_ = 0.0;
  max_omega_ = 0.0;
  max_drift_ = 0.0;
  assemble_totals();
  initial_mass_ = mass();
  min_mu_ = 0.0;
  for (const auto& m : mu_)
    for (double v : m) min_mu_ = std::min(min_mu_, v);
}

const std::vector<double>& MultiPathSolver::population_density(int path_id) const {
  return mu_[static_cast<size_t>(path_id)];
}

std::vector<double> MultiPathSolver::total_density_on_path(int path_id) const {
  const auto& gid = cell_gid_[static_cast<size_t>(path_id)];
  std::vector<double> omega(gid.size());
  for (size_t k = 0; k < gid.size(); ++k)
    omega[k] = road_total_[static_cast<size_t>(gid[k])];
  return omega;
}

std::vector<DensityProfile> MultiPathSolver::total_density_per_road() const {
  std::vector<DensityProfile> out(static_cast<size_t>(net_.road_count()));
  for (int r = 0; r < net_.road_count(); ++r) {
    const Road& road = net_.roads()[r];
    const int n = static_cast<int>(std::llround(road.length / dx_));
    DensityProfile& prof = out[static_cast<size_t>(r)];
    prof.road_id = road.id;
    prof.dx = dx_;
    prof.values.assign(
        road_total_.begin() + road_cell_base_[static_cast<size_t>(r)],
        road_total_.begin() + road_cell_base_[static_cast<size_t>(r)] + n);
  }
  return out;
}

double MultiPathSolver::mass() const {
  double m = 0.0;
  for (const auto& mu : mu_)
    for (double v : mu) m += v;
  return m * dx_;
}

void MultiPathSolver::assemble_totals() {
  std::fill(road_total_.begin(), road_total_.end(), 0.0);
  for (size_t p = 0; p < mu_.size(); ++p) {
    const auto& gid = cell_gid_[p];
    const auto& mu = mu_[p];
    for (size_t k = 0; k < gid.size(); ++k)
      road_total_[static_cast<size_t>(gid[k])] += mu[k];
  }
  for (double w : road_total_) max_omega_ = std::max(max_omega_, w);
}

void MultiPathSolver::run_until(double T) {
  while (t_ < T - 1e-9) {
    const double dt = std::min(dt_, T - t_);
    step_dt(dt);
  }
}

void MultiPathSolver::step_dt(double dt) {
  const double lambda = dt / dx_;
  // mu/omega with the 0/0 -> 0 convention: mu <= omega, so omega = 0 forces
  // mu = 0 and a vanishing contribution.
  auto ratio = [](double mu, double omega) { return omega > 0.0 ? mu / omega : 0.0; };

  for (size_t p = 0; p < mu_.size(); ++p) {
    auto& mu = mu_[p];
    const auto& gid = cell_gid_[p];
    const size_t n = mu.size();
    flux_.assign(n + 1, 0.0);
    // Ghost cells with mu = omega = 0 at both path ends: no inflow at the
    // origin, free outflow at the destination.
    for (size_t j = 1; j < n; ++j) {
      const double om = road_total_[static_cast<size_t>(gid[j - 1])];
      const double op = road_total_[static_cast<size_t>(gid[j])];
      flux_[j] = ratio(mu[j - 1], om) * godunov_flux(om, op, fd_);
    }
    {
      const double om = road_total_[static_cast<size_t>(gid[n - 1])];
      flux_[n] = ratio(mu[n - 1], om) * godunov_flux(om, 0.0, fd_);
    }
    for (size_t k = 0; k < n; ++k) {
      mu[k] -= lambda * (flux_[k + 1] - flux_[k]);
      min_mu_ = std::min(min_mu_, mu[k]);
    }
    outflow_ += flux_[n] * dt;
  }
  t_ += dt;
  assemble_totals();
  audit();
}

void MultiPathSolver::audit() {
  if (initial_mass_ <= 0.0) return;
  const double drift = std::abs(mass() + outflow_ - initial_mass_) / initial_mass_;
  max_drift_ = std::max(max_drift_, drift);
}

}  // namespace mpt
