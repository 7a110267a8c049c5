#include "mpt/network.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace mpt {

namespace {

std::string road_str(int id) { return "road " + std::to_string(id); }

}  // namespace

bool divides_evenly(double spacing, double length) {
  if (spacing <= 0.0 || length < 0.0) return false;
  const double q = length / spacing;
  return std::abs(q - std::round(q)) <= 1e-9 * std::max(1.0, q);
}

RoadNetwork::RoadNetwork(std::vector<Road> roads, std::vector<Junction> junctions)
    : roads_(std::move(roads)), junctions_(std::move(junctions)) {
  if (roads_.empty()) throw std::invalid_argument("network has no roads");
  for (int i = 0; i < static_cast<int>(roads_.size()); ++i) {
    const Road& r = roads_[i];
    if (r.length <= 0.0)
      throw std::invalid_argument(road_str(r.id) + ": length must be positive");
    if (!road_index_.emplace(r.id, i).second)
      throw std::invalid_argument("duplicate road id " + std::to_string(r.id));
  }
  road_end_junction_.assign(roads_.size(), -1);
  road_start_junction_.assign(roads_.size(), -1);

  for (int j = 0; j < static_cast<int>(junctions_.size()); ++j) {
    const Junction& jn = junctions_[j];
    if (!junction_index_.emplace(jn.id, j).second)
      throw std::invalid_argument("duplicate junction id " + std::to_string(jn.id));
    for (int in : jn.incoming) {
      for (int out : jn.outgoing) {
        if (in == out)
          throw std::invalid_argument("junction " + std::to_string(jn.id) +
                                      ": road " + std::to_string(in) +
                                      " is both incoming and outgoing");
      }
    }
    for (int in : jn.incoming) {
      const int ri = road_index(in);
      if (road_end_junction_[ri] != -1)
        throw std::invalid_argument(road_str(in) + " ends at more than one junction");
      road_end_junction_[ri] = jn.id;
    }
    for (int out : jn.outgoing) {
      const int ri = road_index(out);
      if (road_start_junction_[ri] != -1)
        throw std::invalid_argument(road_str(out) + " starts at more than one junction");
      road_start_junction_[ri] = jn.id;
    }
  }
  for (size_t i = 0; i < roads_.size(); ++i) {
    if (road_start_junction_[i] == -1)
      throw std::invalid_argument(road_str(roads_[i].id) +
                                  " does not start at any junction or origin");
    if (road_end_junction_[i] == -1)
      throw std::invalid_argument(road_str(roads_[i].id) +
                                  " does not end at any junction or destination");
  }
  for (const Junction& jn : junctions_) {
    if (jn.incoming.empty() && jn.outgoing.empty())
      throw std::invalid_argument("junction " + std::to_string(jn.id) +
                                  " touches no roads");
    if (jn.incoming.empty()) origins_.push_back(jn.id);
    if (jn.outgoing.empty()) destinations_.push_back(jn.id);
  }
}

const Road& RoadNetwork::road(int road_id) const {
  return roads_[road_index(road_id)];
}

int RoadNetwork::road_index(int road_id) const {
  auto it = road_index_.find(road_id);
  if (it == road_index_.end())
    throw std::invalid_argument("unknown road id " + std::to_string(road_id));
  return it->second;
}

const Junction& RoadNetwork::junction(int junction_id) const {
  auto it = junction_index_.find(junction_id);
  if (it == junction_index_.end())
    throw std::invalid_argument("unknown junction id " + std::to_string(junction_id));
  return junctions_[it->second];
}

int RoadNetwork::end_junction(int road_id) const {
  return road_end_junction_[road_index(road_id)];
}

int RoadNetwork::start_junction(int road_id) const {
  return road_start_junction_[road_index(road_id)];
}

Path::Path(int id, const RoadNetwork& net, std::vector<int> road_sequence)
    : id_(id), roads_(std::move(road_sequence)) {
  if (roads_.empty()) throw std::invalid_argument("empty path");
  offsets_.reserve(roads_.size());
  double acc = 0.0;
  for (int i = 0; i < static_cast<int>(roads_.size()); ++i) {
    const int rid = roads_[i];
    if (!position_.emplace(rid, i).second)
      throw std::invalid_argument("path repeats road " + std::to_string(rid));
    if (i > 0 && net.end_junction(roads_[i - 1]) != net.start_junction(rid))
      throw std::invalid_argument("roads " + std::to_string(roads_[i - 1]) + " and " +
                                  std::to_string(rid) + " are not connected");
    offsets_.push_back(acc);
    acc += net.road(rid).length;
  }
  total_length_ = acc;
}

bool Path::contains_road(int road_id) const {
  return position_.find(road_id) != position_.end();
}

int Path::road_position(int road_id) const {
  auto it = position_.find(road_id);
  if (it == position_.end())
    throw std::invalid_argument("road " + std::to_string(road_id) +
                                " is not on path " + std::to_string(id_));
  return it->second;
}

double Path::to_path_coordinate(int road_id, double local_pos) const {
  const int j = road_position(road_id);
  const double road_len =
      (j + 1 < static_cast<int>(offsets_.size()) ? offsets_[j + 1] : total_length_) -
      offsets_[j];
  if (local_pos < 0.0 || local_pos > road_len)
    throw std::invalid_argument("position " + std::to_string(local_pos) +
                                " is outside road " + std::to_string(road_id));
  return offsets_[j] + local_pos;
}

std::pair<int, double> Path::locate(double s) const {
  if (s < 0.0 || s > total_length_)
    throw std::invalid_argument("path coordinate " + std::to_string(s) +
                                " outside [0, " + std::to_string(total_length_) + "]");
  // Last road keeps its right endpoint; interior boundaries map to the next
  // road's position 0.
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
  int j = static_cast<int>(it - offsets_.begin()) - 1;
  return {j, s - offsets_[j]};
}

std::pair<int, double> Path::from_path_coordinate(double s) const {
  auto [j, local] = locate(s);
  return {roads_[j], local};
}

std::vector<Path> enumerate_paths(const RoadNetwork& net) {
  if (net.origins().empty()) throw std::invalid_argument("network has no origins");
  if (net.destinations().empty())
    throw std::invalid_argument("network has no destinations");

  // Kahn's algorithm on the junction graph; leftover junctions mean a cycle,
  // which would make the path count infinite.
  std::unordered_map<int, int> indegree;
  for (const Junction& j : net.junctions()) indegree[j.id] = static_cast<int>(j.incoming.size());
  std::deque<int> ready;
  for (const auto& [jid, deg] : indegree)
    if (deg == 0) ready.push_back(jid);
  int visited = 0;
  while (!ready.empty()) {
    const int jid = ready.front();
    ready.pop_front();
    ++visited;
    for (int rid : net.junction(jid).outgoing) {
      const int next = net.end_junction(rid);
      if (--indegree[next] == 0) ready.push_back(next);
    }
  }
  if (visited != static_cast<int>(net.junctions().size()))
    throw std::invalid_argument("network contains a cycle; path set is infinite");

  std::vector<std::vector<int>> sequences;
  std::vector<int> stack;
  auto dfs = [&](auto&& self, int junction_id) -> void {
    const Junction& j = net.junction(junction_id);
    if (j.outgoing.empty()) {
      if (!stack.empty()) sequences.push_back(stack);
      return;
    }
    for (int rid : j.outgoing) {
      stack.push_back(rid);
      self(self, net.end_junction(rid));
      stack.pop_back();
    }
  };
  for (int origin : net.origins()) dfs(dfs, origin);

  std::sort(sequences.begin(), sequences.end());
  std::vector<Path> paths;
  paths.reserve(sequences.size());
  for (int p = 0; p < static_cast<int>(sequences.size()); ++p)
    paths.emplace_back(p, net, std::move(sequences[p]));
  return paths;
}

std::vector<std::pair<int, int>> shared_cells(const Path& a, const Path& b,
                                              double grid_spacing) {
  if (grid_spacing <= 0.0) throw std::invalid_argument("grid spacing must be positive");
  auto cells_before = [&](const Path& p, int seq) {
    const double off = p.offsets()[seq];
    if (!divides_evenly(grid_spacing, off))
      throw std::invalid_argument("grid spacing does not divide a road length on path " +
                                  std::to_string(p.id()));
    return static_cast<int>(std::llround(off / grid_spacing));
  };
  auto road_cells = [&](const Path& p, int seq) {
    const double len = (seq + 1 < static_cast<int>(p.offsets().size())
                            ? p.offsets()[seq + 1]
                            : p.total_length()) -
                       p.offsets()[seq];
    if (!divides_evenly(grid_spacing, len))
      throw std::invalid_argument("grid spacing does not divide the length of road " +
                                  std::to_string(p.roads()[seq]));
    return static_cast<int>(std::llround(len / grid_spacing));
  };

  std::vector<std::pair<int, int>> pairs;
  for (int sa = 0; sa < static_cast<int>(a.roads().size()); ++sa) {
    const int rid = a.roads()[sa];
    if (!b.contains_road(rid)) continue;
    const int sb = b.road_position(rid);
    const int base_a = cells_before(a, sa);
    const int base_b = cells_before(b, sb);
    const int n = road_cells(a, sa);
    for (int k = 0; k < n; ++k) pairs.emplace_back(base_a + k, base_b + k);
  }
  return pairs;
}

}  // namespace mpt
