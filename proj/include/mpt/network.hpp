#ifndef MPT_NETWORK_HPP
#define MPT_NETWORK_HPP

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace mpt {

struct Road {
  int id = 0;
  double length = 0.0;  // meters
};

/// A node of the road graph. Junctions with no incoming roads are origins,
/// junctions with no outgoing roads are destinations.
struct Junction {
  int id = 0;
  std::vector<int> incoming;  // road ids ending here
  std::vector<int> outgoing;  // road ids starting here
};

/// Directed road graph. Immutable after construction; construction validates
/// that incoming/outgoing sets are disjoint, that every road starts at exactly
/// one junction and ends at exactly one junction, and that all lengths are
/// positive.
class RoadNetwork {
 public:
  RoadNetwork(std::vector<Road> roads, std::vector<Junction> junctions);

  int road_count() const { return static_cast<int>(roads_.size()); }
  const std::vector<Road>& roads() const { return roads_; }
  const std::vector<Junction>& junctions() const { return junctions_; }

  const Road& road(int road_id) const;
  const Junction& junction(int junction_id) const;
  int road_index(int road_id) const;

  /// Junction id the road flows into / out of.
  int end_junction(int road_id) const;
  int start_junction(int road_id) const;

  /// Junction ids with empty incoming / empty outgoing sets.
  const std::vector<int>& origins() const { return origins_; }
  const std::vector<int>& destinations() const { return destinations_; }

 private:
  std::vector<Road> roads_;
  std::vector<Junction> junctions_;
  std::unordered_map<int, int> road_index_;
  std::unordered_map<int, int> junction_index_;
  std::vector<int> road_end_junction_;    // by road index
  std::vector<int> road_start_junction_;  // by road index
  std::vector<int> origins_;
  std::vector<int> destinations_;
};

/// An origin-to-destination road sequence treated as one uninterrupted road.
/// offsets()[j] is the cumulative arc length at the start of the j-th road.
class Path {
 public:
  Path(int id, const RoadNetwork& net, std::vector<int> road_sequence);

  int id() const { return id_; }
  const std::vector<int>& roads() const { return roads_; }
  const std::vector<double>& offsets() const { return offsets_; }
  double total_length() const { return total_length_; }

  bool contains_road(int road_id) const;
  /// Index of the road within the sequence; throws if absent.
  int road_position(int road_id) const;

  /// Change of coordinates: (road, local position) -> distance from the path
  /// origin. Throws if the road is not on the path or the position is outside
  /// the road.
  double to_path_coordinate(int road_id, double local_pos) const;

  /// Inverse of to_path_coordinate. A coordinate exactly at a road boundary
  /// maps to position 0 of the next road; s == total_length() maps to the end
  /// of the last road.
  std::pair<int, double> from_path_coordinate(double s) const;

  /// Same as from_path_coordinate but returns the sequence index instead of
  /// the road id.
  std::pair<int, double> locate(double s) const;

 private:
  int id_ = 0;
  std::vector<int> roads_;
  std::vector<double> offsets_;
  double total_length_ = 0.0;
  std::unordered_map<int, int> position_;
};

/// Every simple directed path from every origin to every destination, ordered
/// lexicographically by road-id sequence. Throws if the network has a cycle or
/// if the origin or destination set is empty.
std::vector<Path> enumerate_paths(const RoadNetwork& net);

/// Index pairs of grid cells lying on roads common to both paths, aligned
/// cell by cell. Cell indices count cells along each path from its origin.
/// Requires grid_spacing to divide every road length on both paths.
std::vector<std::pair<int, int>> shared_cells(const Path& a, const Path& b,
                                              double grid_spacing);

/// True iff length is an integer multiple of spacing up to relative 1e-9.
bool divides_evenly(double spacing, double length);

}  // namespace mpt

#endif  // MPT_NETWORK_HPP
