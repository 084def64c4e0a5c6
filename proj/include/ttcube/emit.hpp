#pragma once

#include "ttcube/cubulation.hpp"
#include "ttcube/dynamics.hpp"
#include "ttcube/graph_map.hpp"
#include "ttcube/leafspace.hpp"
#include "ttcube/mapping_torus.hpp"
#include "ttcube/perron.hpp"
#include "ttcube/walls.hpp"

#include <string>

namespace ttc {

/// Everything `analyze` reports, with deterministic field order.
struct AnalysisReport {
  std::vector<std::string> violations;
  bool valid = false;
  // The fields below are only populated for valid maps.
  TrainTrackVerdict train_track;
  bool irreducible = false;
  std::vector<bool> expanding;
  TransitionMatrix matrix;
  bool perron_available = false;
  PerronData perron;
  double expansion_residual = 0.0;
  int expansion_depth = 8;
};

AnalysisReport analyze(const GraphMap &m);

std::string analysis_json(const GraphMap &m, const AnalysisReport &r);

std::string level_json(const GraphMap &m, const Level &lv);
std::string level_dot(const GraphMap &m, const Level &lv);

std::string busts_json(const GraphMap &m, const BustSystem &bs);

std::string wall_json(const GraphMap &m, const WallGraph &w);
std::string wall_dot(const GraphMap &m, const WallGraph &w);
std::string wall_check_json(const CheckReport &rep);

std::string approximation_json(const GraphMap &m, const WallApproximation &a);
std::string approximation_dot(const GraphMap &m, const WallApproximation &a);

std::string dmetric_json(const GraphMap &m, const LeafDistanceEstimate &est);
std::string dmetric_csv(const LeafDistanceEstimate &est);

std::string periodic_json(const GraphMap &m, EdgeId e, int L,
                          const PeriodicPoints &pts);

Wallspace wallspace_from_json(const std::string &text);
std::string wallspace_json(const Wallspace &ws);
std::string skeleton_json(const Wallspace &ws, const CubeSkeleton &sk);
std::string skeleton_dot(const CubeSkeleton &sk);

std::string torus_json(const GraphMap &m, const TorusComplex &tc);
std::string presentation_json(const Presentation &p);

} // namespace ttc
