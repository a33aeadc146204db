#pragma once

#include "techlev/chains.hpp"
#include "techlev/corpus.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace techlev {

enum class SizeClass { small_medium, large }; // split at own size 100 KLoC

enum class PrimaryDirection {
  dependency_adopting, // around 0
  own_increasing,      // around 90
  dependency_removing, // around 180
  own_removing,        // around 270
  mixed
};
enum class Dominance { dependency_dominant, own_dominant };
enum class TotalTrend { increasing, decreasing };

struct DirectionClass {
  PrimaryDirection primary_direction = PrimaryDirection::mixed;
  Dominance dominance = Dominance::dependency_dominant;
  TotalTrend total_trend = TotalTrend::increasing;
};

struct ChangeRecord {
  std::string chain_id;
  VersionedCoordinate gav_from;
  VersionedCoordinate gav_to;
  std::int64_t delta_dep = 0;
  std::int64_t delta_own = 0;
  double rho = 0.0;
  double theta = 0.0; // degrees in (-45, 315]
  double lambda_dir = 0.0;
  std::int64_t rel_interval = 0;
  std::optional<std::int64_t> rel_interval_prev;
  SizeClass size_class = SizeClass::small_medium;
  bool is_vuln = false;
  std::int64_t own_loc = 0; // of the newer instance
  std::int64_t dep_loc = 0;
};

double technical_leverage(std::int64_t l_dir, std::int64_t l_trans,
                          std::int64_t l_std, std::int64_t l_own);
double direct_leverage(std::int64_t l_dir, std::int64_t l_own);

struct Velocity {
  std::int64_t delta_dep = 0;
  std::int64_t delta_own = 0;
};

// r0, r1 consecutive in one chain; deps measured as (dep_loc, own_loc) diffs
Velocity change_velocity(std::int64_t dep0, std::int64_t own0, std::int64_t dep1,
                         std::int64_t own1);

double change_distance(std::int64_t delta_dep, std::int64_t delta_own);

// polar angle in degrees, normalized to (-45, 315]; zero vector maps to 0
double change_direction(std::int64_t delta_dep, std::int64_t delta_own);

DirectionClass classify_direction(double theta);

const char* size_class_name(SizeClass c);
const char* primary_direction_name(PrimaryDirection d);

SizeClass classify_size(std::int64_t own_loc, std::int64_t threshold = 100000);

struct DepTotals {
  std::int64_t dep_loc = 0;   // direct third-party lines
  std::int64_t trans_loc = 0; // distinct transitive third-party lines beyond direct
};

// one record per consecutive pair in each chain; lambda_dir, size class and
// vulnerability flag come from the newer instance
std::vector<ChangeRecord> build_change_records(const std::vector<ReleaseChain>& chains,
                                               std::int64_t size_threshold = 100000);

} // namespace techlev
