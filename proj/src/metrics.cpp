#include "techlev/metrics.hpp"

#include "techlev/errors.hpp"

#include <cmath>

namespace techlev {

double technical_leverage(std::int64_t l_dir, std::int64_t l_trans,
                          std::int64_t l_std, std::int64_t l_own) {
  if (l_own == 0) throw DataError("leverage undefined for own size 0");
  return static_cast<double>(l_dir + l_trans + l_std) / static_cast<double>(l_own);
}

double direct_leverage(std::int64_t l_dir, std::int64_t l_own) {
  return technical_leverage(l_dir, 0, 0, l_own);
}

Velocity change_velocity(std::int64_t dep0, std::int64_t own0, std::int64_t dep1,
                         std::int64_t own1) {
  return Velocity{dep1 - dep0, own1 - own0};
}

double change_distance(std::int64_t delta_dep, std::int64_t delta_own) {
  return std::hypot(static_cast<double>(delta_dep), static_cast<double>(delta_own));
}

double change_direction(std::int64_t delta_dep, std::int64_t delta_own) {
  const double rho = change_distance(delta_dep, delta_own);
  if (rho == 0.0) return 0.0;
  constexpr double deg = 180.0 / 3.141592653589793238462643383279502884;
  double theta = std::acos(static_cast<double>(delta_dep) / rho) * deg;
  if (delta_own <= 0) theta = -theta;
  if (theta <= -45.0) theta += 360.0;
  if (theta == 0.0) theta = 0.0; // squash -0
  return theta;
}

namespace {

// membership in (lo, hi] with the angle reduced mod 360 into [lo, lo+360)
bool in_half_open(double theta, double lo, double hi) {
  double t = theta;
  while (t <= lo) t += 360.0;
  while (t > lo + 360.0) t -= 360.0;
  double h = hi;
  while (h <= lo) h += 360.0;
  return t <= h;
}

} // namespace

DirectionClass classify_direction(double theta) {
  DirectionClass c;
  const bool dep_dom = in_half_open(theta, 315.0, 45.0) || in_half_open(theta, 135.0, 225.0);
  c.dominance = dep_dom ? Dominance::dependency_dominant : Dominance::own_dominant;
  c.total_trend = in_half_open(theta, 315.0, 135.0) ? TotalTrend::increasing
                                                    : TotalTrend::decreasing;
  c.primary_direction = PrimaryDirection::mixed;
  const double axes[4] = {0.0, 90.0, 180.0, 270.0};
  const PrimaryDirection named[4] = {
      PrimaryDirection::dependency_adopting, PrimaryDirection::own_increasing,
      PrimaryDirection::dependency_removing, PrimaryDirection::own_removing};
  for (int i = 0; i < 4; ++i) {
    double d = std::fabs(theta - axes[i]);
    d = std::fmod(d, 360.0);
    if (d > 180.0) d = 360.0 - d;
    if (d <= 10.0) {
      c.primary_direction = named[i];
      break;
    }
  }
  return c;
}

const char* size_class_name(SizeClass c) {
  return c == SizeClass::small_medium ? "small_medium" : "large";
}

const char* primary_direction_name(PrimaryDirection d) {
  switch (d) {
    case PrimaryDirection::dependency_adopting: return "dependency_adopting";
    case PrimaryDirection::own_increasing: return "own_increasing";
    case PrimaryDirection::dependency_removing: return "dependency_removing";
    case PrimaryDirection::own_removing: return "own_removing";
    case PrimaryDirection::mixed: return "mixed";
  }
  return "mixed";
}

SizeClass classify_size(std::int64_t own_loc, std::int64_t threshold) {
  return own_loc <= threshold ? SizeClass::small_medium : SizeClass::large;
}

std::vector<ChangeRecord> build_change_records(const std::vector<ReleaseChain>& chains,
                                               std::int64_t size_threshold) {
  std::vector<ChangeRecord> out;
  for (const auto& chain : chains) {
    for (std::size_t i = 1; i < chain.instances.size(); ++i) {
      const LibraryInstance& from = chain.instances[i - 1];
      const LibraryInstance& to = chain.instances[i];
      if (!from.own_loc || !to.own_loc) {
        throw DataError("instance without resolved own size in chain " + chain.chain_id);
      }
      ChangeRecord rec;
      rec.chain_id = chain.chain_id;
      rec.gav_from = from.id;
      rec.gav_to = to.id;
      const Velocity v =
          change_velocity(from.dep_loc, *from.own_loc, to.dep_loc, *to.own_loc);
      rec.delta_dep = v.delta_dep;
      rec.delta_own = v.delta_own;
      rec.rho = change_distance(v.delta_dep, v.delta_own);
      rec.theta = change_direction(v.delta_dep, v.delta_own);
      rec.lambda_dir = direct_leverage(to.dep_loc, *to.own_loc);
      const PairIntervals pi = pair_intervals(chain, i - 1);
      rec.rel_interval = pi.rel_interval;
      rec.rel_interval_prev = pi.rel_interval_prev;
      rec.size_class = classify_size(*to.own_loc, size_threshold);
      rec.is_vuln = to.is_vuln();
      rec.own_loc = *to.own_loc;
      rec.dep_loc = to.dep_loc;
      out.push_back(std::move(rec));
    }
  }
  return out;
}

} // namespace techlev
