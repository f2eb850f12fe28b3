// Copyright 2026 The vastream Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vastream/cross_camera.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vastream/error.hpp"
#include "vastream/text.hpp"

namespace vastream {

namespace {

constexpr double kTimeEps = 1e-9;

bool in_window(double x, double t1, double t2) { return x >= t1 - kTimeEps && x <= t2 + kTimeEps; }

struct Arrival {
  double transit;
  int exit_dir;
};

std::vector<Arrival> arrivals(const TrajectoryLog& log, const std::string& source,
                              const std::string& target) {
  std::vector<Arrival> out;
  for (const auto& visits : log.by_object()) {
    for (std::size_t i = 0; i + 1 < visits.size(); ++i) {
      if (visits[i]->camera_id == source && visits[i + 1]->camera_id == target) {
        out.push_back({visits[i + 1]->enter_t - visits[i]->exit_t, visits[i]->exit_dir});
      }
    }
  }
  return out;
}

double fraction_in(std::span<const Arrival> a, double t1, double t2) {
  if (a.empty()) return 0.0;
  const auto n = std::count_if(a.begin(), a.end(),
                               [&](const Arrival& x) { return in_window(x.transit, t1, t2); });
  return static_cast<double>(n) / static_cast<double>(a.size());
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

TrajectoryLog::TrajectoryLog(std::vector<Visit> visits) : visits_(std::move(visits)) {
  std::map<std::string, std::vector<const Visit*>> objects;
  for (std::size_t i = 0; i < visits_.size(); ++i) {
    const Visit& v = visits_[i];
    const std::string where = "visit " + std::to_string(i + 1) + " (object " + v.object_id + ")";
    if (v.object_id.empty() || v.camera_id.empty()) throw InvalidArgument(where + ": empty id");
    if (!std::isfinite(v.enter_t) || !std::isfinite(v.exit_t) || v.enter_t > v.exit_t) {
      throw InvalidArgument(where + ": enter_t must not exceed exit_t");
    }
    if (v.exit_dir < 0 || v.exit_dir >= kSectors) {
      throw InvalidArgument(where + ": exit_dir must lie in 0..7");
    }
    auto& list = objects[v.object_id];
    if (!list.empty() && list.back()->enter_t > v.enter_t) {
      throw InvalidArgument(where + ": visits of an object must be time-ordered");
    }
    list.push_back(&v);
  }
  objects_.reserve(objects.size());
  for (auto& [id, list] : objects) objects_.push_back(std::move(list));
}

std::vector<std::string> TrajectoryLog::cameras() const {
  std::set<std::string> ids;
  for (const auto& v : visits_) ids.insert(v.camera_id);
  return {ids.begin(), ids.end()};
}

TrajectoryLog parse_trajectory_log(const std::string& text) {
  std::vector<Visit> visits;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_skippable(line)) continue;
    const auto f = text::split_csv(line);
    if (!header_seen && !f.empty() && f[0] == "object_id") {
      header_seen = true;
      continue;
    }
    if (f.size() != 5) throw ParseError("expected 'object_id,camera_id,enter_t,exit_t,exit_dir'", line_no);
    Visit v;
    v.object_id = std::string(f[0]);
    v.camera_id = std::string(f[1]);
    v.enter_t = text::parse_double(f[2], line_no);
    v.exit_t = text::parse_double(f[3], line_no);
    v.exit_dir = static_cast<int>(text::parse_int(f[4], line_no));
    if (v.object_id.empty() || v.camera_id.empty()) throw ParseError("empty id", line_no);
    if (v.enter_t > v.exit_t) throw ParseError("enter_t exceeds exit_t", line_no);
    if (v.exit_dir < 0 || v.exit_dir >= kSectors) throw ParseError("exit_dir must lie in 0..7", line_no);
    visits.push_back(std::move(v));
  }
  return TrajectoryLog(std::move(visits));
}

TrajectoryLog load_trajectory_log(const std::filesystem::path& path) {
  return parse_trajectory_log(text::read_file(path));
}

std::string format_trajectory_log(const TrajectoryLog& log) {
  std::string out = "object_id,camera_id,enter_t,exit_t,exit_dir\n";
  for (const auto& v : log.visits()) {
    out += v.object_id + ',' + v.camera_id + ',' + text::format_double(v.enter_t) + ',' +
           text::format_double(v.exit_t) + ',' + std::to_string(v.exit_dir) + '\n';
  }
  return out;
}

double spatial_correlation(const TrajectoryLog& log, const std::string& source,
                           const std::string& target) {
  std::size_t seen = 0;
  std::size_t reached = 0;
  for (const auto& visits : log.by_object()) {
    auto first = std::find_if(visits.begin(), visits.end(),
                              [&](const Visit* v) { return v->camera_id == source; });
    if (first == visits.end()) continue;
    ++seen;
    if (std::any_of(first + 1, visits.end(), [&](const Visit* v) { return v->camera_id == target; })) {
      ++reached;
    }
  }
  if (seen == 0) throw InvalidArgument("camera " + source + " does not appear in the log");
  return static_cast<double>(reached) / static_cast<double>(seen);
}

std::vector<double> transit_times(const TrajectoryLog& log, const std::string& source,
                                  const std::string& target) {
  std::vector<double> out;
  for (const auto& a : arrivals(log, source, target)) out.push_back(a.transit);
  return out;
}

double temporal_correlation(const TrajectoryLog& log, const std::string& source,
                            const std::string& target, double t1, double t2) {
  if (t1 > t2) throw InvalidArgument("window start exceeds its end");
  return fraction_in(arrivals(log, source, target), t1, t2);
}

void sector_exit_point(int sector, int rows, int cols, int& row, int& col) {
  if (rows <= 0 || cols <= 0) throw InvalidArgument("grid must be non-empty");
  if (sector < 0 || sector >= kSectors) throw InvalidArgument("sector must lie in 0..7");
  const double angle = sector * std::numbers::pi / 4.0;
  const double dx = std::cos(angle);  // along columns
  const double dy = std::sin(angle);  // along rows (image y grows downward)
  const double cy = (rows - 1) / 2.0;
  const double cx = (cols - 1) / 2.0;
  double t = std::numeric_limits<double>::infinity();
  if (std::abs(dx) > 1e-12) t = std::min(t, (dx > 0 ? cols - 1 - cx : cx) / std::abs(dx));
  if (std::abs(dy) > 1e-12) t = std::min(t, (dy > 0 ? rows - 1 - cy : cy) / std::abs(dy));
  row = std::clamp(static_cast<int>(std::floor(cy + t * dy + 0.5)), 0, rows - 1);
  col = std::clamp(static_cast<int>(std::floor(cx + t * dx + 0.5)), 0, cols - 1);
}

std::vector<ShareRule> select_sources(const TrajectoryLog& log, const std::string& target,
                                      const SelectOptions& options) {
  if (options.spatial_threshold < 0.0 || options.spatial_threshold > 1.0 ||
      options.temporal_threshold < 0.0 || options.temporal_threshold > 1.0) {
    throw InvalidArgument("thresholds must lie in [0, 1]");
  }
  if (!(options.window_step > 0.0)) throw InvalidArgument("window step must be positive");
  std::vector<ShareRule> rules;
  if (log.empty()) return rules;
  if (options.grid_rows <= 0 || options.grid_cols <= 0) {
    throw InvalidArgument("select_sources needs the source grid size");
  }
  const double s = options.window_step;
  for (const auto& source : log.cameras()) {
    if (source == target) continue;
    const auto arr = arrivals(log, source, target);
    if (arr.empty()) continue;
    const double spatial = spatial_correlation(log, source, target);
    if (spatial < options.spatial_threshold) continue;

    std::vector<double> transits;
    for (const auto& a : arr) transits.push_back(a.transit);
    const double m = median(transits);
    const auto [lo_it, hi_it] = std::minmax_element(transits.begin(), transits.end());
    const long long lo0 = static_cast<long long>(std::floor(m / s));
    const long long hi0 = static_cast<long long>(std::ceil(m / s));
    // The window covering every transit is reached after at most this many steps.
    const long long max_steps =
        static_cast<long long>(std::ceil((*hi_it - *lo_it) / s)) + (hi0 - lo0) + 2;

    double best_t = -1.0;
    long long best_lo = lo0;
    long long best_hi = hi0;
    for (long long n = 0; n <= max_steps; ++n) {
      best_t = -1.0;
      for (long long a = 0; a <= n; ++a) {
        const double t = fraction_in(arr, (lo0 - a) * s, (hi0 + n - a) * s);
        if (t > best_t) {
          best_t = t;
          best_lo = lo0 - a;
          best_hi = hi0 + n - a;
        }
      }
      if (best_t >= options.temporal_threshold - 1e-12) break;
    }
    if (best_t < options.temporal_threshold - 1e-12) continue;

    ShareRule rule;
    rule.source = source;
    rule.target = target;
    rule.t1 = best_lo * s;
    rule.t2 = best_hi * s;
    rule.spatial = spatial;
    rule.temporal = best_t;
    rule.arrivals = arr.size();
    double sum = 0.0;
    for (double t : transits) sum += t;
    rule.mean_transit = sum / static_cast<double>(transits.size());
    std::array<std::size_t, kSectors> votes{};
    for (const auto& a : arr) {
      if (in_window(a.transit, rule.t1, rule.t2)) ++votes[static_cast<std::size_t>(a.exit_dir)];
    }
    rule.direction = static_cast<int>(std::max_element(votes.begin(), votes.end()) - votes.begin());
    sector_exit_point(rule.direction, options.grid_rows, options.grid_cols, rule.exit_row,
                      rule.exit_col);
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<CorrelationEntry> correlation_matrix(const TrajectoryLog& log) {
  std::vector<CorrelationEntry> out;
  const auto cams = log.cameras();
  for (const auto& a : cams) {
    for (const auto& b : cams) {
      if (a == b) continue;
      CorrelationEntry e;
      e.source = a;
      e.target = b;
      e.spatial = spatial_correlation(log, a, b);
      const auto t = transit_times(log, a, b);
      e.arrivals = t.size();
      if (!t.empty()) {
        double sum = 0.0;
        for (double x : t) sum += x;
        e.mean_transit = sum / static_cast<double>(t.size());
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

std::string correlation_report_json(std::span<const CorrelationEntry> entries,
                                    std::span<const ShareRule> rules) {
  nlohmann::ordered_json j;
  j["pairs"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    j["pairs"].push_back({{"source", e.source},
                          {"target", e.target},
                          {"spatial", e.spatial},
                          {"mean_transit", e.mean_transit},
                          {"arrivals", e.arrivals}});
  }
  j["rules"] = nlohmann::ordered_json::array();
  for (const auto& r : rules) {
    j["rules"].push_back({{"source", r.source},
                          {"target", r.target},
                          {"t1", r.t1},
                          {"t2", r.t2},
                          {"exit_row", r.exit_row},
                          {"exit_col", r.exit_col},
                          {"direction", r.direction},
                          {"spatial", r.spatial},
                          {"temporal", r.temporal},
                          {"mean_transit", r.mean_transit},
                          {"arrivals", r.arrivals}});
  }
  return j.dump(2) + "\n";
}

MotionFeatureMap filter_map(const MotionFeatureMap& map, std::span<const std::int8_t> dominant,
                            const ShareRule& rule) {
  const int rows = map.height;
  const int cols = map.width;
  if (dominant.size() != map.values.size()) {
    throw InvalidArgument("direction grid does not match the map");
  }
  if (rule.exit_row < 0 || rule.exit_row >= rows || rule.exit_col < 0 || rule.exit_col >= cols) {
    throw InvalidArgument("exit point lies outside the grid");
  }
  // (X, Y) is the grid extent, used as the reference corner
  const double norm = std::hypot(rows - rule.exit_row, cols - rule.exit_col);
  MotionFeatureMap out = map;
  for (int x = 0; x < rows; ++x) {
    for (int y = 0; y < cols; ++y) {
      const std::size_t cell = static_cast<std::size_t>(x) * static_cast<std::size_t>(cols) +
                               static_cast<std::size_t>(y);
      if (dominant[cell] != rule.direction) {
        out.values[cell] = 0;
        continue;
      }
      const double factor =
          std::max(0.0, 1.0 - std::hypot(x - rule.exit_row, y - rule.exit_col) / norm);
      out.values[cell] =
          static_cast<std::uint8_t>(std::min(255.0, std::floor(map.values[cell] * factor + 0.5)));
    }
  }
  return out;
}

MotionFeatureMap aggregate_shared_maps(const MotionFeatureMap& target,
                                       std::span<const SharedMap> shared) {
  double total = 0.0;
  for (const auto& s : shared) {
    if (s.map.width != target.width || s.map.height != target.height) {
      throw InvalidArgument("shared map dimensions differ from the target map");
    }
    total += s.spatial * s.temporal;
  }
  if (shared.empty() || total <= 0.0) return target;
  MotionFeatureMap out = target;
  for (std::size_t c = 0; c < out.values.size(); ++c) {
    double v = target.values[c];
    for (const auto& s : shared) v += s.spatial * s.temporal / total * s.map.values[c];
    out.values[c] = static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
  }
  return out;
}

std::vector<MotionFeatureMap> shared_map_stream(std::span<const MotionFeatureMap> target,
                                                const MotionLog& source, const ShareRule& rule,
                                                int frames_per_chunk, double chunk_seconds,
                                                int sigma) {
  if (!(chunk_seconds > 0.0)) throw InvalidArgument("chunk length must be positive");
  const std::size_t n = target.size();
  const auto chunks = split_chunks(source.vectors, frames_per_chunk, n);
  std::vector<MotionFeatureMap> filtered;
  filtered.reserve(n);
  for (const auto& mvs : chunks) {
    const DegreeGrid grid = accumulate(mvs, source.frame_w, source.frame_h);
    filtered.push_back(filter_map(clip_scale(grid, source.fps, sigma), grid.dominant_directions(), rule));
  }
  std::vector<MotionFeatureMap> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<SharedMap> shared;
    for (std::size_t j = 0; j <= i; ++j) {
      const double gap = static_cast<double>(i - j) * chunk_seconds;
      if (in_window(gap, rule.t1, rule.t2)) shared.push_back({filtered[j], rule.spatial, rule.temporal});
    }
    out.push_back(aggregate_shared_maps(target[i], shared));
  }
  return out;
}

}  // namespace vastream
