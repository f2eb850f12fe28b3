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

#include "vastream/trace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vastream/error.hpp"
#include "vastream/text.hpp"

namespace vastream {

NetworkTrace::NetworkTrace(std::vector<TraceSample> samples, double duration)
    : samples_(std::move(samples)) {
  if (samples_.empty()) throw InvalidArgument("trace has no samples");
  if (samples_.front().t != 0.0) throw InvalidArgument("trace must start at t = 0");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!(samples_[i].bandwidth > 0.0) || !std::isfinite(samples_[i].bandwidth)) {
      throw InvalidArgument("trace bandwidth must be positive (sample " + std::to_string(i) + ")");
    }
    if (i > 0 && !(samples_[i].t > samples_[i - 1].t)) {
      throw InvalidArgument("trace timestamps must increase strictly (sample " +
                            std::to_string(i) + ")");
    }
  }
  const double last_gap =
      samples_.size() > 1 ? samples_.back().t - samples_[samples_.size() - 2].t : 1.0;
  duration_ = duration > 0.0 ? duration : samples_.back().t + last_gap;
  if (!(duration_ > samples_.back().t)) {
    throw InvalidArgument("trace duration must exceed the last timestamp");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    cycle_bytes_ += samples_[i].bandwidth * (segment_end(i) - samples_[i].t);
  }
}

double NetworkTrace::min_bandwidth() const noexcept {
  double lo = samples_.empty() ? 0.0 : samples_.front().bandwidth;
  for (const auto& s : samples_) lo = std::min(lo, s.bandwidth);
  return lo;
}

double NetworkTrace::max_bandwidth() const noexcept {
  double hi = 0.0;
  for (const auto& s : samples_) hi = std::max(hi, s.bandwidth);
  return hi;
}

double NetworkTrace::mean_bandwidth() const noexcept {
  return duration_ > 0.0 ? cycle_bytes_ / duration_ : 0.0;
}

double NetworkTrace::segment_end(std::size_t i) const {
  return i + 1 < samples_.size() ? samples_[i + 1].t : duration_;
}

std::size_t NetworkTrace::segment_index(double wrapped_t) const {
  const auto it = std::upper_bound(samples_.begin(), samples_.end(), wrapped_t,
                                   [](double t, const TraceSample& s) { return t < s.t; });
  return static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - samples_.begin()) - 1));
}

namespace {

double wrap(double t, double period) {
  double w = std::fmod(t, period);
  if (w < 0.0) w += period;
  if (w >= period) w = 0.0;
  return w;
}

}  // namespace

double NetworkTrace::bandwidth_at(double t) const {
  return samples_[segment_index(wrap(t, duration_))].bandwidth;
}

double NetworkTrace::drain_time(double bytes, double start) const {
  if (samples_.empty()) throw InvalidArgument("empty trace");
  if (!(bytes > 0.0)) return 0.0;
  double pos = wrap(start, duration_);
  std::size_t i = segment_index(pos);
  double rem = bytes;
  double elapsed = 0.0;
  bool skipped_cycles = false;
  while (true) {
    const double end = segment_end(i);
    const double bw = samples_[i].bandwidth;
    const double cap = bw * (end - pos);
    if (cap >= rem) return elapsed + rem / bw;
    rem -= cap;
    elapsed += end - pos;
    if (++i == samples_.size()) {
      i = 0;
      pos = 0.0;
      if (!skipped_cycles && rem > cycle_bytes_) {
        double whole = std::floor(rem / cycle_bytes_);
        if (whole * cycle_bytes_ >= rem) whole -= 1.0;
        rem -= whole * cycle_bytes_;
        elapsed += whole * duration_;
        skipped_cycles = true;
      }
    } else {
      pos = end;
    }
  }
}

double NetworkTrace::transferred_bytes(double t0, double t1) const {
  if (t1 < t0 || t0 < 0.0) throw InvalidArgument("transferred_bytes needs 0 <= t0 <= t1");
  double total = 0.0;
  const double whole = std::floor((t1 - t0) / duration_);
  total += whole * cycle_bytes_;
  double remaining = (t1 - t0) - whole * duration_;
  double pos = wrap(t0, duration_);
  std::size_t i = segment_index(pos);
  while (remaining > 0.0) {
    const double span = std::min(segment_end(i) - pos, remaining);
    total += span * samples_[i].bandwidth;
    remaining -= span;
    if (++i == samples_.size()) {
      i = 0;
      pos = 0.0;
    } else {
      pos = samples_[i].t;
    }
  }
  return total;
}

NetworkTrace NetworkTrace::shifted(double offset) const {
  const double o = wrap(offset, duration_);
  if (o == 0.0) return *this;
  std::vector<double> cuts{0.0};
  for (const auto& s : samples_) {
    const double c = wrap(s.t - o, duration_);
    if (c > 0.0) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<TraceSample> out;
  for (double c : cuts) out.push_back({c, bandwidth_at(c + o)});
  return NetworkTrace(std::move(out), duration_);
}

NetworkTrace scale_trace(const NetworkTrace& trace, double lo, double hi) {
  if (!(lo < hi)) throw InvalidArgument("scale_trace needs lo < hi");
  const double mn = trace.min_bandwidth();
  const double mx = trace.max_bandwidth();
  std::vector<TraceSample> out = trace.samples();
  for (auto& s : out) {
    s.bandwidth = mx > mn ? lo + (s.bandwidth - mn) / (mx - mn) * (hi - lo) : 0.5 * (lo + hi);
  }
  return NetworkTrace(std::move(out), trace.duration());
}

NetworkTrace parse_trace(const std::string& text) {
  std::vector<TraceSample> samples;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::is_skippable(line)) continue;
    const auto fields = text::split_csv(line);
    if (fields.size() != 2) throw ParseError("expected 't,bandwidth'", line_no);
    const TraceSample s{text::parse_double(fields[0], line_no),
                        text::parse_double(fields[1], line_no)};
    if (!(s.bandwidth > 0.0)) throw ParseError("bandwidth must be positive", line_no);
    if (samples.empty() && s.t != 0.0) throw ParseError("trace must start at t = 0", line_no);
    if (!samples.empty() && !(s.t > samples.back().t)) {
      throw ParseError("timestamps must increase strictly", line_no);
    }
    samples.push_back(s);
  }
  if (samples.empty()) throw ParseError("trace file has no samples");
  return NetworkTrace(std::move(samples));
}

NetworkTrace load_trace(const std::filesystem::path& path) {
  return parse_trace(text::read_file(path));
}

std::string format_trace(const NetworkTrace& trace) {
  std::string out = "# t_seconds,bandwidth_bytes_per_sec\n";
  for (const auto& s : trace.samples()) {
    out += text::format_double(s.t);
    out += ',';
    out += text::format_double(s.bandwidth);
    out += '\n';
  }
  return out;
}

void save_trace(const NetworkTrace& trace, const std::filesystem::path& path) {
  text::write_file(path, format_trace(trace));
}

}  // namespace vastream
