// core/include/protosed/interval.hpp
//
// Copyright 2026 The protosed Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PROTOSED_INTERVAL_HPP_
#define PROTOSED_INTERVAL_HPP_

namespace protosed {

// Time interval in seconds, [start_s, end_s).
struct Interval {
  double start_s = 0.0;
  double end_s = 0.0;
  double duration() const { return end_s - start_s; }
};

inline bool overlaps(const Interval& a, const Interval& b) {
  return a.start_s < b.end_s && b.start_s < a.end_s;
}

}  // namespace protosed

#endif  // PROTOSED_INTERVAL_HPP_
