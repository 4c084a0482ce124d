/* Copyright 2026 The VesselTrace Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#pragma once

#include <cstdint>
#include <functional>

namespace vtrace {

/// Integer pixel coordinate. x grows rightward, y grows downward.
struct Pixel {
  int x = 0;
  int y = 0;

  friend bool operator==(const Pixel& a, const Pixel& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Pixel& a, const Pixel& b) { return !(a == b); }
  friend bool operator<(const Pixel& a, const Pixel& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

}  // namespace vtrace

template <>
struct std::hash<vtrace::Pixel> {
  size_t operator()(const vtrace::Pixel& p) const noexcept {
    return std::hash<int64_t>()((int64_t(p.x) << 32) ^ uint32_t(p.y));
  }
};
