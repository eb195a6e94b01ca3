// Copyright 2026 The nfpassoc Authors
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

#ifndef NFPASSOC_TYPES_HPP_
#define NFPASSOC_TYPES_HPP_

#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

namespace nfpassoc {

/// Dense row-major matrix. All per-link quantities (SINR, bandwidth, ...) are
/// stored as Grid<double> indexed (sc, nfp).
template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, fill) {
    assert(rows >= 0 && cols >= 0);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  T& operator()(int r, int c) {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }
  const T& operator()(int r, int c) const {
    assert(r >= 0 && r < rows_ && c >= 0 && c < cols_);
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  const std::vector<T>& data() const { return data_; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> data_;
};

/// Ground-plane position with height. SCs have z == 0, NFPs hover at the
/// configured altitude.
struct Position3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Distance in the ground plane, ignoring z.
inline double horizontal_distance(const Position3D& a, const Position3D& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace nfpassoc

#endif  // NFPASSOC_TYPES_HPP_
