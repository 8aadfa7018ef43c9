// Copyright 2026 The ergospin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <vector>

#include <nlohmann/json.hpp>

namespace ergospin {

/// A point of the integer lattice Z^nu.
class Site {
 public:
  Site() = default;
  explicit Site(std::vector<int> coords);
  Site(std::initializer_list<int> coords) : coords_(coords) {}

  static Site origin(int dim);
  /// Unit vector along \p axis.
  static Site unit(int dim, int axis);

  int dim() const { return static_cast<int>(coords_.size()); }
  int operator[](int axis) const { return coords_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& coords() const { return coords_; }

  Site operator+(const Site& other) const;
  Site operator-(const Site& other) const;
  Site operator-() const;

  auto operator<=>(const Site&) const = default;
  bool operator==(const Site&) const = default;

 private:
  std::vector<int> coords_;
};

/// Max-coordinate distance. Throws InputError on dimension mismatch.
int distance(const Site& a, const Site& b);

/// A finite set of sites kept in lexicographic order. The position of a site
/// in this order is its tensor-leg index in every operator on the volume.
class Volume {
 public:
  Volume() = default;
  /// Sorts the sites; throws InputError on duplicates or mixed dimensions.
  explicit Volume(std::vector<Site> sites);
  Volume(std::initializer_list<Site> sites) : Volume(std::vector<Site>(sites)) {}

  std::size_t size() const { return sites_.size(); }
  bool empty() const { return sites_.empty(); }
  /// Lattice dimension, or 0 for the empty volume.
  int dim() const { return sites_.empty() ? 0 : sites_.front().dim(); }

  const std::vector<Site>& sites() const { return sites_; }
  const Site& operator[](std::size_t i) const { return sites_[i]; }
  auto begin() const { return sites_.begin(); }
  auto end() const { return sites_.end(); }

  bool contains(const Site& s) const;
  std::optional<std::size_t> index_of(const Site& s) const;
  bool is_subset_of(const Volume& other) const;
  bool intersects(const Volume& other) const;

  Volume join(const Volume& other) const;
  Volume minus(const Volume& other) const;

  /// Largest pairwise distance (0 for a single site or the empty volume).
  int diameter() const;

  auto operator<=>(const Volume&) const = default;
  bool operator==(const Volume&) const = default;

 private:
  std::vector<Site> sites_;
};

/// Closed l-infinity ball b_center(r).
Volume ball(const Site& center, int r);
/// One-dimensional chain {start, ..., start + length - 1}.
Volume chain(int length, int start = 0);
/// Element-wise shift Z + x.
Volume translate(const Volume& v, const Site& x);
Volume symmetric_difference(const Volume& a, const Volume& b);

/// |b_0(r) \ b_0(r-1)| = (2r+1)^nu - (2r-1)^nu for r >= 1, and 1 for r = 0.
std::int64_t shell_size(int dim, int r);

/// max_{2 <= r <= r_max} |b_0(r) \ b_0(r-1)| (1+r)^{-(nu-1)}: a finite-range
/// witness for the hyper-regularity constant of Z^nu.
double shell_constant(int dim, int r_max);

/// Visits every site of b_center(r) in lexicographic order without
/// materialising the ball.
void for_each_in_ball(const Site& center, int r, const std::function<void(const Site&)>& visit);

/// Concentric boxes b_center(r_1) c b_center(r_2) c ... for strictly
/// increasing radii: a finite prefix of an increasing absorbing sequence.
class BoxSequence {
 public:
  BoxSequence(Site center, std::vector<int> radii);

  const Site& center() const { return center_; }
  const std::vector<int>& radii() const { return radii_; }
  std::size_t size() const { return radii_.size(); }
  Volume volume(std::size_t i) const { return ball(center_, radii_[i]); }
  std::vector<Volume> volumes() const;

 private:
  Site center_;
  std::vector<int> radii_;
};

void to_json(nlohmann::json& j, const Site& s);
void from_json(const nlohmann::json& j, Site& s);
/// Volumes serialise as sorted arrays of coordinate arrays.
void to_json(nlohmann::json& j, const Volume& v);
void from_json(const nlohmann::json& j, Volume& v);

}  // namespace ergospin
