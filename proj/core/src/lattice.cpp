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
#include "ergospin/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "ergospin/errors.hpp"

namespace ergospin {

namespace {

void require_same_dim(const Site& a, const Site& b) {
  if (a.dim() != b.dim()) {
    throw InputError("site dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
  }
}

std::int64_t ipow(std::int64_t base, int exp) {
  std::int64_t out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

}  // namespace

Site::Site(std::vector<int> coords) : coords_(std::move(coords)) {}

Site Site::origin(int dim) {
  if (dim < 1) throw InputError("lattice dimension must be >= 1");
  return Site(std::vector<int>(static_cast<std::size_t>(dim), 0));
}

Site Site::unit(int dim, int axis) {
  Site s = origin(dim);
  if (axis < 0 || axis >= dim) throw InputError("axis out of range");
  s.coords_[static_cast<std::size_t>(axis)] = 1;
  return s;
}

Site Site::operator+(const Site& other) const {
  require_same_dim(*this, other);
  std::vector<int> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += other.coords_[i];
  return Site(std::move(c));
}

Site Site::operator-(const Site& other) const {
  require_same_dim(*this, other);
  std::vector<int> c(coords_);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] -= other.coords_[i];
  return Site(std::move(c));
}

Site Site::operator-() const {
  std::vector<int> c(coords_);
  for (auto& v : c) v = -v;
  return Site(std::move(c));
}

int distance(const Site& a, const Site& b) {
  require_same_dim(a, b);
  int d = 0;
  for (int i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

Volume::Volume(std::vector<Site> sites) : sites_(std::move(sites)) {
  if (sites_.empty()) return;
  const int d = sites_.front().dim();
  for (const auto& s : sites_) {
    if (s.dim() != d) throw InputError("volume mixes sites of different dimension");
    if (d < 1) throw InputError("sites must have dimension >= 1");
  }
  std::sort(sites_.begin(), sites_.end());
  if (std::adjacent_find(sites_.begin(), sites_.end()) != sites_.end()) {
    throw InputError("volume contains duplicate sites");
  }
}

bool Volume::contains(const Site& s) const {
  return std::binary_search(sites_.begin(), sites_.end(), s);
}

std::optional<std::size_t> Volume::index_of(const Site& s) const {
  auto it = std::lower_bound(sites_.begin(), sites_.end(), s);
  if (it == sites_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - sites_.begin());
}

bool Volume::is_subset_of(const Volume& other) const {
  return std::includes(other.sites_.begin(), other.sites_.end(), sites_.begin(), sites_.end());
}

bool Volume::intersects(const Volume& other) const {
  auto a = sites_.begin();
  auto b = other.sites_.begin();
  while (a != sites_.end() && b != other.sites_.end()) {
    if (*a == *b) return true;
    if (*a < *b) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

Volume Volume::join(const Volume& other) const {
  if (!empty() && !other.empty() && dim() != other.dim()) {
    throw InputError("cannot join volumes of different dimension");
  }
  std::vector<Site> out;
  out.reserve(size() + other.size());
  std::set_union(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                 std::back_inserter(out));
  Volume v;
  v.sites_ = std::move(out);
  return v;
}

Volume Volume::minus(const Volume& other) const {
  std::vector<Site> out;
  std::set_difference(sites_.begin(), sites_.end(), other.sites_.begin(), other.sites_.end(),
                      std::back_inserter(out));
  Volume v;
  v.sites_ = std::move(out);
  return v;
}

int Volume::diameter() const {
  int d = 0;
  for (std::size_t i = 0; i < sites_.size(); ++i) {
    for (std::size_t j = i + 1; j < sites_.size(); ++j) {
      d = std::max(d, distance(sites_[i], sites_[j]));
    }
  }
  return d;
}

void for_each_in_ball(const Site& center, int r, const std::function<void(const Site&)>& visit) {
  if (r < 0) throw InputError("ball radius must be non-negative");
  const int d = center.dim();
  if (d < 1) throw InputError("ball center must have dimension >= 1");
  std::vector<int> c(center.coords());
  for (auto& v : c) v -= r;
  while (true) {
    visit(Site(c));
    int axis = d - 1;
    while (axis >= 0) {
      auto i = static_cast<std::size_t>(axis);
      if (c[i] < center[axis] + r) {
        ++c[i];
        break;
      }
      c[i] = center[axis] - r;
      --axis;
    }
    if (axis < 0) return;
  }
}

Volume ball(const Site& center, int r) {
  std::vector<Site> sites;
  sites.reserve(static_cast<std::size_t>(ipow(2 * r + 1, center.dim())));
  for_each_in_ball(center, r, [&](const Site& s) { sites.push_back(s); });
  return Volume(std::move(sites));
}

Volume chain(int length, int start) {
  if (length < 0) throw InputError("chain length must be non-negative");
  std::vector<Site> sites;
  for (int i = 0; i < length; ++i) sites.push_back(Site{start + i});
  return Volume(std::move(sites));
}

Volume translate(const Volume& v, const Site& x) {
  std::vector<Site> sites;
  sites.reserve(v.size());
  for (const auto& s : v) sites.push_back(s + x);
  return Volume(std::move(sites));
}

Volume symmetric_difference(const Volume& a, const Volume& b) {
  return a.minus(b).join(b.minus(a));
}

std::int64_t shell_size(int dim, int r) {
  if (dim < 1 || r < 0) throw InputError("shell_size needs dim >= 1 and r >= 0");
  if (r == 0) return 1;
  return ipow(2 * r + 1, dim) - ipow(2 * r - 1, dim);
}

double shell_constant(int dim, int r_max) {
  if (dim < 1) throw InputError("shell_constant needs dim >= 1");
  if (r_max < 2) throw InputError("shell_constant needs r_max >= 2");
  double best = 0.0;
  for (int r = 2; r <= r_max; ++r) {
    const double v = static_cast<double>(shell_size(dim, r)) * std::pow(1.0 + r, -(dim - 1));
    best = std::max(best, v);
  }
  return best;
}

BoxSequence::BoxSequence(Site center, std::vector<int> radii)
    : center_(std::move(center)), radii_(std::move(radii)) {
  if (radii_.empty()) throw InputError("box sequence needs at least one radius");
  if (radii_.front() < 0) throw InputError("box radii must be non-negative");
  for (std::size_t i = 1; i < radii_.size(); ++i) {
    if (radii_[i] <= radii_[i - 1]) throw InputError("box radii must be strictly increasing");
  }
}

std::vector<Volume> BoxSequence::volumes() const {
  std::vector<Volume> out;
  out.reserve(radii_.size());
  for (std::size_t i = 0; i < radii_.size(); ++i) out.push_back(volume(i));
  return out;
}

void to_json(nlohmann::json& j, const Site& s) { j = s.coords(); }

void from_json(const nlohmann::json& j, Site& s) {
  if (!j.is_array()) throw InputError("site must be an array of integers");
  s = Site(j.get<std::vector<int>>());
}

void to_json(nlohmann::json& j, const Volume& v) {
  j = nlohmann::json::array();
  for (const auto& s : v) j.push_back(s.coords());
}

void from_json(const nlohmann::json& j, Volume& v) {
  if (!j.is_array()) throw InputError("volume must be an array of coordinate arrays");
  std::vector<Site> sites;
  for (const auto& e : j) sites.push_back(e.get<Site>());
  v = Volume(std::move(sites));
}

}  // namespace ergospin
