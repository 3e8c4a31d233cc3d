// Copyright 2026 The antibandit Authors.
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

#include "antibandit/search_space.hpp"

#include <algorithm>
#include <string>

#include "antibandit/error.hpp"

namespace antibandit {

SearchSpace::SearchSpace(int cells, int nodes, std::vector<OperationKind> catalog)
    : cells_(cells), nodes_(nodes), catalog_(std::move(catalog)) {
  if (cells_ < 1) throw ConfigError("search space: cell count must be >= 1");
  if (nodes_ < 1) throw ConfigError("search space: node count must be >= 1");
  if (catalog_.empty()) throw ConfigError("search space: operation catalog is empty");
  std::sort(catalog_.begin(), catalog_.end());
  if (std::adjacent_find(catalog_.begin(), catalog_.end()) != catalog_.end()) {
    throw ConfigError("search space: operation catalog contains duplicates");
  }

  edges_.reserve(static_cast<std::size_t>(cells_ * edges_per_cell(nodes_)));
  for (int cell = 0; cell < cells_; ++cell) {
    for (int to = 1; to <= nodes_; ++to) {
      for (int from = 0; from < to; ++from) edges_.push_back({cell, from, to});
    }
  }
  candidates_.assign(edges_.size(), catalog_);
}

std::size_t SearchSpace::edge_index(const EdgeId& edge) const {
  if (edge.cell < 0 || edge.cell >= cells_ || edge.from < 0 || edge.to > nodes_ ||
      edge.from >= edge.to) {
    throw NotFoundError("edge (" + std::to_string(edge.cell) + ", " +
                        std::to_string(edge.from) + "->" + std::to_string(edge.to) +
                        ") is not part of the search space");
  }
  return static_cast<std::size_t>(edge.cell * edges_per_cell(nodes_) +
                                   local_edge_index(edge.from, edge.to));
}

std::size_t SearchSpace::catalog_position(OperationKind op) const {
  auto it = std::lower_bound(catalog_.begin(), catalog_.end(), op);
  if (it == catalog_.end() || *it != op) {
    throw NotFoundError("operation '" + std::string(op_name(op)) + "' is not in the catalog");
  }
  return static_cast<std::size_t>(it - catalog_.begin());
}

bool SearchSpace::is_candidate(std::size_t edge, OperationKind op) const {
  const auto& set = candidates_.at(edge);
  return std::binary_search(set.begin(), set.end(), op);
}

std::size_t SearchSpace::uniform_cardinality() const {
  const std::size_t k = candidates_.front().size();
  for (const auto& set : candidates_) {
    if (set.size() != k) return 0;
  }
  return k;
}

SearchSpace SearchSpace::without(std::size_t edge, OperationKind op) const {
  const auto& set = candidates_.at(edge);
  auto it = std::lower_bound(set.begin(), set.end(), op);
  if (it == set.end() || *it != op) {
    throw NotFoundError("operation '" + std::string(op_name(op)) +
                        "' is not a candidate on edge " + std::to_string(edge));
  }
  if (set.size() < 2) {
    throw InvariantError("cannot remove the last candidate of edge " + std::to_string(edge));
  }
  SearchSpace next = *this;
  auto& target = next.candidates_[edge];
  target.erase(target.begin() + (it - set.begin()));
  return next;
}

std::strong_ordering Genotype::operator<=>(const Genotype& other) const {
  if (auto c = cells_ <=> other.cells_; c != 0) return c;
  if (auto c = nodes_ <=> other.nodes_; c != 0) return c;
  return std::lexicographical_compare_three_way(choices_.begin(), choices_.end(),
                                                other.choices_.begin(), other.choices_.end());
}

SearchSpace build_search_space(int cells, int nodes, std::vector<OperationKind> catalog) {
  return SearchSpace(cells, nodes, std::move(catalog));
}

BigInt space_size(const SearchSpace& space) {
  BigInt size = 1;
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    size *= static_cast<unsigned>(space.candidates(e).size());
  }
  return size;
}

SearchSpace prune_operation(const SearchSpace& space, const EdgeId& edge, OperationKind op) {
  return space.without(space.edge_index(edge), op);
}

bool validate_genotype(const SearchSpace& space, const Genotype& genotype) {
  if (genotype.cells() != space.cells() || genotype.nodes() != space.nodes() ||
      genotype.size() != space.edge_count()) {
    return false;
  }
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    if (!space.is_candidate(e, genotype[e])) return false;
  }
  return true;
}

Genotype diagonal_genotype(const SearchSpace& space, std::size_t position) {
  const OperationKind op = space.catalog().at(position);
  std::vector<OperationKind> choices(space.edge_count());
  for (std::size_t e = 0; e < space.edge_count(); ++e) {
    choices[e] = space.is_candidate(e, op) ? op : space.candidates(e).front();
  }
  return Genotype(space.cells(), space.nodes(), std::move(choices));
}

}  // namespace antibandit
