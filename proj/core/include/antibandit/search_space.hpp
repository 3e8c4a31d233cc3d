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

#ifndef ANTIBANDIT_SEARCH_SPACE_HPP_
#define ANTIBANDIT_SEARCH_SPACE_HPP_

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "antibandit/operation.hpp"

namespace antibandit {

using BigInt = boost::multiprecision::cpp_int;

// Directed edge (from -> to) inside one cell. Node 0 is the cell input;
// nodes 1..M are the intermediate nodes.
struct EdgeId {
  int cell = 0;
  int from = 0;
  int to = 1;

  auto operator<=>(const EdgeId&) const = default;
};

constexpr int edges_per_cell(int nodes) { return nodes * (nodes + 1) / 2; }

// Position of (from, to) inside its cell, in canonical order: edges are
// grouped by destination node and sorted by source within a group. Walking a
// cell in this order applies every inbound edge of node j before any edge
// leaves node j.
constexpr int local_edge_index(int from, int to) { return to * (to - 1) / 2 + from; }

// A cell-based DAG search space: v cells with M intermediate nodes each, and
// an ordered candidate set on every edge. Values are immutable snapshots;
// pruning yields a new space.
class SearchSpace {
 public:
  // Throws ConfigError on v < 1, M < 1, or an empty or duplicated catalog.
  SearchSpace(int cells, int nodes, std::vector<OperationKind> catalog);

  int cells() const { return cells_; }
  int nodes() const { return nodes_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<EdgeId>& edges() const { return edges_; }
  const EdgeId& edge(std::size_t index) const { return edges_.at(index); }

  // Throws NotFoundError for an edge outside the space.
  std::size_t edge_index(const EdgeId& edge) const;

  // The catalog the space was built from, sorted by catalog index.
  const std::vector<OperationKind>& catalog() const { return catalog_; }
  // Position of `op` within catalog(); throws NotFoundError.
  std::size_t catalog_position(OperationKind op) const;

  std::span<const OperationKind> candidates(std::size_t edge) const {
    return candidates_.at(edge);
  }
  bool is_candidate(std::size_t edge, OperationKind op) const;

  // Common candidate-set size when every edge holds the same number of
  // operations, otherwise 0.
  std::size_t uniform_cardinality() const;

  // Copy with `op` removed from one edge. Throws NotFoundError if `op` is
  // not a candidate there and InvariantError if it is the last one.
  SearchSpace without(std::size_t edge, OperationKind op) const;

  bool operator==(const SearchSpace&) const = default;

 private:
  int cells_;
  int nodes_;
  std::vector<OperationKind> catalog_;
  std::vector<EdgeId> edges_;
  std::vector<std::vector<OperationKind>> candidates_;
};

// One chosen operation per edge, stored in the canonical edge order of the
// owning space.
class Genotype {
 public:
  Genotype() = default;
  Genotype(int cells, int nodes, std::vector<OperationKind> choices)
      : cells_(cells), nodes_(nodes), choices_(std::move(choices)) {}

  int cells() const { return cells_; }
  int nodes() const { return nodes_; }
  std::size_t size() const { return choices_.size(); }
  OperationKind operator[](std::size_t edge) const { return choices_[edge]; }
  OperationKind& operator[](std::size_t edge) { return choices_[edge]; }
  const std::vector<OperationKind>& choices() const { return choices_; }

  bool operator==(const Genotype&) const = default;
  // Lexicographic by catalog index in canonical edge order.
  std::strong_ordering operator<=>(const Genotype& other) const;

 private:
  int cells_ = 0;
  int nodes_ = 0;
  std::vector<OperationKind> choices_;
};

SearchSpace build_search_space(int cells, int nodes, std::vector<OperationKind> catalog);

// Product over edges of the candidate-set sizes.
BigInt space_size(const SearchSpace& space);

SearchSpace prune_operation(const SearchSpace& space, const EdgeId& edge, OperationKind op);

// True iff `genotype` has the space's layout and picks a current candidate on
// every edge.
bool validate_genotype(const SearchSpace& space, const Genotype& genotype);

// Genotype that picks catalog()[position] on every edge, or the edge's only
// remaining candidate when that op has been pruned there.
Genotype diagonal_genotype(const SearchSpace& space, std::size_t position);

}  // namespace antibandit

#endif  // ANTIBANDIT_SEARCH_SPACE_HPP_
