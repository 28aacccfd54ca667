// Contract-reference well-foundedness and the `len` chain measure.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "act/typing.hpp"

namespace act {

struct ContractGraph {
  // edges[A] = contracts directly accessible from A's storage, i.e. every B
  // with B < A in the precedence relation.
  std::vector<std::string> nodes;
  std::map<std::string, std::vector<std::string>> edges;
};

ContractGraph build_prec(const TypingState& sigma);

struct WfResult {
  bool well_founded = false;
  std::vector<std::string> cycle;  // a shortest cycle when not well-founded
};

WfResult check_wf(const ContractGraph& g);

// Longest chain of contract references from a contract; requires check_wf.
std::size_t len(const TypingState& sigma, const std::string& contract);
std::size_t len(const TypingState& sigma, const SlotType& st);

// DOT rendering of the precedence graph.
std::string to_dot(const ContractGraph& g);

}  // namespace act
