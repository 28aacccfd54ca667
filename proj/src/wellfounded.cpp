#include "act/wellfounded.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <stdexcept>

namespace act {

ContractGraph build_prec(const TypingState& sigma) {
  ContractGraph g;
  g.nodes = sigma.order;
  for (const std::string& a : sigma.order) {
    std::set<std::string> preds;
    auto it = sigma.storage.find(a);
    if (it != sigma.storage.end()) {
      for (const auto& [x, st] : it->second) {
        if (st.is_contract() || st.is_contract_addr()) preds.insert(st.contract_name());
      }
    }
    g.edges[a] = std::vector<std::string>(preds.begin(), preds.end());
  }
  return g;
}

WfResult check_wf(const ContractGraph& g) {
  // Shortest cycle via BFS from each node back to itself.
  std::optional<std::vector<std::string>> best;
  for (const std::string& start : g.nodes) {
    std::map<std::string, std::string> parent;
    std::deque<std::string> queue;
    queue.push_back(start);
    std::set<std::string> seen{start};
    bool found = false;
    while (!queue.empty() && !found) {
      std::string cur = queue.front();
      queue.pop_front();
      auto it = g.edges.find(cur);
      if (it == g.edges.end()) continue;
      for (const std::string& nxt : it->second) {
        if (nxt == start) {
          std::vector<std::string> cyc{start};
          for (std::string c = cur; c != start; c = parent.at(c)) cyc.push_back(c);
          std::reverse(cyc.begin() + 1, cyc.end());
          if (!best || cyc.size() < best->size()) best = std::move(cyc);
          found = true;
          break;
        }
        if (seen.insert(nxt).second) {
          parent[nxt] = cur;
          queue.push_back(nxt);
        }
      }
    }
  }
  if (best) return WfResult{false, *best};
  return WfResult{true, {}};
}

namespace {

std::size_t len_rec(const TypingState& sigma, const std::string& contract,
                    std::map<std::string, std::size_t>& memo,
                    std::set<std::string>& in_progress) {
  if (auto it = memo.find(contract); it != memo.end()) return it->second;
  if (!in_progress.insert(contract).second)
    throw std::invalid_argument("len on a non-well-founded Sigma");
  std::size_t best = 0;
  auto it = sigma.storage.find(contract);
  if (it != sigma.storage.end()) {
    for (const auto& [x, st] : it->second) {
      if (st.is_contract() || st.is_contract_addr())
        best = std::max(best, 1 + len_rec(sigma, st.contract_name(), memo, in_progress));
    }
  }
  in_progress.erase(contract);
  memo[contract] = best;
  return best;
}

}  // namespace

std::size_t len(const TypingState& sigma, const std::string& contract) {
  std::map<std::string, std::size_t> memo;
  std::set<std::string> in_progress;
  return len_rec(sigma, contract, memo, in_progress);
}

std::size_t len(const TypingState& sigma, const SlotType& st) {
  if (st.is_contract() || st.is_contract_addr()) return len(sigma, st.contract_name());
  return 0;
}

std::string to_dot(const ContractGraph& g) {
  std::string out = "digraph prec {\n";
  for (const std::string& n : g.nodes) out += "  \"" + n + "\";\n";
  for (const auto& [a, preds] : g.edges)
    for (const std::string& b : preds) out += "  \"" + b + "\" -> \"" + a + "\";\n";
  out += "}\n";
  return out;
}

}  // namespace act
