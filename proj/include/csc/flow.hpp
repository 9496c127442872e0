#pragma once

#include <cstdint>
#include <vector>

namespace csc {

/// Dinic max flow with integer capacities. Arcs are added in pairs
/// (forward/reverse); after calc(), flow_on(arc) reads the integral flow of
/// the arc returned by add_arc.
class MaxFlow {
 public:
  explicit MaxFlow(int nodes) : head_(nodes, -1), level_(nodes), it_(nodes) {}

  int add_node();
  int num_nodes() const { return static_cast<int>(head_.size()); }

  /// Returns an arc handle for flow_on().
  int add_arc(int from, int to, long long cap);

  long long calc(int s, int t);

  long long flow_on(int arc) const;
  long long cap_of(int arc) const { return orig_cap_[arc / 2]; }
  std::pair<int, int> ends_of(int arc) const;

  /// Nodes reachable from s in the residual graph of the last calc();
  /// the source side of a minimum cut.
  std::vector<char> min_cut_side(int s) const;

 private:
  struct Arc {
    int to, next;
    long long cap;
  };
  std::vector<Arc> arcs_;
  std::vector<long long> orig_cap_;  // by arc pair
  std::vector<int> from_;            // by arc pair
  std::vector<int> head_, level_, it_;

  bool bfs(int s, int t);
  long long dfs(int v, int t, long long limit);
};

}  // namespace csc
