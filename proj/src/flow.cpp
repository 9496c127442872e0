#include "csc/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

namespace csc {

int MaxFlow::add_node() {
  head_.push_back(-1);
  level_.push_back(0);
  it_.push_back(-1);
  return num_nodes() - 1;
}

int MaxFlow::add_arc(int from, int to, long long cap) {
  int id = static_cast<int>(arcs_.size());
  arcs_.push_back({to, head_[from], cap});
  head_[from] = id;
  arcs_.push_back({from, head_[to], 0});
  head_[to] = id + 1;
  orig_cap_.push_back(cap);
  from_.push_back(from);
  return id;
}

long long MaxFlow::flow_on(int arc) const { return orig_cap_[arc / 2] - arcs_[arc].cap; }

std::pair<int, int> MaxFlow::ends_of(int arc) const {
  return {from_[arc / 2], arcs_[arc].to};
}

bool MaxFlow::bfs(int s, int t) {
  std::fill(level_.begin(), level_.end(), -1);
  std::deque<int> q{s};
  level_[s] = 0;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int e = head_[v]; e != -1; e = arcs_[e].next)
      if (arcs_[e].cap > 0 && level_[arcs_[e].to] == -1) {
        level_[arcs_[e].to] = level_[v] + 1;
        q.push_back(arcs_[e].to);
      }
  }
  return level_[t] != -1;
}

long long MaxFlow::dfs(int v, int t, long long limit) {
  if (v == t || limit == 0) return limit;
  long long pushed = 0;
  for (int& e = it_[v]; e != -1; e = arcs_[e].next) {
    int to = arcs_[e].to;
    if (arcs_[e].cap > 0 && level_[to] == level_[v] + 1) {
      long long got = dfs(to, t, std::min(limit - pushed, arcs_[e].cap));
      if (got > 0) {
        arcs_[e].cap -= got;
        arcs_[e ^ 1].cap += got;
        pushed += got;
        if (pushed == limit) return pushed;
      }
    }
  }
  level_[v] = -1;
  return pushed;
}

long long MaxFlow::calc(int s, int t) {
  long long total = 0;
  while (bfs(s, t)) {
    it_ = head_;
    total += dfs(s, t, std::numeric_limits<long long>::max());
  }
  return total;
}

std::vector<char> MaxFlow::min_cut_side(int s) const {
  std::vector<char> vis(num_nodes(), 0);
  std::deque<int> q{s};
  vis[s] = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int e = head_[v]; e != -1; e = arcs_[e].next)
      if (arcs_[e].cap > 0 && !vis[arcs_[e].to]) {
        vis[arcs_[e].to] = 1;
        q.push_back(arcs_[e].to);
      }
  }
  return vis;
}

}  // namespace csc
