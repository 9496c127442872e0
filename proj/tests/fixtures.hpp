#pragma once

#include "csc/core.hpp"

namespace fixtures {

// Two players, two disjoint singleton configurations. Perfectly matchable.
inline csc::Hypergraph t0() {
  return csc::make_hypergraph({"p1", "p2"}, {"r1", "r2"},
                              {{"p1", {"r1"}}, {"p2", {"r2"}}});
}

// Two players, four pairwise-overlapping two-resource configurations:
//   C0 = p1:{r1,r2}  C1 = p1:{r3,r4}  C2 = p2:{r1,r3}  C3 = p2:{r2,r4}
// Any selection shares a resource, so the optimum alpha is 2.
inline csc::Hypergraph t1() {
  return csc::make_hypergraph({"p1", "p2"}, {"r1", "r2", "r3", "r4"},
                              {{"p1", {"r1", "r2"}},
                               {"p1", {"r3", "r4"}},
                               {"p2", {"r1", "r3"}},
                               {"p2", {"r2", "r4"}}});
}

}  // namespace fixtures
