#pragma once

// Independent oracle for the one-dimensional surgery effect table, by
// explicit cut-and-reglue enumeration of oriented segments.
//
// A 1-manifold is a set of arcs with a successor pointer: next[a] = arc
// following a across a junction, or -1 when a ends at a boundary point.
// Arcs with no predecessor start at a boundary point. Marked points are
// junctions between a designated incoming arc and outgoing arc.
//
// Passing an index-1 point reconnects the two strands through the saddle:
// with coherent orientations the incoming strand at one marked point
// continues into the outgoing strand at the other,
//     next[in_p] = out_q,   next[in_q] = out_p.
// Everything the oracle claims about component counts and shapes follows
// from walking the successor pointers after this splice.

#include <map>
#include <set>
#include <vector>

namespace segment_oracle {

struct ArcManifold {
  // next[a] = successor arc, -1 at a boundary endpoint
  std::vector<int> next;
  std::set<int> starts;  // arcs beginning at a boundary endpoint

  int add_arc(bool starts_at_boundary) {
    next.push_back(-1);
    int id = static_cast<int>(next.size()) - 1;
    if (starts_at_boundary) starts.insert(id);
    return id;
  }

  // circle subdivided into m arcs (m >= 1); returns the arc ids
  std::vector<int> add_circle(int m) {
    std::vector<int> arcs;
    for (int i = 0; i < m; ++i) arcs.push_back(add_arc(false));
    for (int i = 0; i < m; ++i) next[arcs[i]] = arcs[(i + 1) % m];
    return arcs;
  }

  // interval subdivided into m arcs; arcs[0] starts and arcs[m-1] ends at
  // the two boundary points
  std::vector<int> add_interval(int m) {
    std::vector<int> arcs;
    for (int i = 0; i < m; ++i) arcs.push_back(add_arc(i == 0));
    for (int i = 0; i + 1 < m; ++i) next[arcs[i]] = arcs[i + 1];
    return arcs;
  }

  // saddle at two marked points, each given as (incoming arc, outgoing arc)
  void splice(std::pair<int, int> p, std::pair<int, int> q) {
    next[p.first] = q.second;
    next[q.first] = p.second;
  }

  // join two boundary endpoints: the end of arc a continues into arc b
  // (which must begin at a boundary point)
  void join_ends(int a, int b) {
    next[a] = b;
    starts.erase(b);
  }

  // remove an open arc; its neighbours acquire boundary endpoints
  void remove_arc(int a) {
    for (int i = 0; i < static_cast<int>(next.size()); ++i)
      if (next[i] == a) next[i] = -1;
    if (next[a] != -1) starts.insert(next[a]);
    next[a] = -2;  // tombstone
    starts.erase(a);
  }

  struct Census {
    int intervals = 0;
    int circles = 0;
  };

  Census components() const {
    Census c;
    std::set<int> seen;
    for (int s : starts) {
      if (seen.count(s)) continue;
      for (int a = s; a != -1; a = next[a]) seen.insert(a);
      ++c.intervals;
    }
    for (int a = 0; a < static_cast<int>(next.size()); ++a) {
      if (seen.count(a) || next[a] == -2) continue;
      for (int b = a; !seen.count(b); b = next[b]) seen.insert(b);
      ++c.circles;
    }
    return c;
  }
};

}  // namespace segment_oracle
