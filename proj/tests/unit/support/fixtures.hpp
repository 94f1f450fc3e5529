#pragma once

#include "gic/iso.hpp"

namespace fixtures {

// Asymmetric 6-vertex graph (|Aut| = 1, checked by the oracle in tests).
inline gic::Graph rigid6() {
    gic::Graph g(6);
    g.set_edge(0, 2);
    g.set_edge(0, 3);
    g.set_edge(0, 5);
    g.set_edge(1, 2);
    g.set_edge(1, 4);
    g.set_edge(2, 3);
    return g;
}

inline gic::Graph triangle6() {
    gic::Graph g(6);
    g.set_edge(0, 1);
    g.set_edge(1, 2);
    g.set_edge(0, 2);
    return g;
}

// 4-cycle: |Aut| = 8 (dihedral).
inline gic::Graph square4() {
    gic::Graph g(4);
    g.set_edge(0, 1);
    g.set_edge(1, 2);
    g.set_edge(2, 3);
    g.set_edge(3, 0);
    return g;
}

inline gic::Graph path4() {
    gic::Graph g(4);
    g.set_edge(0, 1);
    g.set_edge(1, 2);
    g.set_edge(2, 3);
    return g;
}

}  // namespace fixtures
