#pragma once
// Halin family whose flarb reproduces the graph up to isomorphism while
// costing at least k links and cuts.
#include <vector>

#include "flarb/flarb_engine.hpp"
#include "flarb/planar_graph.hpp"

namespace flarb {

struct LowerBoundInstance {
    int k = 0;
    PlaneGraph graph;
    CurveSpec curve;
    int polygon = 0;  // leaves on the cycle, k(k+1)
};

// nu = 2k(k+1) - 2
long long lower_bound_vertex_count(int k);

LowerBoundInstance build_lower_bound(int k);

struct LowerBoundRound {
    FlarbReport report;
    bool isomorphic = false;
};

// Repeats the flarb `rounds` times, carrying the curve along an
// isomorphism to the original graph. Throws Internal when a round's result
// is not isomorphic (the curve can't be carried).
std::vector<LowerBoundRound> run_lower_bound_cycle(int k, int rounds);
std::vector<FlarbReport> run_cycle(int k, int rounds);

}  // namespace flarb
