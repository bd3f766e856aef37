#pragma once
// Flarb of a cubic plane graph along a closed curve given by the vertex set
// it encloses. Faces crossed by the curve are "C-faces"; C-face i lies
// between fleeq edges i and i+1.
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "flarb/planar_graph.hpp"

namespace flarb {

struct CurveSpec {
    std::vector<int> inside;
};

struct FleeqEdge {
    int half;     // inside -> outside
    int edge;
    int inside;
    int outside;
};

struct Fleeq {
    std::vector<FleeqEdge> edges;  // cyclic order along the curve
    std::vector<char> in_mask;     // indexed by vertex id
    std::vector<int> arc_vertices; // t for C-face i (inside vertices on its boundary)
    std::size_t inside_count = 0;
};

enum class FaceTag { Preserved, Augmented, Shrinking };
const char* face_tag_name(FaceTag t);

struct FaceClassification {
    std::vector<FaceTag> tags;        // per C-face
    std::vector<int> face_ids;        // per C-face, ids in the FaceTable used
    std::vector<int> size_before;     // per C-face
    std::vector<int> arc_vertices;    // per C-face
    std::vector<int> enclosed;        // face ids of B
    std::vector<int> enclosed_sizes;
    std::vector<int> inside_edges;    // both endpoints inside
    std::vector<int> preserved_edges; // sorted edge ids
    std::vector<int> nonpreserved_edges;
    int a = 0, s = 0, p = 0;
    bool shared_preserved_edge = false;  // two preserved faces share their inside edge
};

struct FlarbReport {
    int F = 0, B = 0, P = 0, a = 0, s = 0;
    int sigma = 0;
    std::uint64_t links = 0, cuts = 0;
    long long phi_before = 0, phi_after = 0;
    long long v_before = 0, v_after = 0;
    long long cap = 0;                 // ceil(sqrt(v_before))
    bool single_vertex = false;        // three fleeq edges at one vertex
    bool shared_preserved_edge = false;
    std::vector<FaceTag> tags;
    std::vector<int> face_before, face_after;  // per C-face, cyclic order
    std::vector<int> nonpreserved_edges;       // edge ids in the graph before the flarb
    std::vector<int> new_cycle;                // w_i, one per fleeq edge
    std::vector<int> removed_vertices;
    std::vector<int> created_vertices;

    std::uint64_t cost() const { return links + cuts; }
    long long lower_bound2() const { return F + B - P; }  // twice the lower bound
    long long upper_bound() const { return 4LL * F + 3LL * B - 4LL * P; }
};

Fleeq validate_flarbable(const PlaneGraph& g, const CurveSpec& c);
Fleeq validate_flarbable(const PlaneGraph& g, const CurveSpec& c, const FaceTable& faces);

FaceClassification classify(const PlaneGraph& g, const Fleeq& fleeq);
FaceClassification classify(const PlaneGraph& g, const Fleeq& fleeq, const FaceTable& faces);

FlarbReport execute_flarb(PlaneGraph& g, const CurveSpec& c, long long lambda = 16);

struct ShrinkageDetail {
    bool ok = true;            // literal inequality on every run
    int runs = 0;
    long long worst_deficit = 0;  // max over runs of ceil(s_run/2) - sum(|f| - |f'|), clipped at 0
};
ShrinkageDetail shrinkage_detail(const FlarbReport& r);
bool check_shrinkage(const FlarbReport& r);

const char* flarb_csv_header();
void write_flarb_csv_row(std::ostream& out, long long step, const FlarbReport& r);

}  // namespace flarb
