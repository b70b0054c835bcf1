#pragma once

#include <string>
#include <vector>

#include "bsc/family.hpp"

#include "json.hpp"

namespace bsc {

// Oriented cell model of the marked sphere ("curtain" model): the 2n+2 marked
// points sit on a line between midpoint vertices m_0..m_{2n+2}; poles N and S
// hang curtains to every midpoint; one back edge closes the equator. Faces are
// listed with their anticlockwise boundary walks, every edge appearing once in
// each direction.
struct MarkedSphereComplex {
    struct Edge {
        int tail = 0, head = 0;
        int voltage = 0;  // sheet jump crossing the primary dart left-to-right
        std::string name;
    };
    using Dart = std::pair<int, int>;  // (edge id, dir: 0 = primary, 1 = reversed)

    int n = 0;
    int nverts = 0;
    std::vector<std::string> vertex_names;
    std::vector<int> marked;  // vertex ids of p_1..p_{2n+2}
    std::vector<Edge> edges;
    std::vector<std::vector<Dart>> faces;
    std::vector<std::vector<Dart>> loops;  // gamma_{i,i+1} dart cycles, index i-1
    std::vector<std::vector<Dart>> arcs;   // l_i dart paths, index i-1

    static MarkedSphereComplex build(int n);

    int dart_tail(const Dart& d) const { return d.second == 0 ? edges[d.first].tail : edges[d.first].head; }
    int dart_head(const Dart& d) const { return d.second == 0 ? edges[d.first].head : edges[d.first].tail; }
    Dart phi_inv(const Dart& d) const;  // previous dart in the face walk
    int euler_characteristic() const { return nverts - int(edges.size()) + int(faces.size()); }

    // face index containing a dart
    int face_of(const Dart& d) const { return dface_[dart_id(d)].first; }
    static int dart_id(const Dart& d) { return d.first * 2 + d.second; }

  private:
    std::vector<std::pair<int, int>> dface_;  // dart id -> (face, position)
    void index_darts();
    void validate() const;
};

// closed 1-cycle in the cover, as signed lifted-edge traversals
struct LiftedCycle {
    std::vector<std::pair<int, int>> edges;  // (edge lift id, +-1)
};

// The k-fold cyclic branched cover of the marked sphere determined by the
// alternating +-1 branch voltages. Cells: lifted faces (f, l), lifted edges
// (e, l) labelled by the sheet of the primary dart, vertices = walk orbits of
// lifted darts. The deck transformation shifts sheets by one.
struct SurfaceComplex {
    MarkedSphereComplex base;
    int k = 0;
    FamilyParameters params;

    int nv = 0, ne = 0, nf = 0;
    std::vector<int> orbit;       // lifted dart id -> vertex id
    std::vector<int> vertex_rep;  // vertex id -> representative lifted dart
    std::vector<int> vertex_base; // vertex id -> base vertex
    std::vector<int> branch_vertices;  // over p_1..p_{2n+2}, in order

    // spanning tree (BFS from vertex 0, edge lifts in id order)
    std::vector<char> tree_edge;       // per edge lift
    std::vector<int> parent_vertex;    // -1 at root
    std::vector<int> parent_edge;      // edge lift id
    std::vector<int> parent_dir;       // +1: parent --edge--> child

    int lifted_dart_id(int edge, int dir, int sheet) const { return (edge * 2 + dir) * k + sheet; }
    int edge_lift_id(int edge, int sheet) const { return edge * k + sheet; }

    int edge_lift_tail(int edge_lift) const;
    int edge_lift_head(int edge_lift) const;
    // boundary of lifted face (f, l) as signed edge lifts, in walk order
    std::vector<std::pair<int, int>> face_lift_boundary(int face, int sheet) const;

    int deck_vertex(int v) const;
    int deck_edge_lift(int e) const { return (e / k) * k + (e % k + 1) % k; }
    LiftedCycle deck_cycle(const LiftedCycle& c) const;

    int euler_characteristic() const { return nv - ne + nf; }

    // lift of a closed dart path based at a non-branch vertex; each component
    // is returned with its wrap count (how many passes close it up)
    struct PathLift {
        LiftedCycle cycle;
        int start_vertex = 0;
        int wraps = 1;
    };
    std::vector<PathLift> lift_closed_path(const std::vector<MarkedSphereComplex::Dart>& path) const;

    nlohmann::json export_cells() const;
};

SurfaceComplex build_cover(const FamilyParameters& params);

// Lifts of the downstairs loop gamma_{i,i+1}: exactly k disjoint cycles,
// indexed by raw sheet label 0..k-1 with deck(component_l) = component_{l+1}.
// Throws if the label is not an adjacent-pair loop or the component count is
// not k (wrong-component-count report).
std::vector<LiftedCycle> lift_curve(const SurfaceComplex& cover, const CurveLabel& label);

struct GroupPresentation {
    int ngens = 0;
    std::vector<std::vector<int>> relators;       // signed 1-based generator indices
    std::vector<std::vector<int>> distinguished;  // e.g. lifted vanishing-cycle words
    std::vector<int> generator_edge;              // generator index-1 -> edge lift id
    std::vector<int> edge_generator;              // edge lift id -> generator (1-based) or 0
    int basepoint = 0;
};

// spanning-tree presentation of the fundamental group of the cover
GroupPresentation pi1_presentation(const SurfaceComplex& cover, int basepoint = 0);

// word of a closed edge path: non-tree letters in traversal order
std::vector<int> cycle_to_word(const SurfaceComplex& cover, const LiftedCycle& cycle,
                               const GroupPresentation& pres);

// generic cell-list snapshot for regression fixtures
struct CellComplexData {
    int nverts = 0;
    std::vector<std::pair<int, int>> edges;             // (tail, head)
    std::vector<std::vector<std::pair<int, int>>> faces;  // signed edge ids
    int euler_characteristic() const { return nverts - int(edges.size()) + int(faces.size()); }
    void validate() const;  // every edge used once per direction
};
CellComplexData import_cells(const nlohmann::json& j);

}  // namespace bsc
