#include "bsc/cover.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace bsc {

namespace {

// edge layout: la_i, lb_i interleaved for i = 1..2n+2, then va_0..va_{2n+2},
// then vb_0..vb_{2n+2}, then z
struct EdgeIds {
    int n;
    int la(int i) const { return 2 * (i - 1); }
    int lb(int i) const { return 2 * (i - 1) + 1; }
    int va(int i) const { return 2 * (2 * n + 2) + i; }
    int vb(int i) const { return 2 * (2 * n + 2) + (2 * n + 3) + i; }
    int z() const { return 2 * (2 * n + 2) + 2 * (2 * n + 3); }
};

}  // namespace

MarkedSphereComplex::Dart MarkedSphereComplex::phi_inv(const Dart& d) const {
    auto [f, pos] = dface_[dart_id(d)];
    const auto& walk = faces[f];
    return walk[(pos + walk.size() - 1) % walk.size()];
}

void MarkedSphereComplex::index_darts() {
    dface_.assign(edges.size() * 2, {-1, -1});
    for (int f = 0; f < int(faces.size()); ++f)
        for (int p = 0; p < int(faces[f].size()); ++p) {
            int id = dart_id(faces[f][p]);
            check(dface_[id].first < 0, "dart used by two face walks");
            dface_[id] = {f, p};
        }
    for (const auto& df : dface_) check(df.first >= 0, "dart missing from face walks");
}

void MarkedSphereComplex::validate() const {
    for (const auto& walk : faces)
        for (size_t p = 0; p < walk.size(); ++p)
            check(dart_head(walk[p]) == dart_tail(walk[(p + 1) % walk.size()]),
                  "face walk is not a closed path");
    check(euler_characteristic() == 2, "marked sphere must have Euler characteristic 2");
}

MarkedSphereComplex MarkedSphereComplex::build(int n) {
    if (n < 1) throw ValueError("marked sphere needs n >= 1");
    MarkedSphereComplex c;
    c.n = n;
    int m = 2 * n + 2;
    // vertices: N, S, m_0..m_{2n+2}, p_1..p_{2n+2}
    c.vertex_names = {"N", "S"};
    int mv = 2;                       // m_i vertex id = mv + i
    for (int i = 0; i <= m; ++i) c.vertex_names.push_back("m" + std::to_string(i));
    int pv = mv + m + 1;              // p_i vertex id = pv + i - 1
    for (int i = 1; i <= m; ++i) {
        c.vertex_names.push_back("p" + std::to_string(i));
        c.marked.push_back(pv + i - 1);
    }
    c.nverts = int(c.vertex_names.size());

    EdgeIds ids{n};
    c.edges.resize(ids.z() + 1);
    for (int i = 1; i <= m; ++i) {
        // the slit between p_{2j-1} and p_{2j} carries the sheet jump
        c.edges[ids.la(i)] = {mv + i - 1, pv + i - 1, i % 2 == 0 ? -1 : 0, "la" + std::to_string(i)};
        c.edges[ids.lb(i)] = {pv + i - 1, mv + i, i % 2 == 1 ? -1 : 0, "lb" + std::to_string(i)};
    }
    for (int i = 0; i <= m; ++i) {
        c.edges[ids.va(i)] = {0, mv + i, 0, "va" + std::to_string(i)};
        c.edges[ids.vb(i)] = {mv + i, 1, 0, "vb" + std::to_string(i)};
    }
    c.edges[ids.z()] = {mv + m, mv + 0, 0, "z"};

    for (int i = 1; i <= m; ++i)
        c.faces.push_back({{ids.va(i - 1), 0}, {ids.la(i), 0}, {ids.lb(i), 0}, {ids.va(i), 1}});
    c.faces.push_back({{ids.va(m), 0}, {ids.z(), 0}, {ids.va(0), 1}});
    for (int i = 1; i <= m; ++i)
        c.faces.push_back({{ids.vb(i), 1}, {ids.lb(i), 1}, {ids.la(i), 1}, {ids.vb(i - 1), 0}});
    c.faces.push_back({{ids.vb(0), 1}, {ids.z(), 1}, {ids.vb(m), 0}});

    for (int i = 1; i <= 2 * n + 1; ++i)
        c.loops.push_back({{ids.va(i + 1), 0}, {ids.vb(i + 1), 0}, {ids.vb(i - 1), 1}, {ids.va(i - 1), 1}});
    for (int i = 1; i <= 2 * n + 1; ++i)
        c.arcs.push_back({{ids.lb(i), 0}, {ids.la(i + 1), 0}});

    c.index_darts();
    c.validate();
    return c;
}

int SurfaceComplex::edge_lift_tail(int edge_lift) const {
    int e = edge_lift / k, l = edge_lift % k;
    return orbit[lifted_dart_id(e, 0, l)];
}

int SurfaceComplex::edge_lift_head(int edge_lift) const {
    int e = edge_lift / k, l = edge_lift % k;
    int beta = base.edges[e].voltage;
    return orbit[lifted_dart_id(e, 1, ((l + beta) % k + k) % k)];
}

std::vector<std::pair<int, int>> SurfaceComplex::face_lift_boundary(int face, int sheet) const {
    std::vector<std::pair<int, int>> out;
    out.reserve(base.faces[face].size());
    for (const auto& d : base.faces[face]) {
        int beta = base.edges[d.first].voltage;
        if (d.second == 0)
            out.push_back({edge_lift_id(d.first, sheet), 1});
        else
            out.push_back({edge_lift_id(d.first, ((sheet - beta) % k + k) % k), -1});
    }
    return out;
}

int SurfaceComplex::deck_vertex(int v) const {
    int d = vertex_rep[v];
    int sheet = d % k;
    return orbit[d - sheet + (sheet + 1) % k];
}

LiftedCycle SurfaceComplex::deck_cycle(const LiftedCycle& c) const {
    LiftedCycle out;
    out.edges.reserve(c.edges.size());
    for (auto [e, s] : c.edges) out.edges.push_back({deck_edge_lift(e), s});
    return out;
}

namespace {

// next lifted dart around the tail vertex: theta'(phi'^{-1}(d))
int sigma_lift(const SurfaceComplex& sc, int dl) {
    int k = sc.k;
    int sheet = dl % k;
    int dart = dl / k;
    MarkedSphereComplex::Dart prev = sc.base.phi_inv({dart / 2, dart % 2});
    int beta = sc.base.edges[prev.first].voltage;
    // theta' on (prev, sheet)
    if (prev.second == 0)
        return sc.lifted_dart_id(prev.first, 1, ((sheet + beta) % k + k) % k);
    return sc.lifted_dart_id(prev.first, 0, ((sheet - beta) % k + k) % k);
}

int theta_lift(const SurfaceComplex& sc, int dl) {
    int k = sc.k;
    int sheet = dl % k;
    int dart = dl / k;
    int e = dart / 2, dir = dart % 2;
    int beta = sc.base.edges[e].voltage;
    if (dir == 0) return sc.lifted_dart_id(e, 1, ((sheet + beta) % k + k) % k);
    return sc.lifted_dart_id(e, 0, ((sheet - beta) % k + k) % k);
}

int base_tail_of_lift(const SurfaceComplex& sc, int dl) {
    int dart = dl / sc.k;
    return sc.base.dart_tail({dart / 2, dart % 2});
}

}  // namespace

SurfaceComplex build_cover(const FamilyParameters& params) {
    params.validate();
    SurfaceComplex sc;
    sc.params = params;
    sc.base = MarkedSphereComplex::build(params.n);
    sc.k = params.k;
    int k = sc.k;
    int E = int(sc.base.edges.size());
    int nd = 2 * E * k;

    sc.orbit.assign(nd, -1);
    for (int d0 = 0; d0 < nd; ++d0) {
        if (sc.orbit[d0] >= 0) continue;
        int v = int(sc.vertex_rep.size());
        sc.vertex_rep.push_back(d0);
        sc.vertex_base.push_back(base_tail_of_lift(sc, d0));
        int d = d0;
        do {
            check(sc.orbit[d] < 0, "orbit walk revisited a dart");
            sc.orbit[d] = v;
            check(base_tail_of_lift(sc, d) == sc.vertex_base[v], "orbit mixes base vertices");
            d = sigma_lift(sc, d);
        } while (d != d0);
    }
    sc.nv = int(sc.vertex_rep.size());
    sc.ne = E * k;
    sc.nf = int(sc.base.faces.size()) * k;

    int n = params.n, g = params.genus();
    check(sc.euler_characteristic() == 2 - 2 * g, "cover Euler characteristic is wrong");
    check(sc.euler_characteristic() == k * 2 - (2 * n + 2) * (k - 1),
          "Riemann-Hurwitz count is violated");

    // deck transformation: order exactly k, fixed points exactly the branch set
    std::map<int, int> fixed_over;  // base vertex -> lifted vertex
    for (int v = 0; v < sc.nv; ++v) {
        int w = v;
        int j = 0;
        do {
            w = sc.deck_vertex(w);
            ++j;
        } while (w != v && j <= k);
        check(j == k || j == 1, "deck orbit size must be 1 or k");
        if (j == 1) {
            check(fixed_over.emplace(sc.vertex_base[v], v).second, "duplicate fixed vertex over a branch point");
        }
    }
    check(int(fixed_over.size()) == 2 * n + 2, "wrong number of deck-fixed vertices");
    for (int p : sc.base.marked) {
        auto it = fixed_over.find(p);
        check(it != fixed_over.end(), "branch point has no fixed vertex");
        sc.branch_vertices.push_back(it->second);
    }

    // quotient check: lift counts per base cell, and incidences collapse
    for (int e = 0; e < E; ++e)
        for (int l = 0; l < k; ++l) {
            int el = sc.edge_lift_id(e, l);
            check(sc.vertex_base[sc.edge_lift_tail(el)] == sc.base.edges[e].tail &&
                      sc.vertex_base[sc.edge_lift_head(el)] == sc.base.edges[e].head,
                  "lifted edge does not project onto its base edge");
        }

    // every adjacent-pair loop lifts to k components (balanced voltage check)
    for (const auto& loop : sc.base.loops) {
        auto lifts = sc.lift_closed_path(loop);
        check(int(lifts.size()) == k, "adjacent-pair loop must lift to k components");
    }

    // spanning tree: BFS from vertex 0, edge lifts in id order
    std::vector<std::vector<std::tuple<int, int, int>>> adj(sc.nv);  // (edge lift, other vertex, dir)
    for (int el = 0; el < sc.ne; ++el) {
        int t = sc.edge_lift_tail(el), h = sc.edge_lift_head(el);
        adj[t].push_back({el, h, 1});
        adj[h].push_back({el, t, -1});
    }
    for (auto& v : adj) std::sort(v.begin(), v.end());
    sc.tree_edge.assign(sc.ne, 0);
    sc.parent_vertex.assign(sc.nv, -2);
    sc.parent_edge.assign(sc.nv, -1);
    sc.parent_dir.assign(sc.nv, 0);
    std::deque<int> queue{0};
    sc.parent_vertex[0] = -1;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (auto [el, w, dir] : adj[v]) {
            if (sc.parent_vertex[w] != -2) continue;
            sc.parent_vertex[w] = v;
            sc.parent_edge[w] = el;
            sc.parent_dir[w] = dir;
            sc.tree_edge[el] = 1;
            queue.push_back(w);
        }
    }
    for (int v = 0; v < sc.nv; ++v) check(sc.parent_vertex[v] != -2, "cover is disconnected");
    return sc;
}

std::vector<SurfaceComplex::PathLift> SurfaceComplex::lift_closed_path(
    const std::vector<MarkedSphereComplex::Dart>& path) const {
    check(!path.empty(), "empty path");
    check(base.dart_head(path.back()) == base.dart_tail(path.front()), "path is not closed");
    for (size_t p = 0; p + 1 < path.size(); ++p)
        check(base.dart_head(path[p]) == base.dart_tail(path[p + 1]), "path is not continuous");

    std::vector<PathLift> out;
    std::set<int> used_starts;
    for (int l0 = 0; l0 < k; ++l0) {
        int start = orbit[lifted_dart_id(path[0].first, path[0].second, l0)];
        if (used_starts.count(start)) continue;
        used_starts.insert(start);
        PathLift lift;
        lift.start_vertex = start;
        int cur = start;
        int wraps = 0;
        do {
            used_starts.insert(cur);  // wrap boundaries are alternative starts of this component
            for (const auto& d : path) {
                // unique lifted dart over d with tail `cur`
                int found = -1;
                for (int l = 0; l < k; ++l) {
                    int dl = lifted_dart_id(d.first, d.second, l);
                    if (orbit[dl] == cur) {
                        check(found < 0, "path passes through a branch vertex");
                        found = l;
                    }
                }
                check(found >= 0, "path lift lost continuity");
                int dl = lifted_dart_id(d.first, d.second, found);
                int beta = base.edges[d.first].voltage;
                if (d.second == 0)
                    lift.cycle.edges.push_back({edge_lift_id(d.first, found), 1});
                else
                    lift.cycle.edges.push_back({edge_lift_id(d.first, ((found - beta) % k + k) % k), -1});
                cur = orbit[theta_lift(*this, dl)];
            }
            ++wraps;
        } while (cur != start && wraps <= k);
        check(cur == start, "path lift failed to close");
        lift.wraps = wraps;
        out.push_back(std::move(lift));
    }
    return out;
}

std::vector<LiftedCycle> lift_curve(const SurfaceComplex& cover, const CurveLabel& label) {
    if (label.kind != CurveLabel::Kind::GammaDown)
        throw ValueError("lift_curve expects a downstairs adjacent-pair loop label");
    if (label.i < 1 || label.i > 2 * cover.params.n + 1) throw ValueError("loop index out of range");
    const auto& path = cover.base.loops[label.i - 1];
    auto lifts = cover.lift_closed_path(path);
    if (int(lifts.size()) != cover.k)
        throw ValueError("wrong component count: loop lifts to " + std::to_string(lifts.size()) +
                         " components, expected " + std::to_string(cover.k));
    // order components by raw sheet label: component l starts at the sheet-l
    // lift of the loop's base vertex; deck sends component l to l+1
    std::vector<LiftedCycle> out(cover.k);
    std::map<int, int> vertex_to_sheet;
    for (int l = 0; l < cover.k; ++l)
        vertex_to_sheet[cover.orbit[cover.lifted_dart_id(path[0].first, path[0].second, l)]] = l;
    for (auto& lift : lifts) {
        check(lift.wraps == 1, "adjacent-pair lift should close in one pass");
        out[vertex_to_sheet.at(lift.start_vertex)] = lift.cycle;
    }
    return out;
}

GroupPresentation pi1_presentation(const SurfaceComplex& cover, int basepoint) {
    if (basepoint != 0)
        throw ValueError("presentation is rooted at the canonical basepoint (vertex 0)");
    GroupPresentation pres;
    pres.basepoint = basepoint;
    pres.edge_generator.assign(cover.ne, 0);
    for (int el = 0; el < cover.ne; ++el) {
        if (cover.tree_edge[el]) continue;
        pres.generator_edge.push_back(el);
        pres.edge_generator[el] = int(pres.generator_edge.size());
    }
    pres.ngens = int(pres.generator_edge.size());
    for (int f = 0; f < int(cover.base.faces.size()); ++f)
        for (int l = 0; l < cover.k; ++l) {
            std::vector<int> word;
            for (auto [el, sign] : cover.face_lift_boundary(f, l))
                if (pres.edge_generator[el]) word.push_back(sign * pres.edge_generator[el]);
            pres.relators.push_back(std::move(word));
        }
    return pres;
}

std::vector<int> cycle_to_word(const SurfaceComplex& cover, const LiftedCycle& cycle,
                               const GroupPresentation& pres) {
    // check closedness
    check(!cycle.edges.empty(), "empty cycle");
    auto endpoint = [&](std::pair<int, int> e, bool head) {
        return (e.second > 0) == head ? cover.edge_lift_head(e.first) : cover.edge_lift_tail(e.first);
    };
    for (size_t p = 0; p < cycle.edges.size(); ++p) {
        auto cur = cycle.edges[p];
        auto nxt = cycle.edges[(p + 1) % cycle.edges.size()];
        if (endpoint(cur, true) != endpoint(nxt, false))
            throw ValueError("cycle_to_word: path is not a closed edge path");
    }
    std::vector<int> word;
    for (auto [el, sign] : cycle.edges)
        if (pres.edge_generator[el]) word.push_back(sign * pres.edge_generator[el]);
    return word;
}

nlohmann::json SurfaceComplex::export_cells() const {
    nlohmann::json j;
    j["n"] = params.n;
    j["k"] = k;
    j["vertices"] = nlohmann::json::array();
    for (int v = 0; v < nv; ++v) {
        nlohmann::json jv;
        jv["id"] = v;
        jv["base"] = base.vertex_names[vertex_base[v]];
        jv["branch"] = std::find(branch_vertices.begin(), branch_vertices.end(), v) != branch_vertices.end();
        j["vertices"].push_back(jv);
    }
    j["edges"] = nlohmann::json::array();
    for (int el = 0; el < ne; ++el) {
        nlohmann::json je;
        je["id"] = el;
        je["base"] = base.edges[el / k].name;
        je["sheet"] = el % k;
        je["tail"] = edge_lift_tail(el);
        je["head"] = edge_lift_head(el);
        j["edges"].push_back(je);
    }
    j["faces"] = nlohmann::json::array();
    for (int f = 0; f < int(base.faces.size()); ++f)
        for (int l = 0; l < k; ++l) {
            nlohmann::json jf;
            jf["id"] = f * k + l;
            jf["boundary"] = nlohmann::json::array();
            for (auto [el, sign] : face_lift_boundary(f, l)) jf["boundary"].push_back({el, sign});
            j["faces"].push_back(jf);
        }
    return j;
}

void CellComplexData::validate() const {
    std::vector<int> use_fwd(edges.size(), 0), use_rev(edges.size(), 0);
    for (const auto& f : faces)
        for (auto [e, s] : f) {
            if (e < 0 || e >= int(edges.size())) throw ParseError("face references unknown edge");
            (s > 0 ? use_fwd : use_rev)[e]++;
        }
    for (size_t e = 0; e < edges.size(); ++e)
        if (use_fwd[e] != 1 || use_rev[e] != 1)
            throw ParseError("cell complex is not a closed oriented surface (bad edge use)");
}

CellComplexData import_cells(const nlohmann::json& j) {
    CellComplexData d;
    d.nverts = int(j.at("vertices").size());
    for (const auto& je : j.at("edges")) {
        int tail = je.at("tail").get<int>(), head = je.at("head").get<int>();
        if (tail < 0 || tail >= d.nverts || head < 0 || head >= d.nverts)
            throw ParseError("edge endpoint out of range");
        d.edges.push_back({tail, head});
    }
    for (const auto& jf : j.at("faces")) {
        std::vector<std::pair<int, int>> walk;
        for (const auto& b : jf.at("boundary")) walk.push_back({b.at(0).get<int>(), b.at(1).get<int>()});
        d.faces.push_back(std::move(walk));
    }
    d.validate();
    return d;
}

}  // namespace bsc
