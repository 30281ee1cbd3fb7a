#include "helmrec/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace helmrec {

namespace {

double signed_area(const Point2& a, const Point2& b, const Point2& c) {
    return 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
}

double dist(const Point2& a, const Point2& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

double max_edge_length(const Mesh& mesh) {
    double h = 0.0;
    for (const auto& tri : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            h = std::max(h, dist(mesh.nodes[tri[e]], mesh.nodes[tri[(e + 1) % 3]]));
        }
    }
    return h;
}

}  // namespace

const char* tag_name(Tag t) { return t == Tag::GammaI ? "GammaI" : "GammaC"; }

double Mesh::triangle_area(int t) const {
    const auto& tri = triangles[t];
    return signed_area(nodes[tri[0]], nodes[tri[1]], nodes[tri[2]]);
}

double Mesh::total_area() const {
    double a = 0.0;
    for (int t = 0; t < num_triangles(); ++t) a += triangle_area(t);
    return a;
}

double Mesh::boundary_length(Tag tag) const {
    double len = 0.0;
    for (const auto& e : boundary_edges) {
        if (e.tag == tag) len += dist(nodes[e.a], nodes[e.b]);
    }
    return len;
}

Mesh build_unit_square_mesh(int n) {
    if (n < 2) throw std::invalid_argument("build_unit_square_mesh: n must be >= 2");

    Mesh mesh;
    const int stride = n + 1;
    auto id = [stride](int i, int j) { return j * stride + i; };

    mesh.nodes.resize(static_cast<std::size_t>(stride) * stride);
    for (int j = 0; j <= n; ++j) {
        for (int i = 0; i <= n; ++i) {
            mesh.nodes[id(i, j)] = {static_cast<double>(i) / n, static_cast<double>(j) / n};
        }
    }

    mesh.triangles.reserve(2ul * n * n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const int v00 = id(i, j), v10 = id(i + 1, j);
            const int v11 = id(i + 1, j + 1), v01 = id(i, j + 1);
            mesh.triangles.push_back({v00, v10, v11});
            mesh.triangles.push_back({v00, v11, v01});
        }
    }

    // CCW boundary loop: bottom, right, top, then the left side (x = 0),
    // which is the inaccessible segment.
    for (int i = 0; i < n; ++i) mesh.boundary_edges.push_back({id(i, 0), id(i + 1, 0), Tag::GammaC});
    for (int j = 0; j < n; ++j) mesh.boundary_edges.push_back({id(n, j), id(n, j + 1), Tag::GammaC});
    for (int i = n; i > 0; --i) mesh.boundary_edges.push_back({id(i, n), id(i - 1, n), Tag::GammaC});
    for (int j = n; j > 0; --j) mesh.boundary_edges.push_back({id(0, j), id(0, j - 1), Tag::GammaI});

    mesh.h = max_edge_length(mesh);
    return mesh;
}

Mesh build_unit_disc_mesh(int n) {
    if (n < 16 || n % 4 != 0) {
        throw std::invalid_argument("build_unit_disc_mesh: n must be >= 16 and divisible by 4");
    }

    constexpr double two_pi = 2.0 * std::numbers::pi;
    const int m = n / 4;  // rings; ring j holds 4j nodes at radius j/m

    Mesh mesh;
    mesh.nodes.push_back({0.0, 0.0});
    std::vector<int> ring_start(m + 1, 0);
    for (int j = 1; j <= m; ++j) {
        ring_start[j] = mesh.num_nodes();
        const int count = 4 * j;
        const double r = static_cast<double>(j) / m;
        for (int k = 0; k < count; ++k) {
            const double ang = two_pi * k / count;
            mesh.nodes.push_back({r * std::cos(ang), r * std::sin(ang)});
        }
    }

    // Center fan.
    for (int k = 0; k < 4; ++k) {
        mesh.triangles.push_back({0, ring_start[1] + k, ring_start[1] + (k + 1) % 4});
    }

    // Zip each annulus: advance the pointer whose next node comes first in
    // angle; equal angles (quadrant axes) advance the outer ring.
    for (int j = 1; j < m; ++j) {
        const int a = 4 * j, b = 4 * (j + 1);
        const int in0 = ring_start[j], out0 = ring_start[j + 1];
        int i = 0, k = 0;
        while (i < a || k < b) {
            const double ang_in = two_pi * (i + 1) / a;
            const double ang_out = two_pi * (k + 1) / b;
            if (k < b && (i == a || ang_out <= ang_in)) {
                mesh.triangles.push_back({in0 + i % a, out0 + k % b, out0 + (k + 1) % b});
                ++k;
            } else {
                mesh.triangles.push_back({in0 + i % a, out0 + k % b, in0 + (i + 1) % a});
                ++i;
            }
        }
    }

    const int b0 = ring_start[m];
    for (int k = 0; k < n; ++k) {
        const double mid = two_pi * (k + 0.5) / n;
        const Tag tag = (mid > 0.0 && mid < 0.5 * std::numbers::pi) ? Tag::GammaI : Tag::GammaC;
        mesh.boundary_edges.push_back({b0 + k, b0 + (k + 1) % n, tag});
    }

    mesh.h = max_edge_length(mesh);
    return mesh;
}

std::vector<std::string> validate(const Mesh& mesh) {
    std::vector<std::string> violations;
    auto report = [&violations](const std::string& msg) { violations.push_back(msg); };

    for (int t = 0; t < mesh.num_triangles(); ++t) {
        for (int v : mesh.triangles[t]) {
            if (v < 0 || v >= mesh.num_nodes()) {
                report("triangle " + std::to_string(t) + ": node index out of range");
            }
        }
        if (mesh.triangle_area(t) <= 0.0) {
            report("triangle " + std::to_string(t) + ": negative area (non-CCW orientation)");
        }
    }
    for (const auto& p : mesh.nodes) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            report("node coordinates not finite");
            break;
        }
    }

    // Topological boundary: undirected edges incident to exactly one triangle.
    std::map<std::pair<int, int>, int> edge_count;
    auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
    for (const auto& tri : mesh.triangles) {
        for (int e = 0; e < 3; ++e) edge_count[key(tri[e], tri[(e + 1) % 3])] += 1;
    }

    std::map<std::pair<int, int>, int> tagged;  // undirected edge -> multiplicity
    for (const auto& e : mesh.boundary_edges) tagged[key(e.a, e.b)] += 1;

    for (const auto& [k, cnt] : edge_count) {
        if (cnt == 1 && tagged.find(k) == tagged.end()) {
            report("boundary edge (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                   "): missing tag (topological boundary edge not listed)");
        }
        if (cnt > 2) {
            report("edge (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                   "): shared by more than two triangles");
        }
    }
    for (const auto& [k, cnt] : tagged) {
        auto it = edge_count.find(k);
        if (it == edge_count.end() || it->second != 1) {
            report("boundary edge (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                   "): not a topological boundary edge");
        }
        if (cnt > 1) {
            report("boundary edge (" + std::to_string(k.first) + "," + std::to_string(k.second) +
                   "): listed more than once");
        }
    }

    // Single closed loop: every boundary node has exactly two incident
    // boundary edges and the walk visits all of them.
    std::map<int, std::vector<int>> adj;
    for (const auto& [k, cnt] : tagged) {
        adj[k.first].push_back(k.second);
        adj[k.second].push_back(k.first);
    }
    for (const auto& [node, nbrs] : adj) {
        if (nbrs.size() != 2) {
            report("boundary node " + std::to_string(node) + ": degree " +
                   std::to_string(nbrs.size()) + " in boundary graph (loop broken)");
        }
    }
    if (!adj.empty()) {
        std::size_t visited = 1;
        const int start = adj.begin()->first;
        int prev = start, cur = adj.begin()->second.front();
        while (cur != start && visited <= adj.size()) {
            const auto& nbrs = adj[cur];
            if (nbrs.size() != 2) break;
            const int next = (nbrs[0] == prev) ? nbrs[1] : nbrs[0];
            prev = cur;
            cur = next;
            ++visited;
        }
        if (visited != adj.size()) {
            report("boundary edges do not form a single closed loop");
        }
    }

    bool has_i = false, has_c = false;
    for (const auto& e : mesh.boundary_edges) {
        (e.tag == Tag::GammaI ? has_i : has_c) = true;
    }
    if (!has_i) report("no boundary edge tagged GammaI");
    if (!has_c) report("no boundary edge tagged GammaC");
    if (has_i && has_c && mesh.boundary_length(Tag::GammaC) < mesh.boundary_length(Tag::GammaI)) {
        report("length(GammaC) < length(GammaI)");
    }

    return violations;
}

BoundarySegment boundary_segment(const Mesh& mesh, Tag tag) {
    std::map<int, std::vector<int>> adj;
    for (const auto& e : mesh.boundary_edges) {
        if (e.tag != tag) continue;
        adj[e.a].push_back(e.b);
        adj[e.b].push_back(e.a);
    }
    if (adj.empty()) throw std::out_of_range(std::string("boundary_segment: no edges tagged ") + tag_name(tag));

    // Endpoints have degree 1 within the tagged subgraph; start at the one
    // with smallest (y, x) so the parameterization is reproducible.
    int start = -1;
    for (const auto& [node, nbrs] : adj) {
        if (nbrs.size() != 1) continue;
        if (start < 0) {
            start = node;
        } else {
            const Point2& p = mesh.nodes[node];
            const Point2& q = mesh.nodes[start];
            if (p.y < q.y || (p.y == q.y && p.x < q.x)) start = node;
        }
    }
    if (start < 0) {
        // Tagged edges form a closed loop (segment covers the full boundary);
        // start at the smallest node id.
        start = adj.begin()->first;
    }

    BoundarySegment seg;
    seg.tag = tag;
    seg.node_ids.push_back(start);
    seg.s.push_back(0.0);
    int prev = -1, cur = start;
    while (true) {
        const auto& nbrs = adj[cur];
        int next = -1;
        for (int nb : nbrs) {
            if (nb != prev) {
                next = nb;
                break;
            }
        }
        if (next < 0 || next == start) break;
        seg.s.push_back(seg.s.back() + dist(mesh.nodes[cur], mesh.nodes[next]));
        seg.node_ids.push_back(next);
        prev = cur;
        cur = next;
        if (seg.size() > mesh.num_nodes()) {
            throw std::runtime_error("boundary_segment: traversal did not terminate");
        }
    }

    const double len = seg.length();
    seg.t.resize(seg.s.size());
    for (std::size_t k = 0; k < seg.s.size(); ++k) {
        seg.t[k] = len > 0.0 ? 2.0 * seg.s[k] / len - 1.0 : 0.0;
    }
    return seg;
}

void write_mesh(std::ostream& out, const Mesh& mesh) {
    out << mesh.num_nodes() << ' ' << mesh.num_triangles() << ' ' << mesh.boundary_edges.size() << '\n';
    char buf[64];
    for (const auto& p : mesh.nodes) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", p.x, p.y);
        out << buf;
    }
    for (const auto& tri : mesh.triangles) {
        out << tri[0] << ' ' << tri[1] << ' ' << tri[2] << '\n';
    }
    for (const auto& e : mesh.boundary_edges) {
        out << e.a << ' ' << e.b << ' ' << (e.tag == Tag::GammaI ? 'I' : 'C') << '\n';
    }
}

Mesh read_mesh(std::istream& in) {
    Mesh mesh;
    int nn = 0, nt = 0, ne = 0;
    if (!(in >> nn >> nt >> ne) || nn < 0 || nt < 0 || ne < 0) {
        throw std::runtime_error("read_mesh: malformed header");
    }
    mesh.nodes.resize(nn);
    for (auto& p : mesh.nodes) {
        if (!(in >> p.x >> p.y)) throw std::runtime_error("read_mesh: malformed node line");
    }
    mesh.triangles.resize(nt);
    for (auto& tri : mesh.triangles) {
        if (!(in >> tri[0] >> tri[1] >> tri[2])) throw std::runtime_error("read_mesh: malformed triangle line");
    }
    mesh.boundary_edges.resize(ne);
    for (auto& e : mesh.boundary_edges) {
        char tag = 0;
        if (!(in >> e.a >> e.b >> tag) || (tag != 'I' && tag != 'C')) {
            throw std::runtime_error("read_mesh: malformed edge line");
        }
        e.tag = tag == 'I' ? Tag::GammaI : Tag::GammaC;
    }
    mesh.h = max_edge_length(mesh);
    return mesh;
}

void write_mesh_file(const std::string& path, const Mesh& mesh) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_mesh(out, mesh);
}

Mesh read_mesh_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    return read_mesh(in);
}

}  // namespace helmrec
