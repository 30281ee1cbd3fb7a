#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace helmrec {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

// Boundary segment tags: GammaI is the inaccessible part (unknown data),
// GammaC the accessible part carrying the Cauchy measurements.
enum class Tag : std::uint8_t { GammaI, GammaC };

const char* tag_name(Tag t);

struct BoundaryEdge {
    int a = -1;  // directed a -> b, domain on the left (CCW loop)
    int b = -1;
    Tag tag = Tag::GammaC;
};

/**
 * Conforming triangulation of a 2D domain with a tagged boundary loop.
 *
 * Triangles are counter-clockwise. Boundary edges are stored directed so
 * that walking a->b traverses the boundary counter-clockwise; the set of
 * undirected boundary edges must coincide with the topological boundary.
 */
struct Mesh {
    std::vector<Point2> nodes;
    std::vector<std::array<int, 3>> triangles;
    std::vector<BoundaryEdge> boundary_edges;
    double h = 0.0;  // longest triangle edge

    int num_nodes() const { return static_cast<int>(nodes.size()); }
    int num_triangles() const { return static_cast<int>(triangles.size()); }

    double triangle_area(int t) const;
    double total_area() const;
    double boundary_length(Tag tag) const;
};

/**
 * One tagged piece of the boundary as an ordered open polyline.
 *
 * `s` is the cumulative (chord) arclength from the first node, `t` the
 * normalized coordinate 2s/L - 1 in [-1, 1]. Both segments include the
 * interface nodes they share with the complementary segment.
 * The traversal starts at the endpoint with lexicographically smallest
 * (y, x); for the benchmark domains this orders the square GammaI by
 * increasing y and the disc GammaI by increasing polar angle.
 */
struct BoundarySegment {
    Tag tag = Tag::GammaI;
    std::vector<int> node_ids;
    std::vector<double> s;
    std::vector<double> t;

    int size() const { return static_cast<int>(node_ids.size()); }
    double length() const { return s.empty() ? 0.0 : s.back(); }
};

// Structured triangulation of the unit square (0,1)^2 with n subdivisions
// per side; the side x=0 is tagged GammaI, the rest GammaC. Throws
// std::invalid_argument for n < 2.
Mesh build_unit_square_mesh(int n);

// Unit disc meshed by concentric rings; n boundary segments (n >= 16,
// divisible by 4 so that the angles 0 and pi/2 are mesh nodes). Boundary
// edges whose midpoint angle lies in (0, pi/2) are tagged GammaI.
Mesh build_unit_disc_mesh(int n);

// Empty result iff all mesh invariants hold; each entry names the broken
// invariant and the offending entity.
std::vector<std::string> validate(const Mesh& mesh);

// Ordered traversal of one tagged segment. Throws std::out_of_range if no
// edge carries the tag.
BoundarySegment boundary_segment(const Mesh& mesh, Tag tag);

// Plain text exchange format: header "N T E", N node lines "x y", T
// triangle lines "i j k", E edge lines "a b I|C".
void write_mesh(std::ostream& out, const Mesh& mesh);
Mesh read_mesh(std::istream& in);
void write_mesh_file(const std::string& path, const Mesh& mesh);
Mesh read_mesh_file(const std::string& path);

}  // namespace helmrec
