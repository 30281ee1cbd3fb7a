#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>

#include "helmrec/fem.hpp"
#include "helmrec/mesh.hpp"

namespace helmrec {

enum class CaseName { Square, Disc };

const char* case_name(CaseName name);

// Benchmark with a closed-form solution of -Δu + mu·u = 0 used to
// manufacture Cauchy data and to measure reconstruction error.
struct BenchmarkCase {
    CaseName name = CaseName::Square;
    double mu = 0.0;
    double (*exact_u)(double x, double y) = nullptr;
    std::array<double, 2> (*exact_grad)(double x, double y) = nullptr;
};

// Square: u = exp(2x - y), mu = 5. Disc: u = sin(x)sin(y), mu = -2.
BenchmarkCase make_case(CaseName name);
BenchmarkCase make_case_by_name(const std::string& name);

Mesh build_case_mesh(const BenchmarkCase& bc, int n);
int default_mesh_n(CaseName name);

// Cauchy measurements on the accessible segment.
struct CauchyData {
    BoundaryField f;  // trace on GammaC
    BoundaryField g;  // outward normal flux on GammaC
    double noise_level = 0.0;
    std::uint64_t seed = 0;
};

// Exact unknowns on the inaccessible segment (reconstruction targets).
struct TargetData {
    BoundaryField phi_d;
    BoundaryField phi_n;
};

struct CaseData {
    CauchyData cauchy;
    TargetData target;
};

// Evaluates the exact solution and flux on both segments. Square fluxes use
// the side normals, averaging the two one-sided values at corner nodes
// where the normal jumps; disc fluxes use the radial normal. Throws
// std::invalid_argument if the mesh does not match the case geometry.
CaseData synthesize_data(const BenchmarkCase& bc, const Mesh& mesh);

// Multiplicative measurement noise value*(1 + theta*nu) with theta drawn
// i.i.d. uniform on [-1,1] per node, f first then g, from Rng(seed).
CauchyData add_noise(const CauchyData& data, double nu, std::uint64_t seed);

inline double noisy_value(double value, double theta, double nu) {
    return value * (1.0 + theta * nu);
}

template <typename F>
BoundaryField make_field(const Mesh& mesh, const BoundarySegment& segment, F&& fn) {
    BoundaryField field;
    field.tag = segment.tag;
    field.values.reserve(segment.node_ids.size());
    for (int id : segment.node_ids) {
        field.values.push_back(fn(mesh.nodes[id].x, mesh.nodes[id].y));
    }
    return field;
}

}  // namespace helmrec
