#include "helmrec/cases.hpp"

#include <cmath>
#include <stdexcept>

#include "helmrec/rng.hpp"

namespace helmrec {

namespace {

double square_u(double x, double y) { return std::exp(2.0 * x - y); }
std::array<double, 2> square_grad(double x, double y) {
    const double u = std::exp(2.0 * x - y);
    return {2.0 * u, -u};
}

double disc_u(double x, double y) { return std::sin(x) * std::sin(y); }
std::array<double, 2> disc_grad(double x, double y) {
    return {std::cos(x) * std::sin(y), std::sin(x) * std::cos(y)};
}

void check_geometry(const BenchmarkCase& bc, const Mesh& mesh) {
    double max_r = 0.0, min_x = 1e300, max_x = -1e300, min_y = 1e300, max_y = -1e300;
    for (const auto& p : mesh.nodes) {
        max_r = std::max(max_r, std::hypot(p.x, p.y));
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double tol = 1e-9;
    const bool square_like = std::abs(min_x) < tol && std::abs(min_y) < tol &&
                             std::abs(max_x - 1.0) < tol && std::abs(max_y - 1.0) < tol;
    const bool disc_like = std::abs(max_r - 1.0) < tol && min_x < -0.5 && min_y < -0.5;
    if ((bc.name == CaseName::Square && !square_like) || (bc.name == CaseName::Disc && !disc_like)) {
        throw std::invalid_argument("synthesize_data: mesh geometry does not match the case");
    }
}

// Outward normal of a directed boundary edge (domain on the left).
std::array<double, 2> edge_normal(const Mesh& mesh, const BoundaryEdge& e) {
    const double dx = mesh.nodes[e.b].x - mesh.nodes[e.a].x;
    const double dy = mesh.nodes[e.b].y - mesh.nodes[e.a].y;
    const double len = std::hypot(dx, dy);
    return {dy / len, -dx / len};
}

BoundaryField flux_field(const BenchmarkCase& bc, const Mesh& mesh, const BoundarySegment& seg) {
    BoundaryField field;
    field.tag = seg.tag;
    field.values.resize(seg.node_ids.size(), 0.0);

    if (bc.name == CaseName::Disc) {
        for (int k = 0; k < seg.size(); ++k) {
            const Point2& p = mesh.nodes[seg.node_ids[k]];
            const double r = std::hypot(p.x, p.y);
            const auto grad = bc.exact_grad(p.x, p.y);
            field.values[k] = (grad[0] * p.x + grad[1] * p.y) / r;
        }
        return field;
    }

    // Square: one-sided flux per incident same-tag edge, averaged where the
    // side normal jumps (the corner nodes interior to GammaC).
    for (int k = 0; k < seg.size(); ++k) {
        const int node = seg.node_ids[k];
        const Point2& p = mesh.nodes[node];
        const auto grad = bc.exact_grad(p.x, p.y);
        double sum = 0.0;
        int count = 0;
        for (const auto& e : mesh.boundary_edges) {
            if (e.tag != seg.tag || (e.a != node && e.b != node)) continue;
            const auto n = edge_normal(mesh, e);
            sum += grad[0] * n[0] + grad[1] * n[1];
            ++count;
        }
        if (count == 0) throw std::logic_error("flux_field: segment node without tagged edge");
        field.values[k] = sum / count;
    }
    return field;
}

}  // namespace

const char* case_name(CaseName name) { return name == CaseName::Square ? "square" : "disc"; }

BenchmarkCase make_case(CaseName name) {
    if (name == CaseName::Square) return {CaseName::Square, 5.0, &square_u, &square_grad};
    return {CaseName::Disc, -2.0, &disc_u, &disc_grad};
}

BenchmarkCase make_case_by_name(const std::string& name) {
    if (name == "square") return make_case(CaseName::Square);
    if (name == "disc") return make_case(CaseName::Disc);
    throw std::invalid_argument("unknown case: " + name);
}

Mesh build_case_mesh(const BenchmarkCase& bc, int n) {
    return bc.name == CaseName::Square ? build_unit_square_mesh(n) : build_unit_disc_mesh(n);
}

int default_mesh_n(CaseName name) { return name == CaseName::Square ? 32 : 64; }

CaseData synthesize_data(const BenchmarkCase& bc, const Mesh& mesh) {
    check_geometry(bc, mesh);
    const BoundarySegment gamma_i = boundary_segment(mesh, Tag::GammaI);
    const BoundarySegment gamma_c = boundary_segment(mesh, Tag::GammaC);

    CaseData data;
    data.cauchy.f = make_field(mesh, gamma_c, bc.exact_u);
    data.cauchy.g = flux_field(bc, mesh, gamma_c);
    data.target.phi_d = make_field(mesh, gamma_i, bc.exact_u);
    data.target.phi_n = flux_field(bc, mesh, gamma_i);
    return data;
}

CauchyData add_noise(const CauchyData& data, double nu, std::uint64_t seed) {
    if (nu < 0.0) throw std::invalid_argument("add_noise: noise level must be >= 0");
    CauchyData noisy = data;
    noisy.noise_level = nu;
    noisy.seed = seed;
    if (nu == 0.0) return noisy;

    Rng rng(seed);
    for (double& v : noisy.f.values) v = noisy_value(v, rng.uniform_symmetric(), nu);
    for (double& v : noisy.g.values) v = noisy_value(v, rng.uniform_symmetric(), nu);
    return noisy;
}

}  // namespace helmrec
