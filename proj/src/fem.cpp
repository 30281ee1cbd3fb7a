#include "helmrec/fem.hpp"

#include <algorithm>
#include <cmath>

namespace helmrec {

namespace {

double edge_length(const Mesh& mesh, int a, int b) {
    return std::hypot(mesh.nodes[b].x - mesh.nodes[a].x, mesh.nodes[b].y - mesh.nodes[a].y);
}

// Scatters segment-ordered nodal values into a full-size vector.
Eigen::VectorXd scatter(const BoundaryField& field, const BoundarySegment& seg, int num_nodes) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(num_nodes);
    for (int k = 0; k < seg.size(); ++k) full[seg.node_ids[k]] = field.values[k];
    return full;
}

}  // namespace

FactorizedOperator::FactorizedOperator(const Mesh& mesh, double mu, Tag dirichlet_tag)
    : mesh_(&mesh),
      mu_(mu),
      dirichlet_tag_(dirichlet_tag),
      neumann_tag_(dirichlet_tag == Tag::GammaI ? Tag::GammaC : Tag::GammaI),
      gamma_i_(boundary_segment(mesh, Tag::GammaI)),
      gamma_c_(boundary_segment(mesh, Tag::GammaC)) {
    const int n = mesh.num_nodes();

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(9ul * mesh.triangles.size());
    for (const auto& tri : mesh.triangles) {
        const Point2& p0 = mesh.nodes[tri[0]];
        const Point2& p1 = mesh.nodes[tri[1]];
        const Point2& p2 = mesh.nodes[tri[2]];
        const double area = 0.5 * ((p1.x - p0.x) * (p2.y - p0.y) - (p1.y - p0.y) * (p2.x - p0.x));
        // Constant P1 gradients: grad phi_i = (b_i, c_i) / (2 area).
        const double b[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
        const double c[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double k_ij = (b[i] * b[j] + c[i] * c[j]) / (4.0 * area);
                const double m_ij = area / 12.0 * (i == j ? 2.0 : 1.0);
                triplets.emplace_back(tri[i], tri[j], k_ij + mu * m_ij);
            }
        }
    }
    full_.resize(n, n);
    full_.setFromTriplets(triplets.begin(), triplets.end());

    free_index_.assign(n, 0);
    for (int nd : dirichlet_segment().node_ids) free_index_[nd] = -1;
    for (int i = 0; i < n; ++i) {
        if (free_index_[i] == 0) {
            free_index_[i] = static_cast<int>(free_nodes_.size());
            free_nodes_.push_back(i);
        }
    }
    dirichlet_nodes_ = dirichlet_segment().node_ids;
    std::vector<int> dirichlet_index(n, -1);
    for (std::size_t k = 0; k < dirichlet_nodes_.size(); ++k) {
        dirichlet_index[dirichlet_nodes_[k]] = static_cast<int>(k);
    }

    std::vector<Eigen::Triplet<double>> reduced, coupl;
    for (int col = 0; col < full_.outerSize(); ++col) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(full_, col); it; ++it) {
            const int fi = free_index_[it.row()];
            if (fi < 0) continue;
            const int fj = free_index_[it.col()];
            if (fj >= 0) {
                reduced.emplace_back(fi, fj, it.value());
            } else {
                coupl.emplace_back(fi, dirichlet_index[it.col()], it.value());
            }
        }
    }
    const int nf = static_cast<int>(free_nodes_.size());
    Eigen::SparseMatrix<double> reduced_mat(nf, nf);
    reduced_mat.setFromTriplets(reduced.begin(), reduced.end());
    coupling_.resize(nf, static_cast<int>(dirichlet_nodes_.size()));
    coupling_.setFromTriplets(coupl.begin(), coupl.end());

    ldlt_.compute(reduced_mat);
    double max_coeff = 0.0;
    for (int k = 0; k < full_.nonZeros(); ++k) {
        max_coeff = std::max(max_coeff, std::abs(full_.valuePtr()[k]));
    }
    bool near_singular = ldlt_.info() != Eigen::Success;
    if (!near_singular) {
        const double min_pivot = ldlt_.vectorD().cwiseAbs().minCoeff();
        near_singular = min_pivot <= 1e-12 * max_coeff;
    }
    if (near_singular) {
        throw EigenvalueProximityError(
            "factorization near-singular: mu is too close to an eigenvalue of the mixed problem");
    }
}

bool FactorizedOperator::all_pivots_positive() const {
    return (ldlt_.vectorD().array() > 0.0).all();
}

FemSolution FactorizedOperator::solve(const BoundaryField& dirichlet_values,
                                      const BoundaryField& neumann_values) const {
    if (dirichlet_values.tag != dirichlet_tag_ || neumann_values.tag != neumann_tag_) {
        throw std::invalid_argument("solve: field tags do not match the operator");
    }
    const BoundarySegment& dseg = dirichlet_segment();
    const BoundarySegment& nseg = neumann_segment();
    if (dirichlet_values.size() != dseg.size() || neumann_values.size() != nseg.size()) {
        throw std::invalid_argument("solve: field size does not match the segment");
    }

    const int n = mesh_->num_nodes();
    const Eigen::VectorXd g = scatter(neumann_values, nseg, n);

    // Consistent P1 edge mass applied to the Neumann data.
    Eigen::VectorXd load = Eigen::VectorXd::Zero(n);
    for (const auto& e : mesh_->boundary_edges) {
        if (e.tag != neumann_tag_) continue;
        const double len = edge_length(*mesh_, e.a, e.b);
        load[e.a] += len / 6.0 * (2.0 * g[e.a] + g[e.b]);
        load[e.b] += len / 6.0 * (g[e.a] + 2.0 * g[e.b]);
    }

    Eigen::VectorXd d(dirichlet_values.size());
    for (int k = 0; k < dirichlet_values.size(); ++k) d[k] = dirichlet_values.values[k];

    const int nf = static_cast<int>(free_nodes_.size());
    Eigen::VectorXd rhs(nf);
    for (int k = 0; k < nf; ++k) rhs[k] = load[free_nodes_[k]];
    rhs -= coupling_ * d;

    const Eigen::VectorXd u_free = ldlt_.solve(rhs);

    FemSolution sol;
    sol.values = Eigen::VectorXd::Zero(n);
    for (int k = 0; k < nf; ++k) sol.values[free_nodes_[k]] = u_free[k];
    for (std::size_t k = 0; k < dirichlet_nodes_.size(); ++k) {
        sol.values[dirichlet_nodes_[k]] = d[static_cast<int>(k)];
    }
    sol.neumann_load = std::move(load);
    return sol;
}

BoundaryField trace(const FemSolution& solution, const BoundarySegment& segment) {
    BoundaryField field;
    field.tag = segment.tag;
    field.values.resize(segment.node_ids.size());
    for (int k = 0; k < segment.size(); ++k) {
        field.values[k] = solution.values[segment.node_ids[k]];
    }
    return field;
}

BoundaryField recover_flux(const FactorizedOperator& op, const FemSolution& solution,
                           const BoundarySegment& target) {
    Eigen::VectorXd residual = op.full_matrix() * solution.values;
    // The stored load lives on the Neumann segment. Loads applied on the
    // target itself stay in the flux; loads applied elsewhere are removed
    // so they do not pollute the shared interface nodes.
    if (target.tag == op.dirichlet_tag()) residual -= solution.neumann_load;

    Eigen::VectorXd rhs(target.size());
    for (int k = 0; k < target.size(); ++k) rhs[k] = residual[target.node_ids[k]];

    const Eigen::MatrixXd mass = segment_mass(target);
    const Eigen::VectorXd lambda = Eigen::LDLT<Eigen::MatrixXd>(mass).solve(rhs);

    BoundaryField flux;
    flux.tag = target.tag;
    flux.values.assign(lambda.data(), lambda.data() + lambda.size());
    return flux;
}

Eigen::MatrixXd segment_mass(const BoundarySegment& segment) {
    const int n = segment.size();
    Eigen::MatrixXd mass = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) {
        const double len = segment.s[k + 1] - segment.s[k];
        mass(k, k) += len / 3.0;
        mass(k + 1, k + 1) += len / 3.0;
        mass(k, k + 1) += len / 6.0;
        mass(k + 1, k) += len / 6.0;
    }
    return mass;
}

Eigen::MatrixXd segment_stiffness(const BoundarySegment& segment) {
    const int n = segment.size();
    Eigen::MatrixXd stiff = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k + 1 < n; ++k) {
        const double len = segment.s[k + 1] - segment.s[k];
        stiff(k, k) += 1.0 / len;
        stiff(k + 1, k + 1) += 1.0 / len;
        stiff(k, k + 1) -= 1.0 / len;
        stiff(k + 1, k) -= 1.0 / len;
    }
    return stiff;
}

double boundary_l2_inner(const std::vector<double>& a, const std::vector<double>& b,
                         const BoundarySegment& segment) {
    double sum = 0.0;
    for (int k = 0; k + 1 < segment.size(); ++k) {
        const double len = segment.s[k + 1] - segment.s[k];
        sum += len / 6.0 *
               (2.0 * a[k] * b[k] + a[k] * b[k + 1] + a[k + 1] * b[k] + 2.0 * a[k + 1] * b[k + 1]);
    }
    return sum;
}

double boundary_l2_norm(const BoundaryField& field, const BoundarySegment& segment) {
    return std::sqrt(boundary_l2_inner(field.values, field.values, segment));
}

double boundary_h1_seminorm(const BoundaryField& field, const BoundarySegment& segment) {
    double sum = 0.0;
    for (int k = 0; k + 1 < segment.size(); ++k) {
        const double len = segment.s[k + 1] - segment.s[k];
        const double slope = (field.values[k + 1] - field.values[k]) / len;
        sum += slope * slope * len;
    }
    return std::sqrt(sum);
}

double relative_l2_error(const Mesh& mesh, const Eigen::VectorXd& values,
                         double (*exact)(double, double)) {
    // Dunavant degree-4 rule, 6 points.
    static const double qa = 0.445948490915965;
    static const double qb = 0.091576213509771;
    static const double wa = 0.223381589678011;
    static const double wb = 0.109951743655322;
    static const double bary[6][3] = {
        {qa, qa, 1.0 - 2.0 * qa}, {qa, 1.0 - 2.0 * qa, qa}, {1.0 - 2.0 * qa, qa, qa},
        {qb, qb, 1.0 - 2.0 * qb}, {qb, 1.0 - 2.0 * qb, qb}, {1.0 - 2.0 * qb, qb, qb}};
    static const double weight[6] = {wa, wa, wa, wb, wb, wb};

    double err2 = 0.0, norm2 = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        const double area = mesh.triangle_area(t);
        for (int q = 0; q < 6; ++q) {
            double x = 0.0, y = 0.0, uh = 0.0;
            for (int v = 0; v < 3; ++v) {
                x += bary[q][v] * mesh.nodes[tri[v]].x;
                y += bary[q][v] * mesh.nodes[tri[v]].y;
                uh += bary[q][v] * values[tri[v]];
            }
            const double ue = exact(x, y);
            err2 += weight[q] * area * (uh - ue) * (uh - ue);
            norm2 += weight[q] * area * ue * ue;
        }
    }
    return std::sqrt(err2 / norm2);
}

}  // namespace helmrec
