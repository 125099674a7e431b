#include "principles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "error.hpp"

namespace qent {

namespace {

// Coefficient matrix of the purification in computational coordinates:
// C[x,y] = schmidt_y * A[x,y], so the global vector is vec-ordered (x,y).
Matrix purification_coefficients(const Purification& pur) {
  Matrix c = Matrix::Zero(pur.dim_a, pur.dim_b);
  for (int y = 0; y < pur.dim_b; ++y) {
    c.col(y) = pur.schmidt(y) * pur.basis_a.mat().col(y);
  }
  return c;
}

JointDistribution observed_joint(const Matrix& coeff, const Matrix& ja,
                                 const Matrix& jb) {
  Matrix m = ja.adjoint() * coeff * jb.conjugate();
  return JointDistribution(m.cwiseAbs2());
}

}  // namespace

LocalMinimumReport verify_local_minimum(const DensityMatrix& rho,
                                        const EntropyMeasure& m, int samples,
                                        std::uint64_t seed, LogBase base,
                                        double tol) {
  if (samples < 0) throw Error(ErrorCode::BadInput, "negative sample count");
  LocalMinimumReport rep;
  rep.measure = m.name();
  rep.samples = samples;

  auto [lam, frame] = eigensystem(rho);
  rep.state_entropy = classical_entropy(lam, m, base);
  rep.eigenbasis_value =
      classical_entropy(measurement_distribution(rho, frame), m, base);
  rep.achieved_at_eigenbasis =
      std::abs(rep.eigenbasis_value - rep.state_entropy) <= tol;

  Rng rng(seed);
  rep.sampled_min = rep.eigenbasis_value;
  for (int i = 0; i < samples; ++i) {
    Basis j = haar_basis(rho.dim(), rng);
    const double v =
        classical_entropy(measurement_distribution(rho, j), m, base);
    rep.sampled_min = std::min(rep.sampled_min, v);
    if (v < rep.state_entropy - tol) {
      rep.violations.push_back({i, v, rep.state_entropy, rep.state_entropy - v});
    }
  }
  return rep;
}

JointPrincipleReport verify_joint_principles(const DensityMatrix& rho,
                                             const EntropyMeasure& m,
                                             int samples, std::uint64_t seed,
                                             LogBase base, double tol) {
  if (samples < 0) throw Error(ErrorCode::BadInput, "negative sample count");
  JointPrincipleReport rep;
  rep.measure = m.name();
  rep.samples = samples;
  rep.state_entropy = classical_entropy(spectrum(rho), m, base);

  Purification pur = purify(rho);
  Matrix coeff = purification_coefficients(pur);

  JointDistribution schmidt_point = observed_joint(
      coeff, pur.basis_a.mat(), Matrix::Identity(pur.dim_b, pur.dim_b));
  rep.schmidt_joint = classical_entropy(schmidt_point.flattened(), m, base);
  rep.schmidt_cross = mutual_information_subtraction(schmidt_point, m, base);
  rep.achieved_at_schmidt =
      std::abs(rep.schmidt_joint - rep.state_entropy) <= tol &&
      std::abs(rep.schmidt_cross - rep.state_entropy) <= tol;

  rep.sampled_min_joint = rep.schmidt_joint;
  rep.sampled_max_cross = rep.schmidt_cross;
  rep.sampled_max_cross_normalized = mutual_information(schmidt_point, m, base);

  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    Matrix ja = haar_unitary(pur.dim_a, rng);
    Matrix jb = haar_unitary(pur.dim_b, rng);
    JointDistribution p = observed_joint(coeff, ja, jb);

    const double joint = classical_entropy(p.flattened(), m, base);
    rep.sampled_min_joint = std::min(rep.sampled_min_joint, joint);
    if (joint < rep.state_entropy - tol) {
      rep.joint_violations.push_back(
          {i, joint, rep.state_entropy, rep.state_entropy - joint});
    }

    const double cross = mutual_information_subtraction(p, m, base);
    rep.sampled_max_cross = std::max(rep.sampled_max_cross, cross);
    rep.sampled_max_cross_normalized =
        std::max(rep.sampled_max_cross_normalized, mutual_information(p, m, base));
    if (cross > rep.state_entropy + tol) {
      rep.cross_violations.push_back(
          {i, cross, rep.state_entropy, cross - rep.state_entropy});
    }
  }
  return rep;
}

UncertaintyReport uncertainty_check(const DensityMatrix& rho, const Basis& j1,
                                    const Basis& j2, const EntropyMeasure& m,
                                    LogBase base, double tol) {
  UncertaintyReport rep;
  rep.entropy_j1 = classical_entropy(measurement_distribution(rho, j1), m, base);
  rep.entropy_j2 = classical_entropy(measurement_distribution(rho, j2), m, base);
  rep.state_entropy = classical_entropy(spectrum(rho), m, base);
  rep.bound = 2.0 * rep.state_entropy;
  rep.holds = rep.entropy_j1 + rep.entropy_j2 >= rep.bound - tol;
  return rep;
}

SubadditivityReport entropy_difference_bound(const DensityMatrix& rho_ab,
                                             int dim_a, int dim_b, double tol) {
  if (static_cast<Eigen::Index>(dim_a) * dim_b != rho_ab.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "factor dimensions do not match");
  }
  const EntropyMeasure vn = EntropyMeasure::von_neumann();
  SubadditivityReport rep;
  rep.entropy_joint = classical_entropy(spectrum(rho_ab), vn);
  rep.entropy_a =
      classical_entropy(spectrum(partial_trace(rho_ab, dim_a, dim_b, true)), vn);
  rep.entropy_b =
      classical_entropy(spectrum(partial_trace(rho_ab, dim_a, dim_b, false)), vn);
  rep.lower_bound = std::abs(rep.entropy_a - rep.entropy_b);
  rep.holds = rep.entropy_joint >= rep.lower_bound - tol;
  return rep;
}

namespace {

// Marginal of a pure state over the kept tensor legs.
Matrix legs_marginal(const Vector& psi, const std::vector<int>& dims,
                     const std::vector<bool>& keep) {
  std::int64_t dim_keep = 1, dim_rest = 1;
  for (size_t l = 0; l < dims.size(); ++l) (keep[l] ? dim_keep : dim_rest) *= dims[l];
  Eigen::MatrixXcd folded = Eigen::MatrixXcd::Zero(dim_keep, dim_rest);
  const std::int64_t total = psi.size();
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rem = idx, k = 0, r = 0;
    // big-endian digit scan matching the kron ordering of the legs
    std::int64_t place = total;
    for (size_t l = 0; l < dims.size(); ++l) {
      place /= dims[l];
      const std::int64_t digit = rem / place;
      rem %= place;
      if (keep[l]) k = k * dims[l] + digit;
      else r = r * dims[l] + digit;
    }
    folded(k, r) = psi(idx);
  }
  return folded * folded.adjoint();
}

}  // namespace

ChainReport build_chain_network(const std::vector<Distribution>& links,
                                double tol) {
  const int n_links = static_cast<int>(links.size());
  if (n_links < 1) throw Error(ErrorCode::BadInput, "chain needs at least one link");
  const EntropyMeasure vn = EntropyMeasure::von_neumann();

  ChainReport rep;
  rep.nodes = n_links + 1;
  std::vector<double> h(n_links);
  for (int k = 0; k < n_links; ++k) h[k] = classical_entropy(links[k], vn);

  rep.node_entropy.resize(rep.nodes);
  for (int i = 0; i < rep.nodes; ++i) {
    double s = 0.0;
    if (i > 0) s += h[i - 1];
    if (i < n_links) s += h[i];
    rep.node_entropy[i] = s;
  }
  // The chain state is globally pure, so the complement of one node carries
  // exactly that node's entropy.
  rep.complement_entropy = rep.node_entropy;

  for (int omit = 0; omit < rep.nodes; ++omit) {
    for (int member = 0; member < rep.nodes; ++member) {
      if (member == omit) continue;
      if (rep.complement_entropy[omit] < rep.node_entropy[member] - 1e-12) {
        rep.flags.push_back({omit, member, rep.complement_entropy[omit],
                             rep.node_entropy[member]});
      }
    }
  }

  // Dense cross-check of the closed forms when the full vector fits.
  std::int64_t total = 1;
  bool fits = true;
  for (const Distribution& lam : links) {
    total *= static_cast<std::int64_t>(lam.size()) * lam.size();
    if (total > kMaxDenseDim) { fits = false; break; }
  }
  if (fits) {
    std::vector<int> dims;
    Vector psi = Vector::Constant(1, 1.0);
    for (const Distribution& lam : links) {
      const int r = lam.size();
      Vector link = Vector::Zero(static_cast<Eigen::Index>(r) * r);
      for (int j = 0; j < r; ++j) link(static_cast<Eigen::Index>(j) * r + j) = std::sqrt(lam[j]);
      Vector next(psi.size() * link.size());
      for (Eigen::Index a = 0; a < psi.size(); ++a)
        for (Eigen::Index b = 0; b < link.size(); ++b)
          next(a * link.size() + b) = psi(a) * link(b);
      psi = next;
      dims.push_back(r);
      dims.push_back(r);
    }
    auto entropy_of_marginal = [&](const std::vector<bool>& keep) {
      Matrix rho = legs_marginal(psi, dims, keep);
      return classical_entropy(spectrum(DensityMatrix(rho)), vn);
    };
    for (int i = 0; i < rep.nodes; ++i) {
      std::vector<bool> node_legs(dims.size(), false);
      if (i > 0) node_legs[2 * (i - 1) + 1] = true;
      if (i < n_links) node_legs[2 * i] = true;
      const double s_node = entropy_of_marginal(node_legs);
      std::vector<bool> comp_legs(dims.size());
      for (size_t l = 0; l < dims.size(); ++l) comp_legs[l] = !node_legs[l];
      const double s_comp = entropy_of_marginal(comp_legs);
      rep.max_identity_residual =
          std::max({rep.max_identity_residual,
                    std::abs(s_node - rep.node_entropy[i]),
                    std::abs(s_comp - rep.complement_entropy[i])});
    }
    rep.identities_ok = rep.max_identity_residual <= tol;
  }
  return rep;
}

}  // namespace qent
