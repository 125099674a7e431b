#include <doctest.h>

#include <cmath>
#include <vector>

#include "channels.hpp"
#include "density.hpp"
#include "distribution.hpp"
#include "entropy.hpp"
#include "helpers.hpp"
#include "principles.hpp"

using qent::Basis;
using qent::DensityMatrix;
using qent::Distribution;
using qent::EntropyMeasure;
using qent::Matrix;
using qtest::near;

namespace {
Basis hadamard() {
  Matrix h(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  h << s, s, s, -s;
  return Basis(h);
}
}  // namespace

TEST_CASE("dephasing entropy is minimized at the eigenbasis") {
  const DensityMatrix rho =
      DensityMatrix::diagonal(Distribution(std::vector<double>{0.75, 0.25}));
  const auto rep = qent::verify_local_minimum(rho, EntropyMeasure::von_neumann(), 200, 3);
  CHECK(rep.holds());
  CHECK(rep.achieved_at_eigenbasis);
  CHECK(near(rep.state_entropy, 0.81127812445913283, 1e-14));
  CHECK(near(rep.eigenbasis_value, rep.state_entropy, 1e-12));
  CHECK(rep.sampled_min >= rep.state_entropy - 1e-9);
  CHECK(rep.samples == 200);

  // the minimum principle survives at other orders, including order two
  for (const char* name : {"renyi:0.5", "renyi:2", "tsallis:0.5", "tsallis:2"}) {
    for (int dim = 2; dim <= 4; ++dim) {
      const DensityMatrix r = qent::random_density(dim, 50 + dim);
      const auto rr = qent::verify_local_minimum(r, EntropyMeasure::parse(name), 60, 17);
      CHECK(rr.holds());
      CHECK(rr.achieved_at_eigenbasis);
    }
  }
}

TEST_CASE("joint observation entropy is minimized at the Schmidt frames") {
  for (int dim = 2; dim <= 4; ++dim) {
    const DensityMatrix r = qent::random_density(dim, 400 + dim);
    const auto rep = qent::verify_joint_principles(r, EntropyMeasure::von_neumann(), 120, 5);
    CHECK(rep.holds());
    CHECK(rep.achieved_at_schmidt);
    CHECK(near(rep.schmidt_joint, rep.state_entropy, 1e-10));
    CHECK(near(rep.schmidt_cross, rep.state_entropy, 1e-10));
    CHECK(rep.sampled_min_joint >= rep.state_entropy - 1e-9);
    CHECK(rep.sampled_max_cross <= rep.state_entropy + 1e-9);
  }
}

TEST_CASE("order-2 cross correlation violates the claimed maximum") {
  // The joint minimum still holds at order 2, but Haar sampling finds product
  // frames whose subtraction mutual information exceeds the state entropy
  // (the Hadamard pair is an explicit interior witness).
  const DensityMatrix rho =
      DensityMatrix::diagonal(Distribution(std::vector<double>{0.75, 0.25}));
  const auto rep = qent::verify_joint_principles(rho, EntropyMeasure::renyi(2.0), 400, 2);
  CHECK(rep.joint_violations.empty());
  CHECK_FALSE(rep.cross_violations.empty());
  CHECK(rep.sampled_max_cross > rep.state_entropy);

  const auto rep_t = qent::verify_joint_principles(rho, EntropyMeasure::tsallis(2.0), 400, 2);
  CHECK_FALSE(rep_t.cross_violations.empty());

  // order one half stays clean on the same state and sampling budget
  const auto rep_h = qent::verify_joint_principles(rho, EntropyMeasure::renyi(0.5), 400, 2);
  CHECK(rep_h.holds());
}

TEST_CASE("two-frame dephasing uncertainty bound") {
  const DensityMatrix rho =
      DensityMatrix::diagonal(Distribution(std::vector<double>{0.75, 0.25}));
  const auto rep = qent::uncertainty_check(rho, Basis::standard(2), hadamard(),
                                           EntropyMeasure::von_neumann());
  CHECK(rep.holds);
  CHECK(near(rep.entropy_j1, 0.81127812445913283, 1e-14));
  CHECK(near(rep.entropy_j2, 1.0, 1e-14));
  CHECK(near(rep.bound, 2.0 * 0.81127812445913283, 1e-14));

  for (int k = 0; k < 20; ++k) {
    const DensityMatrix r = qent::random_density(3, 700 + k);
    const auto rr = qent::uncertainty_check(r, qent::haar_basis(3, 2 * k),
                                            qent::haar_basis(3, 2 * k + 1),
                                            EntropyMeasure::von_neumann());
    CHECK(rr.holds);
  }
}

TEST_CASE("entropy difference bound on bipartite states") {
  // product state: joint entropy is the sum, difference bound is loose
  const DensityMatrix a = qent::random_density(2, 31);
  const DensityMatrix b = qent::random_density(3, 32);
  const auto rep = qent::entropy_difference_bound(qent::tensor(a, b), 2, 3);
  CHECK(rep.holds);
  CHECK(near(rep.entropy_joint, rep.entropy_a + rep.entropy_b, 1e-10));
  CHECK(near(rep.lower_bound, std::abs(rep.entropy_a - rep.entropy_b), 1e-12));

  // pure entangled state: both marginals match and the bound is tight at zero
  const qent::Purification pur = qent::purify(a);
  const auto rep2 = qent::entropy_difference_bound(pur.state(), pur.dim_a, pur.dim_b);
  CHECK(rep2.holds);
  CHECK(near(rep2.entropy_joint, 0.0, 1e-10));
  CHECK(near(rep2.entropy_a, rep2.entropy_b, 1e-10));
}

TEST_CASE("chain of pure links: node entropies add, joints can dip below members") {
  const Distribution bell(std::vector<double>{0.5, 0.5});
  const auto rep = qent::build_chain_network({bell, bell});
  CHECK(rep.nodes == 3);
  REQUIRE(rep.node_entropy.size() == 3);
  CHECK(near(rep.node_entropy[0], 1.0, 1e-12));
  CHECK(near(rep.node_entropy[1], 2.0, 1e-12));
  CHECK(near(rep.node_entropy[2], 1.0, 1e-12));
  CHECK(rep.identities_ok);
  for (int i = 0; i < 3; ++i) {
    CHECK(near(rep.complement_entropy[i], rep.node_entropy[i], 1e-10));
  }
  // dropping an end node leaves a joint strictly below the middle node
  REQUIRE(rep.flags.size() == 2);
  CHECK(rep.flags[0].member_node == 1);
  CHECK(rep.flags[1].member_node == 1);
  CHECK(rep.flags[0].joint_entropy < rep.flags[0].member_entropy - 0.5);

  // asymmetric links: middle node entropy is the sum of its link halves
  const auto rep2 = qent::build_chain_network(
      {Distribution(std::vector<double>{0.9, 0.1}),
       Distribution(std::vector<double>{0.8, 0.2})});
  CHECK(near(rep2.node_entropy[0], 0.46899559358928122, 1e-14));
  CHECK(near(rep2.node_entropy[2], 0.72192809488736231, 1e-14));
  CHECK(near(rep2.node_entropy[1], 1.1909236884766434, 1e-13));
  CHECK(rep2.identities_ok);
  CHECK(rep2.max_identity_residual <= 1e-9);
}
