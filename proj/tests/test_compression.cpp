#include <doctest.h>

#include <cmath>
#include <vector>

#include "compression.hpp"
#include "density.hpp"
#include "distribution.hpp"
#include "helpers.hpp"

using qent::Distribution;
using qent::ErrorCode;
using qtest::near;
using qtest::raised;

namespace {
Distribution coin(double a) { return Distribution(std::vector<double>{a, 1.0 - a}); }
}  // namespace

TEST_CASE("occupation classes count every string exactly") {
  const auto set = qent::typical_set(coin(0.5), 4, 0.1);
  REQUIRE(set.classes.size() == 5);
  unsigned __int128 total = 0;
  const std::vector<unsigned long long> pascal{1, 4, 6, 4, 1};
  for (const auto& c : set.classes) total += c.multiplicity;
  CHECK(total == static_cast<unsigned __int128>(16));
  for (const auto& c : set.classes) {
    const int k = c.occupation[1];
    CHECK(c.multiplicity == static_cast<unsigned __int128>(pascal[k]));
  }
}

TEST_CASE("flat sources are entirely typical, deterministic ones trivially so") {
  const auto flat = qent::typical_set(coin(0.5), 10, 0.05);
  CHECK(near(flat.total_probability, 1.0, 1e-12));
  CHECK(near(flat.log2_size, 10.0, 1e-12));
  CHECK(near(flat.entropy, 1.0, 1e-15));

  const auto point = qent::typical_set(coin(1.0), 12, 0.05);
  CHECK(near(point.total_probability, 1.0, 1e-12));
  CHECK(near(point.log2_size, 0.0, 1e-12));
}

TEST_CASE("typical mass grows with the block length") {
  const Distribution p = coin(0.9);
  const std::vector<int> lengths{8, 16, 32, 64};
  const std::vector<double> frozen{0.38263752000000001, 0.60394732081097036,
                                   0.74917795165236689, 0.90952462907816667};
  for (size_t i = 0; i < lengths.size(); ++i) {
    const auto set = qent::typical_set(p, lengths[i], 0.2);
    CHECK(near(set.total_probability, frozen[i], 1e-12));
    if (i > 0) {
      CHECK(set.total_probability >
            qent::typical_set(p, lengths[i - 1], 0.2).total_probability);
    }
    // every member sits inside the probability window
    const double h = set.entropy;
    for (const auto& c : set.classes) {
      if (!c.typical) continue;
      CHECK(c.log2_prob >= -lengths[i] * (h + 0.2) - 1e-9);
      CHECK(c.log2_prob <= -lengths[i] * (h - 0.2) + 1e-9);
    }
  }
}

TEST_CASE("rank-limited projector fidelities at sixteen copies") {
  const Distribution p = coin(0.9);
  const auto low = qent::typical_subspace_fidelity(p, 16, 0.3);
  CHECK(near(low.fidelity, 0.53760462269158349, 1e-12));
  const auto high = qent::typical_subspace_fidelity(p, 16, 0.7);
  CHECK(near(high.fidelity, 0.97833591437018397, 1e-12));
  CHECK(low.kept_log2_dim <= 16 * 0.3 + 1e-12);
  CHECK(high.kept_log2_dim <= 16 * 0.7 + 1e-12);

  // rate one keeps the whole space
  const auto all = qent::typical_subspace_fidelity(p, 8, 1.0);
  CHECK(near(all.fidelity, 1.0, 1e-12));
  CHECK(near(all.kept_log2_dim, 8.0, 1e-12));

  // monotone in the rate
  double prev = 0.0;
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    const double f = qent::typical_subspace_fidelity(p, 12, r).fidelity;
    CHECK(f >= prev - 1e-15);
    prev = f;
  }
}

TEST_CASE("projector chosen from one source scores another") {
  const Distribution design = coin(0.9);
  const Distribution actual = coin(0.95);
  const auto cross = qent::typical_subspace_fidelity(design, 16, 0.7, &actual);
  CHECK(near(cross.fidelity, 0.99858544200055310, 1e-12));
  // the kept sequence count is fixed by the design source
  const auto own = qent::typical_subspace_fidelity(design, 16, 0.7);
  CHECK(cross.kept_sequences == own.kept_sequences);
}

TEST_CASE("rate-fidelity sweep pinches first") {
  const qent::DensityMatrix rho = qent::DensityMatrix::diagonal(coin(0.9));
  const auto rows = qent::rate_fidelity_curve(rho, qent::Basis::standard(2),
                                              {8, 16}, {0.3, 0.7});
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].n == 8);
  CHECK(rows[3].n == 16);
  CHECK(rows[3].rate == 0.7);
  CHECK(near(rows[3].fidelity, 0.97833591437018397, 1e-12));
  for (const auto& r : rows) {
    CHECK(r.fidelity > 0.0);
    CHECK(r.kept_log2_dim <= r.n * r.rate + 1.0);
  }
}

TEST_CASE("alphabet cap and argument validation") {
  const Distribution wide(std::vector<double>{0.3, 0.25, 0.2, 0.15, 0.1});
  CHECK(raised([&] { qent::typical_set(wide, 4, 0.1); }) == ErrorCode::TooLarge);
  CHECK(raised([] { qent::typical_set(coin(0.5), 0, 0.1); }) == ErrorCode::TooLarge);
  CHECK(raised([] { qent::typical_set(coin(0.5), 8, 0.0); }) == ErrorCode::BadInput);
  CHECK(raised([] { qent::typical_subspace_fidelity(coin(0.5), 8, -0.1); }) ==
        ErrorCode::BadInput);
}
