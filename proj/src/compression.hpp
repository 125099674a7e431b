#pragma once

#include <vector>

#include "channels.hpp"
#include "density.hpp"
#include "distribution.hpp"

namespace qent {

// Occupation class of i.i.d. length-n strings over an alphabet of size <= 4;
// multiplicities are exact 128-bit multinomials.
struct TypeClass {
  std::vector<int> occupation;
  double log2_prob = 0.0;  // per-sequence log2 probability (-inf when zero)
  unsigned __int128 multiplicity = 0;
  bool typical = false;
  unsigned __int128 kept = 0;  // sequences kept by a projector (fidelity scan)
};

struct TypicalSet {
  int n = 0;
  double eps = 0.0;
  double entropy = 0.0;  // single-letter entropy in bits
  std::vector<TypeClass> classes;
  double total_probability = 0.0;  // mass inside the set
  double log2_size = 0.0;          // log2 of the member count

  const TypeClass* find(const std::vector<int>& occupation) const;
};

// Membership window: -n(H+eps) <= log2 P(x) <= -n(H-eps).
TypicalSet typical_set(const Distribution& p, int n, double eps);

// Fidelity kept by the best rank-floor(2^{n rate}) projector on n i.i.d.
// copies: classes ranked by per-sequence probability (lexicographic
// tie-break), greedily filled against the dimension budget. When score_under
// is set, the projector is chosen from `spectrum` but the kept weight is
// scored under that other distribution (universality runs).
struct FidelityResult {
  double fidelity = 0.0;
  double kept_log2_dim = 0.0;
  unsigned __int128 kept_sequences = 0;
};

FidelityResult typical_subspace_fidelity(const Distribution& spectrum, int n,
                                         double rate,
                                         const Distribution* score_under = nullptr);

struct SubspaceRow {
  int n = 0;
  double rate = 0.0;
  double fidelity = 0.0;
  double kept_log2_dim = 0.0;
};

// Pinch rho in basis j, then sweep block lengths and rates on the resulting
// spectrum.
std::vector<SubspaceRow> rate_fidelity_curve(const DensityMatrix& rho,
                                             const Basis& j,
                                             const std::vector<int>& lengths,
                                             const std::vector<double>& rates);

}  // namespace qent
