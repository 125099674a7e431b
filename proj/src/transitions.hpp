#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "channels.hpp"
#include "density.hpp"
#include "distribution.hpp"

namespace qent {

// One unitary leg of a plan; dims are the tensor factors it acts on, listed
// system first.
struct TransitionStage {
  std::string name;
  Matrix unitary;
  std::vector<int> dims;
};

struct TransitionPlan {
  Eigen::VectorXd source_spectrum;
  Eigen::VectorXd target_spectrum;
  std::vector<TransitionStage> stages;
  std::vector<int> ancilla_dims;
  std::optional<DensityMatrix> catalyst;
  std::optional<Basis> catalyst_dephasing;  // basis restoring the catalyst
  Matrix output_marginal;         // system marginal actually produced
  double residual_target = 0.0;   // half trace distance to the target
  double residual_marginal = 0.0; // ancilla / catalyst restoration defect
  double success_probability = 1.0;
  bool entropy_warning = false;   // target entropy does not strictly increase
  int truncation_terms = 0;       // approximate mode
  double tail_source = 0.0;
  double tail_target = 0.0;
  double epsilon = 0.0;
};

// Real orthogonal W with diag(W diag(p) W^T) = q, valid whenever p majorizes
// q; built as a chain of at most dim-1 pivot rotations.
Basis schur_horn_rotation(const Distribution& p, const Distribution& q);

// Exact transition rho -> target on a maximally mixed ancilla of matching
// dimension: rotate to the source eigenframe, apply the Schur-Horn rotation,
// lift the pinching to a unitary, rotate into the target eigenframe. Requires
// spectrum(rho) to majorize spectrum(target); unequal dimensions are
// zero-padded.
TransitionPlan construct_noisy_transition(const DensityMatrix& rho,
                                          const DensityMatrix& target);

// A catalyst proposal: tau on its own register, a unitary on system (x)
// catalyst mapping the pinched source to the target while the dephasing of
// the catalyst marginal in `dephasing_basis` restores tau.
struct CatalystPair {
  DensityMatrix tau;
  Matrix unitary;  // (d_sys * d_cat) square
  Basis dephasing_basis;
};

using CatalystOracle = std::function<std::optional<CatalystPair>(
    const DensityMatrix& pinched_source, const DensityMatrix& target)>;

// Oracle backed by construct_noisy_transition: answers when dimensions match
// and the pinched spectrum majorizes the target spectrum, with tau maximally
// mixed.
CatalystOracle noisy_catalyst_oracle();

// Oracle that always declines (for exercising the infeasible path).
CatalystOracle empty_catalyst_oracle();

// Numerical catalyst search: alternating polar-decomposition updates of the
// unitary and fixed-point updates of tau; succeeds when both residuals fall
// below 1e-6. Warm-starts from the noisy construction when it applies.
std::optional<CatalystPair> search_catalyst(const DensityMatrix& pinched_source,
                                            const DensityMatrix& target,
                                            int dim_catalyst, int budget,
                                            std::uint64_t seed);

// Pinch rho in basis j, obtain a catalyst pair from the oracle, and compose
// the dephasing lift with the oracle unitary into one global plan whose
// environment sigma = (1/d) (x) tau is restored after its own dephasing.
TransitionPlan compose_catalytic(const DensityMatrix& rho, const Basis& j,
                                 const DensityMatrix& target,
                                 const CatalystOracle& oracle);

// k-th weight of a nonincreasing, summable spectrum (k = 0, 1, ...).
using SpectrumStream = std::function<double(int)>;

// Truncate both streams once their tails drop below eps/4, renormalize, run
// the exact construction on the head, and certify the residual on a larger
// embedding space.
TransitionPlan approx_transition_truncated(const SpectrumStream& source,
                                           const SpectrumStream& target,
                                           double eps,
                                           const CatalystOracle* oracle = nullptr);

// Largest success probability p such that the source spectrum majorizes the
// block spectrum (p * target, (1-p)/k * uniform k); builds the transition to
// the block state and reads the achieved probability off the output marginal.
TransitionPlan probabilistic_conversion(const DensityMatrix& rho,
                                        const DensityMatrix& target, int k_pad);

}  // namespace qent
