#include "compression.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "entropy.hpp"
#include "error.hpp"

namespace qent {

namespace {

constexpr int kMaxAlphabet = 4;
constexpr int kMaxBlock = 64;

using U128 = unsigned __int128;

U128 binomial_u128(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  U128 r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<U128>(n - k + i) / static_cast<U128>(i);
  }
  return r;
}

U128 multinomial_u128(int n, const std::vector<int>& k) {
  U128 r = 1;
  int used = 0;
  for (int ki : k) {
    used += ki;
    r *= binomial_u128(used, ki);
  }
  (void)n;
  return r;
}

void check_inputs(const Distribution& p, int n) {
  if (p.size() > kMaxAlphabet) {
    throw Error(ErrorCode::TooLarge, "alphabet capped at 4 letters");
  }
  if (n < 1 || n > kMaxBlock) {
    throw Error(ErrorCode::TooLarge, "block length must lie in [1, 64]");
  }
}

// log2 of the per-sequence probability of an occupation under weights w
double class_log2_prob(const std::vector<int>& occ, const Eigen::VectorXd& w) {
  long double acc = 0.0L;
  for (size_t i = 0; i < occ.size(); ++i) {
    if (occ[i] == 0) continue;
    if (w(static_cast<int>(i)) <= 0.0) return -std::numeric_limits<double>::infinity();
    acc += occ[i] * std::log2(static_cast<long double>(w(static_cast<int>(i))));
  }
  return static_cast<double>(acc);
}

std::vector<TypeClass> enumerate_classes(const Distribution& p, int n) {
  const int a = p.size();
  std::vector<TypeClass> out;
  std::vector<int> occ(a, 0);
  // lexicographically descending enumeration of occupations
  std::function<void(int, int)> rec = [&](int letter, int left) {
    if (letter == a - 1) {
      occ[letter] = left;
      TypeClass tc;
      tc.occupation = occ;
      tc.multiplicity = multinomial_u128(n, occ);
      tc.log2_prob = class_log2_prob(occ, p.vec());
      out.push_back(tc);
      return;
    }
    for (int k = left; k >= 0; --k) {
      occ[letter] = k;
      rec(letter + 1, left - k);
    }
  };
  rec(0, n);
  return out;
}

long double class_mass(const TypeClass& tc) {
  if (tc.multiplicity == 0 || std::isinf(tc.log2_prob)) return 0.0L;
  return static_cast<long double>(tc.multiplicity) *
         std::exp2(static_cast<long double>(tc.log2_prob));
}

}  // namespace

const TypeClass* TypicalSet::find(const std::vector<int>& occupation) const {
  for (const TypeClass& tc : classes) {
    if (tc.occupation == occupation) return &tc;
  }
  return nullptr;
}

TypicalSet typical_set(const Distribution& p, int n, double eps) {
  check_inputs(p, n);
  if (!(eps > 0.0)) throw Error(ErrorCode::BadInput, "width must be positive");

  TypicalSet set;
  set.n = n;
  set.eps = eps;
  set.entropy = classical_entropy(p, EntropyMeasure::von_neumann());
  set.classes = enumerate_classes(p, n);

  const double lo = -n * (set.entropy + eps) - 1e-12;
  const double hi = -n * (set.entropy - eps) + 1e-12;
  long double mass = 0.0L, count = 0.0L;
  for (TypeClass& tc : set.classes) {
    tc.typical = std::isfinite(tc.log2_prob) && tc.log2_prob >= lo && tc.log2_prob <= hi;
    if (tc.typical) {
      mass += class_mass(tc);
      count += static_cast<long double>(tc.multiplicity);
    }
  }
  set.total_probability = static_cast<double>(mass);
  set.log2_size = (count > 0.0L) ? static_cast<double>(std::log2(count))
                                 : -std::numeric_limits<double>::infinity();
  return set;
}

FidelityResult typical_subspace_fidelity(const Distribution& spectrum, int n,
                                         double rate,
                                         const Distribution* score_under) {
  check_inputs(spectrum, n);
  if (rate < 0.0) throw Error(ErrorCode::BadInput, "rate must be nonnegative");
  if (score_under && score_under->size() != spectrum.size()) {
    throw Error(ErrorCode::DimensionMismatch, "scoring weights mismatch the alphabet");
  }

  const Eigen::VectorXd& score =
      score_under ? score_under->vec() : spectrum.vec();
  const double full_log2_dim = n * std::log2(static_cast<double>(spectrum.size()));

  FidelityResult res;
  if (n * rate >= full_log2_dim - 1e-12) {
    // budget covers the whole space: the projector is the identity
    res.fidelity = 1.0;
    res.kept_log2_dim = full_log2_dim;
    res.kept_sequences = 0;  // not tracked in the saturated shortcut
    return res;
  }

  std::vector<TypeClass> classes = enumerate_classes(spectrum, n);
  std::sort(classes.begin(), classes.end(), [](const TypeClass& a, const TypeClass& b) {
    if (a.log2_prob != b.log2_prob) return a.log2_prob > b.log2_prob;
    return a.occupation < b.occupation;
  });

  U128 budget = static_cast<U128>(std::exp2(static_cast<long double>(n) * rate));
  long double kept_total = 0.0L, fid = 0.0L;
  U128 kept_seq = 0;
  for (TypeClass& tc : classes) {
    if (budget == 0) break;
    const U128 take = std::min<U128>(budget, tc.multiplicity);
    tc.kept = take;
    budget -= take;
    kept_seq += take;
    kept_total += static_cast<long double>(take);
    const double lp = class_log2_prob(tc.occupation, score);
    if (std::isfinite(lp)) {
      fid += static_cast<long double>(take) * std::exp2(static_cast<long double>(lp));
    }
  }
  res.fidelity = static_cast<double>(fid);
  res.kept_log2_dim =
      (kept_total > 0.0L) ? static_cast<double>(std::log2(kept_total)) : 0.0;
  res.kept_sequences = kept_seq;
  return res;
}

std::vector<SubspaceRow> rate_fidelity_curve(const DensityMatrix& rho,
                                             const Basis& j,
                                             const std::vector<int>& lengths,
                                             const std::vector<double>& rates) {
  const Distribution spec = measurement_distribution(rho, j);
  std::vector<SubspaceRow> rows;
  for (int n : lengths) {
    for (double r : rates) {
      FidelityResult f = typical_subspace_fidelity(spec, n, r);
      rows.push_back({n, r, f.fidelity, f.kept_log2_dim});
    }
  }
  return rows;
}

}  // namespace qent
