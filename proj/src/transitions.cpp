#include "transitions.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "entropy.hpp"
#include "error.hpp"

namespace qent {

namespace {

std::vector<int> order_desc(const Eigen::VectorXd& v) {
  std::vector<int> idx(v.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](int a, int b) { return v(a) > v(b); });
  return idx;
}

}  // namespace

Basis schur_horn_rotation(const Distribution& p, const Distribution& q) {
  const int d = p.size();
  if (q.size() != d) throw Error(ErrorCode::DimensionMismatch, "spectra lengths differ");
  if (!majorizes(p, q)) {
    throw Error(ErrorCode::NotMajorized, "source spectrum does not majorize target");
  }

  const std::vector<int> ip = order_desc(p.vec());
  const std::vector<int> iq = order_desc(q.vec());
  Eigen::VectorXd w(d), qs(d);
  for (int k = 0; k < d; ++k) {
    w(k) = p[ip[k]];
    qs(k) = q[iq[k]];
  }

  Eigen::MatrixXd ws = Eigen::MatrixXd::Identity(d, d);
  std::vector<bool> active(d, true);
  std::vector<int> landing(d, -1);  // row that ends up holding target t
  for (int t = 0; t < d - 1; ++t) {
    const double target = qs(t);
    // pivot pair: the smallest active value still >= target and the largest
    // active value below it; sending them to (target, leftover) keeps the
    // remaining values majorizing the remaining targets
    int i = -1, j = -1;
    for (int k = 0; k < d; ++k) {
      if (!active[k]) continue;
      if (w(k) >= target - 1e-13) {
        if (i < 0 || w(k) < w(i)) i = k;
      } else if (j < 0 || w(k) > w(j)) {
        j = k;
      }
    }
    if (i < 0) {  // fp slack: fall back to the largest active value
      for (int k = 0; k < d; ++k)
        if (active[k] && (i < 0 || w(k) > w(i))) i = k;
    }
    if (j < 0) {  // every active value sits at the target within slack
      for (int k = 0; k < d; ++k)
        if (active[k] && k != i && (j < 0 || w(k) < w(j))) j = k;
    }
    const double wi = w(i), wj = w(j);
    double c2 = 1.0;
    if (wi - wj > 1e-15) c2 = std::clamp((target - wj) / (wi - wj), 0.0, 1.0);
    const double c = std::sqrt(c2), sn = std::sqrt(1.0 - c2);
    const Eigen::RowVectorXd ri = ws.row(i), rj = ws.row(j);
    ws.row(i) = c * ri + sn * rj;
    ws.row(j) = -sn * ri + c * rj;
    active[i] = false;
    landing[t] = i;
    w(j) = wi + wj - target;
  }
  for (int k = 0; k < d; ++k)
    if (active[k]) landing[d - 1] = k;  // the survivor carries the last target

  // gather rows into target order, then undo the sorting permutations:
  // W(a, b) = Ws(landing(rank_q(a)), rank_p(b))
  std::vector<int> rp(d), rq(d);
  for (int k = 0; k < d; ++k) {
    rp[ip[k]] = k;
    rq[iq[k]] = k;
  }
  Eigen::MatrixXd wf(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) wf(a, b) = ws(landing[rq[a]], rp[b]);

  for (int a = 0; a < d; ++a) {
    double diag = 0.0;
    for (int l = 0; l < d; ++l) diag += wf(a, l) * wf(a, l) * p[l];
    if (std::abs(diag - q[a]) > 1e-10) {
      throw Error(ErrorCode::Internal, "pivot chain failed to land on the target diagonal");
    }
  }
  return Basis(wf.cast<std::complex<double>>());
}

namespace {

Matrix embed_top_left(const Matrix& small, int big_dim) {
  Matrix out = Matrix::Zero(big_dim, big_dim);
  out.topLeftCorner(small.rows(), small.cols()) = small;
  return out;
}

Matrix block_identity_embed(const Matrix& u_core, int sys_core, int anc,
                            int sys_full) {
  Matrix big = Matrix::Identity(static_cast<Eigen::Index>(sys_full) * anc,
                                static_cast<Eigen::Index>(sys_full) * anc);
  big.topLeftCorner(static_cast<Eigen::Index>(sys_core) * anc,
                    static_cast<Eigen::Index>(sys_core) * anc) = u_core;
  return big;
}

}  // namespace

TransitionPlan construct_noisy_transition(const DensityMatrix& rho,
                                          const DensityMatrix& target) {
  const int d_dim = std::max(rho.dim(), target.dim());
  if (static_cast<long>(d_dim) * d_dim > kMaxDenseDim) {
    throw Error(ErrorCode::TooLarge, "global unitary would exceed the dense cap");
  }
  auto [lam, va] = eigensystem(rho);
  auto [mu, vt] = eigensystem(target);
  Eigen::VectorXd lam_pad = Eigen::VectorXd::Zero(d_dim);
  Eigen::VectorXd mu_pad = Eigen::VectorXd::Zero(d_dim);
  lam_pad.head(rho.dim()) = lam.vec();
  mu_pad.head(target.dim()) = mu.vec();
  if (!majorizes_raw(lam_pad, mu_pad)) {
    throw Error(ErrorCode::NotMajorized, "source spectrum does not majorize target");
  }

  Basis w = schur_horn_rotation(Distribution(lam_pad), Distribution(mu_pad));

  Matrix va_pad = Matrix::Identity(d_dim, d_dim);
  va_pad.topLeftCorner(rho.dim(), rho.dim()) = va.mat();
  Matrix vt_pad = Matrix::Identity(d_dim, d_dim);
  vt_pad.topLeftCorner(target.dim(), target.dim()) = vt.mat();

  // U = sum_j (Vt e_j e_j^T W Va^dagger) (x) X^j : rotate into the source
  // eigenframe, mix by the pivot chain, lift the pinch with shift powers,
  // land in the target eigenframe.
  const Matrix bm = w.mat() * va_pad.adjoint();
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(d_dim) * d_dim,
                          static_cast<Eigen::Index>(d_dim) * d_dim);
  for (int j = 0; j < d_dim; ++j) {
    for (int x = 0; x < d_dim; ++x) {
      const std::complex<double> axj = vt_pad(x, j);
      if (axj == std::complex<double>(0, 0)) continue;
      for (int y = 0; y < d_dim; ++y) {
        const std::complex<double> coeff = axj * bm(j, y);
        if (coeff == std::complex<double>(0, 0)) continue;
        for (int v = 0; v < d_dim; ++v) {
          u(static_cast<Eigen::Index>(x) * d_dim + (v + j) % d_dim,
            static_cast<Eigen::Index>(y) * d_dim + v) += coeff;
        }
      }
    }
  }

  Matrix rho_emb = embed_top_left(rho.mat(), d_dim);
  Matrix target_emb = embed_top_left(target.mat(), d_dim);

  // Marginals computed from the shift-sector structure (exactly the marginals
  // of U (rho (x) I/d) U^dagger, without materializing the d^2 state).
  const Matrix c = bm * rho_emb * bm.adjoint();
  const Matrix g = vt_pad.adjoint() * vt_pad;
  Matrix sys_out = Matrix::Zero(d_dim, d_dim);
  for (int j = 0; j < d_dim; ++j) {
    sys_out += c(j, j) * (vt_pad.col(j) * vt_pad.col(j).adjoint());
  }
  Matrix anc_out = Matrix::Zero(d_dim, d_dim);
  for (int m = 0; m < d_dim; ++m) {
    std::complex<double> tm = 0.0;
    for (int j = 0; j < d_dim; ++j) {
      const int jm = (j - m + d_dim) % d_dim;
      tm += c(j, jm) * g(jm, j);
    }
    for (int v = 0; v < d_dim; ++v) anc_out((v + m) % d_dim, v) += tm / static_cast<double>(d_dim);
  }

  TransitionPlan plan;
  plan.source_spectrum = lam_pad;
  plan.target_spectrum = mu_pad;
  plan.stages.push_back({"noisy_core", u, {d_dim, d_dim}});
  plan.ancilla_dims = {d_dim};
  plan.output_marginal = sys_out;
  plan.residual_target = trace_distance_raw(sys_out, target_emb);
  plan.residual_marginal = trace_distance_raw(
      anc_out, Matrix::Identity(d_dim, d_dim) / static_cast<double>(d_dim));
  const double s_src = classical_entropy(Distribution(lam_pad),
                                         EntropyMeasure::von_neumann());
  const double s_tgt = classical_entropy(Distribution(mu_pad),
                                         EntropyMeasure::von_neumann());
  plan.entropy_warning = !(s_tgt > s_src + 1e-12);
  if (plan.residual_target > 1e-8 || plan.residual_marginal > 1e-8) {
    throw Error(ErrorCode::VerificationFailed, "transition marginals missed the target");
  }
  return plan;
}

CatalystOracle noisy_catalyst_oracle() {
  return [](const DensityMatrix& pinched,
            const DensityMatrix& target) -> std::optional<CatalystPair> {
    if (pinched.dim() != target.dim()) return std::nullopt;
    if (!majorizes(spectrum(pinched), spectrum(target))) return std::nullopt;
    TransitionPlan plan = construct_noisy_transition(pinched, target);
    return CatalystPair{DensityMatrix::maximally_mixed(pinched.dim()),
                        plan.stages.at(0).unitary, Basis::standard(pinched.dim())};
  };
}

CatalystOracle empty_catalyst_oracle() {
  return [](const DensityMatrix&, const DensityMatrix&) { return std::nullopt; };
}

std::optional<CatalystPair> search_catalyst(const DensityMatrix& pinched,
                                            const DensityMatrix& target,
                                            int dim_catalyst, int budget,
                                            std::uint64_t seed) {
  const int d_sys = pinched.dim();
  if (target.dim() != d_sys) {
    throw Error(ErrorCode::DimensionMismatch, "catalyst search needs equal system dims");
  }
  if (dim_catalyst < 1 || static_cast<long>(d_sys) * dim_catalyst > 64) {
    throw Error(ErrorCode::TooLarge, "catalyst search caps system x catalyst at 64");
  }
  if (dim_catalyst == d_sys && majorizes(spectrum(pinched), spectrum(target))) {
    return noisy_catalyst_oracle()(pinched, target);
  }

  Rng rng(seed);
  const int dd = d_sys * dim_catalyst;
  Matrix tau = Matrix::Identity(dim_catalyst, dim_catalyst) / dim_catalyst;
  Matrix u = haar_unitary(dd, rng);
  double best = 1e300;
  Matrix best_u, best_tau;

  for (int it = 0; it < budget; ++it) {
    const Matrix in = kron(pinched.mat(), tau);
    const Matrix goal = kron(target.mat(), tau);
    // unitary maximizing Re tr[U in U^dagger goal] for fixed tau
    Eigen::JacobiSVD<Matrix> svd(goal * u * in, Eigen::ComputeThinU | Eigen::ComputeThinV);
    u = svd.matrixU() * svd.matrixV().adjoint();

    const Matrix chi = u * in * u.adjoint();
    const Matrix sys = partial_trace_raw(chi, d_sys, dim_catalyst, true);
    const Matrix env = partial_trace_raw(chi, d_sys, dim_catalyst, false);
    const Matrix env_dephased = env.diagonal().asDiagonal();
    const double r_sys = trace_distance_raw(sys, target.mat());
    const double r_tau = trace_distance_raw(env_dephased, tau);
    if (std::max(r_sys, r_tau) < best) {
      best = std::max(r_sys, r_tau);
      best_u = u;
      best_tau = tau;
    }
    if (best < 1e-7) break;
    tau = 0.5 * tau + 0.5 * env_dephased;
    tau = (tau + tau.adjoint()) / 2.0;
    tau /= tau.trace();
  }

  if (best > 1e-6) return std::nullopt;
  return CatalystPair{DensityMatrix(best_tau), best_u, Basis::standard(dim_catalyst)};
}

TransitionPlan compose_catalytic(const DensityMatrix& rho, const Basis& j,
                                 const DensityMatrix& target,
                                 const CatalystOracle& oracle) {
  const int d_sys = rho.dim();
  if (j.dim() != d_sys || target.dim() != d_sys) {
    throw Error(ErrorCode::DimensionMismatch, "state, basis and target dims must agree");
  }
  const DensityMatrix pinched = dephase(rho, j);
  const EntropyMeasure vn = EntropyMeasure::von_neumann();
  const double s_pin = quantum_entropy(pinched, vn);
  const double s_tgt = quantum_entropy(target, vn);

  std::optional<CatalystPair> pair = oracle(pinched, target);
  if (!pair) throw Error(ErrorCode::Infeasible, "catalyst oracle declined the transition");

  const int dc = pair->tau.dim();
  const Eigen::Index dd = static_cast<Eigen::Index>(d_sys) * dc;
  if (pair->unitary.rows() != dd || pair->unitary.cols() != dd) {
    throw Error(ErrorCode::OracleInvalid, "oracle unitary has the wrong shape");
  }
  if ((pair->unitary.adjoint() * pair->unitary - Matrix::Identity(dd, dd))
          .cwiseAbs().maxCoeff() > 1e-9) {
    throw Error(ErrorCode::OracleInvalid, "oracle matrix is not unitary");
  }
  if (pair->dephasing_basis.dim() != dc) {
    throw Error(ErrorCode::OracleInvalid, "oracle dephasing basis has the wrong dimension");
  }
  // oracle contract: the pair maps the pinched source onto the target and its
  // dephased catalyst marginal back onto tau
  const Matrix chi = pair->unitary * kron(pinched.mat(), pair->tau.mat()) *
                     pair->unitary.adjoint();
  const double h3 = trace_distance_raw(partial_trace_raw(chi, d_sys, dc, true),
                                       target.mat());
  const Matrix xi = partial_trace_raw(chi, d_sys, dc, false);
  const double h4 = trace_distance(dephase(DensityMatrix(xi), pair->dephasing_basis),
                                   pair->tau);
  if (h3 > 1e-6 || h4 > 1e-6) {
    throw Error(ErrorCode::OracleInvalid, "oracle pair violates its contract");
  }

  const Eigen::Index d_tot = static_cast<Eigen::Index>(d_sys) * d_sys * dc;
  if (d_tot > kMaxDenseDim) {
    throw Error(ErrorCode::TooLarge, "composed plan exceeds the dense cap");
  }

  DephasingLift lift = dephasing_lift(j);
  const Matrix u1_full = kron(lift.global_unitary, Matrix::Identity(dc, dc));
  // oracle unitary acts on (system, catalyst); the mix register spectates
  Matrix u2_full = Matrix::Zero(d_tot, d_tot);
  for (int x = 0; x < d_sys; ++x)
    for (int xp = 0; xp < d_sys; ++xp)
      for (int z = 0; z < dc; ++z)
        for (int zp = 0; zp < dc; ++zp) {
          const std::complex<double> val =
              pair->unitary(static_cast<Eigen::Index>(x) * dc + z,
                            static_cast<Eigen::Index>(xp) * dc + zp);
          if (val == std::complex<double>(0, 0)) continue;
          for (int y = 0; y < d_sys; ++y) {
            u2_full((static_cast<Eigen::Index>(x) * d_sys + y) * dc + z,
                    (static_cast<Eigen::Index>(xp) * d_sys + y) * dc + zp) = val;
          }
        }
  const Matrix u = u2_full * u1_full;

  const Matrix sigma = kron(Matrix::Identity(d_sys, d_sys) / d_sys, pair->tau.mat());
  const Matrix omega = u * kron(rho.mat(), sigma) * u.adjoint();

  const Matrix out_sys = partial_trace_raw(omega, d_sys, d_sys * dc, true);
  const Matrix env = partial_trace_raw(omega, d_sys, d_sys * dc, false);
  const Basis env_basis(kron(j.mat(), pair->dephasing_basis.mat()));
  const Matrix env_dephased =
      dephase(DensityMatrix(env), env_basis).mat();

  TransitionPlan plan;
  plan.source_spectrum = spectrum(pinched).vec();
  plan.target_spectrum = spectrum(target).vec();
  plan.stages.push_back({"pinch_lift", lift.global_unitary, {d_sys, d_sys}});
  plan.stages.push_back({"catalyst_unitary", pair->unitary, {d_sys, dc}});
  plan.stages.push_back({"composite", u, {d_sys, d_sys, dc}});
  plan.ancilla_dims = {d_sys, dc};
  plan.catalyst = pair->tau;
  plan.catalyst_dephasing = pair->dephasing_basis;
  plan.output_marginal = out_sys;
  plan.residual_target = trace_distance_raw(out_sys, target.mat());
  plan.residual_marginal = trace_distance_raw(env_dephased, sigma);
  plan.entropy_warning = !(s_tgt > s_pin + 1e-12);
  return plan;
}

namespace {

// tail_bound < 0 means "pull exactly cap terms"; throw_on_cap controls
// whether an unreached bound is an error or just reported via tail_out.
std::vector<double> pull_terms(const SpectrumStream& s, double tail_bound,
                               int cap, double* tail_out,
                               bool throw_on_cap = true) {
  std::vector<double> out;
  double sum = 0.0, prev = 1.0;
  while (static_cast<int>(out.size()) < cap) {
    double v = s(static_cast<int>(out.size()));
    if (!std::isfinite(v) || v < -1e-15) {
      throw Error(ErrorCode::BadInput, "spectrum stream produced an invalid weight");
    }
    if (v > prev + 1e-12) {
      throw Error(ErrorCode::BadInput, "spectrum stream is not nonincreasing");
    }
    v = std::max(v, 0.0);
    out.push_back(v);
    sum += v;
    prev = v;
    if (tail_bound >= 0.0 && 1.0 - sum <= tail_bound) break;
  }
  if (tail_bound >= 0.0 && 1.0 - sum > tail_bound && throw_on_cap) {
    throw Error(ErrorCode::TailNotSummable,
                "tail still above bound after " + std::to_string(cap) + " terms");
  }
  if (tail_out) *tail_out = std::max(0.0, 1.0 - sum);
  return out;
}

Eigen::VectorXd head_normalized(const std::vector<double>& terms, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = (i < static_cast<int>(terms.size())) ? terms[i] : 0.0;
  const double s = v.sum();
  if (s <= 0.0) throw Error(ErrorCode::BadInput, "empty spectrum head");
  return v / s;
}

}  // namespace

TransitionPlan approx_transition_truncated(const SpectrumStream& source,
                                           const SpectrumStream& target,
                                           double eps,
                                           const CatalystOracle* oracle) {
  if (!(eps > 0.0) || eps >= 1.0) {
    throw Error(ErrorCode::BadInput, "accuracy must lie in (0, 1)");
  }
  double tail_p = 0.0, tail_q = 0.0;
  std::vector<double> ph = pull_terms(source, eps / 4.0, kMaxDenseDim, &tail_p);
  std::vector<double> qh = pull_terms(target, eps / 4.0, kMaxDenseDim, &tail_q);
  const int n_head = static_cast<int>(std::max(ph.size(), qh.size()));
  // re-pull so both heads cover n_head terms, then renormalize
  ph = pull_terms(source, -1.0, n_head, &tail_p);
  qh = pull_terms(target, -1.0, n_head, &tail_q);
  const Eigen::VectorXd p_hat = head_normalized(ph, n_head);
  const Eigen::VectorXd q_hat = head_normalized(qh, n_head);

  TransitionPlan plan;
  if (majorizes_raw(p_hat, q_hat)) {
    plan = construct_noisy_transition(DensityMatrix::diagonal(Distribution(p_hat)),
                                      DensityMatrix::diagonal(Distribution(q_hat)));
  } else if (oracle != nullptr) {
    plan = compose_catalytic(DensityMatrix::diagonal(Distribution(p_hat)),
                             Basis::standard(n_head),
                             DensityMatrix::diagonal(Distribution(q_hat)), *oracle);
  } else {
    throw Error(ErrorCode::NotMajorized,
                "truncated head not majorized and no catalyst oracle supplied");
  }

  int anc_total = 1;
  for (int a : plan.ancilla_dims) anc_total *= a;
  const int n_allow = kMaxDenseDim / anc_total;
  if (n_allow < n_head) throw Error(ErrorCode::TooLarge, "certification space exceeds the dense cap");

  // certify on a much longer embedding: everything beyond the head rides along
  // untouched, so the residual is dominated by the discarded tails
  double tp2 = 0.0, tq2 = 0.0;
  std::vector<double> pf = pull_terms(source, 1e-12, n_allow, &tp2, false);
  std::vector<double> qf = pull_terms(target, 1e-12, n_allow, &tq2, false);
  const int n_big = std::max(
      n_head, static_cast<int>(std::max(pf.size(), qf.size())));
  pf = pull_terms(source, -1.0, n_big, &tp2);
  qf = pull_terms(target, -1.0, n_big, &tq2);
  const Eigen::VectorXd p_full = head_normalized(pf, n_big);
  const Eigen::VectorXd q_full = head_normalized(qf, n_big);

  const Matrix& u_core = plan.stages.back().unitary;
  const Matrix u_big = block_identity_embed(u_core, n_head, anc_total, n_big);
  Matrix env;
  if (plan.catalyst.has_value()) {
    env = kron(Matrix::Identity(n_head, n_head) / n_head, plan.catalyst->mat());
  } else {
    env = Matrix::Identity(anc_total, anc_total) / anc_total;
  }
  Matrix rho_full = Matrix::Zero(n_big, n_big);
  rho_full.diagonal() = p_full.cast<std::complex<double>>();
  Matrix target_full = Matrix::Zero(n_big, n_big);
  target_full.diagonal() = q_full.cast<std::complex<double>>();

  const Matrix omega = u_big * kron(rho_full, env) * u_big.adjoint();
  const Matrix out_sys = partial_trace_raw(omega, n_big, anc_total, true);
  const Matrix out_env = partial_trace_raw(omega, n_big, anc_total, false);

  plan.residual_target = trace_distance_raw(out_sys, target_full);
  if (plan.catalyst.has_value()) {
    const Basis env_basis(kron(Basis::standard(n_head).mat(),
                               plan.catalyst_dephasing.value().mat()));
    plan.residual_marginal =
        trace_distance(dephase(DensityMatrix(out_env), env_basis),
                       DensityMatrix(env));
  } else {
    plan.residual_marginal = trace_distance_raw(
        out_env, Matrix::Identity(anc_total, anc_total) / anc_total);
  }
  if (plan.residual_target >= eps) {
    throw Error(ErrorCode::VerificationFailed,
                "certified residual exceeds the requested accuracy");
  }
  plan.truncation_terms = n_head;
  plan.tail_source = tail_p;
  plan.tail_target = tail_q;
  plan.epsilon = eps;
  plan.output_marginal = out_sys;
  return plan;
}

TransitionPlan probabilistic_conversion(const DensityMatrix& rho,
                                        const DensityMatrix& target, int k_pad) {
  if (k_pad < 1) throw Error(ErrorCode::BadInput, "padding block needs at least one level");
  const Eigen::VectorXd lam = spectrum(rho).vec();
  const Eigen::VectorXd mu_all = spectrum(target).vec();
  int rank = 0;
  while (rank < mu_all.size() && mu_all(rank) > 1e-14) ++rank;
  Eigen::VectorXd mu = mu_all.head(rank);
  mu /= mu.sum();

  auto block_of = [&](double p) {
    Eigen::VectorXd b(rank + k_pad);
    b.head(rank) = p * mu;
    b.tail(k_pad).setConstant((1.0 - p) / k_pad);
    return b;
  };
  auto feasible = [&](double p) { return majorizes_raw(lam, block_of(p)); };

  // prefix-ratio candidate (exact in the large-padding limit)
  double p_cand = 1.0;
  double lam_prefix = 0.0, mu_prefix = 0.0;
  for (int jj = 0; jj < rank; ++jj) {
    lam_prefix += (jj < lam.size()) ? lam(jj) : 0.0;
    mu_prefix += mu(jj);
    p_cand = std::min(p_cand, lam_prefix / mu_prefix);
  }

  double p_star = -1.0;
  if (p_cand > 0.0 && feasible(p_cand)) {
    p_star = p_cand;
  } else {
    // the finite uniform block can break the candidate; locate the feasible
    // boundary by scan plus bisection
    double lo = -1.0;
    const int grid = 1000;
    for (int gpt = grid; gpt >= 0; --gpt) {
      const double p = p_cand * gpt / grid;
      if (feasible(p)) { lo = p; break; }
    }
    if (lo < 0.0) {
      throw Error(ErrorCode::NotMajorized, "no achievable success probability");
    }
    double hi = std::min(p_cand, lo + p_cand / grid);
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid)) lo = mid; else hi = mid;
    }
    p_star = lo;
  }
  if (!(p_star > 0.0)) {
    throw Error(ErrorCode::NotMajorized, "no achievable success probability");
  }

  const int d_all = std::max<int>(static_cast<int>(lam.size()), rank + k_pad);
  Eigen::VectorXd lam_pad = Eigen::VectorXd::Zero(d_all);
  lam_pad.head(lam.size()) = lam;
  Eigen::VectorXd block_pad = Eigen::VectorXd::Zero(d_all);
  block_pad.head(rank + k_pad) = block_of(p_star);

  TransitionPlan plan = construct_noisy_transition(
      DensityMatrix::diagonal(Distribution(lam_pad)),
      DensityMatrix::diagonal(Distribution(block_pad)));

  // success weight and conditional state read off the produced marginal
  double p_achieved = 0.0;
  for (int i = 0; i < rank; ++i) p_achieved += plan.output_marginal(i, i).real();
  Matrix conditional = plan.output_marginal.topLeftCorner(rank, rank) / p_achieved;
  Matrix mu_mat = Matrix::Zero(rank, rank);
  mu_mat.diagonal() = mu.cast<std::complex<double>>();
  plan.residual_target = trace_distance_raw(conditional, mu_mat);
  plan.success_probability = p_achieved;

  DephasingLift lift = dephasing_lift(Basis::standard(d_all));
  plan.stages.push_back({"block_pinch_lift", lift.global_unitary, {d_all, d_all}});
  plan.ancilla_dims.push_back(d_all);
  plan.target_spectrum = block_pad;
  return plan;
}

}  // namespace qent
