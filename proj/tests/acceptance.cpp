// Acceptance harness: one line per criterion, nonzero exit when any fails.
// Tolerances are pinned in the checks; seeds are fixed so reruns match.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "channels.hpp"
#include "compression.hpp"
#include "density.hpp"
#include "distribution.hpp"
#include "entropy.hpp"
#include "maxent.hpp"
#include "models.hpp"
#include "principles.hpp"
#include "transitions.hpp"

using namespace qent;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& msg) {
    if (!ok) {
      pass = false;
      if (notes.size() < 12) notes.push_back(msg);
    }
  }
  void note(const std::string& msg) { notes.push_back(msg); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// averaging pairs of coordinates keeps the original spectrum on top
Distribution smear(const Distribution& p, int steps, Rng& rng) {
  Eigen::VectorXd v = p.vec();
  const int n = static_cast<int>(v.size());
  for (int s = 0; s < steps; ++s) {
    const int i = static_cast<int>(rng.below(n));
    const int j = static_cast<int>(rng.below(n));
    if (i == j) continue;
    const double t = 0.5 * rng.uniform();
    const double mean = 0.5 * (v(i) + v(j));
    v(i) = (1.0 - t) * v(i) + t * mean;
    v(j) = (1.0 - t) * v(j) + t * mean;
  }
  return Distribution(v);
}

// random spectrum with entries bounded away from zero
Distribution floored_spectrum(int n, double floor_mass, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = -std::log(std::max(rng.uniform(), 1e-300));
  v = (1.0 - floor_mass) * v / v.sum() +
      (floor_mass / n) * Eigen::VectorXd::Ones(n);
  std::sort(v.data(), v.data() + n, std::greater<double>());
  return Distribution(v);
}

const std::vector<std::string> kMeasures{"vn", "renyi:0.5", "renyi:2",
                                         "tsallis:0.5", "tsallis:2"};

Outcome criterion_1() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  int cross_hits = 0;
  std::string cross_measures;
  for (int i = 0; i < 200; ++i) {
    const int dim = 2 + (i % 4);
    const DensityMatrix rho = random_density(dim, 1000 + i);
    for (size_t mi = 0; mi < kMeasures.size(); ++mi) {
      const EntropyMeasure m = EntropyMeasure::parse(kMeasures[mi]);
      const auto local = verify_local_minimum(rho, m, 500, 9000 + 10 * i + mi);
      out.require(std::abs(local.eigenbasis_value - local.state_entropy) <= 1e-9,
                  kMeasures[mi] + ": eigenbasis value off by " +
                      fmt(local.eigenbasis_value - local.state_entropy));
      out.require(local.holds(),
                  kMeasures[mi] + ": dephased entropy dipped below S by " +
                      fmt(local.state_entropy - local.sampled_min));

      const auto joint = verify_joint_principles(rho, m, 500, 40000 + 10 * i + mi);
      out.require(std::abs(joint.schmidt_joint - joint.state_entropy) <= 1e-9,
                  kMeasures[mi] + ": Schmidt joint entropy off");
      out.require(std::abs(joint.schmidt_cross - joint.state_entropy) <= 1e-9,
                  kMeasures[mi] + ": Schmidt cross value off");
      out.require(joint.joint_violations.empty(),
                  kMeasures[mi] + ": joint entropy dipped below S");
      if (!joint.cross_violations.empty()) {
        ++cross_hits;
        if (cross_measures.find(kMeasures[mi]) == std::string::npos) {
          cross_measures += (cross_measures.empty() ? "" : ", ") + kMeasures[mi];
        }
      }
    }
  }
  if (cross_hits > 0) {
    out.pass = false;
    out.note("cross maximum exceeded S(rho)+1e-9 on " + std::to_string(cross_hits) +
             " state/measure runs (measures: " + cross_measures + ")");
  }
  const double dt = seconds_since(t0);
  out.require(dt < 300.0, "runtime " + fmt(dt) + "s exceeds 5 min");
  out.note("elapsed " + fmt(dt) + "s");
  return out;
}

Outcome criterion_2() {
  Outcome out;
  for (int k = 0; k < 1000; ++k) {
    const int dim = 2 + (k % 3);
    const DensityMatrix rho = random_density(dim, 2000 + k);
    const Basis j1 = haar_basis(dim, 60000 + 2 * k);
    const Basis j2 = haar_basis(dim, 60001 + 2 * k);
    for (const auto& name : kMeasures) {
      const auto rep = uncertainty_check(rho, j1, j2, EntropyMeasure::parse(name));
      out.require(rep.holds, name + " violated at triple " + std::to_string(k) +
                                 " by " + fmt(rep.bound - rep.entropy_j1 - rep.entropy_j2));
      if (!out.pass) return out;
    }
  }
  return out;
}

Outcome criterion_3() {
  Outcome out;
  for (int dim = 2; dim <= 6; ++dim) {
    const Basis j = haar_basis(dim, 70 + dim);
    const DephasingLift lift = dephasing_lift(j);
    const Matrix flat = Matrix::Identity(dim, dim) / dim;
    for (int k = 0; k < 100; ++k) {
      const DensityMatrix rho = random_density(dim, 3000 + 100 * dim + k);
      const Matrix omega = lift.global_unitary * kron(rho.mat(), flat) *
                           lift.global_unitary.adjoint();
      const double r_sys = (partial_trace_raw(omega, dim, dim, true) -
                            dephase(rho, j).mat()).cwiseAbs().maxCoeff();
      const double r_anc =
          (partial_trace_raw(omega, dim, dim, false) - flat).cwiseAbs().maxCoeff();
      out.require(r_sys < 1e-10, "system marginal residual " + fmt(r_sys) +
                                     " at dim " + std::to_string(dim));
      out.require(r_anc < 1e-10, "ancilla marginal residual " + fmt(r_anc) +
                                     " at dim " + std::to_string(dim));
      if (!out.pass) return out;
    }
  }
  return out;
}

Outcome criterion_4() {
  Outcome out;
  Rng rng(4000);
  for (int k = 0; k < 200; ++k) {
    const int dim = 2 + (k % 4);
    const DensityMatrix rho = random_density(dim, 4100 + k);
    const Distribution tgt_spec = smear(spectrum(rho), 3 * dim, rng);
    const Matrix v = haar_unitary(dim, rng);
    Matrix tm = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) tm(i, i) = tgt_spec[i];
    const DensityMatrix target(v * tm * v.adjoint());
    const auto plan = construct_noisy_transition(rho, target);
    out.require(plan.residual_target < 1e-8,
                "target residual " + fmt(plan.residual_target) + " at case " +
                    std::to_string(k));
    out.require(plan.residual_marginal < 1e-8,
                "ancilla residual " + fmt(plan.residual_marginal) + " at case " +
                    std::to_string(k));
    if (!out.pass) return out;
  }
  return out;
}

Outcome criterion_5() {
  Outcome out;
  Rng rng(5000);
  const CatalystOracle oracle = noisy_catalyst_oracle();
  for (int k = 0; k < 50; ++k) {
    const int dim = 2 + (k % 3);
    const DensityMatrix rho = random_density(dim, 5100 + k);
    const Basis j = haar_basis(dim, 5200 + k);
    const DensityMatrix pinched = dephase(rho, j);
    const Distribution tgt_spec = smear(spectrum(pinched), 3 * dim, rng);
    const DensityMatrix target = DensityMatrix::diagonal(tgt_spec);
    const auto plan = compose_catalytic(rho, j, target, oracle);
    out.require(plan.residual_target < 1e-8,
                "target residual " + fmt(plan.residual_target) + " at case " +
                    std::to_string(k));
    out.require(plan.residual_marginal < 1e-8,
                "environment restoration residual " + fmt(plan.residual_marginal) +
                    " at case " + std::to_string(k));
    if (!out.pass) return out;
  }
  return out;
}

Outcome criterion_6() {
  Outcome out;
  Rng rng(6000);
  for (int k = 0; k < 50; ++k) {
    const int n = 3 + (k % 3);
    const int m = 2 + (k % 2);
    const Distribution lam = floored_spectrum(n, 0.4, rng);
    const Distribution mu = floored_spectrum(m, 0.4, rng);
    const auto plan = probabilistic_conversion(DensityMatrix::diagonal(lam),
                                               DensityMatrix::diagonal(mu), 16);
    // partial-sum bound: smallest prefix ratio of source over target weights
    double bound = 1.0, lp = 0.0, mp = 0.0;
    for (int i = 0; i < m; ++i) {
      lp += (i < n) ? lam[i] : 0.0;
      mp += mu[i];
      bound = std::min(bound, lp / mp);
    }
    out.require(std::abs(plan.success_probability - bound) <= 1e-9,
                "probability " + fmt(plan.success_probability) + " vs bound " +
                    fmt(bound) + " at case " + std::to_string(k));
    out.require(plan.residual_target < 1e-8,
                "conditional residual " + fmt(plan.residual_target));
    out.require(plan.residual_marginal < 1e-8,
                "ancilla residual " + fmt(plan.residual_marginal));
    if (!out.pass) return out;
  }
  return out;
}

Outcome criterion_7() {
  Outcome out;
  const SpectrumStream geo = [](int k) { return std::pow(0.5, k + 1); };
  for (double eps : {0.1, 0.01}) {
    const auto plan = approx_transition_truncated(geo, geo, eps);
    out.require(plan.residual_target < eps,
                "target residual " + fmt(plan.residual_target) + " at eps " + fmt(eps));
    out.require(plan.residual_marginal < eps,
                "environment residual " + fmt(plan.residual_marginal) + " at eps " +
                    fmt(eps));
    out.note("eps " + fmt(eps) + ": " + std::to_string(plan.truncation_terms) +
             " retained terms, residuals " + fmt(plan.residual_target) + " / " +
             fmt(plan.residual_marginal));
  }
  return out;
}

Outcome criterion_8() {
  Outcome out;
  const auto t0 = std::chrono::steady_clock::now();
  double worst_gap = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int n = 3 + (k % 2);
    const int m = 2 + ((k / 2) % 2);
    const Matrix u = haar_basis(n, 8100 + 2 * k).mat();
    const Matrix v = haar_basis(n, 8101 + 2 * k).mat();
    // coarse-grained observation: outcomes beyond the first m-1 are merged,
    // so every latent row still carries unit mass
    Eigen::MatrixXd alpha = Eigen::MatrixXd::Zero(n, m);
    for (int j = 0; j < n; ++j) {
      const int g = std::min(j, m - 1);
      for (int i = 0; i < n; ++i) alpha(i, g) += std::norm(u.col(i).dot(v.col(j)));
    }
    const Distribution truth = spectrum(random_density(n, 8500 + k));
    const Eigen::VectorXd qv = alpha.transpose() * truth.vec();

    MaxEntProblem prob;
    prob.q = Distribution(qv);
    prob.alpha = alpha;
    const auto full = solve_maxent_full(prob);
    const auto oracle = brute_force_maxent(prob);
    const double gap = std::abs(full.objective - oracle.objective);
    worst_gap = std::max(worst_gap, gap);
    out.require(gap <= 1e-4, "objective gap " + fmt(gap) + " at case " +
                                 std::to_string(k));
    out.require(full.residual_constraint <= 1e-8,
                "constraint residual " + fmt(full.residual_constraint));
    if (!out.pass) return out;
  }
  Rng rng(8700);
  for (int n = 2; n <= 5; ++n) {
    MaxEntProblem prob;
    prob.q = floored_spectrum(n, 0.2, rng);
    prob.alpha = Eigen::MatrixXd::Identity(n, n);
    const auto sol = solve_maxent_full(prob);
    const double err = (sol.p - prob.q.vec()).cwiseAbs().maxCoeff();
    out.require(err <= 1e-10, "identity-overlap mismatch " + fmt(err));
  }
  const double dt = seconds_since(t0);
  out.require(dt < 600.0, "runtime " + fmt(dt) + "s exceeds 10 min");
  out.note("worst objective gap " + fmt(worst_gap) + ", elapsed " + fmt(dt) + "s");
  return out;
}

Outcome criterion_9() {
  Outcome out;
  const Distribution p(std::vector<double>{0.9, 0.1});
  const auto high = typical_subspace_fidelity(p, 16, 0.7);
  const auto low = typical_subspace_fidelity(p, 16, 0.3);
  out.require(high.fidelity >= 0.9, "fidelity at rate 0.7 is " + fmt(high.fidelity));
  out.require(high.fidelity > low.fidelity, "no gain from rate 0.3 to 0.7");
  out.require(std::abs(high.fidelity - 0.97833591437018397) <= 1e-12,
              "rate-0.7 fidelity drifted: " + fmt(high.fidelity));
  out.require(std::abs(low.fidelity - 0.53760462269158349) <= 1e-12,
              "rate-0.3 fidelity drifted: " + fmt(low.fidelity));

  const std::vector<int> lengths{8, 16, 32, 64};
  const std::vector<double> frozen{0.38263752000000001, 0.60394732081097036,
                                   0.74917795165236689, 0.90952462907816667};
  double prev = 0.0;
  for (size_t i = 0; i < lengths.size(); ++i) {
    const auto set = typical_set(p, lengths[i], 0.2);
    out.require(set.total_probability >= prev - 1e-15,
                "typical mass decreased at n " + std::to_string(lengths[i]));
    out.require(std::abs(set.total_probability - frozen[i]) <= 1e-12,
                "typical mass drifted at n " + std::to_string(lengths[i]) + ": " +
                    fmt(set.total_probability));
    prev = set.total_probability;
  }
  out.require(prev > 0.9, "typical mass at n = 64 is only " + fmt(prev));
  return out;
}

Outcome criterion_10() {
  Outcome out;
  const Distribution bell(std::vector<double>{0.5, 0.5});
  const auto two_bell = build_chain_network({bell, bell});
  out.require(std::abs(two_bell.node_entropy[1] - 2.0) <= 1e-12,
              "middle node entropy " + fmt(two_bell.node_entropy[1]));
  out.require(std::abs(two_bell.complement_entropy[0] - 1.0) <= 1e-12,
              "end-complement entropy " + fmt(two_bell.complement_entropy[0]));
  out.require(two_bell.identities_ok, "dense identity cross-check failed");

  Rng rng(10000);
  for (int k = 0; k < 100; ++k) {
    auto link = [&](int dim) {
      Eigen::VectorXd v(dim);
      for (int i = 0; i < dim; ++i) v(i) = 0.1 + rng.uniform();
      return Distribution(Eigen::VectorXd(v / v.sum()));
    };
    const auto rep = build_chain_network({link(2 + (k % 2)), link(2 + ((k + 1) % 2))});
    bool end0 = false, end2 = false;
    for (const auto& f : rep.flags) {
      if (f.joint_omitted_node == 0 && f.member_node == 1) end0 = true;
      if (f.joint_omitted_node == 2 && f.member_node == 1) end2 = true;
      out.require(f.joint_entropy < f.member_entropy,
                  "flagged pair is not a strict violation");
    }
    out.require(end0 && end2,
                "missing classical-bound violation at pair " + std::to_string(k));
    out.require(rep.identities_ok && rep.max_identity_residual <= 1e-10,
                "purity identity residual " + fmt(rep.max_identity_residual));
    if (!out.pass) return out;
  }
  return out;
}

Outcome criterion_11() {
  Outcome out;
  const auto rows = thermal_convergence(1.0, {64}, EntropyMeasure::von_neumann());
  out.require(std::abs(rows[0].entropy - 2.0) <= 1e-12,
              "thermal entropy at N = 64 is " + fmt(rows[0].entropy));

  const double fock = quantum_entropy(thermal_truncated(1.0, 64),
                                      EntropyMeasure::von_neumann());
  const double sympl = gaussian_entropy(3.0 * Eigen::MatrixXd::Identity(2, 2));
  out.require(std::abs(fock - sympl) <= 1e-9,
              "occupation ladder vs covariance gap " + fmt(fock - sympl));

  Rng rng(11000);
  for (int n = 1; n <= 6; ++n) {
    SpinConfig cfg;
    cfg.cluster = 1;
    cfg.outer = n;
    cfg.couplings = Eigen::MatrixXd(1, n);
    for (int j = 0; j < n; ++j) cfg.couplings(0, j) = 0.1 + 0.8 * rng.uniform();
    const std::vector<double> times{0.0, 0.3, 0.7, 1.1, 1.9};
    const auto scan = spin_cluster_scan(cfg, Basis::standard(2), times);
    for (size_t ti = 0; ti < times.size(); ++ti) {
      double product = 1.0;
      for (int j = 0; j < n; ++j)
        product *= std::cos(2.0 * cfg.couplings(0, j) * times[ti]);
      out.require(std::abs(scan[ti].coherence - product) <= 1e-9,
                  "witness off the cosine product at n " + std::to_string(n));
      const double x = std::min(std::abs(product), 1.0);
      double closed = 1.0;
      if (x > 1e-15 && x < 1.0) {
        closed = -((1 + x) / 2) * std::log2((1 + x) / 2) -
                 ((1 - x) / 2) * std::log2((1 - x) / 2);
      } else if (x >= 1.0) {
        closed = 0.0;
      }
      out.require(std::abs(scan[ti].entropy - closed) <= 1e-9,
                  "cluster entropy off the closed form at n " + std::to_string(n));
      out.require(scan[ti].dephased_entropy >= scan[ti].entropy - 1e-9,
                  "dephased entropy fell below the exact value");
    }
    if (!out.pass) return out;
  }
  return out;
}

int run_cli(const std::string& args, const std::filesystem::path& out_file) {
  const std::string cmd = std::string(QENT_CLI_PATH) + " " + args + " > " +
                          out_file.string() + " 2>/dev/null";
  return std::system(cmd.c_str());
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome criterion_12() {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "qent-accept";
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    out.require(false, "cannot create scratch directory " + dir.string());
    return out;
  }

  auto write = [&](const char* name, const std::string& body) {
    std::ofstream(dir / name, std::ios::binary) << body;
    return (dir / name).string();
  };
  const std::string diag = write("diag.json", R"({"dim":2,"re":[[0.75,0],[0,0.25]]})");
  const std::string mm = write("mm.json", R"({"dim":2,"re":[[0.5,0],[0,0.5]]})");
  const std::string id2 = write("id2.json", R"({"dim":2,"re":[[1,0],[0,1]]})");
  const std::string prob = write("prob.json",
      R"({"q":[0.35,0.35,0.30],)"
      R"("alpha":[[0.5,0.5,0.0],[0.25,0.25,0.5],[0.25,0.25,0.5]]})");
  const std::string links = write("links.json", R"([[0.5,0.5],[0.8,0.2]])");

  const std::vector<std::string> invocations{
      "entropy " + diag + " --measure renyi:2",
      "verify-principles " + diag + " --measure vn --samples 50 --seed 7",
      "maxent " + prob + " --oracle",
      "transition " + diag + " " + mm + " --mode catalytic --seed 3",
      "compress " + diag + " " + id2 + " --n 8,16 --rate 0.3,0.7 --format csv",
      "network-chain " + links,
      "models thermal --nbar 1 --N-list 4,8,16 --format csv",
  };
  for (size_t i = 0; i < invocations.size(); ++i) {
    const fs::path a = dir / ("run_" + std::to_string(i) + "_a.txt");
    const fs::path b = dir / ("run_" + std::to_string(i) + "_b.txt");
    const int rc1 = run_cli(invocations[i], a);
    const int rc2 = run_cli(invocations[i], b);
    out.require(rc1 == 0 && rc2 == 0,
                "nonzero exit from: " + invocations[i]);
    const std::string da = slurp(a), db = slurp(b);
    out.require(!da.empty(), "empty output from: " + invocations[i]);
    out.require(da == db, "outputs differ between reruns of: " + invocations[i]);
  }
  return out;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    Outcome (*fn)();
  };
  const std::vector<Entry> entries{
      {1, "dephasing minimum / joint minimum / correlation maximum (200 states x 5 measures, tol 1e-9)", criterion_1},
      {2, "two-frame uncertainty bound (1000 triples, all measures, tol 1e-9)", criterion_2},
      {3, "dephasing lift marginals (dims 2-6, 100 probes, residual 1e-10)", criterion_3},
      {4, "exact transition residuals (200 majorizing pairs, 1e-8)", criterion_4},
      {5, "catalytic composition residuals (50 cases, 1e-8)", criterion_5},
      {6, "probabilistic conversion vs partial-sum bound (50 cases, 1e-9)", criterion_6},
      {7, "truncated self-transition residuals below eps (0.1 and 0.01)", criterion_7},
      {8, "maxent solver vs oracle (50 problems, gap 1e-4, residual 1e-8)", criterion_8},
      {9, "typical-subspace fidelities and typical mass (frozen values, 1e-12)", criterion_9},
      {10, "chain entropies, classical-bound violations, purity identities (1e-10)", criterion_10},
      {11, "thermal convergence, covariance agreement, cluster closed form (1e-9)", criterion_11},
      {12, "byte-identical CLI reruns (7 invocations)", criterion_12},
  };

  int failed = 0;
  for (const auto& e : entries) {
    const Outcome out = e.fn();
    std::printf("criterion %2d: %s - %s\n", e.id, out.pass ? "PASS" : "FAIL", e.title);
    for (const auto& n : out.notes) std::printf("              %s\n", n.c_str());
    if (!out.pass) ++failed;
    std::fflush(stdout);
  }
  std::printf("%d/12 criteria passed\n", 12 - failed);
  return failed == 0 ? 0 : 1;
}
