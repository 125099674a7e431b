#include "qent/qent.h"

#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "channels.hpp"
#include "compression.hpp"
#include "density.hpp"
#include "entropy.hpp"
#include "error.hpp"
#include "json_io.hpp"
#include "maxent.hpp"
#include "models.hpp"
#include "principles.hpp"
#include "transitions.hpp"

struct qent_state {
  qent::DensityMatrix rho;
  qent::Tolerances tol;
};

struct qent_basis {
  qent::Basis basis;
  qent::Tolerances tol;
};

namespace {

using nlohmann::json;
using namespace qent;

thread_local std::string g_error;

qent_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::BadInput: return QENT_BAD_INPUT;
    case ErrorCode::NotHermitian: return QENT_NOT_HERMITIAN;
    case ErrorCode::NotPsd: return QENT_NOT_PSD;
    case ErrorCode::TraceNotOne: return QENT_TRACE_NOT_ONE;
    case ErrorCode::NotUnitary: return QENT_NOT_UNITARY;
    case ErrorCode::DimensionMismatch: return QENT_DIMENSION_MISMATCH;
    case ErrorCode::NotMajorized: return QENT_NOT_MAJORIZED;
    case ErrorCode::Infeasible: return QENT_INFEASIBLE;
    case ErrorCode::NoBracket: return QENT_NO_BRACKET;
    case ErrorCode::DegenerateQ: return QENT_DEGENERATE_OBSERVATION;
    case ErrorCode::TooLarge: return QENT_TOO_LARGE;
    case ErrorCode::TailNotSummable: return QENT_TAIL_NOT_SUMMABLE;
    case ErrorCode::OracleInvalid: return QENT_ORACLE_INVALID;
    case ErrorCode::VerificationFailed: return QENT_VERIFICATION_FAILED;
    case ErrorCode::Unphysical: return QENT_UNPHYSICAL;
    case ErrorCode::Internal: return QENT_INTERNAL;
  }
  return QENT_INTERNAL;
}

template <typename F>
qent_status run(F&& body) {
  g_error.clear();
  try {
    return body();
  } catch (const Error& e) {
    g_error = e.what();
    return to_status(e.code());
  } catch (const json::exception& e) {
    g_error = std::string("BadInput: ") + e.what();
    return QENT_BAD_INPUT;
  } catch (const std::exception& e) {
    g_error = std::string("Internal: ") + e.what();
    return QENT_INTERNAL;
  }
}

char* dup_text(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

qent_status finish(const std::string& text, char** out_text, bool checks_ok) {
  if (out_text == nullptr) {
    g_error = "BadInput: null output pointer";
    return QENT_BAD_INPUT;
  }
  *out_text = dup_text(text);
  if (*out_text == nullptr) {
    g_error = "Internal: allocation failed";
    return QENT_INTERNAL;
  }
  return checks_ok ? QENT_OK : QENT_CHECK_FAILED;
}

Tolerances tol_from_c(const qent_tolerances* t) {
  if (t == nullptr) return default_tolerances();
  return Tolerances{t->herm, t->psd, t->unitary, t->norm};
}

Tolerances tol_from_request(const json& j) {
  Tolerances tol = default_tolerances();
  if (!j.contains("tol")) return tol;
  const json& t = j.at("tol");
  if (t.is_number()) {
    const double v = t.get<double>();
    tol.herm = tol.psd = tol.unitary = tol.norm = v;
    return tol;
  }
  if (!t.is_object()) throw Error(ErrorCode::BadInput, "tol must be a number or object");
  tol.herm = t.value("herm", tol.herm);
  tol.psd = t.value("psd", tol.psd);
  tol.unitary = t.value("unitary", tol.unitary);
  tol.norm = t.value("norm", tol.norm);
  return tol;
}

EntropyMeasure measure_from_request(const json& j) {
  return EntropyMeasure::parse(j.value("measure", std::string("vn")));
}

LogBase base_from_text(const std::string& s) {
  if (s == "2") return LogBase::Two;
  if (s == "e") return LogBase::E;
  throw Error(ErrorCode::BadInput, "base must be 2 or e");
}

LogBase base_from_request(const json& j) {
  if (!j.contains("base")) return LogBase::Two;
  const json& b = j.at("base");
  if (b.is_number()) {
    if (b.get<double>() == 2.0) return LogBase::Two;
    throw Error(ErrorCode::BadInput, "base must be 2 or e");
  }
  return base_from_text(b.get<std::string>());
}

std::string format_from_request(const json& j) {
  const std::string f = j.value("format", std::string("json"));
  if (f != "json" && f != "csv") {
    throw Error(ErrorCode::BadInput, "format must be json or csv");
  }
  return f;
}

void write_base(JsonWriter& w, LogBase base) {
  if (base == LogBase::Two) {
    w.value(2);
  } else {
    w.value("e");
  }
}

void write_int_vector(JsonWriter& w, const std::vector<int>& v) {
  w.begin_array();
  for (int x : v) w.value(x);
  w.end_array();
}

void write_violation(JsonWriter& w, const char* kind, const Violation& v) {
  w.begin_object();
  w.key("kind").value(kind);
  w.key("sample").value(v.sample_index);
  w.key("value").value(v.value);
  w.key("bound").value(v.bound);
  w.key("gap").value(v.gap);
  w.end_object();
}

void write_maxent_solution(JsonWriter& w, const MaxEntSolution& s) {
  w.begin_object();
  w.key("p");
  write_real_vector(w, s.p);
  w.key("objective").value(s.objective);
  w.key("gamma_norm").value(s.gamma_norm);
  w.key("gamma_data").value(s.gamma_data);
  w.key("multipliers");
  write_real_vector(w, s.multipliers);
  w.key("residual_constraint").value(s.residual_constraint);
  w.key("residual_norm").value(s.residual_norm);
  w.key("dropped_outcomes").value(s.dropped_outcomes);
  w.key("iterations").value(s.iterations);
  w.key("converged").value(s.converged);
  w.end_object();
}

void write_plan(JsonWriter& w, const TransitionPlan& plan,
                const std::string& mode, bool emit_unitary) {
  w.begin_object();
  w.key("mode").value(mode);
  w.key("source_spectrum");
  write_real_vector(w, plan.source_spectrum);
  w.key("target_spectrum");
  write_real_vector(w, plan.target_spectrum);
  w.key("ancilla_dims");
  write_int_vector(w, plan.ancilla_dims);
  w.key("residual_target").value(plan.residual_target);
  w.key("residual_marginal").value(plan.residual_marginal);
  w.key("success_probability").value(plan.success_probability);
  w.key("entropy_warning").value(plan.entropy_warning);
  w.key("truncation_terms").value(plan.truncation_terms);
  w.key("tail_source").value(plan.tail_source);
  w.key("tail_target").value(plan.tail_target);
  w.key("epsilon").value(plan.epsilon);
  w.key("catalyst");
  if (plan.catalyst.has_value()) {
    write_complex_matrix(w, plan.catalyst->mat());
  } else {
    w.null_value();
  }
  w.key("output_marginal");
  write_complex_matrix(w, plan.output_marginal);
  w.key("stages");
  w.begin_array();
  for (const TransitionStage& st : plan.stages) {
    w.begin_object();
    w.key("name").value(st.name);
    w.key("dims");
    write_int_vector(w, st.dims);
    if (emit_unitary) {
      w.key("unitary");
      write_complex_matrix(w, st.unitary);
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
}

// -------- op bodies --------

qent_status entropy_op_body(const json& req, char** out_text) {
  const Tolerances tol = tol_from_request(req);
  const DensityMatrix rho = density_from_json(req.at("state"), tol);
  const EntropyMeasure m = measure_from_request(req);
  const LogBase base = base_from_request(req);
  const double value = quantum_entropy(rho, m, base);
  JsonWriter w;
  w.begin_object();
  w.key("value").value(value);
  w.key("measure").value(m.name());
  w.key("base");
  write_base(w, base);
  w.end_object();
  return finish(w.str() + "\n", out_text, true);
}

qent_status dephase_op_body(const json& req, char** out_text) {
  const Tolerances tol = tol_from_request(req);
  const DensityMatrix rho = density_from_json(req.at("state"), tol);
  const Basis b = basis_from_json(req.at("basis"), tol);
  const DensityMatrix out = dephase(rho, b);
  return finish(state_to_json(out) + "\n", out_text, true);
}

qent_status verify_principles_body(const json& req, char** out_text) {
  const Tolerances tol = tol_from_request(req);
  const DensityMatrix rho = density_from_json(req.at("state"), tol);
  const EntropyMeasure m = measure_from_request(req);
  const LogBase base = base_from_request(req);
  const int samples = req.value("samples", 100);
  const std::uint64_t seed = req.value("seed", std::uint64_t{1});
  const double check_tol = req.value("check_tol", 1e-9);
  if (samples < 1) throw Error(ErrorCode::BadInput, "samples must be positive");

  const LocalMinimumReport local =
      verify_local_minimum(rho, m, samples, seed, base, check_tol);
  const JointPrincipleReport joint =
      verify_joint_principles(rho, m, samples, seed + 1, base, check_tol);

  JsonWriter w;
  w.begin_object();
  w.key("measure").value(local.measure);
  w.key("s_rho").value(local.state_entropy);
  w.key("sampled_min").value(local.sampled_min);
  w.key("sampled_max_cross").value(joint.sampled_max_cross);
  w.key("eigenbasis_value").value(local.eigenbasis_value);
  w.key("schmidt_joint").value(joint.schmidt_joint);
  w.key("schmidt_cross").value(joint.schmidt_cross);
  w.key("sampled_min_joint").value(joint.sampled_min_joint);
  w.key("sampled_max_cross_normalized").value(joint.sampled_max_cross_normalized);
  w.key("achieved_at_eigenbasis").value(local.achieved_at_eigenbasis);
  w.key("achieved_at_schmidt").value(joint.achieved_at_schmidt);
  w.key("n_samples").value(samples);
  w.key("violations");
  w.begin_array();
  for (const Violation& v : local.violations) write_violation(w, "basis-min", v);
  for (const Violation& v : joint.joint_violations) write_violation(w, "joint-min", v);
  for (const Violation& v : joint.cross_violations) write_violation(w, "cross-max", v);
  w.end_array();
  w.end_object();
  const bool ok = local.holds() && joint.holds();
  return finish(w.str() + "\n", out_text, ok);
}

qent_status maxent_body(const json& req, char** out_text) {
  const Tolerances tol = tol_from_request(req);
  // The problem may sit at the top level or under "problem" (the CLI wraps
  // the input file that way so flags can override its fields).
  const json& spec = req.contains("problem") ? req.at("problem") : req;
  MaxEntProblem prob;
  prob.q = distribution_from_json(spec.at("q"), tol);
  prob.alpha = real_table_from_json(spec.at("alpha"));
  prob.measure = req.contains("measure") ? measure_from_request(req)
                                         : measure_from_request(spec);
  prob.base = req.contains("base") ? base_from_request(req)
                                   : base_from_request(spec);
  const bool want_oracle = req.value("oracle", false);
  const bool want_relaxed = req.value("relaxed", false);

  const MaxEntSolution full = solve_maxent_full(prob);

  JsonWriter w;
  w.begin_object();
  w.key("solution");
  write_maxent_solution(w, full);
  if (want_relaxed) {
    w.key("relaxed");
    try {
      const MaxEntSolution relaxed = solve_maxent_relaxed(prob);
      write_maxent_solution(w, relaxed);
    } catch (const Error& e) {
      w.begin_object();
      w.key("error").value(e.what());
      w.end_object();
    }
  }
  if (want_oracle) {
    const MaxEntSolution oracle = brute_force_maxent(prob);
    w.key("oracle");
    write_maxent_solution(w, oracle);
    w.key("objective_gap").value(full.objective - oracle.objective);
  }
  w.end_object();
  return finish(w.str() + "\n", out_text, full.converged);
}

qent_status transition_body(const json& req, char** out_text) {
  const Tolerances tol = tol_from_request(req);
  const DensityMatrix rho = density_from_json(req.at("source"), tol);
  const DensityMatrix target = density_from_json(req.at("target"), tol);
  const std::string mode = req.value("mode", std::string("noisy"));
  const bool emit_unitary = req.value("emit_unitary", false);

  TransitionPlan plan;
  double residual_bound = 1e-8;
  if (mode == "noisy") {
    plan = construct_noisy_transition(rho, target);
  } else if (mode == "catalytic") {
    const int catalyst_dim = req.value("catalyst_dim", 0);
    const int budget = req.value("budget", 2000);
    const std::uint64_t seed = req.value("seed", std::uint64_t{1});
    CatalystOracle oracle = [catalyst_dim, budget, seed](
                                const DensityMatrix& pinched,
                                const DensityMatrix& tgt) {
      std::optional<CatalystPair> base = noisy_catalyst_oracle()(pinched, tgt);
      if (base.has_value()) return base;
      if (catalyst_dim > 0) {
        return search_catalyst(pinched, tgt, catalyst_dim, budget, seed);
      }
      return std::optional<CatalystPair>{};
    };
    plan = compose_catalytic(rho, Basis::standard(rho.dim()), target, oracle);
  } else if (mode == "approx") {
    const double eps = req.value("epsilon", 0.0);
    if (eps <= 0.0) {
      throw Error(ErrorCode::BadInput, "approx mode needs epsilon > 0");
    }
    const Eigen::VectorXd sv = spectrum(rho).vec();
    const Eigen::VectorXd tv = spectrum(target).vec();
    const SpectrumStream source_stream = [sv](int k) {
      return k < sv.size() ? sv(k) : 0.0;
    };
    const SpectrumStream target_stream = [tv](int k) {
      return k < tv.size() ? tv(k) : 0.0;
    };
    plan = approx_transition_truncated(source_stream, target_stream, eps);
    residual_bound = eps;
  } else if (mode == "probabilistic") {
    int k_pad = req.value("budget", 16);
    if (k_pad < 1) k_pad = 16;
    plan = probabilistic_conversion(rho, target, k_pad);
  } else {
    throw Error(ErrorCode::BadInput,
                "mode must be noisy, catalytic, approx or probabilistic");
  }

  JsonWriter w;
  write_plan(w, plan, mode, emit_unitary);
  const bool ok = plan.residual_target <= residual_bound &&
                  plan.residual_marginal <= residual_bound;
  return finish(w.str() + "\n", out_text, ok);
}

qent_status compress_body(const json& req, char** out_text) {
  const Tolerances tol = tol_from_request(req);
  const DensityMatrix rho = density_from_json(req.at("state"), tol);
  const Basis b = basis_from_json(req.at("basis"), tol);
  const std::string format = format_from_request(req);
  std::vector<int> lengths = req.at("lengths").get<std::vector<int>>();
  std::vector<double> rates = req.at("rates").get<std::vector<double>>();
  const std::vector<SubspaceRow> rows = rate_fidelity_curve(rho, b, lengths, rates);

  if (format == "csv") {
    std::string out = "n,rate,fidelity,log2dim\n";
    for (const SubspaceRow& r : rows) {
      out += std::to_string(r.n) + "," + format_double(r.rate) + "," +
             format_double(r.fidelity) + "," + format_double(r.kept_log2_dim) +
             "\n";
    }
    return finish(out, out_text, true);
  }
  JsonWriter w;
  w.begin_object();
  w.key("rows");
  w.begin_array();
  for (const SubspaceRow& r : rows) {
    w.begin_object();
    w.key("n").value(r.n);
    w.key("rate").value(r.rate);
    w.key("fidelity").value(r.fidelity);
    w.key("log2dim").value(r.kept_log2_dim);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return finish(w.str() + "\n", out_text, true);
}

qent_status chain_network_body(const json& req, char** out_text) {
  const Tolerances tol = tol_from_request(req);
  const json& arr = req.is_array() ? req : req.at("links");
  if (!arr.is_array() || arr.empty()) {
    throw Error(ErrorCode::BadInput, "links must be a nonempty array");
  }
  std::vector<Distribution> links;
  links.reserve(arr.size());
  for (const json& link : arr) links.push_back(distribution_from_json(link, tol));
  const ChainReport report = build_chain_network(links);

  JsonWriter w;
  w.begin_object();
  w.key("nodes").value(report.nodes);
  w.key("node_entropy");
  w.begin_array();
  for (double e : report.node_entropy) w.value(e);
  w.end_array();
  w.key("complement_entropy");
  w.begin_array();
  for (double e : report.complement_entropy) w.value(e);
  w.end_array();
  w.key("identities_ok").value(report.identities_ok);
  w.key("max_identity_residual").value(report.max_identity_residual);
  w.key("classical_bound_violations");
  w.begin_array();
  for (const ChainFlag& f : report.flags) {
    w.begin_object();
    w.key("joint_omitted_node").value(f.joint_omitted_node);
    w.key("member_node").value(f.member_node);
    w.key("joint_entropy").value(f.joint_entropy);
    w.key("member_entropy").value(f.member_entropy);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  // Classical-bound violations are the expected physics, not a failure; the
  // only embedded check is the dense identity cross-check.
  return finish(w.str() + "\n", out_text, report.identities_ok);
}

qent_status models_thermal(const json& req, char** out_text) {
  const double nbar = req.at("nbar").get<double>();
  std::vector<int> cutoffs = req.value("cutoffs", std::vector<int>{4, 8, 16, 32, 64});
  const EntropyMeasure m = measure_from_request(req);
  const LogBase base = base_from_request(req);
  const std::string format = format_from_request(req);
  const std::vector<ThermalRow> rows = thermal_convergence(nbar, cutoffs, m, base);

  if (format == "csv") {
    std::string out = "N,entropy,deficit\n";
    for (const ThermalRow& r : rows) {
      out += std::to_string(r.max_n) + "," + format_double(r.entropy) + "," +
             format_double(r.deficit) + "\n";
    }
    return finish(out, out_text, true);
  }
  JsonWriter w;
  w.begin_object();
  w.key("kind").value("thermal");
  w.key("nbar").value(nbar);
  w.key("measure").value(m.name());
  w.key("entropy_limit").value(thermal_entropy_limit(nbar));
  w.key("rows");
  w.begin_array();
  for (const ThermalRow& r : rows) {
    w.begin_object();
    w.key("N").value(r.max_n);
    w.key("entropy").value(r.entropy);
    w.key("deficit").value(r.deficit);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return finish(w.str() + "\n", out_text, true);
}

qent_status models_gaussian(const json& req, char** out_text) {
  const Eigen::MatrixXd cov = real_table_from_json(req.at("cov"));
  JsonWriter w;
  w.begin_object();
  w.key("kind").value("gaussian");
  w.key("symplectic_eigenvalues");
  write_real_vector(w, symplectic_eigenvalues(cov));
  w.key("entropy").value(gaussian_entropy(cov));
  if (req.contains("lambda")) {
    const double lambda = req.at("lambda").get<double>();
    const Eigen::MatrixXd mixed = beamsplitter_covariance(cov, lambda);
    w.key("lambda").value(lambda);
    w.key("mixed");
    w.begin_object();
    w.key("cov");
    write_real_matrix(w, mixed);
    w.key("symplectic_eigenvalues");
    write_real_vector(w, symplectic_eigenvalues(mixed));
    w.key("entropy_a").value(gaussian_entropy(mixed.topLeftCorner(2, 2)));
    w.key("entropy_b").value(gaussian_entropy(mixed.bottomRightCorner(2, 2)));
    w.key("entropy_joint").value(gaussian_entropy(mixed));
    w.end_object();
  }
  w.end_object();
  return finish(w.str() + "\n", out_text, true);
}

qent_status models_spin(const json& req, char** out_text) {
  SpinConfig cfg;
  cfg.cluster = req.at("cluster").get<int>();
  cfg.outer = req.at("outer").get<int>();
  cfg.couplings = real_table_from_json(req.at("couplings"));
  const std::vector<double> times = req.at("times").get<std::vector<double>>();
  const std::string format = format_from_request(req);
  if (cfg.cluster < 1) throw Error(ErrorCode::BadInput, "cluster size must be positive");
  const Basis b = Basis::standard(1 << cfg.cluster);
  const std::vector<SpinRow> rows = spin_cluster_scan(cfg, b, times);

  // The pinched entropy can never drop below the exact one; flag if sampled
  // rows disagree.
  bool ok = true;
  for (const SpinRow& r : rows) {
    if (r.dephased_entropy < r.entropy - 1e-9) ok = false;
  }

  if (format == "csv") {
    std::string out = "T,entropy,dephased_entropy,coherence\n";
    for (const SpinRow& r : rows) {
      out += format_double(r.time) + "," + format_double(r.entropy) + "," +
             format_double(r.dephased_entropy) + "," +
             format_double(r.coherence) + "\n";
    }
    return finish(out, out_text, ok);
  }
  JsonWriter w;
  w.begin_object();
  w.key("kind").value("spin");
  w.key("cluster").value(cfg.cluster);
  w.key("outer").value(cfg.outer);
  w.key("rows");
  w.begin_array();
  for (const SpinRow& r : rows) {
    w.begin_object();
    w.key("T").value(r.time);
    w.key("entropy").value(r.entropy);
    w.key("dephased_entropy").value(r.dephased_entropy);
    w.key("coherence").value(r.coherence);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  return finish(w.str() + "\n", out_text, ok);
}

qent_status models_body(const json& req, char** out_text) {
  const std::string kind = req.value("kind", std::string());
  if (kind == "thermal") return models_thermal(req, out_text);
  if (kind == "gaussian") return models_gaussian(req, out_text);
  if (kind == "spin") return models_spin(req, out_text);
  throw Error(ErrorCode::BadInput, "kind must be thermal, gaussian or spin");
}

}  // namespace

extern "C" {

const char* qent_version(void) { return "0.1.0"; }

const char* qent_status_name(qent_status s) {
  switch (s) {
    case QENT_OK: return "ok";
    case QENT_CHECK_FAILED: return "check-failed";
    case QENT_BAD_INPUT: return "bad-input";
    case QENT_NOT_HERMITIAN: return "not-hermitian";
    case QENT_NOT_PSD: return "not-psd";
    case QENT_TRACE_NOT_ONE: return "trace-not-one";
    case QENT_NOT_UNITARY: return "not-unitary";
    case QENT_DIMENSION_MISMATCH: return "dimension-mismatch";
    case QENT_NOT_MAJORIZED: return "not-majorized";
    case QENT_INFEASIBLE: return "infeasible";
    case QENT_NO_BRACKET: return "no-bracket";
    case QENT_DEGENERATE_OBSERVATION: return "degenerate-observation";
    case QENT_TOO_LARGE: return "too-large";
    case QENT_TAIL_NOT_SUMMABLE: return "tail-not-summable";
    case QENT_ORACLE_INVALID: return "oracle-invalid";
    case QENT_VERIFICATION_FAILED: return "verification-failed";
    case QENT_UNPHYSICAL: return "unphysical";
    case QENT_INTERNAL: return "internal";
  }
  return "unknown";
}

qent_tolerances qent_default_tolerances(void) {
  const Tolerances t = default_tolerances();
  return qent_tolerances{t.herm, t.psd, t.unitary, t.norm};
}

const char* qent_last_error(void) { return g_error.c_str(); }

void qent_string_free(char* s) { std::free(s); }

qent_status qent_state_parse(const char* json_text, const qent_tolerances* tol,
                             qent_state** out) {
  return run([&]() -> qent_status {
    if (json_text == nullptr || out == nullptr) {
      throw Error(ErrorCode::BadInput, "null argument");
    }
    const Tolerances t = tol_from_c(tol);
    const DensityMatrix rho = density_from_json(parse_json_text(json_text), t);
    *out = new qent_state{rho, t};
    return QENT_OK;
  });
}

void qent_state_free(qent_state* s) { delete s; }

int qent_state_dim(const qent_state* s) {
  return s == nullptr ? 0 : s->rho.dim();
}

qent_status qent_state_to_json(const qent_state* s, char** out_json) {
  return run([&]() -> qent_status {
    if (s == nullptr) throw Error(ErrorCode::BadInput, "null state");
    return finish(state_to_json(s->rho), out_json, true);
  });
}

qent_status qent_basis_parse(const char* json_text, const qent_tolerances* tol,
                             qent_basis** out) {
  return run([&]() -> qent_status {
    if (json_text == nullptr || out == nullptr) {
      throw Error(ErrorCode::BadInput, "null argument");
    }
    const Tolerances t = tol_from_c(tol);
    const Basis b = basis_from_json(parse_json_text(json_text), t);
    *out = new qent_basis{b, t};
    return QENT_OK;
  });
}

void qent_basis_free(qent_basis* b) { delete b; }

int qent_basis_dim(const qent_basis* b) {
  return b == nullptr ? 0 : b->basis.dim();
}

qent_status qent_entropy(const qent_state* s, const char* measure,
                         const char* base, double* out_value) {
  return run([&]() -> qent_status {
    if (s == nullptr || out_value == nullptr) {
      throw Error(ErrorCode::BadInput, "null argument");
    }
    const EntropyMeasure m =
        EntropyMeasure::parse(measure == nullptr ? "vn" : measure);
    const LogBase b = base == nullptr ? LogBase::Two : base_from_text(base);
    *out_value = quantum_entropy(s->rho, m, b);
    return QENT_OK;
  });
}

qent_status qent_dephase(const qent_state* s, const qent_basis* b,
                         qent_state** out) {
  return run([&]() -> qent_status {
    if (s == nullptr || b == nullptr || out == nullptr) {
      throw Error(ErrorCode::BadInput, "null argument");
    }
    *out = new qent_state{dephase(s->rho, b->basis), s->tol};
    return QENT_OK;
  });
}

qent_status qent_measurement_distribution(const qent_state* s,
                                          const qent_basis* b,
                                          double* out_probs, int cap) {
  return run([&]() -> qent_status {
    if (s == nullptr || b == nullptr || out_probs == nullptr) {
      throw Error(ErrorCode::BadInput, "null argument");
    }
    if (cap < s->rho.dim()) {
      throw Error(ErrorCode::BadInput, "output buffer too small");
    }
    const Distribution p = measurement_distribution(s->rho, b->basis);
    for (int i = 0; i < p.size(); ++i) out_probs[i] = p[i];
    return QENT_OK;
  });
}

#define QENT_JSON_OP(fn, body)                               \
  qent_status fn(const char* request, char** out_text) {     \
    return run([&]() -> qent_status {                        \
      if (request == nullptr) {                              \
        throw Error(ErrorCode::BadInput, "null request");    \
      }                                                      \
      return body(parse_json_text(request), out_text);       \
    });                                                      \
  }

QENT_JSON_OP(qent_entropy_op, entropy_op_body)
QENT_JSON_OP(qent_dephase_op, dephase_op_body)
QENT_JSON_OP(qent_verify_principles, verify_principles_body)
QENT_JSON_OP(qent_maxent, maxent_body)
QENT_JSON_OP(qent_transition, transition_body)
QENT_JSON_OP(qent_compress, compress_body)
QENT_JSON_OP(qent_chain_network, chain_network_body)
QENT_JSON_OP(qent_models, models_body)

#undef QENT_JSON_OP

}  // extern "C"
