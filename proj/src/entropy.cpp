#include "entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rng.hpp"

namespace qent {

namespace {

constexpr double kParamMin = 1e-12;

double log_b(double x, LogBase base) {
  return base == LogBase::Two ? std::log2(x) : std::log(x);
}

double shannon(const Eigen::VectorXd& p, LogBase base) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) s -= p(i) * log_b(p(i), base);
  }
  return s;
}

double power_sum(const Eigen::VectorXd& p, double a) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) s += std::pow(p(i), a);
  }
  return s;
}

double generalized_value(const GeneralizedSpec& g, const Eigen::VectorXd& p) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (p(i) > 0.0) s += g.inner(p(i));
  }
  return g.outer(s) - g.outer(g.inner(1.0));
}

double entropy_of(const Eigen::VectorXd& p, const EntropyMeasure& m, LogBase base) {
  switch (m.kind()) {
    case MeasureKind::VonNeumann:
      return shannon(p, base);
    case MeasureKind::Renyi:
      return log_b(power_sum(p, m.param()), base) / (1.0 - m.param());
    case MeasureKind::Tsallis:
      return (power_sum(p, m.param()) - 1.0) / (1.0 - m.param());
    case MeasureKind::Generalized:
      return generalized_value(m.spec(), p);
  }
  throw Error(ErrorCode::Internal, "unknown measure kind");
}

}  // namespace

EntropyMeasure EntropyMeasure::von_neumann() {
  return EntropyMeasure(MeasureKind::VonNeumann, 1.0);
}

EntropyMeasure EntropyMeasure::renyi(double alpha) {
  if (!(alpha > 0.0) || std::abs(alpha - 1.0) < kParamMin) {
    throw Error(ErrorCode::BadInput, "renyi order must be positive and != 1");
  }
  return EntropyMeasure(MeasureKind::Renyi, alpha);
}

EntropyMeasure EntropyMeasure::tsallis(double q) {
  if (!(q > 0.0) || std::abs(q - 1.0) < kParamMin) {
    throw Error(ErrorCode::BadInput, "tsallis order must be positive and != 1");
  }
  return EntropyMeasure(MeasureKind::Tsallis, q);
}

EntropyMeasure EntropyMeasure::generalized(GeneralizedSpec spec) {
  if (!spec.outer || !spec.inner) {
    throw Error(ErrorCode::BadInput, "generalized measure needs both F and G");
  }
  EntropyMeasure m(MeasureKind::Generalized, 0.0);
  m.spec_ = std::move(spec);
  return m;
}

EntropyMeasure EntropyMeasure::parse(const std::string& text) {
  if (text == "vn" || text == "von-neumann" || text == "shannon") {
    return von_neumann();
  }
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string family = text.substr(0, colon);
    double value = 0.0;
    try {
      std::size_t used = 0;
      value = std::stod(text.substr(colon + 1), &used);
      if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadInput, "bad measure parameter in '" + text + "'");
    }
    if (family == "renyi") return renyi(value);
    if (family == "tsallis") return tsallis(value);
  }
  throw Error(ErrorCode::BadInput,
              "unknown measure '" + text + "' (want vn | renyi:A | tsallis:Q)");
}

std::string EntropyMeasure::name() const {
  std::ostringstream out;
  switch (kind_) {
    case MeasureKind::VonNeumann: return "vn";
    case MeasureKind::Renyi: out << "renyi:" << param_; return out.str();
    case MeasureKind::Tsallis: out << "tsallis:" << param_; return out.str();
    case MeasureKind::Generalized: return "generalized";
  }
  return "unknown";
}

GeneralizedSpec EntropyMeasure::factorization(LogBase base) const {
  const double a = param_;
  switch (kind_) {
    case MeasureKind::VonNeumann:
      return {[](double s) { return s; },
              [base](double x) { return x > 0.0 ? -x * log_b(x, base) : 0.0; }};
    case MeasureKind::Renyi:
      return {[a, base](double s) { return log_b(s, base) / (1.0 - a); },
              [a](double x) { return x > 0.0 ? std::pow(x, a) : 0.0; }};
    case MeasureKind::Tsallis:
      return {[a](double s) { return (s - 1.0) / (1.0 - a); },
              [a](double x) { return x > 0.0 ? std::pow(x, a) : 0.0; }};
    case MeasureKind::Generalized:
      return spec_;
  }
  throw Error(ErrorCode::Internal, "unknown measure kind");
}

double classical_entropy(const Distribution& p, const EntropyMeasure& m,
                         LogBase base) {
  return entropy_of(p.vec(), m, base);
}

double quantum_entropy(const DensityMatrix& rho, const EntropyMeasure& m,
                       LogBase base) {
  return entropy_of(spectrum(rho).vec(), m, base);
}

JointDistribution::JointDistribution(const Eigen::MatrixXd& table,
                                     const Tolerances& tol) {
  if (table.size() == 0) throw Error(ErrorCode::BadInput, "empty joint table");
  Eigen::MatrixXd t = table;
  for (Eigen::Index i = 0; i < t.rows(); ++i) {
    for (Eigen::Index j = 0; j < t.cols(); ++j) {
      if (!std::isfinite(t(i, j)) || t(i, j) < -tol.psd) {
        throw Error(ErrorCode::BadInput, "invalid joint table entry");
      }
      t(i, j) = std::max(t(i, j), 0.0);
    }
  }
  const double s = t.sum();
  if (std::abs(s - 1.0) > tol.norm) {
    throw Error(ErrorCode::BadInput,
                "joint table mass " + std::to_string(s) + ", not 1");
  }
  t_ = t / s;
}

Distribution JointDistribution::marginal_rows() const {
  return Distribution(Eigen::VectorXd(t_.rowwise().sum()));
}

Distribution JointDistribution::marginal_cols() const {
  return Distribution(Eigen::VectorXd(t_.colwise().sum().transpose()));
}

Distribution JointDistribution::flattened() const {
  Eigen::VectorXd flat(t_.size());
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < t_.rows(); ++i)
    for (Eigen::Index j = 0; j < t_.cols(); ++j) flat(k++) = t_(i, j);
  return Distribution(flat);
}

double conditional_entropy(const JointDistribution& j, Axis given,
                           const EntropyMeasure& m, LogBase base) {
  const Distribution cond =
      given == Axis::Rows ? j.marginal_rows() : j.marginal_cols();
  switch (m.kind()) {
    case MeasureKind::VonNeumann:
    case MeasureKind::Generalized: {
      const double joint = classical_entropy(j.flattened(), m, base);
      return joint - classical_entropy(cond, m, base);
    }
    case MeasureKind::Renyi: {
      const double a = m.param();
      const double ratio =
          power_sum(j.flattened().vec(), a) / power_sum(cond.vec(), a);
      return log_b(ratio, base) / (1.0 - a);
    }
    case MeasureKind::Tsallis: {
      const double q = m.param();
      const double ratio =
          power_sum(j.flattened().vec(), q) / power_sum(cond.vec(), q);
      return (ratio - 1.0) / (1.0 - q);
    }
  }
  throw Error(ErrorCode::Internal, "unknown measure kind");
}

double mutual_information_subtraction(const JointDistribution& j,
                                      const EntropyMeasure& m, LogBase base) {
  return classical_entropy(j.marginal_rows(), m, base) +
         classical_entropy(j.marginal_cols(), m, base) -
         classical_entropy(j.flattened(), m, base);
}

double mutual_information(const JointDistribution& j, const EntropyMeasure& m,
                          LogBase base) {
  if (m.kind() != MeasureKind::Tsallis) {
    return mutual_information_subtraction(j, m, base);
  }
  const double q = m.param();
  const double tx = classical_entropy(j.marginal_rows(), m, base);
  const double ty = classical_entropy(j.marginal_cols(), m, base);
  const double txy = classical_entropy(j.flattened(), m, base);
  const double numer = tx + ty + (1.0 - q) * tx * ty - txy;
  const double denom = 1.0 + (1.0 - q) * std::max(tx, ty);
  return numer / denom;
}

bool AxiomReport::all_pass() const {
  for (const auto& c : checks) {
    if (c.status == AxiomStatus::Fail) return false;
  }
  return true;
}

const AxiomCheck& AxiomReport::find(const std::string& axiom) const {
  for (const auto& c : checks) {
    if (c.axiom == axiom) return c;
  }
  throw Error(ErrorCode::BadInput, "no such axiom entry: " + axiom);
}

namespace {

Eigen::VectorXd random_distribution(Rng& rng, int dim) {
  Eigen::VectorXd p(dim);
  for (int i = 0; i < dim; ++i) {
    double u;
    do {
      u = rng.uniform();
    } while (u <= 0.0);
    p(i) = -std::log(u);
  }
  return p / p.sum();
}

std::string describe(const char* what, double lhs, double rhs) {
  std::ostringstream out;
  out << what << ": " << lhs << " vs " << rhs;
  return out.str();
}

}  // namespace

AxiomReport check_generalized_axioms(const EntropyMeasure& m, int budget,
                                     std::uint64_t seed) {
  if (budget <= 0) throw Error(ErrorCode::BadInput, "budget must be positive");
  const GeneralizedSpec g = m.factorization();
  Rng rng(seed);
  constexpr double kSlack = 1e-12;

  AxiomReport report;
  report.checks.push_back({"AE1-continuity", AxiomStatus::Assumed, "structural"});
  report.checks.push_back({"AE3-symmetry", AxiomStatus::Assumed, "structural"});

  AxiomCheck concave{"AE2-concave-G", AxiomStatus::Pass, ""};
  for (int it = 0; it < budget && concave.status == AxiomStatus::Pass; ++it) {
    const double x = rng.uniform();
    const double y = rng.uniform();
    const double t = rng.uniform();
    const double lhs = g.inner(t * x + (1.0 - t) * y);
    const double rhs = t * g.inner(x) + (1.0 - t) * g.inner(y);
    if (!(lhs >= rhs - kSlack)) {
      concave.status = AxiomStatus::Fail;
      concave.detail = describe("G(mix) < mix of G", lhs, rhs);
    }
  }
  report.checks.push_back(concave);

  AxiomCheck nonneg{"AE4-nonnegative-F", AxiomStatus::Pass, ""};
  AxiomCheck mono{"AE5-increasing-F", AxiomStatus::Pass, ""};
  double prev_sum = -1.0, prev_f = 0.0;
  bool have_prev = false;
  for (int it = 0; it < budget; ++it) {
    const int dim = 2 + static_cast<int>(rng.below(5));
    const Eigen::VectorXd p = random_distribution(rng, dim);
    double s = 0.0;
    for (int i = 0; i < dim; ++i) s += g.inner(p(i));
    const double f = g.outer(s);
    if (nonneg.status == AxiomStatus::Pass && !(f >= -kSlack)) {
      nonneg.status = AxiomStatus::Fail;
      nonneg.detail = describe("F(sum G) < 0", f, 0.0);
    }
    if (have_prev && mono.status == AxiomStatus::Pass) {
      const double lo_s = std::min(prev_sum, s), hi_s = std::max(prev_sum, s);
      const double lo_f = prev_sum <= s ? prev_f : f;
      const double hi_f = prev_sum <= s ? f : prev_f;
      if (hi_s > lo_s + kSlack && !(hi_f >= lo_f - kSlack)) {
        mono.status = AxiomStatus::Fail;
        mono.detail = describe("F decreasing on sums", lo_f, hi_f);
      }
    }
    prev_sum = s;
    prev_f = f;
    have_prev = true;
  }
  report.checks.push_back(nonneg);
  report.checks.push_back(mono);

  // Refinement: splitting one outcome into two must not lower the entropy.
  // Non-strict ">=" counts as a pass.
  AxiomCheck refine{"AE6-refinement", AxiomStatus::Pass, ""};
  const EntropyMeasure as_gen = EntropyMeasure::generalized(g);
  for (int it = 0; it < budget && refine.status == AxiomStatus::Pass; ++it) {
    const int dim = 2 + static_cast<int>(rng.below(4));
    const Eigen::VectorXd p = random_distribution(rng, dim);
    const int split = static_cast<int>(rng.below(dim));
    const double frac = rng.uniform();
    Eigen::VectorXd refined(dim + 1);
    for (int i = 0; i < dim; ++i) refined(i) = p(i);
    refined(split) = p(split) * frac;
    refined(dim) = p(split) * (1.0 - frac);
    const double coarse = classical_entropy(Distribution(p), as_gen);
    const double fine = classical_entropy(Distribution(refined), as_gen);
    if (!(fine >= coarse - kSlack)) {
      refine.status = AxiomStatus::Fail;
      refine.detail = describe("refined entropy below coarse", fine, coarse);
    }
  }
  report.checks.push_back(refine);

  // Expandability probed on the raw handles: appending a zero-probability
  // outcome contributes G(0) to the inner sum.
  AxiomCheck expand{"AE7-expandability", AxiomStatus::Pass, ""};
  const double g0 = g.inner(0.0);
  if (!std::isfinite(g0)) {
    expand.status = AxiomStatus::Fail;
    expand.detail = "G(0) is not finite";
  } else {
    for (int it = 0; it < budget && expand.status == AxiomStatus::Pass; ++it) {
      const int dim = 2 + static_cast<int>(rng.below(4));
      const Eigen::VectorXd p = random_distribution(rng, dim);
      double s = 0.0;
      for (int i = 0; i < dim; ++i) s += g.inner(p(i));
      const double drift = std::abs(g.outer(s + g0) - g.outer(s));
      if (drift > 1e-9) {
        expand.status = AxiomStatus::Fail;
        expand.detail = describe("appending zero outcome shifts value by", drift, 0.0);
      }
    }
  }
  report.checks.push_back(expand);
  return report;
}

}  // namespace qent
