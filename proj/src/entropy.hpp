#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "density.hpp"
#include "distribution.hpp"

namespace qent {

enum class MeasureKind { VonNeumann, Renyi, Tsallis, Generalized };
enum class LogBase { Two, E };

// (F, G) pairing for an entropy of the form F(sum_i G(p_i)), shifted so pure
// distributions score zero.
struct GeneralizedSpec {
  std::function<double(double)> outer;  // F, applied to the accumulated sum
  std::function<double(double)> inner;  // G, applied entrywise
};

class EntropyMeasure {
 public:
  static EntropyMeasure von_neumann();
  static EntropyMeasure renyi(double alpha);
  static EntropyMeasure tsallis(double q);
  static EntropyMeasure generalized(GeneralizedSpec spec);
  // "vn" | "renyi:<alpha>" | "tsallis:<q>"
  static EntropyMeasure parse(const std::string& text);

  MeasureKind kind() const { return kind_; }
  double param() const { return param_; }
  const GeneralizedSpec& spec() const { return spec_; }
  std::string name() const;

  // Canonical (F, G) factorization of the built-in families, used by the
  // axiom checker.
  GeneralizedSpec factorization(LogBase base = LogBase::Two) const;

 private:
  EntropyMeasure(MeasureKind k, double p) : kind_(k), param_(p) {}
  MeasureKind kind_;
  double param_ = 0.0;
  GeneralizedSpec spec_;
};

// Base applies to the logarithmic families (von Neumann, Renyi); the Tsallis
// and generalized values carry their own natural units.
double classical_entropy(const Distribution& p, const EntropyMeasure& m,
                         LogBase base = LogBase::Two);
double quantum_entropy(const DensityMatrix& rho, const EntropyMeasure& m,
                       LogBase base = LogBase::Two);

// Validated nonnegative table with unit total mass; rows are X, columns Y.
class JointDistribution {
 public:
  explicit JointDistribution(const Eigen::MatrixXd& table,
                             const Tolerances& tol = default_tolerances());

  int rows() const { return static_cast<int>(t_.rows()); }
  int cols() const { return static_cast<int>(t_.cols()); }
  const Eigen::MatrixXd& table() const { return t_; }

  Distribution marginal_rows() const;  // distribution of X
  Distribution marginal_cols() const;  // distribution of Y
  Distribution flattened() const;

 private:
  Eigen::MatrixXd t_;
};

enum class Axis { Rows, Cols };

// Entropy of the remaining variable conditioned on `given`. Subtraction form
// for von Neumann and generalized measures; ratio-inside-the-log for Renyi;
// power-sum ratio minus one for Tsallis.
double conditional_entropy(const JointDistribution& j, Axis given,
                           const EntropyMeasure& m, LogBase base = LogBase::Two);

// Subtraction form for von Neumann, Renyi and generalized measures; the
// normalized pseudo-additive form for Tsallis.
double mutual_information(const JointDistribution& j, const EntropyMeasure& m,
                          LogBase base = LogBase::Two);

// Plain H(X) + H(Y) - H(X,Y) for every family (for Tsallis this is the bare
// subtraction variant, reported alongside the normalized one).
double mutual_information_subtraction(const JointDistribution& j,
                                      const EntropyMeasure& m,
                                      LogBase base = LogBase::Two);

enum class AxiomStatus { Pass, Fail, Assumed };

struct AxiomCheck {
  std::string axiom;
  AxiomStatus status = AxiomStatus::Assumed;
  std::string detail;  // counterexample on failure
};

struct AxiomReport {
  std::vector<AxiomCheck> checks;
  bool all_pass() const;
  const AxiomCheck& find(const std::string& axiom) const;
};

// Samples random distributions / refinements and checks concavity of G,
// nonnegativity and monotonicity of F, the refinement inequality and
// expandability. Continuity and symmetry are structural (reported as assumed).
AxiomReport check_generalized_axioms(const EntropyMeasure& m, int budget,
                                     std::uint64_t seed);

}  // namespace qent
