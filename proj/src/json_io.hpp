#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "density.hpp"
#include "distribution.hpp"
#include "entropy.hpp"

namespace qent {

// Parsing goes through nlohmann; emission uses the streaming writer below so
// outputs are byte-stable (fixed field order, %.17g numbers).

nlohmann::json parse_json_text(const std::string& text);

// {"dim": d, "re": [[...]], "im": [[...]]}; "im" may be omitted.
Matrix matrix_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j,
                                const Tolerances& tol = default_tolerances());
Basis basis_from_json(const nlohmann::json& j,
                      const Tolerances& tol = default_tolerances());
Distribution distribution_from_json(const nlohmann::json& j,
                                    const Tolerances& tol = default_tolerances());
Eigen::MatrixXd real_table_from_json(const nlohmann::json& j);

std::string format_double(double v);  // shortest round-trip via %.17g

class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(long long v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v);
  JsonWriter& null_value();

  const std::string& str() const { return out_; }

 private:
  void separate();
  std::string out_;
  std::vector<bool> first_;
  bool after_key_ = false;
};

void write_complex_matrix(JsonWriter& w, const Matrix& m);
void write_real_matrix(JsonWriter& w, const Eigen::MatrixXd& m);
void write_real_vector(JsonWriter& w, const Eigen::VectorXd& v);

std::string state_to_json(const DensityMatrix& rho);

}  // namespace qent
