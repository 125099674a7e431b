#include "json_io.hpp"

#include <cmath>
#include <cstdio>

#include "error.hpp"

namespace qent {

nlohmann::json parse_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::BadInput, "malformed JSON");
  return j;
}

namespace {

Eigen::MatrixXd real_part_from(const nlohmann::json& rows, int dim,
                               const char* label) {
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim) {
    throw Error(ErrorCode::BadInput, std::string(label) + " must be dim rows");
  }
  Eigen::MatrixXd m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const auto& row = rows.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != dim) {
      throw Error(ErrorCode::BadInput, std::string(label) + " row has wrong length");
    }
    for (int c = 0; c < dim; ++c) {
      const auto& cell = row.at(c);
      if (!cell.is_number()) {
        throw Error(ErrorCode::BadInput, std::string(label) + " entry is not a number");
      }
      m(r, c) = cell.get<double>();
    }
  }
  return m;
}

}  // namespace

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re")) {
    throw Error(ErrorCode::BadInput, "matrix JSON needs dim and re");
  }
  if (!j.at("dim").is_number_integer()) {
    throw Error(ErrorCode::BadInput, "dim must be an integer");
  }
  const int dim = j.at("dim").get<int>();
  if (dim < 1 || dim > kMaxDenseDim) throw Error(ErrorCode::BadInput, "bad matrix dimension");
  Eigen::MatrixXd re = real_part_from(j.at("re"), dim, "re");
  Eigen::MatrixXd im = Eigen::MatrixXd::Zero(dim, dim);
  if (j.contains("im")) im = real_part_from(j.at("im"), dim, "im");
  Matrix m(dim, dim);
  m.real() = re;
  m.imag() = im;
  return m;
}

DensityMatrix density_from_json(const nlohmann::json& j, const Tolerances& tol) {
  return DensityMatrix(matrix_from_json(j), tol);
}

Basis basis_from_json(const nlohmann::json& j, const Tolerances& tol) {
  return Basis(matrix_from_json(j), tol);
}

Distribution distribution_from_json(const nlohmann::json& j, const Tolerances& tol) {
  const nlohmann::json* arr = &j;
  if (j.is_object() && j.contains("p")) arr = &j.at("p");
  if (!arr->is_array() || arr->empty()) {
    throw Error(ErrorCode::BadInput, "distribution must be a nonempty array");
  }
  Eigen::VectorXd p(arr->size());
  for (int i = 0; i < static_cast<int>(arr->size()); ++i) {
    if (!arr->at(i).is_number()) {
      throw Error(ErrorCode::BadInput, "distribution entry is not a number");
    }
    p(i) = arr->at(i).get<double>();
  }
  return Distribution(p, tol);
}

Eigen::MatrixXd real_table_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j.at(0).is_array() || j.at(0).empty()) {
    throw Error(ErrorCode::BadInput, "table must be a nonempty array of rows");
  }
  const int rows = static_cast<int>(j.size());
  const int cols = static_cast<int>(j.at(0).size());
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != cols) {
      throw Error(ErrorCode::BadInput, "ragged table");
    }
    for (int c = 0; c < cols; ++c) {
      if (!row.at(c).is_number()) {
        throw Error(ErrorCode::BadInput, "table entry is not a number");
      }
      m(r, c) = row.at(c).get<double>();
    }
  }
  return m;
}

std::string format_double(double v) {
  if (v == 0.0) return "0";  // normalize -0
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::Internal, "attempted to emit a non-finite number");
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::separate() {
  if (after_key_) {
    after_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (first_.back()) {
      first_.back() = false;
    } else {
      out_ += ',';
    }
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  out_ += '{';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  out_ += '}';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  out_ += '[';
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  out_ += ']';
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separate();
  out_ += '"';
  out_ += k;
  out_ += "\":";
  after_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  out_ += format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(long long v) {
  separate();
  out_ += std::to_string(v);
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  out_ += v ? "true" : "false";
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separate();
  out_ += '"';
  for (char c : v) {
    switch (c) {
      case '"': out_ += "\\\""; break;
      case '\\': out_ += "\\\\"; break;
      case '\n': out_ += "\\n"; break;
      case '\t': out_ += "\\t"; break;
      case '\r': out_ += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out_ += buf;
        } else {
          out_ += c;
        }
    }
  }
  out_ += '"';
  return *this;
}

JsonWriter& JsonWriter::value(const char* v) { return value(std::string(v)); }

JsonWriter& JsonWriter::null_value() {
  separate();
  out_ += "null";
  return *this;
}

void write_real_matrix(JsonWriter& w, const Eigen::MatrixXd& m) {
  w.begin_array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    w.begin_array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) w.value(m(r, c));
    w.end_array();
  }
  w.end_array();
}

void write_complex_matrix(JsonWriter& w, const Matrix& m) {
  w.begin_object();
  w.key("dim").value(static_cast<int>(m.rows()));
  w.key("re");
  write_real_matrix(w, m.real());
  w.key("im");
  write_real_matrix(w, m.imag());
  w.end_object();
}

void write_real_vector(JsonWriter& w, const Eigen::VectorXd& v) {
  w.begin_array();
  for (Eigen::Index i = 0; i < v.size(); ++i) w.value(v(i));
  w.end_array();
}

std::string state_to_json(const DensityMatrix& rho) {
  JsonWriter w;
  write_complex_matrix(w, rho.mat());
  return w.str();
}

}  // namespace qent
