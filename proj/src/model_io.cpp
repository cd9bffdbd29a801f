#include "qecmet/model_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qecmet {

namespace {

using ojson = nlohmann::ordered_json;

ojson complex_to_json(const Complex& z) { return ojson::array({z.real(), z.imag()}); }

Complex complex_from_json(const ojson& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw std::invalid_argument("parse: " + where + " must be a [re, im] number pair");
  return Complex(j[0].get<double>(), j[1].get<double>());
}

ojson matrix_to_json(const ComplexMatrix& m) {
  ojson rows = ojson::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix matrix_from_json(const ojson& j, Eigen::Index dim, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim)
    throw std::invalid_argument("parse: " + where + " must have " + std::to_string(dim) +
                                " rows");
  ComplexMatrix m(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const ojson& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim)
      throw std::invalid_argument("parse: " + where + " row " + std::to_string(r) +
                                  " must have " + std::to_string(dim) + " entries");
    for (Eigen::Index c = 0; c < dim; ++c)
      m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                  where + "[" + std::to_string(r) + "][" +
                                      std::to_string(c) + "]");
  }
  return m;
}

ojson vector_to_json(const ComplexVector& v) {
  ojson out = ojson::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

ComplexVector vector_from_json(const ojson& j, Eigen::Index dim, const std::string& where) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != dim)
    throw std::invalid_argument("parse: " + where + " must have " + std::to_string(dim) +
                                " entries");
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    v(i) = complex_from_json(j[static_cast<std::size_t>(i)],
                             where + "[" + std::to_string(i) + "]");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << text;
}

const ojson& require_field(const ojson& j, const std::string& key) {
  auto it = j.find(key);
  if (it == j.end()) throw std::invalid_argument("parse: missing field '" + key + "'");
  return *it;
}

}  // namespace

ModelFileData parse_model_string(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("parse: invalid JSON: ") + e.what());
  }
  if (require_field(j, "schema_version").get<int>() != 1)
    throw std::invalid_argument("parse: unsupported schema_version");
  const Eigen::Index dim = require_field(j, "dim").get<Eigen::Index>();
  if (dim <= 0) throw std::invalid_argument("parse: dim must be positive");

  ComplexMatrix g = matrix_from_json(require_field(j, "G"), dim, "G");
  // reject non-Hermitian input, naming the worst entry
  double worst = 0.0;
  Eigen::Index wi = 0, wj = 0;
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      const double dev = std::abs(g(r, c) - std::conj(g(c, r)));
      if (dev > worst) { worst = dev; wi = r; wj = c; }
    }
  if (worst > 1e-12 * std::max(1.0, max_abs(g)))
    throw std::invalid_argument("parse: G is not Hermitian; entry (" + std::to_string(wi) +
                                "," + std::to_string(wj) + ") deviates by " +
                                std::to_string(worst));

  std::vector<ComplexMatrix> ls;
  const ojson& jl = require_field(j, "lindblad");
  if (!jl.is_array()) throw std::invalid_argument("parse: lindblad must be an array");
  for (std::size_t k = 0; k < jl.size(); ++k)
    ls.push_back(matrix_from_json(jl[k], dim, "lindblad[" + std::to_string(k) + "]"));

  std::vector<ComplexMatrix> js;
  if (j.contains("perturbation")) {
    const ojson& jp = j["perturbation"];
    if (!jp.is_array()) throw std::invalid_argument("parse: perturbation must be an array");
    for (std::size_t k = 0; k < jp.size(); ++k)
      js.push_back(matrix_from_json(jp[k], dim, "perturbation[" + std::to_string(k) + "]"));
  }

  const double omega = require_field(j, "omega").get<double>();
  Metadata meta;
  if (j.contains("metadata"))
    for (auto it = j["metadata"].begin(); it != j["metadata"].end(); ++it)
      meta[it.key()] = it.value().get<std::string>();

  return ModelFileData{LindbladModel(HermitianOperator(g), std::move(ls), std::move(js), omega),
                       std::move(meta)};
}

ModelFileData parse_model_file(const std::string& path) {
  return parse_model_string(read_file(path));
}

std::string serialize_model(const LindbladModel& model, const Metadata& metadata) {
  ojson j;
  j["schema_version"] = 1;
  j["dim"] = model.dim;
  j["G"] = matrix_to_json(model.generator.matrix());
  ojson ls = ojson::array();
  for (const auto& l : model.lindblad_ops) ls.push_back(matrix_to_json(l));
  j["lindblad"] = std::move(ls);
  if (!model.perturbing_ops.empty()) {
    ojson js = ojson::array();
    for (const auto& p : model.perturbing_ops) js.push_back(matrix_to_json(p));
    j["perturbation"] = std::move(js);
  }
  j["omega"] = model.omega;
  if (!metadata.empty()) {
    ojson m = ojson::object();
    for (const auto& [k, v] : metadata) m[k] = v;
    j["metadata"] = std::move(m);
  }
  return j.dump(2) + "\n";
}

void write_model_file(const std::string& path, const LindbladModel& model,
                      const Metadata& metadata) {
  write_file(path, serialize_model(model, metadata));
}

CodeFileData parse_code_string(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("parse: invalid JSON: ") + e.what());
  }
  const Eigen::Index dp = require_field(j, "d_P").get<Eigen::Index>();
  const Eigen::Index da = require_field(j, "d_A").get<Eigen::Index>();
  if (dp <= 0 || da <= 0) throw std::invalid_argument("parse: dimensions must be positive");
  ComplexVector c0 = vector_from_json(require_field(j, "c0"), dp * da, "c0");
  ComplexVector c1 = vector_from_json(require_field(j, "c1"), dp * da, "c1");
  CodeFileData out{CodePair(PureState(c0), PureState(c1), dp, da), std::nullopt,
                   std::nullopt, "user"};
  if (j.contains("s_star")) out.s_star = j["s_star"].get<double>();
  if (j.contains("eigengap")) out.eigengap = j["eigengap"].get<double>();
  if (j.contains("provenance")) out.provenance = j["provenance"].get<std::string>();
  return out;
}

CodeFileData parse_code_file(const std::string& path) {
  return parse_code_string(read_file(path));
}

std::string serialize_code(const CodeFileData& data) {
  ojson j;
  j["schema_version"] = 1;
  j["d_P"] = data.code.d_probe;
  j["d_A"] = data.code.d_ancilla;
  j["c0"] = vector_to_json(data.code.c0.amplitudes());
  j["c1"] = vector_to_json(data.code.c1.amplitudes());
  if (data.s_star) j["s_star"] = *data.s_star;
  if (data.eigengap) j["eigengap"] = *data.eigengap;
  j["provenance"] = data.provenance;
  return j.dump(2) + "\n";
}

void write_code_file(const std::string& path, const CodeFileData& data) {
  write_file(path, serialize_code(data));
}

LindbladModel kerr_model(int n_bar, double loss_rate, double omega) {
  if (n_bar <= 0 || n_bar % 2 != 0)
    throw std::invalid_argument("kerr_model: occupation cutoff must be even and positive");
  if (loss_rate < 0.0) throw std::invalid_argument("kerr_model: negative loss rate");
  const Eigen::Index dim = n_bar + 1;
  ComplexMatrix g = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index n = 0; n < dim; ++n) g(n, n) = double(n * n);
  std::vector<ComplexMatrix> ls;
  ls.push_back(std::sqrt(loss_rate) * annihilation_op(dim));
  return LindbladModel(HermitianOperator(g), std::move(ls), {}, omega);
}

LindbladModel qubit_model(const Eigen::Vector3d& m, const Eigen::Vector3cd& n,
                          double rate, double omega) {
  if (m.norm() == 0.0) throw std::invalid_argument("qubit_model: zero signal direction");
  if (rate < 0.0) throw std::invalid_argument("qubit_model: negative rate");
  ComplexMatrix g =
      0.5 * (m(0) * pauli_x() + m(1) * pauli_y() + m(2) * pauli_z());
  ComplexMatrix l = n(0) * pauli_x() + n(1) * pauli_y() + n(2) * pauli_z();
  std::vector<ComplexMatrix> ls;
  ls.push_back(std::sqrt(rate) * l);
  return LindbladModel(HermitianOperator(g), std::move(ls), {}, omega);
}

}  // namespace qecmet
