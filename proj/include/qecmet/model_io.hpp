// model_io.hpp — JSON model/code file schemas, preset model builders, and the
// serialization used by the command-line tools. Complex entries are [re, im]
// pairs, matrices row-major; canonical serialization round-trips byte-exactly.

#pragma once

#include "qecmet/code_synthesis.hpp"
#include "qecmet/lindblad_span.hpp"

#include <map>
#include <optional>
#include <string>

namespace qecmet {

using Metadata = std::map<std::string, std::string>;

struct ModelFileData {
  LindbladModel model;
  Metadata metadata;
};

struct CodeFileData {
  CodePair code;
  std::optional<double> s_star;
  std::optional<double> eigengap;
  std::string provenance = "user";  // canonical | optimized | user
};

ModelFileData parse_model_string(const std::string& text);
ModelFileData parse_model_file(const std::string& path);
std::string serialize_model(const LindbladModel& model, const Metadata& metadata = {});
void write_model_file(const std::string& path, const LindbladModel& model,
                      const Metadata& metadata = {});

CodeFileData parse_code_string(const std::string& text);
CodeFileData parse_code_file(const std::string& path);
std::string serialize_code(const CodeFileData& data);
void write_code_file(const std::string& path, const CodeFileData& data);

// Bosonic probe with quartic signal spectrum and excitation loss, truncated at
// occupation n_bar (which must be even): dim = n_bar + 1, G = diag(n^2),
// L = sqrt(loss_rate) * a.
LindbladModel kerr_model(int n_bar, double loss_rate, double omega = 0.05);

// Qubit probe: G = (m·sigma)/2, L = sqrt(rate) * (n·sigma) for a complex n.
LindbladModel qubit_model(const Eigen::Vector3d& m, const Eigen::Vector3cd& n,
                          double rate, double omega = 1.0);

}  // namespace qecmet
