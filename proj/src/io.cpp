#include "qchan/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qchan {

namespace {

using nlohmann::json;

CMatrix matrix_from_json(const json& rows, const std::string& field) {
  if (!rows.is_array() || rows.empty())
    throw Error("field '" + field + "' must be a nonempty list of rows");
  const size_t n_rows = rows.size();
  size_t n_cols = 0;
  CMatrix m;
  for (size_t r = 0; r < n_rows; ++r) {
    const json& row = rows[r];
    if (!row.is_array() || row.empty())
      throw Error("field '" + field + "' row " + std::to_string(r) +
                  " must be a nonempty list");
    if (r == 0) {
      n_cols = row.size();
      m.resize(n_rows, n_cols);
    } else if (row.size() != n_cols) {
      throw Error("field '" + field + "' has ragged rows");
    }
    for (size_t c = 0; c < n_cols; ++c) {
      const json& entry = row[c];
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
          !entry[1].is_number())
        throw Error("field '" + field + "' entry (" + std::to_string(r) + "," +
                    std::to_string(c) + ") must be a [real, imaginary] pair");
      m(r, c) = Complex(entry[0].get<double>(), entry[1].get<double>());
    }
  }
  return m;
}

json matrix_to_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

QuantumOperation operation_from_json(const json& j, const std::string& where) {
  if (!j.contains("dim_in")) throw Error("missing field '" + where + "dim_in'");
  if (!j.contains("dim_out")) throw Error("missing field '" + where + "dim_out'");
  if (!j.contains("kraus")) throw Error("missing field '" + where + "kraus'");
  if (!j["dim_in"].is_number_integer() || !j["dim_out"].is_number_integer())
    throw Error("fields '" + where + "dim_in'/'dim_out' must be integers");
  int din = j["dim_in"].get<int>();
  int dout = j["dim_out"].get<int>();
  const json& list = j["kraus"];
  if (!list.is_array() || list.empty())
    throw Error("field '" + where + "kraus' must be a nonempty list");
  std::vector<CMatrix> kraus;
  kraus.reserve(list.size());
  for (size_t i = 0; i < list.size(); ++i) {
    CMatrix a = matrix_from_json(list[i], where + "kraus[" + std::to_string(i) + "]");
    if (a.rows() != dout || a.cols() != din)
      throw Error("field '" + where + "kraus[" + std::to_string(i) +
                  "]' has shape inconsistent with dim_out x dim_in");
    kraus.push_back(std::move(a));
  }
  return QuantumOperation(std::move(kraus));
}

json operation_to_json(const QuantumOperation& op) {
  json j;
  j["dim_in"] = op.dim_in();
  j["dim_out"] = op.dim_out();
  json kraus = json::array();
  for (const auto& a : op.kraus()) kraus.push_back(matrix_to_json(a));
  j["kraus"] = std::move(kraus);
  return j;
}

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error("file is not valid JSON");
  if (!j.is_object()) throw Error("top level must be a JSON object");
  return j;
}

}  // namespace

QuantumOperation ChannelFile::as_operation() const {
  if (op) return *op;
  return observed->total();
}

ChannelFile parse_channel_json(const std::string& text) {
  json j = parse_or_throw(text);
  ChannelFile out;
  if (j.contains("branches")) {
    const json& list = j["branches"];
    if (!list.is_array() || list.empty())
      throw Error("field 'branches' must be a nonempty list");
    std::vector<QuantumOperation> branches;
    for (size_t i = 0; i < list.size(); ++i)
      branches.push_back(operation_from_json(
          list[i], "branches[" + std::to_string(i) + "]."));
    out.observed = ObservedChannel(std::move(branches));
  } else if (j.contains("kraus")) {
    out.op = operation_from_json(j, "");
  } else {
    throw Error("missing field 'kraus' (single operation) or 'branches' "
                "(observed channel)");
  }
  return out;
}

ChannelFile load_channel_file(const std::string& path) {
  return parse_channel_json(read_text_file(path));
}

std::string channel_to_json(const QuantumOperation& op) {
  return operation_to_json(op).dump(2) + "\n";
}

std::string channel_to_json(const ObservedChannel& obs) {
  json j;
  json list = json::array();
  for (const auto& b : obs.branches()) list.push_back(operation_to_json(b));
  j["branches"] = std::move(list);
  return j.dump(2) + "\n";
}

CMatrix parse_matrix_json(const std::string& text) {
  json j = parse_or_throw(text);
  if (!j.contains("dim")) throw Error("missing field 'dim'");
  if (!j["dim"].is_number_integer()) throw Error("field 'dim' must be an integer");
  if (!j.contains("matrix")) throw Error("missing field 'matrix'");
  int d = j["dim"].get<int>();
  CMatrix m = matrix_from_json(j["matrix"], "matrix");
  if (m.rows() != d || m.cols() != d)
    throw Error("field 'matrix' is not dim x dim");
  return m;
}

CMatrix load_matrix_file(const std::string& path) {
  return parse_matrix_json(read_text_file(path));
}

DensityOperator parse_state_json(const std::string& text) {
  return DensityOperator(parse_matrix_json(text));
}

DensityOperator load_state_file(const std::string& path) {
  return parse_state_json(read_text_file(path));
}

std::string state_to_json(const DensityOperator& rho) {
  json j;
  j["dim"] = rho.dim();
  j["matrix"] = matrix_to_json(rho.matrix());
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
}

std::string read_text_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string file_digest(const std::string& path) {
  std::string bytes = read_text_file(path);
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << std::hex << h;
  return ss.str();
}

}  // namespace qchan
