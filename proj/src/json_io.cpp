#include "vtc/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace vtc::io {

namespace {

[[noreturn]] void schema_fail(const std::string& msg) { throw SchemaError(msg); }

int require_int(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    schema_fail(std::string("missing or non-integer field \"") + key + "\"");
  }
  return j.at(key).get<int>();
}

const Json& require_array(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    schema_fail(std::string("missing or non-array field \"") + key + "\"");
  }
  return j.at(key);
}

void require_kind(const Json& j, const char* kind) {
  if (kind_of(j) != kind) {
    schema_fail(std::string("expected kind \"") + kind + "\", got \"" + kind_of(j) + "\"");
  }
}

std::vector<Matrix> parse_matrix_list(const Json& arr, int p, const char* what) {
  std::vector<Matrix> out;
  for (const Json& m : arr) {
    Matrix M = json_to_matrix(m);
    if (M.rows() != p || (M.cols() != p && M.cols() != 2 * p)) {
      schema_fail(std::string(what) + ": block has wrong shape");
    }
    out.push_back(std::move(M));
  }
  if (out.empty()) schema_fail(std::string(what) + ": empty block list");
  return out;
}

}  // namespace

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) schema_fail("cannot open input file: " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) schema_fail("invalid JSON in " + path);
  return j;
}

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Json matrix_to_json(const Matrix& M) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(complex_to_json(M(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Complex json_to_complex(const Json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return Complex(j[0].get<double>(), j[1].get<double>());
  }
  schema_fail("complex scalar must be a number or a [re, im] pair");
}

Matrix json_to_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) schema_fail("matrix must be a non-empty array of rows");
  const Json& first = j[0];
  if (!first.is_array() || first.empty()) schema_fail("matrix rows must be non-empty arrays");
  const size_t cols = first.size();
  Matrix M(j.size(), cols);
  for (size_t r = 0; r < j.size(); ++r) {
    if (!j[r].is_array() || j[r].size() != cols) schema_fail("ragged matrix rows");
    for (size_t c = 0; c < cols; ++c) M(r, c) = json_to_complex(j[r][c]);
  }
  return M;
}

std::string kind_of(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string()) {
    schema_fail("input must be an object with a string \"kind\" field");
  }
  return j.at("kind").get<std::string>();
}

toeplitz::ToeplitzSpec parse_toeplitz(const Json& j) {
  require_kind(j, "toeplitz");
  toeplitz::ToeplitzSpec spec;
  spec.p = require_int(j, "p");
  if (spec.p < 1) schema_fail("p must be positive");
  spec.s = parse_matrix_list(require_array(j, "s"), spec.p, "toeplitz.s");
  for (const Matrix& blk : spec.s) {
    if (blk.cols() != spec.p) schema_fail("toeplitz.s: block is not p x p");
  }
  spec.nu = j.contains("nu") ? json_to_matrix(j.at("nu"))
                             : Matrix(Matrix::Zero(spec.p, spec.p));
  spec.validate();
  return spec;
}

toeplitz::VerblunskySeqT parse_rho(const Json& j) {
  require_kind(j, "verblunsky_rho");
  toeplitz::VerblunskySeqT seq;
  seq.p = require_int(j, "p");
  seq.rho = parse_matrix_list(require_array(j, "rho"), seq.p, "rho");
  for (const Matrix& blk : seq.rho) {
    if (blk.cols() != seq.p) schema_fail("rho: block is not p x p");
  }
  return seq;
}

hankel::HankelSpec parse_hankel(const Json& j) {
  require_kind(j, "hankel");
  hankel::HankelSpec spec;
  spec.p = require_int(j, "p");
  spec.H = parse_matrix_list(require_array(j, "H"), spec.p, "hankel.H");
  for (const Matrix& blk : spec.H) {
    if (blk.cols() != spec.p) schema_fail("hankel.H: block is not p x p");
  }
  spec.validate();
  return spec;
}

hankel::OmegaSeq parse_omega(const Json& j) {
  require_kind(j, "omega");
  hankel::OmegaSeq os;
  os.p = require_int(j, "p");
  os.omega = parse_matrix_list(require_array(j, "omega"), os.p, "omega");
  for (const Matrix& blk : os.omega) {
    if (blk.cols() != 2 * os.p) schema_fail("omega: block is not p x 2p");
  }
  return os;
}

hankel::DiscreteMeasure parse_measure(const Json& j) {
  require_kind(j, "measure");
  hankel::DiscreteMeasure measure;
  measure.p = require_int(j, "p");
  for (const Json& a : require_array(j, "atoms")) {
    if (!a.is_object() || !a.contains("t") || !a.at("t").is_number() || !a.contains("w")) {
      schema_fail("measure atom must be {\"t\": real, \"w\": matrix}");
    }
    hankel::DiscreteMeasureAtom atom;
    atom.t = a.at("t").get<double>();
    atom.w = json_to_matrix(a.at("w"));
    if (atom.w.rows() != measure.p || atom.w.cols() != measure.p) {
      schema_fail("measure atom weight is not p x p");
    }
    measure.atoms.push_back(std::move(atom));
  }
  return measure;
}

toeplitz::DiracSystem parse_dirac(const Json& j) {
  require_kind(j, "dirac");
  toeplitz::DiracSystem D;
  D.p = require_int(j, "p");
  for (const Json& m : require_array(j, "C")) {
    Matrix M = json_to_matrix(m);
    if (M.rows() != 2 * D.p || M.cols() != 2 * D.p) {
      schema_fail("dirac.C: potential is not 2p x 2p");
    }
    D.C.push_back(std::move(M));
  }
  return D;
}

Json to_json(const toeplitz::ToeplitzSpec& spec) {
  Json j;
  j["kind"] = "toeplitz";
  j["p"] = spec.p;
  Json s = Json::array();
  for (const Matrix& blk : spec.s) s.push_back(matrix_to_json(blk));
  j["s"] = std::move(s);
  j["nu"] = matrix_to_json(spec.nu);
  return j;
}

Json to_json(const toeplitz::VerblunskySeqT& seq) {
  Json j;
  j["kind"] = "verblunsky_rho";
  j["p"] = seq.p;
  Json r = Json::array();
  for (const Matrix& blk : seq.rho) r.push_back(matrix_to_json(blk));
  j["rho"] = std::move(r);
  return j;
}

Json to_json(const hankel::HankelSpec& spec) {
  Json j;
  j["kind"] = "hankel";
  j["p"] = spec.p;
  Json h = Json::array();
  for (const Matrix& blk : spec.H) h.push_back(matrix_to_json(blk));
  j["H"] = std::move(h);
  return j;
}

Json to_json(const hankel::OmegaSeq& os) {
  Json j;
  j["kind"] = "omega";
  j["p"] = os.p;
  Json w = Json::array();
  for (const Matrix& blk : os.omega) w.push_back(matrix_to_json(blk));
  j["omega"] = std::move(w);
  return j;
}

Json to_json(const hankel::DiscreteMeasure& measure) {
  Json j;
  j["kind"] = "measure";
  j["p"] = measure.p;
  Json atoms = Json::array();
  for (const hankel::DiscreteMeasureAtom& atom : measure.atoms) {
    Json a;
    a["t"] = atom.t;
    a["w"] = matrix_to_json(atom.w);
    atoms.push_back(std::move(a));
  }
  j["atoms"] = std::move(atoms);
  return j;
}

Json to_json(const toeplitz::DiracSystem& D) {
  Json j;
  j["kind"] = "dirac";
  j["p"] = D.p;
  Json c = Json::array();
  for (const Matrix& blk : D.C) c.push_back(matrix_to_json(blk));
  j["C"] = std::move(c);
  return j;
}

namespace {

void append_escaped(std::string& out, const std::string& s) {
  out.push_back('"');
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out.push_back(ch);
    }
  }
  out.push_back('"');
}

void dump_rec(std::string& out, const Json& j) {
  if (j.is_object()) {
    out.push_back('{');
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out.push_back(',');
      first = false;
      append_escaped(out, key);
      out.push_back(':');
      dump_rec(out, value);
    }
    out.push_back('}');
  } else if (j.is_array()) {
    out.push_back('[');
    for (size_t i = 0; i < j.size(); ++i) {
      if (i) out.push_back(',');
      dump_rec(out, j[i]);
    }
    out.push_back(']');
  } else if (j.is_number_integer()) {
    out += std::to_string(j.get<long long>());
  } else if (j.is_number_float()) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", j.get<double>());
    out += buf;
  } else if (j.is_boolean()) {
    out += j.get<bool>() ? "true" : "false";
  } else if (j.is_string()) {
    append_escaped(out, j.get<std::string>());
  } else {
    out += "null";
  }
}

}  // namespace

std::string dump_deterministic(const Json& j) {
  std::string out;
  dump_rec(out, j);
  out.push_back('\n');
  return out;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SchemaError("cannot open output file: " + path);
  out << dump_deterministic(j);
}

}  // namespace vtc::io
