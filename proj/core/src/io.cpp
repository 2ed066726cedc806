#include "sunland/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sunland/errors.hpp"

namespace sunland::io {

namespace {

using Json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError("cannot open '" + path + "' for reading");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw ParseError("cannot open '" + path + "' for writing");
  }
  out << text;
  if (!out) {
    throw ParseError("failed writing '" + path + "'");
  }
}

std::vector<std::vector<double>> parse_rows(const Json& doc, const char* key, std::size_t n) {
  const auto it = doc.find(key);
  if (it == doc.end() || !it->is_array()) {
    throw ParseError(std::string("matrix file: missing array '") + key + "'");
  }
  if (it->size() != n) {
    throw ParseError(std::string("matrix file: '") + key + "' has " + std::to_string(it->size()) +
                     " rows, expected " + std::to_string(n));
  }
  std::vector<std::vector<double>> rows;
  rows.reserve(n);
  for (const auto& row : *it) {
    if (!row.is_array() || row.size() != n) {
      throw ParseError(std::string("matrix file: every row of '") + key + "' needs " +
                       std::to_string(n) + " entries");
    }
    std::vector<double> values;
    values.reserve(n);
    for (const auto& x : row) {
      if (!x.is_number()) {
        throw ParseError(std::string("matrix file: non-numeric entry in '") + key + "'");
      }
      values.push_back(x.get<double>());
    }
    rows.push_back(std::move(values));
  }
  return rows;
}

void check_dimension(const ComplexMatrix& m, int n, const std::string& path) {
  if (n > 0 && m.rows() != n) {
    throw DimensionError("'" + path + "' holds a " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " matrix, expected n = " + std::to_string(n));
  }
}

std::string with_path(const std::string& path, const std::exception& e) {
  return "'" + path + "': " + e.what();
}

}  // namespace

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string matrix_to_json(const ComplexMatrix& m) {
  require_square_finite(m, "matrix_to_json");
  const Eigen::Index n = m.rows();
  std::string out = "{\"n\": " + std::to_string(n);
  for (const bool imag : {false, true}) {
    out += imag ? ", \"im\": [" : ", \"re\": [";
    for (Eigen::Index i = 0; i < n; ++i) {
      out += i == 0 ? "[" : ", [";
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j > 0) {
          out += ", ";
        }
        out += format_real(imag ? m(i, j).imag() : m(i, j).real());
      }
      out += "]";
    }
    out += "]";
  }
  out += "}\n";
  return out;
}

ComplexMatrix matrix_from_json(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("matrix file: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ParseError("matrix file: expected a JSON object");
  }
  const auto n_it = doc.find("n");
  if (n_it == doc.end() || !n_it->is_number_integer() || n_it->get<long long>() < 1) {
    throw ParseError("matrix file: 'n' must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(n_it->get<long long>());
  const auto re = parse_rows(doc, "re", n);
  const auto im = parse_rows(doc, "im", n);
  ComplexMatrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Complex(re[i][j], im[i][j]);
    }
  }
  if (!m.allFinite()) {
    throw ParseError("matrix file: entries must be finite");
  }
  return m;
}

void write_matrix(const std::string& path, const ComplexMatrix& m) {
  write_file(path, matrix_to_json(m));
}

ComplexMatrix read_matrix(const std::string& path) {
  try {
    return matrix_from_json(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(with_path(path, e));
  }
}

UnitaryPoint load_unitary(const std::string& path, int n) {
  ComplexMatrix m = read_matrix(path);
  check_dimension(m, n, path);
  try {
    return UnitaryPoint(std::move(m));
  } catch (const InvariantError& e) {
    throw InvariantError(with_path(path, e));
  }
}

SpecialUnitaryPoint load_special_unitary(const std::string& path, int n) {
  ComplexMatrix m = read_matrix(path);
  check_dimension(m, n, path);
  try {
    return SpecialUnitaryPoint(std::move(m));
  } catch (const InvariantError& e) {
    throw InvariantError(with_path(path, e));
  }
}

std::string catalog_to_json(const std::vector<CriticalFamily>& catalog) {
  std::string out = "[";
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const CriticalFamily& f = catalog[i];
    out += i == 0 ? "\n  " : ",\n  ";
    out += "{\"kplus\": " + std::to_string(f.kplus);
    out += ", \"mu\": " + format_real(f.mu);
    out += ", \"value\": " + format_real(f.value);
    out += ", \"nature\": \"" + std::string(to_string(f.nature)) + "\"";
    out += std::string(", \"is_continuum\": ") + (f.is_continuum ? "true" : "false");
    out += ", \"z_re\": " + format_real(f.z.real());
    out += ", \"z_im\": " + format_real(f.z.imag()) + "}";
  }
  out += catalog.empty() ? "]\n" : "\n]\n";
  return out;
}

void write_trace_jsonl(std::ostream& out, const OptimizeTrace& trace, int start) {
  for (const IterateRecord& r : trace.iterates) {
    out << "{";
    if (start >= 0) {
      out << "\"start\": " << start << ", ";
    }
    out << "\"iter\": " << r.iteration << ", \"value\": " << format_real(r.value)
        << ", \"grad_norm\": " << format_real(r.grad_norm) << ", \"step\": " << format_real(r.step)
        << "}\n";
  }
}

std::string report_to_json(const verify::Report& report) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const verify::ReportEntry& e : report) {
    nlohmann::ordered_json entry;
    entry["test"] = e.test;
    entry["n"] = e.n;
    entry["status"] = e.passed ? "pass" : "fail";
    entry["details"] = e.details;
    doc.push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace sunland::io
