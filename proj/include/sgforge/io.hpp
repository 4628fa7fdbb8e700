// Copyright 2026 The Semigroup Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "sgforge/equation_zoo.hpp"
#include "sgforge/semigroup.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace sgforge::io {

using nlohmann::json;

class parse_error : public error {
 public:
  explicit parse_error(const std::string& what) : error(what) {}
};

// Complex numbers are always [re, im] pairs; matrices are nested arrays of
// rows. No string forms, so files stay language-neutral and diff-friendly.

inline json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw parse_error("expected a complex number as a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw parse_error("expected a matrix as an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j[0].size());
  Matrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Eigen::Index>(j[r].size()) != cols)
      throw parse_error("matrix rows have inconsistent lengths");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(j[r][c]);
  }
  return m;
}

// Parses JSON text, turning nlohmann's byte offsets into line/column.
inline json parse_json_text(const std::string& text, const std::string& origin) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw parse_error(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": " + e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// 64-bit FNV-1a over the canonical (sorted-key) dump; used as a content
// fingerprint in reports.
inline std::string fingerprint(const json& j) {
  std::string s = j.dump();
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// --- bath tables ----------------------------------------------------------------
//
// Text format, one sample per line after the header:
//
//   # sgforge-bath v1
//   # format_version 1
//   # domain tau            (or: omega)
//   # couplings M
//   x  re_11 im_11  re_12 im_12 ...   (M*M entries, row-major)
//
// Interpolation between samples is entrywise clamped cubic.

inline BathSpec bath_from_text(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::string domain;
  int couplings = -1;
  int format_version = -1;
  std::vector<double> grid;
  std::vector<Matrix> values;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto fail = [&](const std::string& msg) {
      throw parse_error(origin + ":" + std::to_string(lineno) + ": " + msg);
    };
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string key;
      hs >> key;
      if (key == "domain") {
        hs >> domain;
      } else if (key == "couplings") {
        hs >> couplings;
      } else if (key == "format_version") {
        hs >> format_version;
      }
      continue;
    }
    if (couplings <= 0) fail("missing '# couplings M' header before data");
    std::istringstream ds(line);
    double x = 0.0;
    if (!(ds >> x)) fail("expected a grid value");
    Matrix m(couplings, couplings);
    for (int r = 0; r < couplings; ++r) {
      for (int c = 0; c < couplings; ++c) {
        double re = 0.0, im = 0.0;
        if (!(ds >> re >> im)) fail("expected re/im pairs for all entries");
        m(r, c) = Complex(re, im);
      }
    }
    grid.push_back(x);
    values.push_back(std::move(m));
  }
  if (format_version != 1)
    throw parse_error(origin + ": missing or unsupported '# format_version'");
  if (domain == "tau") return BathSpec::time_domain(std::move(grid), std::move(values));
  if (domain == "omega") return BathSpec::frequency_domain(std::move(grid), std::move(values));
  throw parse_error(origin + ": '# domain' must be 'tau' or 'omega'");
}

inline std::string bath_to_text(const BathSpec& bath) {
  std::ostringstream out;
  out << "# sgforge-bath v1\n# format_version 1\n# domain "
      << (bath.domain == BathSpec::Domain::time ? "tau" : "omega") << "\n# couplings "
      << bath.couplings() << "\n";
  char buf[64];
  for (std::size_t i = 0; i < bath.table.grid().size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", bath.table.grid()[i]);
    out << buf;
    const Matrix& m = bath.table.values()[i];
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        std::snprintf(buf, sizeof(buf), " %.17g %.17g", m(r, c).real(), m(r, c).imag());
        out << buf;
      }
    }
    out << "\n";
  }
  return out.str();
}

// --- generator spec files ---------------------------------------------------------

/// A parsed and materialized generator spec. The coefficient and jump forms
/// are present when the format provides them; the superoperator always is.
struct RealizedGenerator {
  std::string format;
  int dim = 0;
  json document;  // canonical parsed spec, for fingerprints and re-emission
  std::optional<GksGenerator> gks;
  std::optional<LindbladGenerator> lindblad;
  Superoperator superop;
};

namespace detail {

inline const json& require(const json& j, const char* key, const std::string& origin) {
  auto it = j.find(key);
  if (it == j.end()) throw parse_error(origin + ": missing required field '" + key + "'");
  return *it;
}

inline double number(const json& j, const char* key, const std::string& origin) {
  const json& v = require(j, key, origin);
  if (!v.is_number()) throw parse_error(origin + ": field '" + std::string(key) + "' must be a number");
  return v.get<double>();
}

inline double number_or(const json& j, const char* key, double fallback) {
  auto it = j.find(key);
  return it == j.end() ? fallback : it->get<double>();
}

// Resolves a relative path against the directory of the spec file.
inline std::string sibling_path(const std::string& spec_path, const std::string& name) {
  if (!name.empty() && name.front() == '/') return name;
  auto slash = spec_path.find_last_of('/');
  if (slash == std::string::npos) return name;
  return spec_path.substr(0, slash + 1) + name;
}

}  // namespace detail

inline RealizedGenerator realize_zoo(const std::string& name, const json& params,
                                     const std::string& origin) {
  RealizedGenerator out;
  out.format = "zoo:" + name;
  auto finish_lindblad = [&](LindbladGenerator g) {
    out.dim = g.dim();
    out.superop = lindblad_to_superop(g);
    out.lindblad = std::move(g);
  };
  if (name == "pauli") {
    GksGenerator g = pauli_example_generator(detail::number(params, "gamma1", origin),
                                             detail::number(params, "gamma2", origin),
                                             detail::number(params, "gamma3", origin));
    out.dim = 2;
    out.superop = gks_to_superop(g);
    out.gks = std::move(g);
  } else if (name == "landau") {
    FockSpec f = FockSpec::make(static_cast<int>(detail::number(params, "truncation", origin)));
    finish_lindblad(landau_generator(f, detail::number(params, "gamma", origin)));
  } else if (name == "laser") {
    FockSpec f = FockSpec::make(static_cast<int>(detail::number(params, "truncation", origin)));
    double nu = detail::number(params, "nu", origin);
    if (params.contains("temperature")) {
      finish_lindblad(laser_generator_thermal(f, nu, detail::number(params, "omega", origin),
                                              detail::number(params, "temperature", origin)));
    } else {
      finish_lindblad(laser_generator(f, nu, detail::number(params, "delta", origin),
                                      detail::number_or(params, "omega", 0.0)));
    }
  } else if (name == "optical_potential") {
    Matrix h = matrix_from_json(detail::require(params, "hamiltonian", origin));
    Matrix v = matrix_from_json(detail::require(params, "potential", origin));
    out.dim = static_cast<int>(h.rows());
    out.superop = optical_potential_generator(h, v);
  } else if (name == "lamb") {
    Matrix h = matrix_from_json(detail::require(params, "hamiltonian", origin));
    out.dim = 2;
    out.superop = lamb_generator(h, detail::number(params, "gamma1", origin),
                                 detail::number(params, "gamma2", origin));
  } else if (name == "cured_lamb") {
    Matrix h = matrix_from_json(detail::require(params, "hamiltonian", origin));
    std::optional<std::vector<Matrix>> refill;
    if (params.contains("refill")) {
      refill.emplace();
      for (const auto& k : params["refill"]) refill->push_back(matrix_from_json(k));
    }
    finish_lindblad(cure_lamb(h, detail::number(params, "gamma1", origin),
                              detail::number(params, "gamma2", origin), std::move(refill)));
  } else if (name == "belavin") {
    std::vector<Matrix> ops;
    for (const auto& op : detail::require(params, "ops", origin)) ops.push_back(matrix_from_json(op));
    Matrix rates = matrix_from_json(detail::require(params, "rates", origin));
    BelavinGenerator g = belavin_generator(ops, rates);
    out.dim = g.superop.dim;
    out.superop = std::move(g.superop);
  } else if (name == "redfield") {
    Matrix h = matrix_from_json(detail::require(params, "hamiltonian", origin));
    std::vector<Matrix> couplings;
    for (const auto& v : detail::require(params, "couplings", origin))
      couplings.push_back(matrix_from_json(v));
    std::string bath_path =
        detail::sibling_path(origin, detail::require(params, "bath_file", origin).get<std::string>());
    BathSpec bath = bath_from_text(read_file(bath_path), bath_path);
    out.dim = static_cast<int>(h.rows());
    out.superop = redfield_generator(h, couplings, bath,
                                     detail::number(params, "tau_max", origin),
                                     detail::number_or(params, "quad_tol", 1e-10));
  } else if (name == "davies") {
    Matrix h = matrix_from_json(detail::require(params, "hamiltonian", origin));
    std::vector<Matrix> couplings;
    for (const auto& v : detail::require(params, "couplings", origin))
      couplings.push_back(matrix_from_json(v));
    std::string bath_path =
        detail::sibling_path(origin, detail::require(params, "bath_file", origin).get<std::string>());
    BathSpec bath = bath_from_text(read_file(bath_path), bath_path);
    if (params.contains("lamb_file")) {
      std::string lamb_path =
          detail::sibling_path(origin, params["lamb_file"].get<std::string>());
      BathSpec lamb = bath_from_text(read_file(lamb_path), lamb_path);
      bath.lamb = lamb.table;
    }
    DaviesOptions opt;
    opt.gap_tol = detail::number_or(params, "gap_tol", 1e-9);
    if (params.contains("lamb_shift")) opt.lamb_shift = params["lamb_shift"].get<bool>();
    DaviesGenerator g = davies_generator(h, couplings, bath, opt);
    out.dim = g.superop.dim;
    out.superop = std::move(g.superop);
  } else {
    throw parse_error(origin + ": unknown zoo generator '" + name + "'");
  }
  return out;
}

inline RealizedGenerator realize_generator(const json& doc, const std::string& origin) {
  if (!doc.is_object()) throw parse_error(origin + ": spec must be a JSON object");
  if (detail::number(doc, "format_version", origin) != 1)
    throw parse_error(origin + ": unsupported format_version");
  std::string format = detail::require(doc, "format", origin).get<std::string>();
  RealizedGenerator out;
  if (format == "gks") {
    int dim = static_cast<int>(detail::number(doc, "dim", origin));
    Matrix h = matrix_from_json(detail::require(doc, "hamiltonian", origin));
    Matrix c = matrix_from_json(detail::require(doc, "kossakowski", origin));
    if (h.rows() != dim) throw parse_error(origin + ": Hamiltonian does not match dim");
    GksGenerator g = GksGenerator::make(std::move(h), std::move(c), gell_mann_basis(dim));
    out.format = format;
    out.dim = dim;
    out.superop = gks_to_superop(g);
    out.gks = std::move(g);
  } else if (format == "lindblad") {
    int dim = static_cast<int>(detail::number(doc, "dim", origin));
    Matrix h = matrix_from_json(detail::require(doc, "hamiltonian", origin));
    if (h.rows() != dim) throw parse_error(origin + ": Hamiltonian does not match dim");
    std::vector<Matrix> jumps;
    if (doc.contains("jumps"))
      for (const auto& j : doc["jumps"]) jumps.push_back(matrix_from_json(j));
    LindbladGenerator g = LindbladGenerator::make(std::move(h), std::move(jumps));
    out.format = format;
    out.dim = dim;
    out.superop = lindblad_to_superop(g);
    out.lindblad = std::move(g);
  } else if (format.rfind("zoo:", 0) == 0) {
    json params = doc.contains("params") ? doc["params"] : json::object();
    out = realize_zoo(format.substr(4), params, origin);
  } else {
    throw parse_error(origin + ": unknown format '" + format + "'");
  }
  out.document = doc;
  return out;
}

inline RealizedGenerator load_generator(const std::string& path) {
  return realize_generator(parse_json_text(read_file(path), path), path);
}

inline json gks_spec_json(const GksGenerator& g) {
  json doc;
  doc["format_version"] = 1;
  doc["format"] = "gks";
  doc["dim"] = g.dim();
  doc["hamiltonian"] = matrix_to_json(g.hamiltonian);
  doc["kossakowski"] = matrix_to_json(g.coefficients);
  return doc;
}

inline json lindblad_spec_json(const LindbladGenerator& g) {
  json doc;
  doc["format_version"] = 1;
  doc["format"] = "lindblad";
  doc["dim"] = g.dim();
  doc["hamiltonian"] = matrix_to_json(g.hamiltonian);
  json jumps = json::array();
  for (const auto& v : g.jumps) jumps.push_back(matrix_to_json(v));
  doc["jumps"] = std::move(jumps);
  return doc;
}

// --- states and trajectories -------------------------------------------------------

inline Matrix state_from_json(const json& doc, const std::string& origin) {
  if (detail::number(doc, "format_version", origin) != 1)
    throw parse_error(origin + ": unsupported format_version");
  Matrix rho = matrix_from_json(detail::require(doc, "rho", origin));
  if (doc.contains("dim") && doc["dim"].get<int>() != rho.rows())
    throw parse_error(origin + ": dim does not match the matrix");
  return rho;
}

inline json state_to_json(const Matrix& rho) {
  json doc;
  doc["format_version"] = 1;
  doc["dim"] = static_cast<int>(rho.rows());
  doc["rho"] = matrix_to_json(rho);
  return doc;
}

inline Matrix load_state(const std::string& path) {
  return state_from_json(parse_json_text(read_file(path), path), path);
}

// Trajectory CSV: versioned comment line, a fixed header row, then one row
// per time with 17 significant digits (lossless double round-trip):
//   t, trace, lambda_min, purity, re_0_0, im_0_0, re_1_0, ...
// Matrix entries in column-major order.
inline std::string trajectory_to_csv(const Trajectory& traj) {
  std::ostringstream out;
  out << "# sgforge-trajectory v1\n";
  out << "t,trace,lambda_min,purity";
  if (!traj.states.empty()) {
    const auto n = traj.states.front().rows();
    for (Eigen::Index c = 0; c < n; ++c)
      for (Eigen::Index r = 0; r < n; ++r)
        out << ",re_" << r << "_" << c << ",im_" << r << "_" << c;
  }
  out << "\n";
  char buf[64];
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", traj.times[i]);
    out << buf;
    const auto& d = traj.diagnostics[i];
    std::snprintf(buf, sizeof(buf), ",%.17g", d.trace.real());
    out << buf;
    std::snprintf(buf, sizeof(buf), ",%.17g", d.lambda_min);
    out << buf;
    std::snprintf(buf, sizeof(buf), ",%.17g", d.purity);
    out << buf;
    const Matrix& rho = traj.states[i];
    for (Eigen::Index c = 0; c < rho.cols(); ++c) {
      for (Eigen::Index r = 0; r < rho.rows(); ++r) {
        std::snprintf(buf, sizeof(buf), ",%.17g,%.17g", rho(r, c).real(), rho(r, c).imag());
        out << buf;
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace sgforge::io
