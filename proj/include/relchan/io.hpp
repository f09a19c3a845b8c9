#pragma once

// Serialization: density operators as JSON, result tables as CSV.
//
// Density JSON:
//   {"mass": m, "basis": [[px,py,pz], ...], "matrix": [[re,im], ...]}
// with the matrix row-major over the (1+M)x(1+M) sector. Doubles are written
// in shortest round-trip form, so reading back reproduces every bit.

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "relchan/fock_sector.hpp"
#include "relchan/poincare_rep.hpp"

namespace relchan {

using json = nlohmann::json;

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

inline json density_to_json(const AtomBasis& basis, const Operator& rho) {
  json j;
  j["mass"] = basis.mass();
  json atoms = json::array();
  for (const auto& p : basis.atoms()) atoms.push_back({p.spatial()(0), p.spatial()(1), p.spatial()(2)});
  j["basis"] = atoms;
  json m = json::array();
  for (Eigen::Index r = 0; r < rho.rows(); ++r)
    for (Eigen::Index c = 0; c < rho.cols(); ++c) m.push_back({rho(r, c).real(), rho(r, c).imag()});
  j["matrix"] = m;
  return j;
}

inline BasisState density_from_json(const json& j) {
  try {
    const double mass = j.at("mass").get<double>();
    std::vector<Eigen::Vector3d> ps;
    for (const auto& a : j.at("basis")) {
      if (!a.is_array() || a.size() != 3) throw FormatError("basis entries must be momentum triples");
      ps.emplace_back(a[0].get<double>(), a[1].get<double>(), a[2].get<double>());
    }
    AtomBasis basis = AtomBasis::from_spatial(mass, ps);
    const auto& m = j.at("matrix");
    const Eigen::Index d = basis.dim();
    if (!m.is_array() || static_cast<Eigen::Index>(m.size()) != d * d)
      throw FormatError("matrix must hold (1+M)^2 complex entries");
    Operator rho(d, d);
    for (Eigen::Index k = 0; k < d * d; ++k) {
      const auto& e = m[static_cast<std::size_t>(k)];
      if (!e.is_array() || e.size() != 2) throw FormatError("matrix entries must be [re, im] pairs");
      rho(k / d, k % d) = cplx{e[0].get<double>(), e[1].get<double>()};
    }
    return {std::move(basis), std::move(rho)};
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed density document: ") + e.what());
  }
}

inline std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// A table cell: either text or a number printed with 17 significant digits.
struct Cell {
  std::string text;
  std::optional<double> number;

  Cell(const char* s) : text(s) {}
  Cell(std::string s) : text(std::move(s)) {}
  Cell(double x) : text(format_double(x)), number(x) {}
  Cell(int x) : text(std::to_string(x)), number(x) {}
  Cell(long x) : text(std::to_string(x)), number(static_cast<double>(x)) {}
  Cell(std::size_t x) : text(std::to_string(x)), number(static_cast<double>(x)) {}
};

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(const std::vector<Cell>& cells) {
    if (cells.size() != header_.size()) throw Error("CSV row width does not match the header");
    rows_.push_back(cells);
  }

  const std::vector<std::string>& header() const { return header_; }
  const std::vector<std::vector<Cell>>& rows() const { return rows_; }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
    out += '\n';
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i].text;
      out += '\n';
    }
    return out;
  }

  json to_json() const {
    json rows = json::array();
    for (const auto& r : rows_) {
      json obj = json::object();
      for (std::size_t i = 0; i < header_.size(); ++i) {
        if (r[i].number)
          obj[header_[i]] = *r[i].number;
        else
          obj[header_[i]] = r[i].text;
      }
      rows.push_back(obj);
    }
    return {{"columns", header_}, {"rows", rows}};
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<Cell>> rows_;
};

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f << content;
  if (!f) throw IoError("failed writing " + path);
}

inline std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace relchan
