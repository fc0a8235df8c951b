#include "superlin/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include <json.hpp>

#include "superlin/error.hpp"

namespace superlin {

namespace {

using json = nlohmann::ordered_json;

std::string field_path(const std::string& name) { return "field '" + name + "'"; }

const json& require_field(const json& j, const std::string& name) {
  const auto it = j.find(name);
  if (it == j.end()) fail(ErrorCode::Parse, "missing " + field_path(name));
  return *it;
}

double number_at(const json& j, const std::string& where) {
  if (!j.is_number()) fail(ErrorCode::Parse, where + " must be a number");
  return j.get<double>();
}

int int_at(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(ErrorCode::Parse, where + " must be an integer");
  return j.get<int>();
}

Eigen::MatrixXd parse_matrix(const json& doc, const std::string& name, int rows, int cols) {
  const json& a = require_field(doc, name);
  if (!a.is_array()) fail(ErrorCode::Parse, field_path(name) + " must be an array of rows");
  if (static_cast<int>(a.size()) != rows)
    fail(ErrorCode::Dimension, field_path(name) + " has " + std::to_string(a.size()) +
                                   " rows, expected " + std::to_string(rows));
  Eigen::MatrixXd X(rows, cols);
  for (int i = 0; i < rows; ++i) {
    const json& row = a[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != cols)
      fail(ErrorCode::Dimension, field_path(name) + " row " + std::to_string(i) + " must have " +
                                     std::to_string(cols) + " entries");
    for (int j = 0; j < cols; ++j)
      X(i, j) = number_at(row[static_cast<std::size_t>(j)],
                          field_path(name) + "[" + std::to_string(i) + "][" + std::to_string(j) +
                              "]");
  }
  return X;
}

Eigen::VectorXd parse_vector_field(const json& doc, const std::string& name, int size,
                                   bool optional) {
  if (optional && !doc.contains(name)) return Eigen::VectorXd::Zero(size);
  const json& a = require_field(doc, name);
  if (!a.is_array()) fail(ErrorCode::Parse, field_path(name) + " must be an array");
  if (static_cast<int>(a.size()) != size)
    fail(ErrorCode::Dimension, field_path(name) + " has " + std::to_string(a.size()) +
                                   " entries, expected " + std::to_string(size));
  Eigen::VectorXd v(size);
  for (int i = 0; i < size; ++i)
    v(i) = number_at(a[static_cast<std::size_t>(i)],
                     field_path(name) + "[" + std::to_string(i) + "]");
  return v;
}

ObservableMap parse_observables(const json& doc, int n, int m) {
  const json& a = require_field(doc, "observables");
  if (!a.is_array()) fail(ErrorCode::Parse, "field 'observables' must be an array");
  if (static_cast<int>(a.size()) != m)
    fail(ErrorCode::Dimension, "field 'observables' has " + std::to_string(a.size()) +
                                   " entries, expected " + std::to_string(m));
  std::vector<MultiPoly> entries;
  entries.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const json& terms = a[static_cast<std::size_t>(j)];
    const std::string where = "observables[" + std::to_string(j) + "]";
    if (!terms.is_array()) fail(ErrorCode::Parse, where + " must be an array of terms");
    MultiPoly p(n);
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const json& term = terms[t];
      const std::string twhere = where + "[" + std::to_string(t) + "]";
      if (!term.is_object()) fail(ErrorCode::Parse, twhere + " must be an object");
      const json& exps = require_field(term, "exps");
      if (!exps.is_array() || static_cast<int>(exps.size()) != n)
        fail(ErrorCode::Dimension, twhere + ".exps must have " + std::to_string(n) + " entries");
      Monomial e(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        e[static_cast<std::size_t>(i)] =
            int_at(exps[static_cast<std::size_t>(i)], twhere + ".exps");
        if (e[static_cast<std::size_t>(i)] < 0)
          fail(ErrorCode::Parse, twhere + ".exps entries must be non-negative");
      }
      p.add_term(std::move(e), number_at(require_field(term, "coef"), twhere + ".coef"));
    }
    p.normalize();
    entries.push_back(std::move(p));
  }
  return ObservableMap(n, std::move(entries));
}

json matrix_to_json(const Eigen::MatrixXd& X) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < X.cols(); ++j) row.push_back(X(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

json observables_to_json(const ObservableMap& p) {
  json maps = json::array();
  for (int j = 0; j < p.output_dim(); ++j) {
    json terms = json::array();
    for (const auto& [e, c] : p[j].terms()) {
      json term;
      term["exps"] = e;
      term["coef"] = c;
      terms.push_back(std::move(term));
    }
    maps.push_back(std::move(terms));
  }
  return maps;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view s, const std::string& where) {
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last)
    fail(ErrorCode::Parse, where + ": cannot parse number from '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(s.substr(start));
      return out;
    }
    out.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

SuperLinearization parse_system(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::Parse, "system document must be a JSON object");
  const json& version = require_field(doc, "format_version");
  if (!version.is_string() || version.get<std::string>() != "1")
    fail(ErrorCode::Parse, "unknown format_version; expected \"1\"");
  SuperLinearization L;
  L.n = int_at(require_field(doc, "n"), "field 'n'");
  L.m = int_at(require_field(doc, "m"), "field 'm'");
  if (L.n < 0 || L.m < 0) fail(ErrorCode::Parse, "fields 'n' and 'm' must be non-negative");
  L.A = parse_matrix(doc, "A", L.n, L.n);
  L.G = parse_matrix(doc, "G", L.n, L.m);
  L.H = parse_matrix(doc, "H", L.m, L.n);
  L.M = parse_matrix(doc, "M", L.m, L.m);
  L.B = parse_vector_field(doc, "B", L.n, false);
  L.C = parse_vector_field(doc, "C", L.m, true);
  L.D = parse_vector_field(doc, "D", L.n, true);
  L.E = parse_vector_field(doc, "E", L.m, true);
  L.p = parse_observables(doc, L.n, L.m);
  return L;
}

std::string emit_system(const SuperLinearization& L) {
  json j;
  j["format_version"] = "1";
  j["n"] = L.n;
  j["m"] = L.m;
  j["A"] = matrix_to_json(L.A);
  j["G"] = matrix_to_json(L.G);
  j["H"] = matrix_to_json(L.H);
  j["M"] = matrix_to_json(L.M);
  j["B"] = vector_to_json(L.B);
  j["C"] = vector_to_json(L.C);
  j["D"] = vector_to_json(L.D);
  j["E"] = vector_to_json(L.E);
  j["observables"] = observables_to_json(L.p);
  return dump(j);
}

std::string emit_validation_report(const ValidationReport& r) {
  json j;
  j["pass"] = r.pass;
  json checks = json::array();
  for (const ValidationCheck& c : r.checks) {
    json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["residual"] = c.residual;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  return dump(j);
}

std::string emit_classification(const Classification& c) {
  json j;
  j["visible"] = c.visible;
  j["hidden"] = c.hidden;
  j["m_v"] = c.m_v;
  j["m_h"] = c.m_h;
  return dump(j);
}

std::string emit_reduction_report(const ReductionReport& r) {
  json j;
  json steps = json::array();
  for (const ReductionStep& s : r.steps) {
    json sj;
    sj["name"] = s.name;
    sj["n"] = s.n;
    sj["m_before"] = s.m_before;
    sj["m_after"] = s.m_after;
    sj["rank_g_before"] = s.rank_g_before;
    sj["rank_g_after"] = s.rank_g_after;
    sj["m_v_before"] = s.m_v_before;
    sj["m_v_after"] = s.m_v_after;
    sj["m_h_before"] = s.m_h_before;
    sj["m_h_after"] = s.m_h_after;
    steps.push_back(std::move(sj));
  }
  j["steps"] = std::move(steps);
  j["m_v_star"] = r.m_v_star;
  return dump(j);
}

std::string emit_cosim_report(const CosimReport& r) {
  json j;
  j["max_state_gap"] = r.max_state_gap;
  j["max_gp_gap"] = r.max_gp_gap;
  j["step"] = r.step;
  j["horizon"] = r.horizon;
  j["truncated"] = r.truncated;
  j["truncated_at"] = r.truncated_at;
  return dump(j);
}

Eigen::MatrixXd parse_conjugation_matrix(const std::string& text, int m) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::Parse, "conjugation document must be a JSON object");
  return parse_matrix(doc, "P", m, m);
}

ShiftData parse_shift(const std::string& text, int m, int n) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorCode::Parse, e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::Parse, "shift document must be a JSON object");
  ShiftData out;
  out.R = parse_matrix(doc, "R", m, n);
  out.S = parse_vector_field(doc, "S", m, false);
  return out;
}

Eigen::VectorXd parse_vector_csv(const std::string& text) {
  const std::vector<std::string_view> parts = split(text, ',');
  Eigen::VectorXd v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i)
    v(static_cast<Eigen::Index>(i)) = parse_double(parts[i], "state vector");
  return v;
}

ControlSignal parse_control_spec(const std::string& text) {
  constexpr std::string_view kConst = "const:";
  constexpr std::string_view kPwc = "pwc:";
  const std::string_view s(text);
  if (s.substr(0, kConst.size()) == kConst)
    return ControlSignal::constant(parse_double(s.substr(kConst.size()), "control value"));
  if (s.substr(0, kPwc.size()) == kPwc) {
    ControlSignal u;
    for (std::string_view piece : split(s.substr(kPwc.size()), ';')) {
      const std::vector<std::string_view> tv = split(piece, ',');
      if (tv.size() != 2)
        fail(ErrorCode::Parse, "control piece '" + std::string(piece) + "' must be 't,value'");
      u.breakpoints.push_back(parse_double(tv[0], "control breakpoint"));
      u.values.push_back(parse_double(tv[1], "control value"));
    }
    if (u.breakpoints.empty() || u.breakpoints.front() != 0.0)
      fail(ErrorCode::Parse, "control breakpoints must start at 0");
    for (std::size_t i = 1; i < u.breakpoints.size(); ++i)
      if (u.breakpoints[i] <= u.breakpoints[i - 1])
        fail(ErrorCode::Parse, "control breakpoints must be strictly increasing");
    for (double v : u.values)
      if (!std::isfinite(v)) fail(ErrorCode::Parse, "control values must be finite");
    return u;
  }
  fail(ErrorCode::Parse, "control spec must be 'const:<v>' or 'pwc:t0,v0;t1,v1;...'");
}

std::string trajectory_csv(const Trajectory& nonlinear, const Trajectory* linear) {
  std::string out = "t";
  const Eigen::Index n = nonlinear.states.empty() ? 0 : nonlinear.states.front().size();
  for (Eigen::Index i = 0; i < n; ++i) out += ",x" + std::to_string(i + 1);
  std::size_t count = nonlinear.times.size();
  Eigen::Index nm = 0;
  if (linear) {
    nm = linear->states.empty() ? 0 : linear->states.front().size();
    for (Eigen::Index i = 0; i < nm; ++i) out += ",z" + std::to_string(i + 1);
    count = std::min(count, linear->times.size());
  }
  out += "\n";
  for (std::size_t k = 0; k < count; ++k) {
    out += format_double(nonlinear.times[k]);
    for (Eigen::Index i = 0; i < n; ++i) out += "," + format_double(nonlinear.states[k](i));
    if (linear)
      for (Eigen::Index i = 0; i < nm; ++i) out += "," + format_double(linear->states[k](i));
    out += "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) fail(ErrorCode::Io, "error while reading '" + path + "'");
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.flush();
  if (!out) fail(ErrorCode::Io, "error while writing '" + path + "'");
}

}  // namespace superlin
