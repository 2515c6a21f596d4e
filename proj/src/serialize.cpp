#include "fockpsi/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "fockpsi/errors.hpp"

namespace fockpsi {

namespace {

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// JSON has no infinities; non-finite values are written as null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

std::string moments_to_csv(const MomentTable& m) {
  std::string out = "r,c_r,err_r\n";
  for (int r = 0; r <= m.r_max(); ++r)
    out += std::to_string(r) + "," + g17(m.c(r)) + "," + g17(m.err(r)) + "\n";
  return out;
}

MomentTable moments_from_csv(const std::string& text, const std::string& weight_name) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> c, err;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("r,", 0) == 0) continue;
    }
    std::istringstream row(line);
    std::string f[3];
    for (auto& field : f)
      if (!std::getline(row, field, ','))
        throw InputError("moments CSV line " + std::to_string(line_no) + " needs three columns");
    auto num = [&](const std::string& s) {
      char* end = nullptr;
      const double v = std::strtod(s.c_str(), &end);
      if (s.empty() || end != s.c_str() + s.size())
        throw InputError("moments CSV line " + std::to_string(line_no) + ": bad number '" + s + "'");
      return v;
    };
    const double r = num(f[0]);
    if (r != static_cast<double>(c.size()))
      throw InputError("moments CSV line " + std::to_string(line_no) + ": expected r = " +
                       std::to_string(c.size()));
    c.push_back(num(f[1]));
    err.push_back(num(f[2]));
  }
  if (c.empty()) throw InputError("moments CSV holds no rows");
  return MomentTable(weight_name, std::move(c), std::move(err));
}

Json complex_to_json(Complex z) { return Json{{"re", number(z.real())}, {"im", number(z.imag())}}; }

Json to_json(const MomentTable& m) {
  Json rows = Json::array();
  for (int r = 0; r <= m.r_max(); ++r)
    rows.push_back(Json{{"r", r}, {"c_r", number(m.c(r))}, {"err_r", number(m.err(r))}});
  return Json{{"schema", kSchemaVersion}, {"weight", m.weight_name()}, {"r_max", m.r_max()},
              {"moments", rows}};
}

Json to_json(const SeriesValue& s) {
  return Json{{"schema", kSchemaVersion},
              {"value", complex_to_json(s.value)},
              {"tail_bound", number(s.tail_bound)},
              {"terms", s.terms}};
}

Json to_json(const TruncatedOperator& t) {
  Json index = Json::array();
  for (const auto& a : t.index) index.push_back(a.exponents());
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < t.matrix.rows(); ++i) {
    Json rr = Json::array(), ri = Json::array();
    for (Eigen::Index j = 0; j < t.matrix.cols(); ++j) {
      rr.push_back(number(t.matrix(i, j).real()));
      ri.push_back(number(t.matrix(i, j).imag()));
    }
    re.push_back(rr);
    im.push_back(ri);
  }
  return Json{{"schema", kSchemaVersion}, {"n", t.n},   {"max_degree", t.max_degree},
              {"guard", t.guard},         {"index", index}, {"re", re},
              {"im", im}};
}

Json to_json(const Verdict& v) {
  Json conds = Json::array();
  for (const auto& c : v.conditions)
    conds.push_back(Json{{"name", c.name},
                         {"pass", c.pass},
                         {"residual", number(c.residual)},
                         {"threshold", number(c.threshold)},
                         {"informational", c.informational}});
  return Json{{"schema", kSchemaVersion},
              {"theorem", v.theorem},
              {"satisfied", v.satisfied},
              {"necessary_only", v.necessary_only},
              {"conditions_pass", v.conditions_pass()},
              {"seed", v.seed},
              {"conditions", conds}};
}

Json to_json(const ResidualReport& r) {
  return Json{{"schema", kSchemaVersion},       {"name", r.name},
              {"max_residual", number(r.max_residual)}, {"points_tested", r.points_tested},
              {"seed", r.seed},                 {"threshold", number(r.threshold)},
              {"passed", r.passed}};
}

Json to_json(const CrossCheckReport& r) {
  Json j = to_json(r.summary);
  j["min_negative_defect"] = number(r.min_negative_defect);
  j["violations"] = r.violations;
  j["violation_details"] = r.violation_details;
  j["theorem_counts"] = r.theorem_counts;
  j["satisfied_counts"] = r.satisfied_counts;
  j["coverage_complete"] = r.coverage_complete;
  return j;
}

std::string dump_line(const Json& j) { return j.dump(); }

}  // namespace fockpsi
