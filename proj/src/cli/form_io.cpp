#include "qform/form_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "qform/errors.hpp"

namespace qform {

namespace {

Integer json_integer(const Json& v) {
  if (v.is_number_integer()) return Integer(std::to_string(v.get<long long>()));
  if (v.is_string()) return Integer(v.get<std::string>());
  raise(ErrorKind::InvalidArgument, "expected an integer, got " + v.dump());
}

}  // namespace

QuadForm form_from_json(const Json& j) {
  if (!j.is_object()) raise(ErrorKind::InvalidArgument, "form must be a JSON object");
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  if (j.contains("diag_q")) {
    std::vector<Integer> c;
    for (const auto& v : j["diag_q"]) c.push_back(json_integer(v));
    if (c.empty()) raise(ErrorKind::InvalidArgument, "diag_q is empty");
    return QuadForm::from_diagonal(c, name);
  }
  if (!j.contains("gram") || !j["gram"].is_array()) raise(ErrorKind::InvalidArgument, "form needs 'gram' or 'diag_q'");
  const auto& g = j["gram"];
  const std::size_t m = g.size();
  if (m == 0) raise(ErrorKind::InvalidArgument, "gram is empty");
  IntMatrix a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!g[i].is_array() || g[i].size() != m) raise(ErrorKind::InvalidArgument, "gram must be square");
    for (std::size_t k = 0; k < m; ++k) a(i, k) = json_integer(g[i][k]);
  }
  return QuadForm::from_gram(a, name);
}

QuadForm load_form(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::InvalidArgument, "cannot open form file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::InvalidArgument, "bad JSON in '" + path + "': " + e.what());
  }
  return form_from_json(j);
}

Json integer_json(const Integer& x) {
  if (mpz_sizeinbase(x.get_mpz_t(), 2) <= 53) return x.get_si();
  return x.get_str();
}

Json form_to_json(const QuadForm& q) {
  Json g = Json::array();
  for (std::size_t i = 0; i < q.gram().rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < q.gram().cols(); ++k) row.push_back(integer_json(q.gram()(i, k)));
    g.push_back(row);
  }
  Json out;
  out["gram"] = g;
  if (!q.name().empty()) out["name"] = q.name();
  return out;
}

double sig12(long double x) {
  if (!std::isfinite(x)) return static_cast<double>(x);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12Lg", x);
  return std::strtod(buf, nullptr);
}

}  // namespace qform
