#include "ballmap/serialization.hpp"

#include <fstream>
#include <stdexcept>

namespace ballmap {

namespace {

void check_version(const Json& j, const char* what) {
  if (j.contains("v") && j.at("v") != 1)
    throw std::invalid_argument(std::string(what) +
                                ": unsupported schema version");
}

Multiindex exponents_from_json(const Json& j, int n, const char* what) {
  if (!j.is_array() || static_cast<int>(j.size()) != n)
    throw std::invalid_argument(std::string(what) +
                                ": exponent list has wrong length");
  Multiindex e(n);
  for (int i = 0; i < n; ++i) {
    e[i] = j.at(i).get<int>();
    if (e[i] < 0)
      throw std::invalid_argument(std::string(what) + ": negative exponent");
  }
  return e;
}

}  // namespace

Json polynomial_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) {
    terms.push_back({{"e", e}, {"re", c.real()}, {"im", c.imag()}});
  }
  return Json{{"n", p.dimension()}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const Json& j) {
  check_version(j, "polynomial");
  const int n = j.at("n").get<int>();
  if (n < 1) throw std::invalid_argument("polynomial: dimension must be >= 1");
  Polynomial p(n);
  for (const auto& term : j.at("terms")) {
    p.add_term(exponents_from_json(term.at("e"), n, "polynomial"),
               Complex(term.at("re").get<double>(),
                       term.value("im", 0.0)));
  }
  return p;
}

Json real_form_to_json(const RealForm& r) {
  const RealForm c = r.compacted();
  Json entries = Json::array();
  const auto& m = c.matrix();
  for (int a = 0; a < c.basis().size(); ++a) {
    for (int b = a; b < c.basis().size(); ++b) {
      const Complex v = m(a, b);
      if (v == Complex(0, 0)) continue;
      entries.push_back({{"a", c.basis().at(a)},
                         {"b", c.basis().at(b)},
                         {"re", v.real()},
                         {"im", v.imag()}});
    }
  }
  return Json{{"n", c.basis().dimension()},
              {"d", c.basis_degree()},
              {"entries", std::move(entries)}};
}

RealForm real_form_from_json(const Json& j) {
  check_version(j, "form");
  const int n = j.at("n").get<int>();
  const int d = j.at("d").get<int>();
  if (n < 1 || d < 0) throw std::invalid_argument("form: bad dimensions");
  MonomialBasis basis(n, d);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (const auto& entry : j.at("entries")) {
    const int a = basis.index_of(exponents_from_json(entry.at("a"), n, "form"));
    const int b = basis.index_of(exponents_from_json(entry.at("b"), n, "form"));
    if (a < 0 || b < 0)
      throw std::invalid_argument("form: exponent beyond declared degree");
    const Complex v(entry.at("re").get<double>(), entry.value("im", 0.0));
    m(a, b) = v;
    if (a != b) m(b, a) = std::conj(v);
  }
  return RealForm(std::move(basis), std::move(m));
}

Json map_to_json(const RationalBallMap& f) {
  Json numerator = Json::array();
  for (const auto& comp : f.numerator().components)
    numerator.push_back(polynomial_to_json(comp));
  return Json{{"v", 1},
              {"n", f.source_dimension()},
              {"N", f.target_dimension()},
              {"numerator", std::move(numerator)},
              {"denominator", polynomial_to_json(f.denominator())}};
}

RationalBallMap map_from_json(const Json& j) {
  check_version(j, "map");
  const int n = j.at("n").get<int>();
  const int big_n = j.at("N").get<int>();
  const Json& numerator = j.at("numerator");
  if (static_cast<int>(numerator.size()) != big_n)
    throw std::invalid_argument("map: N does not match the numerator length");
  std::vector<Polynomial> comps;
  comps.reserve(big_n);
  for (const auto& item : numerator) {
    comps.push_back(polynomial_from_json(item));
    if (comps.back().dimension() != n)
      throw std::invalid_argument("map: component dimension mismatch");
  }
  Polynomial den = polynomial_from_json(j.at("denominator"));
  if (den.dimension() != n)
    throw std::invalid_argument("map: denominator dimension mismatch");
  return RationalBallMap(PolyMap(n, std::move(comps)), std::move(den));
}

Json unitary_to_json(const Eigen::MatrixXcd& u) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < u.rows(); ++i)
    for (Eigen::Index j = 0; j < u.cols(); ++j)
      data.push_back({{"re", u(i, j).real()}, {"im", u(i, j).imag()}});
  return Json{{"v", 1},
              {"rows", u.rows()},
              {"cols", u.cols()},
              {"data", std::move(data)}};
}

Eigen::MatrixXcd unitary_from_json(const Json& j) {
  check_version(j, "unitary");
  const int rows = j.at("rows").get<int>();
  const int cols = j.at("cols").get<int>();
  const Json& data = j.at("data");
  if (rows < 1 || cols < 1 ||
      static_cast<int>(data.size()) != rows * cols)
    throw std::invalid_argument("unitary: data length mismatch");
  Eigen::MatrixXcd u(rows, cols);
  int k = 0;
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c, ++k)
      u(i, c) = Complex(data.at(k).at("re").get<double>(),
                        data.at(k).value("im", 0.0));
  return u;
}

Json invariant_spec_to_json(const InvariantPolynomialSpec& spec) {
  Json forms = Json::array();
  for (const auto& form : spec.forms) forms.push_back(real_form_to_json(form));
  return Json{{"v", 1}, {"n", spec.n}, {"forms", std::move(forms)}};
}

InvariantPolynomialSpec invariant_spec_from_json(const Json& j) {
  check_version(j, "spec");
  InvariantPolynomialSpec spec;
  spec.n = j.at("n").get<int>();
  for (const auto& item : j.at("forms"))
    spec.forms.push_back(real_form_from_json(item));
  return spec;
}

Json properness_to_json(const PropernessReport& report) {
  return Json{{"proper", report.proper},
              {"sphere_residual", report.sphere_residual},
              {"divisibility_residual", report.divisibility_residual},
              {"interior_min", report.interior_min},
              {"sphere_powers", report.sphere_powers},
              {"samples", report.samples}};
}

const char* lowest_terms_label(LowestTerms verdict) {
  switch (verdict) {
    case LowestTerms::certified: return "certified";
    case LowestTerms::likely: return "likely";
    case LowestTerms::failed: return "failed";
  }
  return "?";
}

Json normal_form_report_to_json(const NormalFormReport& report) {
  return Json{{"is_normal", report.is_normal},
              {"sigma", std::vector<double>(
                            report.sigma.data(),
                            report.sigma.data() + report.sigma.size())},
              {"numerator_at_zero", report.numerator_at_zero},
              {"linear_term", report.linear_term},
              {"quadratic_off_diagonal", report.quadratic_off_diagonal},
              {"quadratic_imaginary", report.quadratic_imaginary},
              {"sigma_order_defect", report.sigma_order_defect},
              {"denominator_degree_ok", report.denominator_degree_ok}};
}

namespace {

Json complex_vector_to_json(const Eigen::VectorXcd& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back({{"re", v[i].real()}, {"im", v[i].imag()}});
  return out;
}

}  // namespace

Json normalization_to_json(const NormalizationCertificate& cert) {
  return Json{{"map", map_to_json(cert.normalized)},
              {"alpha", complex_vector_to_json(cert.alpha)},
              {"beta", complex_vector_to_json(cert.beta)},
              {"w", unitary_to_json(cert.w)},
              {"sigma", std::vector<double>(
                            cert.sigma.data(),
                            cert.sigma.data() + cert.sigma.size())},
              {"gradient_at_zero", cert.gradient_at_zero},
              {"linear_term_residual", cert.linear_term_residual},
              {"takagi_residual", cert.takagi_residual}};
}

Json construction_to_json(const ConstructionResult& result) {
  return Json{{"map", map_to_json(result.map)},
              {"epsilon", result.epsilon},
              {"epsilon_half_ok", result.epsilon_half_ok},
              {"properness", properness_to_json(result.properness)},
              {"lowest_terms", lowest_terms_label(result.lowest_terms)},
              {"signature",
               {{"positives", result.signature.positives},
                {"negatives", result.signature.negatives}}},
              {"reconstruction_residual", result.reconstruction_residual}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& err) {
    throw std::invalid_argument("parse failure in " + path + ": " + err.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
}

}  // namespace ballmap
