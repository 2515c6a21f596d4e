#include "fockpsi/parse.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "fockpsi/errors.hpp"

namespace fockpsi {

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) out += ch;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_real(const std::string& s, const std::string& context) {
  if (s.empty()) throw InputError("empty number in '" + context + "'");
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v))
    throw InputError("cannot read number '" + s + "' in '" + context + "'");
  return v;
}

// Coefficient of an imaginary part: "" -> 1, "+" -> 1, "-" -> -1.
double parse_imag_coefficient(const std::string& s, const std::string& context) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, context);
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

int parse_int(const std::string& s, const std::string& context) {
  const double v = parse_real(s, context);
  if (v != std::floor(v) || std::abs(v) > 1e6) throw InputError("expected an integer in '" + context + "'");
  return static_cast<int>(v);
}

bool named_matrix(const std::string& s, int n, CMatrix& out) {
  if (s == "I" || s == "id" || s == "identity") {
    out = CMatrix::Identity(n, n);
    return true;
  }
  if (s == "0" || s == "zero") {
    out = CMatrix::Zero(n, n);
    return true;
  }
  if (starts_with(s, "proj") && s.size() == 6 && std::isdigit(static_cast<unsigned char>(s[4])) &&
      s[4] == s[5]) {
    const int k = s[4] - '1';
    if (k < 0 || k >= n) throw IndexOutOfRange("'" + s + "' does not fit dimension " + std::to_string(n));
    out = CMatrix::Zero(n, n);
    out(k, k) = 1.0;
    return true;
  }
  return false;
}

}  // namespace

Complex parse_complex(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw InputError("empty complex number");
  const char last = s.back();
  if (last != 'i' && last != 'j') return {parse_real(s, text), 0.0};

  const std::string body = s.substr(0, s.size() - 1);
  // Split at the last sign that is not a leading sign or an exponent sign.
  std::size_t cut = std::string::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  if (cut == std::string::npos) return {0.0, parse_imag_coefficient(body, text)};
  return {parse_real(body.substr(0, cut), text), parse_imag_coefficient(body.substr(cut), text)};
}

CVector parse_vector(const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw InputError("empty vector");
  const auto parts = split(s, ',');
  CVector v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) v(static_cast<Eigen::Index>(i)) = parse_complex(parts[i]);
  return v;
}

CMatrix parse_matrix(const std::string& text, int n) {
  const std::string s = strip(text);
  CMatrix named;
  if (named_matrix(s, n, named)) return named;
  const auto rows = split(s, ';');
  CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const CVector row = parse_vector(rows[r]);
    if (row.size() != static_cast<Eigen::Index>(rows.size()))
      throw DimensionMismatch("matrix '" + text + "' is not square");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  if (m.rows() != n)
    throw DimensionMismatch("matrix '" + text + "' has size " + std::to_string(m.rows()) +
                            ", expected " + std::to_string(n));
  return m;
}

AffineMap parse_gamma(const std::string& text, int n) {
  const std::string s = strip(text);
  std::string mat = s, shift;
  const auto bar = s.find('|');
  if (bar != std::string::npos) {
    mat = s.substr(0, bar);
    shift = s.substr(bar + 1);
  } else {
    const auto semi = s.find(';');
    CMatrix probe;
    if (semi != std::string::npos && named_matrix(s.substr(0, semi), n, probe)) {
      mat = s.substr(0, semi);
      shift = s.substr(semi + 1);
    }
  }
  const CMatrix c = parse_matrix(mat, n);
  CVector d = CVector::Zero(n);
  if (!shift.empty() && shift != "0") {
    d = parse_vector(shift);
    if (d.size() != n) throw DimensionMismatch("shift '" + shift + "' has wrong length");
  }
  return AffineMap(c, d);
}

WeightSymbol parse_symbol(const std::string& text, int n) {
  const std::string s = strip(text);
  if (s == "0" || s == "zero") return WeightSymbol::zero();
  if (starts_with(s, "const:")) return WeightSymbol::constant(parse_complex(s.substr(6)));
  if (starts_with(s, "kernel:")) {
    const std::string body = s.substr(7);
    const auto at = body.find('@');
    if (at == std::string::npos) throw InputError("kernel symbol needs 'ALPHA@q1,...': '" + text + "'");
    CVector q = parse_vector(body.substr(at + 1));
    if (q.size() != n) throw DimensionMismatch("kernel center '" + text + "' has wrong length");
    return WeightSymbol::kernel_multiple(parse_complex(body.substr(0, at)), std::move(q));
  }
  if (starts_with(s, "poly:")) {
    Polynomial p(n);
    for (const auto& term : split(s.substr(5), ';')) {
      const auto at = term.find('@');
      if (at == std::string::npos) throw InputError("polynomial term needs 'COEF@e1,...': '" + term + "'");
      std::vector<int> e;
      for (const auto& part : split(term.substr(at + 1), ',')) {
        const int k = parse_int(part, text);
        if (k < 0) throw InputError("negative exponent in '" + text + "'");
        e.push_back(k);
      }
      if (static_cast<int>(e.size()) != n) throw DimensionMismatch("exponent list in '" + term + "' has wrong length");
      p.add_term(MultiIndex(std::move(e)), parse_complex(term.substr(0, at)));
    }
    return WeightSymbol::polynomial(std::move(p));
  }
  return WeightSymbol::constant(parse_complex(s));
}

WeightFunction parse_weight(const std::string& text) {
  const std::string s = strip(text);
  if (s == "linear") return linear_weight();
  if (s == "linear-quadratic") return linear_quadratic_weight();
  if (starts_with(s, "linear:")) {
    const double a = parse_real(s.substr(7), text);
    if (!(a > 0.0)) throw InputError("linear weight needs a > 0");
    return linear_weight(a);
  }
  if (starts_with(s, "poly:")) {
    std::vector<double> coeffs;
    for (const auto& part : split(s.substr(5), ',')) coeffs.push_back(parse_real(part, text));
    return polynomial_weight(std::move(coeffs), s);
  }
  throw InputError("unknown weight '" + text + "' (expected linear, linear:a, linear-quadratic or poly:c0,c1,...)");
}

}  // namespace fockpsi
