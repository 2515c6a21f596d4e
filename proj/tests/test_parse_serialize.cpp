#include "doctest.h"

#include <cmath>

#include "fockpsi/errors.hpp"
#include "fockpsi/parse.hpp"
#include "fockpsi/serialize.hpp"

using namespace fockpsi;

TEST_CASE("complex literals") {
  CHECK(parse_complex("1.5") == Complex(1.5, 0));
  CHECK(parse_complex("-2") == Complex(-2, 0));
  CHECK(parse_complex("i") == Complex(0, 1));
  CHECK(parse_complex("-i") == Complex(0, -1));
  CHECK(parse_complex("-0.5i") == Complex(0, -0.5));
  CHECK(parse_complex("1+2i") == Complex(1, 2));
  CHECK(parse_complex("3-4e-2i") == Complex(3, -0.04));
  CHECK(parse_complex("2j") == Complex(0, 2));
  CHECK(parse_complex(" 1e-3 ") == Complex(1e-3, 0));
  for (const char* bad : {"", "abc", "1+", "1..2", "2ii", "1+2"})
    CHECK_THROWS_AS(parse_complex(bad), InputError);
}

TEST_CASE("vectors, matrices and affine maps") {
  const CVector v = parse_vector("1,0.5i");
  REQUIRE(v.size() == 2);
  CHECK(v(1) == Complex(0, 0.5));

  const CMatrix m = parse_matrix("0,0.5;-0.5,0", 2);
  CHECK(m(0, 1) == Complex(0.5));
  CHECK(m(1, 0) == Complex(-0.5));
  CHECK(parse_matrix("I", 3) == CMatrix::Identity(3, 3));
  CHECK(parse_matrix("0", 2) == CMatrix::Zero(2, 2));
  const CMatrix p = parse_matrix("proj22", 2);
  CHECK(p(1, 1) == Complex(1.0));
  CHECK(p.cwiseAbs().sum() == 1.0);
  CHECK_THROWS_AS(parse_matrix("1,2;3", 2), InputError);
  CHECK_THROWS_AS(parse_matrix("1,2;3,4", 3), DimensionMismatch);
  CHECK_THROWS_AS(parse_matrix("proj33", 2), IndexOutOfRange);

  const AffineMap g = parse_gamma("0,0.5;-0.5,0|1,0", 2);
  CHECK(g.shift()(0) == Complex(1.0));
  CHECK(g.linear_part()(0, 1) == Complex(0.5));
  const AffineMap pr = parse_gamma("proj11;0", 2);
  CHECK(pr.is_linear(0.0));
  CHECK(pr.linear_part()(0, 0) == Complex(1.0));
  CHECK(parse_gamma("I", 2).is_linear(0.0));
  CHECK_THROWS_AS(parse_gamma("I|1,2,3", 2), DimensionMismatch);
}

TEST_CASE("multiplier and weight literals") {
  CHECK(parse_symbol("0", 2).kind() == WeightSymbol::Kind::Zero);
  CHECK(parse_symbol("2-i", 2).kind() == WeightSymbol::Kind::Constant);
  CHECK(parse_symbol("const:3", 2).kind() == WeightSymbol::Kind::Constant);
  const WeightSymbol k = parse_symbol("kernel:2@1,0", 2);
  REQUIRE(k.kind() == WeightSymbol::Kind::KernelMultiple);
  CHECK(k.as_kernel().alpha == Complex(2.0));
  const WeightSymbol poly = parse_symbol("poly:1@0,0;0.5i@1,2", 2);
  REQUIRE(poly.kind() == WeightSymbol::Kind::Polynomial);
  CHECK(poly.as_polynomial().poly.coefficient(MultiIndex({1, 2})) == Complex(0, 0.5));
  CHECK_THROWS_AS(parse_symbol("poly:1@0", 2), DimensionMismatch);
  CHECK_THROWS_AS(parse_symbol("poly:1", 2), InputError);
  CHECK_THROWS_AS(parse_symbol("kernel:1@1", 2), DimensionMismatch);

  CHECK(parse_weight("linear").name() == "linear");
  CHECK(parse_weight("linear:2").psi(1.5) == doctest::Approx(3.0));
  CHECK(parse_weight("linear-quadratic").psi(2.0) == doctest::Approx(6.0));
  CHECK(parse_weight("poly:0,1,1").psi(2.0) == doctest::Approx(6.0));
  CHECK_THROWS_AS(parse_weight("cubic"), InputError);
}

TEST_CASE("moments CSV round trip") {
  const MomentTable m = compute_moments(linear_quadratic_weight(), 12);
  const std::string csv = moments_to_csv(m);
  CHECK(csv.rfind("r,c_r,err_r\n", 0) == 0);
  const MomentTable back = moments_from_csv(csv, "linear-quadratic");
  REQUIRE(back.r_max() == 12);
  for (int r = 0; r <= 12; ++r) CHECK(back.c(r) == m.c(r));
  CHECK(moments_to_csv(back) == csv);
  CHECK_THROWS_AS(moments_from_csv("r,c_r,err_r\n1,1,0\n", "x"), InputError);
  CHECK_THROWS_AS(moments_from_csv("bad header\n", "x"), InputError);
}

TEST_CASE("JSON output is stable and versioned") {
  Verdict v;
  v.theorem = "self-adjoint-composition";
  v.satisfied = true;
  v.conditions.push_back({"D = 0", true, 0.0, 1e-9, false});
  const Json j = to_json(v);
  CHECK(j["schema"] == kSchemaVersion);
  CHECK(dump_line(j) == dump_line(to_json(v)));
  CHECK(dump_line(j).find('\n') == std::string::npos);

  const Json z = complex_to_json(Complex(1.5, -2));
  CHECK(z["re"] == 1.5);
  CHECK(z["im"] == -2.0);

  ResidualReport r{"kernel-symmetry", 1e-16, 10, 7, 1e-12, true};
  const Json rj = to_json(r);
  CHECK(rj["name"] == "kernel-symmetry");
  CHECK(rj["passed"] == true);
}
