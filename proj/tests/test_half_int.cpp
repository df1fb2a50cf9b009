#include <catch2/catch_amalgamated.hpp>

#include <spingyro/half_int.hpp>

using namespace spingyro;

TEST_CASE("half-integers parse from fractions, integers, and decimals") {
  CHECK(HalfInt::parse("3/2").twice() == 3);
  CHECK(HalfInt::parse("2").twice() == 4);
  CHECK(HalfInt::parse("-1/2").twice() == -1);
  CHECK(HalfInt::parse("0.5").twice() == 1);
  CHECK(HalfInt::parse(" 5 / 2 ").twice() == 5);
  CHECK(HalfInt::parse("4/2").twice() == 4);
  CHECK(HalfInt::parse("0").twice() == 0);
}

TEST_CASE("malformed half-integers are configuration errors") {
  CHECK_THROWS_AS(HalfInt::parse("abc"), config_error);
  CHECK_THROWS_AS(HalfInt::parse("3/4"), config_error);
  CHECK_THROWS_AS(HalfInt::parse(""), config_error);
  CHECK_THROWS_AS(HalfInt::parse("0.3"), config_error);
  CHECK_THROWS_AS(HalfInt::from_double(0.3), config_error);
}

TEST_CASE("from_double snaps within tolerance only") {
  CHECK(HalfInt::from_double(1.5).twice() == 3);
  CHECK(HalfInt::from_double(1.5 + 5e-7).twice() == 3);
  CHECK_THROWS_AS(HalfInt::from_double(1.5 + 5e-5), config_error);
}

TEST_CASE("half-integer arithmetic and rendering") {
  const HalfInt j = HalfInt::from_twice(3);  // 3/2
  CHECK((j + 1).twice() == 5);
  CHECK((j - HalfInt::from_twice(1)).twice() == 2);
  CHECK((-j).twice() == -3);
  CHECK(j > HalfInt(1));
  CHECK(j.str() == "3/2");
  CHECK(HalfInt(2).str() == "2");
  CHECK(HalfInt::from_twice(-1).str() == "-1/2");
  CHECK(!j.is_integer());
  CHECK(HalfInt(2).is_integer());
  CHECK(j.value() == 1.5);
}

TEST_CASE("casimir and multiplicity") {
  CHECK(casimir(HalfInt::from_twice(1)) == 0.75);
  CHECK(casimir(HalfInt(2)) == 6.0);
  CHECK(multiplicity(HalfInt::from_twice(3)) == 4);
  CHECK(multiplicity(HalfInt(0)) == 1);
}
