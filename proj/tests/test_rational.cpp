#include "dlab/rational.hpp"

#include "doctest.h"

#include "dlab/sampling.hpp"

using dlab::ExtRat;
using dlab::Rat;

TEST_CASE("rational parsing accepts fractions, integers and decimals") {
  CHECK(dlab::rat_from_string("3/4") == Rat(3, 4));
  CHECK(dlab::rat_from_string("-3/4") == Rat(-3, 4));
  CHECK(dlab::rat_from_string("6/8") == Rat(3, 4));
  CHECK(dlab::rat_from_string("7") == Rat(7));
  CHECK(dlab::rat_from_string("0.25") == Rat(1, 4));
  CHECK(dlab::rat_from_string("-1.5e-2") == Rat(-3, 200));
  CHECK(dlab::rat_from_string("2.5e3") == Rat(2500));
  CHECK(dlab::rat_from_string(".5") == Rat(1, 2));
  // A decimal with more digits than a double can hold stays exact.
  CHECK(dlab::rat_from_string("0.10000000000000000001") ==
        Rat(dlab::Int("10000000000000000001"), dlab::Int("100000000000000000000")));
}

TEST_CASE("rational parsing rejects malformed input") {
  CHECK_THROWS_AS(dlab::rat_from_string(""), std::invalid_argument);
  CHECK_THROWS_AS(dlab::rat_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(dlab::rat_from_string("a/b"), std::invalid_argument);
  CHECK_THROWS_AS(dlab::rat_from_string("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(dlab::rat_from_string("1e"), std::invalid_argument);
  CHECK_THROWS_AS(dlab::rat_from_string("--1"), std::invalid_argument);
}

TEST_CASE("rendering always includes the denominator and round-trips") {
  CHECK(dlab::rat_to_string(Rat(1)) == "1/1");
  CHECK(dlab::rat_to_string(Rat(0)) == "0/1");
  CHECK(dlab::rat_to_string(Rat(-3, 9)) == "-1/3");
  dlab::sampling::Rng rng(7);
  for (int t = 0; t < 500; ++t) {
    Rat r(static_cast<long long>(rng.below(2001)) - 1000,
          static_cast<long long>(rng.below(999)) + 1);
    CHECK(dlab::rat_from_string(dlab::rat_to_string(r)) == r);
  }
}

TEST_CASE("field identities hold exactly on random operands") {
  dlab::sampling::Rng rng(11);
  for (int t = 0; t < 2000; ++t) {
    Rat a(static_cast<long long>(rng.below(4001)) - 2000,
          static_cast<long long>(rng.below(200)) + 1);
    Rat b(static_cast<long long>(rng.below(4001)) - 2000,
          static_cast<long long>(rng.below(200)) + 1);
    CHECK((a + b) - b == a);
    if (a != 0) CHECK(a * (Rat(1) / a) == 1);
  }
}

TEST_CASE("extended rationals order infinity last") {
  ExtRat inf = ExtRat::infinity();
  CHECK(ExtRat(Rat(5)) < inf);
  CHECK(inf <= inf);
  CHECK(inf == ExtRat::infinity());
  CHECK(!(inf < ExtRat(Rat(1000000))));
  CHECK(inf * Rat(3, 2) == inf);
  CHECK(ExtRat(Rat(2)) * Rat(3, 2) == ExtRat(Rat(3)));
  CHECK(max(ExtRat(Rat(2)), inf).is_infinite());
  CHECK(min(ExtRat(Rat(2)), inf) == ExtRat(Rat(2)));
  CHECK(dlab::ext_to_string(inf) == "inf");
}
