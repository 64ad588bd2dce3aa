#include <stdexcept>

#include "doctest.h"
#include "frobcat/fp_matrix.hpp"
#include "frobcat/rng.hpp"

using namespace frobcat;

namespace {

MatrixFp random_matrix(uint32_t p, int rows, int cols, Rng& rng) {
  MatrixFp m(p, rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m.set(r, c, static_cast<uint32_t>(rng.below(static_cast<int>(p))));
  return m;
}

}  // namespace

TEST_CASE("construction rejects non-prime moduli") {
  CHECK_THROWS_AS(MatrixFp(4, 2, 2), std::invalid_argument);
  CHECK_THROWS_AS(MatrixFp(1, 1, 1), std::invalid_argument);
}

TEST_CASE("identity matrix has full rank and trivial nullspace") {
  const MatrixFp id = MatrixFp::identity(5, 3);
  CHECK(rref(id).rank == 3);
  CHECK(nullspace(id).cols() == 0);
  CHECK(id.is_invertible());
}

TEST_CASE("all-ones 2x2 over F_2") {
  const MatrixFp ones = MatrixFp::from_rows(2, {{1, 1}, {1, 1}});
  CHECK(rref(ones).rank == 1);
  const MatrixFp ns = nullspace(ones);
  REQUIRE(ns.cols() == 1);
  CHECK(ns.at(0, 0) == 1);
  CHECK(ns.at(1, 0) == 1);
}

TEST_CASE("swap minus identity over F_3 has the fixed line as nullspace") {
  const MatrixFp m = MatrixFp::from_rows(3, {{2, 1}, {1, 2}});  // swap - id mod 3
  CHECK(rref(m).rank == 1);
  const MatrixFp ns = nullspace(m);
  REQUIRE(ns.cols() == 1);
  CHECK(ns.at(0, 0) == ns.at(1, 0));
  CHECK(ns.at(0, 0) != 0);
}

TEST_CASE("modular inverse") {
  CHECK(inv_mod(2, 3) == 2);
  CHECK(inv_mod(3, 7) == 5);
  for (uint32_t a = 1; a < 13; ++a) CHECK(a * inv_mod(a, 13) % 13 == 1);
  CHECK_THROWS_AS(inv_mod(0, 5), std::invalid_argument);
}

TEST_CASE("rref is idempotent and rank respects transposition") {
  Rng rng(2024);
  for (int trial = 0; trial < 60; ++trial) {
    const uint32_t p = trial % 2 == 0 ? 2 : 5;
    const MatrixFp m = random_matrix(p, 1 + rng.below(5), 1 + rng.below(5), rng);
    const Rref red = rref(m);
    CHECK(rref(red.matrix).matrix == red.matrix);
    CHECK(red.rank == rref(m.transposed()).rank);
    CHECK(red.rank + nullspace(m).cols() == m.cols());
    CHECK(image(m).cols() == red.rank);
  }
}

TEST_CASE("solve finds a preimage exactly when one exists") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const uint32_t p = 3;
    const MatrixFp m = random_matrix(p, 1 + rng.below(4), 1 + rng.below(4), rng);
    std::vector<uint32_t> x(m.cols());
    for (auto& v : x) v = static_cast<uint32_t>(rng.below(3));
    // b in the column space by construction
    std::vector<uint32_t> b(m.rows(), 0);
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) b[r] = (b[r] + m.at(r, c) * x[c]) % p;
    const auto solved = solve(m, b);
    REQUIRE(solved.has_value());
    for (int r = 0; r < m.rows(); ++r) {
      uint32_t acc = 0;
      for (int c = 0; c < m.cols(); ++c) acc = (acc + m.at(r, c) * (*solved)[c]) % p;
      CHECK(acc == b[r]);
    }
  }
  // and an inconsistent system is refused
  const MatrixFp zero(3, 2, 2);
  CHECK_FALSE(solve(zero, {1, 0}).has_value());
}

TEST_CASE("nullspace vectors really solve m x = 0") {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const MatrixFp m = random_matrix(7, 1 + rng.below(5), 1 + rng.below(5), rng);
    const MatrixFp ns = nullspace(m);
    CHECK((m * ns).is_zero());
  }
}
