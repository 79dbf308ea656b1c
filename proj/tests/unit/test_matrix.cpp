#include <doctest.h>

#include "surfkernel/matrix.hpp"

using namespace surfkernel;

TEST_CASE("integer matrices") {
  IntMatrix m(3, 3);
  const std::int64_t vals[] = {2, -1, 0, 1, 3, 4, 0, 5, -2};
  for (int i = 0; i < 9; ++i) m(i / 3, i % 3) = vals[i];
  CHECK(m.determinant() == -54);
  CHECK(m.trace() == 3);
  CHECK(m.rank() == 3);
  CHECK(IntMatrix::identity(3) * m == m);
  CHECK(m.power(0) == IntMatrix::identity(3));
  CHECK(m.power(2) == m * m);
  CHECK((m - m).rank() == 0);

  // super-permutation block of size 4 has order 5 and determinant 1
  IntMatrix s(4, 4);
  for (int i = 0; i < 3; ++i) s(i, i + 1) = 1;
  for (int j = 0; j < 4; ++j) s(3, j) = -1;
  CHECK(s.determinant() == 1);
  CHECK(s.power(5) == IntMatrix::identity(4));
  CHECK(s.power(1) != IntMatrix::identity(4));
  CHECK(s.to_text() == "0 1 0 0\n0 0 1 0\n0 0 0 1\n-1 -1 -1 -1\n");
}
