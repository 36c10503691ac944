#include "doctest.h"

#include "fc/infsup.hpp"

using namespace fc;

namespace {

Mesh shifted_two_block(int n, double scale, const Vec3& shift) {
  std::vector<double> c[3];
  for (int d = 0; d < 3; ++d) {
    for (int i = 0; i <= n; ++i) c[d].push_back(shift(d) + scale * i / n);
  }
  return build_structured_grid(CellKind::Hex8, c[0], c[1], c[2],
                               {PlaneSpec{0, shift(0) + 0.5 * scale, {}}});
}

}  // namespace

TEST_CASE("enriched pair keeps a mesh-independent inf-sup constant") {
  const std::vector<InfsupRow> rows = infsup_study(4);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].n == 2);
  CHECK(rows[3].n == 16);
  double lo = rows[0].beta_enriched, hi = lo;
  for (const InfsupRow& r : rows) {
    lo = std::min(lo, r.beta_enriched);
    hi = std::max(hi, r.beta_enriched);
    CHECK(r.beta_enriched > r.beta_unenriched);
  }
  CHECK(hi / lo <= 2.0);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].beta_unenriched < rows[i - 1].beta_unenriched);
  }
}

TEST_CASE("inf-sup estimate is invariant under translation and scaling") {
  const double ref = estimate_infsup(two_block_mesh(4), true);
  CHECK(estimate_infsup(shifted_two_block(4, 1.0, Vec3(3, -2, 7)), true) ==
        doctest::Approx(ref).epsilon(1e-8));
  CHECK(estimate_infsup(shifted_two_block(4, 250.0, Vec3::Zero()), true) ==
        doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("inf-sup needs fault faces") {
  CHECK_THROWS_AS(estimate_infsup(build_structured_hex_grid(Vec3(1, 1, 1), {2, 2, 2}), true),
                  Error);
  CHECK_THROWS_AS(two_block_mesh(3), Error);
  CHECK(infsup_csv(infsup_study(1)).rfind("n,h,beta_enriched,beta_unenriched\n", 0) == 0);
}
