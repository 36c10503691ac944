#include "doctest.h"
#include "checks.hpp"
#include "test_util.hpp"

#include <cmath>

#include "fc/contact.hpp"

using namespace fc;

namespace {
constexpr double kDeg = 3.14159265358979323846 / 180.0;
}

TEST_CASE("projections") {
  CHECK(negative_part(-2.0) == -2.0);
  CHECK(negative_part(3.0) == 0.0);
  CHECK((ball_projection(Vec2(3, 4), 10.0) - Vec2(3, 4)).norm() == 0.0);
  CHECK((ball_projection(Vec2(3, 4), 1.0) - Vec2(0.6, 0.8)).norm() < 1e-15);
  CHECK(ball_projection(Vec2::Zero(), 0.0).norm() == 0.0);
  const FrictionParams f{2.0, 30.0 * kDeg};
  CHECK(tau_max(f, -3.0) == doctest::Approx(2.0 + 3.0 / std::sqrt(3.0)));
}

TEST_CASE("augmented update: stick, slip and open branches") {
  const PenaltyParams eps{10.0, 20.0};
  const FrictionParams f{0.0, 45.0 * kDeg};
  SUBCASE("stick keeps the trial traction") {
    const LocalUpdate u = augmented_update(Vec3(-5, 1, 0), Vec3(0.1, 0.05, 0.0), eps, f, false);
    CHECK(u.state == ContactState::Stick);
    CHECK(u.traction(0) == doctest::Approx(-4.0));
    CHECK(u.traction(1) == doctest::Approx(2.0));
    CHECK(u.tangent(0, 0) == doctest::Approx(10.0));
    CHECK(u.tangent(1, 1) == doctest::Approx(20.0));
    CHECK(u.tangent(1, 0) == 0.0);
  }
  SUBCASE("slip projects onto the Coulomb limit") {
    const LocalUpdate u = augmented_update(Vec3(-5, 0, 0), Vec3(0.1, 0.3, 0.4), eps, f, false);
    CHECK(u.state == ContactState::Slip);
    // trial shear (6, 8), limit tan45 * 4 = 4
    CHECK(u.traction(1) == doctest::Approx(2.4));
    CHECK(u.traction(2) == doctest::Approx(3.2));
    // normal coupling: d t_T / d g_N = -eps_N tan(theta) t*/|t*|
    CHECK(u.tangent(1, 0) == doctest::Approx(-10.0 * 0.6));
    CHECK(u.tangent(2, 0) == doctest::Approx(-10.0 * 0.8));
  }
  SUBCASE("opening releases every component") {
    const LocalUpdate u = augmented_update(Vec3(-1, 3, 3), Vec3(0.2, 0.0, 0.0), eps, f, false);
    CHECK(u.state == ContactState::Open);
    CHECK(u.traction.norm() == 0.0);
    CHECK(u.tangent.norm() == 0.0);
  }
  SUBCASE("symmetric variant limits with the old normal traction") {
    const LocalUpdate u = augmented_update(Vec3(-5, 0, 0), Vec3(0.1, 0.3, 0.4), eps, f, true);
    CHECK(u.state == ContactState::Slip);
    CHECK(u.traction.tail<2>().norm() == doctest::Approx(5.0));
    CHECK(u.tangent.block<2, 1>(1, 0).norm() == 0.0);
    CHECK((u.tangent.block<2, 2>(1, 1) - u.tangent.block<2, 2>(1, 1).transpose()).norm() < 1e-12);
  }
}

TEST_CASE("zero trial shear counts as stick") {
  const LocalUpdate u =
      augmented_update(Vec3(-1, 0, 0), Vec3::Zero(), {1.0, 1.0}, {0.0, 0.0}, false);
  CHECK(u.state == ContactState::Stick);
}

TEST_CASE("tangents match central differences at random states") {
  using checks::TangentCase;
  for (TangentCase c : {TangentCase::Open, TangentCase::Stick, TangentCase::Slip,
                        TangentCase::SlipSymmetric}) {
    for (int i = 0; i < 100; ++i) {
      const checks::TangentState s = checks::random_tangent_state(c, test::rng());
      const LocalUpdate u = augmented_update(s.t_old, s.jump, s.eps, s.f, s.symmetric);
      REQUIRE(u.state == checks::expected_state(c));
      CHECK(checks::tangent_fd_error(s) < 1e-6);
    }
  }
}

TEST_CASE("returned tractions are admissible") {
  for (int i = 0; i < 200; ++i) {
    const Vec3 t = test::random_vec3(-5, 5), g = test::random_vec3(-1, 1);
    const PenaltyParams eps{test::uniform(1, 50), test::uniform(1, 50)};
    const FrictionParams f{test::uniform(0, 1), test::uniform(0, 40) * kDeg};
    const LocalUpdate u = augmented_update(t, g, eps, f, false);
    CHECK(u.traction(0) <= 0.0);
    CHECK(u.traction.tail<2>().norm() <= tau_max(f, u.traction(0)) * (1 + 1e-14) + 1e-14);
  }
}

TEST_CASE("face jump operator: translations and bubble averages") {
  const Mesh m = build_structured_hex_grid(Vec3(2, 1, 1), {2, 1, 1}, {PlaneSpec{0, 1.0, {}}});
  REQUIRE(m.num_fault_faces() == 1);
  const FaultFace& f = m.fault_faces[0];
  const FaceJumpOperator op = face_jump_operator(m, 0, true);
  // bubble trace of a hex face: (1 - s^2)(1 - t^2) averages to 4/9
  CHECK(op.bubble_coef[0] == doctest::Approx(-4.0 / 9.0));
  CHECK(op.bubble_coef[1] == doctest::Approx(4.0 / 9.0));

  VecX u = VecX::Zero(3 * m.num_nodes()), ub = VecX::Zero(6);
  for (Index v = 0; v < m.num_nodes(); ++v) u.segment<3>(3 * v) = Vec3(1, 2, 3);
  CHECK(mean_jump(op, 0, u, ub).norm() < 1e-14);
  for (Index v : f.plus.nodes) u.segment<3>(3 * v) += Vec3(0.5, -1, 2);
  CHECK((mean_jump(op, 0, u, ub) - Vec3(0.5, -1, 2)).norm() < 1e-14);
  ub.segment<3>(3) = Vec3(9, 0, 0);
  CHECK(mean_jump(op, 0, u, ub)(0) == doctest::Approx(0.5 + 4.0));

  const FaceJumpOperator plain = face_jump_operator(m, 0, false);
  CHECK(plain.bubble_coef[0] == 0.0);
  CHECK(frame_matrix(f.frame).col(0) == f.frame.n);
}

TEST_CASE("tet face bubble trace averages to 1/60") {
  const Mesh m = build_structured_grid(CellKind::Tet4, {0, 1, 2}, {0, 1}, {0, 1},
                                       {PlaneSpec{0, 1.0, {}}});
  for (Index f = 0; f < m.num_fault_faces(); ++f) {
    const FaceJumpOperator op = face_jump_operator(m, f, true);
    CHECK(op.bubble_coef[1] == doctest::Approx(1.0 / 60.0));
    CHECK(op.bubble_coef[0] == doctest::Approx(-1.0 / 60.0));
  }
}
