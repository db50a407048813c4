#include "doctest.h"

#include "toy/phase_space.hpp"
#include "toy/random.hpp"

using namespace toy;

namespace {
const Field<Zp> z2{2};
const Field<Zp> z3{3};
const Field<Zp> z5{5};
const RationalField qf;
}  // namespace

TEST_CASE("poisson bracket") {
  CHECK(poisson_bracket(make_vector(z3, {1, 0}), make_vector(z3, {0, 1})) == z3(1));
  CHECK(poisson_bracket(make_vector(z3, {0, 1}), make_vector(z3, {1, 0})) == z3(-1));
  const auto f = make_vector(qf, {3, 2, -1, 5});
  CHECK(is_zero(poisson_bracket(f, f)));
  CHECK(is_zero(poisson_bracket(make_vector(z2, {1, 0, 1, 0}), make_vector(z2, {0, 1, 0, 1}))));
  CHECK_THROWS_AS(poisson_bracket(make_vector(z2, {1, 0}), make_vector(z2, {1, 0, 0, 0})), Error);

  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto a = random_vector(z5, 4, rng), b = random_vector(z5, 4, rng), c = random_vector(z5, 4, rng);
    const auto x = random_element(z5, rng);
    CHECK(poisson_bracket(a, b) == -poisson_bracket(b, a));
    CHECK(poisson_bracket(Vec<Zp>(x * a + c), b) == x * poisson_bracket(a, b) + poisson_bracket(c, b));
  }
}

TEST_CASE("J matrix") {
  CHECK(j_matrix(qf, 1) == make_matrix(qf, {{0, 1}, {-1, 0}}));
  CHECK(bind(qf, Mat<Rational>(j_matrix(qf, 1) * j_matrix(qf, 1))) == make_matrix(qf, {{-1, 0}, {0, -1}}));
  const auto j = j_matrix(z5, 2);
  CHECK(bind(z5, Mat<Zp>(j.transpose())) == bind(z5, Mat<Zp>(-j)));
  Rng rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto f = random_vector(z5, 4, rng), g = random_vector(z5, 4, rng);
    CHECK(z5.bind(Mat<Zp>(f.transpose() * j * g)(0, 0)) == poisson_bracket(f, g));
    CHECK(apply_j<Zp>(g) == bind_vector(z5, Vec<Zp>(j * g)));
  }
}

TEST_CASE("isotropy") {
  CHECK(is_isotropic(Subspace<Zp>::span(z2, 4, {make_vector(z2, {1, 0, 1, 0}), make_vector(z2, {0, 1, 0, 1})})));
  CHECK_FALSE(is_isotropic(Subspace<Zp>::full(z3, 2)));
  CHECK(is_isotropic(Subspace<Zp>(z3, 4)));
  CHECK_THROWS_AS(is_isotropic(Subspace<Zp>(z3, 3)), Error);
}

TEST_CASE("maximal isotropic dimension is n") {
  for (Index n = 1; n <= 2; ++n) {
    bool any = false;
    for_each_subspace(z2, 2 * n, n + 1, [&](const Subspace<Zp>& s) { any = any || is_isotropic(s); });
    CHECK_FALSE(any);
    bool some_max = false;
    for_each_subspace(z2, 2 * n, n, [&](const Subspace<Zp>& s) { some_max = some_max || is_isotropic(s); });
    CHECK(some_max);
  }
  Rng rng(8);
  for (int i = 0; i < 300; ++i) CHECK_FALSE(is_isotropic(random_subspace(z3, 4, 3, rng)));
}

TEST_CASE("commutant") {
  const auto p1 = Subspace<Zp>::span(z3, 2, {make_vector(z3, {0, 1})});
  const auto q1 = Subspace<Zp>::span(z3, 2, {make_vector(z3, {1, 0})});
  CHECK(commutant_within(p1, q1).is_zero());

  const auto bell = Subspace<Zp>::span(z2, 4, {make_vector(z2, {1, 0, 1, 0}), make_vector(z2, {0, 1, 0, 1})});
  const auto pb = Subspace<Zp>::span(z2, 4, {make_vector(z2, {0, 0, 0, 1})});
  CHECK(commutant_within(bell, pb) == Subspace<Zp>::span(z2, 4, {make_vector(z2, {0, 1, 0, 1})}));

  const auto space = make_space(z3, 3);
  Rng rng(9);
  for (int i = 0; i < 200; ++i) {
    const auto v = random_isotropic(space, 3, rng);
    const auto vpi = random_isotropic(space, 2, rng);
    const auto c = commutant_within(v, vpi);
    CHECK(is_subspace_of(c, v));
    CHECK(is_isotropic(c));
    for (Index a = 0; a < c.dim(); ++a)
      for (Index b = 0; b < vpi.dim(); ++b) CHECK(is_zero(poisson_bracket(c.basis().row(a), vpi.basis().row(b))));
    // a measured subspace inside V commutes with all of V
    Subspace<Zp> inner = Subspace<Zp>::span(z3, 6, {v.generator(0)});
    CHECK(is_subspace_of(inner, commutant_within(v, inner)));
  }
}
