#include "doctest.h"

#include "toy/grid.hpp"
#include "toy/measurement.hpp"
#include "toy/random.hpp"
#include "toy/states.hpp"

using namespace toy;

namespace {
const Field<Zp> z2{2};
const Field<Zp> z3{3};
const RationalField qf;

EpistemicState<Zp> bit(const char* name) { return named_state(z2, name); }

EpistemicState<Zp> bell() {
  return make_state(make_space(z2, 2), {make_vector(z2, {1, 0, 1, 0}), make_vector(z2, {0, 1, 0, 1})},
                    zero_vector(z2, 4));
}

std::vector<std::uint64_t> boxes(const OnticSupport& s) {
  std::vector<std::uint64_t> out;
  for (auto c : s.members) out.push_back(c + 1);
  return out;
}
}  // namespace

TEST_CASE("make_state") {
  const auto s0 = bit("0");
  CHECK(s0.knowledge_bits() == 1);
  CHECK(boxes(ontic_support(s0)) == std::vector<std::uint64_t>{1, 2});
  CHECK(boxes(ontic_support(bit("1"))) == std::vector<std::uint64_t>{3, 4});
  CHECK(boxes(ontic_support(bit("+"))) == std::vector<std::uint64_t>{1, 3});
  CHECK(boxes(ontic_support(bit("-"))) == std::vector<std::uint64_t>{2, 4});
  CHECK(boxes(ontic_support(bit("i"))) == std::vector<std::uint64_t>{1, 4});
  CHECK(boxes(ontic_support(bit("-i"))) == std::vector<std::uint64_t>{2, 3});

  try {
    make_state(make_space(z2, 1), {make_vector(z2, {1, 0}), make_vector(z2, {0, 1})}, zero_vector(z2, 2));
    FAIL("expected NotIsotropic");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotIsotropic);
  }
  CHECK_THROWS_AS(make_state(make_space(z2, 1), {make_vector(z2, {1, 0, 0, 0})}, zero_vector(z2, 2)), Error);

  const auto c = make_state(make_space(qf, 1), {make_vector(qf, {2, -1})}, make_vector(qf, {3, 1}));
  CHECK(c.knowledge_bits() == 1);
  CHECK(c.known().generator(0) == Vec<Rational>((Vec<Rational>(2) << Rational(1), Rational(-1, 2)).finished()));
  CHECK(c.value(0) == Rational(5, 2));  // (1,-1/2)·(3,1); the unscaled 2q - p has value 5
}

TEST_CASE("knowledge bits and support sizes") {
  const auto mix = maximally_mixed(make_space(z2, 1));
  CHECK(mix.knowledge_bits() == 0);
  CHECK(ontic_support(mix).size() == 4);
  CHECK(ontic_support(bit("0")).size() == 2);
  CHECK(bell().knowledge_bits() == 2);
  CHECK(ontic_support(bell()).size() == 4);

  for (Index n = 1; n <= 2; ++n)
    for_each_state(make_space(z2, n), [&](const EpistemicState<Zp>& s) {
      CHECK(ontic_support(s).size() == (std::size_t{1} << (2 * n - s.knowledge_bits())));
    });
  Rng rng(2);
  for (auto p : {3u, 5u}) {
    const auto space = make_space(Field<Zp>{p}, 2);
    for (int i = 0; i < 50; ++i) {
      const auto s = random_state(space, rng);
      std::size_t expect = 1;
      for (Index k = 0; k < 4 - s.knowledge_bits(); ++k) expect *= p;
      CHECK(ontic_support(s).size() == expect);
    }
  }
}

TEST_CASE("tensor") {
  const auto t = tensor(bit("1"), bit("0"));
  CHECK(t.known() == Subspace<Zp>::span(z2, 4, {make_vector(z2, {1, 0, 0, 0}), make_vector(z2, {0, 0, 1, 0})}));
  CHECK(t.value(0) == z2(1));
  CHECK(t.value(1) == z2(0));

  const auto m = tensor(bit("+"), maximally_mixed(make_space(z2, 1)));
  CHECK(m.knowledge_bits() == 1);
  CHECK(m.known().generator(0) == make_vector(z2, {0, 1, 0, 0}));

  const auto a = make_state(make_space(qf, 1), {make_vector(qf, {2, -1})}, make_vector(qf, {3, 1}));
  const auto b = make_state(make_space(qf, 1), {make_vector(qf, {1, 0})}, make_vector(qf, {10, 0}));
  const auto ab = tensor(a, b);
  const auto expected = make_state(make_space(qf, 2), {make_vector(qf, {2, -1, 0, 0}), make_vector(qf, {0, 0, 1, 0})},
                                   make_vector(qf, {3, 1, 10, 0}));
  CHECK(ab == expected);
  CHECK_THROWS_AS(tensor(bit("0"), named_state(z3, "0")), Error);
}

TEST_CASE("marginal") {
  CHECK(marginal(tensor(bit("+"), bit("0")), {1}) == bit("0"));
  CHECK(marginal(tensor(bit("+"), bit("0")), {0}) == bit("+"));
  const auto mix = maximally_mixed(make_space(z2, 1));
  CHECK(marginal(bell(), {0}) == mix);
  CHECK(marginal(bell(), {1}) == mix);
  CHECK_THROWS_AS(marginal(bell(), {2}), Error);
  CHECK_THROWS_AS(marginal(bell(), {}), Error);
  CHECK_THROWS_AS(marginal(bell(), {0, 0}), Error);

  const auto space = make_space(z2, 2);
  for_each_state(space, [&](const EpistemicState<Zp>& s) {
    for (Index k = 0; k < 2; ++k) {
      const auto m = marginal(s, {k});
      CHECK(ontic_support(m) == project(ontic_support(s), {k}));
      if (s.is_pure()) CHECK((m.is_pure() || m.knowledge_bits() == 0));
    }
  });
  Rng rng(12);
  const auto space3 = make_space(z3, 3);
  for (int i = 0; i < 40; ++i) {
    const auto s = random_state(space3, rng);
    CHECK(ontic_support(marginal(s, {0, 2})) == project(ontic_support(s), {0, 2}));
  }
}

TEST_CASE("states_equal") {
  const auto b = bell();
  const auto sup = ontic_support(b);
  for (std::size_t i = 0; i < sup.size(); ++i)
    CHECK(states_equal(b, EpistemicState<Zp>(b.space(), b.known(), sup.vector(i))));
  CHECK_FALSE(states_equal(bit("0"), bit("1")));
  CHECK_FALSE(states_equal(bit("+"), bit("0")));
}

TEST_CASE("mixtures and validity") {
  const std::vector<EpistemicState<Zp>> zero_one{bit("0"), bit("1")};
  const auto full = mixture_support(std::span<const EpistemicState<Zp>>(zero_one));
  CHECK(full.size() == 4);
  CHECK(*is_valid_support(full) == maximally_mixed(make_space(z2, 1)));
  const std::vector<EpistemicState<Zp>> twice{bit("+"), bit("+")};
  CHECK(mixture_support(std::span<const EpistemicState<Zp>>(twice)) == ontic_support(bit("+")));

  const std::vector<EpistemicState<Zp>> bad{bit("0"), bit("+")};
  const auto three = mixture_support(std::span<const EpistemicState<Zp>>(bad));
  CHECK(boxes(three) == std::vector<std::uint64_t>{1, 2, 3});
  CHECK_FALSE(is_valid_support(three).has_value());

  const auto space2 = make_space(z2, 2);
  CHECK(*is_valid_support(ontic_support(maximally_mixed(space2))) == maximally_mixed(space2));

  for (Index n = 1; n <= 2; ++n) {
    const auto space = make_space(z2, n);
    // every subspace + valuation: make_state succeeds iff the explicit coset is a valid support
    for (Index k = 0; k <= 2 * n; ++k)
      for_each_subspace(z2, 2 * n, k, [&](const Subspace<Zp>& w) {
        for_each_vector(z2, 2 * n, [&](const Vec<Zp>& v) {
          std::optional<EpistemicState<Zp>> made;
          try {
            made.emplace(space, w, v);
          } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::NotIsotropic);
          }
          const auto sup = enumerate(space, Coset<Zp>(orthogonal_complement(w), v));
          const auto valid = is_valid_support(sup);
          CHECK(made.has_value() == valid.has_value());
          if (made && valid) CHECK(states_equal(*made, *valid));
        });
      });
  }
}

TEST_CASE("enumeration cap") {
  const auto big = maximally_mixed(make_space(z3, 6));  // 3^12 > 65536
  try {
    ontic_support(big);
    FAIL("expected CapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
  CHECK(ontic_support(big, 600000).size() == 531441);
}

TEST_CASE("grids") {
  CHECK(render_grid(bit("+")).to_text() == "# . # .\n");
  CHECK(render_grid(bit("0")).to_text() == "# # . .\n");
  CHECK(render_grid(maximally_mixed(make_space(z2, 1))).count() == 4);
  const auto g = render_grid(bell());
  CHECK(g.count() == 4);
  // rows are A boxes 4,3,2,1; Bell support pairs box k of A with box k of B: the anti-diagonal
  CHECK(g.to_text() == ". . . #\n. . # .\n. # . .\n# . . .\n");
  CHECK(render_grid(tensor(bit("0"), bit("0"))).to_text() == ". . . .\n. . . .\n# # . .\n# # . .\n");
  CHECK_THROWS_AS(render_grid(named_state(z3, "0")), Error);

  const auto m = local_q(make_space(z2, 1), 0);
  std::vector<OnticSupport> parts;
  for (const auto& o : outcomes(m)) parts.push_back(enumerate(m.space(), o.cell()));
  CHECK(render_partition(parts, ontic_support(bit("+"))).to_text() == "# .|# .\n");
}
