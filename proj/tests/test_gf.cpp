#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "hsurf/gf.hpp"

using namespace hsurf;

namespace {

// Independent polynomial arithmetic oracle: multiply two residue classes by
// hand, reducing against the context modulus over F_p.
uint32_t oracle_mul(const FieldCtx& F, uint32_t x, uint32_t y) {
  const uint32_t p = F.p(), d = F.degree();
  std::vector<uint32_t> a(d, 0), b(d, 0), prod(2 * d, 0);
  for (uint32_t i = 0; i < d; ++i, x /= p) a[i] = x % p;
  for (uint32_t i = 0; i < d; ++i, y /= p) b[i] = y % p;
  for (uint32_t i = 0; i < d; ++i)
    for (uint32_t j = 0; j < d; ++j) prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
  const auto mod = F.modulus();
  for (int i = 2 * d - 1; i >= static_cast<int>(d); --i) {
    uint32_t c = prod[i];
    if (c == 0) continue;
    for (uint32_t j = 0; j <= d; ++j)
      prod[i - d + j] = (prod[i - d + j] + p - c * mod[j] % p) % p;
  }
  uint32_t out = 0;
  for (int i = d - 1; i >= 0; --i) out = out * p + prod[i];
  return out;
}

}  // namespace

TEST_CASE("field construction at the working sizes") {
  FieldCtx f4(2, 1, FieldLevel::quadratic);
  CHECK(f4.size() == 4);
  CHECK(f4.q() == 2);
  // x^2 + x + 1 is the only (hence least) irreducible quadratic over F_2.
  CHECK(f4.modulus()[0] == 1);
  CHECK(f4.modulus()[1] == 1);
  CHECK(f4.modulus()[2] == 1);

  FieldCtx f9(3, 1, FieldLevel::quadratic);
  CHECK(f9.size() == 9);
  CHECK(f9.q() == 3);

  FieldCtx f16(2, 2, FieldLevel::quadratic);
  CHECK(f16.size() == 16);
  CHECK(f16.q() == 4);
  // The multiplicative group has order q^2 - 1 = 15: every nonzero element
  // has order dividing 15 and some element attains it.
  bool full_order_seen = false;
  for (uint32_t x = 1; x < f16.size(); ++x) {
    CHECK(f16.pow(x, 15) == 1);
    full_order_seen = full_order_seen || (f16.pow(x, 3) != 1 && f16.pow(x, 5) != 1);
  }
  CHECK(full_order_seen);
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_WITH_AS(FieldCtx(4, 1, FieldLevel::quadratic), doctest::Contains("NonPrime"),
                       Error);
  CHECK_THROWS_WITH_AS(FieldCtx(1, 1, FieldLevel::quadratic), doctest::Contains("NonPrime"),
                       Error);
  CHECK_THROWS_AS(FieldCtx(2, 0, FieldLevel::quadratic), std::invalid_argument);
  // 2^26 elements exceeds the default table cap.
  CHECK_THROWS_WITH_AS(FieldCtx(2, 13, FieldLevel::quadratic), doctest::Contains("TooLarge"),
                       Error);
}

TEST_CASE("arithmetic in F_4 against the minimal polynomial") {
  FieldCtx F(2, 1, FieldLevel::quadratic);
  FieldElem w = F.gen();  // w^2 = w + 1
  FieldElem w2 = w * w;
  CHECK(w2 == F.elem(3));
  CHECK(w * w2 == F.one());   // w^3 = 1
  CHECK(inv(w) == w2);
  CHECK(F.one() + F.one() == F.zero());
  FieldCtx f16(2, 2, FieldLevel::quadratic);
  CHECK(f16.one() + f16.one() == f16.zero());
}

TEST_CASE("division by zero raises") {
  FieldCtx F(2, 1, FieldLevel::quadratic);
  CHECK_THROWS_WITH_AS(inv(F.zero()), doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("field axioms, exhaustively at q <= 4") {
  for (auto [p, a] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2}}) {
    FieldCtx F(p, a, FieldLevel::quadratic);
    const uint32_t n = F.size();
    for (uint32_t x = 0; x < n; ++x) {
      CHECK(F.add(x, F.neg(x)) == 0);
      CHECK(F.mul(x, 1) == x);
      if (x != 0) CHECK(F.mul(x, F.inv(x)) == 1);
      for (uint32_t y = 0; y < n; ++y) {
        CHECK(F.add(x, y) == F.add(y, x));
        CHECK(F.mul(x, y) == F.mul(y, x));
        for (uint32_t z = 0; z < std::min(n, x + y + 2); ++z) {
          CHECK(F.mul(x, F.add(y, z)) == F.add(F.mul(x, y), F.mul(x, z)));
          CHECK(F.mul(x, F.mul(y, z)) == F.mul(F.mul(x, y), z));
        }
      }
    }
  }
}

TEST_CASE("table multiplication agrees with polynomial multiplication") {
  SUBCASE("exhaustive through q = 4") {
    for (auto [p, a] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2}}) {
      FieldCtx F(p, a, FieldLevel::quadratic);
      for (uint32_t x = 0; x < F.size(); ++x)
        for (uint32_t y = 0; y < F.size(); ++y) CHECK(F.mul(x, y) == oracle_mul(F, x, y));
    }
  }
  SUBCASE("sampled at q = 5") {
    FieldCtx F(5, 1, FieldLevel::quadratic);
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100'000; ++i) {
      uint32_t x = rng() % F.size(), y = rng() % F.size();
      CHECK(F.mul(x, y) == oracle_mul(F, x, y));
    }
  }
}

TEST_CASE("pow is square-and-multiply over repeated products") {
  FieldCtx F(3, 1, FieldLevel::quadratic);
  for (uint32_t x = 0; x < F.size(); ++x) {
    uint32_t acc = 1;
    for (uint64_t e = 0; e < 20; ++e) {
      CHECK(F.pow(x, e) == acc);
      acc = F.mul(acc, x);
    }
  }
}

TEST_CASE("Frobenius: examples, homomorphism, involution") {
  FieldCtx F(2, 1, FieldLevel::quadratic);
  CHECK(frob_q(F.zero()) == F.zero());
  CHECK(frob_q(F.gen()) == F.gen() * F.gen());  // w -> w^2

  for (auto [p, a] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2}}) {
    FieldCtx G(p, a, FieldLevel::quadratic);
    for (uint32_t x = 0; x < G.size(); ++x) {
      CHECK(G.frob_q(G.frob_q(x)) == x);  // involution on F_{q^2}
      for (uint32_t y = 0; y < G.size(); ++y) {
        CHECK(G.frob_q(G.add(x, y)) == G.add(G.frob_q(x), G.frob_q(y)));
        CHECK(G.frob_q(G.mul(x, y)) == G.mul(G.frob_q(x), G.frob_q(y)));
      }
    }
    // Fixed set = the embedded base field, of size q.
    uint64_t fixed = 0;
    for (uint32_t x = 0; x < G.size(); ++x)
      if (G.in_base(x)) ++fixed;
    CHECK(fixed == G.q());
    CHECK(G.base_field().size() == G.q());
  }
}

TEST_CASE("trace-zero set V") {
  FieldCtx f4(2, 1, FieldLevel::quadratic);
  // char 2: the condition degenerates to x^q = x, so V = F_q = {0, 1}.
  CHECK(f4.trace_zero_set() == std::vector<uint32_t>{0, 1});

  for (auto [p, a] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    FieldCtx F(p, a, FieldLevel::quadratic);
    const auto& v = F.trace_zero_set();
    CHECK(v.size() == F.q());
    // Defining condition, recomputed.
    for (uint32_t x = 0; x < F.size(); ++x) {
      bool in_v = std::binary_search(v.begin(), v.end(), x);
      CHECK(in_v == (F.frob_q(x) == F.neg(x)));
    }
    // F_q-subspace: contains 0, closed under addition and F_q-scaling.
    CHECK(std::binary_search(v.begin(), v.end(), 0u));
    for (uint32_t x : v)
      for (uint32_t y : v) CHECK(std::binary_search(v.begin(), v.end(), F.add(x, y)));
    for (uint32_t x : v)
      for (uint32_t c : F.base_field())
        CHECK(std::binary_search(v.begin(), v.end(), F.mul(c, x)));
  }
}

TEST_CASE("solve_additive: kernel, fibers, partition") {
  for (auto [p, a] : {std::pair<uint32_t, uint32_t>{2, 1}, {3, 1}, {2, 2}}) {
    FieldCtx F(p, a, FieldLevel::quadratic);
    // c = 0: exactly the base field.
    auto sols = F.solve_additive(0);
    CHECK(std::vector<uint32_t>(sols.begin(), sols.end()) == F.base_field());
    // Nonzero c in V: q solutions, each satisfying the equation; c outside V: none.
    std::set<uint32_t> seen;
    for (uint32_t c = 0; c < F.size(); ++c) {
      auto s = F.solve_additive(c);
      const bool in_v = F.frob_q(c) == F.neg(c);
      CHECK(s.size() == (in_v ? F.q() : 0));
      for (uint32_t x : s) {
        CHECK(F.sub(F.frob_q(x), x) == c);
        CHECK(seen.insert(x).second);
      }
    }
    CHECK(seen.size() == F.size());  // fibers partition the field
  }
  // Explicit negative case: c = w in F_4 is outside V.
  FieldCtx f4(2, 1, FieldLevel::quadratic);
  CHECK(f4.solve_additive(f4.gen().v).empty());
}

TEST_CASE("quartic context and embedding") {
  FieldCtx quad(2, 1, FieldLevel::quadratic);
  FieldCtx quartic(2, 1, FieldLevel::quartic);
  CHECK(quartic.size() == 16);
  CHECK(quartic.q() == 2);

  const Embedding e = make_embedding(quad, quartic);
  // Ring homomorphism, exhaustively.
  for (uint32_t x = 0; x < quad.size(); ++x) {
    CHECK(quartic.in_quadratic(e.map[x]));
    for (uint32_t y = 0; y < quad.size(); ++y) {
      CHECK(e.map[quad.add(x, y)] == quartic.add(e.map[x], e.map[y]));
      CHECK(e.map[quad.mul(x, y)] == quartic.mul(e.map[x], e.map[y]));
    }
  }
  // The image is exactly the subfield fixed by x -> x^{q^2}.
  std::set<uint32_t> image(e.map.begin(), e.map.end());
  CHECK(image.size() == quad.size());
  for (uint32_t x = 0; x < quartic.size(); ++x)
    CHECK(quartic.in_quadratic(x) == (image.count(x) > 0));
  // x -> x^q has order 4 on F_{q^4}.
  bool order2 = true;
  for (uint32_t x = 0; x < quartic.size(); ++x)
    order2 = order2 && quartic.frob_q(quartic.frob_q(x)) == x;
  CHECK_FALSE(order2);

  FieldCtx quad9(3, 1, FieldLevel::quadratic);
  FieldCtx quartic81(3, 1, FieldLevel::quartic);
  const Embedding e9 = make_embedding(quad9, quartic81);
  for (uint32_t x = 0; x < quad9.size(); ++x)
    for (uint32_t y = 0; y < quad9.size(); ++y)
      CHECK(e9.map[quad9.mul(x, y)] == quartic81.mul(e9.map[x], e9.map[y]));
}

TEST_CASE("construction is deterministic") {
  FieldCtx a(3, 1, FieldLevel::quadratic);
  FieldCtx b(3, 1, FieldLevel::quadratic);
  CHECK(std::vector<uint32_t>(a.modulus().begin(), a.modulus().end()) ==
        std::vector<uint32_t>(b.modulus().begin(), b.modulus().end()));
  for (uint32_t x = 0; x < a.size(); ++x) {
    CHECK(a.frob_q(x) == b.frob_q(x));
    for (uint32_t y = 0; y < a.size(); ++y) CHECK(a.mul(x, y) == b.mul(x, y));
  }
}
