#include <doctest.h>

#include "qlab/error.hpp"
#include "qlab/instances.hpp"
#include "qlab/quantaloid.hpp"

using namespace qlab;

namespace {

Elem elem(const Quantaloid& q, ObjId x, ObjId y, const char* name) { return *q.hom(x, y).find(name); }

}  // namespace

TEST_CASE("q2 is conjunction on {0, 1}") {
  const auto q = boolean2();
  CHECK(q.size() == 1);
  CHECK(q.identity(0) == 1);
  CHECK(q.compose(0, 0, 0, 1, 1) == 1);
  CHECK(q.compose(0, 0, 0, 1, 0) == 0);
  CHECK(q.lifting(0, 0, 0, 1, 0) == 0);
  CHECK(q.lifting(0, 0, 0, 0, 0) == 1);
  CHECK(q.extension(0, 0, 0, 1, 1) == 1);
}

TEST_CASE("q3 residuals are Goedel implication") {
  const auto q = builtin_quantaloid("q3");
  const Elem zero = 0, a = 1, one = 2;
  // [f, g] = 1 if f <= g else g.
  CHECK(q->lifting(0, 0, 0, a, zero) == zero);
  CHECK(q->lifting(0, 0, 0, a, a) == one);
  CHECK(q->lifting(0, 0, 0, one, a) == a);
  CHECK(q->extension(0, 0, 0, one, zero) == zero);
  CHECK(q->extension(0, 0, 0, zero, zero) == one);
}

TEST_CASE("qrel3 homs are down-sets of meets") {
  const auto q = builtin_quantaloid("qrel3");
  const ObjId o = 0, u = 1, one = 2;
  CHECK(q->hom(o, one).size() == 1);
  CHECK(q->hom(u, one).size() == 2);
  CHECK(q->hom(one, one).size() == 3);
  CHECK(q->identity(u) == elem(*q, u, u, "u"));
  CHECK(q->compose(u, one, u, elem(*q, one, u, "u"), elem(*q, u, one, "u")) == elem(*q, u, u, "u"));
  CHECK(q->compose(one, u, one, elem(*q, u, one, "u"), elem(*q, one, u, "u")) == elem(*q, one, one, "u"));
}

TEST_CASE("residuals are the largest arrows below the bound, for every bundled quantaloid") {
  for (const auto& name : builtin_quantaloid_names()) {
    const auto& q = *builtin_quantaloid(name);
    CAPTURE(name);
    for (ObjId x = 0; x < q.size(); ++x)
      for (ObjId y = 0; y < q.size(); ++y)
        for (ObjId z = 0; z < q.size(); ++z)
          for (Elem f = 0; f < q.hom(x, y).size(); ++f) {
            for (Elem g = 0; g < q.hom(z, y).size(); ++g) {
              const Elem l = q.lifting(x, y, z, f, g);
              CHECK(q.hom(z, y).leq(q.compose(z, x, y, f, l), g));
              for (Elem h = 0; h < q.hom(z, x).size(); ++h)
                if (q.hom(z, y).leq(q.compose(z, x, y, f, h), g)) CHECK(q.hom(z, x).leq(h, l));
            }
            for (Elem g = 0; g < q.hom(x, z).size(); ++g) {
              const Elem e = q.extension(x, y, z, f, g);
              CHECK(q.hom(x, z).leq(q.compose(x, y, z, e, f), g));
              for (Elem h = 0; h < q.hom(y, z).size(); ++h)
                if (q.hom(x, z).leq(q.compose(x, y, z, h, f), g)) CHECK(q.hom(y, z).leq(h, e));
            }
          }
  }
}

TEST_CASE("arrow names round-trip") {
  const auto q = builtin_quantaloid("qrel3");
  const QArrow f{1, 2, 1};
  CHECK(q->arrow_name(f) == "u->1:u");
  CHECK(q->parse_arrow("u->1:u") == f);
  CHECK_THROWS_AS(q->parse_arrow("u->1"), Error);
  CHECK_THROWS_AS(q->parse_arrow("u->x:0"), Error);
}

TEST_CASE("opposite is an involution and swaps the residuals") {
  for (const auto& name : builtin_quantaloid_names()) {
    const auto& q = *builtin_quantaloid(name);
    const auto op = opposite(q);
    CHECK(opposite(op) == q);
    for (ObjId x = 0; x < q.size(); ++x)
      for (ObjId y = 0; y < q.size(); ++y)
        for (ObjId z = 0; z < q.size(); ++z)
          for (Elem f = 0; f < q.hom(x, y).size(); ++f)
            for (Elem g = 0; g < q.hom(z, y).size(); ++g)
              // f: x->y, g: z->y in Q are f: y->x, g: y->z in Q^op.
              CHECK(q.lifting(x, y, z, f, g) == op.extension(y, x, z, f, g));
  }
}

TEST_CASE("free quantale on a monoid") {
  // Z/2 under addition: subsets of {e, s}.
  const auto q = free_on_monoid("z2", {"e", "s"}, {0, 1, 1, 0}, 0);
  CHECK(q.hom(0, 0).size() == 4);
  const Elem e = *q.hom(0, 0).find("e");
  const Elem s = *q.hom(0, 0).find("s");
  CHECK(q.identity(0) == e);
  CHECK(q.compose(0, 0, 0, s, s) == e);
}

TEST_CASE("composition type mismatch") {
  const auto q = builtin_quantaloid("qrel3");
  CHECK_THROWS_AS(q->compose(QArrow{1, 2, 0}, QArrow{1, 2, 0}), Error);
}
