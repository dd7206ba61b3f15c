#include <doctest.h>

#include <algorithm>

#include "qlab/error.hpp"
#include "qlab/instances.hpp"
#include "qlab/order.hpp"

using namespace qlab;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidInput;
}

FinitePreorder diamond() {
  const std::pair<Elem, Elem> covers[] = {{0, 1}, {0, 2}, {1, 3}, {2, 3}};
  return FinitePreorder::closure({"0", "p", "q", "1"}, covers);
}

// Brute-force join: the least upper bound found by scanning all elements.
std::optional<Elem> scan_join(const FinitePreorder& o, const std::vector<Elem>& subset) {
  std::optional<Elem> best;
  for (Elem u = 0; u < o.size(); ++u) {
    if (!std::all_of(subset.begin(), subset.end(), [&](Elem s) { return o.leq(s, u); })) continue;
    bool least = true;
    for (Elem v = 0; v < o.size(); ++v)
      if (std::all_of(subset.begin(), subset.end(), [&](Elem s) { return o.leq(s, v); }) && !o.leq(u, v))
        least = false;
    if (least && !best) best = u;
  }
  return best;
}

}  // namespace

TEST_CASE("validate_preorder reports the violated axiom") {
  CHECK(kind_of([] { validate_preorder({{"a", "b"}, {{"a", "a"}}}); }) == ErrorKind::MissingReflexivity);
  CHECK(kind_of([] {
          validate_preorder({{"a", "b", "c"}, {{"a", "a"}, {"b", "b"}, {"c", "c"}, {"a", "b"}, {"b", "c"}}});
        }) == ErrorKind::BrokenTransitivity);
  const auto ok = validate_preorder({{"a", "b"}, {{"a", "a"}, {"b", "b"}, {"a", "b"}}});
  CHECK(ok.leq(0, 1));
  CHECK_FALSE(ok.leq(1, 0));
}

TEST_CASE("sup-lattice validation") {
  CHECK(kind_of([] { FiniteSupLattice(FinitePreorder::closure({"a", "b"}, {})); }) == ErrorKind::NoJoin);
  CHECK(kind_of([] { FiniteSupLattice(FinitePreorder::closure({}, {})); }) == ErrorKind::EmptyLattice);
  const std::pair<Elem, Elem> loop[] = {{0, 1}, {1, 0}};
  CHECK(kind_of([&] { FiniteSupLattice(FinitePreorder::closure({"a", "b"}, loop)); }) ==
        ErrorKind::NotAntisymmetric);
}

TEST_CASE("diamond joins and meets") {
  const FiniteSupLattice d(diamond());
  CHECK(d.bottom() == 0);
  CHECK(d.top() == 3);
  CHECK(d.join(1, 2) == 3);
  CHECK(d.meet(1, 2) == 0);
  CHECK(d.join(std::vector<Elem>{}) == 0);
  CHECK(d.meet(std::vector<Elem>{}) == 3);
}

TEST_CASE("joins agree with a brute-force scan on every lattice with at most 4 elements") {
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& l : all_lattices(n))
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        std::vector<Elem> subset;
        for (Elem i = 0; i < n; ++i)
          if (mask >> i & 1) subset.push_back(i);
        REQUIRE(scan_join(l.order(), subset).has_value());
        CHECK(l.join(subset) == *scan_join(l.order(), subset));
      }
}

TEST_CASE("preorder and lattice counts match the known sequences") {
  // Labelled preorders: 1, 1, 4, 29, 355.
  CHECK(all_preorders(0).size() == 1);
  CHECK(all_preorders(1).size() == 1);
  CHECK(all_preorders(2).size() == 4);
  CHECK(all_preorders(3).size() == 29);
  CHECK(all_preorders(4).size() == 355);
  // Labelled lattices: n! chains, plus 12 labelled diamonds for n = 4.
  CHECK(all_lattices(1).size() == 1);
  CHECK(all_lattices(2).size() == 2);
  CHECK(all_lattices(3).size() == 6);
  CHECK(all_lattices(4).size() == 36);
}

TEST_CASE("preorders with equivalent elements have suprema classes") {
  const std::pair<Elem, Elem> gens[] = {{0, 1}, {1, 0}, {0, 2}};
  const auto o = FinitePreorder::closure({"a", "b", "c"}, gens);
  CHECK_FALSE(o.is_antisymmetric());
  CHECK(o.suprema({}) == std::vector<Elem>{0, 1});
  CHECK(o.has_bottom());
  CHECK(o.has_top());
  CHECK(o.is_complete());
  CHECK(FinitePreorder::closure(o.names(), o.generators()) == o);
}

TEST_CASE("right adjoint of a join-preserving map") {
  const FiniteSupLattice d(diamond());
  // Collapse onto the chain 0 < 1 via "above p".
  const FiniteSupLattice two(FinitePreorder::chain({"0", "1"}));
  const std::vector<Elem> f = {0, 1, 0, 1};
  const auto adj = right_adjoint(d, two, f);
  CHECK(adj.right.table == std::vector<Elem>{2, 3});
  CHECK(is_order_adjunction(adj.left, adj.right));
}

TEST_CASE("non-join-preserving maps are rejected with the failing subset") {
  const FiniteSupLattice d(diamond());
  const FiniteSupLattice two(FinitePreorder::chain({"0", "1"}));
  // Sends only the top to 1: p v q is not preserved.
  const std::vector<Elem> f = {0, 0, 0, 1};
  const auto check = is_sup_morphism(d, two, f);
  CHECK_FALSE(check.ok);
  CHECK(check.witness == std::vector<Elem>{1, 2});
  CHECK(kind_of([&] { right_adjoint(d, two, f); }) == ErrorKind::NotSupPreserving);
  const std::vector<Elem> not_strict = {1, 1, 1, 1};
  CHECK(is_sup_morphism(d, two, not_strict).witness.empty());
}

TEST_CASE("monotonicity is enforced") {
  auto chain = std::make_shared<const FinitePreorder>(FinitePreorder::chain({"0", "1"}));
  CHECK(kind_of([&] { make_monotone(chain, chain, {1, 0}); }) == ErrorKind::NotMonotone);
  CHECK(all_monotone_maps(*chain, *chain).size() == 3);
}

TEST_CASE("find_right_adjoint on preorders") {
  auto chain = std::make_shared<const FinitePreorder>(FinitePreorder::chain({"0", "1", "2"}));
  // Constant top has no right adjoint (nothing below 0 is sent below 0).
  CHECK_FALSE(find_right_adjoint({chain, chain, {2, 2, 2}}).has_value());
  const auto r = find_right_adjoint({chain, chain, {0, 0, 2}});
  REQUIRE(r.has_value());
  CHECK(r->table == std::vector<Elem>{1, 1, 2});
}
