#include <doctest.h>

#include "qlab/error.hpp"
#include "qlab/instances.hpp"
#include "qlab/variation.hpp"

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

Pseudofunctor2 identity_on_zero() {
  auto p = category_to_pseudofunctor(*builtin_category("chain3@q2"));
  p.actions[0][0] = {0, 1, 2};
  return p;
}

}  // namespace

TEST_CASE("the pseudofunctor of a chain tensors with 0 to the bottom") {
  const auto p = category_to_pseudofunctor(*builtin_category("chain3@q2"));
  CHECK(p.action(0, 0, 0) == std::vector<Elem>{0, 0, 0});
  CHECK(p.action(0, 0, 1) == std::vector<Elem>{0, 1, 2});
  const auto v = validate_pseudofunctor(p);
  CHECK(v.valid);
  CHECK(v.closed);
  CHECK(pseudofunctor_to_category(p) == *builtin_category("chain3@q2"));
}

TEST_CASE("category homs of a pseudofunctor are joins of the arrows that fit") {
  for (const char* base : {"q2", "q3"}) {
    for (const auto& p : all_pseudofunctors(builtin_quantaloid(base), 3)) {
      if (!validate_pseudofunctor(p).closed) continue;
      const auto c = pseudofunctor_to_category(p);
      const auto& hom = p.base->hom(0, 0);
      for (Elem y = 0; y < c.size(); ++y)
        for (Elem x = 0; x < c.size(); ++x) {
          Elem join = hom.bottom();
          for (Elem f = 0; f < hom.size(); ++f)
            if (p.fibers[0].leq(p.apply(0, 0, f, y), x)) join = hom.join(join, f);
          CHECK(c.hom(y, x) == join);
        }
    }
  }
}

TEST_CASE("non-closed pseudofunctors are rejected") {
  const auto p = identity_on_zero();
  const auto v = validate_pseudofunctor(p);
  CHECK(v.valid);
  CHECK_FALSE(v.closed);
  CHECK(kind_of([&] { pseudofunctor_to_category(p); }) == ErrorKind::NotClosed);
  auto broken = p;
  broken.actions[0][1] = {0, 0, 2};
  CHECK_FALSE(validate_pseudofunctor(broken).valid);
  CHECK(kind_of([&] { require_closed(broken); }) == ErrorKind::InvalidPseudofunctor);
}

TEST_CASE("untensored categories have no pseudofunctor") {
  CHECK(kind_of([] { category_to_pseudofunctor(*builtin_category("zero@qrel3")); }) == ErrorKind::NotTensored);
}

TEST_CASE("levels of the bundled categories") {
  const auto l = classify_pseudofunctor(category_to_pseudofunctor(*builtin_category("p1@qrel3")));
  CHECK(l.closed_into_cat_tensor2);
  CHECK(l.maps_level);
  CHECK(l.cocont_level);
  CHECK(l.skeletal_level);
  // Two isomorphic objects and nothing else: tensored and cocomplete, not skeletal.
  const auto q2 = builtin_quantaloid("q2");
  const std::pair<Elem, Elem> loop[] = {{0, 1}, {1, 0}};
  const auto c = order_category(q2, FinitePreorder::closure({"a", "b"}, loop), "pair");
  const auto lp = classify_pseudofunctor(category_to_pseudofunctor(c));
  CHECK(lp.cocont_level);
  CHECK_FALSE(lp.skeletal_level);
  CHECK(kind_of([&] { category_to_module(c); }) == ErrorKind::NotSkeletal);
}

TEST_CASE("transformations induced by functors") {
  const auto c = builtin_category("chain3@q2");
  const auto raise = classify_transformation(functor_to_laxnat(validate_functor(c, c, {0, 2, 2})));
  CHECK(raise.pseudonatural);
  CHECK(raise.left_adjoint_components);
  CHECK(raise.sup_morphism_components);
  const auto lift = classify_transformation(functor_to_laxnat(validate_functor(c, c, {1, 1, 2})));
  CHECK_FALSE(lift.pseudonatural);
  CHECK_FALSE(lift.bottom_preserving_components);
  auto t = functor_to_laxnat(identity_functor(c));
  t.components[0] = {2, 1, 0};
  CHECK_FALSE(lax_failure(t).empty());
}

TEST_CASE("module round trips") {
  const auto m = category_to_module(*builtin_category("p1@qrel3"));
  CHECK_NOTHROW(validate_module(m));
  CHECK(module_roundtrip(m).isomorphic);
  CHECK(skeletal_category_roundtrip(*builtin_category("p1@qrel3")).isomorphic);
  CHECK(kind_of([&] { module_to_action(m); }) == ErrorKind::NotOneObject);
  CHECK(kind_of([] { category_to_module(*builtin_category("zero@qrel3")); }) == ErrorKind::NotCocomplete);
}

TEST_CASE("module law failures") {
  auto m = category_to_module(*builtin_category("chain3@q2"));
  m.actions[0][1] = {0, 0, 2};
  CHECK(kind_of([&] { validate_module(m); }) == ErrorKind::ModuleLawFails);
}

TEST_CASE("actions and one-object modules are the same data") {
  for (const char* base : {"q2", "q3"}) {
    const auto actions = all_actions(builtin_quantaloid(base), 3);
    CHECK_FALSE(actions.empty());
    for (const auto& a : actions) {
      const auto m = action_to_module(a);
      CHECK_NOTHROW(validate_module(m));
      CHECK(module_to_action(m) == a);
    }
  }
}

TEST_CASE("action law failures") {
  const auto q3 = builtin_quantaloid("q3");
  QuantaleAction a{q3, "bad", q3->hom(0, 0), {}};
  for (Elem m = 0; m < 3; ++m)
    for (Elem f = 0; f < 3; ++f) a.act.push_back(0);
  CHECK(kind_of([&] { validate_action(a); }) == ErrorKind::ActionLawFails);
  QuantaleAction partial{q3, "partial", q3->hom(0, 0), {0}};
  CHECK(kind_of([&] { validate_action(partial); }) == ErrorKind::PartialTable);
  QuantaleAction wrong_base{builtin_quantaloid("qrel3"), "wrong", q3->hom(0, 0), {}};
  CHECK(kind_of([&] { validate_action(wrong_base); }) == ErrorKind::NotOneObject);
}

TEST_CASE("module morphisms and action morphisms agree") {
  const auto actions = all_actions(builtin_quantaloid("q3"), 2);
  for (const auto& a : actions)
    for (const auto& b : actions) {
      const auto ma = action_to_module(a);
      const auto mb = action_to_module(b);
      for (const auto& alpha : all_monotone_maps(a.carrier.order(), b.carrier.order()))
        CHECK(module_morphism_failure(ma, mb, {alpha}).empty() == action_morphism_failure(a, b, alpha).empty());
    }
}
