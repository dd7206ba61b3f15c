#include <doctest.h>

#include "qlab/completion.hpp"
#include "qlab/error.hpp"
#include "qlab/instances.hpp"

using namespace qlab;

namespace {

std::size_t obj(const QCategory& c, const std::string& name) {
  const auto i = c.find(name);
  REQUIRE_MESSAGE(i.has_value(), name);
  return *i;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("tensors in presheaves on 1 are compositions") {
  const auto& p = *builtin_category("p1@qrel3");
  const auto& q = p.base();
  const ObjId one = *q.find_object("1");
  for (ObjId x = 0; x < q.size(); ++x)
    for (Elem g = 0; g < q.hom(x, one).size(); ++g)
      for (ObjId w = 0; w < q.size(); ++w)
        for (Elem f = 0; f < q.hom(w, x).size(); ++f) {
          const auto t = tensor(p, obj(p, presheaf_object_name(q, x, one, g)), QArrow{w, x, f});
          const auto expected = obj(p, presheaf_object_name(q, w, one, q.compose(w, x, one, g, f)));
          CHECK(t.members == std::vector<std::size_t>{expected});
        }
}

TEST_CASE("cotensors in copresheaves on 1 are compositions") {
  const auto& p = *builtin_category("pd1@qrel3");
  const auto& q = p.base();
  const ObjId one = *q.find_object("1");
  for (ObjId y = 0; y < q.size(); ++y)
    for (Elem f = 0; f < q.hom(one, y).size(); ++f)
      for (ObjId z = 0; z < q.size(); ++z)
        for (Elem k = 0; k < q.hom(y, z).size(); ++k) {
          const auto t = cotensor(p, QArrow{y, z, k}, obj(p, copresheaf_object_name(q, one, y, f)));
          const auto expected = obj(p, copresheaf_object_name(q, one, z, q.compose(one, y, z, k, f)));
          CHECK(t.members == std::vector<std::size_t>{expected});
        }
}

TEST_CASE("the zero category is order-cocomplete but not conically cocomplete") {
  const auto r = completeness_report(builtin_category("zero@qrel3"));
  CHECK(r.order_cocomplete);
  CHECK_FALSE(r.conically_cocomplete);
  CHECK_FALSE(r.tensored);
  CHECK_FALSE(r.cotensored);
  CHECK_FALSE(r.cocomplete);
  CHECK(r.witnesses.at("conically_cocomplete") == "type u family {}");
}

TEST_CASE("presheaves on 1 form a cocomplete category") {
  for (const char* name : {"p1@qrel3", "pd1@qrel3", "chain3@q2"}) {
    CAPTURE(name);
    const auto r = completeness_report(builtin_category(name));
    CHECK(r.tensored);
    CHECK(r.cotensored);
    CHECK(r.conically_cocomplete);
    CHECK(r.order_cocomplete);
    CHECK(r.cocomplete);
    CHECK(r.witnesses.empty());
  }
}

TEST_CASE("tensoring with zero gives the bottom") {
  const auto& c = *builtin_category("chain3@q2");
  CHECK(tensor(c, obj(c, "m"), QArrow{0, 0, 0}).members == std::vector<std::size_t>{obj(c, "bot")});
  CHECK(tensor(c, obj(c, "m"), QArrow{0, 0, 1}).members == std::vector<std::size_t>{obj(c, "m")});
  CHECK(cotensor(c, QArrow{0, 0, 0}, obj(c, "m")).members == std::vector<std::size_t>{obj(c, "top")});
}

TEST_CASE("a nonempty preorder over q2 is tensored exactly when it has a bottom") {
  const auto q2 = builtin_quantaloid("q2");
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& order : all_preorders(n)) {
      const auto c = order_category(q2, order, "p");
      CHECK(is_tensored(c) == order.has_bottom());
    }
}

TEST_CASE("conical colimits and suprema") {
  const auto& c = *builtin_category("chain3@q2");
  const std::size_t family[] = {obj(c, "bot"), obj(c, "m")};
  CHECK(conical_colimit(c, 0, family).members == std::vector<std::size_t>{obj(c, "m")});
  CHECK(fiber_supremum(c, 0, family).members == std::vector<std::size_t>{obj(c, "m")});
  CHECK(conical_colimit(c, 0, {}).members == std::vector<std::size_t>{obj(c, "bot")});
  const auto& z = *builtin_category("zero@qrel3");
  CHECK(conical_colimit(z, 1, {}).empty());
  CHECK(fiber_supremum(z, 1, {}).members == std::vector<std::size_t>{obj(z, "0_u")});
  CHECK(kind_of([&] {
          const std::size_t wrong[] = {obj(z, "0_0")};
          conical_colimit(z, 1, wrong);
        }) == ErrorKind::TypeMismatch);
}

TEST_CASE("weighted colimit of a down-set is its supremum") {
  const auto c = builtin_category("chain3@q2");
  const auto id = identity_functor(c);
  const auto presheaves = enumerate_presheaves(c, 0);
  for (const auto& phi : presheaves) {
    std::vector<std::size_t> downset;
    for (std::size_t b = 0; b < c->size(); ++b)
      if (phi(b, 0) == 1) downset.push_back(b);
    const auto w = weighted_colimit(phi, id, true);
    CHECK(w.general[0] == fiber_supremum(*c, 0, downset));
  }
}

TEST_CASE("adjoint synthesis") {
  const auto c = builtin_category("chain3@q2");
  const auto raise = validate_functor(c, c, {0, 2, 2});
  const auto g = synthesize_right_adjoint(raise);
  CHECK(g.map == std::vector<std::size_t>{0, 0, 2});
  CHECK(check_adjunction(raise, g).holds);
  const auto lift_bottom = validate_functor(c, c, {1, 1, 2});
  CHECK(kind_of([&] { synthesize_right_adjoint(lift_bottom); }) == ErrorKind::TensorsNotPreserved);
  const auto z = builtin_category("zero@qrel3");
  CHECK(kind_of([&] { synthesize_right_adjoint(identity_functor(z)); }) == ErrorKind::SourceNotTensored);
}

TEST_CASE("adjunction failures carry a unit or counit witness") {
  const auto c = builtin_category("chain3@q2");
  const auto id = identity_functor(c);
  const auto bottom = validate_functor(c, c, {0, 0, 0});
  const auto a = check_adjunction(id, bottom);
  CHECK_FALSE(a.holds);
  CHECK(a.witnesses == std::vector<std::string>{"unit", "m"});
}

TEST_CASE("tensor preservation") {
  const auto c = builtin_category("chain3@q2");
  CHECK(preserves_tensors(identity_functor(c)));
  const auto top = validate_functor(c, c, {2, 2, 2});
  const auto failure = tensor_preservation_failure(top);
  REQUIRE(failure.has_value());
  CHECK(failure->first == 0);
  CHECK(failure->second == QArrow{0, 0, 0});
  CHECK(preserves_fiber_suprema(validate_functor(c, c, {0, 2, 2})));
}
