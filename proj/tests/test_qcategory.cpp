#include <doctest.h>

#include "qlab/error.hpp"
#include "qlab/instances.hpp"
#include "qlab/qcategory.hpp"

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

CategoryData two_objects(std::vector<Elem> hom) {
  return {builtin_quantaloid("q2"), "two", {"a", "b"}, {0, 0}, std::move(hom)};
}

// Every table of the right shape that passes validation.
std::vector<Distributor> all_distributors(const CategoryPtr& source, const CategoryPtr& target) {
  const auto& q = source->base();
  std::vector<std::size_t> limits;
  for (std::size_t b = 0; b < target->size(); ++b)
    for (std::size_t a = 0; a < source->size(); ++a) limits.push_back(q.hom(source->type(a), target->type(b)).size());
  std::vector<Distributor> out;
  std::vector<Elem> table(limits.size(), 0);
  while (true) {
    try {
      out.push_back(validate_distributor(source, target, table));
    } catch (const Error&) {
    }
    std::size_t i = table.size();
    while (i > 0 && ++table[i - 1] == limits[i - 1]) table[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

bool leq(const Distributor& a, const Distributor& b) {
  const auto& q = a.source->base();
  for (std::size_t j = 0; j < a.target->size(); ++j)
    for (std::size_t i = 0; i < a.source->size(); ++i)
      if (!q.hom(a.source->type(i), a.target->type(j)).leq(a(j, i), b(j, i))) return false;
  return true;
}

}  // namespace

TEST_CASE("category axioms") {
  CHECK(kind_of([] { validate_category(two_objects({0, 0, 0, 1})); }) == ErrorKind::IdentityBelowUnit);
  auto bad = CategoryData{builtin_quantaloid("q2"), "three", {"a", "b", "c"}, {0, 0, 0}, {1, 1, 0, 0, 1, 1, 0, 0, 1}};
  CHECK(kind_of([&] { validate_category(bad); }) == ErrorKind::CompositionFails);
  const auto ok = validate_category(two_objects({1, 1, 0, 1}));
  CHECK(ok.leq(0, 1));
  CHECK_FALSE(ok.leq(1, 0));
}

TEST_CASE("fibers follow the type assignment") {
  const auto c = builtin_category("zero@qrel3");
  const auto fs = fibers(*c);
  REQUIRE(fs.fibers.size() == 3);
  for (ObjId x = 0; x < 3; ++x) CHECK(fs.fibers[x].members == std::vector<std::size_t>{x});
  CHECK(fs.skeletal);
}

TEST_CASE("presheaf categories have one object per arrow into the representing object") {
  const auto q = builtin_quantaloid("qrel3");
  const auto p1 = presheaf_category(q, 2);
  CHECK(p1.size() == 6);
  CHECK(p1.objects_of_type(1).size() == 2);
  const auto pd1 = copresheaf_category(q, 2);
  CHECK(pd1.size() == 6);
  CHECK(presheaf_object_name(*q, 1, 2, 1) == "u.u");
  // hom(f', f) = [f', f]: in P1 the object 1.u sits below 1.1.
  CHECK(p1.leq(*p1.find("1.u"), *p1.find("1.1")));
  CHECK_FALSE(p1.leq(*p1.find("1.1"), *p1.find("1.u")));
}

TEST_CASE("presheaves on a chain are its down-sets") {
  const auto c = builtin_category("chain3@q2");
  CHECK(enumerate_presheaves(c, 0).size() == 4);
  CHECK_THROWS_AS(enumerate_presheaves(c, 0, 2), Error);
}

TEST_CASE("functor validation") {
  const auto c = builtin_category("chain3@q2");
  CHECK(kind_of([&] { validate_functor(c, c, {2, 0, 2}); }) == ErrorKind::FunctorInequalityFails);
  const auto zero = builtin_category("zero@qrel3");
  CHECK(kind_of([&] { validate_functor(zero, zero, {1, 1, 2}); }) == ErrorKind::TypeNotPreserved);
  CHECK(all_functors(*c, *c).size() == 10);
}

TEST_CASE("identity distributors are units for composition") {
  const auto c = builtin_category("chain3@q2");
  const auto star = std::make_shared<const QCategory>(one_object(c->base_ptr(), 0));
  for (const auto& phi : all_distributors(star, c)) {
    CHECK(dist_compose(identity_distributor(c), phi).table == phi.table);
    CHECK(dist_compose(phi, identity_distributor(star)).table == phi.table);
  }
}

TEST_CASE("distributor residual is right adjoint to composition") {
  const auto c = builtin_category("chain3@q2");
  const auto star = std::make_shared<const QCategory>(one_object(c->base_ptr(), 0));
  const auto phis = all_distributors(star, c);
  const auto psis = all_distributors(c, star);
  const auto thetas = all_distributors(star, star);
  CHECK(phis.size() == 4);
  CHECK(psis.size() == 4);
  for (const auto& psi : psis)
    for (const auto& theta : thetas) {
      const auto r = dist_residual(psi, theta);
      for (const auto& phi : phis) CHECK(leq(dist_compose(psi, phi), theta) == leq(phi, r));
    }
}

TEST_CASE("opposite category is an involution") {
  for (const auto& name : builtin_category_names()) {
    const auto& c = *builtin_category(name);
    const auto op = opposite(c);
    CHECK(opposite(op, c.base_ptr()) == c);
  }
}

TEST_CASE("sweep names resolve to the enumeration") {
  const auto cats = all_categories(builtin_quantaloid("q3"), 2);
  CHECK(cats.size() == 11);
  for (const auto& c : cats) CHECK(*builtin_category(c.name()) == c);
  CHECK(builtin_category("sweep999@q3") == nullptr);
}
