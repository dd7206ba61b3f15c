#pragma once

// Q-categories, Q-functors and distributors over a finite quantaloid.
//
// Hom direction: hom(y, x) is an arrow t(x) -> t(y) of the base, so that
// hom(z, y) ∘ hom(y, x) <= hom(z, x) type-checks in the base.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/order.hpp"
#include "qlab/quantaloid.hpp"

namespace qlab {

/// Unvalidated category tables; `hom[y * n + x]` holds hom(y, x).
struct CategoryData {
  QuantaloidPtr base;
  std::string name;
  std::vector<std::string> objects;
  std::vector<ObjId> types;
  std::vector<Elem> hom;
};

class QCategory {
 public:
  const Quantaloid& base() const noexcept { return *d_.base; }
  const QuantaloidPtr& base_ptr() const noexcept { return d_.base; }
  const std::string& name() const noexcept { return d_.name; }
  std::size_t size() const noexcept { return d_.objects.size(); }
  const std::string& object(std::size_t i) const { return d_.objects.at(i); }
  const std::vector<std::string>& objects() const noexcept { return d_.objects; }
  std::optional<std::size_t> find(std::string_view name) const;
  ObjId type(std::size_t i) const { return d_.types[i]; }

  /// hom(y, x), an element of base hom(t x, t y).
  Elem hom(std::size_t y, std::size_t x) const { return d_.hom[y * size() + x]; }
  QArrow hom_arrow(std::size_t y, std::size_t x) const { return {type(x), type(y), hom(y, x)}; }
  /// Underlying order: same type and 1 <= hom(y, x).
  bool leq(std::size_t y, std::size_t x) const;
  bool isomorphic(std::size_t a, std::size_t b) const { return leq(a, b) && leq(b, a); }
  /// Objects of type X in index order.
  std::vector<std::size_t> objects_of_type(ObjId x) const;

  const CategoryData& data() const noexcept { return d_; }
  bool operator==(const QCategory& other) const;

 private:
  friend QCategory validate_category(CategoryData data);
  explicit QCategory(CategoryData data) : d_(std::move(data)) {}
  CategoryData d_;
};

using CategoryPtr = std::shared_ptr<const QCategory>;

/// Throws TypeMismatch, IdentityBelowUnit(x) or CompositionFails(z, y, x).
QCategory validate_category(CategoryData data);

struct QFunctor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<std::size_t> map;

  std::size_t operator()(std::size_t a) const { return map[a]; }
};

/// Throws TypeNotPreserved(a) or FunctorInequalityFails(a', a).
QFunctor validate_functor(CategoryPtr source, CategoryPtr target, std::vector<std::size_t> map);
QFunctor identity_functor(CategoryPtr c);
/// Checks the functor axioms without throwing.
bool is_functor(const QCategory& source, const QCategory& target,
                const std::vector<std::size_t>& map);

/// A distributor source ⇸ target; `table[b * |source| + a]` holds Φ(b, a) in hom(t a, t b).
struct Distributor {
  CategoryPtr source;
  CategoryPtr target;
  std::vector<Elem> table;

  Elem operator()(std::size_t b, std::size_t a) const { return table[b * source->size() + a]; }
};

/// Throws TypeMismatch or ActionAxiomFails(side, ...).
Distributor validate_distributor(CategoryPtr source, CategoryPtr target, std::vector<Elem> table);
Distributor identity_distributor(CategoryPtr c);
/// (ψ∘φ)(c, a) = ⋁_b ψ(c, b)∘φ(b, a).
Distributor dist_compose(const Distributor& psi, const Distributor& phi);
/// [ψ, θ](b, a) = ⋀_c [ψ(c, b), θ(c, a)] for ψ: B ⇸ C and θ: A ⇸ C.
Distributor dist_residual(const Distributor& psi, const Distributor& theta);

struct Fiber {
  ObjId type = 0;
  std::vector<std::size_t> members;
  std::shared_ptr<const FinitePreorder> order;
};

struct FiberSet {
  std::vector<Fiber> fibers;  // one per base object
  bool skeletal = true;
};

FiberSet fibers(const QCategory& c);
Fiber fiber(const QCategory& c, ObjId x);

/// *_Y: a single object `*` of type Y with hom 1_Y.
QCategory one_object(QuantaloidPtr base, ObjId y);
/// Free Q(X,X)-category on a preorder: hom 1_X where a' <= a, 0 otherwise.
QCategory free_fiber(QuantaloidPtr base, const FinitePreorder& order, ObjId x);
/// P Y: objects are the arrows f: X -> Y (type X), hom(f', f) = [f', f].
QCategory presheaf_category(QuantaloidPtr base, ObjId y);
/// P†X: objects are the arrows f: X -> Y (type Y), hom(f', f) = {f, f'}.
QCategory copresheaf_category(QuantaloidPtr base, ObjId x);
/// Name of the object f: X -> Y in P Y ("X.f") and in P†X ("Y.f").
std::string presheaf_object_name(const Quantaloid& base, ObjId x, ObjId y, Elem f);
std::string copresheaf_object_name(const Quantaloid& base, ObjId x, ObjId y, Elem f);
/// Transposed homs over the opposite base.
QCategory opposite(const QCategory& c, QuantaloidPtr opposite_base);
QCategory opposite(const QCategory& c);

/// Default 10^6, overridden by the QLAB_CAP environment variable.
std::size_t enumeration_cap();

/// All presheaves *_X ⇸ c in lexicographic order (object index, then element index).
std::vector<Distributor> enumerate_presheaves(const CategoryPtr& c, ObjId x,
                                              std::size_t cap = enumeration_cap());

}  // namespace qlab
