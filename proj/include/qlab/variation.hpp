#pragma once

// Order-valued pseudofunctors on Q^op, lax transformations, right Q-modules and
// quantale actions, with the translations to and from Q-categories.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "qlab/completion.hpp"
#include "qlab/order.hpp"
#include "qlab/qcategory.hpp"
#include "qlab/quantaloid.hpp"

namespace qlab {

/// Arrow-indexed tables: `actions[x * n + y][f]` is the map F(Y) -> F(X) for f in hom(X, Y).
using ArrowActions = std::vector<std::vector<std::vector<Elem>>>;

struct Pseudofunctor2 {
  QuantaloidPtr base;
  std::string name;
  std::vector<FinitePreorder> fibers;
  ArrowActions actions;

  const std::vector<Elem>& action(ObjId x, ObjId y, Elem f) const {
    return actions[x * base->size() + y][f];
  }
  Elem apply(ObjId x, ObjId y, Elem f, Elem e) const { return action(x, y, f)[e]; }
};

struct PseudofunctorReport {
  bool valid = false;
  bool closed = false;
  /// First failure: law name followed by the offending data.
  std::vector<std::string> witnesses;
};

/// Throws PartialTable when tables are not total; axiom failures are reported as flags.
PseudofunctorReport validate_pseudofunctor(const Pseudofunctor2& p);
/// Throws InvalidPseudofunctor or NotClosed.
void require_closed(const Pseudofunctor2& p);

/// F_C(f) = - ⊗ f on fibers; throws NotTensored(y, f).
Pseudofunctor2 category_to_pseudofunctor(const QCategory& c);
/// C^F with hom(y, x) = ⋁{f : F f(y) <= x}. Objects are ordered fiber by fiber.
QCategory pseudofunctor_to_category(const Pseudofunctor2& p);

struct LaxNat {
  Pseudofunctor2 source;
  Pseudofunctor2 target;
  /// components[X][i] is the image of element i of source fiber X.
  std::vector<std::vector<Elem>> components;
};

/// Monotone components and lax squares F' f ∘ φ_Y <= φ_X ∘ F f; empty witnesses when valid.
std::vector<std::string> lax_failure(const LaxNat& t);
/// Components x ↦ F x; throws NotTensored. The lax squares are asserted.
LaxNat functor_to_laxnat(const QFunctor& f);

struct PseudofunctorLevels {
  bool closed_into_cat_tensor2 = false;
  bool maps_level = false;
  bool cocont_level = false;
  bool skeletal_level = false;
};

PseudofunctorLevels classify_pseudofunctor(const Pseudofunctor2& p);

struct TransformationFlags {
  bool pseudonatural = false;
  bool bottom_preserving_components = false;
  bool left_adjoint_components = false;
  bool sup_morphism_components = false;
};

TransformationFlags classify_transformation(const LaxNat& t, std::size_t cap = enumeration_cap());

/// Componentwise order isomorphisms commuting with the arrow actions up to equivalence.
std::vector<std::string> pseudofunctor_iso_failure(const Pseudofunctor2& a, const Pseudofunctor2& b,
                                                   const std::vector<std::vector<Elem>>& maps);
/// Type-preserving object bijection with hom(y, x) = hom(m y, m x).
std::vector<std::string> category_iso_failure(const QCategory& a, const QCategory& b,
                                              const std::vector<std::size_t>& map);

struct QModule {
  QuantaloidPtr base;
  std::string name;
  std::vector<FiniteSupLattice> fibers;
  ArrowActions actions;

  const std::vector<Elem>& action(ObjId x, ObjId y, Elem f) const {
    return actions[x * base->size() + y][f];
  }
  Elem apply(ObjId x, ObjId y, Elem f, Elem e) const { return action(x, y, f)[e]; }
  bool operator==(const QModule&) const = default;
};

/// Throws PartialTable, or ModuleLawFails(law, ...) with law one of
/// "sup-morphism", "unit", "composition", "local-sup".
void validate_module(const QModule& m);
Pseudofunctor2 module_to_pseudofunctor(const QModule& m);
QCategory module_to_category(const QModule& m);
/// Throws NotSkeletal or NotCocomplete.
QModule category_to_module(const QCategory& c, std::size_t cap = enumeration_cap());

struct RoundTrip {
  bool isomorphic = false;
  std::vector<std::string> witnesses;
};

/// C -> F_C -> C^{F_C}, compared through the fiberwise index bijection.
RoundTrip category_roundtrip(const QCategory& c);
/// F -> C^F -> F_{C^F}.
RoundTrip pseudofunctor_roundtrip(const Pseudofunctor2& p);
/// M -> C^M -> module again; also requires strict equality of the arrow actions.
RoundTrip module_roundtrip(const QModule& m);
/// C -> M_C -> C^{M_C}.
RoundTrip skeletal_category_roundtrip(const QCategory& c, std::size_t cap = enumeration_cap());

struct QuantaleAction {
  QuantaloidPtr quantale;
  std::string name;
  FiniteSupLattice carrier;
  /// act[m * |K| + f]
  std::vector<Elem> act;

  Elem operator()(Elem m, Elem f) const { return act[m * quantale->hom(0, 0).size() + f]; }
  bool operator==(const QuantaleAction&) const = default;
};

/// Throws NotOneObject, PartialTable, or ActionLawFails(law, ...) with law one of
/// "unit", "associativity", "join-carrier", "join-quantale".
void validate_action(const QuantaleAction& a);
QModule action_to_module(const QuantaleAction& a);
/// Throws NotOneObject.
QuantaleAction module_to_action(const QModule& m);

/// Sup-morphism components with α_X ∘ M(f) = N(f) ∘ α_Y; empty when it is a module morphism.
std::vector<std::string> module_morphism_failure(const QModule& m, const QModule& n,
                                                 const std::vector<std::vector<Elem>>& alpha);
/// Join-preserving and α(act(m, f)) = act'(α(m), f).
std::vector<std::string> action_morphism_failure(const QuantaleAction& a, const QuantaleAction& b,
                                                 const std::vector<Elem>& alpha);

}  // namespace qlab
