#pragma once

// Tensors, cotensors, conical colimits, fiber suprema, weighted colimits,
// completeness predicates and enriched adjunctions.

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qlab/error.hpp"
#include "qlab/qcategory.hpp"

namespace qlab {

/// Every object satisfying a universal property; members are mutually isomorphic.
struct WitnessSet {
  std::vector<std::size_t> members;  // ascending

  bool empty() const noexcept { return members.empty(); }
  /// Lowest-index member.
  std::size_t representative() const { return members.front(); }
  bool contains(std::size_t i) const;
  bool operator==(const WitnessSet&) const = default;
};

/// y ⊗ f for f: X -> t y: objects w of type X with hom(w, z) = [f, hom(y, z)] for all z.
WitnessSet tensor(const QCategory& c, std::size_t y, const QArrow& f);
/// <f, x> for f: t x -> Y: objects w of type Y with hom(z, w) = {f, hom(z, x)} for all z.
WitnessSet cotensor(const QCategory& c, const QArrow& f, std::size_t x);
/// Objects w of type X with hom(w, z) = ⋀_i hom(c_i, z) for all z.
WitnessSet conical_colimit(const QCategory& c, ObjId type, std::span<const std::size_t> family);
/// Least upper bounds of the family in the fiber of type X.
WitnessSet fiber_supremum(const QCategory& c, ObjId type, std::span<const std::size_t> family);

struct WeightedColimit {
  /// Per object a of the weight's source, via hom(w, -) = ⋀_b [Φ(b, a), hom(F b, -)].
  std::vector<WitnessSet> general;
  /// Conical colimit of the tensors F b ⊗ Φ(b, a), where all of them exist.
  std::vector<std::optional<WitnessSet>> via_conical;
  /// Fiber supremum of the same tensors.
  std::vector<std::optional<WitnessSet>> via_supremum;
};

/// Colimit of F: B -> C weighted by Φ: A ⇸ B. The tensor-then-conical route is always
/// required to match the general criterion; with `target_cocomplete` the
/// tensor-then-supremum route must match too. Disagreement is a logic_error.
WeightedColimit weighted_colimit(const Distributor& weight, const QFunctor& functor,
                                 bool target_cocomplete = false);

/// First (y, f) without a tensor, or nullopt when c is tensored.
std::optional<std::pair<std::size_t, QArrow>> missing_tensor(const QCategory& c);
/// First (f, x) without a cotensor.
std::optional<std::pair<QArrow, std::size_t>> missing_cotensor(const QCategory& c);
bool is_tensored(const QCategory& c);
bool is_cotensored(const QCategory& c);

/// Calls `visit(type, family)` for every subset of every fiber; throws
/// EnumerationCapExceeded when a fiber has more than `cap` subsets. Stops when visit
/// returns false.
template <class Visit>
void for_each_fiber_subset(const QCategory& c, std::size_t cap, Visit&& visit);

struct CompletenessReport {
  bool tensored = false;
  bool cotensored = false;
  bool conically_cocomplete = false;
  bool order_cocomplete = false;
  bool cocomplete = false;
  /// Flag name -> human-readable failure witness.
  std::map<std::string, std::string> witnesses;
};

CompletenessReport completeness_report(const CategoryPtr& c, std::size_t cap = enumeration_cap());
/// Presheaf-weighted colimits of the identity only.
bool is_cocomplete(const CategoryPtr& c, std::size_t cap = enumeration_cap());

struct AdjunctionCheck {
  bool holds = false;
  std::vector<std::string> witnesses;
};

/// F ⊣ G iff a <= G F a and F G b <= b; cross-checked against B(F a, b) = A(a, G b).
AdjunctionCheck check_adjunction(const QFunctor& left, const QFunctor& right);

/// First (y, f) with F(y ⊗ f) not isomorphic to F y ⊗ f, among tensors existing in the source.
std::optional<std::pair<std::size_t, QArrow>> tensor_preservation_failure(const QFunctor& f);
bool preserves_tensors(const QFunctor& f);
/// F(sup S) is a supremum of F(S) for every subset S of a fiber with a supremum.
bool preserves_fiber_suprema(const QFunctor& f, std::size_t cap = enumeration_cap());

/// Right adjoint of F: A -> B for tensored A; throws SourceNotTensored,
/// TensorsNotPreserved or NoFiberAdjoint.
QFunctor synthesize_right_adjoint(const QFunctor& f);

// ---------------------------------------------------------------------------

template <class Visit>
void for_each_fiber_subset(const QCategory& c, std::size_t cap, Visit&& visit) {
  for (ObjId x = 0; x < c.base().size(); ++x) {
    const auto members = c.objects_of_type(x);
    if (members.size() >= 63 || (std::size_t{1} << members.size()) > cap)
      throw Error(ErrorKind::EnumerationCapExceeded, {"fiber " + c.base().object(x)});
    std::vector<std::size_t> family;
    for (std::size_t mask = 0; mask < (std::size_t{1} << members.size()); ++mask) {
      family.clear();
      for (std::size_t i = 0; i < members.size(); ++i)
        if (mask >> i & 1) family.push_back(members[i]);
      if (!visit(x, std::span<const std::size_t>(family))) return;
    }
  }
}

}  // namespace qlab
