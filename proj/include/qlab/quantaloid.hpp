#pragma once

// Finite quantaloids: hom sup-lattices, composition, identities and residuals.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/order.hpp"

namespace qlab {

/// Index of a quantaloid object.
using ObjId = std::size_t;

/// An element of hom(src, dst).
struct QArrow {
  ObjId src = 0;
  ObjId dst = 0;
  Elem value = 0;

  bool operator==(const QArrow&) const = default;
};

/// Unvalidated quantaloid tables. `homs[x * n + y]` is hom(x, y); the composition
/// table for the triple (x, y, z) lives at `compose[(x * n + y) * n + z]` and is indexed
/// by `g * |hom(x,y)| + f` for g in hom(y, z), f in hom(x, y), holding g∘f in hom(x, z).
struct QuantaloidData {
  std::string name;
  std::vector<std::string> objects;
  std::vector<FiniteSupLattice> homs;
  std::vector<std::vector<Elem>> compose;
  std::vector<Elem> identities;
};

enum class ResidualKind { lifting, extension };

class Quantaloid {
 public:
  const std::string& name() const noexcept { return d_.name; }
  std::size_t size() const noexcept { return d_.objects.size(); }
  const std::string& object(ObjId x) const { return d_.objects.at(x); }
  const std::vector<std::string>& objects() const noexcept { return d_.objects; }
  std::optional<ObjId> find_object(std::string_view name) const;

  const FiniteSupLattice& hom(ObjId x, ObjId y) const { return d_.homs[x * size() + y]; }
  /// g∘f for f in hom(x, y) and g in hom(y, z).
  Elem compose(ObjId x, ObjId y, ObjId z, Elem g, Elem f) const {
    return d_.compose[(x * size() + y) * size() + z][g * hom(x, y).size() + f];
  }
  Elem identity(ObjId x) const { return d_.identities[x]; }
  Elem zero(ObjId x, ObjId y) const { return hom(x, y).bottom(); }
  Elem top(ObjId x, ObjId y) const { return hom(x, y).top(); }

  /// [f, g] for f: x→y and g: z→y; the largest h: z→x with f∘h <= g.
  Elem lifting(ObjId x, ObjId y, ObjId z, Elem f, Elem g) const {
    return lift_[(x * size() + y) * size() + z][f * hom(z, y).size() + g];
  }
  /// {f, g} for f: x→y and g: x→z; the largest h: y→z with h∘f <= g.
  Elem extension(ObjId x, ObjId y, ObjId z, Elem f, Elem g) const {
    return ext_[(x * size() + y) * size() + z][f * hom(x, z).size() + g];
  }

  QArrow compose(const QArrow& g, const QArrow& f) const;
  QArrow identity_arrow(ObjId x) const { return {x, x, identity(x)}; }
  QArrow residual(ResidualKind kind, const QArrow& f, const QArrow& g) const;

  /// "X->Y:e" rendering used in witnesses and on the command line.
  std::string arrow_name(ObjId x, ObjId y, Elem e) const;
  std::string arrow_name(const QArrow& a) const { return arrow_name(a.src, a.dst, a.value); }
  /// Parses "X->Y:e"; throws InvalidInput.
  QArrow parse_arrow(std::string_view text) const;

  const QuantaloidData& data() const noexcept { return d_; }
  bool operator==(const Quantaloid& other) const;

 private:
  friend Quantaloid validate_quantaloid(QuantaloidData data);
  explicit Quantaloid(QuantaloidData data);

  QuantaloidData d_;
  std::vector<std::vector<Elem>> lift_;
  std::vector<std::vector<Elem>> ext_;
};

using QuantaloidPtr = std::shared_ptr<const Quantaloid>;

/// Checks totality, unit laws, bottom absorption, join preservation and associativity,
/// in that order; throws the first violation.
Quantaloid validate_quantaloid(QuantaloidData data);

/// hom^op(X,Y) = hom(Y,X) with reversed composition.
Quantaloid opposite(const Quantaloid& q);

/// One object `*`, hom {0 < 1}, composition = conjunction.
Quantaloid boolean2();
/// One-object quantaloid from a multiplication table `mult[g * n + f] = g∘f`.
Quantaloid quantale_from_table(std::string name, const FiniteSupLattice& lattice,
                               const std::vector<Elem>& mult, Elem unit);
/// Rel(Ω): objects are the frame elements, hom(x,y) = ↓(x∧y), composition ∧, 1_x = x.
Quantaloid locale_quantaloid(std::string name, const FiniteSupLattice& frame);
/// One-object quantaloid of subsets of a finite monoid under the complex product.
Quantaloid free_on_monoid(std::string name, const std::vector<std::string>& elements,
                          const std::vector<std::size_t>& mult, std::size_t unit);

}  // namespace qlab
