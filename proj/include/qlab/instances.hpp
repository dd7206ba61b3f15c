#pragma once

// Named example quantaloids and categories, plus exhaustive small-instance generators.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qlab/order.hpp"
#include "qlab/qcategory.hpp"
#include "qlab/quantaloid.hpp"
#include "qlab/variation.hpp"

namespace qlab {

/// q2 (Booleans), q3 (chain 0 < a < 1 under min) and qrel3 (Rel of the frame 0 < u < 1).
QuantaloidPtr builtin_quantaloid(std::string_view name);
/// chain3@q2, zero@qrel3, p1@qrel3 (presheaves on *_1), pd1@qrel3 (copresheaves on *_1) and
/// sweep<N>@<base>, the N-th category produced by all_categories.
CategoryPtr builtin_category(std::string_view name);
std::vector<std::string> builtin_quantaloid_names();
std::vector<std::string> builtin_category_names();

/// One object 0_X per base object with hom(0_X, 0_X) = 1_X and bottoms elsewhere.
QCategory zero_category(QuantaloidPtr base, std::string name);
/// A preorder as a category over a one-object base: hom(a', a) = 1 if a' <= a, else 0.
QCategory order_category(QuantaloidPtr base, const FinitePreorder& order, std::string name);

/// Every category over `base` with at most `max_objects` objects, labelled a, b, c, ...
/// Objects are typed in every possible way; enumeration order is by object count, then
/// type assignment, then hom tables lexicographically.
std::vector<QCategory> all_categories(const QuantaloidPtr& base, std::size_t max_objects);
/// Every type-preserving object map from `source` to `target` that is a functor.
std::vector<std::vector<std::size_t>> all_functors(const QCategory& source, const QCategory& target);

/// Every preorder on {0, ..., n-1} (names "0".."n-1"), in lexicographic matrix order.
std::vector<FinitePreorder> all_preorders(std::size_t n);
/// Every sup-lattice among them (antisymmetric with all joins).
std::vector<FiniteSupLattice> all_lattices(std::size_t n);
/// Every monotone endomap of a preorder.
std::vector<std::vector<Elem>> all_monotone_maps(const FinitePreorder& source, const FinitePreorder& target);

/// Every valid pseudofunctor over a one-object base with fibers of at most `max_carrier`
/// elements; empty for bases with more than one object.
std::vector<Pseudofunctor2> all_pseudofunctors(const QuantaloidPtr& base, std::size_t max_carrier);
/// Every right action of a one-object base on a lattice with at most `max_carrier` elements.
std::vector<QuantaleAction> all_actions(const QuantaloidPtr& base, std::size_t max_carrier);

}  // namespace qlab
