#pragma once

// Finite preorders, finite sup-lattices, monotone maps and order adjunctions.

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace qlab {

/// Index of an element inside a finite carrier.
using Elem = std::size_t;

/// Order data as written by a user: element names plus the full `leq` relation.
struct RawOrder {
  std::vector<std::string> elements;
  std::vector<std::pair<std::string, std::string>> leq;
};

class FinitePreorder {
 public:
  FinitePreorder() = default;

  /// Validates a full relation matrix (row-major, `rel[a * n + b]` means a <= b).
  static FinitePreorder from_matrix(std::vector<std::string> names, std::vector<char> rel);
  /// Reflexive-transitive closure of the given generating pairs.
  static FinitePreorder closure(std::vector<std::string> names,
                                std::span<const std::pair<Elem, Elem>> generators);
  static FinitePreorder chain(std::vector<std::string> names);

  std::size_t size() const noexcept { return names_.size(); }
  bool empty() const noexcept { return names_.empty(); }
  const std::string& name(Elem a) const { return names_.at(a); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<Elem> find(std::string_view name) const;

  bool leq(Elem a, Elem b) const { return leq_[a * names_.size() + b] != 0; }
  bool equivalent(Elem a, Elem b) const { return leq(a, b) && leq(b, a); }
  bool is_antisymmetric() const;

  std::vector<Elem> upper_bounds(std::span<const Elem> subset) const;
  std::vector<Elem> lower_bounds(std::span<const Elem> subset) const;
  /// The (possibly empty) equivalence class of least upper bounds.
  std::vector<Elem> suprema(std::span<const Elem> subset) const;
  std::vector<Elem> infima(std::span<const Elem> subset) const;
  bool is_supremum(Elem candidate, std::span<const Elem> subset) const;
  bool is_infimum(Elem candidate, std::span<const Elem> subset) const;
  bool has_bottom() const { return !suprema({}).empty(); }
  bool has_top() const { return !infima({}).empty(); }
  /// Every subset has a supremum.
  bool is_complete() const;

  /// Generating pairs whose closure is this preorder: equivalences plus covers.
  std::vector<std::pair<Elem, Elem>> generators() const;

  bool operator==(const FinitePreorder&) const = default;

 private:
  FinitePreorder(std::vector<std::string> names, std::vector<char> rel)
      : names_(std::move(names)), leq_(std::move(rel)) {}

  std::vector<std::string> names_;
  std::vector<char> leq_;
};

/// Antisymmetric finite order with all joins (hence all meets).
class FiniteSupLattice {
 public:
  FiniteSupLattice() = default;
  /// Throws NotAntisymmetric, EmptyLattice or NoJoin.
  explicit FiniteSupLattice(FinitePreorder order);

  const FinitePreorder& order() const noexcept { return *order_; }
  const std::shared_ptr<const FinitePreorder>& order_ptr() const noexcept { return order_; }

  std::size_t size() const noexcept { return order_->size(); }
  const std::string& name(Elem a) const { return order_->name(a); }
  std::optional<Elem> find(std::string_view name) const { return order_->find(name); }
  bool leq(Elem a, Elem b) const { return order_->leq(a, b); }

  Elem bottom() const noexcept { return bottom_; }
  Elem top() const noexcept { return top_; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(std::span<const Elem> subset) const;
  Elem meet(std::span<const Elem> subset) const;

  bool operator==(const FiniteSupLattice& other) const;

 private:
  std::shared_ptr<const FinitePreorder> order_;
  std::vector<Elem> join_;
  std::vector<Elem> meet_;
  Elem bottom_ = 0;
  Elem top_ = 0;
};

FinitePreorder validate_preorder(const RawOrder& raw);
FiniteSupLattice validate_suplattice(const RawOrder& raw);
std::variant<FinitePreorder, FiniteSupLattice> validate_order(const RawOrder& raw,
                                                              bool require_suplattice);

struct Bounds {
  Elem join;
  Elem meet;
};

Bounds bounds(const FiniteSupLattice& lattice, std::span<const Elem> subset);

struct MonotoneMap {
  std::shared_ptr<const FinitePreorder> source;
  std::shared_ptr<const FinitePreorder> target;
  std::vector<Elem> table;

  Elem operator()(Elem a) const { return table[a]; }
};

/// Throws NotMonotone (or TypeMismatch when the table does not fit).
MonotoneMap make_monotone(std::shared_ptr<const FinitePreorder> source,
                          std::shared_ptr<const FinitePreorder> target, std::vector<Elem> table);
bool is_monotone(const FinitePreorder& source, const FinitePreorder& target,
                 std::span<const Elem> table);

struct OrderAdjunction {
  MonotoneMap left;
  MonotoneMap right;
};

/// right after left is inflationary and left after right is deflationary.
bool is_order_adjunction(const MonotoneMap& left, const MonotoneMap& right);

/// Right adjoint of a monotone map between preorders, if one exists. Values are the
/// lowest-index member of the greatest class {a : f(a) <= b}.
std::optional<MonotoneMap> find_right_adjoint(const MonotoneMap& map);

struct SupCheck {
  bool ok = true;
  /// The subset whose join is not preserved (empty means the empty join).
  std::vector<Elem> witness;
};

SupCheck is_sup_morphism(const FiniteSupLattice& source, const FiniteSupLattice& target,
                         std::span<const Elem> table);

/// right(b) = join{a : map(a) <= b}; throws NotSupPreserving with the failing subset.
OrderAdjunction right_adjoint(const FiniteSupLattice& source, const FiniteSupLattice& target,
                              std::span<const Elem> table);

}  // namespace qlab
