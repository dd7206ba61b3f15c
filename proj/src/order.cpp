#include "qlab/order.hpp"

#include <algorithm>
#include <stdexcept>

#include "qlab/error.hpp"

namespace qlab {

namespace {

Elem index_of(const std::vector<std::string>& names, const std::string& name) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw Error(ErrorKind::InvalidInput, {name}, "unknown element");
  return static_cast<Elem>(it - names.begin());
}

void check_unique(const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) throw Error(ErrorKind::InvalidInput, {names[i]}, "duplicate element");
}

}  // namespace

FinitePreorder FinitePreorder::from_matrix(std::vector<std::string> names, std::vector<char> rel) {
  const std::size_t n = names.size();
  if (rel.size() != n * n) throw Error(ErrorKind::InvalidInput, {}, "relation size mismatch");
  check_unique(names);
  for (Elem a = 0; a < n; ++a)
    if (!rel[a * n + a]) throw Error(ErrorKind::MissingReflexivity, {names[a]});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (!rel[a * n + b]) continue;
      for (Elem c = 0; c < n; ++c)
        if (rel[b * n + c] && !rel[a * n + c])
          throw Error(ErrorKind::BrokenTransitivity, {names[a], names[b], names[c]});
    }
  return FinitePreorder(std::move(names), std::move(rel));
}

FinitePreorder FinitePreorder::closure(std::vector<std::string> names,
                                       std::span<const std::pair<Elem, Elem>> generators) {
  const std::size_t n = names.size();
  std::vector<char> rel(n * n, 0);
  for (Elem a = 0; a < n; ++a) rel[a * n + a] = 1;
  for (auto [a, b] : generators) {
    if (a >= n || b >= n) throw Error(ErrorKind::InvalidInput, {}, "generator out of range");
    rel[a * n + b] = 1;
  }
  // Warshall
  for (Elem k = 0; k < n; ++k)
    for (Elem a = 0; a < n; ++a)
      if (rel[a * n + k])
        for (Elem b = 0; b < n; ++b)
          if (rel[k * n + b]) rel[a * n + b] = 1;
  return from_matrix(std::move(names), std::move(rel));
}

FinitePreorder FinitePreorder::chain(std::vector<std::string> names) {
  const std::size_t n = names.size();
  std::vector<char> rel(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a; b < n; ++b) rel[a * n + b] = 1;
  return from_matrix(std::move(names), std::move(rel));
}

std::optional<Elem> FinitePreorder::find(std::string_view name) const {
  for (Elem a = 0; a < names_.size(); ++a)
    if (names_[a] == name) return a;
  return std::nullopt;
}

bool FinitePreorder::is_antisymmetric() const {
  for (Elem a = 0; a < size(); ++a)
    for (Elem b = a + 1; b < size(); ++b)
      if (equivalent(a, b)) return false;
  return true;
}

std::vector<Elem> FinitePreorder::upper_bounds(std::span<const Elem> subset) const {
  std::vector<Elem> out;
  for (Elem u = 0; u < size(); ++u)
    if (std::all_of(subset.begin(), subset.end(), [&](Elem s) { return leq(s, u); }))
      out.push_back(u);
  return out;
}

std::vector<Elem> FinitePreorder::lower_bounds(std::span<const Elem> subset) const {
  std::vector<Elem> out;
  for (Elem l = 0; l < size(); ++l)
    if (std::all_of(subset.begin(), subset.end(), [&](Elem s) { return leq(l, s); }))
      out.push_back(l);
  return out;
}

std::vector<Elem> FinitePreorder::suprema(std::span<const Elem> subset) const {
  const auto ub = upper_bounds(subset);
  std::vector<Elem> out;
  for (Elem u : ub)
    if (std::all_of(ub.begin(), ub.end(), [&](Elem v) { return leq(u, v); })) out.push_back(u);
  return out;
}

std::vector<Elem> FinitePreorder::infima(std::span<const Elem> subset) const {
  const auto lb = lower_bounds(subset);
  std::vector<Elem> out;
  for (Elem l : lb)
    if (std::all_of(lb.begin(), lb.end(), [&](Elem v) { return leq(v, l); })) out.push_back(l);
  return out;
}

bool FinitePreorder::is_supremum(Elem candidate, std::span<const Elem> subset) const {
  const auto sup = suprema(subset);
  return std::find(sup.begin(), sup.end(), candidate) != sup.end();
}

bool FinitePreorder::is_infimum(Elem candidate, std::span<const Elem> subset) const {
  const auto inf = infima(subset);
  return std::find(inf.begin(), inf.end(), candidate) != inf.end();
}

bool FinitePreorder::is_complete() const {
  if (empty()) return false;
  if (!has_bottom()) return false;
  // With a bottom, all joins exist iff all binary joins do.
  for (Elem a = 0; a < size(); ++a)
    for (Elem b = a + 1; b < size(); ++b) {
      const Elem pair[] = {a, b};
      if (suprema(pair).empty()) return false;
    }
  return true;
}

std::vector<std::pair<Elem, Elem>> FinitePreorder::generators() const {
  std::vector<std::pair<Elem, Elem>> out;
  auto strictly = [&](Elem a, Elem b) { return leq(a, b) && !leq(b, a); };
  for (Elem a = 0; a < size(); ++a)
    for (Elem b = 0; b < size(); ++b) {
      if (a == b || !leq(a, b)) continue;
      if (leq(b, a)) {
        out.emplace_back(a, b);
        continue;
      }
      bool covered = true;
      for (Elem c = 0; c < size() && covered; ++c)
        if (strictly(a, c) && strictly(c, b)) covered = false;
      if (covered) out.emplace_back(a, b);
    }
  return out;
}

FiniteSupLattice::FiniteSupLattice(FinitePreorder order)
    : order_(std::make_shared<const FinitePreorder>(std::move(order))) {
  const auto& o = *order_;
  const std::size_t n = o.size();
  if (n == 0) throw Error(ErrorKind::EmptyLattice, {});
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (o.equivalent(a, b)) throw Error(ErrorKind::NotAntisymmetric, {o.name(a), o.name(b)});
  const auto bottoms = o.suprema({});
  if (bottoms.empty()) throw Error(ErrorKind::NoJoin, {}, "no bottom element");
  bottom_ = bottoms.front();
  join_.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const Elem pair[] = {a, b};
      const auto sup = o.suprema(pair);
      if (sup.empty()) throw Error(ErrorKind::NoJoin, {o.name(a), o.name(b)});
      join_[a * n + b] = sup.front();
    }
  top_ = join(std::vector<Elem>(o.upper_bounds({})));
  meet_.assign(n * n, 0);
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      const Elem pair[] = {a, b};
      meet_[a * n + b] = join(o.lower_bounds(pair));
    }
}

Elem FiniteSupLattice::join(std::span<const Elem> subset) const {
  Elem acc = bottom_;
  for (Elem a : subset) acc = join(acc, a);
  return acc;
}

Elem FiniteSupLattice::meet(std::span<const Elem> subset) const {
  Elem acc = top_;
  for (Elem a : subset) acc = meet(acc, a);
  return acc;
}

bool FiniteSupLattice::operator==(const FiniteSupLattice& other) const {
  if (!order_ || !other.order_) return order_ == other.order_;
  return *order_ == *other.order_;
}

FinitePreorder validate_preorder(const RawOrder& raw) {
  check_unique(raw.elements);
  const std::size_t n = raw.elements.size();
  std::vector<char> rel(n * n, 0);
  for (const auto& [a, b] : raw.leq)
    rel[index_of(raw.elements, a) * n + index_of(raw.elements, b)] = 1;
  return FinitePreorder::from_matrix(raw.elements, std::move(rel));
}

FiniteSupLattice validate_suplattice(const RawOrder& raw) {
  return FiniteSupLattice(validate_preorder(raw));
}

std::variant<FinitePreorder, FiniteSupLattice> validate_order(const RawOrder& raw,
                                                              bool require_suplattice) {
  if (require_suplattice) return validate_suplattice(raw);
  return validate_preorder(raw);
}

Bounds bounds(const FiniteSupLattice& lattice, std::span<const Elem> subset) {
  return {lattice.join(subset), lattice.meet(subset)};
}

bool is_monotone(const FinitePreorder& source, const FinitePreorder& target,
                 std::span<const Elem> table) {
  if (table.size() != source.size()) return false;
  for (Elem a : table)
    if (a >= target.size()) return false;
  for (Elem a = 0; a < source.size(); ++a)
    for (Elem b = 0; b < source.size(); ++b)
      if (source.leq(a, b) && !target.leq(table[a], table[b])) return false;
  return true;
}

MonotoneMap make_monotone(std::shared_ptr<const FinitePreorder> source,
                          std::shared_ptr<const FinitePreorder> target, std::vector<Elem> table) {
  if (table.size() != source->size())
    throw Error(ErrorKind::TypeMismatch, {}, "map table does not cover the source");
  for (Elem a = 0; a < source->size(); ++a) {
    if (table[a] >= target->size())
      throw Error(ErrorKind::TypeMismatch, {source->name(a)}, "image outside the target");
  }
  for (Elem a = 0; a < source->size(); ++a)
    for (Elem b = 0; b < source->size(); ++b)
      if (source->leq(a, b) && !target->leq(table[a], table[b]))
        throw Error(ErrorKind::NotMonotone, {source->name(a), source->name(b)});
  return {std::move(source), std::move(target), std::move(table)};
}

bool is_order_adjunction(const MonotoneMap& left, const MonotoneMap& right) {
  const auto& p = *left.source;
  const auto& q = *left.target;
  if (!is_monotone(p, q, left.table) || !is_monotone(q, p, right.table)) return false;
  for (Elem a = 0; a < p.size(); ++a)
    if (!p.leq(a, right(left(a)))) return false;
  for (Elem b = 0; b < q.size(); ++b)
    if (!q.leq(left(right(b)), b)) return false;
  return true;
}

std::optional<MonotoneMap> find_right_adjoint(const MonotoneMap& map) {
  const auto& p = *map.source;
  const auto& q = *map.target;
  std::vector<Elem> table(q.size());
  for (Elem b = 0; b < q.size(); ++b) {
    std::optional<Elem> found;
    for (Elem g = 0; g < p.size() && !found; ++g) {
      bool galois = true;
      for (Elem a = 0; a < p.size() && galois; ++a)
        galois = q.leq(map(a), b) == p.leq(a, g);
      if (galois) found = g;
    }
    if (!found) return std::nullopt;
    table[b] = *found;
  }
  return MonotoneMap{map.target, map.source, std::move(table)};
}

SupCheck is_sup_morphism(const FiniteSupLattice& source, const FiniteSupLattice& target,
                         std::span<const Elem> table) {
  if (table.size() != source.size()) throw Error(ErrorKind::TypeMismatch, {}, "table size");
  if (table[source.bottom()] != target.bottom()) return {false, {}};
  for (Elem a = 0; a < source.size(); ++a)
    for (Elem b = a + 1; b < source.size(); ++b)
      if (table[source.join(a, b)] != target.join(table[a], table[b])) return {false, {a, b}};
  return {};
}

OrderAdjunction right_adjoint(const FiniteSupLattice& source, const FiniteSupLattice& target,
                              std::span<const Elem> table) {
  if (table.size() != source.size()) throw Error(ErrorKind::TypeMismatch, {}, "table size");
  std::vector<Elem> right(target.size());
  for (Elem b = 0; b < target.size(); ++b) {
    std::vector<Elem> below;
    for (Elem a = 0; a < source.size(); ++a)
      if (target.leq(table[a], b)) below.push_back(a);
    right[b] = source.join(below);
  }
  bool galois = true;
  for (Elem a = 0; a < source.size() && galois; ++a)
    for (Elem b = 0; b < target.size() && galois; ++b)
      galois = target.leq(table[a], b) == source.leq(a, right[b]);
  if (!galois) {
    const auto check = is_sup_morphism(source, target, table);
    if (check.ok) throw std::logic_error("right_adjoint: Galois check failed on a sup-morphism");
    std::vector<std::string> names;
    for (Elem a : check.witness) names.push_back(source.name(a));
    if (names.empty()) names.push_back("{}");
    throw Error(ErrorKind::NotSupPreserving, std::move(names));
  }
  MonotoneMap left{source.order_ptr(), target.order_ptr(),
                   std::vector<Elem>(table.begin(), table.end())};
  MonotoneMap r{target.order_ptr(), source.order_ptr(), std::move(right)};
  return {std::move(left), std::move(r)};
}

}  // namespace qlab
