#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qlab {

enum class ErrorKind {
  // order-core
  MissingReflexivity,
  BrokenTransitivity,
  NotAntisymmetric,
  NoJoin,
  EmptyLattice,
  NotMonotone,
  NotSupPreserving,
  // quantaloid-core
  NotAssociative,
  UnitLawFails,
  NotJoinPreserving,
  BottomNotAbsorbed,
  TypeMismatch,
  // qcat-core
  IdentityBelowUnit,
  CompositionFails,
  TypeNotPreserved,
  FunctorInequalityFails,
  ActionAxiomFails,
  EnumerationCapExceeded,
  // completion
  TensorsNotPreserved,
  NoFiberAdjoint,
  SourceNotTensored,
  // variation
  NotTensored,
  NotClosed,
  InvalidPseudofunctor,
  NotSkeletal,
  NotCocomplete,
  ModuleLawFails,
  ActionLawFails,
  NotOneObject,
  // formats
  SyntaxError,
  UnresolvedReference,
  PartialTable,
  InvalidInput,
};

std::string_view to_string(ErrorKind kind);
std::optional<ErrorKind> error_kind_from_string(std::string_view name);

/// Structured failure: the violated axiom plus the witnesses that violate it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::vector<std::string> witnesses, std::string detail = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  ErrorKind kind_;
  std::vector<std::string> witnesses_;
};

}  // namespace qlab
