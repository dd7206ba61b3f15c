#include "qlab/error.hpp"

namespace qlab {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MissingReflexivity: return "MissingReflexivity";
    case ErrorKind::BrokenTransitivity: return "BrokenTransitivity";
    case ErrorKind::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorKind::NoJoin: return "NoJoin";
    case ErrorKind::EmptyLattice: return "EmptyLattice";
    case ErrorKind::NotMonotone: return "NotMonotone";
    case ErrorKind::NotSupPreserving: return "NotSupPreserving";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::UnitLawFails: return "UnitLawFails";
    case ErrorKind::NotJoinPreserving: return "NotJoinPreserving";
    case ErrorKind::BottomNotAbsorbed: return "BottomNotAbsorbed";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::IdentityBelowUnit: return "IdentityBelowUnit";
    case ErrorKind::CompositionFails: return "CompositionFails";
    case ErrorKind::TypeNotPreserved: return "TypeNotPreserved";
    case ErrorKind::FunctorInequalityFails: return "FunctorInequalityFails";
    case ErrorKind::ActionAxiomFails: return "ActionAxiomFails";
    case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case ErrorKind::TensorsNotPreserved: return "TensorsNotPreserved";
    case ErrorKind::NoFiberAdjoint: return "NoFiberAdjoint";
    case ErrorKind::SourceNotTensored: return "SourceNotTensored";
    case ErrorKind::NotTensored: return "NotTensored";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::InvalidPseudofunctor: return "InvalidPseudofunctor";
    case ErrorKind::NotSkeletal: return "NotSkeletal";
    case ErrorKind::NotCocomplete: return "NotCocomplete";
    case ErrorKind::ModuleLawFails: return "ModuleLawFails";
    case ErrorKind::ActionLawFails: return "ActionLawFails";
    case ErrorKind::NotOneObject: return "NotOneObject";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    case ErrorKind::PartialTable: return "PartialTable";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

std::optional<ErrorKind> error_kind_from_string(std::string_view name) {
  for (int k = 0; k <= static_cast<int>(ErrorKind::InvalidInput); ++k)
    if (to_string(static_cast<ErrorKind>(k)) == name) return static_cast<ErrorKind>(k);
  return std::nullopt;
}

namespace {

std::string format_message(ErrorKind kind, const std::vector<std::string>& witnesses,
                           const std::string& detail) {
  std::string msg(to_string(kind));
  msg += '(';
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    if (i) msg += ", ";
    msg += witnesses[i];
  }
  msg += ')';
  if (!detail.empty()) {
    msg += ": ";
    msg += detail;
  }
  return msg;
}

}  // namespace

Error::Error(ErrorKind kind, std::vector<std::string> witnesses, std::string detail)
    : std::runtime_error(format_message(kind, witnesses, detail)),
      kind_(kind),
      witnesses_(std::move(witnesses)) {}

}  // namespace qlab
