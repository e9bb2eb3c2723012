#include "etf/error.hpp"

namespace etf {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::VarTableMismatch: return "VarTableMismatch";
    case Errc::BadRelationShape: return "BadRelationShape";
    case Errc::UnassignedVariable: return "UnassignedVariable";
    case Errc::ExponentOverflow: return "ExponentOverflow";
    case Errc::ParseError: return "ParseError";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::UnitIdeal: return "UnitIdeal";
    case Errc::BadParams: return "BadParams";
    case Errc::NonUnitColumns: return "NonUnitColumns";
    case Errc::SizeMismatch: return "SizeMismatch";
    case Errc::NotAnEtf: return "NotAnEtf";
    case Errc::NEqualsM: return "NEqualsM";
    case Errc::MTooSmall: return "MTooSmall";
    case Errc::NotRankOne: return "NotRankOne";
    case Errc::BadModulus: return "BadModulus";
    case Errc::BadSubgram: return "BadSubgram";
    case Errc::BadSize: return "BadSize";
    case Errc::NotUnimodular: return "NotUnimodular";
    case Errc::ZeroFirstRowEntry: return "ZeroFirstRowEntry";
    case Errc::TooLarge: return "TooLarge";
    case Errc::MalformedEntry: return "MalformedEntry";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NonMonomialDenominator: return "NonMonomialDenominator";
    case Errc::AlphaIsRational: return "AlphaIsRational";
    case Errc::ExtensionNotFound: return "ExtensionNotFound";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::BadScenario: return "BadScenario";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace etf
