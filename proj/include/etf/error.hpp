#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace etf {

/// Failure categories shared by every module. Each maps to one named error
/// condition of a public operation.
enum class Errc {
  // exactpoly
  VarTableMismatch,
  BadRelationShape,
  UnassignedVariable,
  ExponentOverflow,
  ParseError,
  // groebner
  ZeroPolynomial,
  BudgetExceeded,
  UnitIdeal,
  // frames
  BadParams,
  NonUnitColumns,
  SizeMismatch,
  NotAnEtf,
  NEqualsM,
  MTooSmall,
  NotRankOne,
  BadModulus,
  BadSubgram,
  BadSize,
  NotUnimodular,
  ZeroFirstRowEntry,
  TooLarge,
  MalformedEntry,
  DimensionMismatch,
  // sysgen
  NonMonomialDenominator,
  AlphaIsRational,
  // catalog
  ExtensionNotFound,
  SearchExhausted,
  BadScenario,
  // io
  Io,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace etf
