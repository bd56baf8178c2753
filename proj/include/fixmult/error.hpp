#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fixmult {

enum class ErrorCode {
    DivisionByZero,
    MultipleFixedPoint,
    HasUnitMultiplier,
    NotOnHyperplane,
    DegreeTooSmall,
    BlockSumNonzero,
    ZeroMuTarget,
    DimensionTooLarge,
    LatticeTooLarge,
    GroundSetMismatch,
    PartitionNotInLattice,
    CoincidentRoots,
    ParseError,
    InvalidArgument,
    // Everything below signals a bug or a failed verification, not bad input.
    InternalDivisibilityViolation,
    EngineDisagreement,
    SpuriousSolutions,
    NonFreeAction,
    BudgetExhausted,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::MultipleFixedPoint: return "MultipleFixedPoint";
    case ErrorCode::HasUnitMultiplier: return "HasUnitMultiplier";
    case ErrorCode::NotOnHyperplane: return "NotOnHyperplane";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::BlockSumNonzero: return "BlockSumNonzero";
    case ErrorCode::ZeroMuTarget: return "ZeroMuTarget";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::LatticeTooLarge: return "LatticeTooLarge";
    case ErrorCode::GroundSetMismatch: return "GroundSetMismatch";
    case ErrorCode::PartitionNotInLattice: return "PartitionNotInLattice";
    case ErrorCode::CoincidentRoots: return "CoincidentRoots";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InternalDivisibilityViolation: return "InternalDivisibilityViolation";
    case ErrorCode::EngineDisagreement: return "EngineDisagreement";
    case ErrorCode::SpuriousSolutions: return "SpuriousSolutions";
    case ErrorCode::NonFreeAction: return "NonFreeAction";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    }
    return "Unknown";
}

/// True for codes that indicate an internal consistency failure rather than
/// invalid user input.
constexpr bool is_internal(ErrorCode code) noexcept
{
    return code >= ErrorCode::InternalDivisibilityViolation;
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code)
    {
    }

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace fixmult
