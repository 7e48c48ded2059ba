#pragma once

#include <stdexcept>
#include <string>

namespace rrc {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct ContextMismatchError : Error {
    explicit ContextMismatchError(const std::string& w = "operands declared over different variable contexts")
        : Error(w) {}
};

struct InexactDivisionError : Error {
    explicit InexactDivisionError(const std::string& w = "inexact polynomial division") : Error(w) {}
};

struct ParseError : Error {
    int line, col;
    ParseError(int line_, int col_, const std::string& msg)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(col_) + ": " + msg),
          line(line_), col(col_) {}
};

struct NotZeroDimensionalError : Error {
    explicit NotZeroDimensionalError(const std::string& w =
        "quotient is not finite over Q(y): some variable has no pure-power leading monomial")
        : Error(w) {}
};

struct EmptyEliminationError : Error {
    explicit EmptyEliminationError() : Error("elimination produced no x-free generator") {}
};

struct DegenerateLinearFormError : Error {
    explicit DegenerateLinearFormError(int got, int want)
        : Error("eliminating polynomial has degree " + std::to_string(got) +
                " < quotient dimension " + std::to_string(want) + "; resample the linear form") {}
};

struct OnBadLocusError : Error {
    explicit OnBadLocusError(const std::string& w =
        "specialization point lies on the bad locus; rank/signature untrusted here")
        : Error(w) {}
};

struct AssumptionCViolatedError : Error {
    explicit AssumptionCViolatedError(const std::string& w =
        "some x-leading coefficient of the Groebner basis depends on the parameters")
        : Error(w) {}
};

struct ResidualMismatchError : Error {
    explicit ResidualMismatchError(const std::string& w =
        "interpolation residual mismatch: degree bound too small") : Error(w) {}
};

struct IdenticallyZeroDeterminantError : Error {
    explicit IdenticallyZeroDeterminantError()
        : Error("det(H) is identically zero: the input ideal is not radical") {}
};

struct DegenerateMinorError : Error {
    explicit DegenerateMinorError()
        : Error("a leading principal minor stayed identically zero after all congruence retries") {}
};

struct BadReductionError : Error {
    explicit BadReductionError(const std::string& w =
        "modular reduction degenerates (leading coefficient vanished mod p); retry with a new seed or prime")
        : Error(w) {}
};

struct IdenticallyZeroFiberError : Error {
    explicit IdenticallyZeroFiberError()
        : Error("a projection-level polynomial vanishes identically on the fiber") {}
};

struct DisagreementError : Error {
    explicit DisagreementError(const std::string& w) : Error(w) {}
};

} // namespace rrc
