#pragma once

#include <stdexcept>
#include <string>

namespace mall {

// All engine errors derive from this; `code()` is a stable tag used by the CLI.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : Error("ParseError", msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

#define MALL_ERROR(Name)                                                     \
    class Name : public Error {                                              \
    public:                                                                  \
        explicit Name(const std::string& msg) : Error(#Name, msg) {}         \
    }

MALL_ERROR(FreshnessViolation);
MALL_ERROR(ReplayMismatch);
MALL_ERROR(IllFormedProof);
MALL_ERROR(ConclusionMismatch);
MALL_ERROR(NoCut);
MALL_ERROR(NotApplicable);
MALL_ERROR(PatternPreconditionFailed);
MALL_ERROR(InvalidLinking);
MALL_ERROR(SizeCapExceeded);
MALL_ERROR(UnitsPresent);
MALL_ERROR(NonAtomicAxiom);
MALL_ERROR(PairNotFound);
MALL_ERROR(NotAProofNet);
MALL_ERROR(NoSequentializingVertex);
MALL_ERROR(NotOutput);
MALL_ERROR(LanguageViolation);
MALL_ERROR(FormatError);

#undef MALL_ERROR

}  // namespace mall
